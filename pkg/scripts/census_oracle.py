#!/usr/bin/env python3
"""Independent generate-and-filter census of semirings of order <= 3.

Shares no code with the package: every n x n table over {0..n-1} is
generated, filtered by associativity, paired, filtered by both
distributive laws, and canonicalized by brute force over permutations.

    python scripts/census_oracle.py            # prints counts for orders 1..3
    python scripts/census_oracle.py --json     # machine-readable
"""

import argparse
import json
from itertools import permutations, product


def all_tables(n):
    for flat in product(range(n), repeat=n * n):
        yield tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))


def associative(t, n):
    return all(t[t[a][b]][c] == t[a][t[b][c]] for a in range(n) for b in range(n) for c in range(n))


def distributive(add, mul, n):
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
                    return False
                if mul[add[b][c]][a] != add[mul[b][a]][mul[c][a]]:
                    return False
    return True


def relabel(t, perm):
    n = len(t)
    inv = [0] * n
    for a, b in enumerate(perm):
        inv[b] = a
    return tuple(tuple(perm[t[inv[x]][inv[y]]] for y in range(n)) for x in range(n))


def text(add, mul):
    n = len(add)
    rows = ["smr 1", f"order {n}", "add"]
    rows += [" ".join(map(str, r)) for r in add]
    rows.append("mul")
    rows += [" ".join(map(str, r)) for r in mul]
    return "\n".join(rows) + "\n"


def census(n):
    assoc = [t for t in all_tables(n) if associative(t, n)]
    labeled = [(a, m) for a in assoc for m in assoc if distributive(a, m, n)]
    canon = set()
    for a, m in labeled:
        canon.add(min(text(relabel(a, p), relabel(m, p)) for p in permutations(range(n))))
    return {"associative_tables": len(assoc), "labeled": len(labeled), "up_to_iso": len(canon)}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-order", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    counts = {n: census(n) for n in range(1, args.max_order + 1)}
    if args.json:
        print(json.dumps({str(k): v for k, v in counts.items()}, indent=2))
    else:
        for n, c in counts.items():
            print(f"order {n}: {c['associative_tables']} associative tables, "
                  f"{c['labeled']} semirings, {c['up_to_iso']} up to isomorphism")


if __name__ == "__main__":
    main()
