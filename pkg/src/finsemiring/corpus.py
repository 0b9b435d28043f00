"""Reference semirings, parametric families, small-order censuses and Rees specs."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Iterator

from .core import (
    Semiring,
    SemiringError,
    direct_product,
    parse_semiring,
    semiring,
    serialize_semiring,
    subsemiring,
    validate_axioms,
)
from .rees import Band, ReesSpec, band_from_table, build_rees, validate_sandwich

EXHAUSTIVE_MAX = 3


@dataclass(frozen=True)
class CorpusItem:
    name: str
    semiring: Semiring
    provenance: str


# ---------------------------------------------------------------------------
# groups used by the skew-ring families


def cyclic_group(k: int) -> list[list[int]]:
    return [[(a + b) % k for b in range(k)] for a in range(k)]


def klein_group() -> list[list[int]]:
    return [[a ^ b for b in range(4)] for a in range(4)]


def symmetric_group_3() -> list[list[int]]:
    perms = list(permutations(range(3)))
    index = {p: k for k, p in enumerate(perms)}
    # composition "apply q then p"; identity is perms[0]
    return [[index[tuple(p[q[x]] for x in range(3))] for q in perms] for p in perms]


GROUPS = {
    "Z1": lambda: cyclic_group(1),
    "Z2": lambda: cyclic_group(2),
    "Z3": lambda: cyclic_group(3),
    "Z4": lambda: cyclic_group(4),
    "V4": klein_group,
    "S3": symmetric_group_3,
}


# ---------------------------------------------------------------------------
# families


def _ring(k: int) -> Semiring:
    return semiring(cyclic_group(k), [[(a * b) % k for b in range(k)] for a in range(k)], f"ring(Z{k})")


def _zero_mul_skewring(group) -> Semiring:
    if isinstance(group, str):
        label, table = group, GROUPS[group]()
    else:
        label, table = "G", group
    n = len(table)
    ident = next(e for e in range(n) if all(table[e][a] == a == table[a][e] for a in range(n)))
    return semiring(table, [[ident] * n for _ in range(n)], f"zero_mul_skewring({label})")


def _chain_blattice(k: int) -> Semiring:
    return semiring(
        [[max(a, b) for b in range(k)] for a in range(k)],
        [[min(a, b) for b in range(k)] for a in range(k)],
        f"chain_blattice({k})",
    )


def _left_zero(k: int) -> Semiring:
    t = [[a] * k for a in range(k)]
    return semiring(t, t, f"left_zero({k})")


def _right_zero(k: int) -> Semiring:
    t = [list(range(k)) for _ in range(k)]
    return semiring(t, t, f"right_zero({k})")


def _rect_band(p: int, q: int) -> Semiring:
    return direct_product(_left_zero(p), _right_zero(q)).with_name(f"rect_band({p},{q})")


def _truncated(k: int) -> Semiring:
    r = range(k + 1)
    return semiring(
        [[min(a + b, k) for b in r] for a in r],
        [[min(a * b, k) for b in r] for a in r],
        f"truncated({k})",
    )


def _const_zero_mul_semilattice(k: int) -> Semiring:
    return semiring(
        [[max(a, b) for b in range(k)] for a in range(k)],
        [[0] * k for _ in range(k)],
        f"const_zero_mul_semilattice({k})",
    )


def _archimedean_component(k: int) -> Semiring:
    sub, _ = subsemiring(_truncated(k), range(1, k + 1), name=f"archimedean_component(truncated({k}))")
    return sub


FAMILIES = {
    "ring": _ring,
    "zero_mul_skewring": _zero_mul_skewring,
    "chain_blattice": _chain_blattice,
    "left_zero": _left_zero,
    "right_zero": _right_zero,
    "rect_band": _rect_band,
    "truncated": _truncated,
    "const_zero_mul_semilattice": _const_zero_mul_semilattice,
    "archimedean_component": _archimedean_component,
}


def build_family(name: str, *params) -> Semiring:
    """Instantiate a named family, e.g. ``build_family("truncated", 2)``."""
    try:
        fn = FAMILIES[name]
    except KeyError:
        raise SemiringError(f"unknown family {name!r}") from None
    try:
        S = fn(*params)
    except (TypeError, KeyError, ValueError, StopIteration) as exc:
        raise SemiringError(f"bad parameters for {name}: {params!r} ({exc})") from None
    if validate_axioms(S.add, S.mul):
        raise SemiringError(f"{name}{params} does not produce a semiring")
    return S


def _m4() -> Semiring:
    M, _ = build_rees(_m4_spec())
    return M.with_name("M4")


def _m4_spec() -> ReesSpec:
    # I = {o, i} left zero band, Λ = {o}, R = Z2, P = 0
    I = Band(("o", "i"), ((0, 0), (1, 1)), "o")
    L = Band(("o",), ((0,),), "o")
    return ReesSpec(build_family("ring", 2), I, L, ((0, 0),))


NAMED = {
    "S1": lambda: build_family("ring", 1),
    "Z2": lambda: build_family("ring", 2),
    "B2": lambda: build_family("chain_blattice", 2),
    "Q2": lambda: build_family("const_zero_mul_semilattice", 2),
    "LZ2": lambda: build_family("left_zero", 2),
    "RB4": lambda: build_family("rect_band", 2, 2),
    "TR3": lambda: build_family("truncated", 2),
    "N2": lambda: build_family("archimedean_component", 2),
    "M4": _m4,
}


def named(name: str) -> Semiring:
    try:
        return NAMED[name]().with_name(name)
    except KeyError:
        raise SemiringError(f"unknown named semiring {name!r}") from None


def named_items() -> list[CorpusItem]:
    return [CorpusItem(k, named(k), "named") for k in NAMED]


# ---------------------------------------------------------------------------
# exhaustive enumeration


@lru_cache(maxsize=None)
def associative_tables(n: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Every associative n x n table, by backtracking over cells in row-major order.

    After each cell is fixed, every triple whose four lookups are all defined
    is checked.
    """
    cells = [(a, b) for a in range(n) for b in range(n)]
    triples = list(product(range(n), repeat=3))
    T = [[-1] * n for _ in range(n)]
    out = []

    def ok() -> bool:
        for a, b, c in triples:
            ab, bc = T[a][b], T[b][c]
            if ab < 0 or bc < 0:
                continue
            l, r = T[ab][c], T[a][bc]
            if l < 0 or r < 0:
                continue
            if l != r:
                return False
        return True

    def fill(k: int) -> None:
        if k == len(cells):
            out.append(tuple(tuple(r) for r in T))
            return
        a, b = cells[k]
        for v in range(n):
            T[a][b] = v
            if ok():
                fill(k + 1)
        T[a][b] = -1

    fill(0)
    return tuple(out)


def _distributive(add, mul, n: int) -> bool:
    for a, b, c in product(range(n), repeat=3):
        if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
            return False
        if mul[add[b][c]][a] != add[mul[b][a]][mul[c][a]]:
            return False
    return True


def canonical_text(S: Semiring) -> str:
    """Least serialized form over all relabelings of the carrier."""
    return min(
        serialize_semiring(S.relabel(perm).with_name(None)) for perm in permutations(range(S.order))
    )


def enumerate_semirings(n: int, up_to_iso: bool = False) -> Iterator[Semiring]:
    """Every semiring on {0..n-1}, or one canonical representative per isomorphism class.

    Output is sorted by serialized form, so the sequence is deterministic.
    """
    if not 1 <= n <= EXHAUSTIVE_MAX:
        raise SemiringError(f"exhaustive enumeration supports orders 1..{EXHAUSTIVE_MAX}, got {n}")
    yield from _census(n, up_to_iso)


@lru_cache(maxsize=None)
def _census(n: int, up_to_iso: bool) -> tuple[Semiring, ...]:
    tables = associative_tables(n)
    found = []
    for add in tables:
        for mul in tables:
            if _distributive(add, mul, n) and not validate_axioms(add, mul):
                found.append(Semiring(add, mul))
    if up_to_iso:
        texts = sorted({canonical_text(S) for S in found})
        items = [parse_semiring(t) for t in texts]
    else:
        items = sorted(found, key=lambda S: (S.add, S.mul))
    return tuple(S.with_name(f"census{n}{'i' if up_to_iso else ''}#{k}") for k, S in enumerate(items))


def census_counts(max_order: int = EXHAUSTIVE_MAX) -> dict[int, dict[str, int]]:
    return {
        n: {
            "labeled": sum(1 for _ in enumerate_semirings(n)),
            "up_to_iso": sum(1 for _ in enumerate_semirings(n, up_to_iso=True)),
        }
        for n in range(1, max_order + 1)
    }


def census_items(max_order: int = EXHAUSTIVE_MAX, up_to_iso: bool = True) -> list[CorpusItem]:
    return [
        CorpusItem(S.name, S, f"enumerated({n},{k})")
        for n in range(1, max_order + 1)
        for k, S in enumerate(enumerate_semirings(n, up_to_iso))
    ]


# ---------------------------------------------------------------------------
# constructed corpus


def family_items() -> list[CorpusItem]:
    params = (
        [("ring", k) for k in range(1, 7)]
        + [("zero_mul_skewring", g) for g in ("Z2", "Z3", "Z4", "V4", "S3")]
        + [("chain_blattice", k) for k in range(1, 5)]
        + [("left_zero", k) for k in range(1, 5)]
        + [("right_zero", k) for k in range(1, 5)]
        + [("rect_band", 2, 2), ("rect_band", 2, 3), ("rect_band", 3, 2)]
        + [("truncated", k) for k in range(1, 6)]
        + [("const_zero_mul_semilattice", k) for k in range(2, 5)]
        + [("archimedean_component", k) for k in range(2, 6)]
    )
    out = []
    for name, *ps in params:
        S = build_family(name, *ps)
        out.append(CorpusItem(S.name, S, f"family({name},{','.join(map(str, ps))})"))
    return out


PRODUCT_PAIRS = [
    ("LZ2", "Z2"), ("Z2", "LZ2"), ("RB4", "Z2"), ("RB4", "Z3"), ("B2", "Z2"),
    ("TR3", "Z2"), ("TR3", "B2"), ("N2", "Z3"), ("Q2", "Z2"), ("B2", "B2"),
    ("N2", "N2"), ("TR3", "TR3"), ("LZ2", "TR3"), ("Q2", "B2"), ("M4", "Z2"),
    ("M4", "B2"), ("S1", "TR3"), ("Z2", "Z2"), ("LZ2", "V4"), ("RB4", "N2"),
]


def product_items(max_order: int = 16) -> list[CorpusItem]:
    extra = {"Z3": lambda: build_family("ring", 3), "V4": lambda: build_family("zero_mul_skewring", "V4")}
    out = []
    for a, b in PRODUCT_PAIRS:
        A = named(a) if a in NAMED else extra[a]().with_name(a)
        B = named(b) if b in NAMED else extra[b]().with_name(b)
        if A.order * B.order > max_order:
            continue
        P = direct_product(A, B).with_name(f"{a}x{b}")
        out.append(CorpusItem(P.name, P, f"product({a},{b})"))
    return out


def rees_items(max_order: int = 16, seed: int = 0) -> list[CorpusItem]:
    out = []
    for k, spec in enumerate(rees_spec_corpus(seed=seed)):
        if spec.order > max_order:
            continue
        M, _ = build_rees(spec)
        out.append(CorpusItem(f"rees#{k}", M.with_name(f"rees#{k}"), f"rees({k})"))
    return out


def constructed_corpus(max_order: int = 16, seed: int = 0) -> list[CorpusItem]:
    items = named_items() + family_items() + product_items(max_order) + rees_items(max_order, seed)
    return [it for it in items if it.semiring.order <= max_order]


# ---------------------------------------------------------------------------
# Rees specs


def bands(max_order: int = EXHAUSTIVE_MAX) -> list[tuple[tuple[int, ...], ...]]:
    """Idempotent associative tables of order 1..max_order."""
    return [
        t
        for n in range(1, max_order + 1)
        for t in associative_tables(n)
        if all(t[x][x] == x for x in range(n))
    ]


def zero_mul_skewrings() -> list[Semiring]:
    return [build_family("zero_mul_skewring", g) for g in ("Z1", "Z2", "Z3", "Z4", "V4")]


MAX_SPEC_ORDER = 24


@lru_cache(maxsize=None)
def rees_spec_corpus(cap: int = 50, seed: int = 0) -> tuple[ReesSpec, ...]:
    """Valid Rees specs: a few with P = 0 over rings, the rest sampled over zero-multiplication skew-rings.

    Candidates (band pair with distinguished element, skew-ring, P) are drawn
    with a seeded RNG and kept only if they pass validate_sandwich. Nonzero
    matrices are preferred until half the budget is used, so the corpus has
    plenty of nontrivial P.
    """
    rng = random.Random(seed)
    Bs = bands()
    specs: list[ReesSpec] = []
    seen: set[str] = set()

    def keep(spec: ReesSpec) -> None:
        from .rees import serialize_rees

        text = serialize_rees(spec)
        if text not in seen and spec.order <= MAX_SPEC_ORDER and not validate_sandwich(spec):
            seen.add(text)
            specs.append(spec)

    trivial = ((0,),)
    left_zero = ((0, 0), (1, 1))
    right_zero = ((0, 1), (0, 1))
    # P = 0 over genuine rings
    for k, (ti, oi), (tl, ol) in [
        (2, (trivial, 0), (trivial, 0)),
        (2, (left_zero, 0), (trivial, 0)),
        (3, (right_zero, 0), (left_zero, 0)),
        (2, (left_zero, 1), (right_zero, 1)),
    ]:
        R = build_family("ring", k)
        I = band_from_table(ti, oi, "i")
        L = band_from_table(tl, ol, "l")
        keep(ReesSpec(R, I, L, tuple((0,) * I.size for _ in range(L.size))))

    rings = zero_mul_skewrings()
    attempts = 0
    while len(specs) < cap and attempts < 20000:
        attempts += 1
        R = rng.choice(rings)
        ti, tl = rng.choice(Bs), rng.choice(Bs)
        I = band_from_table(ti, rng.randrange(len(ti)), "i")
        L = band_from_table(tl, rng.randrange(len(tl)), "l")
        if I.size * R.order * L.size > MAX_SPEC_ORDER:
            continue
        zero = 0
        oi, ol = I.o_index, L.o_index
        want_nonzero = len(specs) < cap // 2
        P = []
        for lam in range(L.size):
            row = []
            for i in range(I.size):
                if lam == ol or i == oi:
                    row.append(zero)
                else:
                    row.append(rng.randrange(R.order) if want_nonzero else zero)
            P.append(tuple(row))
        spec = ReesSpec(R, I, L, tuple(P))
        if want_nonzero and not spec.nonzero_p:
            continue
        keep(spec)
    return tuple(specs)
