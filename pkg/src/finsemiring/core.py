"""Finite semirings as pairs of Cayley tables.

Elements are the dense ids ``0..n-1``; subsets are passed around as Python
ints used as bit-sets (bit ``a`` set iff ``a`` is a member).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

MAX_ORDER = 256
MAX_VIOLATIONS = 100

Table = tuple[tuple[int, ...], ...]


class SemiringError(ValueError):
    """Bad input: malformed text, tables that are not a semiring, unmet preconditions."""


class ParseError(SemiringError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class AxiomError(SemiringError):
    def __init__(self, violations: list[Violation]):
        first = violations[0]
        more = f" (+{len(violations) - 1} more)" if len(violations) > 1 else ""
        super().__init__(f"{first}{more}")
        self.violations = violations


class PreconditionError(SemiringError):
    pass


class SevereDiagnostic(AssertionError):
    """An internal check that a theorem guarantees has failed.

    Never raised for bad input; it means the implementation is wrong.
    """


@dataclass(frozen=True)
class Violation:
    law: str
    labels: str
    triple: tuple[int, int, int]

    def __str__(self) -> str:
        return f"{self.law} fails at ({self.labels})=({','.join(map(str, self.triple))})"


@dataclass(frozen=True)
class Verdict:
    """A yes/no answer plus a human-readable reason and optional witness data."""

    holds: bool
    evidence: str = ""
    witness: object = None

    def __bool__(self) -> bool:
        return self.holds


def _freeze(table: Sequence[Sequence[int]]) -> Table:
    return tuple(tuple(int(v) for v in row) for row in table)


def mask_of(members: Iterable[int]) -> int:
    m = 0
    for a in members:
        m |= 1 << a
    return m


def members_of(mask: int) -> tuple[int, ...]:
    out = []
    a = 0
    while mask:
        if mask & 1:
            out.append(a)
        mask >>= 1
        a += 1
    return tuple(out)


@dataclass(frozen=True)
class Semiring:
    """A finite (2,2)-algebra. Construct through :func:`semiring` to get axiom checks."""

    add: Table
    mul: Table
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        n = len(self.add)
        if n < 1:
            raise SemiringError("order must be positive")
        if n > MAX_ORDER:
            raise SemiringError(f"order {n} exceeds maximum {MAX_ORDER}")
        _check_shape(self.add, self.mul)

    @property
    def order(self) -> int:
        return len(self.add)

    @property
    def elements(self) -> range:
        return range(len(self.add))

    @property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    def plus(self, *xs: int) -> int:
        acc = xs[0]
        for x in xs[1:]:
            acc = self.add[acc][x]
        return acc

    def times(self, *xs: int) -> int:
        acc = xs[0]
        for x in xs[1:]:
            acc = self.mul[acc][x]
        return acc

    @cached_property
    def add_idempotents(self) -> int:
        """E+(S) as a bit-set."""
        return mask_of(a for a in self.elements if self.add[a][a] == a)

    @cached_property
    def add_regular(self) -> int:
        """Reg+S as a bit-set."""
        A = self.add
        return mask_of(
            a for a in self.elements if any(A[A[a][x]][a] == a for x in self.elements)
        )

    def with_name(self, name: str | None) -> Semiring:
        return Semiring(self.add, self.mul, name)

    def relabel(self, perm: Sequence[int]) -> Semiring:
        """Image of this semiring under the bijection ``a -> perm[a]``."""
        n = self.order
        inv = [0] * n
        for a, b in enumerate(perm):
            inv[b] = a
        add = tuple(tuple(perm[self.add[inv[x]][inv[y]]] for y in range(n)) for x in range(n))
        mul = tuple(tuple(perm[self.mul[inv[x]][inv[y]]] for y in range(n)) for x in range(n))
        return Semiring(add, mul, self.name)

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<Semiring{label} order={self.order}>"


def _check_shape(add: Sequence[Sequence[int]], mul: Sequence[Sequence[int]]) -> None:
    n = len(add)
    if len(mul) != n:
        raise SemiringError(f"dimension mismatch: add has {n} rows, mul has {len(mul)}")
    for label, table in (("add", add), ("mul", mul)):
        for i, row in enumerate(table):
            if len(row) != n:
                raise SemiringError(
                    f"dimension mismatch: {label} row {i} has {len(row)} entries, expected {n}"
                )
            for v in row:
                if not 0 <= v < n:
                    raise SemiringError(f"entry out of range: {label}[{i}] contains {v}")


def validate_axioms(add: Sequence[Sequence[int]], mul: Sequence[Sequence[int]]) -> list[Violation]:
    """All axiom violations (capped at MAX_VIOLATIONS); empty iff the tables form a semiring.

    Laws are scanned in the order: additive associativity, multiplicative
    associativity, right distributivity, left distributivity.
    """
    _check_shape(add, mul)
    n = len(add)
    out: list[Violation] = []

    def report(v: Violation) -> bool:
        out.append(v)
        return len(out) >= MAX_VIOLATIONS

    for name, T in (("additive associativity", add), ("multiplicative associativity", mul)):
        for a, b, c in product(range(n), repeat=3):
            if T[T[a][b]][c] != T[a][T[b][c]]:
                if report(Violation(name, "a,b,c", (a, b, c))):
                    return out
    for b, c, a in product(range(n), repeat=3):
        if mul[add[b][c]][a] != add[mul[b][a]][mul[c][a]]:
            if report(Violation("right distributivity", "b,c,a", (b, c, a))):
                return out
    for a, b, c in product(range(n), repeat=3):
        if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
            if report(Violation("left distributivity", "a,b,c", (a, b, c))):
                return out
    return out


def semiring(add: Sequence[Sequence[int]], mul: Sequence[Sequence[int]],
             name: str | None = None, check: bool = True) -> Semiring:
    """Build a Semiring, raising AxiomError unless the tables satisfy every law."""
    add_t, mul_t = _freeze(add), _freeze(mul)
    if check:
        violations = validate_axioms(add_t, mul_t)
        if violations:
            raise AxiomError(violations)
    return Semiring(add_t, mul_t, name)


@dataclass(frozen=True)
class SubsetRef:
    parent: Semiring
    members: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.members)) != len(self.members):
            raise SemiringError("subset has duplicate members")
        for a in self.members:
            if not 0 <= a < self.parent.order:
                raise SemiringError(f"subset member {a} outside carrier")

    @classmethod
    def from_mask(cls, parent: Semiring, mask: int) -> SubsetRef:
        return cls(parent, members_of(mask))

    @property
    def mask(self) -> int:
        return mask_of(self.members)

    def __contains__(self, a: int) -> bool:
        return a in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def subsemiring(S: Semiring, members: Iterable[int], first: int | None = None,
                name: str | None = None) -> tuple[Semiring, tuple[int, ...]]:
    """Induced semiring on a closed subset.

    New ids follow ascending order of the old ids, except that ``first`` (when
    given) becomes id 0. Returns the semiring and the tuple mapping new ids to
    old ids. Raises SemiringError if the subset is not closed under + and *.
    """
    old = sorted(set(members))
    if not old:
        raise SemiringError("empty subset")
    if first is not None:
        old.remove(first)
        old.insert(0, first)
    index = {a: i for i, a in enumerate(old)}
    add, mul = [], []
    for a in old:
        ra, rm = [], []
        for b in old:
            s, p = S.add[a][b], S.mul[a][b]
            if s not in index:
                raise SemiringError(f"subset not closed under +: {a}+{b}={s}")
            if p not in index:
                raise SemiringError(f"subset not closed under *: {a}*{b}={p}")
            ra.append(index[s])
            rm.append(index[p])
        add.append(tuple(ra))
        mul.append(tuple(rm))
    return Semiring(tuple(add), tuple(mul), name), tuple(old)


def is_closed(S: Semiring, mask: int) -> bool:
    for a in members_of(mask):
        for b in members_of(mask):
            if not (mask >> S.add[a][b]) & 1 or not (mask >> S.mul[a][b]) & 1:
                return False
    return True


# ---------------------------------------------------------------------------
# SMR v1 text format


def parse_semiring(text: str) -> Semiring:
    """Parse and validate an SMR v1 document."""
    lines = [
        (no, line.rstrip("\r"))
        for no, line in enumerate(text.split("\n"), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    pos = 0

    def take(expect: str | None = None) -> tuple[int, str]:
        nonlocal pos
        if pos >= len(lines):
            last = lines[-1][0] if lines else 1
            raise ParseError(f"unexpected end of input, expected {expect or 'more lines'}", last)
        no, line = lines[pos]
        pos += 1
        return no, line

    no, line = take("'smr 1'")
    if line.split() != ["smr", "1"]:
        raise ParseError(f"expected header 'smr 1', got {line.strip()!r}", no)
    no, line = take("'order <n>'")
    parts = line.split()
    if len(parts) != 2 or parts[0] != "order":
        raise ParseError(f"expected 'order <n>', got {line.strip()!r}", no)
    try:
        n = int(parts[1])
    except ValueError:
        raise ParseError(f"order is not an integer: {parts[1]!r}", no, line.index(parts[1]) + 1)
    if not 1 <= n <= MAX_ORDER:
        raise ParseError(f"order {n} outside 1..{MAX_ORDER}", no, line.index(parts[1]) + 1)

    def table(label: str) -> list[list[int]]:
        no, line = take(f"'{label}'")
        if line.strip() != label:
            raise ParseError(f"expected '{label}', got {line.strip()!r}", no)
        rows = []
        for _ in range(n):
            no, line = take(f"a row of the {label} table")
            row = []
            col = 0
            for tok in line.split():
                col = line.index(tok, col) + 1
                try:
                    v = int(tok)
                except ValueError:
                    raise ParseError(f"not an integer: {tok!r}", no, col)
                if not 0 <= v < n:
                    raise ParseError(f"entry out of range: {v} not in 0..{n - 1}", no, col)
                row.append(v)
                col += len(tok) - 1
            if len(row) != n:
                raise ParseError(f"{label} row has {len(row)} entries, expected {n}", no)
            rows.append(row)
        return rows

    add = table("add")
    mul = table("mul")
    name = None
    if pos < len(lines):
        no, line = take()
        if not line.startswith("name "):
            raise ParseError(f"unexpected content after tables: {line.strip()!r}", no)
        name = line[len("name "):].strip() or None
    if pos < len(lines):
        no, line = lines[pos]
        raise ParseError(f"unexpected content after name: {line.strip()!r}", no)
    return semiring(add, mul, name)


def serialize_semiring(S: Semiring) -> str:
    out = ["smr 1", f"order {S.order}", "add"]
    out += [" ".join(map(str, row)) for row in S.add]
    out.append("mul")
    out += [" ".join(map(str, row)) for row in S.mul]
    if S.name:
        out.append(f"name {S.name}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# generic constructions


def add_power(S: Semiring, a: int, n: int) -> int:
    """n·a = a + ... + a (n summands), by double-and-add."""
    if n < 1:
        raise SemiringError("add_power needs n >= 1; empty sums are undefined")
    A = S.add
    result = None
    base = a
    while n:
        if n & 1:
            result = base if result is None else A[result][base]
        n >>= 1
        if n:
            base = A[base][base]
    return result


def additive_orbit(S: Semiring, a: int) -> list[int]:
    """Distinct values a, 2a, 3a, ... in order of first appearance."""
    seen = {a}
    orbit = [a]
    x = S.add[a][a]
    while x not in seen:
        seen.add(x)
        orbit.append(x)
        x = S.add[x][a]
    return orbit


def direct_product(S: Semiring, T: Semiring, max_order: int = MAX_ORDER) -> Semiring:
    """Componentwise product; the pair (s, t) gets id ``s*|T| + t``."""
    m, k = S.order, T.order
    if m * k > max_order:
        raise SemiringError(f"product order {m * k} exceeds maximum {max_order}")
    pairs = [(s, t) for s in range(m) for t in range(k)]
    add = tuple(tuple(S.add[s][u] * k + T.add[t][v] for u, v in pairs) for s, t in pairs)
    mul = tuple(tuple(S.mul[s][u] * k + T.mul[t][v] for u, v in pairs) for s, t in pairs)
    name = f"{S.name}x{T.name}" if S.name and T.name else None
    return Semiring(add, mul, name)


# ---------------------------------------------------------------------------
# isomorphism


@dataclass(frozen=True)
class IsoWitness:
    mapping: tuple[int, ...]
    verified: bool

    def inverse(self) -> tuple[int, ...]:
        inv = [0] * len(self.mapping)
        for a, b in enumerate(self.mapping):
            inv[b] = a
        return tuple(inv)


def is_isomorphism(S: Semiring, T: Semiring, mapping: Sequence[int]) -> bool:
    n = S.order
    if T.order != n or len(mapping) != n or sorted(mapping) != list(range(n)):
        return False
    f = mapping
    for a in range(n):
        for b in range(n):
            if f[S.add[a][b]] != T.add[f[a]][f[b]] or f[S.mul[a][b]] != T.mul[f[a]][f[b]]:
                return False
    return True


def element_colors(S: Semiring) -> list[tuple[bool, int, bool]]:
    """Isomorphism-invariant color per element.

    (additively idempotent, least k with k·a additively idempotent,
    multiplicatively idempotent).
    """
    A = S.add
    colors = []
    for a in S.elements:
        k, x = 1, a
        while A[x][x] != x:
            k += 1
            x = A[x][a]
        colors.append((A[a][a] == a, k, S.mul[a][a] == a))
    return colors


def find_isomorphism(S: Semiring, T: Semiring) -> IsoWitness | None:
    """Backtracking search for a semiring isomorphism S -> T.

    Each tentative assignment a -> b is propagated: for every already-mapped
    pair the images of sums and products are forced, so most branches die
    after a few steps.
    """
    n = S.order
    if T.order != n:
        return None
    cs, ct = element_colors(S), element_colors(T)
    if sorted(cs) != sorted(ct):
        return None
    SA, SM, TA, TM = S.add, S.mul, T.add, T.mul
    fwd = [-1] * n
    bwd = [-1] * n
    assigned: list[int] = []

    def assign(a: int, b: int) -> bool:
        queue = [(a, b)]
        while queue:
            x, y = queue.pop()
            if fwd[x] == y:
                continue
            if fwd[x] != -1 or bwd[y] != -1 or cs[x] != ct[y]:
                return False
            fwd[x] = y
            bwd[y] = x
            assigned.append(x)
            for z in assigned:
                w = fwd[z]
                queue.append((SA[x][z], TA[y][w]))
                queue.append((SA[z][x], TA[w][y]))
                queue.append((SM[x][z], TM[y][w]))
                queue.append((SM[z][x], TM[w][y]))
        return True

    def undo(mark: int) -> None:
        while len(assigned) > mark:
            x = assigned.pop()
            bwd[fwd[x]] = -1
            fwd[x] = -1

    by_color: dict[tuple, list[int]] = {}
    for b in range(n):
        by_color.setdefault(ct[b], []).append(b)
    # most constrained colors first
    order = sorted(range(n), key=lambda a: (len(by_color[cs[a]]), a))

    def search(i: int) -> bool:
        while i < n and fwd[order[i]] != -1:
            i += 1
        if i == n:
            return True
        a = order[i]
        for b in by_color[cs[a]]:
            if bwd[b] != -1:
                continue
            mark = len(assigned)
            if assign(a, b) and search(i + 1):
                return True
            undo(mark)
        return False

    if not search(0):
        return None
    mapping = tuple(fwd)
    return IsoWitness(mapping, is_isomorphism(S, T, mapping))


def canonical_form(S: Semiring) -> tuple[Table, Table]:
    """Lexicographically least (add, mul) pair over all relabelings. Exponential; small orders only."""
    from itertools import permutations

    best = None
    for perm in permutations(range(S.order)):
        R = S.relabel(perm)
        key = (R.add, R.mul)
        if best is None or key < best:
            best = key
    return best
