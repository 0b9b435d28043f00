"""Rees matrix semirings over skew-rings: construction, validation, and coordinatization."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .classify import additive_group_check, classify
from .core import (
    IsoWitness,
    ParseError,
    PreconditionError,
    Semiring,
    SemiringError,
    SevereDiagnostic,
    is_isomorphism,
    members_of,
    parse_semiring,
    serialize_semiring,
    subsemiring,
    MAX_ORDER,
)
from .greens import greens_additive


@dataclass(frozen=True)
class Band:
    """An idempotent semigroup on labels; ``table[x][y]`` is the index of label x·y."""

    labels: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    o: str

    def __post_init__(self):
        n = len(self.labels)
        if n == 0 or len(set(self.labels)) != n:
            raise SemiringError("band labels must be nonempty and distinct")
        if self.o not in self.labels:
            raise SemiringError(f"distinguished element {self.o!r} is not a band label")
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise SemiringError("band table has wrong shape")
        T = self.table
        for x in range(n):
            if any(not 0 <= v < n for v in T[x]):
                raise SemiringError("band table entry out of range")
            if T[x][x] != x:
                raise SemiringError(f"band is not idempotent at {self.labels[x]}")
        for x, y, z in product(range(n), repeat=3):
            if T[T[x][y]][z] != T[x][T[y][z]]:
                raise SemiringError(
                    f"band is not associative at {self.labels[x]},{self.labels[y]},{self.labels[z]}"
                )

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def o_index(self) -> int:
        return self.labels.index(self.o)

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def o_is_identity(self) -> bool:
        k = self.o_index
        return all(self.table[k][x] == x and self.table[x][k] == x for x in range(self.size))


@dataclass(frozen=True)
class ReesSpec:
    """Skew-ring R, index bands I and Λ sharing o, and the sandwich matrix P.

    ``P[lam][i]`` is p_{λ,i}, an element id of R, with λ and i band indices.
    """

    R: Semiring
    I: Band
    L: Band
    P: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return self.I.size * self.R.order * self.L.size

    def p(self, lam: int, i: int) -> int:
        return self.P[lam][i]

    @property
    def nonzero_p(self) -> bool:
        z = _zero(self.R)
        return any(v != z for row in self.P for v in row)


def _zero(R: Semiring) -> int:
    v = additive_group_check(R)
    if not v:
        raise PreconditionError(f"R is not a skew-ring: {v.evidence}")
    return v.witness


def _negation(R: Semiring, zero: int) -> list[int]:
    return [next(x for x in R.elements if R.add[a][x] == zero) for a in R.elements]


def _check_shape(spec: ReesSpec) -> list[str]:
    out = []
    shared = set(spec.I.labels) & set(spec.L.labels)
    if spec.I.o != spec.L.o or shared != {spec.I.o}:
        out.append(f"index sets must meet exactly in o; shared labels {sorted(shared)}")
    if len(spec.P) != spec.L.size or any(len(r) != spec.I.size for r in spec.P):
        out.append("P must have |Λ| rows of |I| entries")
        return out
    if any(not 0 <= v < spec.R.order for r in spec.P for v in r):
        out.append("P entry is not an element of R")
    return out


def validate_sandwich(spec: ReesSpec) -> list[str]:
    """Violations of the six sandwich conditions; empty iff the spec is valid.

    Raises PreconditionError if R is not a skew-ring, and SevereDiagnostic if
    the conditions hold but the derived identity p_{λμ,ij} = p_{λo,oj} + p_{oμ,io}
    does not.
    """
    R = spec.R
    zero = _zero(R)
    out = _check_shape(spec)
    if out:
        return out
    neg = _negation(R, zero)
    A, M = R.add, R.mul
    I, L = spec.I, spec.L
    oi, ol = I.o_index, L.o_index
    p = spec.p
    lab_i, lab_l = I.labels, L.labels
    nI, nL = I.size, L.size

    for lam in range(nL):
        if p(lam, oi) != zero:
            out.append(f"condition 1: p[{lab_l[lam]},o]={p(lam, oi)} != 0")
    for i in range(nI):
        if p(ol, i) != zero:
            out.append(f"condition 1: p[o,{lab_i[i]}]={p(ol, i)} != 0")

    def diff3(x: int, y: int, z: int) -> int:
        return A[A[x][neg[y]]][z]

    for i, j, k in product(range(nI), repeat=3):
        for lam, mu, nu in product(range(nL), repeat=3):
            lm, nm = L.mul(lam, mu), L.mul(nu, mu)
            kj, ij = I.mul(k, j), I.mul(i, j)
            if p(lm, kj) != diff3(p(lm, ij), p(nm, ij), p(nm, kj)):
                out.append(
                    f"condition 2 at i,j,k={lab_i[i]},{lab_i[j]},{lab_i[k]} "
                    f"λ,μ,ν={lab_l[lam]},{lab_l[mu]},{lab_l[nu]}"
                )
            ml, mn = L.mul(mu, lam), L.mul(mu, nu)
            jk, ji = I.mul(j, k), I.mul(j, i)
            if p(ml, jk) != diff3(p(ml, ji), p(mn, ji), p(mn, jk)):
                out.append(
                    f"condition 3 at i,j,k={lab_i[i]},{lab_i[j]},{lab_i[k]} "
                    f"λ,μ,ν={lab_l[lam]},{lab_l[mu]},{lab_l[nu]}"
                )
            if len(out) >= 100:
                return out

    for lam, i in product(range(nL), range(nI)):
        v = p(lam, i)
        for a in R.elements:
            if M[a][v] != zero or M[v][a] != zero:
                out.append(f"condition 4: a={a}, p[{lab_l[lam]},{lab_i[i]}]={v}")
                break

    products = {M[a][b] for a in R.elements for b in R.elements}
    for mu, i in product(range(nL), range(nI)):
        v = p(L.mul(ol, mu), I.mul(i, oi))
        for ab in sorted(products):
            if A[ab][v] != A[v][ab]:
                out.append(f"condition 5: ab={ab}, μ={lab_l[mu]}, i={lab_i[i]}")
                break
    for lam, j in product(range(nL), range(nI)):
        v = p(L.mul(lam, ol), I.mul(oi, j))
        for ab in sorted(products):
            if A[ab][v] != A[v][ab]:
                out.append(f"condition 6: ab={ab}, λ={lab_l[lam]}, j={lab_i[j]}")
                break

    if not out:
        bad = corollary_failures(spec)
        if bad:
            raise SevereDiagnostic(f"sandwich conditions hold but {bad[0]}")
    return out


def corollary_failures(spec: ReesSpec) -> list[str]:
    """Check the three identities that follow from a valid sandwich matrix."""
    R = spec.R
    A = R.add
    I, L = spec.I, spec.L
    oi, ol = I.o_index, L.o_index
    p = spec.p
    out = []
    for lam, mu in product(range(L.size), repeat=2):
        for i, j in product(range(I.size), repeat=2):
            lhs = p(L.mul(lam, mu), I.mul(i, j))
            rhs = A[p(L.mul(lam, ol), I.mul(oi, j))][p(L.mul(ol, mu), I.mul(i, oi))]
            if lhs != rhs:
                out.append(
                    f"p[λμ,ij] != p[λo,oj] + p[oμ,io] at λ,μ={L.labels[lam]},{L.labels[mu]} "
                    f"i,j={I.labels[i]},{I.labels[j]}"
                )
    products = sorted({R.mul[a][b] for a in R.elements for b in R.elements})
    for lam, i in product(range(L.size), range(I.size)):
        v = p(lam, i)
        rhs = A[p(L.mul(lam, ol), I.mul(oi, i))][p(L.mul(ol, lam), I.mul(i, oi))]
        if v != rhs:
            out.append(f"p[λ,i] != p[λo,oi] + p[oλ,io] at λ={L.labels[lam]} i={I.labels[i]}")
        for ab in products:
            if A[ab][v] != A[v][ab]:
                out.append(f"ab + p[λ,i] != p[λ,i] + ab at λ={L.labels[lam]} i={I.labels[i]} ab={ab}")
                break
    return out


def rees_index(spec: ReesSpec, i: int, a: int, lam: int) -> int:
    return (i * spec.R.order + a) * spec.L.size + lam


def build_rees(spec: ReesSpec, max_order: int = MAX_ORDER) -> tuple[Semiring, list[tuple[int, int, int]]]:
    """Tables of M(I, R, Λ; P); element ids enumerate (i, a, λ) lexicographically."""
    bad = validate_sandwich(spec)
    if bad:
        raise PreconditionError(f"invalid Rees spec: {bad[0]}")
    if spec.order > max_order:
        raise SemiringError(f"Rees semiring order {spec.order} exceeds maximum {max_order}")
    R, I, L = spec.R, spec.I, spec.L
    A, M = R.add, R.mul
    neg = _negation(R, _zero(R))
    triples = [(i, a, lam) for i in range(I.size) for a in R.elements for lam in range(L.size)]
    add, mul = [], []
    for i, a, lam in triples:
        ra, rm = [], []
        for j, b, mu in triples:
            ra.append(rees_index(spec, i, A[A[a][spec.p(lam, j)]][b], mu))
            ij, lm = I.mul(i, j), L.mul(lam, mu)
            rm.append(rees_index(spec, ij, A[neg[spec.p(lm, ij)]][M[a][b]], lm))
        add.append(tuple(ra))
        mul.append(tuple(rm))
    S = Semiring(tuple(add), tuple(mul))
    rep = classify(S)
    if not rep.is_completely_simple:
        raise SevereDiagnostic(f"Rees matrix semiring is not completely simple: {rep.is_completely_simple.evidence}")
    return S, triples


def coordinatize(S: Semiring) -> tuple[ReesSpec, IsoWitness]:
    """Rees coordinates for a completely simple semiring, with a verified isomorphism onto the build."""
    v = classify(S).is_completely_simple
    if not v:
        raise PreconditionError(f"not completely simple: {v.evidence}")
    G = greens_additive(S)
    Lc, Rc, Hc = G.l_classes, G.r_classes, G.h_classes
    E = members_of(S.add_idempotents)
    e = E[0]
    I_ids = [e] + [f for f in E if f != e and Lc[f] == Lc[e]]
    L_ids = [e] + [f for f in E if f != e and Rc[f] == Rc[e]]

    def band(ids: list[int], prefix: str) -> Band:
        index = {a: k for k, a in enumerate(ids)}
        table = []
        for a in ids:
            row = []
            for b in ids:
                ab = S.mul[a][b]
                if ab not in index:
                    raise SevereDiagnostic(f"index band not closed: {a}*{b}={ab}")
                row.append(index[ab])
            table.append(tuple(row))
        labels = tuple("o" if a == e else f"{prefix}{a}" for a in ids)
        return Band(labels, tuple(table), "o")

    I, L = band(I_ids, "i"), band(L_ids, "l")
    R, r_ids = subsemiring(S, [a for a in S.elements if Hc[a] == Hc[e]], first=e)
    r_index = {a: k for k, a in enumerate(r_ids)}
    P = []
    for lam in L_ids:
        row = []
        for i in I_ids:
            s = S.add[lam][i]
            if s not in r_index:
                raise SevereDiagnostic(f"sandwich entry {lam}+{i}={s} outside H+(e)")
            row.append(r_index[s])
        P.append(tuple(row))
    spec = ReesSpec(R, I, L, tuple(P))

    def unique(cands: list[int], what: str, a: int) -> int:
        if len(cands) != 1:
            raise SevereDiagnostic(f"{what} for element {a} is not unique: {cands}")
        return cands[0]

    mapping = []
    for a in S.elements:
        ia = unique([k for k, f in enumerate(I_ids) if Rc[f] == Rc[a]], "I-coordinate", a)
        la = unique([k for k, f in enumerate(L_ids) if Lc[f] == Lc[a]], "Λ-coordinate", a)
        mapping.append(rees_index(spec, ia, r_index[S.plus(e, a, e)], la))
    M, _ = build_rees(spec)
    mapping = tuple(mapping)
    if not is_isomorphism(S, M, mapping):
        raise SevereDiagnostic("coordinate map is not an isomorphism")
    return spec, IsoWitness(mapping, True)


# ---------------------------------------------------------------------------
# REES v1 text format


def _band_lines(tag: str, band: Band) -> list[str]:
    marked = ["*" + x if x == band.o else x for x in band.labels]
    out = [f"{tag} " + " ".join(marked)]
    for row in band.table:
        out.append(" ".join(band.labels[v] for v in row))
    return out


def serialize_rees(spec: ReesSpec) -> str:
    out = ["rees 1", "skewring"]
    out += serialize_semiring(spec.R).rstrip("\n").split("\n")
    out += _band_lines("bandI", spec.I)
    out += _band_lines("bandL", spec.L)
    out.append("P")
    out += [" ".join(map(str, row)) for row in spec.P]
    return "\n".join(out) + "\n"


def parse_rees(text: str) -> ReesSpec:
    lines = [
        (no, line.rstrip("\r"))
        for no, line in enumerate(text.split("\n"), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines or lines[0][1].split() != ["rees", "1"]:
        raise ParseError("expected header 'rees 1'", lines[0][0] if lines else 1)
    if len(lines) < 2 or lines[1][1].strip() != "skewring":
        raise ParseError("expected 'skewring'", lines[1][0] if len(lines) > 1 else 1)
    pos = 2
    start = pos
    while pos < len(lines) and not lines[pos][1].startswith("bandI"):
        pos += 1
    if pos == len(lines):
        raise ParseError("missing 'bandI' section", lines[-1][0])
    smr_text = "\n".join(line for _, line in lines[start:pos]) + "\n"
    try:
        R = parse_semiring(smr_text)
    except ParseError as exc:
        raise ParseError(f"in skewring block: {exc}", lines[start][0]) from exc

    def band(tag: str) -> Band:
        nonlocal pos
        if pos >= len(lines):
            raise ParseError(f"missing '{tag}' section", lines[-1][0])
        no, line = lines[pos]
        parts = line.split()
        if not parts or parts[0] != tag or len(parts) < 2:
            raise ParseError(f"expected '{tag} <labels>'", no)
        raw = parts[1:]
        marked = [x[1:] for x in raw if x.startswith("*")]
        if len(marked) != 1:
            raise ParseError(f"{tag} must mark exactly one label with '*'", no)
        labels = tuple(x.lstrip("*") for x in raw)
        index = {x: k for k, x in enumerate(labels)}
        pos += 1
        table = []
        for _ in labels:
            if pos >= len(lines):
                raise ParseError(f"{tag} table is truncated", lines[-1][0])
            no, line = lines[pos]
            row = line.split()
            if len(row) != len(labels) or any(x not in index for x in row):
                raise ParseError(f"bad {tag} table row {line.strip()!r}", no)
            table.append(tuple(index[x] for x in row))
            pos += 1
        try:
            return Band(labels, tuple(table), marked[0])
        except SemiringError as exc:
            raise ParseError(str(exc), no) from exc

    I = band("bandI")
    L = band("bandL")
    if pos >= len(lines) or lines[pos][1].strip() != "P":
        raise ParseError("expected 'P'", lines[min(pos, len(lines) - 1)][0])
    pos += 1
    P = []
    for _ in range(L.size):
        if pos >= len(lines):
            raise ParseError("P matrix is truncated", lines[-1][0])
        no, line = lines[pos]
        try:
            row = tuple(int(x) for x in line.split())
        except ValueError:
            raise ParseError(f"non-integer in P row {line.strip()!r}", no)
        if len(row) != I.size:
            raise ParseError(f"P row has {len(row)} entries, expected {I.size}", no)
        P.append(row)
        pos += 1
    if pos < len(lines):
        raise ParseError("unexpected content after P", lines[pos][0])
    return ReesSpec(R, I, L, tuple(P))


def band_from_table(table: Sequence[Sequence[int]], o: int, prefix: str) -> Band:
    """Band on ``prefix<k>`` labels from an idempotent semigroup table, element ``o`` labelled 'o'."""
    labels = tuple("o" if k == o else f"{prefix}{k}" for k in range(len(table)))
    return Band(labels, tuple(tuple(r) for r in table), "o")
