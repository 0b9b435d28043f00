"""Green's relations of the additive reduct, regularity data, and the starred relations.

Partitions are tuples of class ids, one per element, with ids handed out in
order of each class's least member.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Hashable, Sequence

from .core import (
    Semiring,
    SevereDiagnostic,
    SubsetRef,
    additive_orbit,
    mask_of,
    members_of,
)

Partition = tuple[int, ...]

PLAIN = "plain-additive"
STARRED = "starred"


def partition_by(n: int, key: Callable[[int], Hashable]) -> Partition:
    ids: dict[Hashable, int] = {}
    out = []
    for a in range(n):
        out.append(ids.setdefault(key(a), len(ids)))
    return tuple(out)


def classes(partition: Partition) -> list[tuple[int, ...]]:
    groups: dict[int, list[int]] = {}
    for a, c in enumerate(partition):
        groups.setdefault(c, []).append(a)
    return [tuple(groups[c]) for c in sorted(groups)]


def canonical(partition: Sequence[int]) -> Partition:
    return partition_by(len(partition), lambda a: partition[a])


def refines(fine: Partition, coarse: Partition) -> bool:
    return all(
        coarse[a] == coarse[b]
        for a in range(len(fine))
        for b in range(len(fine))
        if fine[a] == fine[b]
    )


def compose(p: Partition, q: Partition) -> list[int]:
    """Relation p∘q as bit-set rows: a (p∘q) b iff a p c and c q b for some c."""
    n = len(p)
    q_class_mask: dict[int, int] = {}
    for c in range(n):
        q_class_mask[q[c]] = q_class_mask.get(q[c], 0) | (1 << c)
    rows = []
    for a in range(n):
        row = 0
        for c in range(n):
            if p[c] == p[a]:
                row |= q_class_mask[q[c]]
        rows.append(row)
    return rows


def relation_to_partition(rows: list[int]) -> Partition | None:
    """The partition a relation defines, or None if it is not an equivalence."""
    n = len(rows)
    for a in range(n):
        if not (rows[a] >> a) & 1:
            return None
        for b in members_of(rows[a]):
            if rows[b] != rows[a]:
                return None
    return partition_by(n, lambda a: rows[a])


@dataclass(frozen=True)
class GreensData:
    variant: str
    l_classes: Partition
    r_classes: Partition
    h_classes: Partition
    d_classes: Partition
    j_classes: Partition
    lr_commute: bool

    def relation(self, name: str) -> Partition:
        return getattr(self, f"{name.lower()}_classes")

    def as_dict(self) -> dict:
        return {
            "variant": self.variant,
            **{k: [list(c) for c in classes(self.relation(k))] for k in "LRHDJ"},
            "lr_commute": self.lr_commute,
        }


# ---------------------------------------------------------------------------
# principal ideals of (S, +)


def left_ideal(S: Semiring, a: int) -> int:
    """{a} ∪ (S + a)."""
    m = 1 << a
    for x in S.elements:
        m |= 1 << S.add[x][a]
    return m


def right_ideal(S: Semiring, a: int) -> int:
    """{a} ∪ (a + S)."""
    m = 1 << a
    for x in S.elements:
        m |= 1 << S.add[a][x]
    return m


def two_sided_ideal(S: Semiring, a: int) -> int:
    m = left_ideal(S, a) | right_ideal(S, a)
    for x in S.elements:
        xa = S.add[x][a]
        for y in S.elements:
            m |= 1 << S.add[xa][y]
    return m


def _assemble(variant: str, n: int, lkey, rkey, jkey) -> GreensData:
    L = partition_by(n, lkey)
    R = partition_by(n, rkey)
    J = partition_by(n, jkey)
    H = partition_by(n, lambda a: (L[a], R[a]))
    lr = compose(L, R)
    rl = compose(R, L)
    D = relation_to_partition(lr)
    if D is None:
        raise SevereDiagnostic(f"{variant} L∘R is not an equivalence relation")
    return GreensData(variant, L, R, H, D, J, lr == rl)


@lru_cache(maxsize=8192)
def greens_additive(S: Semiring) -> GreensData:
    lid = [left_ideal(S, a) for a in S.elements]
    rid = [right_ideal(S, a) for a in S.elements]
    jid = [two_sided_ideal(S, a) for a in S.elements]
    return _assemble(PLAIN, S.order, lid.__getitem__, rid.__getitem__, jid.__getitem__)


# ---------------------------------------------------------------------------
# regularity


def is_additively_regular(S: Semiring, a: int) -> bool:
    A = S.add
    return any(A[A[a][x]][a] == a for x in S.elements)


def additive_inverses(S: Semiring, a: int) -> SubsetRef:
    """V+(a) = {x : a = a+x+a and x = x+a+x}."""
    A = S.add
    return SubsetRef(
        S,
        tuple(x for x in S.elements if A[A[a][x]][a] == a and A[A[x][a]][x] == x),
    )


def completely_regular_witness(S: Semiring, a: int) -> int | None:
    """Least x with a = a+x+a, a+x = x+a and a(a+x) = a+x."""
    A, M = S.add, S.mul
    for x in S.elements:
        ax = A[a][x]
        if A[ax][a] == a and ax == A[x][a] and M[a][ax] == ax:
            return x
    return None


def quasi_index(S: Semiring, a: int) -> int | None:
    """Least m >= 1 with m·a additively regular."""
    for m, x in enumerate(additive_orbit(S, a), start=1):
        if (S.add_regular >> x) & 1:
            return m
    return None


@dataclass(frozen=True)
class RegularityProfile:
    add_idempotent: tuple[bool, ...]
    add_regular: tuple[bool, ...]
    quasi_index: tuple[int | None, ...]
    cr_witness: tuple[int | None, ...]
    inverse_sets: tuple[tuple[int, ...], ...]

    @property
    def complete(self) -> bool:
        return all(m is not None for m in self.quasi_index)

    def as_dict(self) -> dict:
        return {
            "add_idempotent": [a for a, f in enumerate(self.add_idempotent) if f],
            "add_regular": [a for a, f in enumerate(self.add_regular) if f],
            "quasi_index": list(self.quasi_index),
            "cr_witness": list(self.cr_witness),
            "inverse_sets": [list(v) for v in self.inverse_sets],
        }


@lru_cache(maxsize=8192)
def regularity_profile(S: Semiring) -> RegularityProfile:
    return RegularityProfile(
        add_idempotent=tuple(bool((S.add_idempotents >> a) & 1) for a in S.elements),
        add_regular=tuple(bool((S.add_regular >> a) & 1) for a in S.elements),
        quasi_index=tuple(quasi_index(S, a) for a in S.elements),
        cr_witness=tuple(completely_regular_witness(S, a) for a in S.elements),
        inverse_sets=tuple(additive_inverses(S, a).members for a in S.elements),
    )


def regular_power(S: Semiring, a: int) -> int:
    """m·a for the least m making it additively regular."""
    for x in additive_orbit(S, a):
        if (S.add_regular >> x) & 1:
            return x
    raise SevereDiagnostic(f"element {a} has no additively regular multiple")


@lru_cache(maxsize=8192)
def starred_greens(S: Semiring) -> GreensData:
    """L*+, R*+, J*+ compare least regular multiples; H*+ is the meet, D*+ = L*+∘R*+."""
    plain = greens_additive(S)
    f = [regular_power(S, a) for a in S.elements]
    return _assemble(
        STARRED,
        S.order,
        lambda a: plain.l_classes[f[a]],
        lambda a: plain.r_classes[f[a]],
        lambda a: plain.j_classes[f[a]],
    )


def class_mask(partition: Partition, a: int) -> int:
    return mask_of(b for b, c in enumerate(partition) if c == partition[a])
