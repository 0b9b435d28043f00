"""Decide the named classes of semiring, each with a witness or counterexample."""

from __future__ import annotations

from dataclasses import dataclass, fields
from functools import lru_cache
from itertools import product

from .core import Semiring, Verdict, additive_orbit, members_of, subsemiring
from .greens import (
    classes,
    completely_regular_witness,
    greens_additive,
    starred_greens,
)


def _yes(msg: str = "", witness=None) -> Verdict:
    return Verdict(True, msg, witness)


def _no(msg: str, witness=None) -> Verdict:
    return Verdict(False, msg, witness)


def additive_group_check(S: Semiring) -> Verdict:
    """(S, +) is a group: unique idempotent acting as identity, with inverses."""
    idem = members_of(S.add_idempotents)
    if len(idem) != 1:
        return _no(f"additive idempotents {list(idem)} (need exactly one)")
    e = idem[0]
    A = S.add
    for a in S.elements:
        if A[e][a] != a or A[a][e] != a:
            return _no(f"{e} is not an additive identity at {a}", a)
        if not any(A[a][x] == e and A[x][a] == e for x in S.elements):
            return _no(f"element {a} has no additive inverse", a)
    return _yes(f"additive identity {e}", e)


def is_skew_ring(S: Semiring) -> Verdict:
    return additive_group_check(S)


def _band_check(S: Semiring, table, op: str) -> Verdict:
    for a in S.elements:
        if table[a][a] != a:
            return _no(f"{a}{op}{a}={table[a][a]}", a)
    return _yes()


def _commutative_check(S: Semiring, table, op: str) -> Verdict:
    for a, b in product(S.elements, repeat=2):
        if table[a][b] != table[b][a]:
            return _no(f"{a}{op}{b} != {b}{op}{a}", (a, b))
    return _yes()


def is_b_lattice(S: Semiring) -> Verdict:
    for v in (
        _band_check(S, S.mul, "*"),
        _band_check(S, S.add, "+"),
        _commutative_check(S, S.add, "+"),
    ):
        if not v:
            return v
    return _yes()


def is_idempotent_semiring(S: Semiring) -> Verdict:
    for v in (_band_check(S, S.add, "+"), _band_check(S, S.mul, "*")):
        if not v:
            return v
    return _yes()


def is_completely_regular_element(S: Semiring, a: int) -> int | None:
    return completely_regular_witness(S, a)


def is_completely_regular(S: Semiring) -> Verdict:
    for a in S.elements:
        if completely_regular_witness(S, a) is None:
            return _no(f"element {a} is not completely regular", a)
    return _yes()


def is_additively_quasi_regular(S: Semiring) -> Verdict:
    for a in S.elements:
        if not any((S.add_regular >> x) & 1 for x in additive_orbit(S, a)):
            return _no(f"no multiple of {a} is additively regular", a)
    return _yes()


def is_quasi_completely_regular(S: Semiring) -> Verdict:
    """Every element has a completely regular additive multiple.

    The witness is the least such multiple index per element.
    """
    indices = []
    for a in S.elements:
        for n, x in enumerate(additive_orbit(S, a), start=1):
            if completely_regular_witness(S, x) is not None:
                indices.append(n)
                break
        else:
            return _no(f"no multiple of {a} is completely regular", a)
    return _yes(witness=tuple(indices))


def _universal(partition) -> bool:
    return len(set(partition)) == 1


def is_completely_simple(S: Semiring) -> Verdict:
    cr = is_completely_regular(S)
    if not cr:
        return cr
    J = greens_additive(S).j_classes
    if not _universal(J):
        return _no(f"J+ classes {[list(c) for c in classes(J)]}")
    return _yes()


def is_completely_archimedean(S: Semiring) -> Verdict:
    qcr = is_quasi_completely_regular(S)
    if not qcr:
        return qcr
    J = starred_greens(S).j_classes
    if not _universal(J):
        return _no(f"J*+ classes {[list(c) for c in classes(J)]}")
    return _yes()


def is_additively_orthodox(S: Semiring) -> Verdict:
    E = S.add_idempotents
    for e in members_of(E):
        for f in members_of(E):
            s = S.add[e][f]
            if not (E >> s) & 1:
                return _no(f"{e}+{f}={s} is not an additive idempotent", (e, f))
    return _yes()


def is_rectangular_band_semiring(S: Semiring) -> Verdict:
    v = is_idempotent_semiring(S)
    if not v:
        return v
    A = S.add
    for a, x in product(S.elements, repeat=2):
        if A[A[a][x]][a] != a:
            return _no(f"{a}+{x}+{a} != {a}", (a, x))
    return _yes()


def is_left_zero_semiring(S: Semiring) -> Verdict:
    v = is_idempotent_semiring(S)
    if not v:
        return v
    for a, b in product(S.elements, repeat=2):
        if S.add[a][b] != a:
            return _no(f"{a}+{b} != {a}", (a, b))
    return _yes()


def is_rectangular_skew_ring(S: Semiring) -> Verdict:
    for v in (is_completely_simple(S), is_additively_orthodox(S)):
        if not v:
            return v
    return _yes()


def is_left_skew_ring(S: Semiring) -> Verdict:
    """Rectangular skew-ring whose additive idempotents form a left zero band."""
    v = is_rectangular_skew_ring(S)
    if not v:
        return v
    for e in members_of(S.add_idempotents):
        for f in members_of(S.add_idempotents):
            if S.add[e][f] != e:
                return _no(f"idempotents {e}+{f} != {e}", (e, f))
    return _yes()


def is_quasi_skew_ring(S: Semiring) -> Verdict:
    """Reg+S is a sub-skew-ring and every element has a multiple inside it."""
    reg = S.add_regular
    try:
        sub, _ = subsemiring(S, members_of(reg))
    except ValueError as exc:
        return _no(f"Reg+S is not a subsemiring: {exc}")
    group = additive_group_check(sub)
    if not group:
        return _no(f"Reg+S={list(members_of(reg))} is not a skew-ring")
    for a in S.elements:
        if not any((reg >> x) & 1 for x in additive_orbit(S, a)):
            return _no(f"no multiple of {a} lies in Reg+S", a)
    return _yes(f"Reg+S={list(members_of(reg))}", members_of(reg))


@dataclass(frozen=True)
class ClassificationReport:
    is_skew_ring: Verdict
    is_b_lattice: Verdict
    is_idempotent_semiring: Verdict
    is_completely_regular: Verdict
    is_additively_quasi_regular: Verdict
    is_quasi_completely_regular: Verdict
    is_completely_simple: Verdict
    is_completely_archimedean: Verdict
    is_additively_orthodox: Verdict
    is_rectangular_band_semiring: Verdict
    is_rectangular_skew_ring: Verdict
    is_left_zero_semiring: Verdict
    is_left_skew_ring: Verdict
    is_quasi_skew_ring: Verdict

    def items(self):
        return [(f.name, getattr(self, f.name)) for f in fields(self)]

    def as_dict(self) -> dict:
        return {k: {"holds": v.holds, "evidence": v.evidence} for k, v in self.items()}

    def implication_failures(self) -> list[str]:
        """Implications every report must satisfy; returns the violated ones."""
        rules = [
            ("is_completely_simple", "is_completely_regular"),
            ("is_completely_archimedean", "is_quasi_completely_regular"),
            ("is_rectangular_skew_ring", "is_completely_simple"),
            ("is_rectangular_skew_ring", "is_additively_orthodox"),
            ("is_left_skew_ring", "is_rectangular_skew_ring"),
            ("is_skew_ring", "is_left_skew_ring"),
            ("is_b_lattice", "is_quasi_completely_regular"),
        ]
        return [
            f"{p} => {q}" for p, q in rules if getattr(self, p).holds and not getattr(self, q).holds
        ]


_DECIDERS = {
    f.name: globals()[f.name] for f in fields(ClassificationReport)
}


@lru_cache(maxsize=8192)
def classify(S: Semiring) -> ClassificationReport:
    return ClassificationReport(**{name: fn(S) for name, fn in _DECIDERS.items()})
