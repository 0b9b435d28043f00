"""Bi-ideals, congruences and quotients, kernels, nil-extensions, and the two decompositions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .classify import ClassificationReport, classify
from .core import (
    IsoWitness,
    PreconditionError,
    Semiring,
    SemiringError,
    SevereDiagnostic,
    SubsetRef,
    Verdict,
    additive_orbit,
    direct_product,
    is_isomorphism,
    members_of,
    subsemiring,
)
from .greens import Partition, canonical, classes, greens_additive, starred_greens


def is_bi_ideal(S: Semiring, K: SubsetRef) -> Verdict:
    """For every a in K and x in S: a+x, x+a, ax, xa all lie in K."""
    if not len(K):
        raise PreconditionError("bi-ideal candidate is empty")
    m = K.mask
    for a in K:
        for x in S.elements:
            for label, v in (
                ("a+x", S.add[a][x]),
                ("x+a", S.add[x][a]),
                ("ax", S.mul[a][x]),
                ("xa", S.mul[x][a]),
            ):
                if not (m >> v) & 1:
                    return Verdict(False, f"a={a}, x={x}: {label}={v} not in K", (a, x, label))
    return Verdict(True)


@dataclass(frozen=True)
class Congruence:
    parent: Semiring
    partition: Partition

    @property
    def classes(self) -> list[tuple[int, ...]]:
        return classes(self.partition)


def is_congruence(S: Semiring, partition: Sequence[int]) -> Verdict:
    """Compatibility of the partition with + and * checked over all pairs of pairs."""
    if len(partition) != S.order:
        raise SemiringError(f"partition has {len(partition)} entries, carrier has {S.order}")
    p = canonical(partition)
    reps = [c[0] for c in classes(p)]
    # it is enough to compare every element against its class representative
    for a in S.elements:
        a0 = reps[p[a]]
        for b in S.elements:
            for op, T in (("+", S.add), ("*", S.mul)):
                if p[T[a][b]] != p[T[a0][b]]:
                    return Verdict(False, f"{a}~{a0} but {a}{op}{b} !~ {a0}{op}{b}", (a, a0, b, b, op))
                if p[T[b][a]] != p[T[b][a0]]:
                    return Verdict(False, f"{a}~{a0} but {b}{op}{a} !~ {b}{op}{a0}", (b, b, a, a0, op))
    return Verdict(True)


def congruence(S: Semiring, partition: Sequence[int]) -> Congruence:
    v = is_congruence(S, partition)
    if not v:
        raise PreconditionError(f"not a congruence: {v.evidence}")
    return Congruence(S, canonical(partition))


def quotient_by(S: Semiring, c: Congruence) -> Semiring:
    """Quotient semiring on the classes; class k of the canonical partition becomes element k."""
    p = c.partition
    reps = [cl[0] for cl in classes(p)]
    add = tuple(tuple(p[S.add[a][b]] for b in reps) for a in reps)
    mul = tuple(tuple(p[S.mul[a][b]] for b in reps) for a in reps)
    return Semiring(add, mul)


def rees_quotient(S: Semiring, K: SubsetRef) -> tuple[Semiring, Congruence]:
    v = is_bi_ideal(S, K)
    if not v:
        raise PreconditionError(f"not a bi-ideal: {v.evidence}")
    m = K.mask
    anchor = K.members[0]
    c = Congruence(S, canonical([anchor if (m >> a) & 1 else a for a in S.elements]))
    Q = quotient_by(S, c)
    z = c.partition[anchor]
    for x in Q.elements:
        if Q.add[z][x] != z or Q.add[x][z] != z or Q.mul[z][x] != z or Q.mul[x][z] != z:
            raise SevereDiagnostic(f"class of K is not a zero of S/K (fails with {x})")
    return Q, c


def kernel(S: Semiring) -> SubsetRef | None:
    """Reg+S when it is a bi-ideal."""
    K = SubsetRef.from_mask(S, S.add_regular)
    if len(K) and is_bi_ideal(S, K):
        return K
    return None


def is_nil_extension(S: Semiring, K: SubsetRef) -> Verdict:
    """Every a has some n·a in K. Witness: least such n per element."""
    v = is_bi_ideal(S, K)
    if not v:
        raise PreconditionError(f"not a bi-ideal: {v.evidence}")
    m = K.mask
    least = []
    for a in S.elements:
        for n, x in enumerate(additive_orbit(S, a), start=1):
            if (m >> x) & 1:
                least.append(n)
                break
        else:
            return Verdict(False, f"no multiple of {a} lies in K", a)
    return Verdict(True, "", tuple(least))


def nil_extension_kernel(S: Semiring) -> tuple[SubsetRef, Semiring] | None:
    """If S is a nil-extension of its regular part, the kernel and its induced semiring."""
    K = kernel(S)
    if K is None or not is_nil_extension(S, K):
        return None
    sub, _ = subsemiring(S, K.members)
    return K, sub


# ---------------------------------------------------------------------------
# rectangular skew-rings


@dataclass(frozen=True)
class RectangularDecomposition:
    band_part: Semiring
    skew_part: Semiring
    band_ids: tuple[int, ...]
    skew_ids: tuple[int, ...]
    iso: IsoWitness


def least_add_idempotent(S: Semiring) -> int:
    return members_of(S.add_idempotents)[0]


def decompose_rectangular(S: Semiring) -> RectangularDecomposition:
    """S ≅ E+(S) × H+(e) via a -> (idempotent of H+(a), e+a+e)."""
    v = classify(S).is_rectangular_skew_ring
    if not v:
        raise PreconditionError(f"not a rectangular skew-ring: {v.evidence}")
    e = least_add_idempotent(S)
    H = greens_additive(S).h_classes
    band, band_ids = subsemiring(S, members_of(S.add_idempotents))
    skew, skew_ids = subsemiring(S, [a for a in S.elements if H[a] == H[e]], first=e)
    band_index = {a: i for i, a in enumerate(band_ids)}
    skew_index = {a: i for i, a in enumerate(skew_ids)}
    idem_of_class = {H[f]: f for f in band_ids}
    k = skew.order
    mapping = tuple(
        band_index[idem_of_class[H[a]]] * k + skew_index[S.plus(e, a, e)] for a in S.elements
    )
    P = direct_product(band, skew)
    if not is_isomorphism(S, P, mapping):
        raise SevereDiagnostic("rectangular decomposition map is not an isomorphism")
    return RectangularDecomposition(band, skew, band_ids, skew_ids, IsoWitness(mapping, True))


# ---------------------------------------------------------------------------
# b-lattice decomposition


@dataclass(frozen=True)
class Component:
    members: tuple[int, ...]
    semiring: Semiring
    report: ClassificationReport


@dataclass(frozen=True)
class BLatticeDecomposition:
    congruence: Congruence
    quotient: Semiring
    components: tuple[Component, ...]


def blattice_decompose(S: Semiring) -> BLatticeDecomposition:
    """Split a quasi completely regular semiring along its J*+ classes."""
    v = classify(S).is_quasi_completely_regular
    if not v:
        raise PreconditionError(f"not quasi completely regular: {v.evidence}")
    J = starred_greens(S).j_classes
    cv = is_congruence(S, J)
    if not cv:
        raise SevereDiagnostic(f"J*+ is not a congruence: {cv.evidence}")
    c = Congruence(S, J)
    Y = quotient_by(S, c)
    if not classify(Y).is_b_lattice:
        raise SevereDiagnostic("quotient by J*+ is not a b-lattice")
    comps = []
    for cl in c.classes:
        sub, _ = subsemiring(S, cl)
        rep = classify(sub)
        if not rep.is_completely_archimedean:
            raise SevereDiagnostic(f"J*+ class {list(cl)} is not completely Archimedean")
        comps.append(Component(cl, sub, rep))
    return BLatticeDecomposition(c, Y, tuple(comps))
