"""Characterization theorems as independent per-condition evaluators.

Each checker evaluates every listed condition straight from its definition
and reports whether the conditions agree on the given semiring.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable

from .classify import (
    additive_group_check,
    classify,
    is_additively_orthodox,
    is_additively_quasi_regular,
    is_b_lattice,
    is_completely_archimedean,
    is_completely_simple,
    is_idempotent_semiring,
    is_left_skew_ring,
    is_quasi_completely_regular,
    is_quasi_skew_ring,
    is_rectangular_skew_ring,
)
from .core import (
    PreconditionError,
    Semiring,
    SemiringError,
    SevereDiagnostic,
    SubsetRef,
    Verdict,
    additive_orbit,
    direct_product,
    find_isomorphism,
    members_of,
    subsemiring,
)
from .greens import Partition, classes, greens_additive, partition_by, starred_greens
from .rees import ReesSpec, corollary_failures, validate_sandwich
from .structure import (
    RectangularDecomposition,
    decompose_rectangular,
    is_bi_ideal,
    is_congruence,
    is_nil_extension,
    kernel,
    quotient_by,
    Congruence,
)

SUBSET_SEARCH_MAX = 6
THM_3_3_SEARCH_MAX = 12


@dataclass(frozen=True)
class EquivalenceVerdict:
    theorem: str
    conditions: tuple[tuple[str, Verdict], ...]
    equivalent: bool
    detail: str

    def bits(self) -> str:
        return "".join("1" if v.holds else "0" for _, v in self.conditions)

    def as_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "conditions": {k: {"holds": v.holds, "evidence": v.evidence} for k, v in self.conditions},
            "equivalent": self.equivalent,
            "detail": self.detail,
        }


def _lazy_all(*thunks: Callable[[], Verdict]) -> Verdict:
    for t in thunks:
        v = t()
        if not v:
            return v
    return Verdict(True)


# ---------------------------------------------------------------------------
# building blocks


def _class_semiring(S: Semiring, members) -> Semiring | None:
    try:
        sub, _ = subsemiring(S, members)
    except SemiringError:
        return None
    return sub


def blattice_of(S: Semiring, partition: Partition, pred: Callable[[Semiring], Verdict],
                what: str, quotient_pred: Callable[[Semiring], Verdict] = is_b_lattice) -> Verdict:
    """The partition is a congruence, the quotient satisfies quotient_pred, every class satisfies pred."""
    cv = is_congruence(S, partition)
    if not cv:
        return Verdict(False, f"partition is not a congruence: {cv.evidence}")
    qv = quotient_pred(quotient_by(S, Congruence(S, tuple(partition))))
    if not qv:
        return Verdict(False, f"quotient fails: {qv.evidence}")
    for cl in classes(partition):
        sub = _class_semiring(S, cl)
        if sub is None:
            return Verdict(False, f"class {list(cl)} is not a subsemiring")
        v = pred(sub)
        if not v:
            return Verdict(False, f"class {list(cl)} is not {what}: {v.evidence}")
    return Verdict(True)


def nil_extension_of(S: Semiring, pred: Callable[[Semiring], Verdict], what: str) -> Verdict:
    """S is a nil-extension of a bi-ideal K satisfying pred; K is necessarily Reg+S."""
    K = kernel(S)
    if K is None:
        return Verdict(False, f"Reg+S={list(members_of(S.add_regular))} is not a bi-ideal")
    sub = _class_semiring(S, K.members)
    v = pred(sub)
    if not v:
        return Verdict(False, f"kernel {list(K.members)} is not {what}: {v.evidence}")
    nv = is_nil_extension(S, K)
    if not nv:
        return Verdict(False, nv.evidence)
    return Verdict(True, f"kernel {list(K.members)}")


def idempotent_multiple_partition(S: Semiring) -> Partition:
    """Group elements by the unique additive idempotent among their multiples."""
    def idem(a: int) -> int:
        for x in additive_orbit(S, a):
            if S.add[x][x] == x:
                return x
        raise SevereDiagnostic(f"element {a} has no idempotent multiple")

    return partition_by(S.order, idem)


def _n_stabilizes(S: Semiring, s: int) -> bool:
    """∃ n >= 1 with n·s = (n+1)·s, n ranging over the orbit of s."""
    return any(S.add[x][s] == x for x in additive_orbit(S, s))


def _n_agree(S: Semiring, s: int, t: int) -> bool:
    """∃ n >= 1 with n·s = n·t; n runs until the pair (n·s, n·t) repeats."""
    seen = set()
    x, y = s, t
    while (x, y) not in seen:
        if x == y:
            return True
        seen.add((x, y))
        x, y = S.add[x][s], S.add[y][t]
    return False


def _square_h_star(S: Semiring) -> Verdict:
    H = starred_greens(S).h_classes
    for b in S.elements:
        b2 = S.mul[b][b]
        if H[b2] != H[b]:
            return Verdict(False, f"b={b}: b*b={b2} not H*+ related to b", b)
    return Verdict(True)


def _regular_implies(S: Semiring, law: Callable[[int, int], bool], text: str) -> Verdict:
    A = S.add
    for a, x in product(S.elements, repeat=2):
        if A[A[a][x]][a] == a and not law(a, x):
            return Verdict(False, f"a={a}, x={x}: a=a+x+a but not {text}", (a, x))
    return Verdict(True)


def _add_closed(S: Semiring, mask: int, what: str) -> Verdict:
    for a in members_of(mask):
        for b in members_of(mask):
            s = S.add[a][b]
            if not (mask >> s) & 1:
                return Verdict(False, f"{what} not closed under +: {a}+{b}={s}", (a, b))
    return Verdict(True)


def _idempotents_commute(S: Semiring) -> Verdict:
    E = members_of(S.add_idempotents)
    for e, f in product(E, repeat=2):
        if S.add[e][f] != S.add[f][e]:
            return Verdict(False, f"{e}+{f} != {f}+{e}", (e, f))
    return Verdict(True)


# ---------------------------------------------------------------------------
# theorem conditions


def _thm_2_8(S: Semiring):
    Hs = starred_greens(S).h_classes

    def every_hstar_class_quasi_skew() -> Verdict:
        for cl in classes(Hs):
            sub = _class_semiring(S, cl)
            if sub is None:
                return Verdict(False, f"H*+ class {list(cl)} is not a subsemiring")
            v = is_quasi_skew_ring(sub)
            if not v:
                return Verdict(False, f"H*+ class {list(cl)}: {v.evidence}")
        return Verdict(True)

    def union_of_quasi_skew() -> Verdict:
        for cl in classes(idempotent_multiple_partition(S)):
            sub = _class_semiring(S, cl)
            if sub is None:
                return Verdict(False, f"{list(cl)} is not a subsemiring")
            v = is_quasi_skew_ring(sub)
            if not v:
                return Verdict(False, f"{list(cl)}: {v.evidence}")
        return Verdict(True)

    return [
        ("quasi completely regular", lambda: is_quasi_completely_regular(S)),
        ("every H*+ class a quasi skew-ring", every_hstar_class_quasi_skew),
        ("union of quasi skew-rings", union_of_quasi_skew),
        ("b-lattice of completely Archimedean semirings",
         lambda: blattice_of(S, starred_greens(S).j_classes, is_completely_archimedean,
                             "completely Archimedean")),
        ("idempotent semiring of quasi skew-rings",
         lambda: blattice_of(S, Hs, is_quasi_skew_ring, "a quasi skew-ring",
                             quotient_pred=is_idempotent_semiring)),
    ]


def _skew_bi_ideal_search(S: Semiring) -> Verdict:
    if S.order > SUBSET_SEARCH_MAX:
        return nil_extension_of(S, additive_group_check, "a skew-ring")
    n = S.order
    for size in range(1, n + 1):
        for members in combinations(range(n), size):
            K = SubsetRef(S, members)
            if not is_bi_ideal(S, K):
                continue
            sub = _class_semiring(S, members)
            if sub is None or not additive_group_check(sub):
                continue
            if is_nil_extension(S, K):
                return Verdict(True, f"bi-ideal {list(members)}", members)
    return Verdict(False, "no bi-ideal skew-ring with the nil property")


def _thm_2_11(S: Semiring):
    return [
        ("quasi skew-ring", lambda: is_quasi_skew_ring(S)),
        ("nil-extension of a skew-ring", lambda: _skew_bi_ideal_search(S)),
    ]


def _thm_2_12(S: Semiring):
    return [
        ("completely Archimedean", lambda: is_completely_archimedean(S)),
        ("nil-extension of a completely simple semiring",
         lambda: nil_extension_of(S, is_completely_simple, "completely simple")),
    ]


def _blattice_nil_rect(S: Semiring) -> Verdict:
    return blattice_of(
        S, starred_greens(S).j_classes,
        lambda C: nil_extension_of(C, is_rectangular_skew_ring, "a rectangular skew-ring"),
        "a nil-extension of a rectangular skew-ring",
    )


def _blattice_nil_left(S: Semiring) -> Verdict:
    return blattice_of(
        S, starred_greens(S).j_classes,
        lambda C: nil_extension_of(C, is_left_skew_ring, "a left skew-ring"),
        "a nil-extension of a left skew-ring",
    )


def _idempotent_sums_stabilize(S: Semiring) -> Verdict:
    E = members_of(S.add_idempotents)
    for e, f in product(E, repeat=2):
        if not _n_stabilizes(S, S.add[e][f]):
            return Verdict(False, f"e={e}, f={f}: no n with n(e+f) = (n+1)(e+f)", (e, f))
    return Verdict(True)


def _thm_3_4_iii(S: Semiring) -> Verdict:
    return _lazy_all(
        lambda: is_additively_quasi_regular(S),
        lambda: _square_h_star(S),
        lambda: _regular_implies(
            S, lambda a, x: S.plus(a, x, x, a, a) == a, "a = a+2x+2a"),
    )


def _thm_3_4(S: Semiring):
    return [
        ("b-lattice of nil-extensions of rectangular skew-rings", lambda: _blattice_nil_rect(S)),
        ("qcr and n(e+f) = (n+1)(e+f)",
         lambda: _lazy_all(lambda: is_quasi_completely_regular(S), lambda: _idempotent_sums_stabilize(S))),
        ("aqr, b^2 H*+ b, a=a+x+a => a=a+2x+2a", lambda: _thm_3_4_iii(S)),
    ]


def _thm_3_5(S: Semiring):
    return [
        ("completely Archimedean and E+ additively closed",
         lambda: _lazy_all(lambda: is_completely_archimedean(S), lambda: is_additively_orthodox(S))),
        ("nil-extension of a rectangular skew-ring",
         lambda: nil_extension_of(S, is_rectangular_skew_ring, "a rectangular skew-ring")),
    ]


def _thm_3_6(S: Semiring):
    return [
        ("qcr and E+ additively closed",
         lambda: _lazy_all(lambda: is_quasi_completely_regular(S), lambda: is_additively_orthodox(S))),
        ("aqr, b^2 H*+ b, a=a+2x+2a, Reg+S additively closed",
         lambda: _lazy_all(lambda: _thm_3_4_iii(S), lambda: _add_closed(S, S.add_regular, "Reg+S"))),
        ("b-lattice of nil-extensions of rectangular skew-rings, E+ additively closed",
         lambda: _lazy_all(lambda: _blattice_nil_rect(S), lambda: is_additively_orthodox(S))),
    ]


def _regular_part_blattice_of_skew_rings(S: Semiring) -> Verdict:
    reg = members_of(S.add_regular)
    sub = _class_semiring(S, reg)
    if sub is None:
        return Verdict(False, "Reg+S is not a subsemiring")
    return blattice_of(sub, greens_additive(sub).h_classes, additive_group_check, "a skew-ring")


def _thm_3_7(S: Semiring):
    return [
        ("qcr and E+ commutative",
         lambda: _lazy_all(lambda: is_quasi_completely_regular(S), lambda: _idempotents_commute(S))),
        ("b-lattice of quasi skew-rings, E+ commutative",
         lambda: _lazy_all(
             lambda: blattice_of(S, starred_greens(S).h_classes, is_quasi_skew_ring, "a quasi skew-ring"),
             lambda: _idempotents_commute(S))),
        ("aqr, Reg+S additively closed b-lattice of skew-rings",
         lambda: _lazy_all(
             lambda: is_additively_quasi_regular(S),
             lambda: _add_closed(S, S.add_regular, "Reg+S"),
             lambda: _regular_part_blattice_of_skew_rings(S))),
    ]


def _idempotent_sums_left(S: Semiring) -> Verdict:
    E = members_of(S.add_idempotents)
    for e, f in product(E, repeat=2):
        ef = S.add[e][f]
        if not _n_agree(S, ef, S.add[ef][e]):
            return Verdict(False, f"e={e}, f={f}: no n with n(e+f) = n(e+f+e)", (e, f))
    return Verdict(True)


def _thm_3_10(S: Semiring):
    return [
        ("b-lattice of nil-extensions of left skew-rings", lambda: _blattice_nil_left(S)),
        ("qcr and n(e+f) = n(e+f+e)",
         lambda: _lazy_all(lambda: is_quasi_completely_regular(S), lambda: _idempotent_sums_left(S))),
        ("aqr, b^2 H*+ b, a=a+x+a => a+x=a+2x+a",
         lambda: _lazy_all(
             lambda: is_additively_quasi_regular(S),
             lambda: _square_h_star(S),
             lambda: _regular_implies(S, lambda a, x: S.plus(a, x, x, a) == S.add[a][x], "a+x = a+2x+a"))),
    ]


def _left_regular_idempotents(S: Semiring) -> Verdict:
    E = members_of(S.add_idempotents)
    for e, f in product(E, repeat=2):
        if S.add[e][f] != S.plus(e, f, e):
            return Verdict(False, f"{e}+{f} != {e}+{f}+{e}", (e, f))
    return Verdict(True)


def _thm_3_11(S: Semiring):
    return [
        ("b-lattice of nil-extensions of left skew-rings, E+ additively closed",
         lambda: _lazy_all(lambda: _blattice_nil_left(S), lambda: is_additively_orthodox(S))),
        ("qcr and e+f = e+f+e",
         lambda: _lazy_all(lambda: is_quasi_completely_regular(S), lambda: _left_regular_idempotents(S))),
    ]


THEOREMS: dict[str, Callable] = {
    "thm_2_8": _thm_2_8,
    "thm_2_11": _thm_2_11,
    "thm_2_12": _thm_2_12,
    "thm_3_4": _thm_3_4,
    "thm_3_5": _thm_3_5,
    "thm_3_6": _thm_3_6,
    "thm_3_7": _thm_3_7,
    "thm_3_10": _thm_3_10,
    "thm_3_11": _thm_3_11,
}


def check_equivalence(S: Semiring, theorem: str) -> EquivalenceVerdict:
    try:
        conds = THEOREMS[theorem](S)
    except KeyError:
        raise SemiringError(f"unknown theorem id {theorem!r}; known: {', '.join(THEOREMS)}") from None
    results = tuple((label, fn()) for label, fn in conds)
    values = {v.holds for _, v in results}
    equivalent = len(values) == 1
    detail = ""
    if not equivalent:
        yes = [k for k, v in results if v.holds]
        no = [f"{k} [{v.evidence}]" for k, v in results if not v.holds]
        detail = f"true: {'; '.join(yes)} | false: {'; '.join(no)}"
    return EquivalenceVerdict(theorem, results, equivalent, detail)


def check_all(S: Semiring) -> list[EquivalenceVerdict]:
    return [check_equivalence(S, t) for t in THEOREMS]


# ---------------------------------------------------------------------------
# direct-product theorem and the Rees corollary


@dataclass(frozen=True)
class Refutation:
    reason: str
    pairs_checked: int
    exhaustive: bool


def product_candidates(max_order: int = THM_3_3_SEARCH_MAX):
    """Corpus rectangular band semirings and skew-rings usable as product factors."""
    from .corpus import GROUPS, build_family, census_items

    bands, skews = [], []
    for it in census_items(up_to_iso=True):
        rep = classify(it.semiring)
        if rep.is_rectangular_band_semiring:
            bands.append(it.semiring)
        if rep.is_skew_ring:
            skews.append(it.semiring)
    for p in range(1, 5):
        for q in range(1, 5):
            if 3 < p * q <= max_order:
                bands.append(build_family("rect_band", p, q))
    skews += [build_family("ring", k) for k in range(4, max_order + 1)]
    skews += [build_family("zero_mul_skewring", g) for g in GROUPS if len(GROUPS[g]()) > 3]
    return bands, skews


def verify_thm_3_3(S: Semiring) -> RectangularDecomposition | Refutation:
    """Decomposition when S is a rectangular skew-ring; otherwise search corpus products for a match."""
    if classify(S).is_rectangular_skew_ring:
        return decompose_rectangular(S)
    reason = classify(S).is_rectangular_skew_ring.evidence
    if S.order > THM_3_3_SEARCH_MAX:
        return Refutation(reason, 0, False)
    bands, skews = product_candidates()
    checked = 0
    for B in bands:
        for R in skews:
            if B.order * R.order != S.order:
                continue
            checked += 1
            if find_isomorphism(S, direct_product(B, R)) is not None:
                raise SevereDiagnostic(
                    f"not a rectangular skew-ring, yet isomorphic to a product of {B!r} and {R!r}"
                )
    return Refutation(reason, checked, True)


def verify_cor_2_3(spec: ReesSpec) -> Verdict:
    bad = validate_sandwich(spec)
    if bad:
        raise PreconditionError(f"invalid Rees spec: {bad[0]}")
    failures = corollary_failures(spec)
    if failures:
        return Verdict(False, failures[0], failures)
    return Verdict(True)
