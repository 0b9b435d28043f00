from itertools import product

import pytest
from hypothesis import given, strategies as st

from finsemiring.classify import classify
from finsemiring.core import PreconditionError, SubsetRef, direct_product, find_isomorphism, subsemiring
from finsemiring.greens import starred_greens
from finsemiring.structure import (
    blattice_decompose,
    congruence,
    decompose_rectangular,
    is_bi_ideal,
    is_congruence,
    is_nil_extension,
    kernel,
    nil_extension_kernel,
    quotient_by,
    rees_quotient,
)

from conftest import small_semirings


def sub(T, *members):
    return SubsetRef(T, tuple(members))


def brute_congruence(T, p):
    n = range(T.order)
    for a, a2, b, b2 in product(n, repeat=4):
        if p[a] == p[a2] and p[b] == p[b2]:
            if p[T.add[a][b]] != p[T.add[a2][b2]] or p[T.mul[a][b]] != p[T.mul[a2][b2]]:
                return False
    return True


def tr3_component(S):
    """The {1, 2} component of TR3 with its original ids."""
    return subsemiring(S.TR3, (1, 2))


class TestBiIdeal:
    def test_n2(self, S):
        # N2 is relabelled 1 -> 0, 2 -> 1, so TR3's element 2 is id 1 here
        assert is_bi_ideal(S.N2, sub(S.N2, 1))

    def test_tr3_counterexample(self, S):
        v = is_bi_ideal(S.TR3, sub(S.TR3, 2))
        assert not v
        assert v.witness == (2, 0, "ax")

    def test_full_carrier(self, census):
        for T in census:
            assert is_bi_ideal(T, sub(T, *T.elements))

    def test_empty_rejected(self, S):
        with pytest.raises(PreconditionError):
            is_bi_ideal(S.Z2, sub(S.Z2))


class TestReesQuotient:
    def test_n2(self, S):
        Q, c = rees_quotient(S.N2, sub(S.N2, 1))
        assert Q.order == 2
        z = c.partition[1]
        other = 1 - z
        assert all(Q.add[z][x] == z == Q.mul[z][x] for x in Q.elements)
        assert Q.add[other][other] == z

    def test_full_carrier_trivial(self, census):
        for T in census:
            Q, _ = rees_quotient(T, sub(T, *T.elements))
            assert Q.order == 1

    def test_m4_kernel_is_everything(self, S):
        K = kernel(S.M4)
        assert K.members == (0, 1, 2, 3)
        Q, _ = rees_quotient(S.M4, K)
        assert Q.order == 1


class TestKernel:
    def test_examples(self, S):
        assert kernel(S.N2).members == (1,)
        assert kernel(S.TR3) is None
        assert kernel(S.Z2).members == (0, 1)

    def test_tr3_component_with_original_ids(self, S):
        N, ids = tr3_component(S)
        assert ids == (1, 2)
        assert (N.add, N.mul) == (S.N2.add, S.N2.mul)
        assert ids[kernel(N).members[0]] == 2


class TestNilExtension:
    def test_n2_witnesses(self, S):
        v = is_nil_extension(S.N2, sub(S.N2, 1))
        assert v and v.witness == (2, 1)

    def test_z2(self, S):
        assert is_nil_extension(S.Z2, sub(S.Z2, 0, 1))

    def test_q2_not_bi_ideal(self, S):
        with pytest.raises(PreconditionError, match="not a bi-ideal"):
            is_nil_extension(S.Q2, sub(S.Q2, 0))


class TestCongruence:
    @given(small_semirings())
    def test_trivial_partitions(self, T):
        assert is_congruence(T, tuple(T.elements))
        assert is_congruence(T, (0,) * T.order)

    def test_tr3(self, S):
        assert is_congruence(S.TR3, (0, 1, 1))

    @given(small_semirings(), st.data())
    def test_matches_brute_force(self, T, data):
        p = tuple(data.draw(st.lists(st.integers(0, 2), min_size=T.order, max_size=T.order)))
        assert bool(is_congruence(T, p)) == brute_congruence(T, p)

    def test_non_congruence_rejected(self, S):
        with pytest.raises(PreconditionError):
            congruence(S.TR3, (0, 0, 1))


class TestQuotient:
    def test_tr3_is_b2(self, S):
        Q = quotient_by(S.TR3, congruence(S.TR3, (0, 1, 1)))
        assert classify(Q).is_b_lattice
        assert find_isomorphism(Q, S.B2) is not None

    def test_universal(self, census):
        for T in census:
            assert quotient_by(T, congruence(T, (0,) * T.order)).order == 1


class TestRectangular:
    def test_z2(self, S):
        d = decompose_rectangular(S.Z2)
        assert d.band_part.order == 1
        assert find_isomorphism(d.skew_part, S.Z2) is not None

    def test_rb4_times_z2(self, S):
        d = decompose_rectangular(direct_product(S.RB4, S.Z2))
        assert find_isomorphism(d.band_part, S.RB4) is not None
        assert find_isomorphism(d.skew_part, S.Z2) is not None
        assert d.iso.verified

    def test_b2(self, S):
        with pytest.raises(PreconditionError):
            decompose_rectangular(S.B2)

    def test_corpus(self, census, corpus16):
        for T in census + corpus16:
            if not classify(T).is_rectangular_skew_ring:
                continue
            d = decompose_rectangular(T)
            assert d.iso.verified
            assert d.band_ids == tuple(a for a in T.elements if (T.add_idempotents >> a) & 1)
            assert classify(d.band_part).is_rectangular_band_semiring
            assert classify(d.skew_part).is_skew_ring


class TestBLattice:
    def test_tr3(self, S):
        d = blattice_decompose(S.TR3)
        assert [c.members for c in d.components] == [(0,), (1, 2)]
        assert find_isomorphism(d.components[1].semiring, S.N2) is not None
        assert find_isomorphism(d.quotient, S.B2) is not None

    def test_z2(self, S):
        d = blattice_decompose(S.Z2)
        assert len(d.components) == 1 and d.quotient.order == 1

    def test_q2(self, S):
        with pytest.raises(PreconditionError):
            blattice_decompose(S.Q2)

    def test_corpus(self, census, corpus16):
        for T in census + corpus16:
            if not classify(T).is_quasi_completely_regular:
                continue
            d = blattice_decompose(T)
            assert d.congruence.partition == starred_greens(T).j_classes
            Y = d.quotient
            assert all(Y.add[a][a] == a for a in Y.elements)
            assert all(Y.add[a][b] == Y.add[b][a] for a in Y.elements for b in Y.elements)
            assert all(c.report.is_completely_archimedean for c in d.components)


def test_completely_archimedean_kernel(census, corpus16):
    for T in census + corpus16:
        rep = classify(T)
        if rep.is_completely_archimedean:
            found = nil_extension_kernel(T)
            assert found is not None, T.name
            assert classify(found[1]).is_completely_simple
        if rep.is_quasi_skew_ring:
            found = nil_extension_kernel(T)
            assert found is not None and classify(found[1]).is_skew_ring, T.name
