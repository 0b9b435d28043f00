import pytest
from hypothesis import given

from finsemiring.core import members_of
from finsemiring.greens import (
    PLAIN,
    STARRED,
    additive_inverses,
    canonical,
    classes,
    completely_regular_witness,
    compose,
    greens_additive,
    quasi_index,
    refines,
    regularity_profile,
    relation_to_partition,
    starred_greens,
)

from conftest import small_semirings
from oracles import is_equivalence, partition_pairs, plain_relations, starred_relations

KINDS = "LRHDJ"


def as_classes(g, kind):
    return [set(c) for c in classes(g.relation(kind))]


class TestPlain:
    def test_z2_universal(self, S):
        g = greens_additive(S.Z2)
        assert g.variant == PLAIN
        for k in KINDS:
            assert g.relation(k) == (0, 0)

    def test_b2_j_classes(self, S):
        assert as_classes(greens_additive(S.B2), "J") == [{0}, {1}]

    def test_tr3_all_singletons(self, S):
        g = greens_additive(S.TR3)
        for k in KINDS:
            assert g.relation(k) == (0, 1, 2)

    def test_matches_oracle_on_census(self, census):
        for T in census:
            g = greens_additive(T)
            ref = plain_relations(T)
            for k in KINDS:
                assert partition_pairs(g.relation(k)) == ref[k], (T.name, k)

    def test_matches_oracle_on_corpus(self, corpus16):
        for T in corpus16:
            if T.order > 8:
                continue
            g = greens_additive(T)
            ref = plain_relations(T)
            for k in KINDS:
                assert partition_pairs(g.relation(k)) == ref[k], (T.name, k)


class TestStarred:
    def test_z2_equals_plain(self, S):
        a, b = greens_additive(S.Z2), starred_greens(S.Z2)
        assert b.variant == STARRED
        for k in KINDS:
            assert a.relation(k) == b.relation(k)

    def test_tr3(self, S):
        g = starred_greens(S.TR3)
        assert as_classes(g, "H") == [{0}, {1, 2}]
        for k in KINDS:
            assert g.relation(k) == (0, 1, 1)

    def test_q2_j(self, S):
        assert as_classes(starred_greens(S.Q2), "J") == [{0}, {1}]

    def test_matches_oracle_on_census(self, census):
        for T in census:
            g = starred_greens(T)
            ref = starred_relations(T)
            for k in KINDS:
                assert partition_pairs(g.relation(k)) == ref[k], (T.name, k)

    def test_equals_plain_when_all_regular(self, census, corpus16):
        for T in census + corpus16:
            if T.add_regular != T.full_mask:
                continue
            a, b = greens_additive(T), starred_greens(T)
            for k in KINDS:
                assert a.relation(k) == b.relation(k), T.name


@given(small_semirings())
def test_partitions_are_equivalences_and_nested(T):
    for g in (greens_additive(T), starred_greens(T)):
        for k in KINDS:
            p = g.relation(k)
            assert p == canonical(p)
            assert is_equivalence(partition_pairs(p), T.order)
        assert refines(g.h_classes, g.l_classes) and refines(g.h_classes, g.r_classes)
        assert refines(g.l_classes, g.d_classes) and refines(g.r_classes, g.d_classes)
        assert refines(g.d_classes, g.j_classes)
        for a in T.elements:
            for b in T.elements:
                same_h = g.h_classes[a] == g.h_classes[b]
                assert same_h == (g.l_classes[a] == g.l_classes[b] and g.r_classes[a] == g.r_classes[b])


def test_lr_commute_recorded(census):
    for T in census:
        g = starred_greens(T)
        assert g.lr_commute == (compose(g.l_classes, g.r_classes) == compose(g.r_classes, g.l_classes))


class TestPartitionHelpers:
    def test_canonical(self):
        assert canonical((5, 3, 5, 9)) == (0, 1, 0, 2)

    def test_classes(self):
        assert classes((0, 1, 0)) == [(0, 2), (1,)]

    def test_relation_to_partition_rejects_non_equivalence(self):
        assert relation_to_partition([0b11, 0b10]) is None
        assert relation_to_partition([0b01, 0b10]) == (0, 1)


class TestProfile:
    def test_z2(self, S):
        p = regularity_profile(S.Z2)
        assert all(p.add_regular)
        assert p.quasi_index == (1, 1)
        assert p.cr_witness[1] == 1

    def test_tr3(self, S):
        p = regularity_profile(S.TR3)
        assert p.add_regular[1] is False
        assert p.quasi_index[1] == 2

    def test_q2(self, S):
        p = regularity_profile(S.Q2)
        assert p.add_regular[1] is True
        assert p.cr_witness[1] is None

    def test_invariants_corpus_wide(self, census, corpus16):
        for T in census + corpus16:
            p = regularity_profile(T)
            assert p.complete, T.name
            A, M = T.add, T.mul
            for a in T.elements:
                if p.add_idempotent[a]:
                    assert p.add_regular[a]
                if p.add_regular[a]:
                    assert p.quasi_index[a] == 1
                x = p.cr_witness[a]
                if x is not None:
                    ax = A[a][x]
                    assert A[ax][a] == a and ax == A[x][a] and M[a][ax] == ax
                for y in p.inverse_sets[a]:
                    assert A[A[a][y]][a] == a and A[A[y][a]][y] == y


class TestInverses:
    @pytest.mark.parametrize("name, a, expected", [("Z2", 1, (1,)), ("B2", 1, (1,)), ("TR3", 1, ())])
    def test_examples(self, S, name, a, expected):
        assert additive_inverses(getattr(S, name), a).members == expected

    def test_cr_witness_examples(self, S):
        assert completely_regular_witness(S.Z2, 1) == 1
        assert completely_regular_witness(S.Q2, 1) is None
        assert completely_regular_witness(S.B2, 1) == 0


def test_multiplicative_closure(census, corpus16):
    for T in census + corpus16:
        for mask in (T.add_idempotents, T.add_regular):
            ms = members_of(mask)
            for a in ms:
                for b in ms:
                    assert (mask >> T.mul[a][b]) & 1, T.name


def test_quasi_index_examples(S):
    assert [quasi_index(S.TR3, a) for a in range(3)] == [1, 2, 1]
    assert quasi_index(S.N2, 0) == 2
