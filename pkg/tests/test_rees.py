import random
from itertools import product

import pytest

from finsemiring.classify import classify
from finsemiring.core import ParseError, PreconditionError, find_isomorphism, validate_axioms
from finsemiring.corpus import bands, build_family, rees_spec_corpus, zero_mul_skewrings
from finsemiring.rees import (
    Band,
    ReesSpec,
    band_from_table,
    build_rees,
    coordinatize,
    corollary_failures,
    parse_rees,
    rees_index,
    serialize_rees,
    validate_sandwich,
)

from oracles import rees_tables, sandwich_ok

ONE = Band(("o",), ((0,),), "o")
LZ_I = Band(("o", "i"), ((0, 0), (1, 1)), "o")


@pytest.fixture(scope="module")
def specs():
    return rees_spec_corpus()


class TestValidate:
    def test_trivial(self, S):
        assert validate_sandwich(ReesSpec(S.Z2, ONE, ONE, ((0,),))) == []

    def test_condition_1(self):
        R = build_family("zero_mul_skewring", "Z2")
        L = Band(("o", "l"), ((0, 1), (0, 1)), "o")
        bad = validate_sandwich(ReesSpec(R, LZ_I, L, ((0, 1), (0, 0))))
        assert bad and bad[0].startswith("condition 1")

    def test_left_zero_index(self, S):
        assert validate_sandwich(ReesSpec(S.Z2, LZ_I, ONE, ((0, 0),))) == []

    def test_shared_label_rules(self, S):
        I = Band(("o", "x"), ((0, 0), (1, 1)), "o")
        L = Band(("o", "x"), ((0, 1), (0, 1)), "o")
        bad = validate_sandwich(ReesSpec(S.Z2, I, L, ((0, 0), (0, 0))))
        assert any("meet exactly in o" in b for b in bad)

    def test_requires_skew_ring(self, S):
        with pytest.raises(PreconditionError):
            validate_sandwich(ReesSpec(S.B2, ONE, ONE, ((0,),)))

    def test_matches_literal_conditions(self):
        rng = random.Random(3)
        small = [t for t in bands(2)]
        Rs = zero_mul_skewrings()[:3] + [build_family("ring", 2), build_family("ring", 3)]
        checked = agreed_valid = 0
        for _ in range(400):
            ti, tl = rng.choice(small), rng.choice(small)
            oi, ol = rng.randrange(len(ti)), rng.randrange(len(tl))
            R = rng.choice(Rs)
            P = tuple(
                tuple(rng.choice([0, 0, rng.randrange(R.order)]) for _ in ti) for _ in tl
            )
            spec = ReesSpec(R, band_from_table(ti, oi, "i"), band_from_table(tl, ol, "l"), P)
            ok = sandwich_ok(R, ti, oi, tl, ol, P)
            assert (validate_sandwich(spec) == []) == ok, serialize_rees(spec)
            checked += 1
            agreed_valid += ok
        assert checked == 400 and 0 < agreed_valid < 400


class TestBuild:
    def test_trivial_is_r(self, S):
        M, triples = build_rees(ReesSpec(S.Z2, ONE, ONE, ((0,),)))
        assert triples == [(0, 0, 0), (0, 1, 0)]
        assert find_isomorphism(M, S.Z2) is not None

    def test_m4(self, S):
        M, _ = build_rees(ReesSpec(S.Z2, LZ_I, ONE, ((0, 0),)))
        assert M.order == 4
        assert classify(M).is_completely_simple
        assert (M.add, M.mul) == (S.M4.add, S.M4.mul)

    def test_invalid_rejected(self, S):
        with pytest.raises(PreconditionError):
            build_rees(ReesSpec(S.Z2, LZ_I, ONE, ((0, 1),)))

    def test_matches_formula(self, specs):
        for spec in specs:
            M, triples = build_rees(spec)
            elems, add, mul = rees_tables(spec.R, spec.I.table, spec.L.table, spec.P)
            assert triples == elems
            idx = {t: rees_index(spec, *t) for t in elems}
            for s, t in product(elems, repeat=2):
                assert M.add[idx[s]][idx[t]] == idx[add[s, t]]
                assert M.mul[idx[s]][idx[t]] == idx[mul[s, t]]

    def test_corpus_specs_completely_simple(self, specs):
        assert len(specs) >= 20
        assert sum(s.nonzero_p for s in specs) >= 5
        for spec in specs:
            M, _ = build_rees(spec)
            assert validate_axioms(M.add, M.mul) == []
            assert classify(M).is_completely_simple


class TestCoordinatize:
    def test_z2(self, S):
        spec, w = coordinatize(S.Z2)
        assert spec.I.size == spec.L.size == 1
        assert find_isomorphism(spec.R, S.Z2) is not None
        assert w.verified

    def test_m4(self, S):
        spec, _ = coordinatize(S.M4)
        M, _ = build_rees(spec)
        assert find_isomorphism(M, S.M4) is not None

    def test_b2(self, S):
        with pytest.raises(PreconditionError, match="not completely simple"):
            coordinatize(S.B2)

    def test_round_trip(self, specs):
        for spec in specs:
            M, _ = build_rees(spec)
            spec2, w = coordinatize(M)
            assert validate_sandwich(spec2) == []
            M2, _ = build_rees(spec2)
            assert find_isomorphism(M2, M) is not None
            assert w.verified

    def test_o_is_distinguished(self, S):
        spec, _ = coordinatize(S.RB4)
        assert spec.I.o == spec.L.o == "o"
        assert set(spec.I.labels) & set(spec.L.labels) == {"o"}


def test_corollary_identities(specs):
    for spec in specs:
        assert corollary_failures(spec) == []


class TestFormat:
    def test_round_trip(self, specs):
        for spec in specs:
            text = serialize_rees(spec)
            back = parse_rees(text)
            assert serialize_rees(back) == text
            assert (back.R.add, back.R.mul, back.P) == (spec.R.add, spec.R.mul, spec.P)
            assert back.I == spec.I and back.L == spec.L

    def test_layout(self, S):
        text = serialize_rees(ReesSpec(S.Z2.with_name(None), LZ_I, ONE, ((0, 0),)))
        assert text == (
            "rees 1\nskewring\nsmr 1\norder 2\nadd\n0 1\n1 0\nmul\n0 0\n0 1\n"
            "bandI *o i\no o\ni i\nbandL *o\no\nP\n0 0\n"
        )

    @pytest.mark.parametrize(
        "mutate, fragment",
        [
            (lambda t: t.replace("rees 1", "rees 2"), "header"),
            (lambda t: t.replace("bandI *o i", "bandI o i"), "exactly one"),
            (lambda t: t.replace("P\n0 0\n", "P\n0\n"), "expected 2"),
            (lambda t: t.replace("P\n0 0\n", "P\n0 x\n"), "non-integer"),
            (lambda t: t.replace("i i\n", "i q\n"), "bad bandI"),
            (lambda t: t + "junk\n", "unexpected content"),
            (lambda t: t.replace("add\n0 1\n", "add\n0 5\n"), "skewring block"),
        ],
    )
    def test_parse_errors(self, S, mutate, fragment):
        text = serialize_rees(ReesSpec(S.Z2.with_name(None), LZ_I, ONE, ((0, 0),)))
        with pytest.raises(ParseError, match=fragment):
            parse_rees(mutate(text))

    def test_non_idempotent_band_rejected(self, S):
        text = serialize_rees(ReesSpec(S.Z2.with_name(None), LZ_I, ONE, ((0, 0),)))
        with pytest.raises(ParseError, match="idempotent"):
            parse_rees(text.replace("i i\n", "i o\n"))


def test_o_identity_diagnostic():
    assert ONE.o_is_identity()
    assert not LZ_I.o_is_identity()
    assert Band(("o", "a"), ((0, 0), (0, 1)), "o").o_is_identity() is False
    assert Band(("o", "a"), ((0, 1), (1, 1)), "o").o_is_identity() is True
