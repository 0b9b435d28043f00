"""Acceptance gate: one test per criterion, each reported as a single PASS/FAIL line.

The lines are printed in the terminal summary by the hook in conftest.py, so
they show up in a plain ``pytest`` run without ``-s``.
"""

import importlib.util
import io
import json
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

from finsemiring.classify import classify
from finsemiring.cli import OK, run
from finsemiring.core import direct_product, find_isomorphism, members_of, validate_axioms
from finsemiring.corpus import (
    NAMED,
    _census,
    associative_tables,
    constructed_corpus,
    enumerate_semirings,
    named,
    rees_spec_corpus,
)
from finsemiring.greens import starred_greens
from finsemiring.rees import build_rees, coordinatize, corollary_failures, validate_sandwich
from finsemiring.report import golden_report
from finsemiring.structure import blattice_decompose, decompose_rectangular

from oracles import partition_pairs, starred_relations

ROOT = Path(__file__).resolve().parent.parent
RESULTS: list[str] = []


@contextmanager
def criterion(number, title):
    """Record one PASS/FAIL line; ``note`` collects a short summary of what was checked."""
    note = []
    try:
        yield note
    except BaseException:
        RESULTS.append(f"FAIL  [{number}] {title}")
        raise
    RESULTS.append(f"PASS  [{number}] {title}" + (f" ({'; '.join(note)})" if note else ""))


@pytest.fixture(scope="module")
def labeled_census():
    return [T for n in (1, 2, 3) for T in enumerate_semirings(n)]


@pytest.fixture(scope="module")
def corpus():
    return [it.semiring for it in constructed_corpus(16)]


def test_1_census_matches_oracle():
    with criterion(1, "exhaustive census of orders 1-3 matches the independent oracle") as note:
        associative_tables.cache_clear()
        _census.cache_clear()
        start = time.perf_counter()
        ours = {n: (len(list(enumerate_semirings(n))), len(list(enumerate_semirings(n, up_to_iso=True))))
                for n in (1, 2, 3)}
        elapsed = time.perf_counter() - start
        spec = importlib.util.spec_from_file_location("census_oracle", ROOT / "scripts" / "census_oracle.py")
        oracle = importlib.util.module_from_spec(spec)
        spec.loader.exec_module(oracle)
        for n in (1, 2, 3):
            ref = oracle.census(n)
            assert ours[n] == (ref["labeled"], ref["up_to_iso"]), n
        assert elapsed < 600
        note.append(", ".join(f"n={n}: {a}/{b}" for n, (a, b) in ours.items()))
        note.append(f"{elapsed:.1f}s")


def test_2_theorem_sweep():
    with criterion(2, "theorem sweep over labeled census and constructed corpus, zero counterexamples") as note:
        buf = io.StringIO()
        code = run(["sweep", "--max-order", "3", "--labeled", "--quiet", "--format", "json"], out=buf)
        doc = json.loads(buf.getvalue())
        assert doc["counterexamples"] == [], doc["counterexamples"][:3]
        assert code == OK
        note.append(f"{doc['items']} items, {doc['checks']} checks")


def test_3_rees_construction(corpus):
    with criterion(3, "every corpus Rees spec builds a completely simple semiring") as note:
        specs = rees_spec_corpus()
        nonzero = sum(s.nonzero_p for s in specs)
        assert len(specs) >= 20 and nonzero >= 5
        for spec in specs:
            M, _ = build_rees(spec)
            assert validate_axioms(M.add, M.mul) == []
            assert classify(M).is_completely_simple
        note.append(f"{len(specs)} specs, {nonzero} with nonzero P")


def test_4_rees_round_trip():
    with criterion(4, "coordinatize/build round-trip is isomorphic and passes validation") as note:
        specs = rees_spec_corpus()
        for spec in specs:
            M, _ = build_rees(spec)
            spec2, _ = coordinatize(M)
            assert validate_sandwich(spec2) == []
            assert find_isomorphism(build_rees(spec2)[0], M) is not None
        note.append(f"{len(specs)} specs")


def test_5_corollary():
    with criterion(5, "sandwich-matrix corollary identities hold on every valid spec") as note:
        specs = rees_spec_corpus()
        for spec in specs:
            assert corollary_failures(spec) == []
        note.append(f"{len(specs)} specs")


def test_6_direct_product_theorem(labeled_census, corpus):
    with criterion(6, "rectangular skew-ring = rectangular band semiring x skew-ring, both directions") as note:
        pool = labeled_census + corpus
        forward = 0
        for T in pool:
            if classify(T).is_rectangular_skew_ring:
                d = decompose_rectangular(T)
                assert d.iso.verified
                assert classify(d.band_part).is_rectangular_band_semiring
                assert classify(d.skew_part).is_skew_ring
                forward += 1
        bands = [T for T in pool if T.order <= 4 and classify(T).is_rectangular_band_semiring]
        skews = [T for T in pool if T.order <= 4 and classify(T).is_skew_ring]
        for B in bands:
            for R in skews:
                assert classify(direct_product(B, R)).is_rectangular_skew_ring, (B.name, R.name)
        note.append(f"{forward} decompositions, {len(bands) * len(skews)} products")


def test_7_starred_greens_oracle(labeled_census, corpus):
    with criterion(7, "starred Green's relations equal the pairwise oracle") as note:
        pool = labeled_census + [T for T in corpus if T.order <= 8]
        for T in pool:
            g = starred_greens(T)
            ref = starred_relations(T)
            for k in "LRHDJ":
                assert partition_pairs(g.relation(k)) == ref[k], (T.name, k)
        note.append(f"{len(pool)} semirings")


def test_8_structural_invariants(labeled_census, corpus):
    with criterion(8, "closure, implication lattice and b-lattice decomposition invariants") as note:
        qcr = 0
        for T in labeled_census + corpus:
            for mask in (T.add_idempotents, T.add_regular):
                ms = members_of(mask)
                assert all((mask >> T.mul[a][b]) & 1 for a in ms for b in ms), T.name
            rep = classify(T)
            assert rep.implication_failures() == [], T.name
            if rep.is_quasi_completely_regular:
                d = blattice_decompose(T)
                assert all(c.report.is_completely_archimedean for c in d.components)
                qcr += 1
        note.append(f"{qcr} decompositions")


def test_9_goldens():
    with criterion(9, "named-example reports match the checked-in goldens byte-for-byte") as note:
        for name in NAMED:
            expected = (ROOT / "tests" / "golden" / f"{name}.json").read_text(encoding="utf-8")
            assert golden_report(named(name)) == expected, name
        note.append(f"{len(NAMED)} reports")
