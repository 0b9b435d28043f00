"""Plain-dict views of analysis results, shared by the CLI and the golden-file tests."""

from __future__ import annotations

import json

from .classify import classify
from .core import PreconditionError, Semiring, serialize_semiring
from .greens import classes, greens_additive, regularity_profile, starred_greens
from .structure import BLatticeDecomposition, RectangularDecomposition, blattice_decompose, decompose_rectangular


def semiring_dict(S: Semiring) -> dict:
    return {
        "name": S.name,
        "order": S.order,
        "add": [list(r) for r in S.add],
        "mul": [list(r) for r in S.mul],
    }


def analysis(S: Semiring) -> dict:
    return {
        "classification": classify(S).as_dict(),
        "greens": {
            "plain": greens_additive(S).as_dict(),
            "starred": starred_greens(S).as_dict(),
        },
        "profile": regularity_profile(S).as_dict(),
    }


def blattice_dict(d: BLatticeDecomposition) -> dict:
    return {
        "partition": [list(c) for c in d.congruence.classes],
        "quotient": semiring_dict(d.quotient),
        "components": [
            {
                "members": list(c.members),
                "semiring": semiring_dict(c.semiring),
                "completely_archimedean": c.report.is_completely_archimedean.holds,
            }
            for c in d.components
        ],
    }


def rectangular_dict(d: RectangularDecomposition) -> dict:
    return {
        "band_part": semiring_dict(d.band_part),
        "band_ids": list(d.band_ids),
        "skew_part": semiring_dict(d.skew_part),
        "skew_ids": list(d.skew_ids),
        "iso": list(d.iso.mapping),
        "verified": d.iso.verified,
    }


def decompositions(S: Semiring) -> dict:
    out = {}
    try:
        out["blattice"] = blattice_dict(blattice_decompose(S))
    except PreconditionError as exc:
        out["blattice"] = {"error": str(exc)}
    try:
        out["rectangular"] = rectangular_dict(decompose_rectangular(S))
    except PreconditionError as exc:
        out["rectangular"] = {"error": str(exc)}
    return out


def golden_report(S: Semiring) -> str:
    doc = {
        "semiring": semiring_dict(S),
        "smr": serialize_semiring(S),
        **analysis(S),
        "decompositions": decompositions(S),
    }
    return dumps(doc)


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def partition_text(partition) -> str:
    return " ".join("{" + ",".join(map(str, c)) + "}" for c in classes(partition))
