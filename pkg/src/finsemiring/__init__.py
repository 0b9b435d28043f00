"""Finite semirings from Cayley tables: Green's structure, classification, Rees matrices, decompositions."""

from .core import (
    AxiomError,
    IsoWitness,
    ParseError,
    PreconditionError,
    Semiring,
    SemiringError,
    SevereDiagnostic,
    SubsetRef,
    Verdict,
    add_power,
    direct_product,
    find_isomorphism,
    parse_semiring,
    semiring,
    serialize_semiring,
    validate_axioms,
)
from .classify import ClassificationReport, classify

__version__ = "0.1.0"
