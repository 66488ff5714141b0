"""Nilpotent symplectic alternating algebras of dimension 10 over finite fields."""
from .canon import CanonicalForm, StructureReport, Unsupported, classify, isomorphic, structure_report, tau_analysis
from .core import Algebra, Presentation, build_algebra, change_basis
from .families import FamilyLabel, enumerate_census, instantiate_family, label, param_equivalent
from .fileformat import format_presentation, parse_presentation
from .gf import GF, field_make

__version__ = "0.1.0"

__all__ = [
    "GF", "field_make", "Presentation", "Algebra", "build_algebra", "change_basis",
    "FamilyLabel", "label", "instantiate_family", "param_equivalent", "enumerate_census",
    "StructureReport", "CanonicalForm", "Unsupported", "structure_report", "tau_analysis",
    "classify", "isomorphic", "parse_presentation", "format_presentation",
]
