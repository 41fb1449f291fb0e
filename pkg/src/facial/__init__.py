"""Exact computations with facial (semi-simplicial) sets and their realizations."""

from .core import FacialMap, FacialSet, StructuralError, ValidationReport, Violation, validate

__all__ = ["FacialMap", "FacialSet", "StructuralError", "ValidationReport", "Violation", "validate"]
