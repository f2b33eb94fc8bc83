"""Exact nil Hecke and Demazure descent algebras for finite Coxeter groups."""

from .coxeter import CoxeterGroup, GroupElement, group_make
from .poly import Polynomial, act, demazure, divide_exact
from .presets import PRESET_NAMES, preset
from .scalar import QQ, Field, Scalar, field_make, field_preset

__version__ = "0.1.0"

__all__ = [
    "CoxeterGroup", "GroupElement", "group_make", "Polynomial", "act", "demazure",
    "divide_exact", "PRESET_NAMES", "preset", "QQ", "Field", "Scalar", "field_make",
    "field_preset",
]
