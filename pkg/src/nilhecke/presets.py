"""Shipped Coxeter groups."""

from __future__ import annotations

from .coxeter import CoxeterGroup
from .scalar import field_preset


def _build(name: str) -> CoxeterGroup:
    phi = field_preset("QQ(phi)")
    specs = {
        "A1": dict(coxeter_matrix=[[1]]),
        "A1xA1": dict(coxeter_matrix=[[1, 2], [2, 1]]),
        "A2": dict(coxeter_matrix=[[1, 3], [3, 1]]),
        # crystallographic B2 / G2; symmetric variants live in larger fields
        "B2": dict(coxeter_matrix=[[1, 4], [4, 1]], cartan=[[2, -1], [-2, 2]]),
        "B2_sym": dict(coxeter_matrix=[[1, 4], [4, 1]]),
        "G2": dict(coxeter_matrix=[[1, 6], [6, 1]], cartan=[[2, -1], [-3, 2]]),
        "G2_sym": dict(coxeter_matrix=[[1, 6], [6, 1]]),
        "I2_5": dict(coxeter_matrix=[[1, 5], [5, 1]]),
        "A3": dict(coxeter_matrix=[[1, 3, 2], [3, 1, 3], [2, 3, 1]]),
        "B3": dict(coxeter_matrix=[[1, 3, 2], [3, 1, 4], [2, 4, 1]],
                   cartan=[[2, -1, 0], [-1, 2, -1], [0, -2, 2]]),
        "H3": dict(coxeter_matrix=[[1, 5, 2], [5, 1, 3], [2, 3, 1]], field=phi),
    }
    if name not in specs:
        raise KeyError(f"unknown preset {name!r}; known: {', '.join(PRESET_NAMES)}")
    return CoxeterGroup(name=name, **specs[name])


PRESET_NAMES = ("A1", "A1xA1", "A2", "B2", "B2_sym", "G2", "G2_sym", "I2_5", "A3", "B3", "H3")

_cache: dict[str, CoxeterGroup] = {}


def preset(name: str) -> CoxeterGroup:
    """Return the shared, lazily built preset group called ``name``."""
    if name not in _cache:
        _cache[name] = _build(name)
    return _cache[name]
