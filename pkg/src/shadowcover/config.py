"""Shared numerical tolerances.

Every geometric predicate in the package reads its epsilon from the record
returned by :func:`tolerances`, so all modules agree on what "on the
boundary" means.  ``SHADOWCOVER_TOL`` overrides the geometric tolerance.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    geom: float = 1e-9            # vertex dedup, facet incidence, containment slack
    rank: float = 1e-10           # rank / orthogonality checks
    pivot: float = 1e-11          # simplex pivot threshold
    singular: float = 1e-13       # linear_solve pivot floor
    lp_feas: float = 1e-8         # LP witness feasibility
    det: float = 1e-12            # nonsingular affine maps


_DEFAULT = Tolerances()


def tolerances() -> Tolerances:
    raw = os.environ.get("SHADOWCOVER_TOL")
    if not raw:
        return _DEFAULT
    try:
        value = float(raw)
    except ValueError:
        return _DEFAULT
    if not (value > 0.0):
        return _DEFAULT
    return replace(_DEFAULT, geom=value)
