"""Numerical tolerances shared by every module.

One record holds every threshold so that sweeps, tests and the CLI agree on
what "pass" and "attained" mean.  ``SPIRALLOG_TOLERANCE`` overrides the pass
tolerance at load time.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    # |b0| below this makes series division refuse
    leading_floor: float = 1e-12
    # a bound check passes while margin >= -pass_tol
    pass_tol: float = 1e-7
    # equality within this counts as attainment
    attain_tol: float = 1e-9
    # default truncation order for coefficient work
    order: int = 64
    # truncation order used when a function is sampled on a grid out to r=0.95;
    # 0.95**513 ~ 4e-12 keeps the series tail far below pass_tol
    grid_order: int = 512


def load_tolerances() -> Tolerances:
    tol = Tolerances()
    env = os.environ.get("SPIRALLOG_TOLERANCE")
    if env:
        value = float(env)
        if not value >= 0.0:
            raise ValueError(f"SPIRALLOG_TOLERANCE must be >= 0, got {env!r}")
        tol = replace(tol, pass_tol=value)
    return tol


TOL = load_tolerances()
