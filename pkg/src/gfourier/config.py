"""Numerical tolerances, overridable through ``GFOURIER_TOL_*`` variables.

For example ``GFOURIER_TOL_KERNEL=1e-9`` tightens kernel comparisons.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

ENV_PREFIX = "GFOURIER_TOL_"


@dataclass(frozen=True)
class Tolerances:
    specfun: float = 1e-12
    kernel: float = 1e-8
    quadrature: float = 1e-6
    recursion: float = 1e-6


def from_environment(environ=None) -> Tolerances:
    environ = os.environ if environ is None else environ
    overrides = {}
    for f in fields(Tolerances):
        raw = environ.get(ENV_PREFIX + f.name.upper())
        if raw is not None:
            try:
                overrides[f.name] = float(raw)
            except ValueError:
                raise ValueError(f"{ENV_PREFIX}{f.name.upper()}={raw!r} is not a number") from None
    return replace(Tolerances(), **overrides)


TOLERANCES = from_environment()
