"""Working-precision mode selection.

Two modes exist:

``standard``
    Plain double precision everywhere.
``extended``
    Caputo values of polynomials are accumulated in exact rational
    arithmetic and the Gram-Schmidt factorisation of the collocation
    functionals (plus the per-iteration application of its coefficients)
    runs in multiprecision floating point.  Iterate values stay in
    multiprecision between iterations and are passed unrounded to the
    right-hand side.

The default is read from the ``LRKM_PRECISION`` environment variable.
"""

from __future__ import annotations

import os

ENV_VAR = "LRKM_PRECISION"
STANDARD = "standard"
EXTENDED = "extended"
MODES = (STANDARD, EXTENDED)

# decimal digits used by the multiprecision paths
EXTENDED_DPS = 40


def resolve(mode: str | None = None) -> str:
    """Return a validated precision mode, falling back to the environment."""
    if mode is None:
        mode = os.environ.get(ENV_VAR, STANDARD)
    mode = mode.strip().lower()
    if mode not in MODES:
        raise ValueError(f"unknown precision mode {mode!r}; expected one of {MODES}")
    return mode
