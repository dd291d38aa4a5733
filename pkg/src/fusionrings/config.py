"""Numerical tolerances.

The acceptance tolerance (used for dimension matching, residual checks and
integer-bound rounding) defaults to 1e-6 and can be overridden with the
FR_TOLERANCE environment variable.  The convergence tolerance of the power
iteration is fixed at 1e-9.
"""

import os

CONVERGENCE_TOL = 1e-9


def tolerance():
    return float(os.environ.get("FR_TOLERANCE", "1e-6"))
