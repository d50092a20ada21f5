"""Shared numeric tolerances.

All equality in this package is tolerance-based. The defaults below are
chosen so that 8-9 significant-digit table values round-trip. Setting the
environment variable JNUM_TOL to a float before import overrides the three
scalar comparison tolerances (CX_EPS, MAT_EPS, J_EPS) at once; individual
values can still be adjusted programmatically before any computation runs,
after which they are treated as read-only.
"""

import os

CX_EPS = 1e-9    # complex scalar equality |a - b| <= CX_EPS
MAT_EPS = 1e-9   # projective matrix equality min(|M-N|, |M+N|)_inf <= MAT_EPS
DET_EPS = 1e-9   # allowed determinant drift from 1
FIX_EPS = 1e-6   # fixed-point set separation for the elementarity heuristic
J_EPS = 1e-9     # slack in the inequality J >= 1 - J_EPS

ORDER_CAP = 256  # elliptic rotation-order search bound
QUANT = 1e-6     # quantization grid for projective dedup in word sweeps

_env = os.environ.get("JNUM_TOL")
if _env is not None:
    try:
        _v = float(_env)
    except ValueError:
        raise RuntimeError(f"JNUM_TOL must be a float, got {_env!r}")
    if not 0.0 < _v < 1.0:
        raise RuntimeError(f"JNUM_TOL out of range (0, 1): {_v}")
    CX_EPS = MAT_EPS = J_EPS = _v
del _env
