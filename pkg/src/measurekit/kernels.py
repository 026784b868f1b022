"""Backend selection for the integration kernels.

The compiled extension is used when it imports; ``MEASUREKIT_PURE_PYTHON=1``
forces the reference implementation.
"""

import os

from . import _kernels_py

try:
    if os.environ.get("MEASUREKIT_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python backend requested")
    from . import _kernels as _impl
    BACKEND = "compiled"
except ImportError:
    _impl = _kernels_py
    BACKEND = "python"

density_poly_integral = _impl.density_poly_integral
cumulative_masses = _impl.cumulative_masses

BACKENDS = {"python": _kernels_py}
if BACKEND == "compiled":
    BACKENDS["compiled"] = _impl
