"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise the numpy
fallback.  Set ``DIHEDRAL_HSP_PURE=1`` to force the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("DIHEDRAL_HSP_PURE", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

loglik_scan = _impl.loglik_scan
inverse_cdf = _impl.inverse_cdf
