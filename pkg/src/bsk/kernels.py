"""Backend selection for the integer hot kernels.

The compiled module is used when it was built and ``BSK_PURE_PYTHON`` is not
set; otherwise the pure-Python reference implementation is used.
"""

import os

from . import _pykernels

BACKEND = "python"
if not os.environ.get("BSK_PURE_PYTHON"):
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels
else:
    _impl = _pykernels

pair_products = _impl.pair_products
bareiss_det = _impl.bareiss_det
