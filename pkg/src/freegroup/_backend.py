"""Select the compiled kernels when available.

Set ``FREEGROUP_PURE_PYTHON=1`` to force the pure-Python fallback.
"""

import os

if os.environ.get("FREEGROUP_PURE_PYTHON"):
    from . import _pykernels as kernels
else:
    try:
        from . import _kernels as kernels
    except ImportError:
        from . import _pykernels as kernels

BACKEND = kernels.NAME
