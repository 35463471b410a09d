"""Backend selection for the oscillatory-sum kernels.

The compiled extension is used when it imports; setting
``RIGIDCAVITY_PURE_PYTHON=1`` forces the numpy fallback.
"""

import os

from . import _kernels_py as python

compiled = None
if not os.environ.get("RIGIDCAVITY_PURE_PYTHON"):
    try:
        from . import _kernels as compiled
    except ImportError:
        compiled = None

_active = compiled if compiled is not None else python
BACKEND = "cython" if compiled is not None else "python"

filon_linear = _active.filon_linear
piecewise_constant = _active.piecewise_constant
cell_weights = _active.cell_weights
