"""Select the census kernel: the compiled extension when it imports, else pure Python.

Set ``QB_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernel

python_census_chunk = _pykernel.census_chunk

compiled_census_chunk = None
if os.environ.get("QB_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from ._ckernel import census_chunk as compiled_census_chunk
    except ImportError:  # extension not built
        compiled_census_chunk = None

census_chunk = compiled_census_chunk or python_census_chunk
BACKEND = "compiled" if compiled_census_chunk is not None else "python"
