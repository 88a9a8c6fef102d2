"""Hot loops over all n! vertices, with a compiled and a pure-numpy backend.

The backend is fixed at import time. Set ``BSSTAR_NUMBA=0`` to force the
numpy path; it is also used automatically when numba cannot be imported.
Both backends expose the same functions and return identical results:

``neighbor_table(n, gi, gj)``
    int32 array ``(n!, len(gi))`` of neighbor ranks; ``gi``/``gj`` are the
    0-based generator positions.
``bfs_table(table, source, max_depth)`` / ``bfs_implicit(n, gi, gj, source, max_depth)``
    uint8 hop counts, 255 for vertices beyond ``max_depth`` (-1 = unbounded).
``is_forest_table(table, alive)`` / ``is_forest_implicit(n, gi, gj, alive)``
    whether the subgraph induced by the boolean mask ``alive`` is acyclic.
``rank_rows(perms)`` / ``unrank_rows(idx, n)``
    batch Lehmer ranking over 0-based symbol rows.
"""

import os
from types import ModuleType

from . import _numpy as numpy_backend


def _want_numba() -> bool:
    return os.environ.get("BSSTAR_NUMBA", "1").strip().lower() not in {"0", "false", "no", "off"}


def load_numba_backend() -> ModuleType | None:
    try:
        from . import _numba
    except ImportError:
        return None
    return _numba


numba_backend = load_numba_backend() if _want_numba() else None
backend: ModuleType = numba_backend or numpy_backend
BACKEND_NAME = "numba" if numba_backend is not None else "numpy"
UNSEEN = 255

neighbor_table = backend.neighbor_table
bfs_table = backend.bfs_table
bfs_implicit = backend.bfs_implicit
is_forest_table = backend.is_forest_table
is_forest_implicit = backend.is_forest_implicit
rank_rows = backend.rank_rows
unrank_rows = backend.unrank_rows
