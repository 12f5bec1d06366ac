"""JIT switch for the hot kernels.

Set ``PERTURBED_RAMSEY_NO_JIT=1`` before import to run every kernel as plain
Python over numpy arrays. The numba path is used whenever numba imports.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_DISABLED = os.environ.get("PERTURBED_RAMSEY_NO_JIT", "").strip() not in ("", "0")

JIT_ENABLED = numba is not None and not _DISABLED


def njit(func=None, **kwargs):
    if not JIT_ENABLED:
        return func if func is not None else (lambda f: f)
    opts = {"cache": True, "nogil": True}
    opts.update(kwargs)
    if func is None:
        return numba.njit(**opts)
    return numba.njit(**opts)(func)
