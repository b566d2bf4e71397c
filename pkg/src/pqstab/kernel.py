"""Backend selector for the grouping kernels.

The compiled extension is preferred when present; set ``PQSTAB_KERNEL=py`` to
force the NumPy fallback or ``PQSTAB_KERNEL=c`` to require the extension.
"""

import os

from . import _kernel_py

BACKEND = "py"
_impl = _kernel_py

_requested = os.environ.get("PQSTAB_KERNEL", "auto")
if _requested not in ("auto", "c", "py"):
    raise ImportError(f"PQSTAB_KERNEL must be 'auto', 'c' or 'py', not {_requested!r}")

if _requested in ("auto", "c"):
    try:
        from . import _kernel_c

        _impl = _kernel_c
        BACKEND = "c"
    except ImportError:
        if _requested == "c":
            raise ImportError(
                "PQSTAB_KERNEL=c but the compiled kernel is not built; "
                "reinstall with Cython and a C compiler available"
            ) from None

group_rows = _impl.group_rows
relabel_first_occurrence = _impl.relabel_first_occurrence


def backends():
    """Return the available backend modules keyed by name (for benchmarks)."""
    found = {"py": _kernel_py}
    try:
        from . import _kernel_c

        found["c"] = _kernel_c
    except ImportError:
        pass
    return found
