"""Kernel selection: compiled extension when it imports, pure Python otherwise.

Set HALLP1_PURE=1 to force the fallback.
"""
import os

from . import _kernels_py as pure

compiled = None
if not os.environ.get("HALLP1_PURE"):
    try:
        from . import _ckernels as compiled
    except ImportError:
        compiled = None

impl = compiled if compiled is not None else pure
BACKEND = "cython" if compiled is not None else "python"

rref_mod = impl.rref_mod
rank_mod = impl.rank_mod
nullspace_mod = impl.nullspace_mod
stable_subspaces = impl.stable_subspaces
form_pair_census = impl.form_pair_census
