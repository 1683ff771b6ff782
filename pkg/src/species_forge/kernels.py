"""Kernel backend selection.

Imports the compiled kernel when it is built, otherwise the pure-Python one.
Set SPECIES_FORGE_BACKEND=py to force the fallback (used by the benchmark and
the backend-agreement tests).
"""

import os

if os.environ.get("SPECIES_FORGE_BACKEND", "").lower() in ("py", "python"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
MAXN = _impl.MAXN

popcount = _impl.popcount
mask_permute = _impl.mask_permute
comp_permute = _impl.comp_permute
comp_restrict = _impl.comp_restrict
dec_restrict = _impl.dec_restrict
comp_tits = _impl.comp_tits
dec_tits = _impl.dec_tits
comp_refines = _impl.comp_refines
area = _impl.area
dist = _impl.dist
dist_opp = _impl.dist_opp
tits_perm = _impl.tits_perm
