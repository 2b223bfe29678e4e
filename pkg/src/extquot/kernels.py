"""Dispatch point for the hot numeric kernels (numba or numpy)."""
from . import _np_kernels
from ._accel import BACKEND, USE_NUMBA

if USE_NUMBA:
    from . import _jit_kernels as _impl
else:
    _impl = _np_kernels

monomial_images = _impl.monomial_images
monomial_apply_many = _impl.monomial_apply_many
lexmin_row = _impl.lexmin_row
grid_action = _impl.grid_action
pair_orbit_canon = _impl.pair_orbit_canon

__all__ = [
    "BACKEND",
    "monomial_images",
    "monomial_apply_many",
    "lexmin_row",
    "grid_action",
    "pair_orbit_canon",
]
