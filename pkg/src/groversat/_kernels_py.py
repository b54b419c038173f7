"""Numpy fallback for the compiled kernels in _kernels.pyx.

Same call signatures and in-place semantics; used when the extension was not
built (or when GROVERSAT_NO_EXT=1 forces it off).
"""

from __future__ import annotations

import numpy as np

IMPLEMENTATION = "numpy"

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


def apply_x(amps: np.ndarray, tbit: int) -> None:
    view = amps.reshape(-1, 2, tbit)
    lo = view[:, 0, :].copy()
    view[:, 0, :] = view[:, 1, :]
    view[:, 1, :] = lo


def apply_h(amps: np.ndarray, tbit: int) -> None:
    view = amps.reshape(-1, 2, tbit)
    lo = view[:, 0, :].copy()
    hi = view[:, 1, :]
    view[:, 0, :] = (lo + hi) * _INV_SQRT2
    view[:, 1, :] = (lo - hi) * _INV_SQRT2


def apply_mcx(amps: np.ndarray, cmask: int, cval: int, tbit: int) -> None:
    idx = np.arange(amps.shape[0], dtype=np.intp)
    src = idx[((idx & cmask) == cval) & ((idx & tbit) == 0)]
    dst = src | tbit
    tmp = amps[src].copy()
    amps[src] = amps[dst]
    amps[dst] = tmp


def apply_mcz(amps: np.ndarray, cmask: int, cval: int, tbit: int) -> None:
    idx = np.arange(amps.shape[0], dtype=np.intp)
    hit = ((idx & cmask) == cval) & ((idx & tbit) != 0)
    amps[hit] = -amps[hit]
