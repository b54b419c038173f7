# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled statevector kernels. In-place updates on a contiguous complex128
buffer of length 2**q; qubit 0 is the least significant bit of the index.

Control conditions are encoded as (cmask, cval): index i satisfies them iff
i & cmask == cval. Targets are passed as the bit value tbit = 1 << target.
"""

from libc.math cimport sqrt

IMPLEMENTATION = "cython"


def apply_x(double complex[::1] amps, Py_ssize_t tbit):
    cdef Py_ssize_t n = amps.shape[0]
    cdef Py_ssize_t base = 0
    cdef Py_ssize_t i
    cdef double complex tmp
    with nogil:
        while base < n:
            for i in range(base, base + tbit):
                tmp = amps[i]
                amps[i] = amps[i + tbit]
                amps[i + tbit] = tmp
            base += 2 * tbit


def apply_h(double complex[::1] amps, Py_ssize_t tbit):
    cdef Py_ssize_t n = amps.shape[0]
    cdef Py_ssize_t base = 0
    cdef Py_ssize_t i
    cdef double s = 1.0 / sqrt(2.0)
    cdef double complex lo, hi
    with nogil:
        while base < n:
            for i in range(base, base + tbit):
                lo = amps[i]
                hi = amps[i + tbit]
                amps[i] = (lo + hi) * s
                amps[i + tbit] = (lo - hi) * s
            base += 2 * tbit


def apply_mcx(double complex[::1] amps, Py_ssize_t cmask, Py_ssize_t cval,
              Py_ssize_t tbit):
    cdef Py_ssize_t n = amps.shape[0]
    cdef Py_ssize_t i
    cdef double complex tmp
    with nogil:
        for i in range(n):
            if (i & cmask) == cval and not (i & tbit):
                tmp = amps[i]
                amps[i] = amps[i | tbit]
                amps[i | tbit] = tmp


def apply_mcz(double complex[::1] amps, Py_ssize_t cmask, Py_ssize_t cval,
              Py_ssize_t tbit):
    cdef Py_ssize_t n = amps.shape[0]
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            if (i & cmask) == cval and (i & tbit):
                amps[i] = -amps[i]
