# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; same contract as ``_kernels_py``."""

from cpython.dict cimport PyDict_GetItem, PyDict_SetItem
from cpython.ref cimport PyObject
from libc.stdlib cimport calloc, free
from math import gcd

KEY_BASE = 1 << 32
HALF_BASE = KEY_BASE >> 1

NAME = "compiled"

# 4**31 < 2**63, so int64 counts are exact up to this many steps
cdef int MAX_NATIVE_STEPS = 31


def mul_add(dict acc, dict a, dict b, object factor):
    cdef Py_ssize_t nb = len(b), j
    cdef long long ka
    cdef long long *bkeys
    cdef list bvals = list(b.values())
    cdef object va, k, vb
    cdef PyObject *cur
    cdef bint scaled = factor != 1
    bkeys = <long long *>calloc(nb if nb else 1, sizeof(long long))
    try:
        j = 0
        for kb in b:
            bkeys[j] = kb
            j += 1
        for ka_obj, va in a.items():
            ka = ka_obj
            if scaled:
                va = va * factor
            for j in range(nb):
                vb = bvals[j]
                k = ka + bkeys[j]
                cur = PyDict_GetItem(acc, k)
                if cur is NULL:
                    PyDict_SetItem(acc, k, va * vb)
                else:
                    PyDict_SetItem(acc, k, <object>cur + va * vb)
    finally:
        free(bkeys)


def add_scaled(dict acc, dict a, object factor):
    cdef PyObject *cur
    for k, v in a.items():
        cur = PyDict_GetItem(acc, k)
        if cur is NULL:
            PyDict_SetItem(acc, k, v * factor)
        else:
            PyDict_SetItem(acc, k, <object>cur + v * factor)


def normalize(dict terms, object den):
    cdef dict out = {}
    for k, v in terms.items():
        if v:
            out[k] = v
    if not out:
        return {}, 1
    if den < 0:
        den = -den
        out = {k: -v for k, v in out.items()}
    g = gcd(den, *out.values())
    if g != 1:
        den //= g
        out = {k: v // g for k, v in out.items()}
    return out, den


def walk_layers(int N):
    if N > MAX_NATIVE_STEPS:
        from slitplane._kernels_py import walk_layers as py_walk_layers
        return py_walk_layers(N)
    cdef int off = N + 1, side = 2 * N + 3, n, p, q, lo, hi
    cdef long long *cur = <long long *>calloc(side * side, sizeof(long long))
    cdef long long *nxt = <long long *>calloc(side * side, sizeof(long long))
    cdef long long *tmp
    if cur is NULL or nxt is NULL:
        free(cur)
        free(nxt)
        raise MemoryError()
    try:
        cur[off * side + off] = 1
        layers = [_strip(cur, side)]
        for n in range(1, N + 1):
            lo = off - n
            hi = off + n
            for p in range(side * side):
                nxt[p] = 0
            for p in range(lo, hi + 1):
                for q in range(lo, hi + 1):
                    nxt[p * side + q] = (cur[(p - 1) * side + q] + cur[(p + 1) * side + q]
                                         + cur[p * side + q - 1] + cur[p * side + q + 1])
            for p in range(off + 1):
                nxt[p * side + off] = 0
            layers.append(_strip(nxt, side))
            tmp = cur
            cur = nxt
            nxt = tmp
        return layers
    finally:
        free(cur)
        free(nxt)


cdef list _strip(long long *grid, int side):
    cdef int p, q
    return [[grid[p * side + q] for q in range(1, side - 1)] for p in range(1, side - 1)]
