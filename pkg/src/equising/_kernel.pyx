# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops in ``_kernel_py`` (same contracts)."""

from cpython.dict cimport PyDict_GetItem, PyDict_SetItem, PyDict_DelItem
from cpython.ref cimport PyObject

# residues below this bound multiply without overflowing a signed 64-bit int
cdef long long FAST_P = 3037000499


cdef inline long long _mulmod(long long a, long long b, long long p):
    return (a * b) % p


def axpy(dict h, dict g, object shift, object c, object p, object cut):
    """In place: ``h -= c * x^shift * g``."""
    cdef long long cc, pp, v, w, o
    cdef PyObject* old
    cdef bint has_cut = cut is not None
    if p and p < FAST_P:
        pp = p
        cc = c % p
        for k, vo in g.items():
            kk = k + shift
            if has_cut and kk < cut:
                continue
            v = vo
            old = PyDict_GetItem(h, kk)
            if old == NULL:
                w = pp - _mulmod(cc, v, pp)
                if w != pp:
                    PyDict_SetItem(h, kk, w)
            else:
                o = <object>old
                w = o - _mulmod(cc, v, pp)
                if w < 0:
                    w += pp
                if w:
                    PyDict_SetItem(h, kk, w)
                else:
                    PyDict_DelItem(h, kk)
        return
    if p:
        for k, vo in g.items():
            kk = k + shift
            if has_cut and kk < cut:
                continue
            old = PyDict_GetItem(h, kk)
            wo = (-(c * vo) if old == NULL else <object>old - c * vo) % p
            if wo:
                h[kk] = wo
            elif old != NULL:
                del h[kk]
        return
    for k, vo in g.items():
        kk = k + shift
        if has_cut and kk < cut:
            continue
        old = PyDict_GetItem(h, kk)
        if old == NULL:
            h[kk] = -(c * vo)
        else:
            wo = <object>old - c * vo
            if wo:
                h[kk] = wo
            else:
                del h[kk]


def scaled(dict g, object c, object p):
    cdef long long cc, pp, v
    if p and p < FAST_P:
        pp = p
        cc = c % p
        out = {}
        for k, vo in g.items():
            v = vo
            out[k] = _mulmod(cc, v, pp)
        return out
    if p:
        return {k: vo * c % p for k, vo in g.items()}
    return {k: vo * c for k, vo in g.items()}


def shifted(dict g, object shift, object c, object p, object cut):
    cdef long long cc, pp, v
    cdef bint has_cut = cut is not None
    out = {}
    if p and p < FAST_P:
        pp = p
        cc = c % p
        for k, vo in g.items():
            kk = k + shift
            if has_cut and kk < cut:
                continue
            v = vo
            out[kk] = _mulmod(cc, v, pp)
        return out
    for k, vo in g.items():
        kk = k + shift
        if has_cut and kk < cut:
            continue
        out[kk] = vo * c % p if p else vo * c
    return out


def truncate(dict h, object cut):
    if cut is None:
        return
    dead = [k for k in h if k < cut]
    for k in dead:
        del h[k]
