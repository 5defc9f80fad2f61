# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_pykernels``; same contracts, same results."""

from cpython.dict cimport PyDict_GetItem, PyDict_SetItem
from cpython.ref cimport PyObject

DEF _WIDTH = 8

WIDTH = _WIDTH
MASK = (1 << _WIDTH) - 1
cdef long _MASK = (1 << _WIDTH) - 1


cdef dict _prune(dict d):
    return {k: c for k, c in d.items() if c}


def mul(dict a, dict b):
    cdef dict out = {}
    cdef list items_a, items_b
    cdef Py_ssize_t i, j, na, nb
    cdef object ka, ca, kb, cb, k
    cdef PyObject* cur
    if len(a) > len(b):
        a, b = b, a
    items_a = list(a.items())
    items_b = list(b.items())
    na = len(items_a)
    nb = len(items_b)
    for i in range(na):
        ka, ca = <tuple>items_a[i]
        for j in range(nb):
            kb, cb = <tuple>items_b[j]
            k = ka + kb
            cur = PyDict_GetItem(out, k)
            if cur is NULL:
                PyDict_SetItem(out, k, ca * cb)
            else:
                PyDict_SetItem(out, k, <object>cur + ca * cb)
    return _prune(out)


def add_into(dict acc, dict a, scale=1):
    cdef object k, c, v
    cdef PyObject* cur
    for k, c in a.items():
        cur = PyDict_GetItem(acc, k)
        if cur is NULL:
            v = scale * c
        else:
            v = <object>cur + scale * c
        if v:
            PyDict_SetItem(acc, k, v)
        elif cur is not NULL:
            del acc[k]
    return acc


def scale(dict a, c):
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def partial(dict a, int shift, int order):
    cdef dict out = {}
    cdef object k, c, nk, f
    cdef long e, j
    cdef object step = (<object>1 << shift) * order
    cdef PyObject* cur
    for k, c in a.items():
        e = (k >> shift) & _MASK
        if e < order:
            continue
        f = 1
        for j in range(e - order + 1, e + 1):
            f = f * j
        nk = k - step
        cur = PyDict_GetItem(out, nk)
        if cur is NULL:
            PyDict_SetItem(out, nk, c * f)
        else:
            PyDict_SetItem(out, nk, <object>cur + c * f)
    return _prune(out)


def todd(dict a, int shift, list table):
    cdef dict out = {}
    cdef object k, c, nk, t, falling
    cdef long e, j
    cdef object step = <object>1 << shift
    cdef PyObject* cur
    for k, c in a.items():
        e = (k >> shift) & _MASK
        falling = 1
        nk = k
        for j in range(e + 1):
            t = table[j]
            if t:
                cur = PyDict_GetItem(out, nk)
                if cur is NULL:
                    PyDict_SetItem(out, nk, c * falling * t)
                else:
                    PyDict_SetItem(out, nk, <object>cur + c * falling * t)
            falling = falling * (e - j)
            nk = nk - step
    return _prune(out)


def drop_var(dict a, int shift):
    return {k: c for k, c in a.items() if not (k >> shift) & _MASK}


def evaluate(dict a, list values):
    cdef object total = 0
    cdef object k, c, v, x
    cdef long e
    cdef Py_ssize_t s, nv = len(values)
    for k, c in a.items():
        s = 0
        v = c
        while k:
            e = k & _MASK
            if e:
                x = values[s] if s < nv else None
                if x is None:
                    raise LookupError(s)
                v = v * x ** e
            k = k >> _WIDTH
            s += 1
        total = total + v
    return total
