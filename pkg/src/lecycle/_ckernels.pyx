# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels; same API and results as ``_pykernels``."""

from cpython.ref cimport Py_INCREF
from cpython.tuple cimport PyTuple_New, PyTuple_SET_ITEM

from math import gcd


cdef inline tuple _mono_add(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef tuple out = PyTuple_New(n)
    cdef object v
    for i in range(n):
        v = <long>a[i] + <long>b[i]
        Py_INCREF(v)
        PyTuple_SET_ITEM(out, i, v)
    return out


cpdef bint monomial_divides(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    for i in range(n):
        if <long>a[i] > <long>b[i]:
            return False
    return True


cpdef tuple monomial_mul(tuple a, tuple b):
    return _mono_add(a, b)


cpdef tuple monomial_div(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef tuple out = PyTuple_New(n)
    cdef object v
    for i in range(n):
        v = <long>a[i] - <long>b[i]
        Py_INCREF(v)
        PyTuple_SET_ITEM(out, i, v)
    return out


cpdef tuple monomial_lcm(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef tuple out = PyTuple_New(n)
    cdef long x, y
    cdef object v
    for i in range(n):
        x = a[i]
        y = b[i]
        v = x if x > y else y
        Py_INCREF(v)
        PyTuple_SET_ITEM(out, i, v)
    return out


cpdef dict terms_mul(dict p, dict q):
    cdef dict out = {}
    cdef tuple ma, mb, m
    cdef object ca, cb, c
    for ma, ca in p.items():
        for mb, cb in q.items():
            m = _mono_add(ma, mb)
            c = out.get(m, 0) + ca * cb
            if c:
                out[m] = c
            else:
                out.pop(m, None)
    return out


cpdef dict terms_add_scaled(dict p, object c, tuple shift, dict q):
    cdef dict out = dict(p)
    cdef tuple m
    cdef object cq, v
    for m, cq in q.items():
        m = _mono_add(m, shift)
        v = out.get(m, 0) + c * cq
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


cpdef Py_ssize_t sparse_rank(list rows):
    cdef dict pivots = {}
    cdef dict r, piv, nr
    cdef object row, a, b, g, v, w, k
    cdef long col, kk
    for row in rows:
        r = {k: v for k, v in row.items() if v}
        while r:
            col = -1
            for k in r:
                kk = k
                if col < 0 or kk < col:
                    col = kk
            piv = pivots.get(col)
            if piv is None:
                g = 0
                for v in r.values():
                    g = gcd(g, v)
                if g > 1:
                    r = {k: v // g for k, v in r.items()}
                pivots[col] = r
                break
            a = piv[col]
            b = r[col]
            g = gcd(a, b)
            a = a // g
            b = b // g
            nr = {}
            for k, v in r.items():
                nr[k] = a * v
            for k, v in piv.items():
                w = nr.get(k, 0) - b * v
                if w:
                    nr[k] = w
                else:
                    nr.pop(k, None)
            r = nr
    return len(pivots)
