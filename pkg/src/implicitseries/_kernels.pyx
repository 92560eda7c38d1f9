# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled term-arithmetic kernels.

Twin of ``implicitseries._kernels_py`` (see there for the data contract);
the algebra module picks whichever of the two imports.  Indeterminate codes
fit in 64 bits by construction, so code comparisons run as C integers;
exponents and coefficients stay Python objects to keep arithmetic exact and
unbounded.
"""

BACKEND = "cython"


def mon_mul(tuple a, tuple b):
    """Merge two monomials, adding exponents; cancelled factors drop out."""
    cdef Py_ssize_t na = len(a)
    cdef Py_ssize_t nb = len(b)
    if na == 0:
        return b
    if nb == 0:
        return a
    cdef Py_ssize_t i = 0
    cdef Py_ssize_t j = 0
    cdef long long ca, cb
    cdef object e
    cdef list out = []
    while i < na and j < nb:
        ca = a[i]
        cb = b[j]
        if ca == cb:
            e = a[i + 1] + b[j + 1]
            if e != 0:
                out.append(a[i])
                out.append(e)
            i += 2
            j += 2
        elif ca < cb:
            out.append(a[i])
            out.append(a[i + 1])
            i += 2
        else:
            out.append(b[j])
            out.append(b[j + 1])
            j += 2
    while i < na:
        out.append(a[i])
        i += 1
    while j < nb:
        out.append(b[j])
        j += 1
    return tuple(out)


def mon_pow(tuple m, k):
    """Raise a monomial to an integer power (k may be negative)."""
    if k == 0:
        return ()
    cdef Py_ssize_t n = len(m)
    cdef Py_ssize_t i
    cdef list out = list(m)
    for i in range(1, n, 2):
        out[i] = out[i] * k
    return tuple(out)


def mul_terms(dict a, dict b):
    """Exact product of two term dicts, with like-monomial accumulation."""
    if len(a) > len(b):
        a, b = b, a
    cdef dict out = {}
    cdef tuple ma, mb, m
    cdef object ca, cb, c
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = mon_mul(ma, mb)
            c = out.get(m)
            if c is None:
                out[m] = ca * cb
            else:
                c = c + ca * cb
                if c:
                    out[m] = c
                else:
                    del out[m]
    return out


def add_terms(dict a, dict b):
    """Sum of two term dicts; zero coefficients are dropped."""
    cdef dict out = dict(a)
    cdef tuple m
    cdef object c, prev, s
    for m, c in b.items():
        prev = out.get(m)
        if prev is None:
            out[m] = c
        else:
            s = prev + c
            if s:
                out[m] = s
            else:
                del out[m]
    return out


def add_scaled(dict acc, dict terms, c):
    """In-place ``acc += c * terms``; c must be nonzero."""
    cdef tuple m
    cdef object cm, prev, s
    for m, cm in terms.items():
        prev = acc.get(m)
        if prev is None:
            acc[m] = c * cm
        else:
            s = prev + c * cm
            if s:
                acc[m] = s
            else:
                del acc[m]


def scale_terms(dict a, c):
    """Term dict scaled by a nonzero coefficient."""
    cdef dict out = {}
    cdef tuple m
    cdef object cm
    for m, cm in a.items():
        out[m] = c * cm
    return out
