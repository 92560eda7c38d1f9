"""Pure-Python term-arithmetic kernels.

Fallback twin of the compiled extension ``implicitseries._kernels``.  Both
expose the same functions over the same raw data: a polynomial is a dict
mapping monomials to nonzero ``Fraction`` coefficients, and a monomial is a
flat tuple ``(code0, exp0, code1, exp1, ...)`` with indeterminate codes
strictly increasing and no zero exponents.  The empty tuple is the unit
monomial.
"""

BACKEND = "python"


def mon_mul(a, b):
    """Merge two monomials, adding exponents; cancelled factors drop out."""
    if not a:
        return b
    if not b:
        return a
    out = []
    na, nb = len(a), len(b)
    i = j = 0
    while i < na and j < nb:
        ca = a[i]
        cb = b[j]
        if ca == cb:
            e = a[i + 1] + b[j + 1]
            if e:
                out.append(ca)
                out.append(e)
            i += 2
            j += 2
        elif ca < cb:
            out.append(ca)
            out.append(a[i + 1])
            i += 2
        else:
            out.append(cb)
            out.append(b[j + 1])
            j += 2
    if i < na:
        out.extend(a[i:])
    if j < nb:
        out.extend(b[j:])
    return tuple(out)


def mon_pow(m, k):
    """Raise a monomial to an integer power (k may be negative)."""
    if k == 0:
        return ()
    out = list(m)
    for i in range(1, len(out), 2):
        out[i] *= k
    return tuple(out)


def mul_terms(a, b):
    """Exact product of two term dicts, with like-monomial accumulation."""
    if len(a) > len(b):
        a, b = b, a
    out = {}
    get = out.get
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = mon_mul(ma, mb)
            c = get(m)
            if c is None:
                out[m] = ca * cb
            else:
                c = c + ca * cb
                if c:
                    out[m] = c
                else:
                    del out[m]
    return out


def add_terms(a, b):
    """Sum of two term dicts; zero coefficients are dropped."""
    out = dict(a)
    get = out.get
    for m, c in b.items():
        prev = get(m)
        if prev is None:
            out[m] = c
        else:
            s = prev + c
            if s:
                out[m] = s
            else:
                del out[m]
    return out


def add_scaled(acc, terms, c):
    """In-place ``acc += c * terms``; c must be nonzero."""
    get = acc.get
    for m, cm in terms.items():
        prev = get(m)
        if prev is None:
            acc[m] = c * cm
        else:
            s = prev + c * cm
            if s:
                acc[m] = s
            else:
                del acc[m]


def scale_terms(a, c):
    """Term dict scaled by a nonzero coefficient."""
    return {m: c * cm for m, cm in a.items()}
