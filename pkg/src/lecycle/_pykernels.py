"""Pure-Python implementations of the hot kernels.

The compiled module ``_ckernels`` exposes exactly the same functions; see
``lecycle.kernels`` for the selection logic.  Term maps are plain dicts
keyed by exponent tuples.
"""

from math import gcd


def monomial_divides(a, b):
    """True iff the monomial ``a`` divides ``b``."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def monomial_mul(a, b):
    return tuple([x + y for x, y in zip(a, b)])


def monomial_div(a, b):
    return tuple([x - y for x, y in zip(a, b)])


def monomial_lcm(a, b):
    return tuple([x if x > y else y for x, y in zip(a, b)])


def terms_mul(p, q):
    """Product of two term maps."""
    out = {}
    get = out.get
    for ma, ca in p.items():
        for mb, cb in q.items():
            m = tuple([x + y for x, y in zip(ma, mb)])
            c = get(m, 0) + ca * cb
            if c:
                out[m] = c
            else:
                out.pop(m, None)
    return out


def terms_add_scaled(p, c, shift, q):
    """Return ``p + c * x^shift * q`` as a new term map."""
    out = dict(p)
    get = out.get
    for m, cq in q.items():
        m = tuple([x + y for x, y in zip(m, shift)])
        v = get(m, 0) + c * cq
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def sparse_rank(rows):
    """Rank over Q of integer row vectors given as ``{column: int}`` dicts.

    Fraction-free elimination: every stored pivot row is primitive and each
    incoming row is cleared column by column with integer cross-multiplication.
    """
    pivots = {}
    for row in rows:
        r = {k: v for k, v in row.items() if v}
        while r:
            col = min(r)
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
            a //= g
            b //= g
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
