"""Brute-force verifiers built only from linear algebra and univariate
arithmetic.  Nothing here touches the Gröbner/standard-basis engine.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from . import kernels
from .polyring import Polynomial

NOT_STABILIZED = "NOT_STABILIZED"
INFINITE = "INFINITE"


class TruncationTooSmall(ValueError):
    pass


def _monomials_below(n: int, N: int) -> list:
    """All exponent vectors in n variables with total degree < N."""
    out = []
    for d in range(N):
        for combo in itertools.combinations_with_replacement(range(n), d):
            e = [0] * n
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


def _integer_rows(p: Polynomial):
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    return {m: int(c * den) for m, c in p.terms.items()}


def truncated_local_dimension(generators, N: int) -> int:
    """dim Q[z]/(I + m^N) by rank of the Macaulay matrix of I below degree N.

    ``generators`` is an Ideal or a sequence of polynomials.  Rows are all
    products (monomial * generator) truncated to degree < N.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    gens = getattr(generators, "generators", generators)
    gens = [g for g in gens if g]
    if not gens:
        return len(_monomials_below(_nvars(generators), N))
    n = gens[0].ring.nvars
    cols = _monomials_below(n, N)
    index = {m: i for i, m in enumerate(cols)}
    rows = []
    for g in gens:
        ig = _integer_rows(g)
        low = g.low_degree()
        for m in cols:
            if sum(m) + low >= N:
                continue
            row = {}
            for t, c in ig.items():
                j = index.get(tuple(a + b for a, b in zip(t, m)))
                if j is not None:
                    row[j] = c
            if row:
                rows.append(row)
    return len(cols) - kernels.sparse_rank(rows)


def _nvars(generators):
    ring = getattr(generators, "ring", None)
    if ring is None:
        raise ValueError("cannot determine ring of an empty generator list")
    return ring.nvars


def stabilized_local_multiplicity(generators, N_max: int = 16):
    """First value of the truncated dimension repeated at consecutive N.

    By Nakayama, equal values at N and N+1 mean m^N lies in the localized
    ideal, so the plateau is the local multiplicity.  Returns
    NOT_STABILIZED if no repeat happens up to N_max.
    """
    if N_max < 3:
        raise ValueError("N_max must be >= 3")
    prev = truncated_local_dimension(generators, 2)
    for N in range(3, N_max + 1):
        cur = truncated_local_dimension(generators, N)
        if cur == prev:
            return cur
        prev = cur
    return NOT_STABILIZED


# ---------------------------------------------------------------------------
# curves


def _series_mul(a: list, b: list, deg: int) -> list:
    out = [Fraction(0)] * (deg + 1)
    for i, x in enumerate(a):
        if not x or i > deg:
            continue
        for j, y in enumerate(b):
            if i + j > deg:
                break
            if y:
                out[i + j] += x * y
    return out


@dataclass(frozen=True)
class CurveParam:
    """Parametrized curve germ t -> r(t); one coefficient list per coordinate.

    ``coords[i][k]`` is the coefficient of t^k in r_i(t).
    """

    coords: tuple
    truncation: int = 64

    def __post_init__(self):
        coords = tuple(tuple(Fraction(c) for c in r) for r in self.coords)
        object.__setattr__(self, "coords", coords)

    @property
    def base_point(self) -> tuple:
        return tuple(r[0] if r else Fraction(0) for r in self.coords)

    def is_reduced(self) -> bool:
        g = 0
        for r in self.coords:
            for k, c in enumerate(r):
                if k and c:
                    g = gcd(g, k)
        return g == 1

    @classmethod
    def from_polys(cls, *coords, truncation: int = 64) -> "CurveParam":
        return cls(tuple(tuple(c) for c in coords), truncation)


def compose(g: Polynomial, r: CurveParam) -> list:
    """Coefficients of g(r(t)) up to the truncation degree."""
    if len(r.coords) != g.ring.nvars:
        raise ValueError("curve and polynomial live in different dimensions")
    D = r.truncation
    series = [list(c[: D + 1]) + [Fraction(0)] * max(0, D + 1 - len(c)) for c in r.coords]
    powers = [[[Fraction(1)] + [Fraction(0)] * D] for _ in series]

    def power(i, e):
        cache = powers[i]
        while len(cache) <= e:
            cache.append(_series_mul(cache[-1], series[i], D))
        return cache[e]

    total = [Fraction(0)] * (D + 1)
    for m, c in g.terms.items():
        term = [Fraction(0)] * (D + 1)
        term[0] = c
        for i, e in enumerate(m):
            if e:
                term = _series_mul(term, power(i, e), D)
        total = [a + b for a, b in zip(total, term)]
    return total


def curve_intersection_multiplicity(r: CurveParam, g: Polynomial, expected_bound: int | None = None):
    """Order in t of g(r(t)); INFINITE when it vanishes up to truncation.

    ``expected_bound`` is the caller's bound on the answer; it must be below
    the truncation degree or the result cannot be certified.
    """
    if expected_bound is not None and expected_bound >= r.truncation:
        raise TruncationTooSmall(
            f"truncation {r.truncation} cannot certify multiplicities up to {expected_bound}"
        )
    coeffs = compose(g, r)
    for k, c in enumerate(coeffs):
        if c:
            return k
    return INFINITE
