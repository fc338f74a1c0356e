"""Ideals: Gröbner bases, Mora standard bases, quotients, saturation,
local dimension and local multiplicity at the origin.

All internal basis work happens on primitive integer term maps
(fraction-free), which is markedly faster than ``Fraction`` arithmetic.
Public results are monic ``Polynomial`` values.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Callable, Iterable, Sequence

from . import kernels
from .errors import MissingBasisError, ResourceLimitExceeded, RingMismatchError
from .polyring import DEGREVLEX, NEGDEGREVLEX, MonomialOrder, Polynomial, Ring

divides = kernels.monomial_divides
mono_div = kernels.monomial_div
mono_lcm = kernels.monomial_lcm
add_scaled = kernels.terms_add_scaled


@dataclass(frozen=True)
class Limits:
    """Caps applied to every single basis computation."""

    max_steps: int = 50_000
    max_degree: int = 200
    max_basis: int = 2_000


DEFAULT_LIMITS = Limits()


@dataclass
class Context:
    """Per-computation settings threaded through the pipeline.

    ``observers`` are called as ``observer(ideal, value)`` after every
    local multiplicity; the CLI's ``--verify`` mode installs the oracle here.
    """

    limits: Limits = DEFAULT_LIMITS
    observers: list = field(default_factory=list)

    def record(self, ideal: "Ideal", value) -> None:
        for obs in self.observers:
            obs(ideal, value)


def _ctx(ctx) -> Context:
    return ctx if ctx is not None else Context()


class _Budget:
    __slots__ = ("steps", "limits", "what")

    def __init__(self, limits: Limits, what: str):
        self.steps = 0
        self.limits = limits
        self.what = what

    def tick(self):
        self.steps += 1
        if self.steps > self.limits.max_steps:
            raise ResourceLimitExceeded(
                f"{self.what}: more than {self.limits.max_steps} reduction steps"
            )

    def check_degree(self, deg):
        if deg > self.limits.max_degree:
            raise ResourceLimitExceeded(
                f"{self.what}: intermediate degree {deg} exceeds {self.limits.max_degree}"
            )

    def check_size(self, n):
        if n > self.limits.max_basis:
            raise ResourceLimitExceeded(f"{self.what}: basis size exceeds {self.limits.max_basis}")


# ---------------------------------------------------------------------------
# integer term maps


def _content(terms) -> int:
    g = 0
    for v in terms.values():
        g = gcd(g, v)
        if g == 1:
            break
    return g


def _to_int_terms(p: Polynomial):
    """Primitive integer multiple of ``p`` plus the factor p = factor * result."""
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    ints = {m: int(c * den) for m, c in p.terms.items()}
    g = _content(ints) or 1
    return {m: v // g for m, v in ints.items()}, Fraction(g, den)


def _key_cache(order: MonomialOrder):
    return _cached_key(order)


@lru_cache(maxsize=64)
def _cached_key(order: MonomialOrder):
    return lru_cache(maxsize=1 << 18)(order.key)


class _Elem:
    """Basis element: primitive integer terms with cached leading data."""

    __slots__ = ("terms", "lm", "lc", "ecart", "deg")

    def __init__(self, terms, key):
        lm = max(terms, key=key)
        lc = terms[lm]
        if lc < 0:
            terms = {m: -v for m, v in terms.items()}
            lc = -lc
        self.terms = terms
        self.lm = lm
        self.lc = lc
        self.deg = max(sum(m) for m in terms)
        self.ecart = self.deg - sum(lm)


def _spoly(a: _Elem, b: _Elem):
    L = mono_lcm(a.lm, b.lm)
    g = gcd(a.lc, b.lc)
    s = add_scaled({}, b.lc // g, mono_div(L, a.lm), a.terms)
    return add_scaled(s, -(a.lc // g), mono_div(L, b.lm), b.terms)


def _reduce_full(terms, basis: Sequence[_Elem], key, budget: _Budget):
    """Full reduction of ``terms`` by a global basis.

    Returns (remainder, factor) with original = factor * remainder mod basis.
    """
    h = dict(terms)
    rem = {}
    factor = Fraction(1)
    while h:
        m = max(h, key=key)
        c = h[m]
        for g in basis:
            if divides(g.lm, m):
                break
        else:
            rem[m] = c
            del h[m]
            continue
        budget.tick()
        d = gcd(g.lc, c)
        mh = g.lc // d
        if mh != 1:
            h = {k: v * mh for k, v in h.items()}
            rem = {k: v * mh for k, v in rem.items()}
            factor /= mh
        h = add_scaled(h, -(c // d), mono_div(m, g.lm), g.terms)
        if h:
            budget.check_degree(max(sum(k) for k in h))
        cont = gcd(_content(h), _content(rem))
        if cont > 1:
            h = {k: v // cont for k, v in h.items()}
            rem = {k: v // cont for k, v in rem.items()}
            factor *= cont
    return rem, factor


def _ecart_of(terms, lm):
    return max(sum(m) for m in terms) - sum(lm)


def _truncate(terms, corner, keep=None):
    """Drop terms of degree >= corner (they lie in m^corner), keeping ``keep``."""
    return {m: v for m, v in terms.items() if m == keep or sum(m) < corner}


def _mora_reduce(terms, basis: Sequence[_Elem], key, budget: _Budget, corner=None):
    """Mora's weak normal form under a local order (top reduction only).

    Among reducers the one of minimal ecart wins, ties going to the first
    in insertion order; intermediate results of larger ecart join the
    reducer set.  With ``corner`` set, m^corner is known to lie in the
    localized ideal and terms of that degree or more are discarded.
    Returns primitive integer terms (possibly empty).
    """
    h = dict(terms)
    if corner is not None:
        h = _truncate(h, corner)
    T = list(basis)
    while h:
        m = max(h, key=key)
        best = None
        for g in T:
            if divides(g.lm, m) and (best is None or g.ecart < best.ecart):
                best = g
        if best is None:
            break
        budget.tick()
        e_h = _ecart_of(h, m)
        if best.ecart > e_h:
            T.append(_Elem(dict(h), key))
        c = h[m]
        d = gcd(best.lc, c)
        mh = best.lc // d
        if mh != 1:
            h = {k: v * mh for k, v in h.items()}
        h = add_scaled(h, -(c // d), mono_div(m, best.lm), best.terms)
        if corner is not None:
            h = _truncate(h, corner)
        if h:
            budget.check_degree(max(sum(k) for k in h))
            cont = _content(h)
            if cont > 1:
                h = {k: v // cont for k, v in h.items()}
    return h


def _gm_update(G, B, ih, elems, with_product=True):
    """Gebauer-Möller installation of element ``ih`` into (G, B)."""
    mh = elems[ih].lm

    def coprime(a, b):
        return all(x == 0 or y == 0 for x, y in zip(a, b))

    C = list(G)
    D = []
    while C:
        ig = C.pop()
        mg = elems[ig].lm
        L = mono_lcm(mh, mg)
        if with_product and coprime(mh, mg):
            D.append((ih, ig))
            continue
        if any(divides(mono_lcm(mh, elems[j].lm), L) for j in C) or any(
            divides(mono_lcm(mh, elems[p[1]].lm), L) for p in D
        ):
            continue
        D.append((ih, ig))
    if with_product:
        E = [p for p in D if not coprime(mh, elems[p[1]].lm)]
    else:
        E = D
    B_new = []
    for i1, i2 in B:
        m1, m2 = elems[i1].lm, elems[i2].lm
        L = mono_lcm(m1, m2)
        if divides(mh, L) and mono_lcm(m1, mh) != L and mono_lcm(m2, mh) != L:
            continue
        B_new.append((i1, i2))
    B_new.extend(E)
    G_new = [ig for ig in G if not divides(mh, elems[ig].lm)]
    G_new.append(ih)
    return G_new, B_new


def _buchberger(polys, order: MonomialOrder, limits: Limits):
    """Reduced Gröbner basis of integer term maps under a global order."""
    key = _key_cache(order)
    budget = _Budget(limits, "Gröbner basis")
    elems: list = []
    # inter-reduce the input first
    work = [_Elem(p, key) for p in polys if p]
    work.sort(key=lambda e: key(e.lm))
    G: list = []
    B: list = []
    for e in work:
        r, _ = _reduce_full(e.terms, [elems[i] for i in G], key, budget)
        if not r:
            continue
        elems.append(_Elem(r, key))
        G, B = _gm_update(G, B, len(elems) - 1, elems)
    while B:
        # normal strategy: smallest lcm first
        pair = min(B, key=lambda p: key(mono_lcm(elems[p[0]].lm, elems[p[1]].lm)))
        B.remove(pair)
        s = _spoly(elems[pair[0]], elems[pair[1]])
        if not s:
            continue
        budget.check_degree(max(sum(k) for k in s))
        reducers = sorted((elems[i] for i in G), key=lambda e: key(e.lm))
        r, _ = _reduce_full(s, reducers, key, budget)
        if r:
            elems.append(_Elem(r, key))
            budget.check_size(len(G) + 1)
            G, B = _gm_update(G, B, len(elems) - 1, elems)
    basis = [elems[i] for i in G]
    # minimalize, then fully inter-reduce
    basis.sort(key=lambda e: key(e.lm))
    minimal = []
    for e in basis:
        if not any(divides(f.lm, e.lm) for f in minimal):
            minimal.append(e)
    reduced = []
    for i, e in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        tail = {m: v for m, v in e.terms.items() if m != e.lm}
        reduced.append(_normalize_reduced(e, tail, others, key, budget))
    reduced.sort(key=lambda e: key(e.lm), reverse=True)
    return reduced


def _normalize_reduced(e: _Elem, tail, others, key, budget):
    rem, factor = _reduce_full(tail, others, key, budget)
    # e.lc*lm + tail  ==  e.lc*lm + factor*rem  (mod others)
    f = Fraction(factor)
    terms = {m: Fraction(v) * f for m, v in rem.items()}
    terms[e.lm] = Fraction(e.lc)
    den = 1
    for c in terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    ints = {m: int(c * den) for m, c in terms.items()}
    g = _content(ints)
    return _Elem({m: v // g for m, v in ints.items()}, key)


def _corner_degree(lms, n: int):
    """Least D with every monomial of degree D in <lms>, or None if none exists."""
    zero = (0,) * n
    if any(m == zero for m in lms):
        return 0
    for i in range(n):
        if not any(m[i] == sum(m) for m in lms):
            return None
    top = 0
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for m in frontier:
            for i in range(n):
                u = m[:i] + (m[i] + 1,) + m[i + 1 :]
                if u in seen or any(divides(l, u) for l in lms):
                    continue
                seen.add(u)
                nxt.append(u)
                top = max(top, sum(u))
        frontier = nxt
    return top + 1


def _standard_basis(polys, order: MonomialOrder, limits: Limits):
    """Mora standard basis of integer term maps under a local order.

    Once the leading monomials contain every monomial of some degree D
    (the ideal is zero-dimensional at 0), a weak normal form of any element
    of m^D is zero, so m^D lies in the localized ideal and all later work
    is done modulo m^D.  This is what keeps sheared inputs tractable.
    """
    key = _key_cache(order)
    budget = _Budget(limits, "standard basis")
    elems = [_Elem(p, key) for p in polys if p]
    n = len(elems[0].lm) if elems else 0
    for e in elems:
        if sum(e.lm) == 0:
            return [_Elem({e.lm: 1}, key)]
    G = list(range(len(elems)))
    B = []
    G2: list = []
    for i in range(len(elems)):
        G2, B = _gm_update(G2, B, i, elems, with_product=False)
    corner = None

    def tighten():
        nonlocal corner
        D = _corner_degree([elems[i].lm for i in G], n)
        if D is None or (corner is not None and D >= corner):
            return
        corner = D
        for i in G:
            e = elems[i]
            if e.deg >= D:
                elems[i] = _Elem(_truncate(e.terms, D, e.lm), key)

    tighten()
    # keep every element as a reducer, pairs per the chain criterion
    while B:
        pair = min(
            B,
            key=lambda p: sum(mono_lcm(elems[p[0]].lm, elems[p[1]].lm)),
        )
        B.remove(pair)
        L = mono_lcm(elems[pair[0]].lm, elems[pair[1]].lm)
        if corner is not None and sum(L) >= corner:
            continue
        s = _spoly(elems[pair[0]], elems[pair[1]])
        if not s:
            continue
        budget.check_degree(max(sum(k) for k in s))
        h = _mora_reduce(s, [elems[i] for i in G], key, budget, corner)
        if h:
            e = _Elem(h, key)
            if sum(e.lm) == 0:
                return [_Elem({e.lm: 1}, key)]
            elems.append(e)
            G.append(len(elems) - 1)
            budget.check_size(len(G))
            G2, B = _gm_update(G2, B, len(elems) - 1, elems, with_product=False)
            tighten()
    basis = [elems[i] for i in G]
    minimal = []
    for e in sorted(basis, key=lambda e: key(e.lm)):
        if not any(divides(f.lm, e.lm) for f in minimal):
            minimal.append(e)
    minimal.sort(key=lambda e: key(e.lm), reverse=True)
    return minimal


def _elem_to_poly(ring: Ring, e: _Elem) -> Polynomial:
    lc = Fraction(e.lc)
    return Polynomial(ring, {m: Fraction(v) / lc for m, v in e.terms.items()}, True)


# ---------------------------------------------------------------------------
# the Ideal type


class Ideal:
    """A finitely generated ideal with a write-once basis cache per order."""

    def __init__(self, generators: Iterable[Polynomial], ring: Ring | None = None):
        gens = tuple(generators)
        if ring is None:
            if not gens:
                raise ValueError("cannot infer the ring of an empty generator list")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError(f"generator in {g.ring}, ideal in {ring}")
        nonzero = tuple(g for g in gens if g)
        self.ring = ring
        self.generators = nonzero if nonzero else (ring.zero(),)
        self._cache: dict = {}
        self._lock = threading.Lock()

    @classmethod
    def unit(cls, ring: Ring) -> "Ideal":
        return cls([ring.one()], ring)

    def is_zero(self) -> bool:
        return all(not g for g in self.generators)

    def __add__(self, other) -> "Ideal":
        if isinstance(other, Ideal):
            extra = other.generators
        elif isinstance(other, Polynomial):
            extra = (other,)
        else:
            extra = tuple(other)
        return Ideal(self.generators + tuple(extra), self.ring)

    def __repr__(self):
        return "Ideal<" + ", ".join(g.to_str() for g in self.generators) + ">"

    def cached_basis(self, order: MonomialOrder):
        return self._cache.get(order)

    def basis(self, order: MonomialOrder = DEGREVLEX, limits: Limits | None = None) -> tuple:
        """Reduced Gröbner basis (global order) or minimal standard basis (local)."""
        hit = self._cache.get(order)
        if hit is not None:
            return hit
        limits = limits or DEFAULT_LIMITS
        ints = [_to_int_terms(g)[0] for g in self.generators if g]
        if order.is_local:
            elems = _standard_basis(ints, order, limits)
        else:
            elems = _buchberger(ints, order, limits)
        result = tuple(_elem_to_poly(self.ring, e) for e in elems)
        with self._lock:
            self._cache.setdefault(order, result)
        return self._cache[order]

    def leading_monomials(self, order: MonomialOrder, limits: Limits | None = None) -> list:
        return [g.leading_term(order)[0] for g in self.basis(order, limits)]

    def is_unit(self, order: MonomialOrder = DEGREVLEX, limits: Limits | None = None) -> bool:
        zero = (0,) * self.ring.nvars
        return any(m == zero for m in self.leading_monomials(order, limits))

    def contains(self, p: Polynomial, order: MonomialOrder = DEGREVLEX, limits=None) -> bool:
        self.basis(order, limits)
        return not normal_form(p, self, order, limits)

    def contains_ideal(self, other: "Ideal", order=DEGREVLEX, limits=None) -> bool:
        return all(self.contains(g, order, limits) for g in other.generators)

    def equals(self, other: "Ideal", order: MonomialOrder = DEGREVLEX, limits=None) -> bool:
        """Ideal equality; under a global order compares reduced bases."""
        if order.is_global:
            return self.basis(order, limits) == other.basis(order, limits)
        return self.contains_ideal(other, order, limits) and other.contains_ideal(
            self, order, limits
        )


# ---------------------------------------------------------------------------
# operations


def groebner_basis(I: Ideal, order: MonomialOrder = DEGREVLEX, limits: Limits | None = None) -> Ideal:
    if not order.is_global:
        raise ValueError("groebner_basis needs a global order; use standard_basis")
    I.basis(order, limits)
    return I


def standard_basis(I: Ideal, order: MonomialOrder = NEGDEGREVLEX, limits: Limits | None = None) -> Ideal:
    if not order.is_local:
        raise ValueError("standard_basis needs a local order")
    I.basis(order, limits)
    return I


def normal_form(p: Polynomial, I: Ideal, order: MonomialOrder = DEGREVLEX, limits=None) -> Polynomial:
    """Remainder of ``p`` modulo the cached basis of ``I`` under ``order``.

    Global orders give the full normal form (p - result lies in I).  Local
    orders give Mora's weak normal form: its leading term is not divisible
    by any basis leading term, and it is zero iff p lies in the localized
    ideal.
    """
    basis = I.cached_basis(order)
    if basis is None:
        raise MissingBasisError(f"no basis cached for {order.kind}; compute it first")
    if p.ring != I.ring:
        raise RingMismatchError(f"{p.ring} vs {I.ring}")
    if not p:
        return p
    limits = limits or DEFAULT_LIMITS
    key = _key_cache(order)
    elems = [_Elem(_to_int_terms(g)[0], key) for g in basis]
    ints, factor = _to_int_terms(p)
    budget = _Budget(limits, "normal form")
    if order.is_global:
        rem, f = _reduce_full(ints, elems, key, budget)
        factor *= f
        return Polynomial(I.ring, {m: factor * v for m, v in rem.items()}, True)
    h = _mora_reduce(ints, elems, key, budget)
    if not h:
        return I.ring.zero()
    e = _Elem(h, key)
    return _elem_to_poly(I.ring, e).scale(p.leading_term(order)[1])


def _fresh_name(ring: Ring, stem="_T") -> str:
    name = stem
    while name in ring.names:
        name += "_"
    return name


def _lift(p: Polynomial, big: Ring) -> Polynomial:
    return Polynomial(big, {(0,) + m: c for m, c in p.terms.items()}, True)


def intersect(ideals: Sequence[Ideal], limits: Limits | None = None) -> Ideal:
    """Intersection via elimination of an auxiliary variable."""
    ideals = list(ideals)
    if not ideals:
        raise ValueError("need at least one ideal")
    ring = ideals[0].ring
    acc = ideals[0]
    for J in ideals[1:]:
        if acc.is_unit(limits=limits):
            acc = J
            continue
        if J.is_unit(limits=limits):
            continue
        big = Ring((_fresh_name(ring),) + ring.names)
        T = big.gen(0)
        gens = [T * _lift(g, big) for g in acc.generators]
        gens += [(1 - T) * _lift(g, big) for g in J.generators]
        order = MonomialOrder("elim", block=1)
        basis = Ideal(gens, big).basis(order, limits)
        kept = [
            Polynomial(ring, {m[1:]: c for m, c in g.terms.items()}, True)
            for g in basis
            if all(m[0] == 0 for m in g.terms)
        ]
        acc = Ideal(kept or [ring.zero()], ring)
    return acc


def ideal_quotient(I: Ideal, g, limits: Limits | None = None) -> Ideal:
    """I : g for a polynomial g (or I : J = intersection over generators of J)."""
    if isinstance(g, Ideal):
        parts = [ideal_quotient(I, h, limits) for h in g.generators if h]
        if not parts:
            return Ideal.unit(I.ring)
        return intersect(parts, limits)
    if not g:
        raise ValueError("quotient by the zero polynomial")
    if I.contains(g, limits=limits):
        return Ideal.unit(I.ring)
    inter = intersect([I, Ideal([g], I.ring)], limits)
    quotients = [h.exact_div(g) for h in inter.generators if h]
    return Ideal(quotients or [I.ring.zero()], I.ring)


def saturation_by_element(I: Ideal, g: Polynomial, limits: Limits | None = None) -> Ideal:
    """I : g^inf, iterating I : g until the reduced bases stop changing."""
    current = I
    while True:
        nxt = ideal_quotient(current, g, limits)
        if nxt.equals(current, limits=limits):
            return current
        current = nxt


def saturation(I: Ideal, J: Ideal, limits: Limits | None = None) -> Ideal:
    """I : J^inf as the intersection of I : g^inf over generators g of J."""
    if J.is_zero():
        raise ValueError("saturation by the zero ideal")
    if I.is_unit(limits=limits):
        return I
    parts = [
        saturation_by_element(I, g, limits)
        for g in J.generators
        if g and not I.contains(g, limits=limits)
    ]
    if not parts:
        return Ideal.unit(I.ring)
    if len(parts) == 1:
        return parts[0]
    return intersect(parts, limits)


def _independent_dim(lms: list, n: int) -> int:
    zero = (0,) * n
    if any(m == zero for m in lms):
        return -1
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in lms]
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            s = set(subset)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def krull_dim(I: Ideal, order: MonomialOrder = NEGDEGREVLEX, limits: Limits | None = None) -> int:
    """Dimension via the leading-term monomial ideal; -1 for the unit ideal.

    Under the local order this is the local dimension at the origin.
    """
    if I.is_zero():
        return I.ring.nvars
    return _independent_dim(I.leading_monomials(order, limits), I.ring.nvars)


def local_dim(I: Ideal, limits: Limits | None = None) -> int:
    return krull_dim(I, NEGDEGREVLEX, limits)


class _NotZeroDim:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "NOT_ZERO_DIMENSIONAL"

    def __reduce__(self):
        return (_NotZeroDim, ())


NOT_ZERO_DIMENSIONAL = _NotZeroDim()


def count_standard_monomials(lms: list, n: int) -> int:
    """Number of monomials outside the monomial ideal <lms> (must be finite)."""
    zero = (0,) * n
    if any(m == zero for m in lms):
        return 0
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for m in frontier:
            for i in range(n):
                u = m[:i] + (m[i] + 1,) + m[i + 1 :]
                if u in seen:
                    continue
                if any(divides(l, u) for l in lms):
                    continue
                seen.add(u)
                nxt.append(u)
        frontier = nxt
    return len(seen)


def local_multiplicity(I: Ideal, ctx: Context | None = None):
    """Length of the localized quotient at the origin, or NOT_ZERO_DIMENSIONAL.

    The unit ideal (origin not on V(I)) has length 0.
    """
    ctx = _ctx(ctx)
    lms = I.leading_monomials(NEGDEGREVLEX, ctx.limits)
    d = _independent_dim(lms, I.ring.nvars) if not I.is_zero() else I.ring.nvars
    if d > 0:
        value = NOT_ZERO_DIMENSIONAL
    else:
        value = count_standard_monomials(lms, I.ring.nvars)
    ctx.record(I, value)
    return value


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    mf, cf = f.leading_term(order)
    mg, cg = g.leading_term(order)
    L = mono_lcm(mf, mg)
    return f.mul_monomial(mono_div(L, mf), 1 / cf) - g.mul_monomial(mono_div(L, mg), 1 / cg)
