"""Exact multivariate polynomials over Q with pluggable monomial orders.

Polynomials are sparse: a dict from exponent tuples to non-zero
``Fraction`` coefficients.  Every value is immutable once built.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from . import kernels
from .errors import RingMismatchError

Monomial = tuple  # exponent vector, one slot per coordinate z0..zn


@dataclass(frozen=True)
class Ring:
    """Polynomial ring Q[z0, ..., zn] with named coordinates."""

    names: tuple

    def __post_init__(self):
        names = tuple(self.names)
        if not names:
            raise ValueError("a ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        object.__setattr__(self, "names", names)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c})

    def gen(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self.index(i)
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range")
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps, coeff=1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ValueError("exponent vector has wrong length")
        return Polynomial(self, {exps: coeff})

    def parse(self, text: str) -> "Polynomial":
        from .parsing import parse_polynomial

        return parse_polynomial(text, self)

    def __str__(self):
        return "Q[" + ",".join(self.names) + "]"


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, str)):
        return Fraction(c)
    raise TypeError(f"coefficients must be rational, got {type(c).__name__}")


class Polynomial:
    """Immutable sparse polynomial.  Equality is equality of term maps."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping, _trusted: bool = False):
        self.ring = ring
        if _trusted:
            self.terms = terms
        else:
            n = ring.nvars
            clean = {}
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != n or any(e < 0 for e in m):
                    raise ValueError(f"bad exponent vector {m} for {ring}")
                c = _frac(c)
                if c:
                    clean[m] = clean.get(m, 0) + c
            self.terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    # -- basic queries -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def low_degree(self) -> int:
        """Smallest total degree of a term (order at the origin)."""
        return min((sum(m) for m in self.terms), default=-1)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    def variables_used(self) -> set:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    def leading_term(self, order: "MonomialOrder"):
        """(monomial, coefficient) of the largest term under ``order``."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        zero = (0,) * self.ring.nvars
        return Polynomial(
            self.ring, kernels.terms_add_scaled(self.terms, 1, zero, other.terms), True
        )

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()}, True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        zero = (0,) * self.ring.nvars
        return Polynomial(
            self.ring, kernels.terms_add_scaled(self.terms, -1, zero, other.terms), True
        )

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, kernels.terms_mul(self.terms, other.terms), True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        c = _frac(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: c * v for m, v in self.terms.items()}, True)

    def mul_monomial(self, shift, c=1) -> "Polynomial":
        return Polynomial(
            self.ring, kernels.terms_add_scaled({}, _frac(c), tuple(shift), self.terms), True
        )

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        """Quotient by ``other``, which must divide ``self`` exactly."""
        order = DEGREVLEX
        rem = self
        quo = {}
        lm_d, lc_d = other.leading_term(order)
        while rem:
            m, c = rem.leading_term(order)
            if not kernels.monomial_divides(lm_d, m):
                raise ValueError("division is not exact")
            q = kernels.monomial_div(m, lm_d)
            qc = c / lc_d
            quo[q] = qc
            rem = Polynomial(
                self.ring, kernels.terms_add_scaled(rem.terms, -qc, q, other.terms), True
            )
        return Polynomial(self.ring, quo, True)

    # -- comparison / hashing -----------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- calculus / substitution ----------------------------------------
    def diff(self, i) -> "Polynomial":
        return partial_derivative(self, i)

    def __call__(self, *point):
        return evaluate(self, point)

    # -- printing ------------------------------------------------------
    def to_str(self) -> str:
        if not self.terms:
            return "0"
        names = self.ring.names
        parts = []
        for m in sorted(self.terms, key=DEGREVLEX.key, reverse=True):
            c = self.terms[m]
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if factors:
                body = "*".join(factors) if a == 1 else f"{a}*" + "*".join(factors)
            else:
                body = str(a)
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    __str__ = to_str

    def __repr__(self):
        return f"Polynomial({self.to_str()!r}, ring={self.ring.names})"


# ---------------------------------------------------------------------------
# monomial orders


def _revlex_tail(m):
    return tuple([-e for e in reversed(m)])


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order; ``key(m)`` sorts so that larger keys are greater.

    kind is one of ``degrevlex`` (global), ``lex`` (global),
    ``negdegrevlex`` (local: 1 is the largest monomial) or ``elim``
    (global block order eliminating the first ``block`` variables).
    ``perm`` lists variable indices from most to least significant.
    """

    kind: str = "degrevlex"
    perm: tuple | None = None
    block: int = 0
    key: Callable = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.kind not in ("degrevlex", "negdegrevlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        perm = self.perm
        if perm is not None:
            perm = tuple(perm)
            object.__setattr__(self, "perm", perm)

        def permute(m):
            return m if perm is None else tuple([m[i] for i in perm])

        if self.kind == "degrevlex":

            def key(m):
                m = permute(m)
                return (sum(m), _revlex_tail(m))

        elif self.kind == "negdegrevlex":

            def key(m):
                m = permute(m)
                return (-sum(m), _revlex_tail(m))

        elif self.kind == "lex":

            def key(m):
                return permute(m)

        else:
            b = self.block

            def key(m):
                m = permute(m)
                return (sum(m[:b]), sum(m), _revlex_tail(m))

        object.__setattr__(self, "key", key)

    @property
    def is_local(self) -> bool:
        return self.kind == "negdegrevlex"

    @property
    def is_global(self) -> bool:
        return not self.is_local

    def compare(self, a, b) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


DEGREVLEX = MonomialOrder("degrevlex")
NEGDEGREVLEX = MonomialOrder("negdegrevlex")
LEX = MonomialOrder("lex")


# ---------------------------------------------------------------------------
# coordinate shears


@dataclass(frozen=True)
class ShearMatrix:
    """Unit upper-triangular integer matrix; row i gives the image of z_i."""

    rows: tuple
    seed: int | None = None

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        n = len(rows)
        for i, r in enumerate(rows):
            if len(r) != n:
                raise ValueError("shear matrix must be square")
            if r[i] != 1 or any(r[j] for j in range(i)):
                raise ValueError("shear matrix must be unit upper-triangular")
        object.__setattr__(self, "rows", rows)

    @property
    def size(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int, seed=None) -> "ShearMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), seed)

    @classmethod
    def random(cls, n: int, rng: random.Random, bound: int, seed=None) -> "ShearMatrix":
        rows = []
        for i in range(n):
            rows.append(
                tuple(0 if j < i else 1 if j == i else rng.randint(-bound, bound) for j in range(n))
            )
        return cls(tuple(rows), seed)

    def is_identity(self) -> bool:
        return all(self.rows[i][j] == int(i == j) for i in range(self.size) for j in range(self.size))

    def inverse(self) -> "ShearMatrix":
        n = self.size
        inv = [[int(i == j) for j in range(n)] for i in range(n)]
        # back substitution; exact over Z because the diagonal is 1
        for i in range(n - 1, -1, -1):
            for j in range(i + 1, n):
                s = sum(self.rows[i][k] * inv[k][j] for k in range(i + 1, j + 1))
                inv[i][j] = -s
        return ShearMatrix(tuple(tuple(r) for r in inv), self.seed)

    def __matmul__(self, other: "ShearMatrix") -> "ShearMatrix":
        n = self.size
        return ShearMatrix(
            tuple(
                tuple(sum(self.rows[i][k] * other.rows[k][j] for k in range(n)) for j in range(n))
                for i in range(n)
            )
        )

    def determinant(self) -> int:
        return 1

    def to_lists(self) -> list:
        return [list(r) for r in self.rows]


# ---------------------------------------------------------------------------
# operations


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    if p.ring != q.ring:
        raise RingMismatchError(f"{p.ring} vs {q.ring}")
    return p * q


def partial_derivative(p: Polynomial, i) -> Polynomial:
    """Formal partial derivative with respect to z_i (index or name)."""
    if isinstance(i, str):
        i = p.ring.index(i)
    if not 0 <= i < p.ring.nvars:
        raise IndexError(f"variable index {i} out of range for {p.ring}")
    out = {}
    for m, c in p.terms.items():
        e = m[i]
        if e:
            dm = m[:i] + (e - 1,) + m[i + 1 :]
            out[dm] = c * e
    return Polynomial(p.ring, out, True)


def gradient(p: Polynomial) -> list:
    return [partial_derivative(p, i) for i in range(p.ring.nvars)]


def substitute(p: Polynomial, images: Sequence[Polynomial], ring: Ring | None = None) -> Polynomial:
    """Replace z_i by ``images[i]`` (all in ``ring``)."""
    if len(images) != p.ring.nvars:
        raise ValueError("need one image per variable")
    ring = ring or images[0].ring
    powers = [[ring.one()] for _ in images]

    def power(i, e):
        cache = powers[i]
        while len(cache) <= e:
            cache.append(cache[-1] * images[i])
        return cache[e]

    acc = {}
    for m, c in p.terms.items():
        term = {(0,) * ring.nvars: c}
        for i, e in enumerate(m):
            if e:
                term = kernels.terms_mul(term, power(i, e).terms)
        acc = kernels.terms_add_scaled(acc, 1, (0,) * ring.nvars, term)
    return Polynomial(ring, acc, True)


def apply_shear(p: Polynomial, M: ShearMatrix) -> Polynomial:
    """Substitute z_i -> sum_j M[i][j] z_j."""
    n = p.ring.nvars
    if M.size != n:
        raise ValueError(f"shear of size {M.size} does not match {n} variables")
    if M.is_identity():
        return p
    gens = p.ring.gens()
    images = []
    for i in range(n):
        img = p.ring.zero()
        for j, a in enumerate(M.rows[i]):
            if a:
                img = img + gens[j].scale(a)
        images.append(img)
    return substitute(p, images, p.ring)


def evaluate(p: Polynomial, point: Iterable) -> Fraction:
    point = [_frac(x) for x in point]
    if len(point) != p.ring.nvars:
        raise ValueError(f"point has {len(point)} coordinates, ring has {p.ring.nvars}")
    total = Fraction(0)
    for m, c in p.terms.items():
        v = c
        for x, e in zip(point, m):
            if e:
                v *= x**e
        total += v
    return total


def embed(p: Polynomial, ring: Ring, positions: Sequence[int]) -> Polynomial:
    """Move ``p`` into ``ring``, sending variable i to ``positions[i]``."""
    out = {}
    for m, c in p.terms.items():
        e = [0] * ring.nvars
        for i, k in enumerate(m):
            e[positions[i]] += k
        out[tuple(e)] = c
    return Polynomial(ring, out, True)
