"""Milnor-fiber topology from algebraic data.

Milnor numbers, the Euler characteristic and Betti bounds coming from the
Lê-number cell attachment, reduced homology of joins (tensor + Tor), and
the restriction / Lê-Iomdine predictions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Mapping

from .errors import HypothesisFailure, LecycleError, NonIsolatedError
from .ideal import Context, local_dim, local_multiplicity
from .lenumbers import LeResult, jacobian_ideal
from .polyring import Polynomial


def _lcm(a, b):
    return a * b // gcd(a, b)


def invariant_factors(orders) -> tuple:
    """Invariant factors d1 | d2 | ... of a direct sum of cyclic groups Z/a."""
    ds = [abs(int(a)) for a in orders]
    if any(d == 0 for d in ds):
        raise ValueError("use the free rank for Z summands")
    for i in range(len(ds)):
        for j in range(i + 1, len(ds)):
            a, b = ds[i], ds[j]
            ds[i], ds[j] = gcd(a, b), _lcm(a, b)
    return tuple(sorted(d for d in ds if d > 1))


@dataclass(frozen=True)
class AbelianGroup:
    """Z^rank + Z/d1 + ... + Z/dk with d1 | d2 | ... | dk, all di >= 2."""

    rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative rank")
        object.__setattr__(self, "torsion", invariant_factors(self.torsion))

    @classmethod
    def free(cls, rank: int) -> "AbelianGroup":
        return cls(rank)

    @classmethod
    def cyclic(cls, order: int) -> "AbelianGroup":
        return cls(0, (order,)) if order else cls(1)

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __add__(self, other: "AbelianGroup") -> "AbelianGroup":
        return AbelianGroup(self.rank + other.rank, self.torsion + other.torsion)

    def tensor(self, other: "AbelianGroup") -> "AbelianGroup":
        tors = list(self.torsion) * other.rank + list(other.torsion) * self.rank
        tors += [gcd(a, b) for a in self.torsion for b in other.torsion]
        return AbelianGroup(self.rank * other.rank, tuple(tors))

    def tor(self, other: "AbelianGroup") -> "AbelianGroup":
        return AbelianGroup(0, tuple(gcd(a, b) for a in self.torsion for b in other.torsion))

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, data) -> "AbelianGroup":
        return cls(int(data["rank"]), tuple(data.get("torsion", ())))


ZERO = AbelianGroup()


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced homology: degree -> group; degrees not listed are zero."""

    groups: tuple = ()

    def __post_init__(self):
        items = self.groups.items() if isinstance(self.groups, Mapping) else self.groups
        acc: dict = {}
        for deg, grp in items:
            acc[int(deg)] = acc.get(int(deg), ZERO) + grp
        cleaned = tuple(sorted((d, g) for d, g in acc.items() if not g.is_zero()))
        object.__setattr__(self, "groups", cleaned)

    @classmethod
    def of(cls, mapping: Mapping) -> "HomologyProfile":
        return cls(tuple(mapping.items()))

    @classmethod
    def bouquet(cls, rank: int, degree: int) -> "HomologyProfile":
        """Reduced homology of a wedge of ``rank`` spheres of dimension ``degree``."""
        return cls(((degree, AbelianGroup(rank)),))

    def __getitem__(self, degree: int) -> AbelianGroup:
        return dict(self.groups).get(degree, ZERO)

    def degrees(self) -> list:
        return [d for d, _ in self.groups]

    def is_zero(self) -> bool:
        return not self.groups

    def __str__(self):
        if not self.groups:
            return "0"
        return ", ".join(f"H~{d} = {g}" for d, g in self.groups)

    def to_json(self) -> dict:
        return {str(d): g.to_json() for d, g in self.groups}

    @classmethod
    def from_json(cls, data) -> "HomologyProfile":
        return cls(tuple((int(d), AbelianGroup.from_json(g)) for d, g in data.items()))


def join_homology(A: HomologyProfile, B: HomologyProfile) -> HomologyProfile:
    """Reduced homology of the join X * Y.

    H~_{j+1}(X*Y) = sum_{k+l=j} H~_k(X) (x) H~_l(Y)
                    + sum_{k+l=j-1} Tor(H~_k(X), H~_l(Y))
    """
    out: dict = {}
    for k, gx in A.groups:
        for l, gy in B.groups:
            j = k + l
            out[j + 1] = out.get(j + 1, ZERO) + gx.tensor(gy)
            # Tor term sits one degree higher: k + l = j - 1
            out[j + 2] = out.get(j + 2, ZERO) + gx.tor(gy)
    return HomologyProfile.of(out)


def sebastiani_thom_milnor(mu_f: int, n_f: int, mu_g: int, n_g: int) -> tuple:
    """(degree, rank) of the reduced homology of the Milnor fiber of f + g.

    f lives on C^{n_f+1} and g on C^{n_g+1}, both with isolated critical points.
    """
    if mu_f < 0 or mu_g < 0:
        raise ValueError("Milnor numbers are non-negative")
    return n_f + n_g + 1, mu_f * mu_g


def milnor_number(f: Polynomial, ctx: Context | None = None) -> int:
    """Dimension of the Jacobian algebra at the origin.

    0 exactly when the origin is not a critical point.  Raises
    NonIsolatedError when the critical locus is positive-dimensional at 0.
    """
    ctx = ctx or Context()
    jac = jacobian_ideal(f)
    s = local_dim(jac, ctx.limits)
    if s >= 1:
        raise NonIsolatedError(f"critical locus has dimension {s} at the origin")
    return local_multiplicity(jac, ctx)


LAMBDA_S_NOTE = (
    "rank H~^{n-s} attains its bound lambda^s only when the critical locus is "
    "smooth near 0 and the lower Lê cycles vanish; not decided here"
)


@dataclass(frozen=True)
class MilnorFiberReport:
    n: int
    s: int
    chain_ranks: tuple  # (lambda^s, ..., lambda^0), cells of dims n-s .. n
    euler_characteristic: int
    betti_bounds: tuple  # ((cohomological degree n-k, lambda^k), ...)
    connectivity: int
    attaching_bound: int | None = None
    notes: tuple = field(default=())

    def bound(self, degree: int) -> int:
        """Upper bound for rank H~^degree; 0 outside degrees n-s..n."""
        return dict(self.betti_bounds).get(degree, 0)


def euler_characteristic(lambdas, n: int) -> int:
    return 1 + sum((-1) ** (n - k) * lam for k, lam in enumerate(lambdas))


def milnor_fiber_report(
    le: LeResult, n: int | None = None, attaching_number: int | None = None
) -> MilnorFiberReport:
    """Topological consequences of the Lê numbers for F_{f,0}."""
    if not le.valid or le.lambdas is None:
        raise LecycleError("cannot build a Milnor fiber report from an invalid Lê result")
    n = le.n if n is None else n
    lambdas = le.lambdas
    s = le.s
    chi = euler_characteristic(lambdas, n)
    bounds = tuple((n - k, lambdas[k]) for k in range(s, -1, -1))
    notes = [LAMBDA_S_NOTE]
    if attaching_number is not None:
        notes.append("b_n <= (Gamma^1 . V(f))_0 from the polar-curve cell attachment")
    return MilnorFiberReport(
        n=n,
        s=s,
        chain_ranks=tuple(lambdas[k] for k in range(s, -1, -1)),
        euler_characteristic=chi,
        betti_bounds=bounds,
        connectivity=n - s - 1,
        attaching_bound=attaching_number,
        notes=tuple(notes),
    )


def le_iomdine_predict(le: LeResult, j: int) -> LeResult:
    """Predicted Lê numbers of f + z_0^j in the rotated coordinates."""
    if not le.valid or le.s < 1:
        raise HypothesisFailure("Lê-Iomdine prediction needs a valid result with s >= 1")
    lam, g1 = le.lambdas, le.gammas[1]
    if g1 != 0 and not j > 1 + Fraction(lam[0], g1):
        raise HypothesisFailure(
            f"need j > 1 + lambda^0/gamma^1 = {1 + Fraction(lam[0], g1)}, got j = {j}"
        )
    predicted = [lam[0] + (j - 1) * lam[1]]
    predicted += [(j - 1) * lam[k + 1] for k in range(1, le.s)]
    return LeResult(
        s=le.s - 1,
        n=le.n,
        lambdas=tuple(predicted),
        gammas=None,
        shear=None,
        valid=True,
        predicted=True,
    )


def restriction_predict(le: LeResult) -> LeResult:
    """Predicted Lê numbers of f restricted to V(z_0), coordinates (z_1..z_n)."""
    if not le.valid:
        raise HypothesisFailure("restriction prediction needs a valid Lê result")
    if le.s < 1:
        raise HypothesisFailure("s = 0: there is no critical locus to restrict")
    lam, g1 = le.lambdas, le.gammas[1]
    predicted = [g1 + lam[1]] + [lam[k + 1] for k in range(1, le.s)]
    return LeResult(
        s=le.s - 1,
        n=le.n - 1,
        lambdas=tuple(predicted),
        gammas=None,
        shear=None,
        valid=True,
        predicted=True,
    )
