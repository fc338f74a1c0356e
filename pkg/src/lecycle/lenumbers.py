"""Critical locus, polar ideals, Lê and polar numbers at the origin.

Polar cycles are represented by saturated ideals

    Gamma^k = <df/dz_k, ..., df/dz_n> : (Jacobian ideal)^inf

and every intersection number is the length of a localized quotient after
adding slice and partial-derivative generators.  The Lê number at level k
is the total (Gamma^{k+1} . V(df/dz_k) . slice) minus the polar number
gamma^k, since the first cycle splits as Gamma^k + Lambda^k.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field

from .errors import (
    ExistenceFailure,
    GenericityExhausted,
    ImproperIntersection,
    InternalInconsistency,
)
from .ideal import (
    NOT_ZERO_DIMENSIONAL,
    Context,
    Ideal,
    local_dim,
    local_multiplicity,
    saturation,
)
from .polyring import Polynomial, Ring, ShearMatrix, apply_shear, gradient

log = logging.getLogger(__name__)

PURITY_WARNING = (
    "PURITY-UNVERIFIED: the dimension of each polar ideal was checked, "
    "equidimensionality was not"
)


@dataclass
class CriticalData:
    """f together with its Jacobian ideal and s = dim_0 of the critical locus."""

    f: Polynomial
    partials: tuple
    jacobian: Ideal
    s: int
    ctx: Context = field(default_factory=Context, repr=False)
    _polar: dict = field(default_factory=dict, repr=False)
    _slices: dict = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return self.f.ring.nvars - 1

    @property
    def ring(self) -> Ring:
        return self.f.ring

    def slice_generators(self, k: int) -> list:
        """z_0, ..., z_{k-1}."""
        return [self.ring.gen(i) for i in range(k)]


@dataclass(frozen=True)
class PolarIdeal:
    k: int
    ideal: Ideal
    dim: int


@dataclass(frozen=True)
class LeResult:
    """Lê numbers lambda^0..lambda^s and polar numbers gamma^0..gamma^s.

    ``gammas[0]`` is 0 by convention.  When ``valid`` is false the numeric
    fields are None and ``warnings`` says why.
    """

    s: int
    n: int
    lambdas: tuple | None
    gammas: tuple | None
    shear: ShearMatrix | None
    existence: tuple = ()
    warnings: tuple = ()
    valid: bool = True
    predicted: bool = False

    @property
    def milnor_number(self):
        if self.valid and self.s == 0:
            return self.lambdas[0]
        return None


@dataclass(frozen=True)
class ExistenceReport:
    flags: tuple
    warnings: tuple = ()

    @property
    def ok(self) -> bool:
        return all(self.flags)


@dataclass(frozen=True)
class PolarCurveReport:
    """(Gamma^1 . V(f))_0, (Gamma^1 . V(z_0))_0, (Gamma^1 . V(df/dz_0))_0."""

    with_f: int
    with_z0: int
    with_df0: int
    polar_curve_empty: bool

    @property
    def identity_holds(self) -> bool:
        return self.with_f == self.with_z0 + self.with_df0

    @property
    def strict_inequality_holds(self) -> bool | None:
        if self.polar_curve_empty:
            return None
        return self.with_f > self.with_df0


def critical_data(f: Polynomial, ctx: Context | None = None, s: int | None = None) -> CriticalData:
    """Pass ``s`` when it is already known (it is invariant under linear changes
    of coordinates, so sheared copies of f reuse it)."""
    ctx = ctx or Context()
    if not f:
        raise ValueError("f is identically zero")
    if f.constant_term() != 0:
        raise ValueError("f(0) must be 0")
    partials = tuple(gradient(f))
    jac = Ideal(partials, f.ring)
    if s is None:
        s = local_dim(jac, ctx.limits)
    return CriticalData(f, partials, jac, s, ctx)


def polar_ideal(cd: CriticalData, k: int) -> PolarIdeal:
    """Gamma^k as <df/dz_k, ..., df/dz_n> saturated by the Jacobian ideal.

    Level n+1 is the whole space (zero ideal).
    """
    if not 1 <= k <= cd.n + 1:
        raise ValueError(f"polar level {k} outside 1..{cd.n + 1}")
    hit = cd._polar.get(k)
    if hit is not None:
        return hit
    if k == cd.n + 1:
        I = Ideal([cd.ring.zero()], cd.ring)
    else:
        base = Ideal(cd.partials[k:], cd.ring)
        I = saturation(base, cd.jacobian, cd.ctx.limits)
    result = PolarIdeal(k, I, local_dim(I, cd.ctx.limits))
    cd._polar[k] = result
    return result


def _multiplicity(ideal: Ideal, cd: CriticalData, what: str) -> int:
    value = local_multiplicity(ideal, cd.ctx)
    if value is NOT_ZERO_DIMENSIONAL:
        raise ExistenceFailure(f"{what} is not zero-dimensional at the origin")
    return value


def _gamma_slice(cd: CriticalData, k: int) -> Ideal:
    hit = cd._slices.get(("gamma", k))
    if hit is None:
        hit = cd._slices[("gamma", k)] = polar_ideal(cd, k).ideal + cd.slice_generators(k)
    return hit


def _total_slice(cd: CriticalData, k: int) -> Ideal:
    hit = cd._slices.get(("total", k))
    if hit is None:
        extra = [cd.partials[k]] + cd.slice_generators(k)
        hit = cd._slices[("total", k)] = polar_ideal(cd, k + 1).ideal + extra
    return hit


def gamma_number(cd: CriticalData, k: int) -> int:
    """gamma^k(0) = (Gamma^k . V(z_0, ..., z_{k-1}))_0; gamma^0 = 0."""
    if k == 0:
        return 0
    if not 1 <= k <= cd.n + 1:
        raise ValueError(f"polar level {k} out of range")
    return _multiplicity(_gamma_slice(cd, k), cd, f"Gamma^{k} . V(z_0..z_{k - 1})")


def lambda_number(cd: CriticalData, k: int) -> int:
    """lambda^k(0) = (Gamma^{k+1} . V(df/dz_k) . slice)_0 - gamma^k(0)."""
    if not 0 <= k <= cd.n:
        raise ValueError(f"Lê level {k} out of range")
    total = _multiplicity(
        _total_slice(cd, k), cd, f"Gamma^{k + 1} . V(df/dz_{k}) . V(z_0..z_{k - 1})"
    )
    lam = total - gamma_number(cd, k)
    if lam < 0:
        raise InternalInconsistency(
            f"negative Lê number at level {k} ({total} - gamma): "
            "the polar ideal likely carries an embedded component"
        )
    return lam


def existence_check(cd: CriticalData) -> ExistenceReport:
    """Per-level flags (k = 1..s) for existence of Lê and polar numbers."""
    flags = []
    warnings = []
    for k in range(1, cd.s + 1):
        ok = local_dim(_gamma_slice(cd, k), cd.ctx.limits) <= 0
        ok = ok and local_dim(_total_slice(cd, k), cd.ctx.limits) <= 0
        # Gamma^{k+1} must be (k+1)-dimensional at 0, or empty there
        ok = ok and polar_ideal(cd, k + 1).dim in (k + 1, -1)
        flags.append(ok)
    if cd.s >= 1:
        warnings.append(PURITY_WARNING)
    return ExistenceReport(tuple(flags), tuple(warnings))


def _shear_candidates(nvars: int, seed: int, identity_first: bool, max_retries: int):
    if identity_first:
        yield ShearMatrix.identity(nvars, seed)
    rng = random.Random(seed)
    bound = 3
    for attempt in range(max_retries):
        if attempt and attempt % 3 == 0:
            bound *= 2
        yield ShearMatrix.random(nvars, rng, bound, seed)


def le_numbers(
    f: Polynomial,
    seed: int = 0,
    ctx: Context | None = None,
    identity_first: bool = True,
    max_retries: int = 12,
) -> LeResult:
    """Lê and polar numbers of f at the origin.

    Tries the given coordinates first (unless ``identity_first`` is off),
    then seeded random unit upper-triangular shears, until the existence
    conditions hold.  Deterministic in (f, seed).
    """
    ctx = ctx or Context()
    cd0 = critical_data(f, ctx)
    n = cd0.n
    if cd0.s == -1:
        return LeResult(
            s=-1,
            n=n,
            lambdas=None,
            gammas=None,
            shear=None,
            warnings=("the origin is not a critical point; the Milnor fiber is contractible",),
            valid=False,
        )
    base_warnings = []
    if cd0.s == n:
        base_warnings.append("dim Σf = n: f is not reduced at the origin; numbers taken at face value")
    for attempt, M in enumerate(_shear_candidates(f.ring.nvars, seed, identity_first, max_retries)):
        cd = cd0 if M.is_identity() else critical_data(apply_shear(f, M), ctx, cd0.s)
        report = existence_check(cd)
        log.debug("shear attempt %d: %s flags=%s", attempt, M.rows, report.flags)
        if not report.ok:
            continue
        try:
            lambdas = tuple(lambda_number(cd, k) for k in range(cd.s + 1))
        except ExistenceFailure:
            continue
        gammas = tuple(gamma_number(cd, k) for k in range(cd.s + 1))
        return LeResult(
            s=cd.s,
            n=n,
            lambdas=lambdas,
            gammas=gammas,
            shear=M,
            existence=report.flags,
            warnings=tuple(base_warnings) + report.warnings,
        )
    raise GenericityExhausted(
        f"no coordinate shear among {max_retries + int(identity_first)} attempts "
        f"(seed {seed}) made the Lê and polar numbers exist"
    )


def polar_curve_report(cd: CriticalData) -> PolarCurveReport:
    """The three intersection numbers of the Teissier identity."""
    g1 = polar_ideal(cd, 1).ideal
    with_f = g1 + [cd.f]
    if local_dim(with_f, cd.ctx.limits) > 0:
        raise ImproperIntersection("Gamma^1 meets V(f) improperly at the origin")
    a = _multiplicity(with_f, cd, "Gamma^1 . V(f)")
    b = _multiplicity(g1 + [cd.ring.gen(0)], cd, "Gamma^1 . V(z_0)")
    c = _multiplicity(g1 + [cd.partials[0]], cd, "Gamma^1 . V(df/dz_0)")
    return PolarCurveReport(a, b, c, polar_curve_empty=polar_ideal(cd, 1).dim < 0)


# ---------------------------------------------------------------------------
# coordinate helpers


def rotate_coordinates(p: Polynomial) -> Polynomial:
    """Rewrite p in the coordinate order (z_1, ..., z_n, z_0)."""
    names = p.ring.names
    ring = Ring(names[1:] + names[:1])
    return Polynomial(ring, {m[1:] + m[:1]: c for m, c in p.terms.items()}, True)


def restrict_to_hyperplane(p: Polynomial) -> Polynomial:
    """p restricted to V(z_0), in coordinates (z_1, ..., z_n)."""
    names = p.ring.names
    if len(names) < 2:
        raise ValueError("cannot restrict a one-variable polynomial")
    ring = Ring(names[1:])
    out = {}
    for m, c in p.terms.items():
        if m[0] == 0:
            out[m[1:]] = c
    return Polynomial(ring, out, True)


def iomdine_polynomial(f: Polynomial, j: int) -> Polynomial:
    """f + z_0^j written in the rotated coordinates."""
    return rotate_coordinates(f + f.ring.gen(0) ** j)


def jacobian_ideal(f: Polynomial) -> Ideal:
    return Ideal(gradient(f), f.ring)
