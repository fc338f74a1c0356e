import random

import pytest

from lecycle import (
    Context,
    Ideal,
    Ring,
    ShearMatrix,
    apply_shear,
    critical_data,
    existence_check,
    gamma_number,
    lambda_number,
    le_numbers,
    milnor_number,
    parse_polynomial,
    polar_curve_report,
    polar_ideal,
)
from lecycle.errors import ExistenceFailure, GenericityExhausted, ImproperIntersection
from lecycle.lenumbers import (
    PURITY_WARNING,
    iomdine_polynomial,
    restrict_to_hyperplane,
    rotate_coordinates,
)
from corpus import DEGEN, FMCONE, ISOLATED, NON_ISOLATED, TEISSIER, degen


def P(text, names):
    return parse_polynomial(text, names.split(",") if isinstance(names, str) else names)


@pytest.fixture(scope="module")
def fmcone():
    return le_numbers(P(*FMCONE))


# -- critical data -------------------------------------------------------------


def test_degen_critical_data():
    f = P("y^2 - x^5 - t*x^3", "t,x,y")
    cd = critical_data(f)
    assert cd.s == 1 and cd.n == 2
    expected = [P(g, "t,x,y") for g in ("-x^3", "-5*x^4 - 3*t*x^2", "2*y")]
    assert list(cd.partials) == expected


def test_fmcone_critical_dimension():
    assert critical_data(P(*FMCONE)).s == 3


def test_smooth_point():
    cd = critical_data(P("x", "x,y"))
    assert cd.s == -1
    le = le_numbers(P("x + y^2", "x,y"))
    assert not le.valid and le.lambdas is None and le.s == -1
    assert "contractible" in le.warnings[0]


def test_critical_data_preconditions():
    with pytest.raises(ValueError):
        critical_data(P("x + 1", "x,y"))
    with pytest.raises(ValueError):
        critical_data(Ring(("x", "y")).zero())


# -- polar ideals --------------------------------------------------------------


def test_degen_polar_ideals():
    cd = critical_data(P("y^2 - x^5 - t*x^3", "t,x,y"))
    ring = cd.ring
    assert polar_ideal(cd, 2).ideal.equals(Ideal([P("y", ring.names)], ring))
    gamma1 = Ideal([P("-5*x^2 - 3*t", ring.names), P("y", ring.names)], ring)
    assert polar_ideal(cd, 1).ideal.equals(gamma1)
    assert polar_ideal(cd, 1).dim == 1
    assert polar_ideal(cd, 3).ideal.is_zero()


def test_fmcone_top_polar_ideal():
    cd = critical_data(P(*FMCONE))
    assert polar_ideal(cd, 4).ideal.equals(Ideal([P("y", cd.ring.names)], cd.ring))


def test_polar_level_range():
    cd = critical_data(P("y^2 - x^3", "x,y"))
    with pytest.raises(ValueError):
        polar_ideal(cd, 0)
    with pytest.raises(ValueError):
        polar_ideal(cd, 4)


def test_saturation_is_noop_above_s():
    # for k >= s + 1 the polar ideal equals the unsaturated one locally
    cd = critical_data(P("y^2 - x^5 - t*x^3", "t,x,y"))
    base = Ideal(cd.partials[2:], cd.ring)
    assert polar_ideal(cd, 2).ideal.equals(base)


# -- gamma and lambda ----------------------------------------------------------


@pytest.mark.parametrize("a,b", DEGEN)
def test_degen_family(a, b):
    le = le_numbers(P(*degen(a, b)))
    assert le.s == 1
    assert le.lambdas == (b, b - 1)
    assert le.gammas == (0, a - b)
    assert le.shear.is_identity()
    assert le.existence == (True,)


def test_fmcone_numbers(fmcone):
    assert fmcone.s == 3
    assert fmcone.lambdas == (5, 4, 4, 1)
    assert fmcone.gammas[1] == 1
    assert PURITY_WARNING in fmcone.warnings


def test_cusp_lambda_zero_is_mu():
    cd = critical_data(P("y^2 - x^3", "x,y"))
    assert lambda_number(cd, 0) == 2
    assert gamma_number(cd, 0) == 0


def test_ordinary_double_point():
    assert le_numbers(P("x^2 + y^2", "x,y")).lambdas == (1,)


@pytest.mark.parametrize("text,names,s,lambdas,tag", NON_ISOLATED)
def test_non_isolated_corpus(text, names, s, lambdas, tag):
    le = le_numbers(P(text, names))
    assert (le.s, le.lambdas) == (s, lambdas)
    assert all(v >= 0 for v in le.lambdas + le.gammas)


@pytest.mark.parametrize("text,names,mu,tag", ISOLATED)
def test_lambda_zero_is_milnor_number(text, names, mu, tag):
    f = P(text, names)
    le = le_numbers(f)
    assert le.s == 0 and le.lambdas == (mu,) == (milnor_number(f),)
    assert le.milnor_number == mu
    assert le.existence == ()


def test_non_reduced_input_warns():
    le = le_numbers(P("y^2", "x,y"))
    assert le.s == 1
    assert any("not reduced" in w for w in le.warnings)


# -- existence and shears ------------------------------------------------------


def test_existence_flags_degen():
    rep = existence_check(critical_data(P("y^2 - x^5 - t*x^3", "t,x,y")))
    assert rep.flags == (True,) and rep.ok
    assert PURITY_WARNING in rep.warnings


def test_existence_trivial_for_isolated():
    rep = existence_check(critical_data(P("y^2 - x^3", "y,x")))
    assert rep.flags == () and rep.ok


def test_bad_coordinates_trigger_a_shear():
    # Sigma f = V(x, y) is the t-axis and z_0 = y vanishes on it, so the
    # level-1 slice is not zero-dimensional; a shear is needed
    f = P("y^2 - x^5 - t*x^3", "y,x,t")
    cd = critical_data(f)
    assert not existence_check(cd).ok
    le = le_numbers(f)
    assert not le.shear.is_identity()
    assert le.lambdas == (3, 2)


def test_genericity_exhausted():
    f = P("y^2 - x^5 - t*x^3", "y,x,t")
    with pytest.raises(GenericityExhausted):
        le_numbers(f, max_retries=0)


def test_lambda_requires_zero_dimensional_slices():
    cd = critical_data(P("y^2 - x^5 - t*x^3", "y,x,t"))
    with pytest.raises(ExistenceFailure):
        lambda_number(cd, 1)


def test_determinism():
    f = P("y^2 - x^5 - t*x^3", "y,x,t")
    a, b = le_numbers(f, seed=7), le_numbers(f, seed=7)
    assert a == b


SHEAR_CASES = [(t, n) for t, n, *_ in ISOLATED] + [(t, n) for t, n, *_ in NON_ISOLATED]


@pytest.mark.parametrize("text,names", SHEAR_CASES)
def test_shear_invariance(text, names):
    f = P(text, names)
    base = le_numbers(f).lambdas
    for seed in (1, 2):
        le = le_numbers(f, seed=seed, identity_first=False)
        assert not le.shear.is_identity()
        assert le.lambdas == base


def test_explicit_shear_matches():
    f = P("y^2 - x^5 - t*x^3", "t,x,y")
    M = ShearMatrix(((1, 2, -1), (0, 1, 3), (0, 0, 1)))
    assert le_numbers(apply_shear(f, M)).lambdas == (3, 2)


def test_fmcone_permutations(fmcone):
    # permuting (u, v, w) leaves the numbers alone
    for names in ("w,u,v,x,y", "v,w,u,x,y"):
        g = P("y^2 - x^3 - (u^2+v^2+w^2)*x^2", names)
        assert le_numbers(g).lambdas == fmcone.lambdas
    # with unequal weights a permutation visibly changes the level-1 polar
    # ideal, yet the Lê numbers agree
    text = "y^2 - x^3 - (u^2+2*v^2+3*w^2)*x^2"
    h, h_swapped = P(text, "u,v,w,x,y"), P(text, "w,v,u,x,y")
    b1 = polar_ideal(critical_data(h), 1).ideal.basis()
    b2 = polar_ideal(critical_data(h_swapped), 1).ideal.basis()
    assert [g.terms for g in b1] != [g.terms for g in b2]
    assert le_numbers(h).lambdas == le_numbers(h_swapped).lambdas == fmcone.lambdas


# -- restriction, Iomdine, semicontinuity --------------------------------------


@pytest.mark.parametrize("a,b", DEGEN)
def test_restriction_mu_is_gamma_plus_lambda(a, b):
    f = P(*degen(a, b))
    le = le_numbers(f)
    assert milnor_number(restrict_to_hyperplane(f)) == le.gammas[1] + le.lambdas[1] == a - 1


def test_rotation_helpers():
    f = P("y^2 - x^5 - t*x^3", "t,x,y")
    g = iomdine_polynomial(f, 3)
    assert g.ring.names == ("x", "y", "t")
    assert g == P("y^2 - x^5 - t*x^3 + t^3", "x,y,t")
    assert rotate_coordinates(f).ring.names == ("x", "y", "t")
    assert restrict_to_hyperplane(f) == P("y^2 - x^5", "x,y")
    with pytest.raises(ValueError):
        restrict_to_hyperplane(P("x", "x"))


def test_semicontinuity():
    assert milnor_number(P("y^2 - x^3", "x,y")) == 2
    for t in ("1", "1/3", "-2"):
        assert milnor_number(P(f"y^2 - x^3 - {t}*x^2", "x,y")) == 1


# -- Teissier trick ------------------------------------------------------------


@pytest.mark.parametrize("text,names,expected", TEISSIER)
def test_teissier_fixtures(text, names, expected):
    rep = polar_curve_report(critical_data(P(text, names)))
    assert (rep.with_f, rep.with_z0, rep.with_df0) == expected
    assert rep.identity_holds and rep.strict_inequality_holds


def generic_polar_report(f, seed=0):
    """Teissier data in the given coordinates, else after a seeded shear."""
    try:
        return polar_curve_report(critical_data(f))
    except ImproperIntersection:
        pass
    rng = random.Random(seed)
    for _ in range(10):
        M = ShearMatrix.random(f.ring.nvars, rng, 3)
        try:
            return polar_curve_report(critical_data(apply_shear(f, M)))
        except ImproperIntersection:
            continue
    raise AssertionError("no shear made Gamma^1 meet V(f) properly")


@pytest.mark.parametrize("text,names,mu,tag", ISOLATED)
def test_teissier_identity_on_corpus(text, names, mu, tag):
    rep = generic_polar_report(P(text, names))
    assert rep.identity_holds
    if rep.polar_curve_empty:
        assert rep.strict_inequality_holds is None
    else:
        assert rep.strict_inequality_holds
        assert rep.with_f > rep.with_df0


def test_teissier_improper():
    # Gamma^1 = V(x) lies inside V(xy)
    with pytest.raises(ImproperIntersection):
        polar_curve_report(critical_data(P("x*y", "x,y")))
    # a shear fixes it
    assert generic_polar_report(P("x*y*(x + y)", "x,y")).identity_holds


def test_context_limits_propagate():
    from lecycle.errors import ResourceLimitExceeded
    from lecycle import Limits

    with pytest.raises(ResourceLimitExceeded):
        le_numbers(P(*FMCONE), ctx=Context(Limits(max_steps=3)))
