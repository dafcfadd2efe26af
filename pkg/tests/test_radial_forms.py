import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hartmann_susy.oracle import quadrature
from hartmann_susy.radial_forms import (
    IntegrabilityError,
    Polynomial,
    RadialFunction,
    apply_ladder,
    apply_radial_hamiltonian,
    differentiate,
    evaluate,
    inner_product,
    log_gamma,
    normalize,
)

SQRT2 = math.sqrt(2.0)


def rf(s, kappa, *coeffs):
    return RadialFunction(s, kappa, Polynomial(coeffs))


def assert_same(f, g, rel=1e-12):
    assert f.s == pytest.approx(g.s, abs=1e-12)
    assert f.kappa == pytest.approx(g.kappa, rel=1e-14)
    assert len(f.coefficients) == len(g.coefficients)
    np.testing.assert_allclose(f.coefficients, g.coefficients, rtol=rel, atol=0)


# -- representation -------------------------------------------------------------


def test_canonical_form_absorbs_low_powers():
    f = rf(0.5, 1.0, 0.0, 0.0, 3.0, 1.0)
    assert f.s == 2.5
    assert f.coefficients == (3.0, 1.0)


def test_trim_drops_float_dust():
    f = rf(1.0, 1.0, 1.0, 1e-15)
    assert f.coefficients == (1.0,)


def test_zero_function():
    z = RadialFunction.zero()
    assert z.is_zero
    assert differentiate(z).is_zero
    assert apply_ladder(0.0, 1.0, "+", z).is_zero
    assert apply_radial_hamiltonian(2.0, 1.0, z).is_zero
    with pytest.raises(ValueError):
        normalize(z)


def test_polynomial_degree():
    assert Polynomial((1.0, 2.0, 0.0)).degree == 1
    assert Polynomial(()).is_zero


# -- evaluate -------------------------------------------------------------------


def test_evaluate_examples():
    assert evaluate(rf(1, 1, 2.0), 1.0) == pytest.approx(2 / math.e, rel=1e-15)
    assert evaluate(rf(1, 1, 1.0, -1.0), 1.0) == 0.0
    assert evaluate(rf(0.7, 2.0, 5.0), 0.0) == 0.0
    r = np.array([0.5, 1.0, 2.0])
    np.testing.assert_allclose(evaluate(rf(2, 0.5, 1.0, 3.0), r), r**2 * np.exp(-0.5 * r) * (1 + 3 * r))


def test_evaluate_rejects_singular_points():
    with pytest.raises(ValueError):
        evaluate(rf(-0.2, 1.0, 1.0), 0.0)
    with pytest.raises(ValueError):
        evaluate(rf(1.0, 1.0, 1.0), -1.0)


# -- differentiate --------------------------------------------------------------


def test_differentiate_examples():
    assert_same(differentiate(rf(1, 1, 1.0)), rf(0, 1, 1.0, -1.0))
    assert_same(differentiate(rf(2, 0.5, 1.0)), rf(1, 0.5, 2.0, -0.5))


@given(st.floats(0.3, 4.0), st.floats(0.2, 3.0), st.lists(st.floats(-3, 3), min_size=1, max_size=4),
       st.floats(0.3, 6.0))
def test_differentiate_matches_finite_difference(s, kappa, coeffs, r):
    f = rf(s, kappa, 1.0, *coeffs)
    h = 1e-5 * max(r, 1.0)
    fd = (evaluate(f, r + h) - evaluate(f, r - h)) / (2 * h)
    scale = max(abs(fd), np.abs(evaluate(f, np.linspace(0.3, 6.0, 50))).max())
    assert evaluate(differentiate(f), r) == pytest.approx(fd, abs=1e-7 * scale)


# -- ladder operators -------------------------------------------------------------


@pytest.mark.parametrize("L", [0.0, 0.5, 1.0, 2.7, 5.0])
@pytest.mark.parametrize("gamma", [0.5, 1.0, 3.0])
def test_lowering_annihilates_lowest_rung(L, gamma):
    psi = RadialFunction.monomial(L + 1, gamma / (L + 1))
    out = apply_ladder(L, gamma, "-", psi)
    assert out.is_zero or out.norm() / psi.norm() <= 1e-12


def test_raising_example():
    # (-d/dr - 1/r + 1) r^2 e^{-r/2} = r e^{-r/2} (-3 + 3r/2)
    out = apply_ladder(0.0, 1.0, "+", rf(2, 0.5, 1.0))
    assert_same(out, rf(1, 0.5, -3 / SQRT2, 1.5 / SQRT2))


def test_ladder_rejects_bad_sign():
    with pytest.raises(ValueError):
        apply_ladder(0.0, 1.0, "x", rf(1, 1, 1.0))


def test_ladder_integrability_guard():
    with pytest.raises(IntegrabilityError):
        apply_ladder(0.0, 1.0, "+", rf(0.3, 1.0, 1.0))


@settings(max_examples=60)
@given(st.one_of(st.integers(0, 3), st.floats(0.51, 3.0)), st.floats(0.2, 3.0),
       st.lists(st.floats(-2, 2), min_size=0, max_size=3), st.floats(0.0, 4.0), st.floats(0.3, 3.0))
def test_factorization_adjointness(extra, kappa, coeffs, L, gamma):
    # domain of A+A-: u ~ r**(L+1+k) with integer k, or any power above r**1.5
    s = L + 1 + extra if isinstance(extra, int) else 1.0 + extra
    f = rf(s, kappa, 1.0, *coeffs)
    af = apply_ladder(L, gamma, "-", f)
    lhs = inner_product(af, af)
    rhs = inner_product(f, apply_ladder(L, gamma, "+", af))
    assert rhs == pytest.approx(lhs, rel=1e-10, abs=1e-13 * inner_product(f, f))


@given(st.floats(0.6, 4.0), st.floats(0.2, 3.0), st.lists(st.floats(-2, 2), min_size=0, max_size=3),
       st.floats(0.0, 4.0), st.floats(0.3, 3.0))
def test_closure_exponent_shifts(s, kappa, coeffs, L, gamma):
    f = rf(s, kappa, 1.0, *coeffs)
    for sign in "+-":
        out = apply_ladder(L, gamma, sign, f)
        if not out.is_zero:
            shift = out.s - f.s
            assert shift >= -1 - 1e-12 and abs(shift - round(shift)) < 1e-9
    if s > 1.6:
        out = apply_radial_hamiltonian(L, gamma, f)
        shift = out.s - f.s
        assert shift >= -2 - 1e-12 and abs(shift - round(shift)) < 1e-9


# -- radial Hamiltonian -------------------------------------------------------------


def test_hamiltonian_hydrogen_ground_state():
    u = rf(1, 1, 2.0)
    assert_same(apply_radial_hamiltonian(0.0, 1.0, u), -0.5 * u)


def test_hamiltonian_second_level():
    u = rf(2, 0.5, 1.0)
    assert_same(apply_radial_hamiltonian(1.0, 1.0, u), rf(2, 0.5, -1 / 8))


def test_hamiltonian_against_finite_difference():
    f = rf(2.3, 0.7, 1.0, -0.4, 0.05)
    L, gamma = 1.3, 1.1
    r = np.linspace(0.5, 8.0, 20)
    h = 1e-4
    d2 = (evaluate(f, r + h) - 2 * evaluate(f, r) + evaluate(f, r - h)) / h**2
    expected = -0.5 * d2 + (L * (L + 1) / (2 * r**2) - gamma / r) * evaluate(f, r)
    np.testing.assert_allclose(evaluate(apply_radial_hamiltonian(L, gamma, f), r), expected, atol=1e-6)


# -- inner products ---------------------------------------------------------------


def test_inner_product_examples():
    assert inner_product(rf(1, 1, 1.0), rf(1, 1, 1.0)) == pytest.approx(0.25, rel=1e-15)
    assert inner_product(rf(1, 1, 2.0), rf(1, 1, 2.0)) == pytest.approx(1.0, rel=1e-15)
    u21 = rf(2, 0.5, 1 / math.sqrt(24))
    assert inner_product(u21, u21) == pytest.approx(1.0, rel=1e-14)
    q = quadrature(lambda r: (r**2 * np.exp(-r / 2)) ** 2 / 24, 0.0, 120.0)
    assert q == pytest.approx(1.0, rel=1e-9)


def test_inner_product_divergent():
    with pytest.raises(IntegrabilityError):
        inner_product(rf(-0.6, 1.0, 1.0), rf(-0.6, 1.0, 1.0))


def _random_pair(rng):
    s1, s2 = rng.uniform(0.5, 3.5, 2)
    k1, k2 = rng.uniform(0.3, 2.5, 2)
    c1 = rng.uniform(-2, 2, rng.integers(1, 4))
    c2 = rng.uniform(-2, 2, rng.integers(1, 4))
    c1[0] = c2[0] = 1.0
    return (s1, k1, c1), (s2, k2, c2)


def _numpy_function(s, k, c):
    # deliberately independent of RadialFunction.evaluate
    return lambda r: r**s * np.exp(-k * r) * np.polynomial.polynomial.polyval(r, c)


def test_inner_product_matches_quadrature_randomized():
    rng = np.random.default_rng(20261016)
    for _ in range(50):
        a, b = _random_pair(rng)
        f, g = rf(a[0], a[1], *a[2]), rf(b[0], b[1], *b[2])
        fa, gb = _numpy_function(*a), _numpy_function(*b)
        upper = 60.0 / (a[1] + b[1]) + 40.0
        q = quadrature(lambda r: fa(r) * gb(r), 0.0, upper, rtol=1e-12)
        exact = inner_product(f, g)
        assert exact == pytest.approx(q, rel=1e-8, abs=1e-12)


# -- normalize --------------------------------------------------------------------


def test_normalize_examples():
    assert_same(normalize(rf(1, 1, 1.0)), rf(1, 1, 2.0))
    n = normalize(rf(1, 1, 2.0))
    assert_same(normalize(n), n)
    assert_same(normalize(rf(1.5, 1, 1.0)), rf(1.5, 1, 1 / math.sqrt(0.375)))


def test_normalize_sign_convention():
    f = normalize(rf(1, 1, -3.0, 1.0))
    assert f.coefficients[0] > 0
    assert inner_product(f, f) == pytest.approx(1.0, rel=1e-14)


# -- log gamma -------------------------------------------------------------------


def test_log_gamma_examples():
    assert log_gamma(3.0) == pytest.approx(math.log(2.0), rel=1e-15)
    assert log_gamma(1.0) == 0.0
    # Gamma(4.5) from Gamma(1/2) = sqrt(pi) by the recurrence
    assert log_gamma(4.5) == pytest.approx(math.log(3.5 * 2.5 * 1.5 * 0.5 * math.sqrt(math.pi)), rel=1e-14)


@pytest.mark.parametrize("x", [0.0, -1.5])
def test_log_gamma_domain(x):
    with pytest.raises(ValueError):
        log_gamma(x)


@given(st.floats(0.1, 100.0))
def test_log_gamma_recurrence(x):
    assert math.exp(log_gamma(x + 1) - log_gamma(x)) == pytest.approx(x, rel=1e-10)
