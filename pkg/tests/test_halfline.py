import math

import numpy as np
import pytest

from closed_forms import CASES
from hartmann_susy.halfline import (
    GridTooCoarseError,
    HierarchyLevel,
    build_eigenfunction,
    ground_state,
    ladder_steps,
    partner_potential,
    radial_R,
    ricatti_residual,
    shift,
    shifted_potential,
    spectrum,
    superpotential,
    verify_susy_algebra,
)
from hartmann_susy.model import QuantumNumberError, allowed_L_values, energy_scaled
from hartmann_susy.oracle import Grid, default_radial_grid, quadrature, solve_radial
from hartmann_susy.radial_forms import (
    RadialFunction,
    apply_ladder,
    apply_radial_hamiltonian,
    evaluate,
    inner_product,
    normalize,
)

SQRT2 = math.sqrt(2.0)


def coeffs_up_to_sign(f, s, kappa, coeffs, rel=1e-9):
    assert f.s == pytest.approx(s, abs=1e-12)
    assert f.kappa == pytest.approx(kappa, rel=1e-14)
    got = np.array(f.coefficients)
    want = np.array(coeffs)
    assert got.shape == want.shape
    sign = np.sign(got[0] * want[0])
    np.testing.assert_allclose(sign * got, want, rtol=rel, atol=0)


# -- superpotential and Ricatti ---------------------------------------------------


@pytest.mark.parametrize("L, gamma, r, expected", [(0, 1, 1, 0.0), (0, 1, 1e6, 1 - 1e-6), (2, 3, 1, -2.0)])
def test_superpotential(L, gamma, r, expected):
    assert superpotential(L, gamma, r) == pytest.approx(expected, abs=1e-12)


def test_superpotential_domain():
    with pytest.raises(ValueError):
        superpotential(0, 1, 0.0)


@pytest.mark.parametrize("L, gamma, r", [(0, 1, 0.37), (2.5, 1.7, 4.2), (SQRT2, 1, 1)])
def test_ricatti_residual_vanishes(L, gamma, r):
    assert abs(ricatti_residual(L, gamma, r)) <= 1e-12


def test_partner_potential_examples():
    assert partner_potential(0, 1, 1.0) == pytest.approx(0.5, abs=1e-14)
    assert partner_potential(0, 1, 1e6) == pytest.approx(0.5, abs=1e-5)


@pytest.mark.parametrize("L, gamma", [(1, 1), (0, 2.5), (SQRT2, 0.7)])
def test_shape_invariance(L, gamma):
    # A_L^- A_L^+ is HH_{L+1} carrying the shift of level L
    r = np.linspace(0.2, 30, 200)
    np.testing.assert_allclose(
        partner_potential(L, gamma, r),
        shifted_potential(L + 1, gamma, r, shift_value=shift(L, gamma)),
        rtol=1e-12, atol=1e-12,
    )


# -- ground states ----------------------------------------------------------------


def test_ground_state_hydrogen():
    g = ground_state(0, 1)
    assert g.s == 1 and g.kappa == 1
    assert g.coefficients == pytest.approx((2.0,), rel=1e-15)


def test_ground_state_L1():
    # int r^4 e^{-r} dr = 24
    g = ground_state(1, 1)
    assert g.s == 2 and g.kappa == 0.5
    assert g.coefficients[0] == pytest.approx(1 / math.sqrt(24), rel=1e-14)


def test_ground_state_irrational_L():
    L = SQRT2
    k = 1 / (1 + L)
    norm2 = math.gamma(2 * L + 3) / (2 * k) ** (2 * L + 3)
    g = ground_state(L, 1)
    assert g.s == pytest.approx(L + 1)
    assert g.coefficients[0] == pytest.approx(1 / math.sqrt(norm2), rel=1e-12)
    assert apply_ladder(L, 1, "-", g).is_zero


def test_hierarchy_level():
    lvl = HierarchyLevel.build(1.5, 2.0)
    assert lvl.shift == pytest.approx(0.5 * (2.0 / 2.5) ** 2)
    assert inner_product(lvl.ground_state, lvl.ground_state) == pytest.approx(1.0, rel=1e-14)
    assert lvl.hamiltonian(lvl.ground_state).norm() <= 1e-12
    # H_L = HH_L - shift
    h = apply_radial_hamiltonian(1.5, 2.0, lvl.ground_state)
    assert (h + lvl.shift * lvl.ground_state).norm() <= 1e-12
    # HH_L = A+ A-
    f = RadialFunction(2.5, 0.9, (1.0, -0.3, 0.1))
    diff = lvl.hamiltonian(f) - lvl.raise_(lvl.lower(f))
    assert diff.norm() <= 1e-12 * f.norm()


# -- eigenfunction ladder ---------------------------------------------------------


def test_ladder_order():
    assert ladder_steps(5, 1) == [3, 2, 1]
    assert ladder_steps(3, 2) == []


def test_build_hydrogen_1s_and_2s():
    u1 = build_eigenfunction(1, 0, 1)
    assert u1.coefficients == pytest.approx((2.0,))
    u2 = build_eigenfunction(2, 0, 1)
    assert u2.s == 1 and u2.kappa == 0.5
    c0, c1 = u2.coefficients
    assert c1 / c0 == pytest.approx(-0.5, rel=1e-14)  # proportional to r (2 - r)
    assert inner_product(u2, u2) == pytest.approx(1.0, rel=1e-14)


@pytest.mark.parametrize("N, L", [(2.5, 1.0), (3, -1), (2, 1.5)])
def test_build_rejects_invalid_pairs(N, L):
    with pytest.raises(QuantumNumberError):
        build_eigenfunction(N, L, 1.0)


def test_radial_R_examples():
    R1 = radial_R(1, 0, 1)
    assert R1.s == 0 and R1.coefficients == pytest.approx((2.0,))
    R21 = radial_R(2, 1, 1)
    assert R21.s == 1 and R21.coefficients == pytest.approx((1 / math.sqrt(24),), rel=1e-14)


@pytest.mark.parametrize("M", [0.0, 0.5, 1.0, 2.3])
@pytest.mark.parametrize("gamma", [0.5, 1.0, 3.0])
@pytest.mark.parametrize("case", sorted(CASES))
def test_closed_forms(M, gamma, case):
    labels, form = CASES[case]
    N, L = labels(M)
    coeffs_up_to_sign(radial_R(N, L, gamma), *form(M, gamma))


def test_R_normalized_under_r2_measure():
    R = radial_R(2.5, 0.5, 1.0)
    q = quadrature(lambda r: evaluate(R, r) ** 2 * r**2, 0.0, 120.0)
    assert q == pytest.approx(1.0, rel=1e-9)


# -- spectrum and invariants ------------------------------------------------------


def test_spectrum_hydrogen_limit():
    rep = spectrum(0.0, 3, 1.0)
    energies = {row.N: row.energy_analytic for row in rep.rows}
    assert energies == pytest.approx({1: -0.5, 2: -0.125, 3: -1 / 18})
    assert [rep.degeneracy(N) for N in rep.levels()] == [1, 2, 3]


def test_spectrum_single_level():
    rep = spectrum(2.0, 1, 1.0)
    assert len(rep.rows) == 1
    row = rep.rows[0]
    assert (row.N, row.L) == (3.0, 2.0)
    assert row.energy_analytic == pytest.approx(-1 / 18)
    assert row.builder_trace == ("ground_state(L=2)",)


def test_spectrum_irrational_m_with_oracle():
    rep = spectrum(SQRT2, 2, 2.0)
    assert rep.levels() == pytest.approx([1 + SQRT2, 2 + SQRT2])
    expected = {1 + SQRT2: -2 / (1 + SQRT2) ** 2, 2 + SQRT2: -2 / (2 + SQRT2) ** 2}
    for row in rep.rows:
        assert row.energy_analytic == pytest.approx(expected[row.N], rel=1e-14)
    # finite-difference confirmation at L = |M|
    grid = default_radial_grid(2 + SQRT2, SQRT2, 2.0)
    res = solve_radial(SQRT2, 2.0, grid, 2, tol=1e-4)
    np.testing.assert_allclose(res.eigenvalues, sorted(expected.values()), rtol=1e-4)


def _states(M, gamma, depth=4):
    out = {}
    for k in range(depth):
        N = M + 1 + k
        for L in allowed_L_values(N, M):
            out[(N, L)] = build_eigenfunction(N, L, gamma)
    return out


@pytest.mark.parametrize("M, gamma", [(0.0, 1.0), (0.5, 0.5), (SQRT2, 3.0), (2.3, 1.0)])
def test_eigen_residual(M, gamma):
    for (N, L), u in _states(M, gamma).items():
        res = apply_radial_hamiltonian(L, gamma, u) - energy_scaled(N, gamma) * u
        assert res.norm() / u.norm() <= 1e-10


@pytest.mark.parametrize("M, gamma", [(0.0, 1.0), (0.5, 0.5), (SQRT2, 3.0)])
def test_intertwining(M, gamma):
    states = _states(M, gamma)
    for (N, L), u in states.items():
        if (N, L + 1) not in states:
            continue
        lowered = apply_ladder(L, gamma, "-", u)
        assert abs(inner_product(normalize(lowered), states[(N, L + 1)])) >= 1 - 1e-10
        raised = apply_ladder(L, gamma, "+", states[(N, L + 1)])
        assert abs(inner_product(normalize(raised), u)) >= 1 - 1e-10
        back = apply_ladder(L, gamma, "+", lowered)
        scale = energy_scaled(N, gamma) + shift(L, gamma)
        assert (back - scale * u).norm() <= 1e-10 * u.norm()


@pytest.mark.parametrize("M, gamma", [(0.0, 1.0), (0.5, 0.5), (SQRT2, 3.0)])
def test_orthonormal_at_fixed_L(M, gamma):
    states = _states(M, gamma)
    for (N, L), u in states.items():
        for (N2, L2), v in states.items():
            if L2 == L:
                assert inner_product(u, v) == pytest.approx(1.0 if N == N2 else 0.0, abs=1e-8)


def test_degenerate_energies_bitwise_equal():
    rep = spectrum(1.7, 5, 1.3)
    for N in rep.levels():
        assert len({row.energy_analytic for row in rep.rows if row.N == N}) == 1


# -- discretized algebra ------------------------------------------------------------


def test_susy_algebra_default_grid():
    rep = verify_susy_algebra(0.0, 1.0, Grid(1e-3, 40.0, 2000))
    assert rep.q_squared == 0.0 and rep.qdag_squared == 0.0
    assert rep.anticommutator_defect == 0.0
    assert rep.commutator_rel <= 1e-10
    assert rep.observed_order == pytest.approx(2.0, abs=0.25)
    e = rep.truncation_errors
    assert e[0] / e[1] == pytest.approx(4.0, abs=0.5)
    assert rep.passed()


def test_susy_algebra_irrational_L():
    rep = verify_susy_algebra(SQRT2, 0.8)
    assert rep.passed()


def test_susy_algebra_coarse_grid_rejected():
    with pytest.raises(GridTooCoarseError):
        verify_susy_algebra(0.0, 1.0, Grid(1e-3, 40.0, 64))
