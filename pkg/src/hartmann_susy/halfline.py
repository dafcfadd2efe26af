"""Half-line [0, inf) factorization of the Hartmann radial problem.

The radial operator ``H_L = -1/2 d^2/dr^2 + L(L+1)/(2r^2) - gamma/r``
is shifted to ``HH_L = H_L + gamma^2 / (2 (L+1)^2)`` which factorizes as
``A_L^+ A_L^-`` with superpotential ``W_L = -(L+1)/r + gamma/(L+1)``.
Its partner ``A_L^- A_L^+`` is ``HH_{L+1}`` up to a constant, so the
lowest-rung state of ``H_{N-1}`` is carried down to ``u_{N,L}`` by
``A^+_{N-2}, ..., A^+_L``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .model import QuantumNumberError, allowed_L_values, energy_scaled, integer_gap, kappa, levels
from .radial_forms import (
    RadialFunction,
    apply_ladder,
    apply_radial_hamiltonian,
    evaluate,
    normalize,
)


def superpotential(L: float, gamma: float, r):
    """``W_L(r) = -(L+1)/r + gamma/(L+1)``."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("superpotential is defined for r > 0")
    out = -(L + 1.0) / r + gamma / (L + 1.0)
    return float(out) if out.ndim == 0 else out


def _superpotential_prime(L, r):
    return (L + 1.0) / r**2


def shift(L: float, gamma: float) -> float:
    """Constant ``gamma^2 / (2 (L+1)^2)`` separating HH_L from H_L."""
    return 0.5 * (gamma / (L + 1.0)) ** 2


def ricatti_residual(L: float, gamma: float, r):
    """``(W^2 - W')/2`` minus the shifted potential of ``HH_L``; zero identically.

    Evaluated in extended precision: near the origin both sides are large
    and a float64 difference would be dominated by cancellation.
    """
    r = np.asarray(r, dtype=np.longdouble)
    if np.any(r <= 0):
        raise ValueError("r must be positive")
    L = np.longdouble(L)
    gamma = np.longdouble(gamma)
    w = -(L + 1) / r + gamma / (L + 1)
    lhs = (w * w - (L + 1) / (r * r)) / 2
    rhs = L * (L + 1) / (2 * r * r) - gamma / r + (gamma / (L + 1)) ** 2 / 2
    out = (lhs - rhs).astype(float)
    return float(out) if out.ndim == 0 else out


def partner_potential(L: float, gamma: float, r):
    """``(W_L^2 + W_L')/2``, the potential of ``A_L^- A_L^+``."""
    r = np.asarray(r, dtype=float)
    w = superpotential(L, gamma, r)
    out = 0.5 * (w**2 + _superpotential_prime(L, r))
    return float(out) if np.ndim(out) == 0 else out


def shifted_potential(L: float, gamma: float, r, shift_value: float | None = None):
    """Potential of ``HH_L``; ``shift_value`` overrides the default constant."""
    r = np.asarray(r, dtype=float)
    c = shift(L, gamma) if shift_value is None else shift_value
    out = L * (L + 1.0) / (2 * r**2) - gamma / r + c
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class HierarchyLevel:
    """One member ``HH_L`` of the hierarchy with its zero-energy ground state."""

    L: float
    gamma: float
    ground_state: RadialFunction
    shift: float

    @classmethod
    def build(cls, L: float, gamma: float) -> HierarchyLevel:
        return cls(L=L, gamma=gamma, ground_state=ground_state(L, gamma), shift=shift(L, gamma))

    def superpotential(self, r):
        return superpotential(self.L, self.gamma, r)

    def lower(self, f: RadialFunction) -> RadialFunction:
        return apply_ladder(self.L, self.gamma, "-", f)

    def raise_(self, f: RadialFunction) -> RadialFunction:
        return apply_ladder(self.L, self.gamma, "+", f)

    def hamiltonian(self, f: RadialFunction) -> RadialFunction:
        """``HH_L f`` (shifted, zero ground-state energy)."""
        return apply_radial_hamiltonian(self.L, self.gamma, f) + self.shift * f


def ground_state(L: float, gamma: float) -> RadialFunction:
    """Normalized ``r**(L+1) exp(-gamma r / (L+1))``, annihilated by ``A_L^-``."""
    return normalize(RadialFunction.monomial(L + 1.0, kappa(L, gamma)))


def _check_pair(N: float, L: float) -> int:
    if L < 0:
        raise QuantumNumberError(f"L must be >= 0, got {L!r}")
    steps = integer_gap(N - L - 1.0)
    if steps < 0:
        raise QuantumNumberError(f"need N >= L + 1, got N={N!r}, L={L!r}")
    return steps


def ladder_steps(N: float, L: float) -> list[float]:
    """Labels of the raising operators applied, in order: N-2, N-3, ..., L."""
    steps = _check_pair(N, L)
    return [L + k for k in range(steps - 1, -1, -1)]


def build_eigenfunction(N: float, L: float, gamma: float) -> RadialFunction:
    """Normalized ``u_{N,L}`` built from the lowest rung of ``H_{N-1}``."""
    steps = _check_pair(N, L)
    top = L + steps  # equals N - 1 without accumulated rounding
    u = RadialFunction.monomial(top + 1.0, kappa(top, gamma))
    for lab in ladder_steps(N, L):
        u = apply_ladder(lab, gamma, "+", u)
    return normalize(u)


def radial_R(N: float, L: float, gamma: float) -> RadialFunction:
    """``R_{N,L} = u_{N,L} / r``; unit norm under the r^2 dr measure."""
    u = build_eigenfunction(N, L, gamma)
    return u.with_exponent(u.s - 1.0)


@dataclass(frozen=True)
class SpectrumRow:
    N: float
    L: float
    energy_analytic: float
    energy_oracle: float | None = None
    builder_trace: tuple[str, ...] = ()

    @property
    def delta(self) -> float | None:
        if self.energy_oracle is None:
            return None
        return self.energy_oracle - self.energy_analytic


@dataclass
class SpectrumReport:
    capital_m: float
    gamma: float
    rows: list[SpectrumRow] = field(default_factory=list)

    def degeneracy(self, N: float) -> int:
        return sum(1 for row in self.rows if row.N == N)

    def levels(self) -> list[float]:
        return sorted({row.N for row in self.rows})


def _trace(N, L):
    top = N - 1.0
    out = [f"ground_state(L={top:.6g})"]
    out += [f"A+(L={lab:.6g})" for lab in ladder_steps(N, L)]
    return tuple(out)


def spectrum(capital_m: float, n_levels: int, gamma: float) -> SpectrumReport:
    """Analytic (N, L, energy) table for the first ``n_levels`` values of N."""
    report = SpectrumReport(capital_m=capital_m, gamma=gamma)
    for N in levels(capital_m, n_levels):
        e = energy_scaled(N, gamma)
        for L in allowed_L_values(N, capital_m):
            report.rows.append(SpectrumRow(N=N, L=L, energy_analytic=e, builder_trace=_trace(N, L)))
    return report


# -- discretized algebra ------------------------------------------------------


@dataclass
class AlgebraReport:
    L: float
    gamma: float
    n_points: int
    q_squared: float
    qdag_squared: float
    anticommutator_defect: float
    commutator: float
    commutator_qdag: float
    hss_norm: float
    truncation_error: float
    truncation_errors: list[float]
    observed_order: float

    @property
    def commutator_rel(self) -> float:
        return max(self.commutator, self.commutator_qdag) / self.hss_norm

    def passed(self, tol: float = 1e-10) -> bool:
        return (
            self.q_squared == 0.0
            and self.qdag_squared == 0.0
            and self.anticommutator_defect == 0.0
            and self.commutator_rel <= tol
            and abs(self.observed_order - 2.0) <= 0.25
        )


class GridTooCoarseError(RuntimeError):
    pass


def ladder_matrices(L: float, gamma: float, r: np.ndarray):
    """Sparse ``A_L^-`` and ``A_L^+ = (A_L^-)^T`` on the interior nodes ``r``.

    The derivative is the antisymmetric central difference with Dirichlet
    ends, so the transpose relation holds exactly on the grid.
    """
    n = r.size
    h = r[1] - r[0]
    off = np.full(n - 1, 0.5 / h)
    d = sp.diags([-off, off], [-1, 1], format="csr")
    w = sp.diags(superpotential(L, gamma, r), 0, format="csr")
    a_minus = ((d + w) / math.sqrt(2.0)).tocsr()
    return a_minus, a_minus.T.tocsr()


def _frob(m) -> float:
    return float(sp.linalg.norm(m)) if m.nnz else 0.0


def _block_checks(a_minus, a_plus):
    n = a_minus.shape[0]
    z = sp.csr_matrix((n, n))
    q = sp.bmat([[z, None], [a_minus, z]], format="csr")
    qd = sp.bmat([[z, a_plus], [None, z]], format="csr")
    h1 = (a_plus @ a_minus).tocsr()
    h2 = (a_minus @ a_plus).tocsr()
    hss = (q @ qd + qd @ q).tocsr()
    expected = sp.block_diag([h1, h2], format="csr")
    return {
        "q_squared": _frob(q @ q),
        "qdag_squared": _frob(qd @ qd),
        "anticommutator_defect": _frob(hss - expected),
        "commutator": _frob(q @ hss - hss @ q),
        "commutator_qdag": _frob(qd @ hss - hss @ qd),
        "hss_norm": _frob(hss),
    }


def _test_function(L, gamma):
    # smooth, not an eigenfunction, so A+A- f is nontrivial
    k = kappa(L, gamma)
    return RadialFunction(L + 1.0, k, (1.0, 0.5 * k, 0.25 * k * k))


def _truncation(L, gamma, x_min, x_max, n_points, margin):
    r = np.linspace(x_min, x_max, n_points)[1:-1]
    a_minus, a_plus = ladder_matrices(L, gamma, r)
    f = _test_function(L, gamma)
    exact = apply_radial_hamiltonian(L, gamma, f) + shift(L, gamma) * f
    approx = a_plus @ (a_minus @ evaluate(f, r))
    mask = (r > x_min + margin) & (r < x_max - margin)
    ref = evaluate(exact, r[mask])
    return float(np.linalg.norm(approx[mask] - ref) / np.linalg.norm(ref))


def verify_susy_algebra(
    L: float,
    gamma: float,
    grid=None,
    *,
    max_truncation: float = 1e-2,
    margin: float | None = None,
) -> AlgebraReport:
    """Check the SUSY algebra for discretized ``A_L^{+-}`` on ``grid``.

    ``grid`` is an :class:`~hartmann_susy.oracle.Grid` (default: [1e-3, 40],
    2000 points).  Q and Q^dagger are the 2x2 block operators with ``A^-``
    below and ``A^+`` above the diagonal; H_ss is their anticommutator.
    The factorization ``A^+A^- = HH_L`` is tested on a smooth trial function
    at three resolutions to measure the truncation order.
    """
    from .oracle import Grid

    if grid is None:
        grid = Grid(1e-3, 40.0, 2000)
    r = grid.points[1:-1]
    a_minus, a_plus = ladder_matrices(L, gamma, r)
    blocks = _block_checks(a_minus, a_plus)

    if margin is None:
        margin = 0.05 * (grid.x_max - grid.x_min)
    errors = []
    n = grid.n_points
    for level in range(3):
        errors.append(_truncation(L, gamma, grid.x_min, grid.x_max, n, margin))
        n = 2 * (n - 1) + 1
    order = math.log2(errors[1] / errors[2]) if errors[2] > 0 else float("inf")
    if errors[0] > max_truncation:
        raise GridTooCoarseError(
            f"A+A- deviates from the shifted Hamiltonian by {errors[0]:.3g} (> {max_truncation:g})"
        )
    return AlgebraReport(
        L=L,
        gamma=gamma,
        n_points=grid.n_points,
        truncation_error=errors[0],
        truncation_errors=errors,
        observed_order=order,
        **blocks,
    )
