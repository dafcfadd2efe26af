"""Full-line (-inf, inf) formulation: the Morse form of the radial problem.

With ``y = gamma r``, ``x = ln y`` and ``u = exp(x/2) psi`` the level-N
radial equation becomes

    [-1/2 d^2/dx^2 + exp(2x)/(2N^2) - exp(x)] psi = -1/2 (L + 1/2)^2 psi.

Shifting by ``(N - 1/2)^2 / 2`` gives a zero-energy ground state
(L = N - 1) and superpotential ``W = exp(x)/N + 1/2 - N``.  The partner
potential is the same Morse form with ``exp(x)`` scaled by ``1 - 1/N``,
which is level ``N - 1`` of a Hartmann problem with coupling
``(1 - 1/N) delta``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .model import QuantumNumberError, energy_scaled
from .oracle import EigenResult, Grid, MatchReport, compare_spectra, morse_grid, solve_fullline
from .radial_forms import RadialFunction, differentiate, evaluate


def to_morse_coordinates(gamma: float, r):
    """``x = ln(gamma r)``."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("r must be positive")
    out = np.log(gamma * r)
    return float(out) if out.ndim == 0 else out


def from_morse_coordinates(gamma: float, x):
    out = np.exp(np.asarray(x, dtype=float)) / gamma
    return float(out) if out.ndim == 0 else out


def shift(N: float) -> float:
    """``(N - 1/2)^2 / 2``: ground-state offset and continuum edge."""
    return 0.5 * (N - 0.5) ** 2


def morse_eigenvalue(L: float) -> float:
    """Unshifted eigenvalue ``-(L + 1/2)^2 / 2``."""
    return -0.5 * (L + 0.5) ** 2


def susy_eigenvalue(N: float, L: float) -> float:
    """Shifted eigenvalue; zero for ``L = N - 1``."""
    return morse_eigenvalue(L) + shift(N)


def bound_L_values(N: float) -> list[float]:
    """Labels ``N-1, N-2, ...`` of the states bound by the level-N Morse well.

    A state is bound while ``L + 1/2 > 0``; this list can extend below |M|.
    """
    out = []
    L = N - 1.0
    while L + 0.5 > 1e-12:
        out.append(L)
        L -= 1.0
    return out


def morse_superpotential(N: float, x):
    """``W_1(x) = exp(x)/N + 1/2 - N``."""
    x = np.asarray(x, dtype=float)
    out = np.exp(x) / N + 0.5 - N
    return float(out) if out.ndim == 0 else out


def _morse(N, coupling):
    c = shift(N)

    def v(x):
        ex = np.exp(np.asarray(x, dtype=float))
        out = ex * ex / (2.0 * N * N) - coupling * ex + c
        return float(out) if np.ndim(out) == 0 else out

    return v


def morse_partner_potentials(N: float) -> tuple[Callable, Callable]:
    """Shifted Bose and Fermi sector potentials ``(V1, V2)`` at level N."""
    return _morse(N, 1.0), _morse(N, 1.0 - 1.0 / N)


def ricatti_residuals(N: float, x):
    """``((W^2 - W')/2 - V1, (W^2 + W')/2 - V2)``; both vanish identically.

    Computed in extended precision so the large exp(2x) terms cancel cleanly.
    """
    x = np.asarray(x, dtype=np.longdouble)
    N = np.longdouble(N)
    ex = np.exp(x)
    w = ex / N + np.longdouble(0.5) - N
    wp = ex / N
    half = np.longdouble(0.5)
    v1 = ex * ex / (2 * N * N) - ex + half * (N - half) ** 2
    v2 = ex * ex / (2 * N * N) - (1 - 1 / N) * ex + half * (N - half) ** 2
    return (half * (w * w - wp) - v1).astype(float), (half * (w * w + wp) - v2).astype(float)


@dataclass(frozen=True)
class MorseProblem:
    n_label: float
    delta: float
    sector: str = "bose"

    def __post_init__(self):
        if self.sector not in ("bose", "fermi"):
            raise ValueError("sector is 'bose' or 'fermi'")
        if not self.n_label > 0 or not self.delta > 0:
            raise ValueError("N and delta must be positive")

    @property
    def shift(self) -> float:
        return shift(self.n_label)

    @property
    def coupling(self) -> float:
        return 1.0 if self.sector == "bose" else 1.0 - 1.0 / self.n_label

    def potential(self, x):
        return _morse(self.n_label, self.coupling)(x)

    def susy_eigenvalues(self) -> list[float]:
        labels = bound_L_values(self.n_label)
        if self.sector == "fermi":
            labels = labels[1:]
        return [susy_eigenvalue(self.n_label, L) for L in labels]


@dataclass(frozen=True)
class PartnerMapResult:
    n_label: float
    delta: float
    n_prime: float
    delta_prime: float
    energy_check: float


def partner_map(N: float, delta: float) -> PartnerMapResult:
    """``(N, delta) -> (N - 1, (1 - 1/N) delta)``."""
    if not N > 1:
        raise QuantumNumberError(f"level N={N!r} has no partner (need N > 1)")
    n_prime = N - 1.0
    # (1 - 1/N) delta written as (N-1) delta / N so delta'/N' reproduces delta/N
    delta_prime = n_prime * delta / N
    return PartnerMapResult(
        n_label=N,
        delta=delta,
        n_prime=n_prime,
        delta_prime=delta_prime,
        energy_check=delta_prime / n_prime - delta / N,
    )


def paired_energies(N: float, delta: float) -> tuple[float, float]:
    """Scaled energies of a state and its full-line partner (equal)."""
    p = partner_map(N, delta)
    if p.n_prime >= 1:
        return energy_scaled(N, delta), energy_scaled(p.n_prime, p.delta_prime)
    # N' < 1 has no Hartmann level but the Morse relation still holds
    return -(delta**2) / (2 * N**2), -(p.delta_prime**2) / (2 * p.n_prime**2)


class TransformedEigenfunction:
    """``psi(x) = exp(-x/2) u(exp(x)/gamma)`` for a radial function ``u``."""

    def __init__(self, u: RadialFunction, gamma: float):
        self.u = u
        self.gamma = gamma
        self._du = differentiate(u)
        self._d2u = differentiate(self._du)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.exp(-0.5 * x) * evaluate(self.u, np.exp(x) / self.gamma)

    def inverse(self, r):
        """Recover ``u(r) = sqrt(gamma r) psi(ln(gamma r))``."""
        r = np.asarray(r, dtype=float)
        return np.sqrt(self.gamma * r) * self(to_morse_coordinates(self.gamma, r))

    def second_derivative(self, x):
        # g(x) = u(r(x)), dr/dx = r: g' = r u', g'' = r u' + r^2 u''
        x = np.asarray(x, dtype=float)
        r = np.exp(x) / self.gamma
        g = evaluate(self.u, r)
        g1 = r * evaluate(self._du, r)
        g2 = g1 + r * r * evaluate(self._d2u, r)
        return np.exp(-0.5 * x) * (g2 - g1 + 0.25 * g)

    def line_norm_squared(self) -> float:
        """``int |psi|^2 dx = (1/gamma) int |u|^2 / r^2 dr``."""
        from .radial_forms import inner_product

        R = self.u.with_exponent(self.u.s - 1.0)
        return inner_product(R, R) / self.gamma

    def morse_residual(self, N: float, L: float, x) -> np.ndarray:
        """Pointwise ``[-psi''/2 + V psi] - eigenvalue * psi`` (unshifted Morse)."""
        x = np.asarray(x, dtype=float)
        psi = self(x)
        ex = np.exp(x)
        v = ex * ex / (2.0 * N * N) - ex
        return -0.5 * self.second_derivative(x) + v * psi - morse_eigenvalue(L) * psi


def transform_eigenfunction(u: RadialFunction, gamma: float) -> TransformedEigenfunction:
    return TransformedEigenfunction(u, gamma)


@dataclass
class IsospectralityReport:
    N: float
    bose: EigenResult
    fermi: EigenResult
    match: MatchReport
    missing_ground: float
    expected: list[float]
    analytic_error: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.match.passed and self.analytic_error <= self.tol


def verify_partner_spectra(N: float, grid: Grid | None = None, tol: float = 1e-3) -> IsospectralityReport:
    """Solve both sectors numerically and check they share all but V1's ground level.

    Bound eigenvalues of both sectors are also compared with the closed form
    ``(N - 1/2)^2/2 - (L + 1/2)^2/2``.  Raises
    :class:`~hartmann_susy.oracle.NonConvergenceError` if one grid doubling
    moves any level by ``0.1 * tol`` or more.
    """
    if N < 2:
        raise QuantumNumberError(f"isospectrality check needs N >= 2, got {N!r}")
    if grid is None:
        grid = morse_grid(N)
    v1, v2 = morse_partner_potentials(N)
    expected = [susy_eigenvalue(N, L) for L in bound_L_values(N)]
    k = len(expected)
    edge = shift(N)
    bose = solve_fullline(v1, grid, k + 1, tol=tol, threshold=edge)
    fermi = solve_fullline(v2, grid, k, tol=tol, threshold=edge)
    match = compare_spectra(bose, fermi, drop_ground=True, tol=tol)
    err_bose = np.abs(np.asarray(bose.eigenvalues) - expected).max()
    err_fermi = np.abs(np.asarray(fermi.eigenvalues) - expected[1:]).max() if len(fermi) else 0.0
    return IsospectralityReport(
        N=N,
        bose=bose,
        fermi=fermi,
        match=match,
        missing_ground=float(bose.eigenvalues[0]),
        expected=expected,
        analytic_error=float(max(err_bose, err_fermi)),
        tol=tol,
    )
