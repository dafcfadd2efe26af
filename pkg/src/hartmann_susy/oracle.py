"""Brute-force numerical checks, independent of the symbolic code.

* finite-difference eigensolvers (3-point Laplacian, Dirichlet ends) for the
  radial problem on a truncated half-line and for potentials on a truncated
  full line;
* composite Simpson quadrature with a Richardson error estimate.

Nothing here imports the closed-form machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal

DEFAULT_RADIAL_POINTS = 8000
RADIAL_INNER_CUTOFF = 1e-8
RADIAL_MAX_SPACING = 0.005


class NonConvergenceError(RuntimeError):
    pass


class NoBoundStatesError(RuntimeError):
    pass


@dataclass(frozen=True)
class Grid:
    """Uniform grid on [x_min, x_max]; both ends are Dirichlet nodes."""

    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise ValueError("need x_min < x_max")
        if self.n_points < 64:
            raise ValueError("need at least 64 grid points")

    @property
    def h(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    @property
    def interior(self) -> np.ndarray:
        return self.points[1:-1]

    def doubled(self) -> Grid:
        """Same interval, half the spacing (old nodes are kept)."""
        return Grid(self.x_min, self.x_max, 2 * (self.n_points - 1) + 1)


def default_radial_grid(N: float, L: float, gamma: float, n_points: int | None = None,
                        x_max: float | None = None) -> Grid:
    """Grid wide enough for states up to level N at label L.

    The outer edge follows the eigenfunction extent ``~ N (L+1) / gamma``;
    the spacing is capped so the lowest level converges to better than
    1e-5 relative under one doubling.
    """
    if x_max is None:
        x_max = max(60.0, 30.0 * N * (L + 1.0) / gamma)
    if n_points is None:
        h = RADIAL_MAX_SPACING * (L + 1.0) / max(gamma, 1.0)
        n_points = max(DEFAULT_RADIAL_POINTS, int(math.ceil(x_max / h)) + 1)
    return Grid(RADIAL_INNER_CUTOFF, x_max, n_points)


def morse_grid(N: float, n_points: int | None = None, left: float | None = None,
               right: float = 6.0) -> Grid:
    """Window ``[ln N^2 - left, ln N^2 + right]`` around the Morse minimum.

    Bound levels of ``exp(2x)/(2N^2) - c exp(x)`` decay like ``exp(k x)`` on
    the left with ``k = N - 1/2 - n``.  The default ``left`` is 12, widened
    to ``6 / k_min`` (capped at 120) when the weakest level is shallow, and
    the default point count keeps the spacing of an 8000-point, 18-wide grid.
    """
    xc = math.log(N * N)
    if left is None:
        a = N - 0.5
        k_min = a - (math.ceil(a - 1e-12) - 1)
        left = min(max(12.0, 6.0 / k_min), 120.0)
    if n_points is None:
        n_points = max(8000, int(math.ceil((left + right) / (18.0 / 7999))) + 1)
    return Grid(xc - left, xc + right, n_points)


@dataclass
class EigenResult:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # shape (n_points, k); zero at the Dirichlet ends
    grid: Grid
    convergence_estimate: float
    changes: np.ndarray = field(default_factory=lambda: np.zeros(0))
    complete: bool = True  # False when fewer than k bound states were found

    def __len__(self):
        return len(self.eigenvalues)


def _lowest(diag, off, k):
    k = min(k, diag.size)
    w, v = eigh_tridiagonal(diag, off, select="i", select_range=(0, k - 1))
    return w, v


def _solve(potential_values, h, k):
    diag = 1.0 / h**2 + potential_values
    off = np.full(diag.size - 1, -0.5 / h**2)
    return _lowest(diag, off, k)


def _pad_and_normalize(v, h):
    n = v.shape[0] + 2
    out = np.zeros((n, v.shape[1]))
    out[1:-1] = v
    # trapezoid weights reduce to h at interior nodes because the ends vanish
    norms = np.sqrt(h * np.sum(out**2, axis=0))
    out /= norms
    return out


def _with_doubling(potential, grid, k, tol, rel, threshold):
    x = grid.interior
    w, v = _solve(potential(x), grid.h, k)
    fine = grid.doubled()
    w2, _ = _solve(potential(fine.interior), fine.h, k)
    m = min(len(w), len(w2))
    changes = np.abs(w2[:m] - w[:m])
    if rel:
        changes = changes / np.abs(w[:m])
    complete = True
    if threshold is not None:
        bound = w < threshold
        if not np.any(bound):
            raise NoBoundStatesError("no eigenvalues below the continuum threshold")
        if not np.all(bound):
            complete = False
            w, v, changes = w[bound], v[:, bound], changes[bound[:m]]
    if tol is not None and np.any(changes >= 0.1 * tol):
        worst = float(np.max(changes))
        raise NonConvergenceError(
            f"grid doubling moved an eigenvalue by {worst:.3g} "
            f"({'relative' if rel else 'absolute'}), gate is {0.1 * tol:.3g}"
        )
    return EigenResult(
        eigenvalues=w,
        eigenvectors=_pad_and_normalize(v, grid.h),
        grid=grid,
        convergence_estimate=float(changes[0]),
        changes=changes,
        complete=complete,
    )


def solve_radial(L: float, gamma: float, grid: Grid, k: int, tol: float | None = None) -> EigenResult:
    """Lowest ``k`` eigenpairs of ``-u''/2 + [L(L+1)/(2r^2) - gamma/r] u``.

    ``tol`` is a relative eigenvalue tolerance; when given, every returned
    eigenvalue must move by less than ``0.1 * tol`` (relative) when the grid
    spacing is halved, else :class:`NonConvergenceError` is raised.
    """
    if grid.x_min <= 0:
        raise ValueError("radial grid must exclude the origin (x_min > 0)")
    if k < 1:
        raise ValueError("k must be >= 1")

    def potential(r):
        return L * (L + 1.0) / (2.0 * r * r) - gamma / r

    return _with_doubling(potential, grid, k, tol, True, threshold=0.0)


def solve_fullline(potential, grid: Grid, k: int, tol: float | None = None,
                   threshold: float | None = None) -> EigenResult:
    """Lowest ``k`` eigenpairs of ``-psi''/2 + V psi`` on ``grid``.

    With ``threshold`` (the continuum edge), only eigenvalues below it are
    returned and ``complete`` is False if there were fewer than ``k``.
    ``tol`` is an absolute tolerance for the doubling gate.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    v = np.asarray(potential(grid.points))
    if not np.all(np.isfinite(v)):
        raise ValueError("potential is not finite on the grid")
    return _with_doubling(potential, grid, k, tol, False, threshold)


def _simpson(f, a, b, n):
    x = np.linspace(a, b, n + 1)
    y = np.asarray(f(x), dtype=float)
    h = (b - a) / n
    return h / 3.0 * (y[0] + y[-1] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-1:2].sum())


def quadrature(f, a: float, b: float, rtol: float = 1e-10, n0: int = 64, max_n: int = 1 << 22) -> float:
    """Composite Simpson on [a, b], doubling until the Richardson estimate
    ``|S_2n - S_n| / 15`` falls below ``rtol * |S_2n|``.
    """
    if not a < b:
        raise ValueError("need a < b")
    n = n0
    prev = _simpson(f, a, b, n)
    while n < max_n:
        n *= 2
        cur = _simpson(f, a, b, n)
        err = abs(cur - prev) / 15.0
        if err <= rtol * abs(cur) or (cur == 0.0 and prev == 0.0):
            return cur + (cur - prev) / 15.0
        prev = cur
    raise NonConvergenceError(f"Simpson did not reach rtol={rtol:g} with {max_n} intervals")


@dataclass
class MatchReport:
    pairs: list[tuple[float, float]]
    max_mismatch: float
    tol: float
    dropped: float | None

    @property
    def passed(self) -> bool:
        return self.max_mismatch <= self.tol


class SpectrumLengthError(ValueError):
    pass


def compare_spectra(a: EigenResult, b: EigenResult, drop_ground: bool, tol: float) -> MatchReport:
    """Pair ``b`` with ``a`` (minus its lowest level if ``drop_ground``)."""
    ea = np.asarray(a.eigenvalues)
    eb = np.asarray(b.eigenvalues)
    dropped = None
    if drop_ground:
        dropped, ea = float(ea[0]), ea[1:]
    if ea.size != eb.size:
        raise SpectrumLengthError(f"cannot pair {ea.size} levels with {eb.size}")
    diff = np.abs(ea - eb)
    return MatchReport(
        pairs=[(float(x), float(y)) for x, y in zip(ea, eb)],
        max_mismatch=float(diff.max()) if diff.size else 0.0,
        tol=tol,
        dropped=dropped,
    )
