"""Physical parameters and quantum-number bookkeeping for the Hartmann potential.

Everything is in atomic units (mu = hbar = e = 1), so a0 = 1 and
|eps0| = 1/2.  With these conventions the radial coupling is
``gamma = eta * sigma**2`` and the energy scale is ``Lambda = gamma**2 / 2``.

The quantum numbers |M|, L and N are real in general because
``|M| = sqrt(m**2 + eta**2 sigma**2)``; only the differences ``L - |M|`` and
``N - L - 1`` are integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

INTEGER_TOL = 1e-9


class QuantumNumberError(ValueError):
    """Raised for inconsistent (m, |M|, L, N) combinations."""


def integer_gap(x: float, tol: float = INTEGER_TOL) -> int:
    """Return ``round(x)`` if ``x`` is an integer within ``tol``, else raise."""
    k = round(x)
    if abs(x - k) > tol:
        raise QuantumNumberError(f"{x!r} is not an integer (tolerance {tol:g})")
    return int(k)


@dataclass(frozen=True)
class HartmannParams:
    """Dimensionless parameters (eta, sigma) of the ring-shaped potential."""

    eta: float
    sigma: float

    def __post_init__(self):
        for name in ("eta", "sigma"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a positive finite number, got {value!r}")

    @property
    def gamma(self) -> float:
        return self.eta * self.sigma**2

    @property
    def delta(self) -> float:
        # same number as gamma in atomic units; named separately for the
        # full-line partner map, which rescales it
        return self.eta * self.sigma**2

    @property
    def lambda_scale(self) -> float:
        return 0.5 * self.eta**2 * self.sigma**4

    def capital_m(self, m: int) -> float:
        return magnetic_to_capital_m(m, self)


@dataclass(frozen=True)
class QuantumNumbers:
    """A consistent set (m, |M|, nu', L, n', N).

    Use :meth:`from_indices` to build one from the integer labels; direct
    construction validates the relations between the real-valued labels.
    """

    m: int
    capital_m: float
    nu_prime: int
    L: float
    n_prime: int
    N: float

    def __post_init__(self):
        if self.capital_m < 0:
            raise QuantumNumberError("|M| must be nonnegative")
        if self.nu_prime < 0 or self.n_prime < 0:
            raise QuantumNumberError("nu' and n' must be nonnegative")
        if abs(self.L - (self.nu_prime + self.capital_m)) > INTEGER_TOL:
            raise QuantumNumberError("L != nu' + |M|")
        if abs(self.N - (self.L + 1 + self.n_prime)) > INTEGER_TOL:
            raise QuantumNumberError("N != L + 1 + n'")

    @classmethod
    def from_indices(cls, m: int, nu_prime: int, n_prime: int, params: HartmannParams) -> QuantumNumbers:
        cm = magnetic_to_capital_m(m, params)
        L = cm + nu_prime
        return cls(m=m, capital_m=cm, nu_prime=nu_prime, L=L, n_prime=n_prime, N=L + 1 + n_prime)

    def check_params(self, params: HartmannParams, tol: float = 1e-9) -> None:
        """Raise unless ``|M|**2 == m**2 + eta**2 sigma**2`` for ``params``."""
        expected = magnetic_to_capital_m(self.m, params)
        if abs(expected - self.capital_m) > tol * max(1.0, expected):
            raise QuantumNumberError(f"|M|={self.capital_m} inconsistent with m={self.m} and {params}")


def magnetic_to_capital_m(m: int, params: HartmannParams) -> float:
    """|M| = sqrt(m^2 + eta^2 sigma^2)."""
    return math.hypot(m, params.eta * params.sigma)


def energy_scaled(N: float, gamma: float) -> float:
    """Eigenvalue ``-gamma**2 / (2 N**2)`` of the scaled radial operator."""
    if N < 1:
        raise QuantumNumberError(f"N must be >= 1, got {N!r}")
    return -(gamma**2) / (2.0 * N**2)


def energy(N: float, params: HartmannParams) -> float:
    """Physical level ``E_N = -Lambda / N**2`` (hartree)."""
    if N < 1:
        raise QuantumNumberError(f"N must be >= 1, got {N!r}")
    return -params.lambda_scale / N**2


def kappa(L: float, gamma: float) -> float:
    """Decay rate ``gamma / (L + 1)`` of the lowest-rung state at label L."""
    if L < 0:
        raise QuantumNumberError(f"L must be >= 0, got {L!r}")
    return gamma / (L + 1.0)


def allowed_L_values(N: float, capital_m: float) -> list[float]:
    """Degenerate L labels at level N: ``[N-1, N-2, ..., |M|]``.

    Values are generated as ``|M| + k`` so that the last entry is exactly
    ``capital_m``.
    """
    count = integer_gap(N - capital_m)
    if count < 1:
        raise QuantumNumberError(f"need N - |M| >= 1, got N={N!r}, |M|={capital_m!r}")
    return [capital_m + k for k in range(count - 1, -1, -1)]


def levels(capital_m: float, n_levels: int) -> list[float]:
    """The first ``n_levels`` values of N for a given |M|."""
    if n_levels < 1:
        raise ValueError("n_levels must be >= 1")
    return [capital_m + 1 + k for k in range(n_levels)]
