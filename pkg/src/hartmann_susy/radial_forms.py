"""Exact algebra on functions of the form ``r**s * exp(-kappa r) * P(r)``.

This class is closed under d/dr, multiplication by powers of r, the ladder
operators of the Coulomb-like radial problem and the radial Hamiltonian
itself, so eigenfunctions can be built and checked without a grid.
Inner products reduce to sums of gamma integrals

    int_0^inf r**a exp(-b r) dr = Gamma(a + 1) / b**(a + 1),   a > -1.

Coefficients are floats and the exponent ``s`` is a real number; ``s`` is
irrational whenever ``|M|`` is.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TRIM_RTOL = 1e-13


class IntegrabilityError(ValueError):
    """The function (or integrand) is not square integrable at the origin."""


def log_gamma(x: float) -> float:
    """ln Gamma(x) for real x > 0."""
    if not x > 0:
        raise ValueError(f"log_gamma needs x > 0, got {x!r}")
    return math.lgamma(x)


def _trim(coeffs) -> tuple[float, ...]:
    c = [float(v) for v in coeffs]
    if not c:
        return ()
    scale = max(abs(v) for v in c)
    if scale == 0.0:
        return ()
    cut = TRIM_RTOL * scale
    c = [0.0 if abs(v) <= cut else v for v in c]
    while c and c[-1] == 0.0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class Polynomial:
    """Real polynomial in r, ``coefficients[k]`` multiplies ``r**k``."""

    coefficients: tuple[float, ...] = ()

    def __post_init__(self):
        c = tuple(float(v) for v in self.coefficients)
        while c and c[-1] == 0.0:
            c = c[:-1]
        object.__setattr__(self, "coefficients", c)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def lowest_power(self) -> int:
        for k, c in enumerate(self.coefficients):
            if c != 0.0:
                return k
        raise ValueError("zero polynomial has no lowest power")

    def __call__(self, r):
        if self.is_zero:
            return np.zeros_like(np.asarray(r, dtype=float))
        # numpy wants highest power first
        return np.polyval(self.coefficients[::-1], r)

    def derivative(self) -> Polynomial:
        return Polynomial(tuple(k * c for k, c in enumerate(self.coefficients))[1:])

    def shifted(self, k: int) -> Polynomial:
        """Multiply by ``r**k`` (k >= 0)."""
        return Polynomial((0.0,) * k + self.coefficients)

    def __add__(self, other: Polynomial) -> Polynomial:
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        a = a + (0.0,) * (n - len(a))
        b = b + (0.0,) * (n - len(b))
        return Polynomial(tuple(x + y for x, y in zip(a, b)))

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            if self.is_zero or other.is_zero:
                return Polynomial()
            return Polynomial(tuple(np.convolve(self.coefficients, other.coefficients)))
        return Polynomial(tuple(other * c for c in self.coefficients))

    __rmul__ = __mul__


@dataclass(frozen=True)
class RadialFunction:
    """``r**s * exp(-kappa * r) * poly(r)`` kept in canonical form.

    Canonical means trimmed coefficients and ``poly(0) != 0``: leading
    zero coefficients are absorbed into ``s``.  The zero function has an
    empty polynomial.
    """

    s: float
    kappa: float
    poly: Polynomial

    def __post_init__(self):
        if not self.kappa > 0:
            raise ValueError(f"kappa must be positive, got {self.kappa!r}")
        if not isinstance(self.poly, Polynomial):
            object.__setattr__(self, "poly", Polynomial(tuple(self.poly)))
        c = _trim(self.poly.coefficients)
        s = float(self.s)
        k = 0
        while k < len(c) and c[k] == 0.0:
            k += 1
        object.__setattr__(self, "s", s + k if c else s)
        object.__setattr__(self, "poly", Polynomial(c[k:]))

    @classmethod
    def monomial(cls, s: float, kappa: float, coeff: float = 1.0) -> RadialFunction:
        return cls(s, kappa, Polynomial((coeff,)))

    @classmethod
    def zero(cls, kappa: float = 1.0) -> RadialFunction:
        return cls(0.0, kappa, Polynomial())

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero

    @property
    def coefficients(self) -> tuple[float, ...]:
        return self.poly.coefficients

    def check_integrable(self) -> None:
        """Raise :class:`IntegrabilityError` unless int |f|^2 dr converges at 0."""
        if not self.is_zero and not self.s > -0.5:
            raise IntegrabilityError(f"r**{self.s:g} is not square integrable at the origin")

    def __call__(self, r):
        return evaluate(self, r)

    def with_exponent(self, s: float) -> RadialFunction:
        """Same kappa and polynomial, exponent replaced."""
        return RadialFunction(s, self.kappa, self.poly)

    def _aligned(self, other: RadialFunction) -> tuple[float, Polynomial, Polynomial]:
        if not math.isclose(self.kappa, other.kappa, rel_tol=1e-14):
            raise ValueError("cannot combine functions with different decay rates")
        gap = self.s - other.s
        k = round(gap)
        if abs(gap - k) > 1e-9:
            raise ValueError("exponents differ by a non-integer")
        if k >= 0:
            return other.s, self.poly.shifted(k), other.poly
        return self.s, self.poly, other.poly.shifted(-k)

    def __add__(self, other: RadialFunction) -> RadialFunction:
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        s, p, q = self._aligned(other)
        return RadialFunction(s, self.kappa, p + q)

    def __neg__(self) -> RadialFunction:
        return RadialFunction(self.s, self.kappa, -1.0 * self.poly)

    def __sub__(self, other: RadialFunction) -> RadialFunction:
        return self + (-other)

    def __mul__(self, scalar: float) -> RadialFunction:
        return RadialFunction(self.s, self.kappa, float(scalar) * self.poly)

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> RadialFunction:
        return self * (1.0 / scalar)

    def norm(self) -> float:
        return math.sqrt(max(inner_product(self, self), 0.0)) if not self.is_zero else 0.0


def evaluate(f: RadialFunction, r):
    """Value of ``f`` at ``r`` (scalar or array)."""
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr < 0):
        raise ValueError("radial functions live on r >= 0")
    if f.is_zero:
        out = np.zeros_like(r_arr)
    else:
        if f.s < 0 and np.any(r_arr == 0):
            raise ValueError(f"f is singular at r = 0 (s = {f.s:g})")
        with np.errstate(divide="ignore"):
            out = np.power(r_arr, f.s) * np.exp(-f.kappa * r_arr) * f.poly(r_arr)
    return float(out) if out.ndim == 0 else out


def differentiate(f: RadialFunction) -> RadialFunction:
    """d/dr f = r**(s-1) e**(-kappa r) [s P + r P' - kappa r P]."""
    if f.is_zero:
        return f
    p = f.poly
    new = f.s * p + p.derivative().shifted(1) + (-f.kappa) * p.shifted(1)
    return RadialFunction(f.s - 1.0, f.kappa, new)


def apply_ladder(L: float, gamma: float, sign: str, f: RadialFunction) -> RadialFunction:
    """Apply ``A_L^{+}`` (``sign='+'``) or ``A_L^{-}`` (``sign='-'``) to ``f``.

    ``A_L^{+-} = (1/sqrt 2) (-+ d/dr - (L+1)/r + gamma/(L+1))``.
    """
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    if f.is_zero:
        return f
    deriv_sign = -1.0 if sign == "+" else 1.0
    df = differentiate(f)
    # bring every term to the exponent s - 1
    p = f.poly
    superpot = (-(L + 1.0)) * p + (gamma / (L + 1.0)) * p.shifted(1)
    base = RadialFunction(f.s - 1.0, f.kappa, superpot)
    out = (deriv_sign * df + base) * (1.0 / math.sqrt(2.0))
    out.check_integrable()
    return out


def apply_radial_hamiltonian(L: float, gamma: float, f: RadialFunction) -> RadialFunction:
    """``H_L f = -f''/2 + L(L+1) f / (2 r^2) - gamma f / r``."""
    if f.is_zero:
        return f
    d2 = differentiate(differentiate(f))
    p = f.poly
    potential = (0.5 * L * (L + 1.0)) * p + (-gamma) * p.shifted(1)
    out = -0.5 * d2 + RadialFunction(f.s - 2.0, f.kappa, potential)
    out.check_integrable()
    return out


def gamma_integral(a: float, b: float) -> float:
    """int_0^inf r**a exp(-b r) dr for a > -1, b > 0."""
    if not a > -1:
        raise IntegrabilityError(f"integral of r**{a:g} diverges at the origin")
    if not b > 0:
        raise ValueError("decay rate must be positive")
    return math.exp(log_gamma(a + 1.0) - (a + 1.0) * math.log(b))


def inner_product(f: RadialFunction, g: RadialFunction) -> float:
    """int_0^inf f(r) g(r) dr, evaluated termwise with gamma integrals."""
    if f.is_zero or g.is_zero:
        return 0.0
    a = f.s + g.s
    if not a > -1:
        raise IntegrabilityError(f"product r**{a:g} is not integrable at the origin")
    b = f.kappa + g.kappa
    prod = f.poly * g.poly
    log_b = math.log(b)
    total = 0.0
    for k, c in enumerate(prod.coefficients):
        if c:
            total += c * math.exp(log_gamma(a + k + 1.0) - (a + k + 1.0) * log_b)
    return total


def normalize(f: RadialFunction) -> RadialFunction:
    """Unit-norm copy of ``f`` with a positive lowest-power coefficient."""
    if f.is_zero:
        raise ValueError("cannot normalize the zero function")
    nrm = math.sqrt(inner_product(f, f))
    sign = 1.0 if f.poly.coefficients[0] > 0 else -1.0
    return f * (sign / nrm)
