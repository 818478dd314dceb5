"""Boltzmann weights and one-loop factors.

Two star-triangle models are covered:

* model A, continuous spins, Euler gamma weights ``W_alpha``, ``Wbar_alpha``
  with crossing constraint ``gamma = alpha + beta``;
* model B, spins ``(sigma, m)`` with a continuous and an integer part,
  weights built from the "complex gamma"
  ``G(x|N) = Gamma((N + x)/2) / Gamma(1 + (N - x)/2)`` and crossing
  parameter ``eta = alpha + beta + gamma``.

One-loop factors for rank-one gauge group are provided for the four
geometries (index, squashed sphere, orbifold, two-sphere). SU(2)
conventions: fundamental weights ``rho(z) = +-z``, positive root
``alpha(z) = 2z`` and ``alpha(m) = 2m``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import BalancingError, DomainError
from .special_fn import (
    Moduli,
    OrbifoldParams,
    log_gamma,
    log_gamma_ratio,
    log_hyperbolic_gamma,
    log_inv_hyperbolic_gamma,
    log_inv_orbifold_gamma,
    log_orbifold_gamma,
    log_q_pochhammer,
)

__all__ = [
    "Spin",
    "SpectralTriple",
    "Balancing",
    "FugacitySet",
    "MultipletData",
    "weight_A_vertical",
    "weight_A_horizontal",
    "self_A",
    "r_factor_A",
    "log_complex_gamma",
    "complex_gamma",
    "weight_B",
    "log_weight_B",
    "self_B",
    "r_factor_B",
    "index_chiral_factor",
    "index_vector_factor",
    "sphere3_chiral_factor",
    "sphere3_vector_factor",
    "orbifold_chiral_factor",
    "orbifold_vector_factor",
    "sphere2_chiral_factor",
    "sphere2_vector_factor",
]

_BALANCE_TOL = 1e-12


def _out(x):
    x = np.asarray(x)
    return x[()] if x.ndim == 0 else x


# ---------------------------------------------------------------------------
# Data types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Spin:
    """Lattice spin with continuous part ``sigma`` and integer part ``m``."""

    sigma: float
    m: int = 0

    def __post_init__(self):
        if not np.isfinite(self.sigma):
            raise DomainError("spin sigma must be finite")
        if int(self.m) != self.m:
            raise DomainError("spin m must be an integer")
        object.__setattr__(self, "sigma", float(self.sigma))
        object.__setattr__(self, "m", int(self.m))

    def __neg__(self):
        return Spin(-self.sigma, -self.m)


def _spin(s):
    """Split a spin-like argument into ``(sigma, m)``.

    Accepts :class:`Spin`, a ``(sigma, m)`` tuple, or a bare ``sigma``
    (scalar or array, possibly complex for contour work).
    """
    if isinstance(s, Spin):
        return s.sigma, s.m
    if isinstance(s, tuple):
        return np.asarray(s[0]), int(s[1])
    return np.asarray(s), 0


def _generic(x, what):
    if abs(x - round(x)) < 1e-3:
        raise DomainError(f"{what} = {x} is within 1e-3 of an integer")


@dataclass(frozen=True)
class SpectralTriple:
    """Spectral parameters ``(alpha, beta, gamma)`` and crossing ``eta``."""

    alpha: float
    beta: float
    gamma: float
    eta: float = 1.0

    @classmethod
    def model_a(cls, alpha: float, beta: float) -> "SpectralTriple":
        """Triple with ``gamma = alpha + beta``."""
        return cls(alpha, beta, alpha + beta, 1.0)

    @classmethod
    def model_b(cls, alpha: float, beta: float, eta: float = 1.0) -> "SpectralTriple":
        """Triple with ``gamma = eta - alpha - beta``."""
        return cls(alpha, beta, eta - alpha - beta, eta)

    def validate_model_a(self, tol: float = 1e-12) -> None:
        if abs(self.alpha + self.beta - self.gamma) > tol:
            raise BalancingError("balancing condition gamma = alpha + beta violated")
        for name in ("alpha", "beta", "gamma"):
            v = getattr(self, name)
            if v <= 0:
                raise DomainError(f"{name} must be positive")
            # integer values put a pole of W_gamma on the contour
            _generic(v, name)

    def validate_model_b(self, tol: float = 1e-12) -> None:
        if abs(self.alpha + self.beta + self.gamma - self.eta) > tol:
            raise BalancingError("balancing condition eta = alpha + beta + gamma violated")
        for name in ("alpha", "beta", "gamma"):
            v = getattr(self, name)
            if not 0 < v < self.eta:
                raise DomainError(f"{name} must lie in (0, eta)")
            _generic(v, name)

    def crossed(self) -> "SpectralTriple":
        """``(eta - alpha, eta - beta, eta - gamma)``."""
        return SpectralTriple(self.eta - self.alpha, self.eta - self.beta,
                              self.eta - self.gamma, self.eta)


class Balancing(str, Enum):
    """Balancing conditions of the six-flavour identities."""

    HYPERBOLIC = "hyperbolic"  # sum g = omega1 + omega2
    INDEX = "index"  # prod g = q, sum n = 0
    GAMMA = "gamma"  # sum g = 0
    SPHERE2 = "sphere2"  # sum g = 1, n1 = -n4, n2 = -n5, n3 = -n6

    @property
    def condition(self) -> str:
        return {
            "hyperbolic": "sum(g) = omega1 + omega2",
            "index": "prod(g) = q and sum(n) = 0",
            "gamma": "sum(g) = 0",
            "sphere2": "sum(g) = 1 and n1 = -n4, n2 = -n5, n3 = -n6",
        }[self.value]


@dataclass(frozen=True)
class FugacitySet:
    """Six fugacities ``g`` with integer charges ``n``.

    Call :meth:`check` with the moduli or nome the condition refers to.
    """

    g: tuple
    n: tuple = (0, 0, 0, 0, 0, 0)
    balancing: Balancing = Balancing.HYPERBOLIC

    def __post_init__(self):
        g = tuple(complex(x) for x in self.g)
        n = tuple(int(x) for x in self.n)
        if len(g) != 6 or len(n) != 6:
            raise DomainError("a fugacity set has exactly six entries")
        if not all(np.isfinite(x) for x in g):
            raise DomainError("fugacities must be finite")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "balancing", Balancing(self.balancing))

    @property
    def g_array(self) -> np.ndarray:
        return np.array(self.g, dtype=complex)

    @property
    def n_array(self) -> np.ndarray:
        return np.array(self.n, dtype=int)

    def residual(self, *, moduli: Moduli | None = None, q: complex | None = None) -> float:
        """Size of the violation of the balancing condition."""
        g = self.g_array
        kind = self.balancing
        if kind is Balancing.HYPERBOLIC:
            if moduli is None:
                raise DomainError("hyperbolic balancing needs the moduli")
            return abs(g.sum() - moduli.two_eta)
        if kind is Balancing.INDEX:
            if q is None:
                raise DomainError("index balancing needs q")
            # multiplicative condition compared in log space
            d = np.sum(np.log(g)) - np.log(complex(q))
            d = d.real + 1j * ((d.imag + np.pi) % (2 * np.pi) - np.pi)
            return abs(d)
        if kind is Balancing.GAMMA:
            return abs(g.sum())
        return abs(g.sum() - 1.0)

    def check(self, *, moduli: Moduli | None = None, q: complex | None = None,
              tol: float = _BALANCE_TOL) -> None:
        """Raise :class:`BalancingError` naming the violated condition."""
        res = self.residual(moduli=moduli, q=q)
        if res > tol:
            raise BalancingError(
                f"balancing condition {self.balancing.condition} violated "
                f"(residual {res:.3g})")
        n = self.n
        if self.balancing is Balancing.INDEX and sum(n) != 0:
            raise BalancingError("balancing condition sum(n) = 0 violated")
        if self.balancing is Balancing.SPHERE2 and not (
                n[0] == -n[3] and n[1] == -n[4] and n[2] == -n[5]):
            raise BalancingError(
                "charge pairing n1 = -n4, n2 = -n5, n3 = -n6 violated")


@dataclass(frozen=True)
class MultipletData:
    """Chiral multiplet data for the rank-one one-loop factors.

    ``flavor_charge`` is the flavour chemical potential in the natural
    variable of each geometry: a multiplicative fugacity for the index and
    an additive potential for the sphere partition functions.
    """

    delta: float
    gauge_weight: int = 1
    flavor_charge: complex = 0j
    flavor_discrete: int = 0

    def __post_init__(self):
        if self.gauge_weight not in (-2, -1, 0, 1, 2):
            raise DomainError("gauge_weight must lie in {-2, ..., 2}")


# ---------------------------------------------------------------------------
# Model A: Euler gamma weights
# ---------------------------------------------------------------------------

def weight_A_vertical(alpha, x, z, omega1: float = 1.0):
    """``Wbar_alpha(x, z) = Gamma((alpha +- i x +- i z)/omega1)``.

    Product of four Euler gammas; symmetric under ``x <-> z``.

    Examples
    --------
    >>> abs(weight_A_vertical(0.5, 0.0, 0.0) - np.pi ** 2) < 1e-12
    True
    """
    sx, _ = _spin(x)
    sz, _ = _spin(z)
    args = [(alpha + s * 1j * sx + t * 1j * sz) / omega1
            for s in (1, -1) for t in (1, -1)]
    return _out(np.exp(sum(log_gamma(a) for a in args)))


def weight_A_horizontal(alpha, x, z, omega1: float = 1.0):
    """``W_alpha(x, z) = Gamma((-alpha + i x +- i z)/omega1)
    / Gamma((alpha + i x +- i z)/omega1)``."""
    sx, _ = _spin(x)
    sz, _ = _spin(z)
    num = [(-alpha + 1j * sx + t * 1j * sz) / omega1 for t in (1, -1)]
    den = [(alpha + 1j * sx + t * 1j * sz) / omega1 for t in (1, -1)]
    return _out(np.exp(log_gamma_ratio(num, den)))


def self_A(z, convention: str = "reduced"):
    """Self-interaction ``S(z) = 1/Gamma(+-2iz)``.

    Parameters
    ----------
    z : Spin, float or array_like
    convention : {'reduced', 'unit'}
        ``'reduced'`` includes the factor ``1/(2 pi)`` that accompanies
        ``R = 2 omega1 Gamma(2a)Gamma(2b)/Gamma(2c)``; ``'unit'`` omits it
        and pairs with ``R = 4 pi Gamma(2a)Gamma(2b)/Gamma(2c)``.
    """
    sz, _ = _spin(z)
    sz = np.asarray(sz)
    with np.errstate(invalid="ignore"):
        val = np.exp(log_gamma_ratio([], [2j * sz, -2j * sz]))
    if convention == "reduced":
        return _out(val / (2 * np.pi))
    if convention == "unit":
        return _out(val)
    raise ValueError(f"unknown convention {convention!r}")


def r_factor_A(t: SpectralTriple, convention: str = "reduced",
               omega1: float = 1.0):
    """Spin-independent factor of model A; see :func:`self_A`."""
    base = np.exp(log_gamma_ratio([2 * t.alpha / omega1, 2 * t.beta / omega1],
                                  [2 * t.gamma / omega1]))
    if convention == "reduced":
        return _out(2 * omega1 * base)
    if convention == "unit":
        return _out(4 * np.pi * base)
    raise ValueError(f"unknown convention {convention!r}")


# ---------------------------------------------------------------------------
# Model B: complex gamma weights
# ---------------------------------------------------------------------------

def log_complex_gamma(x, N):
    """Log of ``G(x|N) = Gamma((N + x)/2) / Gamma(1 + (N - x)/2)``.

    Uses ``G(x|-N) = (-1)^N G(x|N)`` to evaluate negative ``N`` through
    ``|N|``, so the only poles are the genuine ones at ``x = -|N| - 2k``.
    """
    x = np.asarray(x, dtype=complex)
    N = np.asarray(N)
    a = np.abs(N)
    val = log_gamma_ratio([(a + x) / 2], [1 + (a - x) / 2])
    flip = (N < 0) & (a % 2 == 1)
    return _out(val + np.where(flip, 1j * np.pi, 0.0))


def complex_gamma(x, N):
    """``G(x|N)``; see :func:`log_complex_gamma`."""
    with np.errstate(invalid="ignore"):
        return _out(np.exp(log_complex_gamma(x, N)))


def log_weight_B(alpha, eta, si, sj, convention: str = "general"):
    """Log of :func:`weight_B`."""
    si_, mi = _spin(si)
    sj_, mj = _spin(sj)
    total = 0j
    for s in (1, -1):
        for t in (1, -1):
            total = total + log_complex_gamma(
                eta - alpha + s * 1j * si_ + t * 1j * sj_, s * mi + t * mj)
    if convention == "general":
        return _out(total)
    if convention == "unit":
        pre = log_gamma_ratio([(1 + alpha) / 2], [(1 - alpha) / 2])
        return _out(total + pre)
    raise ValueError(f"unknown convention {convention!r}")


def weight_B(alpha, eta, si, sj, convention: str = "general"):
    """Model B Boltzmann weight.

    ``W_alpha(i|j) = prod_{s,t = +-1} G(eta - alpha + s i sigma_i
    + t i sigma_j | s m_i + t m_j)``.

    Parameters
    ----------
    alpha, eta : float
    si, sj : Spin or (sigma, m)
    convention : {'general', 'unit'}
        ``'unit'`` multiplies by ``Gamma((1+alpha)/2)/Gamma((1-alpha)/2)``,
        which at ``eta = 1`` is the crossing-symmetric normalization of the
        weight written with ordinary gamma functions.

    Examples
    --------
    >>> from scipy.special import gamma as G
    >>> w = weight_B(0.4, 1.0, Spin(0.0, 0), Spin(0.0, 0), convention="unit")
    >>> abs(w / (G(0.3) / G(0.7)) ** 3 - 1) < 1e-12
    True
    """
    with np.errstate(invalid="ignore"):
        return _out(np.exp(log_weight_B(alpha, eta, si, sj, convention)))


def self_B(s, form: str = "polynomial"):
    """Self-interaction ``S(sigma, m) = (sigma^2 + m^2)/(2 pi)``.

    ``form='gamma'`` evaluates ``Gamma(m +- i sigma + 1)/Gamma(m +- i sigma)
    / (2 pi)`` instead (with ``|m|``, which leaves the value unchanged and
    keeps the numerator off the poles).
    """
    sigma, m = _spin(s)
    if form == "polynomial":
        return _out(np.real((sigma * sigma + m * m) / (2 * np.pi)))
    if form == "gamma":
        a = abs(m)
        num = [a + 1j * sigma + 1, a - 1j * sigma + 1]
        den = [a + 1j * sigma, a - 1j * sigma]
        with np.errstate(invalid="ignore"):
            return _out(np.real(np.exp(log_gamma_ratio(num, den))) / (2 * np.pi))
    raise ValueError(f"unknown form {form!r}")


def r_factor_B(t: SpectralTriple):
    """``R = prod_{x in (alpha, beta, gamma)} Gamma(x)/Gamma(eta - x)``."""
    xs = (t.alpha, t.beta, t.gamma)
    return _out(np.exp(log_gamma_ratio(list(xs), [t.eta - x for x in xs])))


# ---------------------------------------------------------------------------
# Superconformal index
# ---------------------------------------------------------------------------

def index_chiral_factor(mult: MultipletData, z, m: int, q):
    """Index one-loop factor of a single chiral multiplet weight.

    ``(q^{1 - D/2 + |N|/2} z^{-rho} f^{-1}; q) / (q^{D/2 + |N|/2} z^{rho} f; q)``
    with ``N = rho*m + flavor_discrete`` and ``f = flavor_charge`` a
    multiplicative fugacity (``f = 1`` when the charge is zero).
    """
    z = np.asarray(z, dtype=complex)
    f = complex(mult.flavor_charge) if mult.flavor_charge != 0 else 1.0
    rho = mult.gauge_weight
    N = abs(rho * m + mult.flavor_discrete)
    q = complex(q)
    num = q ** (1 - mult.delta / 2 + N / 2) * z ** (-rho) / f
    den = q ** (mult.delta / 2 + N / 2) * z ** rho * f
    return _out(np.exp(log_q_pochhammer(num, q) - log_q_pochhammer(den, q)))


def index_vector_factor(z, m: int, q, form: str = "measure"):
    """SU(2) vector factor of the index.

    ``form='measure'`` gives ``(1 - q^m z^2)(1 - q^m z^-2)/(q^m z^{6m})``,
    the measure of the six-flavour index integrand. ``form='pochhammer'``
    gives ``(q^{|m|} z^2; q)(q^{|m|} z^-2; q)``.
    """
    z = np.asarray(z, dtype=complex)
    q = complex(q)
    if form == "measure":
        qm = q ** m
        return _out((1 - qm * z * z) * (1 - qm / (z * z)) / (qm * z ** (6 * m)))
    if form == "pochhammer":
        qm = q ** abs(m)
        return _out(np.exp(log_q_pochhammer(qm * z * z, q)
                           + log_q_pochhammer(qm / (z * z), q)))
    raise ValueError(f"unknown form {form!r}")


# ---------------------------------------------------------------------------
# Squashed sphere and orbifold
# ---------------------------------------------------------------------------

def sphere3_chiral_factor(g, z, moduli: Moduli, log: bool = False):
    """Doublet factor ``gamma^(2)(g + iz) gamma^(2)(g - iz)``."""
    z = np.asarray(z, dtype=complex)
    val = (log_hyperbolic_gamma(g + 1j * z, moduli)
           + log_hyperbolic_gamma(g - 1j * z, moduli))
    return _out(val if log else np.exp(val))


def sphere3_vector_factor(z, moduli: Moduli, log: bool = False):
    """``1/(gamma^(2)(2iz) gamma^(2)(-2iz))``, zero at ``z = 0``."""
    z = np.asarray(z, dtype=complex)
    val = (log_inv_hyperbolic_gamma(2j * z, moduli)
           + log_inv_hyperbolic_gamma(-2j * z, moduli))
    if log:
        return _out(val)
    with np.errstate(invalid="ignore"):
        return _out(np.exp(val))


def orbifold_chiral_factor(g, n: int, z, m: int, params: OrbifoldParams,
                           log: bool = False):
    """Doublet factor ``Gamma_h(g + z, n + m) Gamma_h(g - z, n - m)``."""
    z = np.asarray(z, dtype=complex)
    val = (log_orbifold_gamma(g + z, n + m, params)
           + log_orbifold_gamma(g - z, n - m, params))
    return _out(val if log else np.exp(val))


def orbifold_vector_factor(z, m: int, params: OrbifoldParams, log: bool = False):
    """``1/(Gamma_h(2z, 2m) Gamma_h(-2z, -2m))``."""
    z = np.asarray(z, dtype=complex)
    val = (log_inv_orbifold_gamma(2 * z, 2 * m, params)
           + log_inv_orbifold_gamma(-2 * z, -2 * m, params))
    if log:
        return _out(val)
    with np.errstate(invalid="ignore"):
        return _out(np.exp(val))


# ---------------------------------------------------------------------------
# Two-sphere
# ---------------------------------------------------------------------------

def sphere2_chiral_factor(mult: MultipletData, z, m: int):
    """Two-sphere one-loop factor of a single chiral weight.

    ``Gamma(D/2 - i rho z - phi - N/2) / Gamma(1 - D/2 + i rho z + phi - N/2)``
    with ``N = rho*m + flavor_discrete`` and ``phi = flavor_charge``
    additive. Equivalently ``G(D - 2 i rho z - 2 phi | -N)``.
    """
    z = np.asarray(z, dtype=complex)
    rho = mult.gauge_weight
    x = mult.delta - 2j * rho * z - 2 * complex(mult.flavor_charge)
    N = -(rho * m + mult.flavor_discrete)
    return complex_gamma(x, N)


def sphere2_vector_factor(z, m: int, sign: str = "literal"):
    """SU(2) two-sphere vector factor ``s(m) (alpha(m)^2/4 + alpha(z)^2)``.

    With ``alpha(z) = 2z`` and ``alpha(m) = 2m`` the bracket is
    ``m^2 + 4 z^2``. ``sign='literal'`` uses ``s(m) = (-1)^m``;
    ``sign='root'`` uses ``(-1)^{alpha(m)} = 1``, which is the choice under
    which the six-flavour two-sphere identity holds.
    """
    z = np.asarray(z, dtype=complex)
    bracket = m * m + 4 * z * z
    if sign == "literal":
        return _out((-1) ** (m % 2) * bracket)
    if sign == "root":
        return _out(bracket)
    raise ValueError(f"unknown sign convention {sign!r}")
