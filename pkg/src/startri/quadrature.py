"""Real-line and unit-circle quadrature, and truncated sums over charges.

The real-line rule is the sinh-sinh double exponential transform
``x = sinh(pi/2 sinh t)`` applied on a truncated window whose half-width
is chosen by probing the decay of the integrand. Successive halvings of
the step reuse all previous nodes. The unit-circle rule is the periodic
trapezoid rule with node doubling.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .errors import NoConvergence, TailTooFat
from .special_fn import epsilon_weight

__all__ = [
    "QuadratureSpec",
    "SumSpec",
    "IntegrationResult",
    "SumResult",
    "integrate_real_line",
    "integrate_unit_circle",
    "bilateral_sum",
    "half_line_weighted_sum",
]

_EPS = np.finfo(float).eps
_MAX_WINDOW = 1e15


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and limits for the integrators.

    Attributes
    ----------
    abs_tol, rel_tol : float
        Refinement stops once the error estimate is below
        ``max(abs_tol, rel_tol * |value|)``.
    max_refinements : int
        Maximum number of step halvings (real line) or node doublings
        (unit circle).
    cutoff : float
        Initial truncation half-width of the real line.
    tail_tol : float
        The window is accepted when ``|f(+-cutoff)| <= tail_tol * peak``.
    max_cutoff : float
        Largest half-width probed directly. Beyond it the window is
        extended along a fitted power-law decay.
    min_nodes : int
        Initial node count of the unit-circle rule.
    """

    abs_tol: float = 1e-14
    rel_tol: float = 1e-11
    max_refinements: int = 12
    cutoff: float = 8.0
    tail_tol: float = 1e-15
    max_cutoff: float = 4096.0
    min_nodes: int = 64

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0 or self.tail_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.cutoff <= 0 or self.max_cutoff < self.cutoff:
            raise ValueError("need 0 < cutoff <= max_cutoff")
        if self.max_refinements < 1:
            raise ValueError("max_refinements must be >= 1")
        if self.min_nodes < 4:
            raise ValueError("min_nodes must be >= 4")

    def tightened(self, factor: float = 0.5) -> "QuadratureSpec":
        """Copy with both tolerances multiplied by ``factor``."""
        return replace(self, abs_tol=self.abs_tol * factor,
                       rel_tol=self.rel_tol * factor)


@dataclass(frozen=True)
class SumSpec:
    """Truncation control for sums over integer charges.

    The sum stops after two consecutive shells contribute less than
    ``tail_tol`` times the partial sum, but never before
    ``initial_halfwidth``.
    """

    initial_halfwidth: int = 4
    tail_tol: float = 1e-12
    max_halfwidth: int = 400

    def __post_init__(self):
        if self.initial_halfwidth < 1:
            raise ValueError("initial_halfwidth must be >= 1")
        if self.tail_tol <= 0:
            raise ValueError("tail_tol must be positive")
        if self.max_halfwidth < self.initial_halfwidth:
            raise ValueError("max_halfwidth must be >= initial_halfwidth")


@dataclass(frozen=True)
class IntegrationResult:
    """Value and error estimate of a quadrature.

    Unpacks as ``value, err = result``.
    """

    value: complex
    err: float
    n_evals: int = 0
    levels: int = 0
    cutoff: float = float("nan")
    tail_err: float = 0.0

    def __iter__(self):
        yield self.value
        yield self.err


@dataclass(frozen=True)
class SumResult:
    """Value and error estimate of a truncated sum.

    ``err`` is the tail bound plus the summed errors of the terms.
    """

    value: complex
    err: float
    halfwidth: int = 0
    tail_bound: float = 0.0
    term_err: float = 0.0
    terms: dict = field(default_factory=dict, repr=False, compare=False)

    def __iter__(self):
        yield self.value
        yield self.err


# ---------------------------------------------------------------------------
# Real line
# ---------------------------------------------------------------------------

def _eval(f, x):
    return np.asarray(f(np.asarray(x, dtype=float)), dtype=complex)


def _probe_window(f, spec):
    """Choose the truncation half-width.

    The window doubles until ``|f(+-c)| <= tail_tol * peak``. If that does
    not happen by ``max_cutoff`` the decay exponent ``p`` of a power law
    ``|f| ~ |x|^-p`` is fitted on the last octaves and the window is
    extended along that law until the predicted tail mass is negligible.
    Returns the half-width and the estimated truncation error.
    """
    c = spec.cutoff
    core = np.linspace(-min(c, 8.0), min(c, 8.0), 401)
    while True:
        grid = np.concatenate([core, np.linspace(-c, c, 401)])
        peak = np.max(np.abs(_eval(f, grid)))
        edge = np.abs(_eval(f, [-c, c]))
        if not np.isfinite(peak) or not np.all(np.isfinite(edge)):
            raise NoConvergence("integrand is not finite on the probe grid")
        if edge.max() <= spec.tail_tol * peak:
            return c, float(edge.sum() * c)
        if 2 * c > spec.max_cutoff:
            break
        c *= 2
    powers = []
    for s in (1.0, -1.0):
        v1, v2, v4 = np.abs(_eval(f, [s * c, s * c / 2, s * c / 4]))
        powers += [np.log2(v2 / v1), np.log2(v4 / v2)]
    p = min(powers)
    if not p > 1.5:
        raise TailTooFat(
            f"integrand decays like |x|^-{p:.2f} at |x| = {c:g}; "
            "need faster than |x|^-1.5")
    mass = edge.max() * c / (p - 1)
    grow = (mass / (spec.tail_tol * peak)) ** (1.0 / (p - 1))
    c_ext = min(c * max(grow, 1.0), _MAX_WINDOW)
    tail = mass * (c / c_ext) ** (p - 1)
    return c_ext, float(2 * tail)


def _de_nodes(t):
    s = 0.5 * np.pi * np.sinh(t)
    x = np.sinh(s)
    w = 0.5 * np.pi * np.cosh(t) * np.cosh(s)
    return x, w


def integrate_real_line(f: Callable, spec: QuadratureSpec | None = None,
                        ) -> IntegrationResult:
    """Integrate ``f`` over the real line.

    Parameters
    ----------
    f : callable
        Vectorized integrand, mapping a float array to a complex array.
    spec : QuadratureSpec, optional

    Returns
    -------
    IntegrationResult
        ``value, err``; ``err`` is the last step-halving difference plus
        the truncation estimate, floored by a roundoff bound.

    Raises
    ------
    TailTooFat
        If the integrand does not decay within ``spec.max_cutoff``.
    NoConvergence
        If ``spec.max_refinements`` halvings do not meet the tolerance.

    Examples
    --------
    >>> res = integrate_real_line(lambda x: np.exp(-x * x))
    >>> abs(res.value - np.sqrt(np.pi)) < 1e-12
    True
    """
    spec = spec or QuadratureSpec()
    c, tail_err = _probe_window(f, spec)
    t_max = np.arcsinh(2.0 / np.pi * np.arcsinh(c))
    n0 = 8
    h = t_max / n0
    t = h * np.arange(-n0, n0 + 1)
    x, w = _de_nodes(t)
    fx = _eval(f, x)
    total = h * np.sum(fx * w)
    abs_sum = h * np.sum(np.abs(fx) * w)
    n_evals = t.size
    prev = None
    for level in range(1, spec.max_refinements + 1):
        h /= 2
        k = np.arange(-2 * n0 * 2 ** (level - 1) + 1,
                      2 * n0 * 2 ** (level - 1), 2)
        x, w = _de_nodes(h * k)
        fx = _eval(f, x)
        prev = total
        total = 0.5 * total + h * np.sum(fx * w)
        abs_sum = 0.5 * abs_sum + h * np.sum(np.abs(fx) * w)
        n_evals += k.size
        diff = abs(total - prev)
        if not np.isfinite(diff):
            raise NoConvergence("non-finite integrand values")
        value = total
        tol = max(spec.abs_tol, spec.rel_tol * abs(value))
        if level >= 2 and diff + tail_err <= tol:
            err = max(diff, 64 * _EPS * abs_sum) + tail_err
            return IntegrationResult(complex(value), float(err), n_evals,
                                     level, float(c), tail_err)
    raise NoConvergence(
        f"real-line quadrature not converged after {spec.max_refinements} "
        f"halvings (last change {diff:.3g}, target {tol:.3g})")


# ---------------------------------------------------------------------------
# Unit circle
# ---------------------------------------------------------------------------

def integrate_unit_circle(f: Callable, spec: QuadratureSpec | None = None, *,
                          min_nodes: int | None = None) -> IntegrationResult:
    """Integrate ``f`` around ``|z| = 1`` against ``dz/(2 pi i z)``.

    Parameters
    ----------
    f : callable
        Vectorized integrand on complex arrays.
    spec : QuadratureSpec, optional
    min_nodes : int, optional
        Lower bound on the initial node count; needed when ``f`` contains
        high Laurent powers that would alias on a coarse grid.

    Returns
    -------
    IntegrationResult

    Examples
    --------
    >>> value, err = integrate_unit_circle(lambda z: z ** 3 + 2.0)
    >>> abs(value - 2.0) < 1e-14
    True
    """
    spec = spec or QuadratureSpec()
    n = max(spec.min_nodes, min_nodes or 0)
    theta = 2 * np.pi * np.arange(n) / n
    fz = np.asarray(f(np.exp(1j * theta)), dtype=complex)
    total = fz.mean()
    abs_mean = np.abs(fz).mean()
    n_evals = n
    for level in range(1, spec.max_refinements + 1):
        theta = 2 * np.pi * (np.arange(n) + 0.5) / n
        fz = np.asarray(f(np.exp(1j * theta)), dtype=complex)
        prev = total
        total = 0.5 * (total + fz.mean())
        abs_mean = 0.5 * (abs_mean + np.abs(fz).mean())
        n_evals += n
        n *= 2
        diff = abs(total - prev)
        if not np.isfinite(diff):
            raise NoConvergence("non-finite integrand values")
        tol = max(spec.abs_tol, spec.rel_tol * abs(total))
        if diff <= tol:
            err = max(diff, 64 * _EPS * abs_mean)
            return IntegrationResult(complex(total), float(err), n_evals,
                                     level, 1.0, 0.0)
    raise NoConvergence(
        f"unit-circle quadrature not converged with {n} nodes "
        f"(last change {diff:.3g}, target {tol:.3g})")


# ---------------------------------------------------------------------------
# Charge sums
# ---------------------------------------------------------------------------

def _split(term_value):
    if isinstance(term_value, (IntegrationResult, SumResult)):
        return complex(term_value.value), float(term_value.err)
    if isinstance(term_value, tuple):
        return complex(term_value[0]), float(term_value[1])
    return complex(term_value), 0.0


def _tail_bound(shells):
    # ratio-test estimate of the remaining shells with a safety factor of 10
    return 10.0 * _ratio_tail(shells)


def _ratio_tail(shells):
    last = abs(shells[-1])
    if len(shells) < 2 or last == 0.0:
        return last
    prev = abs(shells[-2])
    rho = last / prev if prev > 0 else 1.0
    if rho >= 1.0:
        return last * len(shells)
    return max(last, last * rho / (1.0 - rho))


def _shell_sum(shell, start, spec, label):
    partial = 0j
    term_err = 0.0
    shells = []
    terms = {}
    streak = 0
    m = start
    while True:
        value, err, parts = shell(m)
        terms.update(parts)
        partial += value
        term_err += err
        shells.append(value)
        if m >= spec.initial_halfwidth:
            if abs(value) <= spec.tail_tol * abs(partial):
                streak += 1
            else:
                streak = 0
            if streak >= 2:
                break
        if m >= spec.max_halfwidth:
            raise NoConvergence(
                f"{label} not converged at halfwidth {m}: last shell "
                f"{abs(value):.3g} vs partial {abs(partial):.3g}")
        m += 1
    tail = _tail_bound(shells)
    return SumResult(partial, tail + term_err, m, tail, term_err, terms)


def bilateral_sum(term: Callable[[int], complex],
                  spec: SumSpec | None = None) -> SumResult:
    """Truncated sum of ``term(m)`` over all integers.

    Shells ``term(M) + term(-M)`` are added until two consecutive shells
    fall below ``tail_tol`` times the partial sum. ``term`` may return a
    number, a ``(value, err)`` pair or an :class:`IntegrationResult`;
    term errors are added linearly to the tail bound.

    Examples
    --------
    >>> value, err = bilateral_sum(lambda m: 0.5 ** abs(m))
    >>> abs(value - 3.0) < 1e-11
    True
    """
    spec = spec or SumSpec()

    def shell(m):
        if m == 0:
            v, e = _split(term(0))
            return v, e, {0: v}
        vp, ep = _split(term(m))
        vm, em = _split(term(-m))
        return vp + vm, ep + em, {m: vp, -m: vm}

    return _shell_sum(shell, 0, spec, "bilateral sum")


def half_line_weighted_sum(term: Callable[[int], complex],
                           weight: Callable[[int], float] = epsilon_weight,
                           spec: SumSpec | None = None,
                           cap: int | None = None) -> SumResult:
    """Sum of ``weight(m) * term(m)`` over ``m >= 0``.

    With ``cap`` the sum runs over ``0 <= m <= cap`` exactly; otherwise it
    is truncated as in :func:`bilateral_sum`.

    Examples
    --------
    >>> half_line_weighted_sum(lambda m: 1.0, cap=2).value
    (5+0j)
    """
    spec = spec or SumSpec()
    if cap is not None:
        total = 0j
        err = 0.0
        terms = {}
        for m in range(cap + 1):
            v, e = _split(term(m))
            terms[m] = v
            total += weight(m) * v
            err += weight(m) * e
        return SumResult(total, err, cap, 0.0, err, terms)

    def shell(m):
        v, e = _split(term(m))
        return weight(m) * v, weight(m) * e, {m: v}

    return _shell_sum(shell, 0, spec, "half-line sum")
