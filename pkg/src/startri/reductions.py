"""Limits that carry one special-function level to the next.

Each experiment evaluates a deviation along a ladder of the limiting
parameter and returns a :class:`ConvergenceTable`. Convergence means the
deviations decrease after the first rung and the last one is below the
experiment's threshold.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DomainError
from .special_fn import (
    Moduli,
    OrbifoldParams,
    bernoulli_b22,
    log_gamma,
    log_gamma_h,
    log_gamma_ratio,
    log_hyperbolic_gamma,
    log_q_pochhammer,
)

__all__ = [
    "LimitKind",
    "LimitExperiment",
    "ConvergenceTable",
    "THRESHOLDS",
    "default_experiment",
    "run_experiment",
    "check_omega_limit",
    "check_q_limit",
    "check_r_limit",
    "check_asymptotic_behaviour",
    "asymptotic_sectors",
]


class LimitKind(str, Enum):
    OMEGA2_TO_INF = "omega2_to_inf"
    Q_TO_ONE = "q_to_one"
    R_TO_INF = "r_to_inf"
    ASYMPTOTIC = "asymptotic_behaviour"


THRESHOLDS = {
    LimitKind.OMEGA2_TO_INF: 1e-4,
    LimitKind.Q_TO_ONE: 1e-4,
    LimitKind.R_TO_INF: 1e-3,
    LimitKind.ASYMPTOTIC: 1e-6,
}


@dataclass(frozen=True)
class LimitExperiment:
    """A ladder of the limiting parameter and the point it acts on.

    The ladder must be strictly monotone with at least four rungs.
    """

    kind: LimitKind
    ladder: tuple
    base_point: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "kind", LimitKind(self.kind))
        lad = tuple(float(x) for x in self.ladder)
        if len(lad) < 4:
            raise DomainError("a limit ladder needs at least four rungs")
        d = np.diff(lad)
        if not (np.all(d > 0) or np.all(d < 0)):
            raise DomainError("limit ladder must be strictly monotone")
        object.__setattr__(self, "ladder", lad)


@dataclass(frozen=True)
class ConvergenceTable:
    """Deviations along a ladder and the convergence verdict."""

    kind: str
    ladder: tuple
    deviations: tuple
    threshold: float
    extra: dict = field(default_factory=dict)

    @property
    def final(self) -> float:
        return self.deviations[-1]

    @property
    def monotone(self) -> bool:
        # one pre-asymptotic rung is allowed
        d = np.asarray(self.deviations[1:])
        return bool(np.all(np.diff(d) < 0))

    @property
    def converged(self) -> bool:
        return self.monotone and self.final < self.threshold

    @property
    def orders(self) -> tuple:
        """``log(d_k / d_{k+1}) / log(x_{k+1} / x_k)`` between rungs."""
        d = np.asarray(self.deviations)
        x = np.asarray(self.ladder)
        with np.errstate(divide="ignore", invalid="ignore"):
            return tuple(np.log(d[:-1] / d[1:]) / np.abs(np.log(x[1:] / x[:-1])))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "ladder": list(self.ladder),
                "deviations": list(self.deviations), "threshold": self.threshold,
                "final": self.final, "monotone": self.monotone,
                "converged": self.converged, "extra": self.extra}


def _dev(log_lhs, log_rhs):
    return float(abs(np.expm1(log_lhs - log_rhs)))


def check_omega_limit(exp: LimitExperiment) -> ConvergenceTable:
    """``gamma(z; w1, w2) -> (w2/(2 pi w1))^(1/2 - z/w1) Gamma(z/w1)/sqrt(2 pi)``.

    The ladder holds ``|omega2|``; the direction is ``base_point['arg']``
    (default ``pi/2``, inside the product-representation domain).
    """
    z = complex(exp.base_point.get("z", 0.4))
    w1 = complex(exp.base_point.get("omega1", 1.0))
    phase = np.exp(1j * float(exp.base_point.get("arg", np.pi / 2)))
    devs = []
    for t in exp.ladder:
        w2 = t * phase
        lhs = log_hyperbolic_gamma(z, Moduli(w1, w2))
        rhs = ((0.5 - z / w1) * np.log(w2 / (2 * np.pi * w1)) + log_gamma(z / w1)
               - 0.5 * np.log(2 * np.pi))
        devs.append(_dev(lhs, rhs))
    return ConvergenceTable(exp.kind.value, exp.ladder, tuple(devs),
                            THRESHOLDS[exp.kind])


def check_q_limit(exp: LimitExperiment) -> ConvergenceTable:
    """``(q^a; q)/(q^b; q) (1 - q)^(a - b) -> Gamma(b)/Gamma(a)`` as ``q -> 1-``."""
    a = float(exp.base_point.get("a", 0.3))
    b = float(exp.base_point.get("b", 0.7))
    target = log_gamma_ratio([b], [a])
    devs = []
    for q in exp.ladder:
        if not 0 < q < 1:
            raise DomainError("q ladder must lie in (0, 1)")
        lhs = (log_q_pochhammer(q ** a, q) - log_q_pochhammer(q ** b, q)
               + (a - b) * np.log1p(-q))
        devs.append(_dev(lhs, target))
    return ConvergenceTable(exp.kind.value, exp.ladder, tuple(devs),
                            THRESHOLDS[exp.kind])


def _r_limit_target(z, m, omega, r, scale):
    return ((1 - z / omega) * np.log(r / scale)
            + log_gamma_ratio([z / (2 * omega) + m / 2],
                              [1 - z / (2 * omega) + m / 2]))


def check_r_limit(exp: LimitExperiment) -> ConvergenceTable:
    """``gamma_h(z, m; w, w) -> (r/(4 pi))^(1 - z/w) Gamma(z/(2w) + m/2)
    / Gamma(1 - z/(2w) + m/2)`` as ``r -> inf``.

    The evaluation uses the integral representation (equal moduli).
    ``extra`` records the deviation with ``2 pi`` in place of ``4 pi``
    and a regression of ``Re log[gamma_h / gamma ratio]`` on ``log r``,
    whose slope should be ``1 - z/w``.
    """
    z = complex(exp.base_point.get("z", 0.5))
    m = int(exp.base_point.get("m", 0))
    omega = float(exp.base_point.get("omega", 1.0))
    devs, alt, logs = [], [], []
    for r in exp.ladder:
        if r != int(r) or r < 1:
            raise DomainError("r ladder must hold positive integers")
        params = OrbifoldParams(int(r), Moduli(omega, omega))
        lhs = log_gamma_h(z, m, params, method="integral")
        devs.append(_dev(lhs, _r_limit_target(z, m, omega, r, 4 * np.pi)))
        alt.append(_dev(lhs, _r_limit_target(z, m, omega, r, 2 * np.pi)))
        base = log_gamma_ratio([z / (2 * omega) + m / 2], [1 - z / (2 * omega) + m / 2])
        logs.append(float(np.real(lhs - base)))
    slope, intercept = np.polyfit(np.log(exp.ladder), logs, 1)
    expected = float(np.real(1 - z / omega))
    extra = {"deviation_2pi": alt, "slope": float(slope),
             "expected_slope": expected,
             "slope_rel_err": float(abs(slope - expected) / abs(expected)),
             "intercept": float(intercept)}
    return ConvergenceTable(exp.kind.value, exp.ladder, tuple(devs),
                            THRESHOLDS[exp.kind], extra)


def asymptotic_sectors(moduli: Moduli):
    """Open argument intervals where ``exp(+-pi i B22/2) gamma -> 1``.

    Returns ``{+1: (lo, hi), -1: (lo, hi)}``.
    """
    a1, a2 = sorted((np.angle(moduli.omega1), np.angle(moduli.omega2)))
    return {1: (a2, a1 + np.pi), -1: (a2 - np.pi, a1)}


def check_asymptotic_behaviour(exp: LimitExperiment) -> ConvergenceTable:
    """``exp(sign * pi i B22(z)/2) gamma(z) -> 1`` along a ray.

    ``base_point``: ``moduli`` (pair), ``arg`` of the ray and ``sign``.
    ``extra['in_sector']`` tells whether the ray lies in the sector where
    that sign is expected to converge; rays outside it are negative
    controls.
    """
    w1, w2 = exp.base_point.get("moduli", (1.0, np.exp(1j * np.pi / 3)))
    mod = Moduli(complex(w1), complex(w2))
    psi = float(exp.base_point.get("arg", 2 * np.pi / 3))
    sign = int(exp.base_point.get("sign", 1))
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    devs = []
    for t in exp.ladder:
        z = t * np.exp(1j * psi)
        val = sign * 0.5j * np.pi * bernoulli_b22(z, mod) + log_hyperbolic_gamma(z, mod)
        with np.errstate(over="ignore"):
            devs.append(float(abs(np.expm1(val))))
    lo, hi = asymptotic_sectors(mod)[sign]
    return ConvergenceTable(exp.kind.value, exp.ladder, tuple(devs),
                            THRESHOLDS[exp.kind],
                            {"sign": sign, "arg": psi, "sector": [lo, hi],
                             "in_sector": bool(lo < psi < hi)})


_DEFAULTS = {
    LimitKind.OMEGA2_TO_INF: ((5, 10, 20, 40), {"z": 0.4, "omega1": 1.0}),
    LimitKind.Q_TO_ONE: ((0.9, 0.99, 0.999, 0.9999), {"a": 0.3, "b": 0.7}),
    LimitKind.R_TO_INF: ((4, 8, 16, 32), {"z": 0.5, "m": 0, "omega": 1.0}),
    LimitKind.ASYMPTOTIC: ((1, 2, 3, 4, 5),
                           {"moduli": (1.0, np.exp(1j * np.pi / 3)),
                            "arg": 2 * np.pi / 3, "sign": 1}),
}


def default_experiment(kind, **base) -> LimitExperiment:
    """Default ladder and base point of ``kind``, updated with ``base``."""
    kind = LimitKind(kind)
    ladder, point = _DEFAULTS[kind]
    return LimitExperiment(kind, ladder, {**point, **base})


_RUNNERS = {
    LimitKind.OMEGA2_TO_INF: check_omega_limit,
    LimitKind.Q_TO_ONE: check_q_limit,
    LimitKind.R_TO_INF: check_r_limit,
    LimitKind.ASYMPTOTIC: check_asymptotic_behaviour,
}


def run_experiment(exp: LimitExperiment) -> ConvergenceTable:
    return _RUNNERS[exp.kind](exp)
