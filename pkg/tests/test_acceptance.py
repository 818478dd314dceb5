"""Acceptance criteria, each at its stated tolerance and time budget.

Every test records a single pass/fail line, printed again in the terminal
summary under "acceptance".
"""

import json
import subprocess
import sys
import time
from functools import lru_cache

import numpy as np
import pytest

from startri.identities import IdentityCase, sample_case, sample_cases, verify
from startri.reductions import LimitKind, THRESHOLDS, default_experiment, run_experiment
from startri.special_fn import (
    Moduli,
    hyperbolic_gamma_integral,
    hyperbolic_gamma_product,
    log_gamma,
    log_hyperbolic_gamma,
    log_q_pochhammer,
)

SEED = 2024
N_SEEDS = 10


def _rel(log_ratio):
    # |exp(d) - 1| with d reduced mod 2 pi i
    d = np.asarray(log_ratio)
    d = d.real + 1j * np.angle(np.exp(1j * d.imag))
    return np.abs(np.expm1(d))


# -- 1 ----------------------------------------------------------------------

def test_special_function_unit_suite(acceptance):
    rng = np.random.default_rng(SEED)
    n = 256
    t0 = time.perf_counter()

    z = rng.uniform(-6, 6, n) + 1j * rng.uniform(-6, 6, n)
    z = z[np.abs(z - np.round(z.real)) > 0.05][:200]
    rec = _rel(log_gamma(z + 1) - log_gamma(z) - np.log(z))
    refl = _rel(log_gamma(z) + log_gamma(1 - z) + np.log(np.sin(np.pi * z)) - np.log(np.pi))

    q = rng.uniform(0, 0.95, n) * np.exp(2j * np.pi * rng.uniform(size=n))
    x = rng.uniform(0, 3, n) * np.exp(2j * np.pi * rng.uniform(size=n))
    keep = np.abs(1 - x) > 0.05
    q, x = q[keep][:200], x[keep][:200]
    poch = np.array([_rel(log_q_pochhammer(xi, qi) - np.log1p(-xi)
                          - log_q_pochhammer(qi * xi, qi)) for xi, qi in zip(x, q)])

    hyp = []
    for _ in range(200):
        w2 = rng.uniform(0.5, 2) * np.exp(1j * rng.uniform(0.15, np.pi - 0.15))
        mod = Moduli(1.0, w2)
        s = 1 + w2
        u = rng.uniform(0.1, 0.9) * s + 1j * rng.uniform(-1, 1)
        hyp.append(_rel(log_hyperbolic_gamma(u, mod) + log_hyperbolic_gamma(s - u, mod)))
    elapsed = time.perf_counter() - t0

    worst = {"gamma_recurrence": rec.max(), "gamma_reflection": refl.max(),
             "q_pochhammer_shift": poch.max(), "hyperbolic_reflection": max(hyp)}
    counts = (rec.size, refl.size, poch.size, len(hyp))
    ok = min(counts) >= 200 and max(worst.values()) < 1e-10 and elapsed < 10
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    acceptance(1, ok, f"{detail}; {min(counts)} points each; {elapsed:.1f}s")
    assert ok


# -- 2 ----------------------------------------------------------------------

def test_product_vs_integral(acceptance):
    rng = np.random.default_rng(SEED + 1)
    t0 = time.perf_counter()
    errs = []
    for _ in range(50):
        w1 = rng.uniform(0.6, 1.5) * np.exp(1j * rng.uniform(-0.6, 0.0))
        w2 = rng.uniform(0.6, 1.5) * np.exp(1j * rng.uniform(0.3, 0.9))
        mod = Moduli(w1, w2)
        u = rng.uniform(0.15, 0.85) * (w1 + w2) + 1j * rng.uniform(-0.5, 0.5)
        p = hyperbolic_gamma_product(u, mod)
        i = hyperbolic_gamma_integral(u, mod)
        errs.append(abs(p / i - 1))
    elapsed = time.perf_counter() - t0
    ok = max(errs) < 1e-9 and elapsed < 30
    acceptance(2, ok, f"max rel {max(errs):.1e} over 50 points; {elapsed:.1f}s")
    assert ok


# -- 3 ----------------------------------------------------------------------

SUITE = [
    ("hyperbolic_beta", {}),
    ("index_beta", {}),
    ("orbifold_beta", {"r": 1}),
    ("orbifold_beta", {"r": 2}),
    ("orbifold_beta", {"r": 3}),
    ("gamma_beta_reduced", {}),
    ("gamma_beta_asymmetric", {}),
    ("str_a_first", {}),
    ("str_a_second", {}),
    ("complex_beta_bilateral", {}),
    ("complex_beta_half_line", {}),
]


@lru_cache(maxsize=None)
def _suite_cases(kind, opts):
    opts = dict(opts)
    if kind == "complex_beta_half_line":
        # the same parameter sets as the bilateral kind, so the two can be
        # matched term by term
        return tuple(IdentityCase.from_dict({**c.to_dict(), "kind": kind})
                     for c in _suite_cases("complex_beta_bilateral", ()))
    return tuple(sample_cases(kind, N_SEEDS, SEED, **opts))


@lru_cache(maxsize=None)
def _suite_reports(kind, opts):
    return tuple(verify(c) for c in _suite_cases(kind, opts))


def test_identity_suite(acceptance):
    t0 = time.perf_counter()
    rows, failing = [], []
    for kind, opts in SUITE:
        key = tuple(sorted(opts.items()))
        reports = _suite_reports(kind, key)
        worst = max(abs(r.ratio - 1) for r in reports)
        label = kind + "".join(f"[{k}={v}]" for k, v in opts.items())
        n_pass = sum(abs(r.ratio - 1) < 1e-6 for r in reports)
        rows.append(f"{label} {n_pass}/{len(reports)} worst {worst:.1e}")
        if n_pass < len(reports) or len(reports) < 10:
            failing.append(label)
    elapsed = time.perf_counter() - t0
    for row in rows:
        print("   ", row)
    ok = not failing and elapsed < 15 * 60
    detail = f"{len(SUITE)} kinds x {N_SEEDS} seeds; {elapsed:.0f}s"
    if failing:
        detail += "; failing: " + ", ".join(failing)
    acceptance(3, ok, detail)
    assert ok, rows


# -- 4 ----------------------------------------------------------------------

def test_consistency_triangle(acceptance):
    orb_err = []
    for case in _suite_cases("orbifold_beta", (("r", 1),)):
        w1, w2 = case.moduli.omega1, case.moduli.omega2
        scale = 2 * np.sqrt(-w1 * w2)
        orb = verify(case)
        hyp = verify(IdentityCase("hyperbolic_beta", g=tuple(-1j * np.asarray(case.g)),
                                  moduli=Moduli(-1j * w1, -1j * w2)))
        orb_err += [abs(orb.lhs * scale / hyp.lhs - 1), abs(orb.rhs * scale / hyp.rhs - 1)]

    bil = _suite_reports("complex_beta_bilateral", ())
    half = _suite_reports("complex_beta_half_line", ())
    pairs = zip(_suite_cases("complex_beta_bilateral", ()),
                _suite_cases("complex_beta_half_line", ()), bil, half)
    sph_err = []
    for cb, ch, rb, rh in pairs:
        db, dh = cb.to_dict(), ch.to_dict()
        db.pop("kind"), dh.pop("kind")
        assert db == dh
        sph_err.append(abs(rh.lhs / rb.lhs - 1))
    ok = max(orb_err) < 1e-8 and max(sph_err) < 1e-8
    acceptance(4, ok, f"orbifold r=1 vs hyperbolic {max(orb_err):.1e}, "
                      f"half-line vs bilateral {max(sph_err):.1e}")
    assert ok


# -- 5 ----------------------------------------------------------------------

def test_half_line_structure(acceptance):
    reports = [verify(sample_case("half_line_equivalence", s, tol=1e-12))
               for s in range(N_SEEDS)]
    refl = max(r.diagnostics["reflection_max_rel"] for r in reports)
    gap = max(abs(r.ratio - 1) for r in reports)
    ok = refl < 1e-12 and gap < 1e-12 and all(r.passed for r in reports)
    acceptance(5, ok, f"term reflection {refl:.1e}, truncated sums {gap:.1e}")
    assert ok


# -- 6 ----------------------------------------------------------------------

def test_limit_suite(acceptance):
    rows, ok = [], True
    for kind in LimitKind:
        table = run_experiment(default_experiment(kind))
        ok &= table.converged and table.final < THRESHOLDS[kind]
        rows.append(f"{kind.value} {table.final:.1e}")
    controls = [run_experiment(default_experiment("asymptotic_behaviour", arg=a, sign=s))
                for a, s in ((2 * np.pi / 3, -1), (-np.pi / 3, 1), (np.pi / 6, 1))]
    ok &= not any(t.converged for t in controls)
    rows.append(f"{len(controls)} negative controls diverge: "
                f"{not any(t.converged for t in controls)}")
    acceptance(6, ok, ", ".join(rows))
    assert ok


# -- 7 ----------------------------------------------------------------------

CONFIG = """\
seed: 11
samples: 2
cases:
  - kind: hyperbolic_beta
  - kind: orbifold_beta
    options: {r: 2}
  - kind: gamma_beta_reduced
  - limit: q_to_one
"""


def _cli(*args, cwd):
    return subprocess.run([sys.executable, "-m", "startri.cli", *args],
                          capture_output=True, text=True, cwd=cwd).returncode


def test_determinism_and_exit_codes(tmp_path, acceptance):
    cfg = tmp_path / "camp.yaml"
    cfg.write_text(CONFIG)
    outs = []
    for k, workers in enumerate((1, 1, 2)):
        out = tmp_path / f"r{k}.json"
        assert _cli("verify", "--config", str(cfg), "--out", str(out),
                    "--workers", str(workers), cwd=tmp_path) == 0
        d = json.loads(out.read_text())
        d.pop("timing")
        outs.append(json.dumps(d, sort_keys=True))
    same = outs[0] == outs[1] == outs[2]

    fail_cfg = tmp_path / "fail.yaml"
    fail_cfg.write_text("seed: 1\ncases:\n  - kind: str_a_second\n")
    bad_cfg = tmp_path / "bad.yaml"
    bad_cfg.write_text("seed: 1\ncases:\n  - kind: hyperbolic_beta\n    g: [1, 2]\n")
    codes = (_cli("verify", "--config", str(fail_cfg), cwd=tmp_path),
             _cli("verify", "--config", str(bad_cfg), cwd=tmp_path),
             _cli("verify", cwd=tmp_path))
    ok = same and codes == (1, 2, 2)
    acceptance(7, ok, f"reports identical across reruns and workers: {same}; "
                      f"exit codes pass/fail/config/usage = 0/{codes[0]}/{codes[1]}/{codes[2]}")
    assert ok
