import json

import numpy as np
import pytest

from startri.errors import DomainError
from startri.reductions import (
    LimitExperiment,
    LimitKind,
    ConvergenceTable,
    asymptotic_sectors,
    default_experiment,
    run_experiment,
)
from startri.special_fn import Moduli


@pytest.mark.parametrize("kind", list(LimitKind))
def test_default_limits_converge(kind):
    table = run_experiment(default_experiment(kind))
    assert table.converged, table.to_dict()
    json.dumps(table.to_dict())


def test_omega_limit_is_second_order():
    table = run_experiment(default_experiment("omega2_to_inf"))
    # deviation decays like omega2^-2
    assert all(abs(o - 2) < 0.05 for o in table.orders)


def test_q_limit_other_exponents():
    table = run_experiment(default_experiment("q_to_one", a=1.5, b=0.5))
    assert table.converged
    trivial = run_experiment(default_experiment("q_to_one", a=0.4, b=0.4))
    assert max(trivial.deviations) < 1e-13


def test_r_limit_scale_and_slope():
    table = run_experiment(default_experiment("r_to_inf"))
    assert table.converged
    # with 2 pi in place of 4 pi the gap sticks near 1 - 2^(z - 1)
    assert np.allclose(table.extra["deviation_2pi"], 1 - 2 ** -0.5, atol=0.01)
    assert table.extra["slope_rel_err"] < 0.05


@pytest.mark.slow
def test_r_limit_nonzero_flux():
    table = run_experiment(default_experiment("r_to_inf", m=1))
    assert table.converged
    assert table.extra["slope_rel_err"] < 0.05


def test_asymptotic_lower_half_plane():
    exp = default_experiment("asymptotic_behaviour", arg=-np.pi / 3, sign=-1)
    table = run_experiment(exp)
    assert table.extra["in_sector"]
    assert table.converged


@pytest.mark.parametrize("arg, sign", [(2 * np.pi / 3, -1), (-np.pi / 3, 1)])
def test_asymptotic_negative_controls(arg, sign):
    table = run_experiment(default_experiment("asymptotic_behaviour", arg=arg, sign=sign))
    assert not table.extra["in_sector"]
    assert not table.converged
    assert table.final > 0.1


def test_sectors():
    secs = asymptotic_sectors(Moduli(1.0, np.exp(1j * np.pi / 3)))
    assert secs[1] == pytest.approx((np.pi / 3, np.pi))
    assert secs[-1] == pytest.approx((-2 * np.pi / 3, 0.0))


def test_ladder_validation():
    with pytest.raises(DomainError):
        LimitExperiment("q_to_one", (0.9, 0.99, 0.999))
    with pytest.raises(DomainError):
        LimitExperiment("q_to_one", (0.9, 0.99, 0.98, 0.999))
    with pytest.raises(ValueError):
        LimitExperiment("no_such_limit", (1, 2, 3, 4))
    with pytest.raises(DomainError):
        run_experiment(LimitExperiment("q_to_one", (0.5, 0.9, 0.99, 1.5)))
    with pytest.raises(DomainError):
        run_experiment(LimitExperiment("r_to_inf", (1.5, 2, 3, 4)))
    with pytest.raises(DomainError):
        run_experiment(default_experiment("asymptotic_behaviour", sign=0))


def test_table_verdict():
    t = ConvergenceTable("x", (1, 2, 3, 4), (0.5, 1e-2, 1e-3, 1e-5), 1e-4)
    assert t.monotone and t.converged
    # a first pre-asymptotic rung may go up
    t = ConvergenceTable("x", (1, 2, 3, 4), (1e-3, 1e-2, 1e-3, 1e-5), 1e-4)
    assert t.converged
    t = ConvergenceTable("x", (1, 2, 3, 4), (1e-2, 1e-3, 1e-4, 2e-4), 1e-3)
    assert not t.converged
