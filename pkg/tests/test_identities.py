import json

import numpy as np
import pytest

from startri.errors import BalancingError, DomainError
from startri.identities import (
    KIND_INFO,
    GammaProduct,
    IdentityCase,
    IdentityKind,
    VerificationReport,
    case_seeds,
    check_balancing,
    complex_beta_integrand,
    half_line_integrand,
    orbifold_sector_weight,
    sample_case,
    sample_cases,
    verify,
    verify_str_A,
)
from startri.identities import _index_pair_log, _str_a_product
from startri.special_fn import Moduli, log_q_pochhammer
from startri.weights import (
    SpectralTriple,
    Spin,
    self_A,
    weight_A_horizontal,
    weight_A_vertical,
)


def test_catalog_complete():
    assert len(IdentityKind) == 12
    assert set(KIND_INFO) == set(IdentityKind)
    assert all(info.balancing for info in KIND_INFO.values())


def test_case_round_trip():
    for kind in IdentityKind:
        case = sample_case(kind, 7)
        d = json.loads(json.dumps(case.to_dict()))
        back = IdentityCase.from_dict(d, case.quad, case.sums)
        assert back.to_dict() == case.to_dict()


def test_sampling_is_deterministic():
    a = sample_cases("hyperbolic_beta", 3, seed=42)
    b = sample_cases("hyperbolic_beta", 3, seed=42)
    assert [c.to_dict() for c in a] == [c.to_dict() for c in b]
    seeds = case_seeds(42, "hyperbolic_beta", 20)
    assert len(set(seeds)) == 20
    assert case_seeds(42, "index_beta", 3) != seeds[:3]


def test_tolerance_must_be_positive():
    with pytest.raises(DomainError):
        IdentityCase("hyperbolic_beta", tol=0)


# -- balancing validation ----------------------------------------------------

@pytest.mark.parametrize("kind", [k for k in IdentityKind
                                  if k is not IdentityKind.GAMMA_BETA_REDUCED])
def test_balancing_violation_named(kind):
    case = sample_case(kind, 3)
    check_balancing(case)
    d = case.to_dict()
    if "g" in d:
        d["g"][0][0] += 0.01
    elif kind in (IdentityKind.STR_A_FIRST, IdentityKind.STR_A_SECOND):
        d["triple"][2] += 0.01
    else:
        d["triple"][3] += 0.01
    with pytest.raises(BalancingError, match="balancing condition"):
        check_balancing(IdentityCase.from_dict(d))


def test_orbifold_charge_condition():
    case = sample_case("orbifold_beta", 1, r=3)
    d = case.to_dict()
    d["n"][0] += 1
    with pytest.raises(BalancingError, match="mod r"):
        check_balancing(IdentityCase.from_dict(d))


def test_sphere2_pairing_condition():
    g = (0.15, 0.2, 0.1, 0.15, 0.2, 0.2)
    bad = IdentityCase("complex_beta_bilateral", g=g, n=(1, 0, 0, 1, 0, 0))
    with pytest.raises(BalancingError, match="n1 = -n4"):
        check_balancing(bad)


def test_reduced_needs_five():
    with pytest.raises(DomainError):
        check_balancing(IdentityCase("gamma_beta_reduced", g=(0.1,) * 6))


# -- fast identities ---------------------------------------------------------

@pytest.mark.parametrize("kind", ["hyperbolic_beta", "index_beta", "gamma_beta_reduced",
                                  "gamma_beta_balanced", "str_a_first"])
@pytest.mark.parametrize("seed", [0, 1])
def test_identity_holds(kind, seed):
    report = verify(sample_case(kind, seed))
    assert report.passed, report.to_dict()
    assert abs(report.ratio - 1) < 1e-9


@pytest.mark.parametrize("r", [1, 2, 3])
def test_orbifold_identity(r):
    report = verify(sample_case("orbifold_beta", 11, r=r))
    assert report.passed
    assert abs(report.ratio - 1) < 1e-10


def test_orbifold_sector_weights():
    assert [orbifold_sector_weight(m, 4) for m in range(3)] == [1, 2, 1]
    assert [orbifold_sector_weight(m, 3) for m in range(2)] == [1, 2]


def test_report_round_trip():
    report = verify(sample_case("gamma_beta_reduced", 2))
    d = json.loads(json.dumps(report.to_dict()))
    back = VerificationReport.from_dict(d)
    assert back.ratio == report.ratio and back.verdict == report.verdict
    assert back.to_dict() == d


def test_permutation_invariance():
    case = sample_case("hyperbolic_beta", 5)
    a = verify(case)
    perm = IdentityCase("hyperbolic_beta", g=case.g[::-1], moduli=case.moduli)
    b = verify(perm)
    assert abs(a.lhs / b.lhs - 1) < 1e-12
    assert abs(a.rhs / b.rhs - 1) < 1e-12


def test_orbifold_r1_matches_hyperbolic():
    case = sample_case("orbifold_beta", 4, r=1)
    w1, w2 = case.moduli.omega1, case.moduli.omega2
    scale = 2 * np.sqrt(-w1 * w2)
    orb = verify(case)
    hyp = verify(IdentityCase("hyperbolic_beta", g=tuple(-1j * np.array(case.g)),
                              moduli=Moduli(-1j * w1, -1j * w2)))
    assert abs(orb.lhs * scale / hyp.lhs - 1) < 1e-8
    assert abs(orb.rhs * scale / hyp.rhs - 1) < 1e-8


# -- expected failures of the printed asymmetric identities -------------------

def test_asymmetric_gamma_identity_fails_as_printed():
    report = verify(sample_case("gamma_beta_asymmetric", 0))
    assert not report.passed
    assert abs(report.ratio - 1) > 1e-2


def test_second_str_orientation_fails_as_printed():
    report = verify(sample_case("str_a_second", 0))
    assert not report.passed
    assert abs(report.ratio - 1) > 1e-2


# -- building blocks ----------------------------------------------------------

def test_index_signed_charge_relation():
    # F(x, N) = (q^{1+N/2}/x; q)/(q^{N/2} x; q) obeys
    # F(x, -k) = F(x, k) (-q^{1/2}/x)^k
    q, x = 0.3, 0.7 * np.exp(0.4j)

    def F(N):
        return np.exp(log_q_pochhammer(q ** (1 + N / 2) / x, q)
                      - log_q_pochhammer(q ** (N / 2) * x, q))

    for k in range(1, 5):
        assert abs(F(-k) / (F(k) * (-np.sqrt(q) / x) ** k) - 1) < 1e-12


def test_index_pair_matches_product():
    q, g, z = 0.25, 0.8 * np.exp(0.3j), np.exp(0.9j)
    for n, m in ((0, 0), (1, -2), (-1, 1)):
        brute = 1.0 + 0j
        a, b = q ** ((m + n) / 2), q ** ((n - m) / 2)
        for j in range(400):
            qj = q ** j
            brute *= ((1 - q * a / (g * z) * qj) * (1 - q * b * z / g * qj)
                      / ((1 - a * g * z * qj) * (1 - b * g / z * qj)))
        assert abs(np.exp(_index_pair_log(g, n, z, m, q)) / brute - 1) < 1e-12


def test_gamma_product_matches_weights():
    t = SpectralTriple.model_a(0.2, 0.15)
    si, sj, sk = 0.3, -0.4, 0.7
    gp = _str_a_product(t, si, sj, sk, "first")
    # self_A vanishes at s = 0, so stay off it
    for s in np.linspace(-2, 2, 10):
        w = (self_A(s) * weight_A_vertical(t.beta, s, sj)
             * weight_A_horizontal(t.gamma, sk, s) * weight_A_vertical(t.alpha, si, s))
        assert abs(gp(s) / w - 1) < 1e-12


def test_gamma_product_residues():
    # one crossed pole: int Gamma(a + iz) Gamma(a - iz) dz continued to a < 0
    gp = GammaProduct(((-0.3 + 0j, 1), (-0.3 + 0j, -1)), ())
    assert len(gp.crossed_poles()) == 2
    assert gp.pole_gap() == pytest.approx(0.3)


def test_str_a_explicit_which():
    case = sample_case("str_a_first", 3)
    assert verify_str_A(case, "first").passed
    with pytest.raises(ValueError):
        verify_str_A(case, "third")


def test_sphere2_summands_agree_on_half_line():
    case = sample_case("complex_beta_bilateral", 2)
    t, (si, sj, sk) = case.triple, case.spins
    g = np.array([t.alpha / 2 + 0.5j * si.sigma, t.beta / 2 + 0.5j * sj.sigma,
                  t.gamma / 2 + 0.5j * sk.sigma, t.alpha / 2 - 0.5j * si.sigma,
                  t.beta / 2 - 0.5j * sj.sigma, t.gamma / 2 - 0.5j * sk.sigma])
    n = np.array([si.m, sj.m, sk.m, -si.m, -sj.m, -sk.m])
    # the m = 0 summand vanishes at z = 0
    z = np.linspace(-3, 3, 40)
    for m in range(4):
        a = complex_beta_integrand(g, n, z, m)
        b = half_line_integrand(g, n, z, m)
        assert np.max(np.abs(a - b) / np.abs(a)) < 1e-12
        r = complex_beta_integrand(g, n, -z, -m)
        assert np.max(np.abs(a - r) / np.abs(a)) < 1e-12


def test_half_line_equivalence_kind():
    report = verify(sample_case("half_line_equivalence", 0))
    assert report.passed
    assert report.diagnostics["reflection_max_rel"] < 1e-12


@pytest.mark.slow
def test_str_b():
    report = verify(sample_case("str_b", 0))
    assert report.passed
    # the literal relation is off by the Weyl order times the Jacobian
    assert abs(report.diagnostics["literal_ratio"] - 4) < 1e-6


def test_spins_accept_tuples():
    case = IdentityCase("str_b", triple=SpectralTriple.model_b(0.3, 0.3),
                        spins=((0.1, 1), (0.2, 0), (0.3, -1)))
    assert case.spins[0] == Spin(0.1, 1)
