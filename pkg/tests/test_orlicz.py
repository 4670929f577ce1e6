"""Weight machinery checks: Young integrals, inversions, duality."""

import numpy as np
import pytest

from fdchk.errors import BracketFailure, NonPositivePhi, NonMonotone
from fdchk.grids import GridDomain, GridField
from fdchk.orlicz import (AuxBundle, PhiSpec, duality_check, luxemburg_norm,
                          orlicz_integral, validate_phi)

PHI_CONST_1 = PhiSpec.custom("1", "0", r=0.0)      # power p = 2 (phi == 1)
PHI_CONST_2 = PhiSpec.custom("2", "0", r=0.0)      # Phi(s) = s^2


def aux_of(spec):
    return AuxBundle(spec)


def log_samples(lo=1e-6, hi=1e6, num=1000):
    return np.geomspace(lo, hi, num)


# -- validation ------------------------------------------------------------

def test_validate_power3_passes_with_r1():
    report = validate_phi(PhiSpec.builtin("power", p=3))
    assert report.all_passed
    assert report.r == 1.0
    assert report.c1 is not None and report.c2 is not None
    assert report.c2 <= 10.0 * report.c1


def test_validate_constant_phi_r0_branch():
    report = validate_phi(PhiSpec.builtin("power", p=2))
    assert report.all_passed
    assert report.r == 0.0


def test_validate_negative_phi_raises():
    spec = PhiSpec.custom("-s", "-1", r=0.0)
    with pytest.raises(NonPositivePhi):
        validate_phi(spec)


def test_validate_strict_raises_on_nonmonotone():
    # s*phi = s/(1+s^2) is decreasing past s = 1, phi positive throughout
    spec = PhiSpec.custom("1/(1+s^2)", "-2*s/(1+s^2)^2", r=0.0)
    with pytest.raises(NonMonotone):
        validate_phi(spec, strict=True)


def test_validate_all_builtins_except_known_failures():
    good = [PhiSpec.builtin("power", p=1.5), PhiSpec.builtin("power", p=4),
            PhiSpec.builtin("zygmund", p=3), PhiSpec.builtin("exp_power", p=2),
            PhiSpec.builtin("ratio4"), PhiSpec.builtin("ratio_log")]
    for spec in good:
        assert validate_phi(spec).all_passed, spec.kind
    # arctan_def: s*phi(s) = s^2/(1+s^2) has range (0, 1), condition 3 fails
    rep = validate_phi(PhiSpec.builtin("arctan_def"))
    assert not rep.conditions["c3_range"].passed
    assert rep.sampled_range[1] <= 1.0
    # exp_power(1): s*phi(s) = e^s has range (1, inf) and phi blows up at 0
    rep = validate_phi(PhiSpec.builtin("exp_power", p=1))
    assert not rep.conditions["c3_range"].passed


# -- Young function ---------------------------------------------------------

def test_young_phi_const2_is_square():
    assert aux_of(PHI_CONST_2).Phi(3.0) == pytest.approx(9.0, abs=1e-10)


def test_young_phi_power4_analytic():
    # phi(s) = s^2, Phi(s) = s^4/4
    assert aux_of(PhiSpec.builtin("power", p=4)).Phi(1.0) == pytest.approx(0.25, abs=1e-11)


def test_young_phi_ratio4_half():
    # Phi(s) = s^4/(s^2+1) so Phi(1) = 1/2
    assert aux_of(PhiSpec.builtin("ratio4")).Phi(1.0) == pytest.approx(0.5, abs=1e-11)


def test_young_phi_zero_monotone_convex():
    aux = aux_of(PhiSpec.builtin("ratio4"))
    assert aux.Phi(0.0) == 0.0
    s = np.linspace(0.05, 4.0, 41)
    vals = aux.Phi_many(s)
    assert np.all(np.diff(vals) > 0)
    mid = aux.Phi_many(0.5 * (s[:-1] + s[1:]))
    assert np.all(mid <= 0.5 * (vals[:-1] + vals[1:]) + 1e-9)


def test_phi_many_matches_scalar_quadrature():
    for spec in (PhiSpec.builtin("power", p=1.5), PhiSpec.builtin("ratio_log"),
                 PhiSpec.builtin("zygmund", p=3)):
        aux = aux_of(spec)
        vals = np.array([1e-4, 0.037, 0.5, 1.0, 7.3, 250.0])
        batch = aux.Phi_many(vals)
        scalar = np.array([aux.Phi(v) for v in vals])
        np.testing.assert_allclose(batch, scalar, rtol=1e-9, atol=1e-13)


# -- conjugate companion ----------------------------------------------------

def test_psi_power3_analytic():
    # phi(s) = s: s*phi = s^2, so psi(t) = t^(-1/2); psi(4) = 0.5
    aux = aux_of(PhiSpec.builtin("power", p=3))
    assert aux.psi(4.0) == pytest.approx(0.5, rel=1e-10)


def test_psi_identity_weight():
    assert aux_of(PHI_CONST_1).psi(7.0) == pytest.approx(1.0, rel=1e-10)


def test_psi_composed_identity_ratio4():
    aux = aux_of(PhiSpec.builtin("ratio4"))
    s = 3.0
    t = float(aux.sphi(s))
    assert float(aux.phi(s)) * aux.psi(t) == pytest.approx(1.0, abs=1e-8)


def test_psi_bracket_failure_out_of_range():
    # arctan_def: s*phi(s) < 1 for all s, so psi(2) has no preimage
    aux = aux_of(PhiSpec.builtin("arctan_def"))
    with pytest.raises(BracketFailure):
        aux.psi(2.0)
    assert aux.psi(2.0, lenient=True) == np.inf


# -- zeta / theta / lambda ---------------------------------------------------

def test_lambda_power3_constant():
    aux = aux_of(PhiSpec.builtin("power", p=3))
    t = log_samples(1e-3, 1e3, 64)
    np.testing.assert_allclose(aux.lambda_fn(t), -1.0 / 3.0, atol=1e-10)


def test_lambda_constant_weight_zero():
    aux = aux_of(PHI_CONST_1)
    assert aux.lambda_fn(5.0) == pytest.approx(0.0, abs=1e-12)


def test_lambda_matches_theta_derivative_ratio4():
    # finite-difference oracle on theta: lam(t) ~ t * theta'(t)/theta(t)
    aux = aux_of(PhiSpec.builtin("ratio4"))
    t = 1.0
    h = 1e-6
    dtheta = (aux.theta(t + h) - aux.theta(t - h)) / (2 * h)
    oracle = t * dtheta / aux.theta(t)
    assert aux.lambda_fn(t) == pytest.approx(oracle, abs=1e-6)


def test_inverse_identity_and_normalization():
    for name in ("power", "ratio4", "ratio_log", "arctan_def"):
        spec = (PhiSpec.builtin(name, p=3) if name == "power"
                else PhiSpec.builtin(name))
        aux = aux_of(spec)
        s = log_samples(1e-6, 1e6, 1000)
        t = aux.ssqrtphi(s)
        err = np.abs(aux.zeta(t) - s) / np.maximum(1.0, s)
        assert np.max(err) <= 1e-8, name
        t2 = log_samples(1e-4, 1e4, 1000)
        norm = aux.theta(t2) ** 2 * aux.phi(aux.zeta(t2)) - 1.0
        assert np.max(np.abs(norm)) <= 1e-8, name


def test_lambda_range_strictly_inside():
    # arctan_def saturates to 1.0 in float64 past t ~ 1.4e3 (1 - lam ~ 4/t^4),
    # so the 1e-12 interior margin is asserted on a window clear of saturation
    for spec in (PhiSpec.builtin("power", p=10), PhiSpec.builtin("exp_power", p=2),
                 PhiSpec.builtin("arctan_def"), PhiSpec.builtin("ratio_log")):
        aux = aux_of(spec)
        lam = aux.lambda_fn(log_samples(1e-4, 5e2, 500))
        assert np.all(lam > -1.0 + 1e-12) and np.all(lam < 1.0 - 1e-12), spec.kind


def test_conjugacy_identity():
    for spec in (PhiSpec.builtin("power", p=1.5), PhiSpec.builtin("ratio4"),
                 PhiSpec.builtin("zygmund", p=3)):
        aux = aux_of(spec)
        s = log_samples(1e-5, 1e5, 500)
        t = aux.sphi(s)
        err = aux.phi(s) * aux.psi(t) - 1.0
        assert np.max(np.abs(err)) <= 1e-8, spec.kind


def test_lambda_constancy_for_scaled_powers():
    for p in (1.5, 3.0, 4.0):
        for c in (1.0, p):
            spec = PhiSpec.custom(f"{c}*s^({p - 2.0})",
                                  f"{c * (p - 2.0)}*s^({p - 3.0})",
                                  r=p - 2.0,
                                  tail_sign="nonneg" if p >= 2 else "nonpos")
            aux = aux_of(spec)
            lam = aux.lambda_fn(log_samples(1e-4, 1e4, 200))
            np.testing.assert_allclose(lam, -(1.0 - 2.0 / p), atol=1e-10)


# -- duality -----------------------------------------------------------------

def test_duality_power3_analytic():
    aux = aux_of(PhiSpec.builtin("power", p=3))
    prod, sums = duality_check(aux, 2.0)
    # conjugate of the p = 3 weight is the p' = 3/2 power weight
    assert prod == pytest.approx(1.0, abs=1e-6)
    assert sums == pytest.approx(0.0, abs=1e-6)
    conj = aux.conjugate()
    t = log_samples(1e-2, 1e2, 50)
    np.testing.assert_allclose(conj.phi(t), t ** (-0.5), rtol=1e-8)


def test_duality_identity_weight_exact():
    prod, sums = duality_check(aux_of(PHI_CONST_1), 5.0)
    assert prod == pytest.approx(1.0, abs=1e-9)
    assert sums == pytest.approx(0.0, abs=1e-9)


def test_duality_ratio_log_double_inversion():
    prod, sums = duality_check(aux_of(PhiSpec.builtin("ratio_log")), 0.7)
    assert prod == pytest.approx(1.0, abs=1e-6)
    assert sums == pytest.approx(0.0, abs=1e-6)


# -- grid functionals ---------------------------------------------------------

def unit_square(n=64):
    return GridDomain(lengths=(1.0, 1.0), nodes=(n, n))


def test_orlicz_integral_constants():
    dom = unit_square(64)
    ones = GridField(dom, np.ones(dom.nodes))
    assert orlicz_integral(aux_of(PHI_CONST_2), ones) == pytest.approx(1.0, abs=1e-12)
    twos = GridField(dom, 2.0 * np.ones(dom.nodes))
    assert orlicz_integral(aux_of(PhiSpec.builtin("power", p=4)), twos) == \
        pytest.approx(4.0, abs=1e-10)
    assert orlicz_integral(aux_of(PhiSpec.builtin("ratio4")), GridField.zeros(dom)) == 0.0


def test_luxemburg_norm_constants():
    dom = unit_square(32)
    c = 0.37
    field = GridField(dom, c * np.ones(dom.nodes))
    assert luxemburg_norm(aux_of(PHI_CONST_2), field) == pytest.approx(c, rel=1e-8)
    ones = GridField(dom, np.ones(dom.nodes))
    assert luxemburg_norm(aux_of(PhiSpec.builtin("power", p=4)), ones) == \
        pytest.approx(4.0 ** -0.25, rel=1e-8)
    assert luxemburg_norm(aux_of(PHI_CONST_2), GridField.zeros(dom)) == 0.0


def test_phispec_dict_round_trip():
    spec = PhiSpec.builtin("zygmund", p=3)
    again = PhiSpec.from_dict(spec.to_dict())
    assert again == spec
    custom = PhiSpec.custom("2*s^2*(2+s^2)/(s^2+1)^2", "8*s/(s^2+1)^3", r=2.0,
                            s0=0.5, s1=1.0)
    assert PhiSpec.from_dict(custom.to_dict()) == custom


def test_operation_aliases():
    from fdchk.orlicz import conjugate_psi, lambda_fn, young_Phi
    aux = aux_of(PhiSpec.builtin("power", p=4))
    assert young_Phi(aux, 1.0) == pytest.approx(0.25, abs=1e-11)
    assert conjugate_psi(aux, 4.0) == pytest.approx(4.0 ** (1 / 3) / 4.0, rel=1e-9)
    assert lambda_fn(aux, 2.0) == pytest.approx(-0.5, abs=1e-10)


def test_invert_monotone_edges():
    from fdchk.orlicz import invert_monotone
    f = lambda x: np.asarray(x) ** 3
    assert invert_monotone(f, 8.0) == pytest.approx(2.0, rel=1e-10)
    assert invert_monotone(f, 0.0) == 0.0
    out = invert_monotone(f, np.array([1e-12, 1.0, 1e12]))
    np.testing.assert_allclose(out, [1e-4, 1.0, 1e4], rtol=1e-9)
    bounded = lambda x: np.asarray(x) / (1.0 + np.asarray(x))  # range (0, 1)
    with pytest.raises(BracketFailure):
        invert_monotone(bounded, 2.0)
    assert invert_monotone(bounded, 2.0, lenient=True) == np.inf
    shifted = lambda x: 1.0 + np.asarray(x)  # range (1, inf)
    with pytest.raises(BracketFailure):
        invert_monotone(shifted, 0.5)
    assert invert_monotone(shifted, 0.5, lenient=True) == 0.0
    with pytest.raises(BracketFailure):
        invert_monotone(f, np.array([1.0, np.nan]))


def test_luxemburg_warm_start_matches_cold():
    dom = unit_square(16)
    rng = np.random.default_rng(4)
    vals = rng.uniform(0.1, 1.0, dom.nodes) * np.exp(1j * rng.uniform(0, 6, dom.nodes))
    field = GridField(dom, vals)
    aux = aux_of(PhiSpec.builtin("ratio4"))
    cold = luxemburg_norm(aux, field)
    warm = luxemburg_norm(aux, field, initial=0.7 * cold)
    assert warm == pytest.approx(cold, rel=1e-8)


def test_custom_weight_rejects_spatial_variables():
    with pytest.raises(ValueError):
        PhiSpec.custom("x1", "0", r=0.0)
