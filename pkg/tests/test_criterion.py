"""Algebraic criterion checks: lambda0 table, block form, verdicts."""

import numpy as np
import pytest
from scipy.optimize import minimize

from fdchk.criterion import (CriterionReport, MatrixField,
                             SamplingConfig, check_operator,
                             check_pointwise, form_min_eig, lambda0,
                             necessary_real_part, strong_ellipticity_margin,
                             sufficient_condition, unit_directions)
from fdchk.orlicz import AuxBundle, PhiSpec

PHI_CONST_1 = PhiSpec.custom("1", "0", r=0.0)

SQRT3 = 3.0 ** 0.5


def aux_of(name, **params):
    return AuxBundle(PhiSpec.builtin(name, **params))


def power_lambda0(p):
    return abs(p - 2.0) / (2.0 * np.sqrt(p - 1.0))


# -- lambda0 -----------------------------------------------------------------

def test_lambda0_powers():
    for p in (1.5, 2.0, 3.0, 4.0, 10.0):
        res = lambda0(aux_of("power", p=p))
        assert res.is_finite
        assert res.value == pytest.approx(power_lambda0(p), abs=1e-6), p


def test_lambda0_ratio4_and_ratio_log():
    assert lambda0(aux_of("ratio4")).value == pytest.approx(1.0 / SQRT3, abs=1e-6)
    assert lambda0(aux_of("ratio_log")).value == pytest.approx(2.0 / 5.0 ** 0.5, abs=1e-6)


def test_lambda0_infinite_cases():
    for spec in (("exp_power", {"p": 1}), ("exp_power", {"p": 2}), ("arctan_def", {})):
        res = lambda0(aux_of(spec[0], **spec[1]))
        assert not res.is_finite, spec


def test_lambda0_zygmund_finite_with_matching_tail_limits():
    res = lambda0(aux_of("zygmund", p=3))
    assert res.is_finite
    limit = power_lambda0(3.0)
    assert res.value > limit  # interior supremum beats both end limits
    left, right = res.tail_limits
    assert left == pytest.approx(limit, abs=1e-4)
    assert right == pytest.approx(limit, abs=1e-4)


def test_lambda0_is_upper_bound_of_g():
    rng = np.random.default_rng(7)
    for name in ("ratio4", "ratio_log"):
        aux = aux_of(name)
        res = lambda0(aux)
        s = 10.0 ** rng.uniform(-8, 8, size=200)
        assert np.max(aux.g(s)) <= res.value + 1e-9


# -- block quadratic form ------------------------------------------------------

def test_form_min_eig_identity():
    assert form_min_eig(np.eye(2), 0.0) == pytest.approx(1.0, abs=1e-12)
    assert form_min_eig(np.zeros((2, 2)), 0.3) == pytest.approx(0.0, abs=1e-12)


def test_form_min_eig_antisymmetric_im_block():
    # A = [[1, i g], [-i g, 1]]: min eigenvalue 1 - |g| at lam = 0
    for g in (0.5, 1.0, 2.0):
        a = np.array([[1.0, 1j * g], [-1j * g, 1.0]])
        assert form_min_eig(a, 0.0) == pytest.approx(1.0 - abs(g), abs=1e-9)


def _rayleigh_oracle(a, lam, rng, samples=100000):
    """Brute-force minimum of the block form over the unit sphere, then
    a local polish of the Rayleigh quotient (independent of eigvalsh)."""
    n = a.shape[0]
    re_s = 0.5 * (a.real + a.real.T)
    im = a.imag

    def value(z):
        xi, eta = z[:n], z[n:]
        quad = ((1 - lam * lam) * xi @ re_s @ xi + eta @ re_s @ eta
                + (1 + lam) * (eta @ im @ xi) - (1 - lam) * (eta @ im.T @ xi))
        return quad / (z @ z)

    zs = rng.standard_normal((samples, 2 * n))
    vals = np.array([value(z) for z in zs[:2000]])
    # screen the rest vectorized
    xi, eta = zs[:, :n], zs[:, n:]
    quad = ((1 - lam * lam) * np.einsum("ij,jk,ik->i", xi, re_s, xi)
            + np.einsum("ij,jk,ik->i", eta, re_s, eta)
            + (1 + lam) * np.einsum("ij,jk,ik->i", eta, im, xi)
            - (1 - lam) * np.einsum("ij,jk,ik->i", eta, im.T, xi))
    vals = quad / np.einsum("ij,ij->i", zs, zs)
    best = zs[int(np.argmin(vals))]
    res = minimize(value, best, method="Nelder-Mead",
                   options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 4000})
    return min(float(np.min(vals)), float(res.fun))


def test_form_min_eig_matches_rayleigh_oracle():
    rng = np.random.default_rng(42)
    for trial in range(8):
        a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        lam = float(rng.uniform(-0.8, 0.8))
        direct = form_min_eig(a, lam)
        oracle = _rayleigh_oracle(a, lam, rng)
        assert direct == pytest.approx(oracle, abs=1e-6)


# -- pointwise test -------------------------------------------------------------

def test_identity_matrix_dissipative_for_all_builtins():
    eye2 = MatrixField.constant(np.eye(2))
    for name, params in (("power", {"p": 4}), ("ratio4", {}), ("ratio_log", {}),
                         ("arctan_def", {}), ("exp_power", {"p": 2})):
        report = check_pointwise(eye2, aux_of(name, **params))
        assert report.verdict == "dissipative", name
        assert report.worst_margin > 0


def test_symmetric_im_threshold_ratio4():
    # A = [[1, ib], [ib, 1]] with ratio4 is dissipative iff |b| <= sqrt(3)
    for b, expected in ((SQRT3 - 1e-3, "dissipative"), (SQRT3 + 1e-3, "not_dissipative")):
        a = MatrixField.constant([[1.0, 1j * b], [1j * b, 1.0]])
        report = check_pointwise(a, aux_of("ratio4"))
        assert report.verdict == expected, b
    bad = check_pointwise(MatrixField.constant([[1.0, 3j], [3j, 1.0]]), aux_of("ratio4"))
    assert bad.verdict == "not_dissipative"
    xi = np.abs(np.asarray(bad.witness.xi))
    assert np.allclose(xi, [1 / 2 ** 0.5, 1 / 2 ** 0.5], atol=1e-6)


def test_nonsymmetric_im_gives_necessary_only_pass():
    field = MatrixField.from_strings(
        [[("1", "0"), ("0", "5*x1")], [("0", "-5*x1"), ("1", "0")]])
    report = check_pointwise(field, aux_of("ratio4"))
    assert report.im_symmetric is False
    assert report.verdict == "necessary_only_pass"


def test_lambda0_infinite_branch_requires_zero_im():
    aux = aux_of("arctan_def")
    ok = check_pointwise(MatrixField.constant(np.eye(2)), aux)
    assert ok.verdict == "dissipative"
    bad = check_pointwise(
        MatrixField.constant([[1.0, 0.5j], [0.5j, 1.0]]), aux)
    assert bad.verdict == "not_dissipative"
    assert bad.witness is not None


# -- sufficiency / necessity / kappa ---------------------------------------------

def test_real_psd_sufficient_for_every_builtin():
    field = MatrixField.from_strings(
        [[("2 + x1^2", "0"), ("1", "0")], [("1", "0"), ("2 + x2^2", "0")]])
    for name, params in (("power", {"p": 1.5}), ("power", {"p": 4}),
                         ("zygmund", {"p": 3}), ("exp_power", {"p": 2}),
                         ("arctan_def", {}), ("ratio4", {}), ("ratio_log", {})):
        ok, margin, _ = sufficient_condition(field, aux_of(name, **params))
        assert ok, name
        assert margin >= -1e-9


def test_sufficient_condition_examples():
    a_ok = MatrixField.constant([[1.0, 1j], [1j, 1.0]])
    ok, _, _ = sufficient_condition(a_ok, aux_of("ratio4"))
    assert ok
    a_bad = MatrixField.constant([[1.0, 2j], [-2j, 1.0]])
    ok, margin, witness = sufficient_condition(a_bad, AuxBundle(PHI_CONST_1))
    assert not ok
    assert margin == pytest.approx(-1.0, abs=1e-9)
    assert witness is not None


def test_necessary_real_part():
    ok, margin, _ = necessary_real_part(MatrixField.constant(np.eye(2)))
    assert ok and margin == pytest.approx(1.0, abs=1e-12)
    ok, margin, _ = necessary_real_part(MatrixField.constant(-np.eye(2)))
    assert not ok and margin == pytest.approx(-1.0, abs=1e-12)
    ok, margin, _ = necessary_real_part(
        MatrixField.constant([[1.0, 10j], [-10j, 1.0]]))
    assert ok and margin == pytest.approx(1.0, abs=1e-12)


def test_strong_ellipticity_margin_examples():
    assert strong_ellipticity_margin(MatrixField.constant(2 * np.eye(2)),
                                     AuxBundle(PHI_CONST_1)) == \
        pytest.approx(2.0, abs=1e-9)
    # power p=4: lam = -1/2 everywhere, margin = 1 - lam^2 = 3/4
    assert strong_ellipticity_margin(MatrixField.constant(np.eye(2)),
                                     aux_of("power", p=4)) == \
        pytest.approx(0.75, abs=1e-6)
    boundary = strong_ellipticity_margin(
        MatrixField.constant([[1.0, 1j * SQRT3], [1j * SQRT3, 1.0]]),
        aux_of("ratio4"))
    assert abs(boundary) <= 1e-5


# -- orchestration -----------------------------------------------------------------

def test_check_operator_examples():
    assert check_operator(MatrixField.constant(np.eye(2)),
                          aux_of("ratio4")).verdict == "dissipative"
    bad = check_operator(MatrixField.constant([[1.0, 3j], [3j, 1.0]]),
                         aux_of("ratio4"))
    assert bad.verdict == "not_dissipative"
    assert bad.kappa is not None and bad.kappa < 0
    field = MatrixField.from_strings(
        [[("1", "0"), ("0", "5*x1")], [("0", "-5*x1"), ("1", "0")]])
    mixed = check_operator(field, aux_of("ratio4"))
    assert mixed.verdict == "inconclusive"
    assert mixed.details["necessary_passed"] is True
    assert mixed.details["sufficient_passed"] is False


def test_check_operator_sufficient_only_pass():
    # non-symmetric but tiny Im coupling: block form still PSD
    field = MatrixField.from_strings(
        [[("1", "0"), ("0", "0.05*x1")], [("0", "-0.05*x1"), ("1", "0")]])
    report = check_operator(field, AuxBundle(PHI_CONST_1))
    assert report.im_symmetric is False
    assert report.verdict == "sufficient_only_pass"


def test_margin_scaling_and_verdict_invariance():
    a = np.array([[1.0, 1.2j], [1.2j, 1.0]])
    aux = aux_of("ratio4")
    base = check_pointwise(MatrixField.constant(a), aux)
    for c in (0.05, 3.0, 40.0):
        scaled = check_pointwise(MatrixField.constant(c * a), aux)
        assert scaled.verdict == base.verdict
        assert scaled.worst_margin == pytest.approx(c * base.worst_margin,
                                                    rel=1e-9)


def test_monotonicity_in_lambda0():
    # lambda0(power 3) = 1/(2 sqrt 2) < lambda0(ratio4) = 1/sqrt(3)
    rng = np.random.default_rng(11)
    small, large = aux_of("power", p=3), aux_of("ratio4")
    for _ in range(25):
        re = rng.standard_normal((2, 2))
        im = rng.standard_normal((2, 2))
        a = MatrixField.constant(re + re.T + 1j * (im + im.T))
        if check_pointwise(a, large).verdict == "dissipative":
            assert check_pointwise(a, small).verdict == "dissipative"


def test_equivalence_pointwise_vs_form_small():
    rng = np.random.default_rng(3)
    specs = [aux_of("power", p=3), aux_of("ratio4")]
    for aux in specs:
        for _ in range(60):
            n = int(rng.integers(2, 4))
            re = rng.standard_normal((n, n))
            im = rng.standard_normal((n, n))
            a = re + 1j * (im + im.T) / 2
            field = MatrixField.constant(a)
            pw = check_pointwise(field, aux)
            _, min_eig, _ = sufficient_condition(field, aux)
            if abs(min_eig) > 1e-6:
                assert (pw.verdict == "dissipative") == (min_eig > 0)


def test_witness_required_for_not_dissipative():
    with pytest.raises(ValueError):
        CriterionReport(verdict="not_dissipative", lambda0=1.0, worst_margin=-1.0)


def test_unit_directions_shapes():
    assert unit_directions(1).shape == (1, 1)
    d2 = unit_directions(2, 64)
    np.testing.assert_allclose(np.linalg.norm(d2, axis=1), 1.0, atol=1e-12)
    d3 = unit_directions(3, 500)
    np.testing.assert_allclose(np.linalg.norm(d3, axis=1), 1.0, atol=1e-12)


def test_three_dimensional_variable_field():
    entries = [[("1", "0"), ("0", "0.2*x3"), ("0", "0")],
               [("0", "0.2*x3"), ("1", "0"), ("0", "0")],
               [("0", "0"), ("0", "0"), ("1 + x1^2", "0")]]
    field = MatrixField.from_strings(entries)
    aux = aux_of("ratio4")
    report = check_operator(field, aux, SamplingConfig(nx=5))
    assert report.im_symmetric is True
    assert report.verdict == "dissipative"  # |Im| <= 0.2 << sqrt(3)
    strong = MatrixField.from_strings(
        [[("1", "0"), ("0", "3*x3"), ("0", "0")],
         [("0", "3*x3"), ("1", "0"), ("0", "0")],
         [("0", "0"), ("0", "0"), ("1", "0")]])
    bad = check_operator(strong, aux, SamplingConfig(nx=5))
    assert bad.verdict == "not_dissipative"
    assert bad.witness is not None


def test_entry_variables_checked_at_construction():
    with pytest.raises(ValueError):
        MatrixField.from_strings([[("x3", "0"), ("0", "0")],
                                  [("0", "0"), ("1", "0")]])
    with pytest.raises(ValueError):
        MatrixField.from_strings([[("s", "0")]])
