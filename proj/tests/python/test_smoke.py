"""Smoke tests for the Python bindings: closed forms, estimators, solver."""
import math

import pytest

import arhyst


def test_gaussian_helpers():
    assert math.isclose(arhyst.gauss_pdf(0.0), 0.39894228040143268, rel_tol=1e-14)
    assert math.isclose(arhyst.gauss_cdf(-1.0), 0.15865525393145705, rel_tol=1e-13)
    assert math.isclose(arhyst.gauss_inv_cdf(arhyst.gauss_cdf(0.7)), 0.7, abs_tol=1e-11)


def test_closed_forms():
    assert math.isclose(arhyst.K_axis(1.0, 0.1), 0.04839414490382867, rel_tol=1e-13)
    assert math.isclose(arhyst.H_at0(1.0), 6.3029743750687541, rel_tol=1e-13)
    g = arhyst.grad_H_at0(1.0)
    assert math.isclose(g.d_eta, 9.6128885641560722, rel_tol=1e-12)
    assert math.isclose(
        arhyst.improvement_ratio(0.2, 1.0), 0.12997071323078676, rel_tol=1e-12
    )
    assert arhyst.improvement_ratio(0.0, 1.0) == 0.0


def test_optimality_report():
    r = arhyst.local_optimality_report(1.0, 0.1)
    assert r.passes()
    assert r.collinearity_residual <= 1e-10
    assert r.constrained_second_derivative < 0.0
    assert math.isclose(r.lambda_, -198.63742986386676, rel_tol=1e-12)


def test_estimators_are_deterministic():
    p = arhyst.ModelParams(0.1, 0.0, 1.0)
    a = arhyst.estimate_K_mc(p, 100000, arhyst.RngStream(7, 1))
    b = arhyst.estimate_K_mc(p, 100000, arhyst.RngStream(7, 1))
    assert a.mean == b.mean
    assert a.std_error == b.std_error
    assert a.n == 50
    # agreement with the closed form within a generous band
    assert abs(a.mean - arhyst.K_axis(1.0, 0.1)) <= 6.0 * a.std_error


def test_survival_mc_worker_independent():
    p = arhyst.ModelParams(0.5, 0.2, 0.5)
    h1 = arhyst.estimate_H_mc(p, 2000, arhyst.RngStream(42, 0), workers=1)
    h2 = arhyst.estimate_H_mc(p, 2000, arhyst.RngStream(42, 0), workers=3)
    assert h1.mean == h2.mean
    assert h1.std_error == h2.std_error


def test_solver_axis():
    H = arhyst.compute_H(arhyst.ModelParams(0.5, 0.0, 1.0))
    assert math.isclose(H, 6.3029743750687541, rel_tol=1e-8)


def test_quadrature_matches_closed_form():
    k0 = arhyst.K0_numeric(0.3, 0.5, 0.1)
    assert abs(k0 - arhyst.K0(0.3, 0.5, 0.1)) <= 1e-8


def test_level_inversion():
    c = arhyst.K_axis(1.0, 0.1)
    assert math.isclose(arhyst.eta_for_level(c, 0.1), 1.0, abs_tol=1e-9)


def test_validation_raises():
    with pytest.raises(ValueError):
        arhyst.ModelParams(1.5, 0.0, 1.0).validate()
    with pytest.raises(ValueError):
        arhyst.gauss_inv_cdf(0.0)
    with pytest.raises(ValueError):
        arhyst.eta_for_level(0.0, 0.1)
