import cmath
import math

import pytest

import nskpy


@pytest.fixture
def p0():
    return nskpy.FluidParams(mu=1.0, nu=3.0, kappa=1.0, sigma=1.0)


@pytest.fixture
def p1():
    return nskpy.FluidParams(mu=1.0, nu=1.0, kappa=2.0, sigma=1.0)


def test_derive_constants_real_roots(p0):
    c = nskpy.derive_constants(p0)
    assert c["alpha"] == pytest.approx(3.0)
    assert c["s1"].real == pytest.approx(2.0 + math.sqrt(3.0))
    assert c["s2"].real == pytest.approx(2.0 - math.sqrt(3.0))
    assert c["s1"] * c["s2"] == pytest.approx(1.0)
    assert c["eps_tilde_star"] == 0.0


def test_derive_constants_complex_roots(p1):
    c = nskpy.derive_constants(p1)
    assert c["alpha"] == pytest.approx(-0.25)
    assert c["s2"] == pytest.approx(c["s1"].conjugate())
    assert c["eps_tilde_star"] == pytest.approx(math.pi / 4.0)


def test_invalid_params_raise():
    with pytest.raises(Exception):
        nskpy.FluidParams(mu=-1.0)
    with pytest.raises(Exception):
        nskpy.FluidParams(mu=1.0, nu=1.0, kappa=1.0)  # kappa == mu * nu


def test_symbols_frozen_point(p0):
    s = nskpy.eval_symbols(p0, [0.0], 1.0 + 0.0j)
    assert s["omega"] == pytest.approx(1.0)
    assert s["t1"] == pytest.approx(1.9318516525781366)
    assert s["t2"] == pytest.approx(0.5176380902050415)
    assert s["m"] == pytest.approx(1.0)  # m = 1/lambda on the axis


def test_mode_residuals_small(p0, p1):
    for p in (p0, p1):
        r = nskpy.solve_mode(p, [0.7], 2.0 + 1.5j, eta0=1.0 + 0.3j)
        assert not r["decoupled"]
        assert r["residual_interior"] < 1e-12
        assert r["residual_boundary"] < 1e-12


def test_mode_linearity(p0):
    a = nskpy.solve_mode(p0, [0.7], 2.0 + 1.5j, eta0=1.0 + 0.0j)
    b = nskpy.solve_mode(p0, [0.7], 2.0 + 1.5j, eta0=2.5 - 1.0j)
    assert b["h0"] == pytest.approx(a["h0"] * (2.5 - 1.0j))


def test_oracle_agreement(p0):
    cmp = nskpy.compare_with_oracle(p0, [0.7], 2.0 + 1.5j)
    assert cmp["gap_rho"] < 1e-8
    assert cmp["gap_u"] < 1e-8
    assert cmp["gap_h0"] < 1e-8


def test_field_norms(p0):
    d = nskpy.field_norms(p0, 2.0 + 1.5j, modes=32)
    assert d["residual"] < 1e-12
    assert d["parseval_gap"] < 1e-12
    assert d["solution_norm"] > 0.0
    assert d["data_norm"] > 0.0
