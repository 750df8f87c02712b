"""End-to-end smoke checks for the python bindings."""

import math

import pytest

import epscalc


def test_value_and_jet():
    assert epscalc.value("x^2+1", 2.0) == 5.0
    j = epscalc.jet("x^2", 3.0)
    assert j.value == 9.0
    assert j.slope == 6.0
    assert j.env.analytic
    assert j.env.C == 1.0
    assert j.env.bound(0.5) == 0.5


def test_geometric_kernels_against_math():
    c, s = epscalc.cos_sin(1.0)
    assert abs(c - math.cos(1.0)) < 2e-9
    assert abs(s - math.sin(1.0)) < 2e-9
    ch, sh = epscalc.cosh_sinh(1.0)
    assert abs(ch - math.cosh(1.0)) < 2e-9
    assert abs(sh - math.sinh(1.0)) < 2e-9
    assert abs(epscalc.exp(1.0) - math.e) < 2e-9
    assert abs(epscalc.ln(2.0) - math.log(2.0)) < 1e-11
    assert abs(epscalc.pi() - math.pi) < 1e-11


def test_taylor_model():
    tj = epscalc.taylor("exp(x)", 0.0, 3)
    assert len(tj.coeffs) == 4
    assert abs(tj.coeffs[2] - 0.5) < 1e-11
    assert abs(tj.poly(0.1) - (1 + 0.1 + 0.005 + 0.001 / 6)) < 1e-11
    assert epscalc.check_taylor(tj, "exp(x)").ok


def test_integration_bracket():
    br = epscalc.integrate("1/x", 1.0, 2.0)
    assert br.rigorous
    assert br.lo <= math.log(2.0) <= br.hi
    assert br.width() <= 1e-6

    ftc = epscalc.ftc_jet("1/x", 1.0, 2.0)
    assert ftc.slope == 0.5


def test_limit():
    v = epscalc.limit("x^2+x", "x", 0.0)
    assert v.ok
    assert abs(v.L - 1.0) < 1e-9


def test_funnel_boxes_nest():
    boxes = epscalc.funnel("sin(x)-x", 0.0)
    assert len(boxes) == 10
    for prev, cur in zip(boxes, boxes[1:]):
        assert cur.x_hi < prev.x_hi
        assert cur.y_hi < prev.y_hi


def test_verify_suite():
    rows = epscalc.verify("envelope")
    assert rows
    assert all(r.ok for r in rows)


def test_mean_value_witness():
    w = epscalc.mean_value_witness("x^2", 0.0, 2.0)
    assert w.found
    assert abs(w.c - 1.0) < 1e-6


def test_exceptions_map_to_python_types():
    with pytest.raises(ValueError):
        epscalc.value("ln(x)", -1.0)
    with pytest.raises(epscalc.ExprParseError):
        epscalc.value("x+", 1.0)
    with pytest.raises(ValueError):
        epscalc.value("x+", 1.0)  # parse errors are ValueErrors too
