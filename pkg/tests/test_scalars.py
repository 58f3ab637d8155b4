import cmath
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nestedik.scalars import (ApproxPolicy, ThetaConfig, approx_eq, format_rational,
                              parse_rational, rel_residual, tau_sign, theta)

CFG = ThetaConfig(0.8j, 40)
fractions = st.fractions(max_denominator=10**6).filter(lambda f: abs(f) < 10**9)


@pytest.mark.parametrize("text, value", [("3/6", Fraction(1, 2)), ("-7", Fraction(-7)),
                                         ("+4/2", Fraction(2)), (" 0/5 ", Fraction(0))])
def test_parse_rational(text, value):
    got = parse_rational(text)
    assert got == value
    assert got.denominator > 0


@pytest.mark.parametrize("text", ["4/-2", "1/2/3", "", "abc", "1.5", "--1"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_parse_rational_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        parse_rational("1/0")


@given(fractions)
def test_format_parse_round_trip(f):
    assert parse_rational(format_rational(f)) == f


@given(fractions, fractions, fractions)
def test_exact_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


def test_approx_eq_examples():
    assert approx_eq(1, 1)
    assert approx_eq(1, 1 + 1e-12, ApproxPolicy(tol_rel=1e-8))
    assert not approx_eq(1, 1.1, ApproxPolicy(tol_rel=1e-8, tol_abs=0))


def test_approx_eq_rejects_non_finite():
    with pytest.raises(ValueError):
        approx_eq(float("nan"), 1)
    with pytest.raises(ValueError):
        approx_eq(1, complex(math.inf, 0))


def test_policy_validation():
    with pytest.raises(ValueError):
        ApproxPolicy(tol_rel=0)
    with pytest.raises(ValueError):
        ApproxPolicy(tol_abs=-1)


def test_rel_residual_zero_pair():
    assert rel_residual(0, 0) == 0


@pytest.mark.parametrize("tau, trunc", [(0.8, 40), (-0.5j, 40), (0.8j, 5), (0.8j, 12.5)])
def test_theta_config_rejects(tau, trunc):
    with pytest.raises(ValueError):
        ThetaConfig(tau, trunc)


def test_theta_rejects_non_finite():
    with pytest.raises(ValueError):
        theta(complex(math.nan, 0), CFG)


def test_theta_zero():
    assert abs(theta(0, CFG)) < 1e-14


def test_theta_period_one_example():
    z = 0.31 + 0.07j
    assert abs(theta(z + 1, CFG) + theta(z, CFG)) < 1e-12


def test_theta_truncation_converged():
    assert abs(theta(0.37, CFG) - theta(0.37, ThetaConfig(0.8j, 80))) < 1e-13


def test_tau_sign_is_minus_one():
    # the series gives [z+tau] = -exp(-2 pi i z - pi i tau) [z]
    assert tau_sign(CFG) == -1
    assert tau_sign(ThetaConfig(0.2 + 1.1j, 40)) == -1


zs = st.complex_numbers(max_magnitude=1.0, allow_nan=False, allow_infinity=False) \
    .filter(lambda z: abs(z.imag) < 0.4)


@given(zs)
def test_theta_oddness(z):
    t = theta(z, CFG)
    assert abs(theta(-z, CFG) + t) <= 1e-12 * max(1, abs(t))


@given(zs)
def test_theta_quasi_periods(z):
    t = theta(z, CFG)
    assert abs(theta(z + 1, CFG) + t) <= 1e-12 * max(1, abs(t))
    pred = -cmath.exp(-2j * cmath.pi * z - 1j * cmath.pi * CFG.tau) * t
    lhs = theta(z + CFG.tau, CFG)
    assert abs(lhs - pred) <= 1e-10 * max(1, abs(pred))


def test_theta_zeros_on_lattice():
    rng = random.Random(5)
    for _ in range(10):
        m, n = rng.randint(-2, 2), rng.randint(-1, 1)
        assert abs(theta(m + n * CFG.tau, CFG)) < 1e-9


@given(st.floats(-1, 1), st.floats(-0.4, 0.4))
def test_theta_matches_jacobi_theta1(re, im):
    mpmath = pytest.importorskip("mpmath")
    cfg = ThetaConfig(0.8j, 40)
    z = complex(re, im)
    want = complex(mpmath.jtheta(1, mpmath.pi * z, mpmath.exp(1j * mpmath.pi * cfg.tau)))
    assert abs(theta(z, cfg) - want) <= 1e-12 * max(1.0, abs(want))
