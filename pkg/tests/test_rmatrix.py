import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from nestedik import rmatrix
from nestedik.rmatrix import (ModelParams, VertexIO, beta, check_dybe, check_ybe,
                              random_generic_lambda, weight_elliptic, weight_rational,
                              weight_trig)
from nestedik.scalars import GenericityError, ThetaConfig, theta

CFG = ThetaConfig(0.8j, 40)
rats = st.fractions(min_value=-20, max_value=20, max_denominator=7)
colors4 = st.tuples(*[st.integers(1, 3)] * 4)


def test_rational_examples():
    assert weight_rational(VertexIO(2, 2, 2, 2), 3, 1) == 3
    assert weight_rational(VertexIO(1, 2, 2, 1), 3, 1) == 1
    assert weight_rational(VertexIO(1, 2, 1, 2), 3, 1) == 2
    assert weight_rational(VertexIO(1, 2, 1, 1), 3, 1) == 0


def test_trig_examples():
    q = F(1, 2)
    assert weight_trig(VertexIO(1, 1, 1, 1), 2, 1, q) == F(3, 2)
    assert weight_trig(VertexIO(1, 2, 2, 1), 2, 1, q) == 1
    assert weight_trig(VertexIO(2, 1, 2, 1), 2, 1, q) == F(1, 2)
    assert weight_trig(VertexIO(2, 1, 1, 2), 2, 3, q) == F(3, 2)   # (1-q) v


def test_elliptic_examples():
    z, w, g = 0.31 + 0.1j, -0.12 + 0.05j, 0.23 + 0.02j
    lam = (0.4 + 0.1j, 0.4 + 0.1j - g)
    assert weight_elliptic(VertexIO(1, 1, 1, 1), z, w, lam, g, CFG) == theta(z - w - g, CFG)
    # swap with lambda_b - lambda_a = -gamma collapses to [z - w - gamma]
    got = weight_elliptic(VertexIO(1, 2, 2, 1), z, w, lam, g, CFG)
    assert abs(got - theta(z - w - g, CFG)) < 1e-12
    assert weight_elliptic(VertexIO(1, 2, 1, 1), z, w, lam, g, CFG) == 0


def test_beta_denominator_guard():
    with pytest.raises(GenericityError):
        beta(0.1, 0.0, 0.2, CFG)


@given(colors4, rats, rats, rats.filter(lambda q: q not in (0, 1)))
def test_ice_rule(io, x, y, q):
    io = VertexIO(*io)
    conserved = sorted(io[:2]) == sorted(io[2:])
    vals = [weight_rational(io, x, y), weight_trig(io, x, y, q),
            weight_elliptic(io, complex(x) / 40, complex(y) / 40 + 0.1j, (0.1j, 0.3 + 0.2j, 0.6),
                            0.21, CFG)]
    if not conserved:
        assert all(v == 0 for v in vals)


@given(colors4, rats)
def test_rational_linear_in_x(io, y):
    io = VertexIO(*io)
    a, b, c = (weight_rational(io, x, y) for x in (0, 1, 2))
    assert a - 2 * b + c == 0


def test_params_validation():
    with pytest.raises(ValueError):
        ModelParams("trigonometric", q=F(1))
    with pytest.raises(ValueError):
        ModelParams("trigonometric")
    with pytest.raises(ValueError):
        ModelParams("elliptic", tau=0.8)
    with pytest.raises(ValueError):
        ModelParams("bogus")
    p = ModelParams("elliptic", gamma=0.2, lam=(0.1, 0.1 + 3 * 0.2 + 1 + 0.8j))
    with pytest.raises(GenericityError):
        p.check_generic()


def test_ybe_examples():
    assert check_ybe("rational", 2, (5, 2, -1), ModelParams("rational")) == 0
    rng = random.Random(3)
    xs = [F(rng.randint(-20, 20), rng.randint(1, 7)) for _ in range(3)]
    assert check_ybe("trigonometric", 3, xs, ModelParams("trigonometric", q=F(-5, 3))) == 0
    assert check_ybe("rational", 3, (F(1, 2), F(1, 2), 4), ModelParams("rational")) == 0


@given(st.integers(2, 4), st.tuples(rats, rats, rats),
       rats.filter(lambda q: q not in (0, 1)))
def test_ybe_exact(dim, xs, q):
    assert check_ybe("rational", dim, xs, ModelParams("rational")) == 0
    assert check_ybe("trigonometric", dim, xs, ModelParams("trigonometric", q=q)) == 0


def test_ybe_detects_broken_weight(monkeypatch):
    orig = rmatrix.weight_trig

    def broken(io, u, v, q):
        w, s, e, n = io
        if w > s and e == w:
            return u - v
        return orig(io, u, v, q)

    monkeypatch.setattr(rmatrix, "weight_trig", broken)
    res = check_ybe("trigonometric", 2, (F(2), F(-1, 3), F(5, 2)),
                    ModelParams("trigonometric", q=F(3, 7)))
    assert res != 0


def test_dybe_example():
    lam = (0.13 + 0.07j, -0.21 + 0.19j)
    assert check_dybe(2, (0.11, 0.37, 0.52), lam, 0.23, CFG) < 1e-9
    lam3 = (0.13 + 0.07j, -0.21 + 0.19j, 0.35 + 0.11j)
    assert check_dybe(3, (0.11, 0.37, 0.52), lam3, 0.23, CFG) < 1e-9


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("dim", [2, 3])
def test_dybe_random(seed, dim):
    rng = random.Random(seed)
    g = complex(rng.uniform(0.1, 0.4), rng.uniform(0.01, 0.08))
    lam = random_generic_lambda(rng, dim, g, CFG.tau)
    zs = [complex(rng.uniform(-0.5, 0.5), rng.uniform(0.05, 0.3)) for _ in range(3)]
    assert check_dybe(dim, zs, lam, g, CFG) < 1e-8


def test_dybe_degenerate_lambda():
    with pytest.raises(GenericityError):
        check_dybe(2, (0.11, 0.37, 0.52), (0.4, 0.4 - 0.23), 0.23, CFG)


def _dybe_with_shifted_middle(dim, zs, lam, gamma):
    """Residual with lambda - gamma h2 on the right-hand middle factor too."""
    params = ModelParams("elliptic", tau=CFG.tau, gamma=gamma, lam=tuple(lam))
    z1, z2, z3 = zs
    worst = 0.0
    sh = rmatrix._shifted
    for basis in itertools.product(range(1, dim + 1), repeat=3):
        v = {basis: 1 + 0j}
        lhs = rmatrix._apply(v, 0, 1, z1, z2, params, dim, sh(lam, gamma, None))
        lhs = rmatrix._apply(lhs, 0, 2, z1, z3, params, dim, sh(lam, gamma, 1))
        lhs = rmatrix._apply(lhs, 1, 2, z2, z3, params, dim, sh(lam, gamma, None))
        rhs = rmatrix._apply(v, 1, 2, z2, z3, params, dim, sh(lam, gamma, 0))
        rhs = rmatrix._apply(rhs, 0, 2, z1, z3, params, dim, sh(lam, gamma, 1))
        rhs = rmatrix._apply(rhs, 0, 1, z1, z2, params, dim, sh(lam, gamma, 2))
        for key in set(lhs) | set(rhs):
            worst = max(worst, abs(lhs.get(key, 0) - rhs.get(key, 0)))
    return worst


def test_dybe_shift_placement_matters():
    lam = (0.13 + 0.07j, -0.21 + 0.19j)
    assert _dybe_with_shifted_middle(2, (0.11, 0.37, 0.52), lam, 0.23) > 1e-3
