import os
import random
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nestedik import _pykernels, kernels
from nestedik.labels import Shape, enumerate_labels
from nestedik.lattice import build_lattice, eval_partition, flatten
from nestedik.scalars import GenericityError, rel_residual
from nestedik.verify import draw_params, draw_spectral

try:
    from nestedik import _ckernels
except ImportError:  # pragma: no cover
    _ckernels = None

needs_c = pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")
TAU = 0.8j
finite = st.floats(-1.0, 1.0, allow_nan=False)


def test_backend_flag():
    assert kernels.BACKEND in ("python", "cython")
    assert kernels.backend("python") is _pykernels
    with pytest.raises(ValueError):
        kernels.backend("fortran")


@needs_c
@given(finite, st.floats(-0.5, 0.5), st.sampled_from([10, 40]))
def test_theta_agrees(re, im, n):
    z = complex(re, im)
    a, b = _pykernels.theta(z, TAU, n), _ckernels.theta(z, TAU, n)
    assert abs(a - b) <= 1e-13 * max(1.0, abs(a))


@needs_c
def test_theta_many_shape():
    zs = np.array([[0.1, 0.2j], [0.3 + 0.1j, -0.4]])
    a, b = _pykernels.theta_many(zs, TAU, 40), _ckernels.theta_many(zs, TAU, 40)
    assert a.shape == b.shape == (2, 2)
    assert np.allclose(a, b, rtol=1e-13, atol=1e-15)


@needs_c
@given(st.floats(-0.3, 0.3), st.floats(-0.3, 0.3), st.integers(1, 80))
def test_multiplicative_theta_agrees(re, im, n):
    x = complex(np.exp(re), im)
    nome = 0.05 + 0.01j
    a = _pykernels.multiplicative_theta(x, nome, n)
    b = _ckernels.multiplicative_theta(x, nome, n)
    assert abs(a - b) <= 1e-12 * max(1.0, abs(a))


SHAPES = [Shape(1, (2,), (), (), 3), Shape(2, (1, 2), (1,), (0,), 2),
          Shape(2, (2, 1), (1,), (1,), 1)]


@needs_c
@settings(max_examples=20)
@given(st.sampled_from(SHAPES), st.sampled_from(["rational", "trigonometric", "elliptic"]),
       st.integers(0, 10**6))
def test_contract_agrees(shape, model, seed):
    rng = random.Random(seed)
    p = draw_params(model, shape.M, rng)
    sp = draw_spectral(shape, model, rng)
    graph = build_lattice(shape)
    for colors in enumerate_labels(shape):
        arrays = flatten(graph, sp, colors, p)
        a = _pykernels.dfs_contract(**arrays)
        b = _ckernels.dfs_contract(**arrays)
        assert rel_residual(a, b) < 1e-12 or abs(a - b) < 1e-13
        exact = complex(eval_partition(shape, sp, colors, p))
        assert rel_residual(b, exact) < 1e-8 or abs(b - exact) < 1e-10


@needs_c
def test_contract_genericity_error_both():
    shape = Shape(1, (1,), (), (), 1)
    rng = random.Random(1)
    p = draw_params("elliptic", 1, rng)
    p = type(p)("elliptic", p.q, p.tau, p.gamma, (0.1, 0.1), p.trunc)
    sp = draw_spectral(shape, "elliptic", rng)
    arrays = flatten(build_lattice(shape), sp, (1,), p)
    for impl in (_pykernels, _ckernels):
        with pytest.raises(GenericityError):
            impl.dfs_contract(**arrays)


def test_pure_fallback_subprocess():
    env = dict(os.environ, NESTEDIK_PURE="1")
    code = ("from nestedik import kernels; from nestedik.scalars import theta, ThetaConfig;"
            "print(kernels.BACKEND, abs(theta(0.3, ThetaConfig(0.8j, 40))) > 0)")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.returncode == 0, out.stderr
    assert out.stdout.split() == ["python", "True"]


def test_pure_fallback_runs_suite():
    env = dict(os.environ, NESTEDIK_PURE="1")
    out = subprocess.run([sys.executable, "-m", "nestedik.cli", "verify", "theta"], env=env,
                         capture_output=True, text=True)
    assert out.returncode == 0, out.stderr
