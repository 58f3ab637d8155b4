"""Property suites: equality theorems, the Korepin properties, the recursion
chain, Yang-Baxter checks, theta identities and the weight-function
correspondences.

Every check returns a :class:`VerifyReport`.  Reports serialise to one JSON
line each; timings are left out unless asked for, so reruns with the same seed
are byte-identical.
"""

from __future__ import annotations

import cmath
import itertools
import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .labels import (Shape, caseA_map, caseB_map, check_colors, count_C, enumerate_labels,
                     initial_map, lambda_shift)
from .lattice import eval_partition
from .rmatrix import (ModelParams, check_dybe, check_ybe, near_period_lattice,
                      random_generic_lambda)
from .scalars import (GenericityError, ThetaConfig, format_rational, rel_residual,
                      tau_sign, theta)
from .spectral import SpectralData
from .weightfn import (multiplicative_bridge, weight_closed, weight_elliptic_normalized,
                       weight_elliptic_reduced, weight_konno_norm, weight_rtv)

TOL_ELLIPTIC = 1e-6
TOL_IDENTITY = 1e-9
TOL_YBE = 1e-8
TOL_MATCH = 1e-8
ADMISSIBLE_MARGIN = 1e-6
# real parts kept this small keep principal square roots on one branch
SMALL_RE = (-0.04, 0.04)


# ------------------------------------------------------------------ reporting


def encode(value):
    """JSON-friendly form of scalars and containers."""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        return value
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if hasattr(value, "to_dict"):
        return value.to_dict()
    raise TypeError(f"cannot encode {type(value).__name__}")


def describe(model, shape=None, colors=None, spectral=None, params=None, seed=None, **extra):
    d = {"model": model}
    if shape is not None:
        d["shape"] = shape.to_dict()
    if colors is not None:
        d["colors"] = list(colors)
    if spectral is not None:
        d["spectral"] = {"x": encode(spectral.x), "yI": encode(spectral.yI),
                         "yII": encode(spectral.yII), "y": encode(spectral.y)}
    if params is not None:
        d["params"] = params_to_dict(params)
    if seed is not None:
        d["seed"] = seed
    d.update({k: encode(v) for k, v in extra.items()})
    return d


def params_to_dict(params: ModelParams) -> dict:
    if params.model == "rational":
        return {}
    if params.model == "trigonometric":
        return {"q": format_rational(params.q)}
    return {"tau": encode(complex(params.tau)), "gamma": encode(params.gamma),
            "lambda": encode(params.lam), "theta_trunc": params.trunc}


@dataclass
class VerifyReport:
    suite: str
    instance: dict
    passed: bool
    residual: object = "exact"
    detail: dict = field(default_factory=dict)
    timing: float | None = None

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self, timing: bool = False) -> dict:
        d = {"suite": self.suite, "status": self.status, "residual": encode(self.residual),
             "instance": self.instance, "detail": encode(self.detail)}
        if timing and self.timing is not None:
            d["timing_s"] = round(self.timing, 6)
        return d

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, separators=(",", ":"))


def _exact_report(suite, instance, lhs, rhs, **detail):
    passed = lhs == rhs
    return VerifyReport(suite, instance, passed, "exact" if passed else encode(lhs - rhs),
                        dict(detail, lhs=lhs, rhs=rhs))


def _approx_report(suite, instance, lhs, rhs, tol, **detail):
    res = rel_residual(lhs, rhs)
    return VerifyReport(suite, instance, res <= tol, res, dict(detail, lhs=lhs, rhs=rhs))


def compare(suite, instance, model, lhs, rhs, tol=TOL_ELLIPTIC, **detail):
    if model == "elliptic":
        return _approx_report(suite, instance, lhs, rhs, tol, **detail)
    return _exact_report(suite, instance, lhs, rhs, **detail)


# --------------------------------------------------------------------- draws


def _rng(seed, *parts) -> random.Random:
    return random.Random(":".join(str(p) for p in (seed,) + parts))


def _rational(rng):
    return Fraction(rng.randint(-20, 20), rng.randint(1, 7))


def _cell(rng, re=(-0.5, 0.5)):
    return complex(rng.uniform(*re), rng.uniform(0.05, 0.3))


def draw_spectral(shape: Shape, model: str, rng: random.Random, re=(-0.5, 0.5)) -> SpectralData:
    """Random spectral data, redrawn until within-layer auxiliary values are distinct."""
    draw = _rational if model != "elliptic" else (lambda r: _cell(r, re))
    while True:
        x = [tuple(draw(rng) for _ in range(n)) for n in shape.k]
        ok = True
        for row in x:
            for a, b in itertools.combinations(row, 2):
                if model == "elliptic":
                    ok &= abs(theta(a - b)) >= 1e-8
                else:
                    ok &= a != b
        if ok:
            break
    return SpectralData(x, [tuple(draw(rng) for _ in range(n)) for n in shape.LI],
                        [tuple(draw(rng) for _ in range(n)) for n in shape.LII],
                        tuple(draw(rng) for _ in range(shape.LM)))


def draw_params(model: str, M: int, rng: random.Random, tau=0.8j, gamma=None,
                trunc: int = 40, re=(-0.5, 0.5)) -> ModelParams:
    if model == "rational":
        return ModelParams("rational")
    if model == "trigonometric":
        while True:
            q = _rational(rng)
            if q not in (0, 1):
                return ModelParams("trigonometric", q=q)
    if gamma is None:
        gamma = complex(rng.uniform(0.1, 0.4) * (re[1] - re[0]), rng.uniform(0.01, 0.08))
    while True:
        lam = tuple(_cell(rng, re) for _ in range(M + 1))
        p = ModelParams("elliptic", tau=tau, gamma=gamma, lam=lam, trunc=trunc)
        try:
            p.check_generic()
        except GenericityError:
            continue
        return p


# ---------------------------------------------------------------- evaluation


def psi(shape, spectral, colors, params, target="lattice"):
    if target == "lattice":
        return eval_partition(shape, spectral, colors, params)
    if target == "closed":
        return weight_closed(shape, spectral, colors, params)
    raise ValueError(f"unknown target {target!r}")


def _with_params(params, lam):
    return ModelParams(params.model, params.q, params.tau, params.gamma, tuple(lam), params.trunc)


def _one(params):
    return 1 + 0j if params.model == "elliptic" else 1


def _br(params):
    cfg = params.theta_cfg
    return lambda v: theta(v, cfg)


def caseA_point(shape, spectral, params):
    """Value of the last top quantum variable that freezes the pivot column."""
    xk = spectral.x[-1][-1]
    if params.model == "rational":
        return xk + 1
    if params.model == "trigonometric":
        return xk / params.q
    return xk - params.gamma


def _set_last_y(spectral, value):
    return spectral.replace(y=spectral.y[:-1] + (value,))


def caseA_reduction(shape, spectral, colors, params):
    """Prefactor and reduced instance of the pivot-column freezing.

    ``spectral`` must already sit at the freezing point.  The reduced instance
    is None when nothing is left (M = 1, k_1 = 1).
    """
    colors = check_colors(colors, shape)
    M, k, L = shape.M, shape.k[-1], shape.LM
    xs, ys = spectral.x[-1], spectral.y
    xk = xs[-1]
    c = colors[shape.P - 1]
    if c == M + 1:
        raise ValueError("case A needs the pivot colored below M+1")
    if params.model == "rational":
        pre = 1
        for j in range(L - 1):
            pre *= xk - ys[j]
        for j in range(k - 1):
            pre *= xs[j] - xk - 1
    elif params.model == "trigonometric":
        q = params.q
        pre = (1 - q) * xk
        for j in range(L - 1):
            pre *= xk - ys[j]
        for j in range(k - 1):
            pre *= q * xs[j] - xk
    else:
        br, g, lam = _br(params), params.gamma, params.lam
        C = count_C(M, shape.P, c, colors, shape)
        pre = br(g) * br(lam[M] - lam[c - 1] + g * (k - L + C))
        den = br(lam[c - 1] - lam[M] + g * (1 - C))
        if abs(den) < 1e-10:
            raise GenericityError("case A denominator vanishes")
        pre /= den
        for j in range(L - 1):
            pre *= br(xk - ys[j])
        for j in range(k - 1):
            pre *= br(xs[j] - xk + g)
    if M == 1 and k == 1:
        return pre, None
    if k == 1:
        raise ValueError("case A with k_M = 1 and M > 1 is the initial condition")
    new_colors, new_shape = caseA_map(colors, shape)
    x = spectral.x[:-1] + (xs[:-1],)
    yII = spectral.yII
    if M > 1:
        yII = yII[:-1] + ((xk,) + yII[-1],)
    red = SpectralData(x, spectral.yI, yII, ys[:-1])
    return pre, (new_shape, red, new_colors, params)


def caseB_reduction(shape, spectral, colors, params):
    colors = check_colors(colors, shape)
    if colors[shape.P - 1] != shape.M + 1:
        raise ValueError("case B needs the pivot colored M+1")
    yL = spectral.y[-1]
    pre = _one(params)
    for xj in spectral.x[-1]:
        if params.model == "rational":
            pre *= xj - yL + 1
        elif params.model == "trigonometric":
            pre *= xj - params.q * yL
        else:
            pre *= theta(xj - yL - params.gamma, params.theta_cfg)
    new_colors, new_shape = caseB_map(colors, shape)
    return pre, (new_shape, spectral.replace(y=spectral.y[:-1]), new_colors, params)


def initial_reduction(shape, spectral, colors, params):
    """Prefactor of a single-row top layer, and the instance with one layer fewer.

    For M = 1 the remaining instance is the empty gl(1) function, returned as None.
    """
    colors = check_colors(colors, shape)
    M, L = shape.M, shape.LM
    if shape.k[-1] != 1:
        raise ValueError("initial condition needs k_M = 1")
    c = colors[shape.P - 1]
    if c == M + 1:
        raise ValueError("initial condition needs the pivot colored below M+1")
    x1, ys = spectral.x[-1][0], spectral.y
    if params.model == "rational":
        pre = 1
    elif params.model == "trigonometric":
        pre = (1 - params.q) * x1
    else:
        br, g, lam = _br(params), params.gamma, params.lam
        den = br(lam[c - 1] - lam[M])
        if abs(den) < 1e-10:
            raise GenericityError("initial-condition denominator vanishes")
        pre = br(g) * br(x1 - ys[-1] + lam[M] - lam[c - 1] - g * (L - 1)) / den
    for j in range(L - 1):
        pre = pre * ((x1 - ys[j]) if params.model != "elliptic" else theta(x1 - ys[j], params.theta_cfg))
    if M == 1:
        return pre, None
    new_colors, new_shape = initial_map(colors, shape)
    red = SpectralData(spectral.x[:-1], spectral.yI[:-1], spectral.yII[:-1],
                       spectral.yI[-1] + (x1,) + spectral.yII[-1])
    new_params = params
    if params.model == "elliptic":
        shifted = lambda_shift(M - 1, colors, shape, params.lam, params.gamma)
        new_params = _with_params(params, shifted[:M])
    return pre, (new_shape, red, new_colors, new_params)


def quasi_class(shape, spectral, colors, params):
    """Sum of zeros alpha' of psi as an elliptic polynomial in the last w."""
    M, L = shape.M, shape.LM
    c = colors[shape.P - 1]
    C = count_C(M, shape.P, c, colors, shape)
    lam, g = params.lam, params.gamma
    return sum(spectral.x[-1]) - lam[c - 1] + lam[M] - g * (L - C)


def tau_factor(shape, spectral, colors, params, w):
    """psi(w + tau) / psi(w) predicted by the quasi-periodicity property."""
    k, M, L = shape.k[-1], shape.M, shape.LM
    c = colors[shape.P - 1]
    C = count_C(M, shape.P, c, colors, shape)
    lam, g, tau = params.lam, params.gamma, params.tau
    s = tau_sign(params.theta_cfg)
    arg = k * w - sum(spectral.x[-1]) + lam[c - 1] - lam[M] + g * (L - C)
    return s ** k * cmath.exp(-2j * cmath.pi * arg - 1j * cmath.pi * k * tau)


# ------------------------------------------------------------- interpolation


def lagrange(points, values, at):
    total = 0
    for j, (pj, vj) in enumerate(zip(points, values)):
        term = vj
        for i, pi in enumerate(points):
            if i != j:
                term = term * (at - pi) / (pj - pi)
        total += term
    return total


@dataclass(frozen=True)
class EllipticClass:
    """The space Theta_n(chi), stored as its order n and zero sum alpha.

    Members f satisfy f(y+1) = (-1)^n f(y) and
    f(y+tau) = s^n exp(-2 pi i (n y - alpha) - pi i n tau) f(y).
    """

    n: int
    alpha: complex
    cfg: ThetaConfig = ThetaConfig()

    def chi(self):
        """Multipliers (chi(1), chi(tau)) at y = 0."""
        s = tau_sign(self.cfg)
        return (-1) ** self.n, s ** self.n * cmath.exp(2j * cmath.pi * self.alpha)


def admissible(points, cls: EllipticClass, margin=ADMISSIBLE_MARGIN) -> bool:
    tau = cls.cfg.tau
    for a, b in itertools.combinations(points, 2):
        if near_period_lattice(a - b, tau, margin):
            return False
    return not near_period_lattice(sum(points) - cls.alpha, tau, margin)


def elliptic_lagrange(points, values, cls: EllipticClass, at):
    """Interpolate in Theta_n(chi) from n admissible sample points."""
    if not admissible(points, cls):
        raise GenericityError("inadmissible interpolation points")
    cfg = cls.cfg
    total = 0j
    for j, (pj, vj) in enumerate(zip(points, values)):
        others = [p for i, p in enumerate(points) if i != j]
        zero = cls.alpha - sum(others)

        def basis(y):
            out = theta(y - zero, cfg)
            for p in others:
                out *= theta(y - p, cfg)
            return out

        total += vj * basis(at) / basis(pj)
    return total


def check_elliptic_match(f, g, cls: EllipticClass, points, extra, tol=TOL_MATCH,
                         instance=None) -> VerifyReport:
    """Agreement at n admissible points identifies f and g; extra points spot-check it."""
    instance = instance or {}
    if len(points) != cls.n:
        raise ValueError(f"need exactly n={cls.n} points")
    if not admissible(points, cls):
        raise GenericityError("inadmissible points")
    at_points = max(rel_residual(f(p), g(p)) for p in points)
    at_extra = max((rel_residual(f(p), g(p)) for p in extra), default=0.0)
    passed = at_points <= tol and at_extra <= tol
    return VerifyReport("elliptic_match", instance, passed, max(at_points, at_extra),
                        {"identity_established": at_points <= tol,
                         "points_residual": at_points, "extra_residual": at_extra})


# ---------------------------------------------------------------- chain


def chain_value(shape, spectral, colors, params):
    """psi rebuilt from the base value 1 by the recursion properties alone.

    Case B and the initial condition peel off explicit prefactors.  Case A
    (k_M >= 2) fixes psi at the k_M freezing points, reached by moving each
    x^(M)_j to the last slot, and interpolates in the last top variable.
    """
    colors = check_colors(colors, shape)
    M, k = shape.M, shape.k[-1]
    if colors[shape.P - 1] == M + 1:
        pre, red = caseB_reduction(shape, spectral, colors, params)
        return pre * chain_value(*red)
    if k == 1:
        pre, red = initial_reduction(shape, spectral, colors, params)
        return pre if red is None else pre * chain_value(*red)
    points, values = [], []
    for j in range(k):
        order = [i for i in range(k) if i != j] + [j]
        sp = spectral.permute_layer(M, order)
        yL = caseA_point(shape, sp, params)
        sp = _set_last_y(sp, yL)
        pre, red = caseA_reduction(shape, sp, colors, params)
        points.append(yL)
        values.append(pre * chain_value(*red))
    target = spectral.y[-1]
    if params.model != "elliptic":
        return lagrange(points, values, target)
    cls = EllipticClass(k, quasi_class(shape, spectral, colors, params), params.theta_cfg)
    return elliptic_lagrange(points, values, cls, target)


# ------------------------------------------------------------------ checks


def check_equality(model, shape, params=None, seed=0, labels=None, spectral=None):
    """Lattice value against the closed form for every label of the shape."""
    t0 = time.perf_counter()
    rng = _rng(seed, "equality", model, shape)
    if params is None:
        params = draw_params(model, shape.M, rng)
    if spectral is None:
        spectral = draw_spectral(shape, model, rng)
    labels = enumerate_labels(shape) if labels is None else labels
    worst, failures = 0.0, []
    for colors in labels:
        a = eval_partition(shape, spectral, colors, params)
        b = weight_closed(shape, spectral, colors, params)
        if model == "elliptic":
            r = rel_residual(a, b)
            worst = max(worst, r)
            if r > TOL_ELLIPTIC:
                failures.append({"colors": list(colors), "lattice": a, "closed": b})
        elif a != b:
            failures.append({"colors": list(colors), "lattice": a, "closed": b})
    inst = describe(model, shape, spectral=spectral, params=params, seed=seed)
    rep = VerifyReport("equality", inst, not failures,
                       worst if model == "elliptic" else "exact",
                       {"labels": len(labels), "failures": failures})
    rep.timing = time.perf_counter() - t0
    return rep


def check_symmetry(model, shape, colors, params, j, perm, spectral, target="lattice"):
    a = psi(shape, spectral, colors, params, target)
    b = psi(shape, spectral.permute_layer(j, perm), colors, params, target)
    inst = describe(model, shape, colors, spectral, params, layer=j, perm=list(perm),
                    target=target)
    return compare("symmetry", inst, model, a, b, TOL_IDENTITY)


def _pivot_free(shape, colors):
    return colors[shape.P - 1] != shape.M + 1


def check_degree(model, shape, colors, params, spectral, target="lattice"):
    """The k_M-th finite difference in the last top variable vanishes exactly."""
    if model not in ("rational", "trigonometric"):
        raise ValueError("degree check is for the rational and trigonometric models")
    if not _pivot_free(shape, colors):
        raise ValueError("degree bound needs the pivot colored below M+1")
    k = shape.k[-1]
    y0 = spectral.y[-1]
    vals = [psi(shape, _set_last_y(spectral, y0 + i), colors, params, target)
            for i in range(k + 1)]
    diff = sum((-1) ** (k - i) * _binom(k, i) * v for i, v in enumerate(vals))
    inst = describe(model, shape, colors, spectral, params, target=target)
    return _exact_report("degree", inst, diff, 0, points=k + 1)


def _binom(n, r):
    out = 1
    for i in range(r):
        out = out * (n - i) // (i + 1)
    return out


def check_quasiperiodicity(shape, colors, params, spectral, rng, target="lattice"):
    if not _pivot_free(shape, colors):
        raise ValueError("quasi-periodicity needs the pivot colored below M+1")
    k = shape.k[-1]
    worst = 0.0
    for _ in range(3):
        for attempt in range(20):
            w = _cell(rng)
            base = psi(shape, _set_last_y(spectral, w), colors, params, target)
            if abs(base) > 1e-10:
                break
        shift1 = psi(shape, _set_last_y(spectral, w + 1), colors, params, target)
        shiftt = psi(shape, _set_last_y(spectral, w + params.tau), colors, params, target)
        worst = max(worst, rel_residual(shift1, (-1) ** k * base),
                    rel_residual(shiftt, tau_factor(shape, spectral, colors, params, w) * base))
    inst = describe("elliptic", shape, colors, spectral, params, target=target)
    return VerifyReport("quasiperiodicity", inst, worst <= TOL_ELLIPTIC, worst)


def check_caseA(model, shape, colors, params, spectral, target="lattice"):
    if not _pivot_free(shape, colors):
        raise ValueError("case A needs the pivot colored below M+1")
    if shape.k[-1] < 2 and shape.M > 1:
        raise ValueError("k_M = 1 with M > 1 is covered by the initial condition")
    sp = _set_last_y(spectral, caseA_point(shape, spectral, params))
    lhs = psi(shape, sp, colors, params, target)
    pre, red = caseA_reduction(shape, sp, colors, params)
    rhs = pre if red is None else pre * psi(*red, target=target)
    inst = describe(model, shape, colors, spectral, params, target=target)
    return compare("caseA", inst, model, lhs, rhs)


def check_caseB(model, shape, colors, params, spectral, target="lattice"):
    lhs = psi(shape, spectral, colors, params, target)
    pre, red = caseB_reduction(shape, spectral, colors, params)
    rhs = pre * psi(*red, target=target)
    inst = describe(model, shape, colors, spectral, params, target=target)
    return compare("caseB", inst, model, lhs, rhs)


def check_initial(model, shape, colors, params, spectral, target="lattice"):
    if shape.M < 2:
        raise ValueError("initial condition check needs M >= 2")
    lhs = psi(shape, spectral, colors, params, target)
    pre, red = initial_reduction(shape, spectral, colors, params)
    rhs = pre * psi(*red, target=target)
    inst = describe(model, shape, colors, spectral, params, target=target)
    return compare("initial", inst, model, lhs, rhs)


def check_chain(model, shape, colors, params, spectral):
    lhs = eval_partition(shape, spectral, colors, params)
    rhs = chain_value(shape, spectral, colors, params)
    inst = describe(model, shape, colors, spectral, params)
    return compare("chain", inst, model, lhs, rhs)


def check_psi_match(shape, colors, params, spectral, rng):
    """Lattice and closed form as elliptic polynomials in the last w."""
    k = shape.k[-1]
    cls = EllipticClass(k, quasi_class(shape, spectral, colors, params), params.theta_cfg)
    f = lambda w: eval_partition(shape, _set_last_y(spectral, w), colors, params)  # noqa: E731
    g = lambda w: weight_closed(shape, _set_last_y(spectral, w), colors, params)  # noqa: E731
    for _ in range(50):
        pts = [_cell(rng) for _ in range(k)]
        if admissible(pts, cls):
            break
    extra = [_cell(rng) for _ in range(3)]
    inst = describe("elliptic", shape, colors, spectral, params)
    return check_elliptic_match(f, g, cls, pts, extra, TOL_MATCH * 100, inst)


def korepin_checks(model, shape, colors, params, spectral, rng, target="lattice"):
    """Every applicable property for one (shape, label)."""
    out = []
    free = _pivot_free(shape, colors)
    M, k = shape.M, shape.k[-1]
    if free:
        if model == "elliptic":
            out.append(check_quasiperiodicity(shape, colors, params, spectral, rng, target))
        else:
            out.append(check_degree(model, shape, colors, params, spectral, target))
    for j in range(1, M + 1):
        n = shape.k[j - 1]
        if n >= 2:
            swap = list(range(n))
            swap[-2], swap[-1] = swap[-1], swap[-2]
            out.append(check_symmetry(model, shape, colors, params, j, swap, spectral, target))
            perm = list(range(n))
            rng.shuffle(perm)
            out.append(check_symmetry(model, shape, colors, params, j, perm, spectral, target))
    if free and (k >= 2 or M == 1):
        out.append(check_caseA(model, shape, colors, params, spectral, target))
    if not free:
        out.append(check_caseB(model, shape, colors, params, spectral, target))
    if free and k == 1 and M >= 2:
        out.append(check_initial(model, shape, colors, params, spectral, target))
    return out


# --------------------------------------------------------- correspondence


def check_correspondence(shape, params=None, seed=0, perturb_h: complex = 1.0):
    """Normalised form vs the rewritten form, and label independence of ratios.

    Draws keep every real part small so that the principal square roots of the
    multiplicative form never change branch.
    """
    rng = _rng(seed, "correspondence-spectral", shape)
    if params is None:
        params = draw_params("elliptic", shape.M, rng, gamma=complex(rng.uniform(0.02, 0.06),
                             rng.uniform(0.01, 0.05)), re=SMALL_RE)
    spectral = draw_spectral(shape, "elliptic", rng, SMALL_RE)
    lam, g, cfg = params.lam, params.gamma, params.theta_cfg
    t, zq, h, mu, nome = multiplicative_bridge(spectral, lam, g, params.tau)
    h *= perturb_h
    konno, red, rtv = [], [], []
    for colors in enumerate_labels(shape):
        n = weight_elliptic_normalized(shape, spectral, colors, lam, g, cfg)
        konno.append(rel_residual(n, weight_konno_norm(shape, spectral, colors, lam, g, cfg)))
        red.append(weight_elliptic_reduced(shape, spectral, colors, lam, g, cfg) / n)
        rtv.append(weight_rtv(shape, t, zq, h, mu, colors, nome) / n)

    def spread(ratios):
        return max(rel_residual(r, ratios[0]) for r in ratios)

    a, b, c = max(konno), spread(red), spread(rtv)
    inst = describe("elliptic", shape, spectral=spectral, params=params, seed=seed)
    detail = {"konno_residual": a, "reduced_ratio_spread": b, "rtv_ratio_spread": c,
              "reduced_ratio": red[0], "rtv_ratio": rtv[0], "labels": len(red),
              "a": a <= TOL_ELLIPTIC, "b": b <= TOL_ELLIPTIC, "c": c <= TOL_ELLIPTIC}
    return VerifyReport("correspondence", inst, max(a, b, c) <= TOL_ELLIPTIC,
                        max(a, b, c), detail)


# ---------------------------------------------------------------- manifest


def manifest(scale: str = "small", model: str = "rational") -> list:
    """Committed shape lists; elliptic keeps T <= 5 at small scale."""
    if scale not in ("small", "full"):
        raise ValueError(f"unknown scale {scale!r}")
    tmax = 6 if scale == "small" else 7
    if model == "elliptic":
        tmax -= 1
    shapes = [Shape(1, (k,), (), (), L) for k, L in ((1, 1), (1, 2), (2, 2), (2, 3), (3, 3))]
    if scale == "full":
        shapes += [Shape(1, (k,), (), (), L) for k, L in ((1, 3), (2, 4), (3, 4), (1, 4))]
    ks = [(1, 1), (1, 2), (2, 1), (2, 2)]
    if scale == "full":
        ks += [(3, 1), (1, 3), (2, 3)]
    for k in ks:
        for LM in range(k[1], tmax + 1):
            for LI in range(tmax - LM + 1):
                for LII in range(tmax - LM - LI + 1):
                    if k[0] <= LI + k[1] + LII:
                        shapes.append(Shape(2, k, (LI,), (LII,), LM))
    shapes.append(Shape(3, (1, 1, 1), (0, 0), (0, 0), 2))
    if scale == "full":
        shapes += [Shape(3, (1, 1, 1), (1, 0), (0, 1), 1), Shape(3, (1, 1, 1), (1, 1), (1, 0), 2),
                   Shape(3, (2, 1, 1), (1, 0), (0, 0), 1), Shape(3, (1, 2, 1), (0, 1), (1, 0), 1),
                   Shape(3, (1, 1, 2), (0, 0), (0, 0), 3)]
    return [s for s in shapes if s.T <= tmax]


# ------------------------------------------------------------------ suites
#
# A suite is a list of tasks; a task is a picklable tuple handed to
# ``run_task`` and yields a list of reports.  Tasks run in any order but the
# reports are merged in task order.

SUITES = ("equality", "korepin", "chain", "ybe", "theta", "correspondence")
MODEL_LIST = ("rational", "trigonometric", "elliptic")
DEFAULT_CFG = ThetaConfig(0.8j, 40)


def _instance(kind, model, shape, seed, cfg):
    rng = _rng(seed, kind, model, shape)
    params = draw_params(model, shape.M, rng, tau=cfg.tau, trunc=cfg.trunc)
    return rng, params, draw_spectral(shape, model, rng)


def task_equality(model, shape, seed=0, cfg=DEFAULT_CFG):
    rng, params, spectral = _instance("equality", model, shape, seed, cfg)
    return [check_equality(model, shape, params, seed, spectral=spectral)]


def task_korepin(model, shape, seed=0, cfg=DEFAULT_CFG):
    rng, params, spectral = _instance("korepin", model, shape, seed, cfg)
    out = []
    for colors in enumerate_labels(shape):
        out += korepin_checks(model, shape, colors, params, spectral, rng)
        if model == "elliptic" and _pivot_free(shape, colors):
            out.append(check_psi_match(shape, colors, params, spectral, rng))
    return out


def task_chain(model, shape, seed=0, cfg=DEFAULT_CFG):
    rng, params, spectral = _instance("chain", model, shape, seed, cfg)
    return [check_chain(model, shape, colors, params, spectral)
            for colors in enumerate_labels(shape)]


def task_ybe(seed=0, cfg=DEFAULT_CFG, draws=20):
    out = []
    for model in ("rational", "trigonometric"):
        for dim in (2, 3, 4):
            for i in range(draws):
                rng = _rng(seed, "ybe", model, dim, i)
                params = draw_params(model, dim - 1, rng)
                xs = [_rational(rng) for _ in range(3)]
                res = check_ybe(model, dim, xs, params)
                inst = describe(model, params=params, seed=seed, dim=dim, spectral_triple=xs)
                out.append(VerifyReport("ybe", inst, res == 0, "exact" if res == 0 else res))
    return out


def task_dybe(seed=0, cfg=DEFAULT_CFG, draws=10):
    out = []
    for dim in (2, 3):
        for i in range(draws):
            rng = _rng(seed, "dybe", dim, i)
            gamma = complex(rng.uniform(0.1, 0.4), rng.uniform(0.01, 0.08))
            lam = random_generic_lambda(rng, dim, gamma, cfg.tau)
            zs = [_cell(rng) for _ in range(3)]
            res = check_dybe(dim, zs, lam, gamma, cfg)
            inst = describe("elliptic", seed=seed, dim=dim, spectral_triple=zs, gamma=gamma,
                            lam=lam, tau=cfg.tau, theta_trunc=cfg.trunc)
            out.append(VerifyReport("dybe", inst, res <= TOL_YBE, res))
    return out


def task_theta(seed=0, cfg=DEFAULT_CFG, samples=100, tol=1e-10):
    rng = _rng(seed, "theta")
    s = tau_sign(cfg)
    odd = per1 = pertau = 0.0
    for _ in range(samples):
        z = complex(rng.uniform(-1, 1), rng.uniform(-0.4, 0.4))
        tz = theta(z, cfg)
        scale = max(abs(tz), 1e-300)
        odd = max(odd, abs(theta(-z, cfg) + tz) / scale)
        per1 = max(per1, abs(theta(z + 1, cfg) + tz) / scale)
        pred = s * cmath.exp(-2j * cmath.pi * z - 1j * cmath.pi * cfg.tau) * tz
        pertau = max(pertau, rel_residual(theta(z + cfg.tau, cfg), pred))
    conv = abs(theta(0.37, cfg) - theta(0.37, ThetaConfig(cfg.tau, 2 * cfg.trunc)))
    inst = describe("elliptic", seed=seed, tau=cfg.tau, theta_trunc=cfg.trunc)
    return [VerifyReport("theta_oddness", inst, odd <= tol, odd),
            VerifyReport("theta_period_1", inst, per1 <= tol, per1),
            VerifyReport("theta_period_tau", inst, pertau <= tol, pertau, {"tau_sign": s}),
            VerifyReport("theta_zero", inst, abs(theta(0, cfg)) <= 1e-12, abs(theta(0, cfg))),
            VerifyReport("theta_truncation", inst, conv <= 1e-13, conv)]


def task_correspondence(shape, seed=0, cfg=DEFAULT_CFG):
    rng = _rng(seed, "correspondence", shape)
    gamma = complex(rng.uniform(0.02, 0.06), rng.uniform(0.01, 0.05))
    params = draw_params("elliptic", shape.M, rng, tau=cfg.tau, gamma=gamma, trunc=cfg.trunc,
                         re=SMALL_RE)
    return [check_correspondence(shape, params, seed)]


def correspondence_shapes(scale="small"):
    shapes = [Shape(1, (1,), (), (), 2), Shape(2, (1, 1), (0,), (0,), 2)]
    if scale == "full":
        shapes += [Shape(2, (1, 2), (0,), (0,), 3), Shape(2, (2, 2), (0,), (0,), 3),
                   Shape(3, (1, 1, 2), (0, 0), (0, 0), 3)]
    return shapes


TASKS = {"equality": task_equality, "korepin": task_korepin, "chain": task_chain,
         "ybe": task_ybe, "dybe": task_dybe, "theta": task_theta,
         "correspondence": task_correspondence}


def suite_tasks(name, scale="small", seed=0, cfg=DEFAULT_CFG, models=MODEL_LIST):
    """Task tuples ``(kind, args)`` making up a suite, in report order."""
    if name == "all":
        return [t for n in SUITES for t in suite_tasks(n, scale, seed, cfg, models)]
    if name in ("equality", "korepin", "chain"):
        return [(name, (m, s, seed, cfg)) for m in models for s in manifest(scale, m)]
    if name == "ybe":
        return [("ybe", (seed, cfg)), ("dybe", (seed, cfg))]
    if name == "theta":
        return [("theta", (seed, cfg))]
    if name == "correspondence":
        return [("correspondence", (s, seed, cfg)) for s in correspondence_shapes(scale)]
    raise ValueError(f"unknown suite {name!r}")


def run_task(task):
    kind, args = task
    return TASKS[kind](*args)


def run_suite(name, scale="small", seed=0, cfg=DEFAULT_CFG, models=MODEL_LIST, workers=1,
              timing=False):
    tasks = suite_tasks(name, scale, seed, cfg, models)
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(workers) as pool:
            chunks = list(pool.map(_timed_task, tasks))
    else:
        chunks = [_timed_task(t) for t in tasks]
    out = []
    for reports, elapsed in chunks:
        for r in reports:
            if timing and r.timing is None:
                r.timing = elapsed / len(reports)
        out += reports
    return out


def _timed_task(task):
    t0 = time.perf_counter()
    reports = run_task(task)
    return reports, time.perf_counter() - t0


def rejudge(report: VerifyReport, tol: float) -> VerifyReport:
    """Re-decide a report with a float residual against a new relative tolerance."""
    if isinstance(report.residual, float):
        report.passed = report.residual <= tol
    return report
