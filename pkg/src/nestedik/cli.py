"""Command-line front end.

    nestedik eval SPEC.json [--method lattice|closed|both]
    nestedik enumerate --M 2 --k 1,1 --LI 0 --LII 0 --LM 2
    nestedik verify SUITE [--scale small|full] [--seed N] [--workers N]
    nestedik diagram SPEC.json [--out lattice.svg]

Exit codes: 0 success, 1 verification failure, 2 input error, 3 genericity
error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass

from . import __version__, kernels
from .labels import (FMLabel, LabelError, Shape, check_colors, colors_from_fm, enumerate_labels,
                     fm_from_colors)
from .lattice import eval_partition
from .rmatrix import ModelParams
from .scalars import GenericityError, ThetaConfig, format_rational, parse_rational, rel_residual
from .spectral import SpectralData
from .verify import SUITES, draw_params, draw_spectral, encode, rejudge, run_suite, _rng
from .weightfn import weight_closed

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_GENERIC = 0, 1, 2, 3


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class Problem:
    shape: Shape
    colors: tuple
    spectral: SpectralData
    params: ModelParams
    seed: int = 0


# ------------------------------------------------------------------ spec files


def _complex(v, what):
    if isinstance(v, (list, tuple)) and len(v) == 2 and all(isinstance(t, (int, float)) for t in v):
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return complex(v)
    raise SpecError(f"{what}: expected a [re, im] pair, got {v!r}")


def _exact(v, what):
    if isinstance(v, bool):
        raise SpecError(f"{what}: expected a rational, got {v!r}")
    if isinstance(v, int):
        return parse_rational(str(v))
    if isinstance(v, str):
        try:
            return parse_rational(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise SpecError(f"{what}: {exc}") from None
    raise SpecError(f"{what}: expected a string like \"p/q\", got {v!r}")


def _int_list(v, what):
    if not isinstance(v, list) or not all(isinstance(t, int) and not isinstance(t, bool) for t in v):
        raise SpecError(f"{what} must be a list of integers")
    return tuple(v)


def parse_tau(text):
    """Accept "0.8j", "0.8i", "0.1+0.8i" or a [re, im] pair."""
    if isinstance(text, list):
        return _complex(text, "tau")
    try:
        return complex(str(text).replace(" ", "").replace("i", "j"))
    except ValueError:
        raise SpecError(f"cannot parse tau {text!r}") from None


def load_spec(data) -> Problem:
    """Build a Problem from a parsed ProblemSpecFile (a dict)."""
    if not isinstance(data, dict):
        raise SpecError("spec must be a JSON object")
    try:
        model = data["model"]
        M = data["M"]
        if not isinstance(M, int) or isinstance(M, bool):
            raise SpecError("M must be an integer")
        shape = Shape(M, _int_list(data["k"], "k"), _int_list(data.get("LI", []), "LI"),
                      _int_list(data.get("LII", []), "LII"), data["LM"])
    except KeyError as exc:
        raise SpecError(f"missing field {exc.args[0]!r}") from None
    except LabelError as exc:
        raise SpecError(str(exc)) from None
    if model not in ("rational", "trigonometric", "elliptic"):
        raise SpecError(f"unknown model {model!r}")
    if ("colors" in data) == ("I" in data):
        raise SpecError('give exactly one of "colors" and "I"')
    try:
        if "colors" in data:
            colors = check_colors(_int_list(data["colors"], "colors"), shape)
        else:
            sets = data["I"]
            if not isinstance(sets, list):
                raise SpecError("I must be a list of index lists")
            colors = colors_from_fm(FMLabel(tuple(_int_list(s, "I") for s in sets), None), shape)
    except LabelError as exc:
        raise SpecError(str(exc)) from None
    seed = data.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise SpecError("seed must be an integer")
    params = _load_params(model, M, data.get("params"), seed)
    spectral = _load_spectral(model, shape, data.get("spectral"), seed)
    return Problem(shape, colors, spectral, params, seed)


def _load_params(model, M, raw, seed):
    rng = _rng(seed, "spec-params", model, M)
    try:
        if model == "rational":
            return ModelParams("rational")
        if model == "trigonometric":
            if raw is None or "q" not in raw:
                return draw_params(model, M, rng)
            return ModelParams("trigonometric", q=_exact(raw["q"], "q"))
        raw = raw or {}
        tau = parse_tau(raw.get("tau", [0.0, 0.8]))
        trunc = raw.get("theta_trunc", 40)
        if "lambda" not in raw or "gamma" not in raw:
            return draw_params(model, M, rng, tau=tau, trunc=trunc)
        lam = [_complex(v, "lambda") for v in raw["lambda"]]
        if len(lam) != M + 1:
            raise SpecError(f"lambda needs M+1 = {M + 1} components")
        return ModelParams("elliptic", tau=tau, gamma=_complex(raw["gamma"], "gamma"),
                           lam=tuple(lam), trunc=trunc)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, (SpecError, GenericityError)):
            raise
        raise SpecError(str(exc)) from None


def _load_spectral(model, shape, raw, seed):
    if raw is None:
        return draw_spectral(shape, model, _rng(seed, "spec-spectral", model, shape))
    conv = (lambda v: _complex(v, "spectral")) if model == "elliptic" else \
        (lambda v: _exact(v, "spectral"))
    try:
        sp = SpectralData([[conv(v) for v in row] for row in raw["x"]],
                          [[conv(v) for v in row] for row in raw.get("yI", [])],
                          [[conv(v) for v in row] for row in raw.get("yII", [])],
                          [conv(v) for v in raw["y"]])
        return sp.check(shape)
    except KeyError as exc:
        raise SpecError(f"spectral is missing {exc.args[0]!r}") from None
    except (TypeError, LabelError) as exc:
        raise SpecError(str(exc)) from None


def dump_spec(problem: Problem) -> dict:
    """Inverse of ``load_spec``: every drawn value is written out explicitly."""
    sh, p = problem.shape, problem.params
    out = {"model": p.model, "M": sh.M, "k": list(sh.k), "LI": list(sh.LI),
           "LII": list(sh.LII), "LM": sh.LM, "colors": list(problem.colors),
           "spectral": {"x": encode(problem.spectral.x), "yI": encode(problem.spectral.yI),
                        "yII": encode(problem.spectral.yII), "y": encode(problem.spectral.y)},
           "seed": problem.seed}
    if p.model == "trigonometric":
        out["params"] = {"q": format_rational(p.q)}
    elif p.model == "elliptic":
        out["params"] = {"tau": encode(complex(p.tau)), "gamma": encode(p.gamma),
                         "lambda": encode(p.lam), "theta_trunc": p.trunc}
    return out


def read_spec(path) -> Problem:
    try:
        if path == "-":
            data = json.load(sys.stdin)
        else:
            with open(path) as fh:
                data = json.load(fh)
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON ({exc.msg})") from None
    return load_spec(data)


# --------------------------------------------------------------------- output


def fmt_value(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    return format_rational(v)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _emit(text, out=None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ------------------------------------------------------------------- commands


def cmd_eval(args) -> int:
    prob = read_spec(args.spec)
    if args.theta_trunc is not None and prob.params.model == "elliptic":
        p = prob.params
        prob = Problem(prob.shape, prob.colors, prob.spectral,
                       ModelParams(p.model, p.q, p.tau, p.gamma, p.lam, args.theta_trunc),
                       prob.seed)
    p = prob.params
    if p.model == "elliptic":
        p.check_generic()
    t0 = time.perf_counter()
    vals = {}
    if args.method in ("lattice", "both"):
        vals["lattice"] = eval_partition(prob.shape, prob.spectral, prob.colors, p)
    if args.method in ("closed", "both"):
        vals["closed"] = weight_closed(prob.shape, prob.spectral, prob.colors, p)
    elapsed = time.perf_counter() - t0
    terms = math.prod(math.factorial(n) for n in prob.shape.k)
    result = {"spec": dump_spec(prob), "method": args.method,
              "diagnostics": {"vertices": prob.shape.nvertices(), "closed_form_terms": terms,
                              "backend": kernels.BACKEND}}
    if p.model == "elliptic":
        result["diagnostics"]["theta_trunc"] = p.trunc
    if args.timing:
        result["diagnostics"]["timing_s"] = round(elapsed, 6)
    if args.method == "both":
        result["values"] = {k: fmt_value(v) for k, v in vals.items()}
        diff = vals["lattice"] - vals["closed"]
        result["difference"] = fmt_value(diff)
        if p.model == "elliptic":
            result["relative_residual"] = rel_residual(vals["lattice"], vals["closed"])
    else:
        result["value"] = fmt_value(next(iter(vals.values())))
    _emit(dumps(result) + "\n", args.out)
    return EXIT_OK


def _shape_from_flags(args) -> Shape:
    def ints(text):
        if text is None or text == "":
            return ()
        try:
            return tuple(int(t) for t in text.split(","))
        except ValueError:
            raise SpecError(f"expected comma-separated integers, got {text!r}") from None
    try:
        return Shape(args.M, ints(args.k), ints(args.LI), ints(args.LII), args.LM)
    except LabelError as exc:
        raise SpecError(str(exc)) from None


def cmd_enumerate(args) -> int:
    shape = _shape_from_flags(args)
    labels = enumerate_labels(shape)
    rows = []
    for colors in labels:
        fm = fm_from_colors(colors, shape)
        rows.append({"colors": list(colors), "I": [list(s) for s in fm.I],
                     "Itilde": [list(s) for s in fm.Itilde]})
    _emit(dumps({"shape": shape.to_dict(), "count": len(rows), "labels": rows}) + "\n",
          args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    tau = parse_tau(args.tau)
    try:
        cfg = ThetaConfig(tau, args.theta_trunc if args.theta_trunc is not None else 40)
    except ValueError as exc:
        raise SpecError(str(exc)) from None
    if args.tol_rel is not None and not args.tol_rel > 0:
        raise SpecError("--tol-rel must be positive")
    reports = run_suite(args.suite, args.scale, args.seed, cfg, workers=args.workers,
                        timing=args.timing)
    lines = []
    failed = 0
    for r in reports:
        if args.tol_rel is not None:
            rejudge(r, args.tol_rel)
        failed += not r.passed
        lines.append(r.to_json(args.timing))
    summary = {"summary": {"suite": args.suite, "scale": args.scale, "seed": args.seed,
                           "total": len(reports), "passed": len(reports) - failed,
                           "failed": failed}}
    lines.append(dumps(summary))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_diagram(args) -> int:
    from .diagram import render_svg
    prob = read_spec(args.spec)
    svg = render_svg(prob.shape, prob.spectral, prob.colors, prob.params, args.configuration)
    _emit(svg, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nestedik", description=__doc__.split("\n")[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate a partition function / weight function")
    e.add_argument("spec", help="ProblemSpecFile JSON path, or - for stdin")
    e.add_argument("--method", choices=("lattice", "closed", "both"), default="lattice")
    e.add_argument("--theta-trunc", type=int)
    e.add_argument("--timing", action="store_true", help="include wall-clock time")
    e.add_argument("--out")
    e.set_defaults(func=cmd_eval)

    n = sub.add_parser("enumerate", help="list the valid labels of a shape")
    n.add_argument("--M", type=int, required=True)
    n.add_argument("--k", required=True, help="comma-separated k_1..k_M")
    n.add_argument("--LI", default="", help="comma-separated L^I_1..L^I_{M-1}")
    n.add_argument("--LII", default="", help="comma-separated L^II_1..L^II_{M-1}")
    n.add_argument("--LM", type=int, required=True)
    n.add_argument("--out")
    n.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES + ("all",))
    v.add_argument("--scale", choices=("small", "full"), default="small")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--tol-rel", type=float)
    v.add_argument("--theta-trunc", type=int)
    v.add_argument("--tau", default="0.8j")
    v.add_argument("--timing", action="store_true")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("diagram", help="draw one lattice configuration as SVG")
    d.add_argument("spec")
    d.add_argument("--configuration", type=int,
                   help="index in enumeration order (default: largest |weight|)")
    d.add_argument("--out")
    d.set_defaults(func=cmd_diagram)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GenericityError as exc:
        print(f"nestedik: genericity failure: {exc}", file=sys.stderr)
        return EXIT_GENERIC
    except (SpecError, LabelError, IndexError) as exc:
        print(f"nestedik: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
