"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run ``pytest tests/test_acceptance.py -s`` or ``python tests/test_acceptance.py``.
"""

import time

import pytest

from nestedik.verify import (DEFAULT_CFG, TOL_ELLIPTIC, TOL_YBE, manifest, run_suite,
                             correspondence_shapes)

TOL_THETA = 1e-10


def _summary(reports):
    bad = [r for r in reports if not r.passed]
    worst = max((r.residual for r in reports if isinstance(r.residual, float)), default=0.0)
    return bad, worst


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def c1_ybe():
    reports, dt = _timed(lambda: run_suite("ybe"))
    ybe = [r for r in reports if r.suite == "ybe"]
    ok = len(ybe) == 120 and all(r.residual == "exact" and r.passed for r in ybe)
    return ok and dt < 10, f"{len(ybe)} triples, residual exactly 0, {dt:.1f}s (< 10s)"


def c2_dybe():
    reports, dt = _timed(lambda: run_suite("ybe"))
    dy = [r for r in reports if r.suite == "dybe"]
    bad, worst = _summary(dy)
    ok = len(dy) == 20 and not bad and worst < TOL_YBE
    return ok and dt < 30, f"{len(dy)} draws, max rel residual {worst:.1e} (< 1e-8), {dt:.1f}s"


def c3_theta():
    reports, dt = _timed(lambda: run_suite("theta"))
    named = {r.suite: r for r in reports}
    wanted = ("theta_oddness", "theta_period_1", "theta_period_tau")
    ok = all(named[n].passed and named[n].residual <= TOL_THETA for n in wanted)
    worst = max(named[n].residual for n in wanted)
    return ok and dt < 1, f"100 points, max residual {worst:.1e} (< 1e-10), {dt:.2f}s (< 1s)"


def _equality(model, limit, tol=None):
    reports, dt = _timed(lambda: run_suite("equality", models=(model,)))
    bad, worst = _summary(reports)
    labels = sum(r.detail["labels"] for r in reports)
    ok = not bad and len(reports) == len(manifest("small", model))
    if tol is None:
        ok = ok and all(r.residual == "exact" for r in reports)
        res = "exact"
    else:
        ok = ok and worst < tol
        res = f"max rel residual {worst:.1e}"
    return ok and dt < limit, f"{len(reports)} shapes, {labels} labels, {res}, {dt:.1f}s"


def c4_rational():
    return _equality("rational", 120)


def c5_trig():
    return _equality("trigonometric", 120)


def c6_elliptic():
    return _equality("elliptic", 180, TOL_ELLIPTIC)


def c7_korepin():
    reports, dt = _timed(lambda: run_suite("korepin"))
    bad, worst = _summary(reports)
    kinds = sorted({r.suite for r in reports})
    ok = not bad and {"symmetry", "degree", "quasiperiodicity", "caseA", "caseB",
                      "initial"} <= set(kinds)
    return ok and dt < 180, (f"{len(reports)} checks ({', '.join(kinds)}), "
                             f"max rel residual {worst:.1e}, {dt:.1f}s (< 180s)")


def c8_chain():
    reports, dt = _timed(lambda: run_suite("chain"))
    bad, worst = _summary(reports)
    ok = not bad and worst <= TOL_ELLIPTIC
    return ok, f"{len(reports)} instances rebuilt from 1, max rel residual {worst:.1e}, {dt:.1f}s"


def c9_correspondence():
    reports = run_suite("correspondence")
    ok = len(reports) == len(correspondence_shapes()) >= 2 and all(
        r.passed and r.detail["a"] and r.detail["b"] and r.detail["c"] for r in reports)
    consts = ", ".join(f"{complex(r.detail['rtv_ratio']):.4g}" for r in reports)
    return ok, f"{len(reports)} shapes, (a)(b)(c) all within 1e-6, rtv ratios {consts}"


def c10_determinism():
    ok = True
    for suite, models in (("ybe", None), ("theta", None), ("correspondence", None),
                          ("korepin", ("elliptic",)), ("equality", ("trigonometric",))):
        kw = {"models": models} if models else {}
        a = "\n".join(r.to_json() for r in run_suite(suite, seed=3, **kw))
        b = "\n".join(r.to_json() for r in run_suite(suite, seed=3, **kw))
        c = "\n".join(r.to_json() for r in run_suite(suite, seed=3, workers=2, **kw))
        ok = ok and a == b == c
    return ok, "5 suites re-run at seed 3, serial and 2 workers, byte-identical"


CRITERIA = [
    (1, "YBE exactness", c1_ybe),
    (2, "dynamical YBE", c2_dybe),
    (3, "theta identities", c3_theta),
    (4, "equality, rational", c4_rational),
    (5, "equality, trigonometric", c5_trig),
    (6, "equality, elliptic", c6_elliptic),
    (7, "Korepin suites", c7_korepin),
    (8, "recursion chain", c8_chain),
    (9, "correspondence", c9_correspondence),
    (10, "determinism", c10_determinism),
]


def line(n, name, ok, info):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {n:2d} {name}: {info}"


@pytest.mark.parametrize("n,name,fn", CRITERIA, ids=[f"c{n}" for n, _, _ in CRITERIA])
def test_criterion(n, name, fn, capsys):
    ok, info = fn()
    with capsys.disabled():
        print("\n" + line(n, name, ok, info))
    assert ok, info


if __name__ == "__main__":
    import sys
    failed = 0
    for n, name, fn in CRITERIA:
        ok, info = fn()
        failed += not ok
        print(line(n, name, ok, info), flush=True)
    sys.exit(1 if failed else 0)
