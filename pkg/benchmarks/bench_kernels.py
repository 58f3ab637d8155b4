"""Time the pure-Python and compiled kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import timeit

import numpy as np

from nestedik import _pykernels
from nestedik.labels import Shape, enumerate_labels
from nestedik.lattice import build_lattice, flatten
from nestedik.verify import draw_params, draw_spectral

try:
    from nestedik import _ckernels
except ImportError:
    _ckernels = None

TAU = 0.8j


def cases():
    rng = np.random.default_rng(0)
    zs = rng.uniform(-1, 1, 2000) + 1j * rng.uniform(-0.4, 0.4, 2000)
    yield "theta x2000", lambda k: [k.theta(z, TAU, 40) for z in zs]
    yield "theta_many 2000", lambda k: k.theta_many(zs, TAU, 40)
    for shape in (Shape(1, (2,), (), (), 4), Shape(2, (2, 2), (1,), (0,), 3)):
        r = random.Random(1)
        p = draw_params("elliptic", shape.M, r)
        sp = draw_spectral(shape, "elliptic", r)
        graph = build_lattice(shape)
        arrays = [flatten(graph, sp, c, p) for c in enumerate_labels(shape)]
        yield (f"dfs_contract elliptic T={shape.T} ({len(arrays)} labels)",
               lambda k, arrays=arrays: [k.dfs_contract(**a) for a in arrays])
    yield "multiplicative_theta x2000", \
        lambda k: [k.multiplicative_theta(np.exp(z.real / 4) + 0.1j * z.imag, 0.05, 60)
                   for z in zs]


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    print(f"{'kernel':44s}" + "".join(f"{n:>12s}" for n, _ in backends) + f"{'speedup':>10s}")
    for name, fn in cases():
        times = [min(timeit.repeat(lambda: fn(k), number=1, repeat=args.repeat))
                 for _, k in backends]
        speed = f"{times[0] / times[1]:9.1f}x" if len(times) == 2 else ""
        print(f"{name:44s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times) + speed)


if __name__ == "__main__":
    main()
