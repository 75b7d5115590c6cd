"""Compare the compiled and pure-Python reduction kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each workload is run once per backend (best of ``--repeat``) and the results
are checked to agree.
"""

import argparse
import time

from equising import kernel
from equising.brmult import ModuleContext, graded_colength, maximal_ideal_times
from equising.fields import GF, QQ
from equising.germ import IcisGerm, jacobian_module
from equising.poly import Ring
from equising.sb import colength, ideal


def jacobian_colength(text, field):
    R = Ring("xyz", field)
    f = R.parse(text)
    return lambda: colength(ideal([f.derivative(i) for i in range(3)]))


def rees_piece(text, n, field):
    R = Ring("xyz", field)
    g = IcisGerm(R, [], R.parse(text))
    m = maximal_ideal_times(jacobian_module(g).module())
    ctx = ModuleContext.for_germ(g)
    return lambda: graded_colength(m, ctx, n)


WORKLOADS = [
    ("mu  z^5+y^7x+x^15+zy^6  QQ", jacobian_colength("z^5 + z*y^6 + y^7*x + x^15", QQ)),
    ("mu  z^5+y^7x+x^15+zy^6  GF(p)", jacobian_colength("z^5 + z*y^6 + y^7*x + x^15", GF())),
    ("c_4 of m*J, z^3+zy^3+y^4x+x^9  GF(p)", rees_piece("z^3 + z*y^3 + y^4*x + x^9", 4, GF())),
    ("c_3 of m*J, z^3+zy^3+y^4x+x^9  QQ", rees_piece("z^3 + z*y^3 + y^4*x + x^9", 3, QQ)),
]


def best_of(fn, repeat):
    best, value = None, None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, value


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = ["python"]
    try:
        kernel.use("cython")
        backends.append("cython")
    except ImportError:
        print("compiled kernel not built; timing the Python kernel only")
    print(f"{'workload':40s} {'value':>8s} " + " ".join(f"{b:>10s}" for b in backends) + "   speedup")
    for name, fn in WORKLOADS:
        times, values = [], []
        for b in backends:
            kernel.use(b)
            t, v = best_of(fn, args.repeat)
            times.append(t)
            values.append(v)
        assert len(set(values)) == 1, f"backends disagree on {name}: {values}"
        speed = f"{times[0] / times[-1]:8.2f}x" if len(times) > 1 else ""
        print(f"{name:40s} {values[0]!s:>8s} " + " ".join(f"{t:9.3f}s" for t in times) + "  " + speed)


if __name__ == "__main__":
    main()
