"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json]

Each row reports the best of `repeat` runs per backend and the speedup.  The
naive and fast transforms are timed too, since they sit on top of the kernels.
"""
import argparse
import json
import timeit

import numpy as np

from harmonia import _kernels
from harmonia.group import FiniteAbelianGroup, GroupFun, dft


def cases(rng):
    def c(n):
        return rng.normal(size=n) + 1j * rng.normal(size=n)

    for moduli in [(64,), (16, 15), (8, 9, 7), (1024,)]:
        n = int(np.prod(moduli))
        f, g = c(n), c(n)
        yield f"cyclic_convolve {moduli}", "cyclic_convolve", (f, g, moduli)
        yield f"char_sum {moduli}", "char_sum", (f, moduli, -1)
    for M in (256, 4096, 65536):
        yield f"poisson_quadrature M={M}", "poisson_quadrature", (0.9, 0.3, c(M))


def best_of(fn, args, repeat):
    number = 1
    while timeit.timeit(lambda: fn(*args), number=number) < 0.05 and number < 1 << 16:
        number *= 2
    return min(timeit.repeat(lambda: fn(*args), number=number, repeat=repeat)) / number


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    rows = []
    for label, name, fargs in cases(rng):
        py = best_of(getattr(_kernels.python, name), fargs, args.repeat)
        cy = best_of(getattr(_kernels.compiled, name), fargs, args.repeat) if _kernels.compiled else None
        rows.append({"case": label, "python_s": py, "cython_s": cy, "speedup": py / cy if cy else None})

    for moduli in [(64, 63), (4096,)]:
        n = int(np.prod(moduli))
        f = GroupFun(FiniteAbelianGroup(moduli), rng.normal(size=n) + 1j * rng.normal(size=n))
        naive = best_of(lambda: dft(f), (), args.repeat)
        fast = best_of(lambda: dft(f, method="fast"), (), args.repeat)
        rows.append({"case": f"dft naive vs fast {moduli}", "python_s": naive, "cython_s": fast,
                     "speedup": naive / fast})

    if args.json:
        print(json.dumps({"backend": _kernels.BACKEND, "rows": rows}, indent=2))
        return
    print(f"active backend: {_kernels.BACKEND}")
    print(f"{'case':<34s} {'numpy':>11s} {'cython':>11s} {'speedup':>8s}")
    for r in rows:
        cy = f"{r['cython_s'] * 1e3:9.3f}ms" if r["cython_s"] else "        n/a"
        sp = f"{r['speedup']:7.1f}x" if r["speedup"] else "     n/a"
        print(f"{r['case']:<34s} {r['python_s'] * 1e3:9.3f}ms {cy} {sp}")
    print("(the dft rows compare the naive sum, in the numpy column, with the fast path)")


if __name__ == "__main__":
    main()
