"""Benchmark the compiled kernel against the pure-Python fallback.

Workloads mirror what the engine actually does: Groebner-style reductions
of structured polynomials, and row reduction of slice matrices (sparse,
small rational entries).

Run:  python benchmarks/bench_kernels.py
"""

import random
import time

import brieskorn._kernels_py as pure

try:
    import brieskorn._kernels as compiled
except ImportError:
    compiled = None


def grevlex_key(exp):
    return (0, sum(exp)) + tuple(-e for e in reversed(exp))


def make_flat(terms):
    out = [(grevlex_key(e), e, n, d) for e, (n, d) in terms.items()]
    out.sort(key=lambda t: t[0], reverse=True)
    return out


def random_poly(rng, nterms, nv=3, maxdeg=7):
    terms = {}
    while len(terms) < nterms:
        exp = tuple(rng.randint(0, maxdeg) for _ in range(nv))
        terms[exp] = (rng.randint(-5, 5) or 1, rng.randint(1, 4))
    return make_flat(terms)


def slice_style_rows(rng, nrows, ncols, per_row=4):
    """Sparse rows with small entries, like d/df-wedge slice matrices."""
    rows = []
    for _ in range(nrows):
        cols = sorted(rng.sample(range(ncols), min(per_row, ncols)))
        rows.append([(c, rng.randint(-4, 4) or 1, rng.randint(1, 3)) for c in cols])
    return rows


def bench(label, fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    print(f"  {label}: {best * 1000:.2f} ms")
    return best


def main():
    rng = random.Random(20260810)
    backends = [("python", pure)]
    if compiled is not None:
        backends.append(("cython", compiled))
    else:
        print("compiled kernel not available; benchmarking the fallback only")

    print("== normal_form: 400 reductions of 50-term polynomials vs 10-element basis")
    p = random_poly(rng, 50)
    basis = [random_poly(rng, 8) for _ in range(10)]
    results = {}
    for name, mod in backends:
        def run():
            for _ in range(400):
                mod.normal_form(p, basis)
        results[name] = bench(name, run)
    _speedup(results)

    print("== rref: 250x300 slice-style sparse matrix")
    rows = slice_style_rows(rng, 250, 300)
    results = {}
    for name, mod in backends:
        results[name] = bench(name, mod.rref, rows, repeat=3)
    _speedup(results)

    print("== add_terms: 2000 merges of 200-term polynomials")
    a = random_poly(rng, 200, maxdeg=12)
    b = random_poly(rng, 200, maxdeg=12)
    results = {}
    for name, mod in backends:
        def run():
            for _ in range(2000):
                mod.add_terms(a, b)
        results[name] = bench(name, run)
    _speedup(results)


def _speedup(results):
    if "cython" in results and "python" in results:
        print(f"  speedup: {results['python'] / results['cython']:.2f}x")


if __name__ == "__main__":
    main()
