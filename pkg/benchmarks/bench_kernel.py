"""Compare the compiled reduction kernel against the pure-Python fallback.

Three workloads, coarse to fine: the full tangent-cone pipeline on the
18-variable golden chart, the same pipeline batched over S6 charts that
need the Groebner route, and a raw normal-form stress test that reduces
random degree-6 polynomials against the golden chart's basis.  The
pipeline workloads are overhead-dominated (parsing, pair bookkeeping,
Fraction conversion), so expect parity there; the stress test isolates
the term-level loop where the compiled kernel earns its keep.

Usage: python3 benchmarks/bench_kernel.py [--repeats N] [--seed S]
"""

import argparse
import random
import time
from fractions import Fraction

from schubreg import kernel
from schubreg.gb import GREVLEX, _prepare, _to_kernel, buchberger, hilbert_data
from schubreg.ideal import kl_generators
from schubreg.perm import Permutation, all_permutations, bruhat_leq, is_covexillary
from schubreg.poly import MultiPoly

GOLDEN_V = Permutation.from_string("1423576")
GOLDEN_W = Permutation.from_string("7314562")


def golden_pipeline():
    hilbert_data(GOLDEN_V, GOLDEN_W)


def make_s6_batch(seed, size=12):
    """A fixed sample of S6 charts that need the Groebner route."""
    r = random.Random(seed)
    id6 = Permutation.identity(6)
    pool = [w for w in all_permutations(6) if not is_covexillary(w)]
    charts = [(id6, w) for w in r.sample(pool, size) if bruhat_leq(id6, w)]

    def batch():
        for v, w in charts:
            hilbert_data(v, w)

    return batch


def make_stress(seed):
    """Reducers from the golden chart's basis, targets random and dense."""
    ideal = kl_generators(GOLDEN_V, GOLDEN_W, "full")
    ring = ideal.ring
    pack = GREVLEX.pack_for(ring.nvars)
    reducers = _prepare([_to_kernel(f, pack) for f in buchberger(ideal).elements])
    r = random.Random(seed)
    targets = []
    for _ in range(40):
        terms = {}
        for _ in range(30):
            e = [0] * ring.nvars
            for _ in range(r.randint(2, 6)):
                e[r.randrange(ring.nvars)] += 1
            terms[tuple(e)] = Fraction(r.randint(-50, 50))
        f = MultiPoly(ring, {k: v for k, v in terms.items() if v})
        if not f.is_zero():
            targets.append(_to_kernel(f, pack))

    def stress():
        for _ in range(5):
            for t in targets:
                kernel.normal_form(t, reducers, pack.corr, pack.hmask)

    return stress


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    workloads = [
        ("golden chart pipeline", golden_pipeline),
        ("S6 chart batch (12)", make_s6_batch(args.seed)),
        ("normal-form stress", make_stress(args.seed)),
    ]
    original = kernel.implementation_name()
    print("active kernel at import: %s" % original)
    print("%-24s %12s %12s %9s" % ("workload", "python (s)", "cython (s)", "speedup"))
    try:
        for label, fn in workloads:
            results = {}
            for impl in ("python", "cython"):
                kernel.set_implementation(impl)
                fn()  # warm caches outside the timed region
                results[impl] = best_of(fn, args.repeats)
            print(
                "%-24s %12.4f %12.4f %8.2fx"
                % (
                    label,
                    results["python"],
                    results["cython"],
                    results["python"] / results["cython"],
                )
            )
    finally:
        kernel.set_implementation(original)


if __name__ == "__main__":
    main()
