"""Compare the compiled and pure-Python elimination kernels.

Two workloads: ``random`` (a dense random matrix, dominated by bignum
growth) and ``engine`` (every matrix eliminated while building the small
and DK slices of A2 at N=5 and their bar complexes, replayed per backend).

Usage: python benchmarks/bench_kernels.py [--workload engine|random|both]
"""

import argparse
import random
import time

from omegalab.exactalg import Q, cyclotomic_field, kernels


def random_matrix(field, n, m, density, seed):
    rng = random.Random(seed)
    rows = []
    for _ in range(n):
        row = []
        for _ in range(m):
            if rng.random() < density:
                row.append(field.from_coeffs([Q(rng.randint(-3, 3)) for _ in range(field.d)]))
            else:
                row.append(field.zero)
        rows.append(row)
    return rows


def time_backend(name, field, rows, ncols, repeat):
    kernels.set_backend(name)
    best = float("inf")
    result = None
    for _ in range(repeat):
        work = [list(r) for r in rows]
        t0 = time.perf_counter()
        rank, pivots = kernels.rref(work, ncols, field.d, field.red, field.inv)
        best = min(best, time.perf_counter() - t0)
        result = (rank, pivots, work[:rank])
    return best, result


def record_engine_workload(height=6):
    """Matrices passed to the kernel by a representative computation."""
    from omegalab import cohomology, qform, rootdata
    from omegalab.nichols import slices
    from omegalab.nichols.bicharacter import Bicharacter

    calls = []
    original = kernels.rref

    def spy(rows, ncols, d, red, inv):
        calls.append(([list(r) for r in rows], ncols, d, red, inv))
        return original(rows, ncols, d, red, inv)

    cd = rootdata.cartan_datum("A", 2)
    spec = qform.q_min(cd, 5)
    kernels.rref = spy
    try:
        slices.small_slice(Bicharacter(spec), height + 1)
        dk = slices.dk_slice(spec, height)
        for mu in rootdata.weights_up_to_height(cd, height):
            cohomology.cohomology_dims(dk, mu)
    finally:
        kernels.rref = original
    return calls


def replay(name, calls, repeat):
    kernels.set_backend(name)
    best = float("inf")
    ranks = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        ranks = [kernels.rref([list(r) for r in rows], n, d, red, inv)[0] for rows, n, d, red, inv in calls]
        best = min(best, time.perf_counter() - t0)
    return best, ranks


def bench_engine(repeat):
    calls = record_engine_workload()
    print(f"engine workload: {len(calls)} matrices")
    times, ranks = {}, {}
    for name in kernels.available_backends():
        times[name], ranks[name] = replay(name, calls, repeat)
        print(f"{name:9s} {times[name]:.3f} s")
    if len(times) == 2:
        print(f"ranks agree: {ranks['compiled'] == ranks['python']}")
        print(f"speedup: {times['python'] / times['compiled']:.2f}x")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size", type=int, default=40)
    ap.add_argument("--conductor", type=int, default=5)
    ap.add_argument("--density", type=float, default=0.3)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--workload", choices=["engine", "random", "both"], default="both")
    args = ap.parse_args(argv)
    initial = kernels.BACKEND
    if args.workload in ("engine", "both"):
        bench_engine(args.repeat)
    if args.workload in ("random", "both"):
        bench_random(args)
    kernels.set_backend(initial)


def bench_random(args):
    field = cyclotomic_field(args.conductor)
    rows = random_matrix(field, args.size, args.size, args.density, seed=1)
    backends = kernels.available_backends()
    times = {}
    results = {}
    for name in backends:
        times[name], results[name] = time_backend(name, field, rows, args.size, args.repeat)
        print(f"{name:9s} {args.size}x{args.size} over Q(zeta_{args.conductor}): {times[name]:.3f} s")
    if len(results) == 2:
        same = results["compiled"] == results["python"]
        print(f"results agree: {same}")
        print(f"speedup: {times['python'] / times['compiled']:.2f}x")
    else:
        print("compiled kernels not built; run `python setup.py build_ext --inplace`")


if __name__ == "__main__":
    main()
