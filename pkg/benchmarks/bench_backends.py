"""Time the compiled walk kernel against the pure-Python twin.

Runs the same transition-matrix workloads through both kernels
(forced via monkeypatching, so one process measures both) and prints
a small table. Invoke with python3 benchmarks/bench_backends.py.
"""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

import corpus
from fmeas import _fallback, backend, measure
from fmeas.groups import Subgroup
from fmeas.lattice import SubextLattice, make_setup


def workloads():
    c2_4 = corpus.group("C2^4")
    yield "C2^4 full, n=4", make_setup(c2_4, [1, 2, 4, 8], (1, 2, 4, 8)), Subgroup(
        c2_4, range(16)
    )
    s4 = corpus.group("S4")
    t = next(x for x in range(24) if s4.element_order(x) == 2)
    c = next(x for x in range(24) if s4.element_order(x) == 4)
    yield "S4 full, n=2", make_setup(s4, [t, c], (t, c)), Subgroup(s4, range(24))
    c13 = corpus.group("C13")
    yield "C13, n=2", make_setup(c13, [1], (1, 1)), Subgroup(c13, range(13))


def run_with(kernel, setup, K, lattice):
    original = measure.walk_product
    measure.walk_product = kernel
    try:
        start = time.perf_counter()
        T = measure.transition_matrix(setup, K, threads=1, lattice=lattice)
        return time.perf_counter() - start, T
    finally:
        measure.walk_product = original


def main():
    if backend.BACKEND != "compiled":
        print("compiled kernel unavailable; only the pure timing is meaningful")
    print("%-16s %12s %12s %8s" % ("workload", "compiled", "pure", "ratio"))
    for name, setup, K in workloads():
        lattice = SubextLattice(setup, K)
        t_c, T_c = run_with(backend.walk_product, setup, K, lattice)
        t_p, T_p = run_with(_fallback.walk_product, setup, K, lattice)
        if T_c.rows != T_p.rows:
            raise SystemExit("kernel mismatch on %s" % name)
        print(
            "%-16s %10.1f ms %10.1f ms %7.1fx"
            % (name, t_c * 1e3, t_p * 1e3, t_p / t_c if t_c else float("inf"))
        )


if __name__ == "__main__":
    main()
