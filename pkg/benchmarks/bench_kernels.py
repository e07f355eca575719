"""Compare the numba and numpy variants of the three hot kernels.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]

Inputs are taken from real workloads: canonical-form search on the E6
mutation class, template matching on the same class, and the associativity
check on the algebras of the type D_6 mutation class.
"""

import argparse
import time

import numpy as np

from frobdim import kernels
from frobdim.algebra import build_algebra
from frobdim.classify import _all_perms6, e6_templates
from frobdim.families import tree_D, tree_E6
from frobdim.quiver import _orderings, _refined_cells, enumerate_mutation_class
from frobdim.relations import bound_quiver


def canonical_inputs(members):
    out = []
    for q in members:
        pos = {v: i for i, v in enumerate(q.vertices)}
        out.append((q.adjacency(), _orderings(_refined_cells(q), pos)))
    return out


def template_inputs(members):
    perms = _all_perms6()
    out = []
    for q in members:
        for t in e6_templates():
            tdir = np.zeros((6, 6), dtype=np.uint8)
            tund = np.zeros((6, 6), dtype=np.uint8)
            for s, e in t.directed:
                tdir[s - 1, e - 1] = 1
            for _, s, e in t.free:
                tund[s - 1, e - 1] = 1
            out.append((q.adjacency(), tdir, tund, perms))
    return out


def associativity_inputs(members):
    out = []
    for q in members:
        a = build_algebra(bound_quiver(q))
        out.append((a.mult_idx, a.mult_coef))
    return out


def bench(fn, inputs, repeat):
    results = [fn(*args) for args in inputs]  # warm-up, includes JIT compile
    best = float("inf")
    for _ in range(repeat):
        started = time.perf_counter()
        for args in inputs:
            fn(*args)
        best = min(best, time.perf_counter() - started)
    return best, results


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    e6 = enumerate_mutation_class(tree_E6())
    d6 = enumerate_mutation_class(tree_D(6))
    cases = [
        ("best_permutation", canonical_inputs(e6 + d6)),
        ("first_template_match", template_inputs(e6)),
        ("associativity_defects", associativity_inputs(d6)),
    ]
    print(f"{'kernel':<24}{'calls':>7}{'numba s':>11}{'numpy s':>11}{'speedup':>9}")
    for name, inputs in cases:
        t_jit, r_jit = bench(getattr(kernels, name + "_numba"), inputs, args.repeat)
        t_np, r_np = bench(getattr(kernels, name + "_numpy"), inputs, args.repeat)
        if r_jit != r_np:
            raise SystemExit(f"{name}: numba and numpy results differ")
        print(f"{name:<24}{len(inputs):>7}{t_jit:>11.4f}{t_np:>11.4f}{t_np / t_jit:>9.1f}")


if __name__ == "__main__":
    main()
