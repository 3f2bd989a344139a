"""Compare the compiled and pure-Python evaluation machines.

    python3 benchmarks/bench_kernel.py [--repeat 3]

Each workload compiles the same formula once per machine and times only
the runs.  Both machines must agree on every answer.
"""

import argparse
import itertools
import statistics
import time

from fotransfer import _pykernel, codings, corpus
from fotransfer.evaluate import KERNEL, Program
from fotransfer.schemes import tilde_translate
from fotransfer.structures import FiniteStructure
from fotransfer.syntax import parse

try:
    from fotransfer._ckernel import Machine as CMachine
except ImportError:
    CMachine = None


def workloads():
    V = codings.vn_fragment(4).structure
    plus = codings.vn_scheme().rel("Plus")
    nums = range(5)
    yield ("vn(4) Plus on number triples", V, plus.formula,
           [dict(zip(plus.args, t)) for t in itertools.product(nums, repeat=3)])

    P = codings.encode_graph_as_poset(
        codings.Graph(4, frozenset({(0, 1), (1, 2), (2, 3)}))).structure
    phi = parse("forall x. exists y. forall z. (E(x,y) & (!E(y,z) | E(x,z)))")
    yield ("fpo translation of a Pi 3 sentence", P,
           tilde_translate(codings.fpo_scheme(), phi), [{}])

    n = 40
    A = FiniteStructure.build(corpus.BINARY_SIG, n,
                              {"E": [(a, b) for a in range(n) for b in range(n) if a <= b]})
    f = parse("forall x. forall y. forall z. ((E(x,y) & E(y,z)) -> E(x,z))")
    yield (f"transitivity of a {n}-element linear order", A, f, [{}])


def bench(A, f, asgs, cls, repeat):
    times = []
    answers = None
    for _ in range(repeat):
        prog = Program(A, f, machine_cls=cls)
        t0 = time.perf_counter()
        got = [prog(a) for a in asgs]
        times.append(time.perf_counter() - t0)
        answers = got
    return statistics.median(times), answers


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"default kernel: {KERNEL}")
    if CMachine is None:
        print("compiled kernel not built; only the Python machine is timed")
    print(f"{'workload':<46} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, A, f, asgs in workloads():
        tp, ap_ = bench(A, f, asgs, _pykernel.Machine, args.repeat)
        if CMachine is None:
            print(f"{name:<46} {tp:>10.4f} {'-':>10} {'-':>8}")
            continue
        tc, ac = bench(A, f, asgs, CMachine, args.repeat)
        if ap_ != ac:
            raise SystemExit(f"machines disagree on {name}")
        print(f"{name:<46} {tp:>10.4f} {tc:>10.4f} {tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()
