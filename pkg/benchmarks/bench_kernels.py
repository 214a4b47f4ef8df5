#!/usr/bin/env python3
"""Compare the compiled and pure-Python stable-model enumeration kernels.

The workload is the hot path behind `sklogic models`: check every
interpretation of a ground program for stability.  Run after an editable
install; the compiled row only appears when the extension was built.
"""

import time

from sklogic import load_program
from sklogic.kernel import backends
from sklogic.oracle import _masks, ground_program

BOARD = """
(defineo (num x) (conde [(== x 1)] [(== x 2)] [(== x 3)]))
(defineo (pick x y) (num x) (num y) (noto (free x y)))
(defineo (free x y) (num x) (num y) (noto (pick x y)))
"""
ROW = "(constrainto [(pick x y) (pick u v)] [(= x u) (not (= y v))])"
COL = "(constrainto [(pick x y) (pick u v)] [(= y v) (not (= x u))])"

BIGGER = """
(defineo (num x) (conde [(== x 1)] [(== x 2)] [(== x 3)]))
(defineo (on x) (num x) (noto (off x)))
(defineo (off x) (num x) (noto (on x)))
(defineo (hi x y) (num x) (num y) (noto (lo x y)))
(defineo (lo x y) (num x) (num y) (noto (hi x y)))
"""


def bench(label, program_text, repeat=3, fast_only_above_bits=19):
    g = ground_program(load_program(program_text), atom_cap=40)
    heads, pos, neg, cpos, cneg = _masks(g)
    facts = sum(1 for i in range(len(heads)) if pos[i] == 0 and neg[i] == 0)
    work_bits = len(g.atoms) - facts
    print(f"{label}: {len(g.atoms)} atoms, {len(g.rules)} rules, "
          f"{len(g.constraints)} constraints (~2^{work_bits} interpretations)")
    results = {}
    for name, fn in sorted(backends().items()):
        if name == "python" and work_bits > fast_only_above_bits:
            print(f"  {name:>7}: skipped (workload too large for the fallback)")
            continue
        best = float("inf")
        models = None
        for _ in range(repeat):
            t0 = time.perf_counter()
            models = fn(len(g.atoms), heads, pos, neg, cpos, cneg)
            best = min(best, time.perf_counter() - t0)
        results[name] = (best, len(models))
        print(f"  {name:>7}: {best * 1000:9.1f} ms   ({len(models)} models)")
    counts = {n for _, n in results.values()}
    assert len(counts) <= 1, f"kernels disagree: {results}"
    if "c" in results and "python" in results:
        print(f"  speedup: {results['python'][0] / results['c'][0]:.0f}x")
    print()


def main():
    bench("3x3 board, unconstrained", BOARD)
    bench("3x3 board + row constraint", BOARD + ROW)
    bench("3x3 board + row + column", BOARD + ROW + COL)
    bench("27-atom double choice lattice", BIGGER, repeat=1)


if __name__ == "__main__":
    main()
