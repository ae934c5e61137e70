"""Time the compiled and pure-Python enumeration kernels on the same inputs.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time
from importlib import resources

from repshift import _kernels_py
from repshift.fingroup import make_group
from repshift.representations import DEFAULT_BUDGET
from repshift.zgroup import default_window, hnn_window_base, load_presentation

try:
    from repshift import _kernels
except ImportError:
    _kernels = None

CASES = [
    ("ex2_1.zg", "S4"),
    ("ex3_7.zg", "A5"),
    ("ex3_7.zg", "S5"),
    ("ex4_4c.zg", "A4"),
    ("ex4_4b.zg", "S5"),
]


def job(fixture, group_name):
    path = resources.files("repshift") / "fixtures" / fixture
    P = load_presentation(path)
    base = hnn_window_base(P, default_window(P))
    G = make_group(group_name)
    n = len(base.gens)
    return ([list(r) for r in G.table], list(G.inv), n, [list(w) for w in base.relators],
            [list(range(G.order))] * n, DEFAULT_BUDGET)


def best_of(impl, args, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        sols, nodes, _ = impl.enumerate_homs(*args)
        times.append(time.perf_counter() - start)
    return min(times), len(sols), nodes


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    opts = ap.parse_args()
    if _kernels is None:
        print("compiled kernels not built; timing pure Python only")
    print(f"{'case':<16}{'homs':>8}{'nodes':>10}{'python s':>11}{'compiled s':>12}{'speedup':>9}")
    for fixture, group in CASES:
        args = job(fixture, group)
        py, nsol, nodes = best_of(_kernels_py, args, opts.repeat)
        row = f"{fixture[:-3] + '/' + group:<16}{nsol:>8}{nodes:>10}{py:>11.4f}"
        if _kernels is not None:
            c, csol, _ = best_of(_kernels, args, opts.repeat)
            assert csol == nsol
            row += f"{c:>12.4f}{py / c:>8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
