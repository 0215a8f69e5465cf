"""Compiled vs pure-Python enumeration kernels.

Times the brute-force decision table (non-oblivious model) and the expansion
histogram on random two-layered graphs, checks that both backends return the
same numbers, and prints one row per size.

    python3 benchmarks/bench_kernels.py --sizes 10 12 14 --repeat 3
"""

from __future__ import annotations

import argparse
import random
import time

from influsat import kernels, oracle
from influsat.graph import InfluenceGraph
from influsat.models import InfluenceGame, NonObliviousModel


def random_two_layered(n: int, rng: random.Random) -> InfluenceGame:
    leaders = list(range(n // 2))
    rest = list(range(n // 2, n))
    arcs = [(u, v) for v in rest for u in leaders if rng.random() < 0.4]
    g = InfluenceGraph(n, arcs, [1] * n)
    labels = [max(1, rng.randint(1, d + 1)) if d else 1 for d in g.in_degrees]
    g = g.with_labels(labels)
    players = [v for v in range(n) if not g.pred_masks[v]]
    return InfluenceGame(g, rng.randint(1, n), players)


def best_of(fn, repeat: int) -> tuple[float, object]:
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 12, 14, 16])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args(argv)

    if kernels.BACKEND != "cython":
        print("compiled kernels not built; only the Python backend is available")
        return 1
    rng = random.Random(args.seed)
    print(f"{'n':>4} {'task':<10} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for n in args.sizes:
        game = random_two_layered(n, rng)
        model = NonObliviousModel(game)
        tasks = {
            "decide": lambda b: bytes(oracle.decision_table(model, cap=64, backend=b)),
            "expand": lambda b: oracle.expansion_histogram(game.graph, game.players, cap=64, backend=b),
        }
        for name, task in tasks.items():
            tp, rp = best_of(lambda: task("python"), args.repeat)
            tc, rc = best_of(lambda: task("cython"), args.repeat)
            if rp != rc:
                raise SystemExit(f"backends disagree on n={n} task={name}")
            print(f"{n:>4} {name:<10} {tp:>10.4f} {tc:>10.4f} {tp / max(tc, 1e-9):>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
