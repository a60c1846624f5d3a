"""Solve random finite games and tabulate who wins.

Each game is verified: the returned strategy is replayed against every
opponent line before it is counted.

    python3 scripts/determinacy_trials.py --trials 200 --seed 1
"""
import argparse
import random
from collections import Counter

from finfound.games import ANGEL, is_winning, solve
from finfound.generators import random_game


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--max-m", type=int, default=3)
    ap.add_argument("--max-d", type=int, default=3)
    ap.add_argument("--p", type=float, default=0.5, help="density of the winning set")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    wins = Counter()
    for m in range(1, args.max_m + 1):
        for d in range(1, args.max_d + 1):
            for _ in range(args.trials):
                g = random_game(rng, m, d, args.p)
                sol = solve(g)
                ok, line = is_winning(g, sol.strategy, sol.winner)
                assert ok, (m, d, line)
                wins[m, d, sol.winner] += 1

    print(f"p = {args.p}, {args.trials} games per cell, fraction won by Angel")
    print("m\\d " + " ".join(f"{d:>6}" for d in range(1, args.max_d + 1)))
    for m in range(1, args.max_m + 1):
        row = [wins[m, d, ANGEL] / args.trials for d in range(1, args.max_d + 1)]
        print(f"{m:>3} " + " ".join(f"{r:6.2f}" for r in row))


if __name__ == "__main__":
    main()
