"""Print the pairing grid and the middle-thirds length table.

    python3 scripts/cantor_figure.py --size 6 --depth 10
"""
import argparse

from finfound.codec import pair
from finfound.lebesgue import cantor_set


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=4, help="grid is size x size")
    ap.add_argument("--depth", type=int, default=8)
    args = ap.parse_args()

    w = len(str(pair(args.size - 1, args.size - 1)))
    print("x\\y " + " ".join(f"{y:>{w}}" for y in range(args.size)))
    for x in range(args.size):
        print(f"{x:>3} " + " ".join(f"{pair(x, y):>{w}}" for y in range(args.size)))

    print()
    print("n  pieces  length")
    for n in range(args.depth + 1):
        c = cantor_set(n)
        print(f"{n:<2} {len(c.components):<7} {c.length()}  (~{float(c.length()):.6f})")


if __name__ == "__main__":
    main()
