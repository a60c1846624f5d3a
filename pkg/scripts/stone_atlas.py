"""For small Boolean algebras, list atoms, ultrafilters and the map psi.

The algebras are abstract table copies with integer labels, so the
printout shows the representation recovering the set structure.

    python3 scripts/stone_atlas.py --atoms 3
"""
import argparse

from finfound import boolattice as ba
from finfound.generators import boolean_algebras


def fmt(s):
    return "{" + ", ".join(map(str, sorted(s))) + "}"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--atoms", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    for b in boolean_algebras(args.atoms, args.seed):
        r = ba.stone_representation(b)
        print(f"== {len(b.elements)} elements, atoms {fmt(b.atoms())}")
        for i, u in enumerate(r.ultrafilters):
            print(f"  U{i} = {fmt(u)}")
        for x in b.elements:
            print(f"  psi({x}) = {fmt(r.psi[x])}")
        print()


if __name__ == "__main__":
    main()
