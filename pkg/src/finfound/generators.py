"""Seeded random instances shared by the tests and experiment scripts."""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from . import boolattice as ba
from .codec import FiniteMap
from .games import GameSpec
from .lebesgue import closed, normalize
from .order import FinitePoset, from_relation


def random_poset(rng: random.Random, n: int, density: float = 0.3) -> FinitePoset:
    """Transitive closure of a random DAG along a shuffled labelling."""
    rank = list(range(n))
    rng.shuffle(rank)
    pairs = [(i, j) for i in range(n) for j in range(n)
             if rank[i] < rank[j] and rng.random() < density]
    return from_relation(range(n), pairs)


def random_map(rng: random.Random, dom, cod, injective=False) -> FiniteMap:
    dom, cod = list(dom), list(cod)
    if injective:
        img = rng.sample(cod, len(dom))
    else:
        img = [rng.choice(cod) for _ in dom]
    return FiniteMap(dom, cod, dict(zip(dom, img)))


def random_rational(rng: random.Random, denom: int = 24) -> Fraction:
    return Fraction(rng.randint(0, denom), denom)


def random_interval_set(rng: random.Random, pieces: int = 3, denom: int = 24):
    out = []
    for _ in range(rng.randint(0, pieces)):
        a, b = sorted((random_rational(rng, denom), random_rational(rng, denom)))
        out.append((a, b))
    return normalize(out)


def random_open_cover(rng: random.Random, u=Fraction(0), v=Fraction(1), denom=20):
    """Open intervals covering [u, v]: a random chain of overlapping pieces
    plus some decoys, shuffled."""
    ivs = []
    t = u - Fraction(1, denom)
    while t <= v:
        step = Fraction(rng.randint(2, 6), denom)
        lo = t - Fraction(rng.randint(1, 3), 4 * denom)
        ivs.append((lo, t + step))
        t = t + step - Fraction(1, 4 * denom)
    for _ in range(rng.randint(0, 3)):
        a = random_rational(rng, denom)
        ivs.append((a, a + Fraction(rng.randint(1, 4), denom)))
    rng.shuffle(ivs)
    return ivs


def random_game(rng: random.Random, m: int, d: int, p: float = 0.5) -> GameSpec:
    plays = product(range(m), repeat=2 * d)
    return GameSpec(m, d, frozenset(w for w in plays if rng.random() < p))


def random_family(rng: random.Random, n: int, k: int, pi_closed=False):
    pts = list(range(n))
    fam = {frozenset(x for x in pts if rng.random() < 0.5) for _ in range(k)}
    if pi_closed:
        while True:
            new = {a & b for a in fam for b in fam} - fam
            if not new:
                break
            fam |= new
    return pts, fam


def boolean_algebras(max_atoms: int, shuffle_seed: int | None = 0):
    """One abstract Boolean algebra per atom count 0..max_atoms.

    Each is a table-only copy of a powerset algebra with opaque integer
    labels in shuffled order, so nothing set-theoretic leaks through.
    """
    out = []
    for k in range(max_atoms + 1):
        b = ba.powerset_algebra(range(k))
        order = list(b.elements)
        if shuffle_seed is not None:
            random.Random(shuffle_seed + k).shuffle(order)
        name = {e: i for i, e in enumerate(order)}.__getitem__
        meet, join, neg = ba.tables(b)
        out.append(ba.boolean_algebra_from_tables(
            [name(e) for e in order],
            {(name(x), name(y)): name(v) for (x, y), v in meet.items()},
            {(name(x), name(y)): name(v) for (x, y), v in join.items()},
            {name(x): name(v) for x, v in neg.items()}))
    return out


def random_closed_chain(rng: random.Random, stages: int):
    """Decreasing closed intervals with halving diameters."""
    lo, hi = Fraction(0), Fraction(1)
    seq = [closed([(lo, hi)])]
    for _ in range(stages - 1):
        mid = (lo + hi) / 2
        lo, hi = (lo, mid) if rng.random() < 0.5 else (mid, hi)
        seq.append(closed([(lo, hi)]))
    return seq
