"""Finite partial orders.

A poset is an element list plus a boolean ``leq`` matrix indexed the same
way.  Index order of the element list is the tie-break everywhere, so all
outputs are deterministic.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, NamedTuple, Sequence

from .config import DEFAULT_BOUNDS
from .errors import BoundExceeded, InputError, NegativeResult


class PosetAxiomError(NegativeResult):
    """The relation is not a partial order; ``axiom`` names the failed law."""

    def __init__(self, axiom, witness):
        shown = ", ".join(repr(w) for w in witness)
        super().__init__(f"{axiom} fails at ({shown})")
        self.axiom = axiom
        self.witness = tuple(witness)


@dataclass(frozen=True, eq=False)
class FinitePoset:
    elements: tuple
    leq: tuple  # tuple of tuples of bool

    def __post_init__(self):
        idx = {}
        for i, e in enumerate(self.elements):
            if e in idx:
                raise InputError(f"duplicate element {e!r}")
            idx[e] = i
        object.__setattr__(self, "_index", idx)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return (isinstance(other, FinitePoset) and self.elements == other.elements
                and self.leq == other.leq)

    def __hash__(self):
        return hash((self.elements, self.leq))

    def index(self, a) -> int:
        try:
            return self._index[a]
        except KeyError:
            raise InputError(f"{a!r} is not an element") from None

    def le(self, a, b) -> bool:
        return self.leq[self.index(a)][self.index(b)]

    def lt(self, a, b) -> bool:
        return a != b and self.le(a, b)

    def comparable(self, a, b) -> bool:
        return self.le(a, b) or self.le(b, a)

    def pairs(self):
        """All related pairs (a, b) with a <= b, in index order."""
        n = len(self.elements)
        return [(self.elements[i], self.elements[j])
                for i in range(n) for j in range(n) if self.leq[i][j]]

    def is_total(self) -> bool:
        n = len(self.elements)
        return all(self.leq[i][j] or self.leq[j][i] for i in range(n) for j in range(n))

    def refines(self, other: "FinitePoset") -> bool:
        """True if every relation of ``other`` also holds here."""
        return all(self.le(a, b) for a, b in other.pairs())

    def down(self, t) -> frozenset:
        j = self.index(t)
        return frozenset(e for i, e in enumerate(self.elements) if self.leq[i][j])

    def up(self, t) -> frozenset:
        i = self.index(t)
        return frozenset(e for j, e in enumerate(self.elements) if self.leq[i][j])

    def sort_key(self, subset):
        """Key ordering subsets by their index bitmask."""
        return sum(1 << self.index(e) for e in subset)


def validate_poset(elements: Sequence, leq) -> FinitePoset:
    elements = tuple(elements)
    n = len(elements)
    rows = [list(r) for r in leq]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise InputError(f"leq must be a {n}x{n} matrix")
    m = tuple(tuple(bool(x) for x in r) for r in rows)
    for i in range(n):
        if not m[i][i]:
            raise PosetAxiomError("reflexivity", (elements[i],))
    for i in range(n):
        for j in range(i + 1, n):
            if m[i][j] and m[j][i]:
                raise PosetAxiomError("antisymmetry", (elements[i], elements[j]))
    for i in range(n):
        for j in range(n):
            if not m[i][j]:
                continue
            for k in range(n):
                if m[j][k] and not m[i][k]:
                    raise PosetAxiomError("transitivity", (elements[i], elements[j], elements[k]))
    return FinitePoset(elements, m)


def _closure(n, rel):
    m = [[i == j for j in range(n)] for i in range(n)]
    for i, j in rel:
        m[i][j] = True
    for k in range(n):
        for i in range(n):
            if m[i][k]:
                row_k = m[k]
                row_i = m[i]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    return m


def from_relation(elements: Sequence, pairs: Iterable[tuple]) -> FinitePoset:
    """Reflexive-transitive closure of ``pairs``, validated as a poset."""
    elements = tuple(elements)
    idx = {e: i for i, e in enumerate(elements)}
    rel = []
    for a, b in pairs:
        if a not in idx or b not in idx:
            raise InputError(f"pair ({a!r}, {b!r}) mentions an unknown element")
        rel.append((idx[a], idx[b]))
    return validate_poset(elements, _closure(len(elements), rel))


# Hasse diagrams are usually given by their covers
from_covers = from_relation


def divisibility_poset(n: int) -> FinitePoset:
    divs = [d for d in range(1, n + 1) if n % d == 0]
    return validate_poset(divs, [[b % a == 0 for b in divs] for a in divs])


def chain_poset(elements: Sequence) -> FinitePoset:
    elements = tuple(elements)
    n = len(elements)
    return validate_poset(elements, [[i <= j for j in range(n)] for i in range(n)])


def antichain_poset(elements: Sequence) -> FinitePoset:
    elements = tuple(elements)
    n = len(elements)
    return validate_poset(elements, [[i == j for j in range(n)] for i in range(n)])


class Extrema(NamedTuple):
    minimal: tuple
    maximal: tuple
    least: object
    greatest: object


class BoundsReport(NamedTuple):
    lower: tuple
    upper: tuple
    inf: object
    sup: object


# Marker for "does not exist"; distinct from None, which may be a label.
class _Absent:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "ABSENT"

    def __bool__(self):
        return False


ABSENT = _Absent()


def _members(p, subset):
    if subset is None:
        return list(p.elements)
    s = set(subset)
    for a in s:
        p.index(a)
    return [e for e in p.elements if e in s]


def extrema(p: FinitePoset, subset=None) -> Extrema:
    xs = _members(p, subset)
    if not xs:
        raise InputError("extrema of an empty subset")
    minimal = tuple(a for a in xs if not any(p.lt(b, a) for b in xs))
    maximal = tuple(a for a in xs if not any(p.lt(a, b) for b in xs))
    least = next((a for a in xs if all(p.le(a, b) for b in xs)), ABSENT)
    greatest = next((a for a in xs if all(p.le(b, a) for b in xs)), ABSENT)
    return Extrema(minimal, maximal, least, greatest)


def bounds(p: FinitePoset, subset) -> BoundsReport:
    xs = _members(p, subset)
    if not xs:
        raise InputError("bounds of an empty subset")
    lower = tuple(a for a in p.elements if all(p.le(a, b) for b in xs))
    upper = tuple(a for a in p.elements if all(p.le(b, a) for b in xs))
    inf = extrema(p, lower).greatest if lower else ABSENT
    sup = extrema(p, upper).least if upper else ABSENT
    return BoundsReport(lower, upper, inf, sup)


def linear_extension(p: FinitePoset) -> FinitePoset:
    """Total order containing ``p``.

    Repeatedly takes the least incomparable index pair (a, b), a before b,
    and adds every (x, y) with x <= a and b <= y.
    """
    n = len(p)
    m = [list(r) for r in p.leq]
    while True:
        pair = next(((i, j) for i in range(n) for j in range(i + 1, n)
                     if not m[i][j] and not m[j][i]), None)
        if pair is None:
            break
        a, b = pair
        below_a = [x for x in range(n) if m[x][a]]
        above_b = [y for y in range(n) if m[b][y]]
        for x in below_a:
            for y in above_b:
                m[x][y] = True
    return validate_poset(p.elements, m)


@dataclass(frozen=True)
class ReductionSystem:
    carrier: tuple
    step: frozenset

    def __post_init__(self):
        object.__setattr__(self, "carrier", tuple(self.carrier))
        object.__setattr__(self, "step", frozenset(tuple(s) for s in self.step))
        c = set(self.carrier)
        for a, b in self.step:
            if a not in c or b not in c:
                raise InputError(f"step ({a!r}, {b!r}) leaves the carrier")

    def successors(self, a):
        return [b for b in self.carrier if (a, b) in self.step]


def is_terminating(r: ReductionSystem) -> tuple[bool, list | None]:
    """No infinite chains iff the step graph is acyclic (finite carrier).

    Returns ``(True, None)`` or ``(False, cycle)`` where ``cycle`` lists the
    nodes of a closed walk, first node repeated implicitly.
    """
    WHITE, GREY, BLACK = 0, 1, 2
    colour = {a: WHITE for a in r.carrier}
    succ = {a: r.successors(a) for a in r.carrier}
    for root in r.carrier:
        if colour[root] != WHITE:
            continue
        path = [root]
        iters = [iter(succ[root])]
        colour[root] = GREY
        while iters:
            nxt = next(iters[-1], None)
            if nxt is None:
                colour[path.pop()] = BLACK
                iters.pop()
            elif colour[nxt] == GREY:
                return False, path[path.index(nxt):]
            elif colour[nxt] == WHITE:
                colour[nxt] = GREY
                path.append(nxt)
                iters.append(iter(succ[nxt]))
    return True, None


@dataclass(frozen=True, eq=False)
class DownSetLattice:
    base: FinitePoset
    downsets: tuple  # of frozensets, sorted by index bitmask
    poset: FinitePoset  # inclusion order on ``downsets``

    @property
    def bottom(self):
        return self.downsets[0]

    @property
    def top(self):
        return self.downsets[-1]

    def join(self, a, b):
        return a | b

    def meet(self, a, b):
        return a & b


def down_set_lattice(p: FinitePoset, bound: int | None = None):
    """All down sets of ``p`` plus the principal embedding t -> down(t)."""
    bound = DEFAULT_BOUNDS.downset_elements if bound is None else bound
    n = len(p)
    if n > bound:
        raise BoundExceeded("down_set_lattice", n, bound)
    below = [[i for i in range(n) if p.leq[i][j]] for j in range(n)]
    found = []
    for mask in range(1 << n):
        if all(all(mask >> i & 1 for i in below[j]) for j in range(n) if mask >> j & 1):
            found.append(frozenset(p.elements[i] for i in range(n) if mask >> i & 1))
    poset = validate_poset(found, [[a <= b for b in found] for a in found])
    psi = {t: p.down(t) for t in p.elements}
    return DownSetLattice(p, tuple(found), poset), psi


def covers(p: FinitePoset) -> list[tuple]:
    """Pairs (s, t) with s < t and nothing strictly between."""
    els = p.elements
    out = []
    for s in els:
        for t in els:
            if p.lt(s, t) and not any(p.lt(s, u) and p.lt(u, t) for u in els):
                out.append((s, t))
    return out


def irreducibles_and_covers(lat) -> tuple[tuple, list]:
    """Join-irreducibles and the cover relation of a finite lattice.

    Works for anything with a ``poset`` attribute and a ``join(a, b)``
    method (``DownSetLattice`` and ``boolattice.FiniteLattice``).
    """
    p = lat.poset
    els = p.elements
    bottom = extrema(p).least
    if bottom is ABSENT:
        raise InputError("lattice has no bottom element")
    irr = []
    for s in els:
        if s == bottom:
            continue
        if all(lat.join(r, t) != s or s in (r, t) for r in els for t in els):
            irr.append(s)
    return tuple(irr), covers(p)


class NotMonotone(NegativeResult):
    def __init__(self, a, b):
        super().__init__(f"map is not monotone: A={sorted(a, key=repr)} is inside "
                         f"B={sorted(b, key=repr)} but h(A) is not inside h(B)")
        self.witness = (a, b)


def _check_monotone(h, universe, pairs):
    for a, b in pairs:
        if not h(a) <= h(b):
            raise NotMonotone(a, b)


def greatest_fixpoint(h: Callable[[frozenset], frozenset], universe: Iterable,
                      check: str = "sample", samples: int = 64, seed: int = 0) -> frozenset:
    """Greatest fixpoint of a monotone ``h`` on subsets of ``universe``.

    Iterates downward from the full set.  ``check`` is ``'sample'`` (random
    pairs A <= B), ``'full'`` (every pair; 3^n calls) or ``'none'``.
    """
    S = frozenset(universe)
    els = list(S)
    fh = lambda a: frozenset(h(frozenset(a)))
    if check == "full":
        if len(els) > 12:
            raise BoundExceeded("full monotonicity check", len(els), 12)
        def all_pairs():
            for labels in itertools.product((0, 1, 2), repeat=len(els)):
                a = frozenset(e for e, l in zip(els, labels) if l == 2)
                b = frozenset(e for e, l in zip(els, labels) if l >= 1)
                yield a, b
        _check_monotone(fh, S, all_pairs())
    elif check == "sample":
        rng = random.Random(seed)
        def sampled():
            for _ in range(samples):
                b = frozenset(e for e in els if rng.random() < 0.5)
                a = frozenset(e for e in b if rng.random() < 0.5)
                yield a, b
        _check_monotone(fh, S, sampled())
    elif check != "none":
        raise InputError(f"unknown check mode {check!r}")

    prev, cur = None, S
    while True:
        nxt = fh(cur)
        if not nxt <= S:
            raise InputError("h leaves the universe")
        if nxt == cur:
            return cur
        if not nxt <= cur:
            # cur = h(prev) sits inside prev, yet h(cur) is not inside h(prev)
            raise NotMonotone(cur, prev)
        prev, cur = cur, nxt
