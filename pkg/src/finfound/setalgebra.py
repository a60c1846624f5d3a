"""Set algebras, measures and topologies over a finite universe.

Countable operations collapse to finite ones here: on a finite universe
every sigma-algebra is a finite set algebra, and every countable union
has a finite equivalent.  All measure values are Fractions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, NamedTuple

from .boolattice import RepresentationError
from .errors import InputError, NegativeResult


@dataclass(frozen=True)
class FiniteUniverse:
    points: tuple

    def __post_init__(self):
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise InputError("universe must be nonempty")
        if len(set(pts)) != len(pts):
            raise InputError("universe has repeated points")

    @property
    def full(self) -> frozenset:
        return frozenset(self.points)

    def mask(self, subset) -> int:
        pos = {p: i for i, p in enumerate(self.points)}
        return sum(1 << pos[p] for p in subset)

    def sorted_family(self, family) -> tuple:
        return tuple(sorted(set(family), key=self.mask))

    def powerset(self) -> tuple:
        pts = self.points
        return tuple(frozenset(pts[i] for i in range(len(pts)) if m >> i & 1)
                     for m in range(1 << len(pts)))


def universe(points) -> FiniteUniverse:
    return points if isinstance(points, FiniteUniverse) else FiniteUniverse(tuple(points))


@dataclass(frozen=True)
class SetFamily:
    """Family of subsets, stored deduplicated in bitmask order."""
    universe: FiniteUniverse
    members: tuple

    def __post_init__(self):
        u = universe(self.universe)
        object.__setattr__(self, "universe", u)
        ms = [frozenset(m) for m in self.members]
        full = u.full
        for m in ms:
            if not m <= full:
                raise InputError(f"member {sorted(m, key=repr)} is not inside the universe")
        object.__setattr__(self, "members", u.sorted_family(ms))

    def __contains__(self, a):
        return frozenset(a) in set(self.members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def is_algebra(self) -> bool:
        s = set(self.members)
        full = self.universe.full
        return (frozenset() in s and full in s
                and all(full - a in s for a in s)
                and all(a | b in s for a in s for b in s))

    def is_pi_closed(self) -> bool:
        s = set(self.members)
        return all(a & b in s for a in s for b in s)


def family(points, members) -> SetFamily:
    return SetFamily(universe(points), tuple(members))


def atom_partition(f: SetFamily) -> tuple[frozenset, ...]:
    """Fibres of the membership signature, ordered by first point."""
    cells = {}
    for p in f.universe.points:
        sig = tuple(p in a for a in f.members)
        cells.setdefault(sig, []).append(p)
    return tuple(frozenset(c) for c in cells.values())


def _all_unions(u: FiniteUniverse, parts) -> tuple:
    parts = list(parts)
    out = []
    for bits in product((0, 1), repeat=len(parts)):
        out.append(frozenset().union(*(p for p, b in zip(parts, bits) if b)))
    return u.sorted_family(out)


def generate_algebra(f: SetFamily) -> SetFamily:
    """Smallest set algebra containing ``f``: all unions of atoms."""
    return SetFamily(f.universe, _all_unions(f.universe, atom_partition(f)))


def _close(fam: set, op) -> set:
    fam = set(fam)
    while True:
        new = {op(a, b) for a in fam for b in fam} - fam
        if not new:
            return fam
        fam |= new


class Stage(NamedTuple):
    step: str  # 'start', 'delta' or 'sigma'
    size: int


def sigma_closure_iterate(f: SetFamily):
    """Alternate closure under intersections and unions, starting from
    ``f`` plus complements, until neither step adds anything.

    Returns the final family and a trace of (step, size) stages.
    """
    full = f.universe.full
    cur = set(f.members) | {full - a for a in f.members}
    trace = [Stage("start", len(cur))]
    while True:
        # empty intersection is the universe, empty union is empty
        d = _close(cur | {full}, frozenset.__and__)
        trace.append(Stage("delta", len(d)))
        s = _close(d | {frozenset()}, frozenset.__or__)
        trace.append(Stage("sigma", len(s)))
        if s == cur:
            break
        cur = s
    return SetFamily(f.universe, tuple(cur)), trace


def lambda_closure(f: SetFamily) -> SetFamily:
    """Close ``f`` plus the empty set under complement and disjoint unions."""
    full = f.universe.full
    cur = set(f.members) | {frozenset()}
    while True:
        new = {full - a for a in cur}
        new |= {a | b for a in cur for b in cur if not a & b}
        new -= cur
        if not new:
            return SetFamily(f.universe, tuple(cur))
        cur |= new


@dataclass(frozen=True, eq=False)
class FiniteMeasure:
    algebra: SetFamily
    value: dict = field(repr=False)

    def __post_init__(self):
        vals = {}
        for k, v in dict(self.value).items():
            vals[frozenset(k)] = Fraction(v)
        missing = [a for a in self.algebra.members if a not in vals]
        if missing:
            raise InputError(f"measure has no value for {sorted(missing[0], key=repr)}")
        object.__setattr__(self, "value", vals)

    def __call__(self, a) -> Fraction:
        a = frozenset(a)
        if a not in self.value:
            raise InputError(f"{sorted(a, key=repr)} is not in the measure's algebra")
        return self.value[a]


class MeasureReport(NamedTuple):
    ok: bool
    violations: list  # (law, witness...) tuples


def validate_measure(m: FiniteMeasure) -> MeasureReport:
    bad = []
    sets = m.algebra.members
    if not m.algebra.is_algebra():
        bad.append(("not an algebra",))
    if frozenset() in m.value and m.value[frozenset()] != 0:
        bad.append(("empty set", frozenset()))
    for a in sets:
        if m(a) < 0:
            bad.append(("negative", a))
    for a in sets:
        for b in sets:
            if a < b and m(a) > m(b):
                bad.append(("monotone", a, b))
    for a, b in combinations(sets, 2):
        if not a & b and a | b in m.value and m(a | b) != m(a) + m(b):
            bad.append(("additive", a, b))
    return MeasureReport(not bad, bad)


def counting_measure(points) -> FiniteMeasure:
    u = universe(points)
    alg = SetFamily(u, u.powerset())
    return FiniteMeasure(alg, {a: len(a) for a in alg})


def dirac_measure(points, a) -> FiniteMeasure:
    u = universe(points)
    if a not in u.points:
        raise InputError(f"{a!r} is not a point of the universe")
    alg = SetFamily(u, u.powerset())
    return FiniteMeasure(alg, {s: int(a in s) for s in alg})


class NotPiClosed(InputError):
    def __init__(self, a, b):
        super().__init__(
            f"generator is not closed under intersection: {sorted(a, key=repr)} & "
            f"{sorted(b, key=repr)} is missing (add it, e.g. the empty set, to the generator)")
        self.witness = (a, b)


class Agreement(NamedTuple):
    agree: bool
    disagreement: frozenset | None


def measures_agree(m1: FiniteMeasure, m2: FiniteMeasure, generator: SetFamily) -> Agreement:
    """Measures equal on an intersection-closed generator and on the
    universe are equal on the generated algebra."""
    gen = set(generator.members)
    for a in generator.members:
        for b in generator.members:
            if a & b not in gen:
                raise NotPiClosed(a, b)
    alg = generate_algebra(generator).members
    for m in (m1, m2):
        if any(a not in m.value for a in alg):
            raise InputError("measure is not defined on the generated algebra")
    for a in (*generator.members, generator.universe.full):
        if m1(a) != m2(a):
            return Agreement(False, a)
    diff = next((a for a in alg if m1(a) != m2(a)), None)
    if diff is not None:
        raise RepresentationError(f"agreement on the generator did not propagate to {diff}")
    return Agreement(True, None)


def ultrafilter_measure(m: FiniteMeasure):
    """{A | m(A) = 1} for a two-valued measure on the full powerset.

    Returns the ultrafilter and the point generating it.
    """
    u = m.algebra.universe
    if len(m.algebra) != 1 << len(u.points):
        raise InputError("measure must be defined on the full powerset")
    if any(v not in (0, 1) for v in m.value.values()):
        raise InputError("measure takes values outside {0, 1}")
    rep = validate_measure(m)
    if not rep.ok:
        raise InputError(f"not a measure: {rep.violations[0]}")
    if m(u.full) != 1:
        raise InputError("measure of the universe must be 1")
    F = frozenset(a for a in m.algebra if m(a) == 1)
    point = next(p for p in u.points if frozenset([p]) in F)
    return F, point


def _word(w, k):
    t = tuple(int(c) for c in w) if isinstance(w, str) else tuple(w)
    if len(t) != k or any(b not in (0, 1) for b in t):
        raise InputError(f"{w!r} is not a binary word of length {k}")
    return t


def cylinder_measure(k: int, words: Iterable) -> Fraction:
    """|A| / 2^k for the cylinder over A inside {0,1}^k."""
    if k < 0:
        raise InputError("k must be >= 0")
    A = {_word(w, k) for w in words}
    return Fraction(len(A), 2 ** k)


def coin_event(k: int, r: int) -> set[tuple]:
    """Words of length k with exactly r ones."""
    return {w for w in product((0, 1), repeat=k) if sum(w) == r}


def refine(words: Iterable, k: int) -> set[tuple]:
    """The same cylinder, described by words of length k + 1."""
    return {_word(w, k) + (b,) for w in words for b in (0, 1)}


@dataclass(frozen=True)
class FiniteTopology:
    universe: FiniteUniverse
    opens: tuple

    def __post_init__(self):
        u = universe(self.universe)
        object.__setattr__(self, "universe", u)
        ops = set(frozenset(o) for o in self.opens)
        object.__setattr__(self, "opens", u.sorted_family(ops))
        if frozenset() not in ops or u.full not in ops:
            raise InputError("topology must contain the empty set and the universe")
        for a in ops:
            if not a <= u.full:
                raise InputError("open set outside the universe")
            for b in ops:
                if a | b not in ops or a & b not in ops:
                    raise InputError("opens not closed under union and intersection")

    def is_open(self, m) -> bool:
        return frozenset(m) in set(self.opens)

    def is_closed(self, m) -> bool:
        return self.universe.full - frozenset(m) in set(self.opens)


def generate_topology(points, subbase) -> FiniteTopology:
    """Finite intersections of the subbase form a base; opens are its unions."""
    u = universe(points)
    sb = subbase.members if isinstance(subbase, SetFamily) else [frozenset(s) for s in subbase]
    base = _close(set(sb) | {u.full}, frozenset.__and__)
    opens = _close(base | {frozenset()}, frozenset.__or__)
    return FiniteTopology(u, tuple(opens))


class BoundaryTriple(NamedTuple):
    interior: frozenset
    closure: frozenset
    boundary: frozenset


def boundary_triple(t: FiniteTopology, M) -> BoundaryTriple:
    M = frozenset(M)
    full = t.universe.full
    if not M <= full:
        raise InputError("subset is not inside the universe")
    interior = frozenset().union(*(o for o in t.opens if o <= M))
    closure = full.intersection(*(full - o for o in t.opens if not o & M))
    return BoundaryTriple(interior, closure, closure - interior)


def priestley_subbase(points):
    """Universe P(points) with the sets ||x|| = {A | x in A} and their
    complements, one pair per point."""
    base = universe(points)
    u = FiniteUniverse(base.powerset())
    sb = []
    for x in base.points:
        has = frozenset(a for a in u.points if x in a)
        sb += [has, u.full - has]
    return u, SetFamily(u, tuple(sb))
