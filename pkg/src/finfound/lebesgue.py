"""Exact interval arithmetic on the unit interval.

Half-open pieces ]a, b] carry the length measure; closed pieces [a, b]
are used for the Cantor set and the nested-interval helpers.  Every
endpoint is a Fraction.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, NamedTuple, Sequence

from .config import DEFAULT_BOUNDS
from .errors import BoundExceeded, InputError, NegativeResult

ZERO, ONE = Fraction(0), Fraction(1)


def _exact_sum(values) -> Fraction:
    """Sum of Fractions over one common denominator (much faster than
    repeated Fraction addition for long lists)."""
    values = list(values)
    if not values:
        return ZERO
    den = lcm(*{v.denominator for v in values})
    return Fraction(sum(v.numerator * (den // v.denominator) for v in values), den)


def to_fraction(x) -> Fraction:
    """Exact value from an int, Fraction, or a string like '1/3' or '0.25'."""
    if isinstance(x, bool) or isinstance(x, float):
        raise InputError(f"use an exact value instead of {x!r} (e.g. '1/3' or '0.25')")
    try:
        return Fraction(x)
    except (ValueError, TypeError, ZeroDivisionError):
        raise InputError(f"not an exact rational: {x!r}") from None


def _pairs(intervals):
    out = []
    for iv in intervals:
        try:
            a, b = iv
        except (TypeError, ValueError):
            raise InputError(f"interval must be a pair, got {iv!r}") from None
        out.append((to_fraction(a), to_fraction(b)))
    return out


@dataclass(frozen=True)
class IntervalSet:
    """Canonical disjoint union of ]a_i, b_i] with b_i < a_{i+1}."""
    components: tuple = ()

    def __or__(self, other):
        return normalize(self.components + other.components)

    def __and__(self, other):
        out = []
        for a, b in self.components:
            for c, d in other.components:
                lo, hi = max(a, c), min(b, d)
                if lo < hi:
                    out.append((lo, hi))
        return normalize(out)

    def complement(self) -> "IntervalSet":
        out, t = [], ZERO
        for a, b in self.components:
            if t < a:
                out.append((t, a))
            t = b
        if t < ONE:
            out.append((t, ONE))
        return IntervalSet(tuple(out))

    def __sub__(self, other):
        return self & other.complement()

    def __bool__(self):
        return bool(self.components)

    def __contains__(self, p):
        p = to_fraction(p)
        return any(a < p <= b for a, b in self.components)

    def length(self) -> Fraction:
        return _exact_sum(b for _, b in self.components) - _exact_sum(a for a, _ in self.components)

    def __str__(self):
        if not self.components:
            return "{}"
        return " u ".join(f"]{a},{b}]" for a, b in self.components)


UNIT = IntervalSet(((ZERO, ONE),))
EMPTY = IntervalSet(())


def normalize(intervals: Iterable) -> IntervalSet:
    ps = _pairs(intervals)
    for a, b in ps:
        if not (ZERO <= a <= ONE and ZERO <= b <= ONE):
            raise InputError(f"endpoint of ]{a},{b}] lies outside [0,1]")
        if a > b:
            raise InputError(f"interval ]{a},{b}] has a > b")
    ps = sorted(p for p in ps if p[0] < p[1])
    out = []
    for a, b in ps:
        # ]a,b] u ]b,c] = ]a,c], so touching pieces merge too
        if out and a <= out[-1][1]:
            if b > out[-1][1]:
                out[-1] = (out[-1][0], b)
        else:
            out.append((a, b))
    return IntervalSet(tuple(out))


def interval(a, b) -> IntervalSet:
    return normalize([(a, b)])


class SetOps(NamedTuple):
    union: IntervalSet
    intersection: IntervalSet
    difference: IntervalSet
    complement: IntervalSet


def set_ops(a: IntervalSet, b: IntervalSet) -> SetOps:
    return SetOps(a | b, a & b, a - b, a.complement())


def length(a: IntervalSet) -> Fraction:
    return a.length()


class NotACover(NegativeResult):
    def __init__(self, witness, msg=None):
        super().__init__(msg or f"not a cover: {witness} is not covered")
        self.witness = witness


class OuterResult(NamedTuple):
    total: Fraction
    target_length: Fraction


def outer_measure(target: IntervalSet, cover: Sequence[IntervalSet]) -> OuterResult:
    """Sum of the cover's lengths, after checking it really covers.

    On algebra elements the infimum over covers is attained by the target
    itself, so ``target_length`` is the outer measure and ``total`` is an
    upper bound for it.
    """
    cover = list(cover)
    union = EMPTY
    for c in cover:
        union = union | c
    gap = target - union
    if gap:
        a, b = gap.components[0]
        raise NotACover((a + b) / 2)
    total = sum((c.length() for c in cover), ZERO)
    if total < target.length():
        raise AssertionError("cover sum below target length")
    return OuterResult(total, target.length())


class CaraResult(NamedTuple):
    ok: bool
    inside: Fraction
    outside: Fraction
    whole: Fraction


def caratheodory_check(a: IntervalSet, x: IntervalSet) -> CaraResult:
    """Does ``a`` split the test set ``x`` additively?"""
    i, o, w = (x & a).length(), (x - a).length(), x.length()
    return CaraResult(i + o == w, i, o, w)


@dataclass(frozen=True)
class ClosedIntervalSet:
    """Sorted disjoint closed pieces [a_i, b_i]."""
    components: tuple = ()

    def __bool__(self):
        return bool(self.components)

    def __contains__(self, p):
        p = to_fraction(p)
        return any(a <= p <= b for a, b in self.components)

    def __le__(self, other: "ClosedIntervalSet") -> bool:
        return all(any(c <= a and b <= d for c, d in other.components)
                   for a, b in self.components)

    def length(self) -> Fraction:
        return _exact_sum(b for _, b in self.components) - _exact_sum(a for a, _ in self.components)

    def min(self) -> Fraction:
        return self.components[0][0]

    def max(self) -> Fraction:
        return self.components[-1][1]

    def diameter(self) -> Fraction:
        return self.max() - self.min()

    def __str__(self):
        if not self.components:
            return "{}"
        return " u ".join(f"[{a},{b}]" for a, b in self.components)


def closed(intervals: Iterable) -> ClosedIntervalSet:
    ps = _pairs(intervals)
    for a, b in ps:
        if a > b:
            raise InputError(f"interval [{a},{b}] has a > b")
    out = []
    for a, b in sorted(ps):
        if out and a <= out[-1][1]:
            out[-1] = (out[-1][0], max(b, out[-1][1]))
        else:
            out.append((a, b))
    return ClosedIntervalSet(tuple(out))


def cantor_set(n: int, bound: int | None = None) -> ClosedIntervalSet:
    """C_n: n rounds of deleting open middle thirds from [0, 1]."""
    bound = DEFAULT_BOUNDS.cantor_depth if bound is None else bound
    if n < 0:
        raise InputError("depth must be >= 0")
    if n > bound:
        raise BoundExceeded("cantor_set", n, bound)
    return _cantor(n)


@lru_cache(maxsize=4)
def _cantor(n):
    # integer numerators over 3^k, converted to Fractions once at the end
    parts = [(0, 1)]
    for _ in range(n):
        parts = [q for a, b in parts for q in ((3 * a, 3 * a + 1), (3 * b - 1, 3 * b))]
    den = 3 ** n
    return ClosedIntervalSet(tuple((Fraction(a, den), Fraction(b, den)) for a, b in parts))


def open_cover_gap(u, v, cover: Sequence) -> Fraction | None:
    """A point of [u, v] outside every open ]x, y[ in ``cover``, or None.

    Checks every endpoint inside [u, v] and every midpoint between
    consecutive ones; that suffices because coverage can only change at
    endpoints.
    """
    u, v = to_fraction(u), to_fraction(v)
    ivs = _pairs(cover)
    pts = sorted({u, v, *(p for x, y in ivs for p in (x, y) if u <= p <= v)})
    probes = []
    for i, p in enumerate(pts):
        probes.append(p)
        if i + 1 < len(pts):
            probes.append((p + pts[i + 1]) / 2)
    for p in probes:
        if not any(x < p < y for x, y in ivs):
            return p
    return None


def heine_borel_subcover(u, v, cover: Sequence) -> list[int]:
    """Indices of a finite subcover of [u, v] from open intervals ]x, y[.

    Greedy sweep: from t = u, take the interval containing t that reaches
    furthest right (least index on ties) and jump to its right end.
    """
    u, v = to_fraction(u), to_fraction(v)
    if not u < v:
        raise InputError("need u < v")
    ivs = _pairs(cover)
    for x, y in ivs:
        if not x < y:
            raise InputError(f"open interval ]{x},{y}[ is empty")
    chosen, t = [], u
    while True:
        best = None
        for i, (x, y) in enumerate(ivs):
            if x < t < y and (best is None or y > ivs[best][1]):
                best = i
        if best is None:
            raise NotACover(t)
        chosen.append(best)
        t = ivs[best][1]
        if t > v:
            return chosen


class NestedPoint(NamedTuple):
    point: Fraction
    diameter: Fraction


def nested_intersection(seq: Sequence[ClosedIntervalSet], tol) -> NestedPoint:
    tol = to_fraction(tol)
    seq = list(seq)
    if not seq:
        raise InputError("need at least one stage")
    for i, s in enumerate(seq):
        if not s:
            raise InputError(f"stage {i} is empty")
        if i and not s <= seq[i - 1]:
            raise InputError(f"stage {i} is not contained in stage {i - 1}")
    last = seq[-1]
    if last.diameter() > tol:
        raise InputError(f"final diameter {last.diameter()} exceeds tolerance {tol}")
    return NestedPoint(last.min(), last.diameter())


class ProductBounds(NamedTuple):
    product: Fraction
    lower: Fraction


def product_bounds(a: Sequence) -> ProductBounds:
    """prod(1 - a_i) and the bound 1 - sum(a_i) it strictly exceeds."""
    a = [to_fraction(x) for x in a]
    if len(a) < 2:
        raise InputError("need at least two factors")
    for x in a:
        if not ZERO < x < ONE:
            raise InputError(f"entry {x} is not in (0, 1)")
    prod = ONE
    for x in a:
        prod *= 1 - x
    lower = 1 - sum(a)
    if not prod > lower:
        raise AssertionError("product bound violated")
    return ProductBounds(prod, lower)
