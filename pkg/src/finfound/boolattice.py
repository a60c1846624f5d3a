"""Finite lattices and Boolean algebras.

Lattices carry explicit meet/join tables over the element indices of the
underlying poset.  Subsets are passed around as frozensets of labels;
internally they become bitmasks over element indices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from .errors import FinfoundError, InputError, NegativeResult
from .order import (ABSENT, FinitePoset, bounds, chain_poset, divisibility_poset,
                    extrema, validate_poset)


class NotALattice(NegativeResult):
    """``failures`` lists every (a, b, 'meet'|'join') that is missing."""

    def __init__(self, failures):
        a, b, missing = failures[0]
        more = f" (and {len(failures) - 1} more)" if len(failures) > 1 else ""
        super().__init__(f"not a lattice: {missing} of {a!r} and {b!r} does not exist{more}")
        self.pair = (a, b)
        self.missing = missing
        self.failures = list(failures)


class NotBoolean(NegativeResult):
    def __init__(self, msg, witness):
        super().__init__(msg)
        self.witness = witness


class NotAFilterBase(NegativeResult):
    def __init__(self, msg, witness):
        super().__init__(msg)
        self.witness = witness


class NotAnIdeal(NegativeResult):
    def __init__(self, msg, witness):
        super().__init__(msg)
        self.witness = witness


class RepresentationError(FinfoundError):
    """A construction failed its own post-check. Indicates a bug."""


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    poset: FinitePoset
    meet_t: tuple  # meet_t[i][j] = index of meet
    join_t: tuple

    def __post_init__(self):
        n = len(self.poset)
        down = [sum(1 << i for i in range(n) if self.poset.leq[i][j]) for j in range(n)]
        up = [sum(1 << j for j in range(n) if self.poset.leq[i][j]) for i in range(n)]
        object.__setattr__(self, "down_mask", tuple(down))
        object.__setattr__(self, "up_mask", tuple(up))
        b = next(i for i in range(n) if up[i] == (1 << n) - 1)
        t = next(i for i in range(n) if down[i] == (1 << n) - 1)
        object.__setattr__(self, "bot_i", b)
        object.__setattr__(self, "top_i", t)

    @property
    def elements(self) -> tuple:
        return self.poset.elements

    def __len__(self):
        return len(self.poset)

    @property
    def bottom(self):
        return self.poset.elements[self.bot_i]

    @property
    def top(self):
        return self.poset.elements[self.top_i]

    def index(self, a):
        return self.poset.index(a)

    def le(self, a, b):
        return self.poset.le(a, b)

    def meet(self, a, b):
        return self.elements[self.meet_t[self.index(a)][self.index(b)]]

    def join(self, a, b):
        return self.elements[self.join_t[self.index(a)][self.index(b)]]

    def meet_all(self, xs):
        acc = self.top_i
        for x in xs:
            acc = self.meet_t[acc][self.index(x)]
        return self.elements[acc]

    def join_all(self, xs):
        acc = self.bot_i
        for x in xs:
            acc = self.join_t[acc][self.index(x)]
        return self.elements[acc]

    # bitmask helpers
    def mask(self, subset) -> int:
        m = 0
        for a in subset:
            m |= 1 << self.index(a)
        return m

    def unmask(self, m: int) -> frozenset:
        return frozenset(e for i, e in enumerate(self.elements) if m >> i & 1)

    def sorted_subset(self, subset) -> list:
        return sorted(subset, key=self.index)


def lattice_from_poset(p: FinitePoset) -> FiniteLattice:
    n = len(p)
    if n == 0:
        raise InputError("empty poset")
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    els = p.elements
    failures = []
    for i in range(n):
        for j in range(i, n):
            r = bounds(p, (els[i], els[j]))
            if r.inf is ABSENT:
                failures.append((els[i], els[j], "meet"))
            else:
                meet[i][j] = meet[j][i] = p.index(r.inf)
            if r.sup is ABSENT:
                failures.append((els[i], els[j], "join"))
            else:
                join[i][j] = join[j][i] = p.index(r.sup)
    if failures:
        raise NotALattice(failures)
    return FiniteLattice(p, tuple(map(tuple, meet)), tuple(map(tuple, join)))


def lattice_from_meet_table(elements: Sequence, meet: dict) -> FiniteLattice:
    """Rebuild a lattice from its meet table; a <= b iff meet(a, b) = a."""
    elements = tuple(elements)
    try:
        leq = [[meet[(a, b)] == a for b in elements] for a in elements]
    except KeyError as e:
        raise InputError(f"meet table has no entry for {e.args[0]!r}") from None
    lat = lattice_from_poset(validate_poset(elements, leq))
    for a in elements:
        for b in elements:
            if lat.meet(a, b) != meet[(a, b)]:
                raise InputError(f"meet table entry ({a!r}, {b!r}) is not the infimum")
    return lat


def is_distributive(l: FiniteLattice) -> tuple[bool, tuple | None]:
    """Check a & (b | c) == (a & b) | (a & c) over all triples."""
    n = len(l)
    M, J = l.meet_t, l.join_t
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if M[a][J[b][c]] != J[M[a][b]][M[a][c]]:
                    e = l.elements
                    return False, (e[a], e[b], e[c])
    return True, None


@dataclass(frozen=True, eq=False)
class BooleanAlgebra:
    lattice: FiniteLattice
    neg_t: tuple

    @property
    def elements(self):
        return self.lattice.elements

    def __len__(self):
        return len(self.lattice)

    @property
    def bottom(self):
        return self.lattice.bottom

    @property
    def top(self):
        return self.lattice.top

    @property
    def poset(self):
        return self.lattice.poset

    def index(self, a):
        return self.lattice.index(a)

    def le(self, a, b):
        return self.lattice.le(a, b)

    def meet(self, a, b):
        return self.lattice.meet(a, b)

    def join(self, a, b):
        return self.lattice.join(a, b)

    def neg(self, a):
        return self.elements[self.neg_t[self.index(a)]]

    def atoms(self) -> tuple:
        l = self.lattice
        return tuple(e for i, e in enumerate(l.elements)
                     if i != l.bot_i and l.down_mask[i] == (1 << i) | (1 << l.bot_i))


def boolean_structure(l: FiniteLattice) -> BooleanAlgebra:
    ok, w = is_distributive(l)
    if not ok:
        raise NotBoolean(f"lattice is not distributive at {w!r}", w)
    n = len(l)
    neg = []
    for a in range(n):
        c = next((b for b in range(n)
                  if l.meet_t[a][b] == l.bot_i and l.join_t[a][b] == l.top_i), None)
        if c is None:
            e = l.elements[a]
            raise NotBoolean(f"element {e!r} has no complement", e)
        neg.append(c)
    return BooleanAlgebra(l, tuple(neg))


def boolean_algebra_from_tables(elements: Sequence, meet: dict, join: dict,
                                neg: dict) -> BooleanAlgebra:
    """Abstract Boolean algebra given purely by operation tables."""
    lat = lattice_from_meet_table(elements, meet)
    for a in lat.elements:
        for b in lat.elements:
            if join.get((a, b)) != lat.join(a, b):
                raise InputError(f"join table entry ({a!r}, {b!r}) is not the supremum")
    b = boolean_structure(lat)
    for a in lat.elements:
        if neg.get(a) != b.neg(a):
            raise InputError(f"neg table entry for {a!r} is not the complement")
    return b


def tables(b: BooleanAlgebra):
    """(meet, join, neg) tables keyed by labels."""
    els = b.elements
    meet = {(x, y): b.meet(x, y) for x in els for y in els}
    join = {(x, y): b.join(x, y) for x in els for y in els}
    return meet, join, {x: b.neg(x) for x in els}


def relabel(b: BooleanAlgebra, mapping: dict) -> BooleanAlgebra:
    """Isomorphic copy of ``b`` with elements renamed through ``mapping``."""
    meet, join, neg = tables(b)
    f = mapping.__getitem__
    new_els = [f(e) for e in b.elements]
    if len(set(new_els)) != len(new_els):
        raise InputError("relabelling is not injective")
    return boolean_algebra_from_tables(
        new_els,
        {(f(x), f(y)): f(v) for (x, y), v in meet.items()},
        {(f(x), f(y)): f(v) for (x, y), v in join.items()},
        {f(x): f(v) for x, v in neg.items()})


def powerset_algebra(points: Sequence) -> BooleanAlgebra:
    """P(points) ordered by inclusion; elements listed by index bitmask."""
    points = tuple(points)
    k = len(points)
    els = [frozenset(points[i] for i in range(k) if m >> i & 1) for m in range(1 << k)]
    p = validate_poset(els, [[a <= b for b in els] for a in els])
    n = len(els)
    idx = {e: i for i, e in enumerate(els)}
    meet = tuple(tuple(idx[a & b] for b in els) for a in els)
    join = tuple(tuple(idx[a | b] for b in els) for a in els)
    full = frozenset(points)
    lat = FiniteLattice(p, meet, join)
    return BooleanAlgebra(lat, tuple(idx[full - a] for a in els))


def chain_lattice(elements: Sequence) -> FiniteLattice:
    return lattice_from_poset(chain_poset(elements))


def divisor_lattice(n: int) -> FiniteLattice:
    return lattice_from_poset(divisibility_poset(n))


class SubsetClassification(NamedTuple):
    is_ideal: bool
    is_filter: bool
    is_prime: bool
    is_maximal: bool
    witness: dict | None


def _ideal_failure(l: FiniteLattice, m: int, dual: bool):
    """First reason the bitmask ``m`` fails to be an ideal (filter if dual)."""
    n = len(l)
    full = (1 << n) - 1
    if m == 0:
        return ("empty",)
    if m == full:
        return ("not proper",)
    close = l.up_mask if dual else l.down_mask
    op = l.meet_t if dual else l.join_t
    idx = [i for i in range(n) if m >> i & 1]
    e = l.elements
    for i in idx:
        out = close[i] & ~m
        if out:
            j = (out & -out).bit_length() - 1
            return ("not up-closed" if dual else "not down-closed", e[i], e[j])
    for a, b in combinations(idx, 2):
        if not m >> op[a][b] & 1:
            return ("not meet-closed" if dual else "not join-closed", e[a], e[b])
    return None


def _generate(l: FiniteLattice, m: int, dual: bool) -> int:
    """Smallest down-closed, join-closed superset (dually for filters)."""
    op = l.meet_t if dual else l.join_t
    close = l.up_mask if dual else l.down_mask
    n = len(l)
    idx = [i for i in range(n) if m >> i & 1]
    if not idx:
        return 0
    acc = idx[0]
    for i in idx[1:]:
        acc = op[acc][i]
    return close[acc]


def _prime_failure(l: FiniteLattice, m: int, dual: bool):
    n = len(l)
    op = l.join_t if dual else l.meet_t
    for a in range(n):
        if m >> a & 1:
            continue
        for b in range(a + 1, n):
            if not m >> b & 1 and m >> op[a][b] & 1:
                return ("not prime", l.elements[a], l.elements[b])
    return None


def _maximal_failure(l: FiniteLattice, m: int, dual: bool):
    n = len(l)
    full = (1 << n) - 1
    for x in range(n):
        if m >> x & 1:
            continue
        g = _generate(l, m | (1 << x), dual)
        if g != full:
            return ("extends to", l.unmask(g))
    return None


def classify_subset(l, s: Iterable) -> SubsetClassification:
    l = getattr(l, "lattice", l)
    m = l.mask(s)
    why = {}
    fi = _ideal_failure(l, m, dual=False)
    ff = _ideal_failure(l, m, dual=True)
    # a proper nonempty subset cannot be both
    dual = None
    if fi is None:
        dual = False
    else:
        why["ideal"] = fi
    if ff is None:
        dual = True
    else:
        why["filter"] = ff
    if dual is None:
        return SubsetClassification(False, False, False, False, why)
    pf = _prime_failure(l, m, dual)
    mf = _maximal_failure(l, m, dual)
    if pf:
        why["prime"] = pf
    if mf:
        why["maximal"] = mf
    return SubsetClassification(not dual, dual, pf is None, mf is None, why or None)


def _generate_checked(l, base, dual):
    l = getattr(l, "lattice", l)
    base = list(base)
    if not base:
        raise InputError("generator must be nonempty")
    op = l.meet_t if dual else l.join_t
    bad = l.bot_i if dual else l.top_i
    idx = [l.index(x) for x in base]
    acc, parts = idx[0], [base[0]]
    if acc == bad:
        raise NotAFilterBase(f"{base[0]!r} is {'bottom' if dual else 'top'}", tuple(parts))
    for i, x in zip(idx[1:], base[1:]):
        acc = op[acc][i]
        parts.append(x)
        if acc == bad:
            kind = "meet" if dual else "join"
            raise NotAFilterBase(
                f"not a {'filter' if dual else 'ideal'} base: the {kind} of "
                f"{parts!r} is {l.elements[acc]!r}", tuple(parts))
    return l.unmask((l.up_mask if dual else l.down_mask)[acc])


def generate_filter(l, base: Iterable) -> frozenset:
    """Smallest filter containing ``base``.

    In a finite lattice the meet closure of the base has a least element,
    so the filter is the up-closure of the meet of the whole base.
    """
    return _generate_checked(l, base, dual=True)


def generate_ideal(l, base: Iterable) -> frozenset:
    return _generate_checked(l, base, dual=False)


def all_filters(l) -> list[frozenset]:
    """Every filter; in a finite lattice each is principal, up(x) for x != bottom."""
    l = getattr(l, "lattice", l)
    return [l.unmask(l.up_mask[i]) for i in range(len(l)) if i != l.bot_i]


def all_ideals(l) -> list[frozenset]:
    l = getattr(l, "lattice", l)
    return [l.unmask(l.down_mask[i]) for i in range(len(l)) if i != l.top_i]


def ultrafilters(b) -> list[frozenset]:
    """Maximal filters, ordered by the index of their generating element."""
    l = getattr(b, "lattice", b)
    fs = [l.up_mask[i] for i in range(len(l)) if i != l.bot_i]
    out = [f for f in fs if not any(g != f and f & g == f for g in fs)]
    return [l.unmask(f) for f in out]


def symm_diff(b: BooleanAlgebra, a, c):
    return b.join(b.meet(a, b.neg(c)), b.meet(b.neg(a), c))


@dataclass(frozen=True, eq=False)
class QuotientAlgebra:
    base: BooleanAlgebra
    ideal: frozenset
    classes: tuple  # frozensets, ordered by representative index
    representative: dict  # class -> least-index member
    _proj: dict = field(repr=False)

    def project(self, x):
        return self._proj[x]

    @property
    def elements(self):
        return tuple(self.representative[c] for c in self.classes)

    def meet(self, x, y):
        return self.project(self.base.meet(x, y))

    def join(self, x, y):
        return self.project(self.base.join(x, y))

    def neg(self, x):
        return self.project(self.base.neg(x))

    def to_algebra(self) -> BooleanAlgebra:
        """The quotient as an abstract algebra on representatives."""
        els = self.elements
        return boolean_algebra_from_tables(
            els,
            {(x, y): self.meet(x, y) for x in els for y in els},
            {(x, y): self.join(x, y) for x in els for y in els},
            {x: self.neg(x) for x in els})

    def __len__(self):
        return len(self.classes)


def quotient(b: BooleanAlgebra, ideal: Iterable) -> QuotientAlgebra:
    ideal = frozenset(ideal)
    c = classify_subset(b, ideal)
    if not c.is_ideal:
        raise NotAnIdeal(f"not an ideal: {c.witness['ideal']!r}", c.witness["ideal"])
    els = b.elements
    proj, classes, rep = {}, [], {}
    for x in els:
        if x in proj:
            continue
        cls = frozenset(y for y in els if symm_diff(b, x, y) in ideal)
        classes.append(cls)
        rep[cls] = x
        for y in cls:
            proj[y] = x
    q = QuotientAlgebra(b, ideal, tuple(classes), rep, proj)
    # the induced operations must not depend on the chosen members
    for x in els:
        for y in els:
            px, py = proj[x], proj[y]
            if (proj[b.meet(x, y)] != proj[b.meet(px, py)]
                    or proj[b.join(x, y)] != proj[b.join(px, py)]):
                raise RepresentationError(f"congruence fails at ({x!r}, {y!r})")
        if proj[b.neg(x)] != proj[b.neg(proj[x])]:
            raise RepresentationError(f"congruence fails at {x!r}")
    q.to_algebra()  # validates the Boolean laws
    return q


def prime_ideals(b: BooleanAlgebra) -> list[frozenset]:
    """Complements of the ultrafilters, in the same order."""
    full = frozenset(b.elements)
    return [full - u for u in ultrafilters(b)]


def extend_to_prime_ideal(b: BooleanAlgebra, ideal: Iterable) -> frozenset:
    """A prime ideal containing ``ideal``, pulled back from the quotient.

    Prime ideals of the quotient are listed as complements of its
    ultrafilters, ordered by generating atom; the first one is used.
    """
    q = quotient(b, ideal)
    qa = q.to_algebra()
    J = prime_ideals(qa)[0]
    K = frozenset(x for x in b.elements if q.project(x) in J)
    c = classify_subset(b, K)
    if not (c.is_ideal and c.is_prime and K >= q.ideal):
        raise RepresentationError("pulled-back ideal is not a prime extension")
    return K


def separating_prime_ideal(b: BooleanAlgebra, x, y) -> frozenset:
    """Prime ideal containing exactly one of ``x`` and ``y``."""
    if x == y:
        raise InputError("elements to separate must differ")
    d = b.meet(x, b.neg(y))
    if d != b.bottom:
        # contains -x | y, hence y; cannot contain x
        return extend_to_prime_ideal(b, generate_ideal(b, [b.neg(d)]))
    d = b.meet(b.neg(x), y)
    return extend_to_prime_ideal(b, generate_ideal(b, [b.neg(d)]))


@dataclass(frozen=True)
class SetAlgebra:
    points: tuple
    sets: frozenset

    def __post_init__(self):
        full = frozenset(self.points)
        if frozenset() not in self.sets or full not in self.sets:
            raise InputError("set algebra must contain the empty and the full set")
        for a in self.sets:
            if not a <= full:
                raise InputError("member outside the point set")
            if full - a not in self.sets:
                raise InputError("not closed under complement")
            for c in self.sets:
                if a | c not in self.sets or a & c not in self.sets:
                    raise InputError("not closed under union/intersection")


@dataclass(frozen=True, eq=False)
class StoneRepresentation:
    algebra: SetAlgebra
    psi: dict
    ultrafilters: tuple


def stone_representation(b: BooleanAlgebra) -> StoneRepresentation:
    """psi(x) = {U | x in U}, with U ranging over the ultrafilters of b.

    The points of the resulting set algebra are ultrafilter indices.
    """
    us = ultrafilters(b)
    pts = tuple(range(len(us)))
    full = frozenset(pts)
    psi = {x: frozenset(i for i, u in enumerate(us) if x in u) for x in b.elements}
    els = b.elements
    if len(set(psi.values())) != len(els):
        raise RepresentationError("psi is not injective")
    for x in els:
        if psi[b.neg(x)] != full - psi[x]:
            raise RepresentationError(f"psi does not preserve complement at {x!r}")
        for y in els:
            if psi[b.meet(x, y)] != psi[x] & psi[y] or psi[b.join(x, y)] != psi[x] | psi[y]:
                raise RepresentationError(f"psi is not a homomorphism at ({x!r}, {y!r})")
    # dual side: X_a = prime ideals not containing a
    primes = [frozenset(els) - u for u in us]
    X = {a: frozenset(i for i, P in enumerate(primes) if a not in P) for a in els}
    if X[b.bottom] or X[b.top] != full:
        raise RepresentationError("base identities fail at the bounds")
    for a in els:
        if X[b.neg(a)] != full - X[a]:
            raise RepresentationError(f"base identity fails for the complement of {a!r}")
        for c in els:
            if X[b.meet(a, c)] != X[a] & X[c] or X[b.join(a, c)] != X[a] | X[c]:
                raise RepresentationError(f"base identities fail at ({a!r}, {c!r})")
    return StoneRepresentation(SetAlgebra(pts, frozenset(psi.values())), psi, tuple(us))


def distribute_over_join(b: BooleanAlgebra, x, family: Sequence):
    """Both sides of x & (a1 | ... | an) = (x & a1) | ... | (x & an)."""
    family = list(family)
    if not family:
        raise InputError("family must be nonempty")
    left = b.meet(x, b.lattice.join_all(family))
    right = b.lattice.join_all([b.meet(x, a) for a in family])
    return left, right
