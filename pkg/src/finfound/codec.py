"""Exact bijections between naturals, pairs, tuples and finite sequences.

The pairing function walks the diagonals of the N0 x N0 grid::

    0  1  3  6
    2  4  7 11
    5  8 12 17
    9 13 18 24

(row x, column y).  Tuples of fixed length are folded left through
``pair``; finite nonempty sequences additionally pair in their length.
All arithmetic is on Python ints, so there is no overflow.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import InputError, NegativeResult


def _natural(n, name="value"):
    if isinstance(n, bool) or not isinstance(n, int):
        raise InputError(f"{name} must be an int, got {type(n).__name__}")
    if n < 0:
        raise InputError(f"{name} must be >= 0, got {n}")
    return n


def pair(x: int, y: int) -> int:
    _natural(x, "x")
    _natural(y, "y")
    s = x + y
    return s * (s + 1) // 2 + x


def unpair(n: int) -> tuple[int, int]:
    _natural(n, "n")
    # largest w with w(w+1)/2 <= n
    w = (isqrt(8 * n + 1) - 1) // 2
    x = n - w * (w + 1) // 2
    return x, w - x


def proj(n: int) -> tuple[int, int]:
    """Return ``(K(n), L(n))``: both coordinates of ``n``, each <= n."""
    return unpair(n)


def tuple_encode(xs: Sequence[int]) -> int:
    if len(xs) == 0:
        raise InputError("tuple_encode needs a nonempty tuple")
    acc = _natural(xs[0], "xs[0]")
    for i, x in enumerate(xs[1:], 1):
        acc = pair(acc, _natural(x, f"xs[{i}]"))
    return acc


def tuple_decode(k: int, n: int) -> tuple[int, ...]:
    _natural(n, "n")
    if _natural(k, "k") == 0:
        raise InputError("tuple length k must be >= 1")
    out = []
    for _ in range(k - 1):
        n, last = unpair(n)
        out.append(last)
    out.append(n)
    return tuple(reversed(out))


def seq_encode(xs: Sequence[int]) -> int:
    if len(xs) == 0:
        raise InputError("seq_encode needs a nonempty sequence")
    return pair(len(xs), tuple_encode(xs))


class NotASequenceCode(NegativeResult):
    pass


def seq_decode(n: int) -> tuple[int, ...]:
    # Codes whose first coordinate is 0 have no preimage: length-0
    # tuples are not part of the domain.
    k, body = unpair(n)
    if k == 0:
        raise NotASequenceCode(f"{n} is not a sequence code (unpair gives ({k}, {body}))")
    return tuple_decode(k, body)


@dataclass(frozen=True)
class FiniteMap:
    domain: tuple
    codomain: tuple
    graph: Mapping[Hashable, Hashable] = field(compare=False)

    def __post_init__(self):
        object.__setattr__(self, "domain", tuple(self.domain))
        object.__setattr__(self, "codomain", tuple(self.codomain))
        object.__setattr__(self, "graph", dict(self.graph))
        missing = [a for a in self.domain if a not in self.graph]
        if missing:
            raise InputError(f"map is not total: no image for {missing[0]!r}")
        cod = set(self.codomain)
        for a in self.domain:
            if self.graph[a] not in cod:
                raise InputError(f"image of {a!r} is {self.graph[a]!r}, outside the codomain")

    def __call__(self, a):
        return self.graph[a]

    def __eq__(self, other):
        if not isinstance(other, FiniteMap):
            return NotImplemented
        return (set(self.domain) == set(other.domain)
                and set(self.codomain) == set(other.codomain)
                and all(self.graph[a] == other.graph[a] for a in self.domain))

    def __hash__(self):
        return hash((frozenset(self.domain), frozenset(self.codomain)))

    def image(self, subset: Iterable) -> frozenset:
        return frozenset(self.graph[a] for a in subset)

    def collision(self):
        """First pair of distinct arguments with equal images, or None."""
        seen = {}
        for a in self.domain:
            b = self.graph[a]
            if b in seen:
                return seen[b], a
            seen[b] = a
        return None

    @property
    def injective(self) -> bool:
        return self.collision() is None

    @property
    def surjective(self) -> bool:
        return self.image(self.domain) == frozenset(self.codomain)

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective

    @classmethod
    def identity(cls, points):
        points = tuple(points)
        return cls(points, points, {p: p for p in points})


class NotInjectiveError(NegativeResult):
    def __init__(self, name, witness):
        super().__init__(f"{name} is not injective: {witness[0]!r} and {witness[1]!r} collide")
        self.witness = witness


def _check_opposed(f: FiniteMap, g: FiniteMap):
    if set(f.codomain) != set(g.domain) or set(g.codomain) != set(f.domain):
        raise InputError("expected f: X -> Y and g: Y -> X")


def schroeder_bernstein(f: FiniteMap, g: FiniteMap) -> FiniteMap:
    """Bijection A -> B from injections f: A -> B and g: B -> A.

    Follows the chain construction: A_0 is the part of A outside the
    image of g, A_{n+1} = g[f[A_n]]; on the union of the A_n use f,
    elsewhere invert g.
    """
    _check_opposed(f, g)
    for name, m in (("f", f), ("g", g)):
        bad = m.collision()
        if bad is not None:
            raise NotInjectiveError(name, bad)

    layer = frozenset(f.domain) - g.image(g.domain)
    reach = set(layer)
    while layer:
        layer = g.image(f.image(layer)) - reach
        reach |= layer

    g_inv = {b_img: b for b, b_img in g.graph.items()}
    h = {a: (f(a) if a in reach else g_inv[a]) for a in f.domain}
    return FiniteMap(f.domain, f.codomain, h)


@dataclass(frozen=True)
class BanachDecomposition:
    x1: frozenset
    x2: frozenset
    y1: frozenset
    y2: frozenset


def banach_decomposition(f: FiniteMap, g: FiniteMap) -> BanachDecomposition:
    """Split X = X1 + X2, Y = Y1 + Y2 with f[X1] = Y1 and g[Y2] = X2.

    X1 is the greatest fixpoint of A -> X \\ g[Y \\ f[A]].
    """
    from .order import greatest_fixpoint

    _check_opposed(f, g)
    X, Y = frozenset(f.domain), frozenset(g.domain)

    def H(A):
        return X - g.image(Y - f.image(A))

    # H is monotone by construction, so skip the sampled check
    x1 = greatest_fixpoint(H, X, check="none")
    y1 = f.image(x1)
    return BanachDecomposition(x1, X - x1, y1, Y - y1)
