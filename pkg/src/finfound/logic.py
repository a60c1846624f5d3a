"""Propositional formulas over Var / And / Not.

Concrete syntax, loosest binding first::

    <->   left-assoc
    ->    right-assoc
    |     left-assoc
    &     left-assoc
    !     prefix

Identifiers are ``[A-Za-z_][A-Za-z0-9_]*``.  Only Var, And and Not are
stored; ``|``, ``->`` and ``<->`` desugar while parsing.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence

from .config import DEFAULT_BOUNDS
from .errors import BoundExceeded, InputError, NegativeResult


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Not:
    arg: "Formula"

    def __str__(self):
        return to_text(self)


Formula = Var | And | Not


def Or(a, b):
    return Not(And(Not(a), Not(b)))


def Implies(a, b):
    return Or(Not(a), b)


def Iff(a, b):
    return And(Implies(a, b), Implies(b, a))


class ParseError(InputError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(<->|->|[!&|()])|([A-Za-z_][A-Za-z0-9_]*))")


def _tokens(text):
    pos, out = 0, []
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        if m.group(1):
            out.append((m.group(1), m.group(1), m.start(1)))
        else:
            out.append(("id", m.group(2), m.start(2)))
        pos = m.end()
    out.append(("eof", None, n))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, what):
        kind, val, pos = self.toks[self.i]
        got = "end of input" if kind == "eof" else repr(val)
        raise ParseError(f"expected {what}, got {got}", pos)

    def iff(self):
        f = self.imp()
        while self.peek() == "<->":
            self.take()
            f = Iff(f, self.imp())
        return f

    def imp(self):
        f = self.disj()
        if self.peek() == "->":
            self.take()
            return Implies(f, self.imp())
        return f

    def disj(self):
        f = self.conj()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self):
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self):
        if self.peek() == "!":
            self.take()
            return Not(self.unary())
        if self.peek() == "id":
            return Var(self.take()[1])
        if self.peek() == "(":
            self.take()
            f = self.iff()
            if self.peek() != ")":
                self.fail("')'")
            self.take()
            return f
        self.fail("a formula")


def parse(text: str) -> Formula:
    p = _Parser(text)
    f = p.iff()
    if p.peek() != "eof":
        p.fail("end of input")
    return f


def to_text(f: Formula) -> str:
    """Canonical text; ``parse(to_text(f)) == f``."""
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Not):
        inner = to_text(f.arg)
        return "!" + (f"({inner})" if isinstance(f.arg, And) else inner)
    right = to_text(f.right)
    if isinstance(f.right, And):
        right = f"({right})"
    return f"{to_text(f.left)} & {right}"


def _as_formula(f):
    return parse(f) if isinstance(f, str) else f


def variables(f) -> set[str]:
    f = _as_formula(f)
    out, stack = set(), [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Var):
            out.add(g.name)
        elif isinstance(g, Not):
            stack.append(g.arg)
        else:
            stack.extend((g.left, g.right))
    return out


class UnboundVariable(InputError):
    def __init__(self, name):
        super().__init__(f"variable {name!r} has no value")
        self.name = name


def evaluate(v: Mapping[str, int], f) -> int:
    f = _as_formula(f)
    if isinstance(f, Var):
        if f.name not in v:
            raise UnboundVariable(f.name)
        return 1 if v[f.name] else 0
    if isinstance(f, Not):
        return 1 - evaluate(v, f.arg)
    return min(evaluate(v, f.left), evaluate(v, f.right))


def _partial(v, f):
    """Three-valued evaluation: 0, 1, or None when undetermined."""
    if isinstance(f, Var):
        return v.get(f.name)
    if isinstance(f, Not):
        r = _partial(v, f.arg)
        return None if r is None else 1 - r
    a = _partial(v, f.left)
    if a == 0:
        return 0
    b = _partial(v, f.right)
    if b == 0:
        return 0
    return 1 if a == 1 and b == 1 else None


def sat(formulas: Iterable, bound: int | None = None) -> dict | None:
    """First model in lexicographic order (variables by name, 0 before 1).

    Returns ``None`` when unsatisfiable.
    """
    fs = [_as_formula(f) for f in formulas]
    names = sorted(set().union(*(variables(f) for f in fs))) if fs else []
    bound = DEFAULT_BOUNDS.sat_variables if bound is None else bound
    if len(names) > bound:
        raise BoundExceeded("sat", len(names), bound)
    v = {}

    def go(k):
        if any(_partial(v, f) == 0 for f in fs):
            return False
        if k == len(names):
            return True
        for bit in (0, 1):
            v[names[k]] = bit
            if go(k + 1):
                return True
        del v[names[k]]
        return False

    return dict(v) if go(0) else None


def is_satisfiable(formulas: Iterable, bound: int | None = None) -> bool:
    return sat(formulas, bound) is not None


class Unsatisfiable(NegativeResult):
    pass


def extend_by_one(A: Iterable, phi) -> frozenset:
    """A + {phi} if satisfiable, else A + {!phi}."""
    A = frozenset(_as_formula(f) for f in A)
    phi = _as_formula(phi)
    if not is_satisfiable(A):
        raise Unsatisfiable("starting set is unsatisfiable")
    return A | {_choose(A, phi)}


def _choose(A: frozenset, phi):
    return phi if is_satisfiable(A | {phi}) else Not(phi)


class ChainResult(NamedTuple):
    members: frozenset
    valuation: dict
    steps: tuple  # formula actually added at each stage


class ChainIncomplete(NegativeResult):
    pass


def compactness_chain(A: Iterable, enumeration: Sequence, complete: bool = True) -> ChainResult:
    """Run M_0 = A, M_{n+1} = extend_by_one(M_n, phi_{n+1}) over ``enumeration``.

    The valuation is read off the final set: x is true iff Var(x) is a
    member.  With ``complete`` (the default) every variable that appears
    in A or the enumeration is appended to the enumeration, which is what
    makes that reading a model.  With ``complete=False`` the list is used
    as given and a failed post-check raises ``ChainIncomplete``.
    """
    A = [_as_formula(f) for f in A]
    enum = [_as_formula(f) for f in enumeration]
    if not is_satisfiable(A):
        raise Unsatisfiable("starting set is unsatisfiable")
    if complete:
        names = sorted(set().union(*(variables(f) for f in A + enum))) if A + enum else []
        seen = set(enum)
        enum = enum + [Var(x) for x in names if Var(x) not in seen]
    M = frozenset(A)
    steps = []
    for phi in enum:
        # M stays satisfiable, so each extension step is well defined
        chosen = _choose(M, phi)
        steps.append(chosen)
        M = M | {chosen}
    names = sorted(set().union(*(variables(f) for f in M))) if M else []
    v = {x: int(Var(x) in M) for x in names}
    bad = next((f for f in M if evaluate(v, f) != 1), None)
    if bad is None:
        bad = next((f for f in enum if evaluate(v, f) != int(f in M)), None)
    if bad is not None:
        raise ChainIncomplete(f"read-off valuation disagrees with the chain at {to_text(bad)}")
    return ChainResult(M, v, tuple(steps))
