"""Finite-horizon two-player games of perfect information.

A game has an alphabet {0, ..., m-1} and d rounds.  Angel moves at even
positions and Demon at odd ones, so a play has length 2d.  Angel wins iff
the play lies in the winning set.  With a finite horizon, backward
induction decides every game, so one of the two sides always has a
winning strategy.

Strategies are dicts (or callables) from prefix tuples to moves: Angel's
strategy is read at even-length prefixes, Demon's at odd-length ones.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, NamedTuple, Sequence

from .codec import seq_encode
from .config import DEFAULT_BOUNDS
from .errors import BoundExceeded, InputError, NegativeResult

ANGEL, DEMON = "Angel", "Demon"


@dataclass(frozen=True, eq=False)
class GameSpec:
    m: int
    d: int
    winning: object  # frozenset of tuples, or a predicate on tuples

    def __post_init__(self):
        if self.m < 1 or self.d < 1:
            raise InputError("need m >= 1 and d >= 1")
        if not callable(self.winning):
            ws = frozenset(tuple(w) for w in self.winning)
            for w in ws:
                if len(w) != 2 * self.d or any(not 0 <= x < self.m for x in w):
                    raise InputError(f"{w!r} is not a play of length {2 * self.d} over {self.m} moves")
            object.__setattr__(self, "winning", ws)

    def angel_wins(self, moves) -> bool:
        moves = tuple(moves)
        if callable(self.winning):
            return bool(self.winning(moves))
        return moves in self.winning

    def plays(self):
        return product(range(self.m), repeat=2 * self.d)


class Play(NamedTuple):
    moves: tuple
    winner: str


class MissingMove(InputError):
    def __init__(self, prefix):
        super().__init__(f"strategy has no move for prefix {prefix!r}")
        self.prefix = prefix


def _move(g: GameSpec, strategy, prefix: tuple) -> int:
    if callable(strategy):
        x = strategy(prefix)
    else:
        try:
            x = strategy[prefix]
        except KeyError:
            raise MissingMove(prefix) from None
    if not (isinstance(x, int) and 0 <= x < g.m):
        raise InputError(f"strategy answers {x!r} at {prefix!r}; moves must be in 0..{g.m - 1}")
    return x


def _finish(g, moves):
    moves = tuple(moves)
    return Play(moves, ANGEL if g.angel_wins(moves) else DEMON)


def play(g: GameSpec, sigma, tau) -> Play:
    moves = []
    for k in range(2 * g.d):
        moves.append(_move(g, sigma if k % 2 == 0 else tau, tuple(moves)))
    return _finish(g, moves)


def play_vs_demon_moves(g: GameSpec, sigma, b: Sequence[int]) -> Play:
    """sigma * b: Angel follows sigma, Demon plays the fixed list b."""
    if len(b) != g.d:
        raise InputError(f"need {g.d} Demon moves")
    moves = []
    for x in b:
        moves.append(_move(g, sigma, tuple(moves)))
        moves.append(x)
    return _finish(g, moves)


def play_vs_angel_moves(g: GameSpec, a: Sequence[int], tau) -> Play:
    """a * tau: Angel plays the fixed list a, Demon follows tau."""
    if len(a) != g.d:
        raise InputError(f"need {g.d} Angel moves")
    moves = []
    for x in a:
        moves.append(x)
        moves.append(_move(g, tau, tuple(moves)))
    return _finish(g, moves)


def is_winning(g: GameSpec, strategy, side: str, bound: int | None = None):
    """(True, None) if ``strategy`` wins for ``side`` against every opponent
    line, else (False, line) with a losing opponent move list."""
    if side not in (ANGEL, DEMON):
        raise InputError(f"side must be {ANGEL!r} or {DEMON!r}")
    bound = DEFAULT_BOUNDS.strategy_lines if bound is None else bound
    if g.m ** g.d > bound:
        raise BoundExceeded("is_winning", g.m ** g.d, bound)
    for line in product(range(g.m), repeat=g.d):
        if side == ANGEL:
            p = play_vs_demon_moves(g, strategy, line)
        else:
            p = play_vs_angel_moves(g, line, strategy)
        if p.winner != side:
            return False, line
    return True, None


class Solution(NamedTuple):
    winner: str
    strategy: dict


class SolverError(NegativeResult):
    pass


def solve(g: GameSpec, bound: int | None = None) -> Solution:
    """Backward induction.

    The returned strategy is total on the winner's prefixes: at each one
    it plays the least move that keeps a won position, or 0 where none
    exists (positions the strategy itself never reaches).
    """
    bound = DEFAULT_BOUNDS.game_positions if bound is None else bound
    if g.m ** (2 * g.d) > bound:
        raise BoundExceeded("solve", g.m ** (2 * g.d), bound)
    n = 2 * g.d

    @lru_cache(maxsize=None)
    def angel_wins_from(prefix):
        if len(prefix) == n:
            return g.angel_wins(prefix)
        kids = (angel_wins_from(prefix + (x,)) for x in range(g.m))
        return any(kids) if len(prefix) % 2 == 0 else all(kids)

    winner = ANGEL if angel_wins_from(()) else DEMON
    parity = 0 if winner == ANGEL else 1
    want = winner == ANGEL
    strat = {}
    for k in range(parity, n, 2):
        for prefix in product(range(g.m), repeat=k):
            strat[prefix] = next((x for x in range(g.m)
                                  if angel_wins_from(prefix + (x,)) == want), 0)
    ok, line = is_winning(g, strat, winner)
    if not ok:
        raise SolverError(f"solver strategy fails against {line!r}")
    return Solution(winner, strat)


def choice_from_determinacy(family: Sequence[Iterable], m: int, d: int) -> list[tuple]:
    """Choice function read off a winning Demon strategy.

    Angel's first move n names the set family[n] (0-based); her later
    moves are filler.  Demon wins iff his d moves form a member of that
    set.  Names past the end of the family count as Demon wins.  Every
    member being nonempty, Demon has a winning strategy tau, and
    f(family[n]) is Demon's part of the play <n, 0, 0, ...> * tau.
    """
    fam = [frozenset(tuple(x) for x in X) for X in family]
    if not fam:
        raise InputError("family is empty")
    if len(fam) > m:
        raise InputError(f"family has {len(fam)} sets but only {m} names are available")
    for i, X in enumerate(fam):
        if not X:
            raise InputError(f"set {i} is empty")
        for x in X:
            if len(x) != d or any(not 0 <= c < m for c in x):
                raise InputError(f"member {x!r} of set {i} is not a word of length {d} over {m}")

    def angel(play_):
        n = play_[0]
        return n < len(fam) and play_[1::2] not in fam[n]

    g = GameSpec(m, d, angel)
    sol = solve(g)
    if sol.winner != DEMON:
        raise SolverError("Demon should win the choice game")
    out = []
    for n in range(len(fam)):
        p = play_vs_angel_moves(g, (n,) + (0,) * (d - 1), sol.strategy)
        pick = p.moves[1::2]
        assert pick in fam[n]
        out.append(pick)
    return out


class BMEncoding(NamedTuple):
    game: GameSpec
    table: tuple  # table[i] is the sequence named by move i


def banach_mazur_encode(bound: int, length: int, rounds: int,
                        target: Callable[[tuple], bool], max_alphabet: int | None = None) -> BMEncoding:
    """Finite Banach-Mazur game as a GameSpec.

    Each move names a nonempty sequence with entries < ``bound`` and at
    most ``length`` entries; names follow increasing ``seq_encode`` code.
    Every move must extend (or repeat) the previous one.  The first player
    to break that loses at once; otherwise Angel wins iff ``target`` holds
    for the last sequence.
    """
    max_alphabet = DEFAULT_BOUNDS.bm_alphabet if max_alphabet is None else max_alphabet
    if bound < 1 or length < 1 or rounds < 1:
        raise InputError("bound, length and rounds must be >= 1")
    count = sum(bound ** k for k in range(1, length + 1))
    if count > max_alphabet:
        raise BoundExceeded("banach_mazur alphabet", count, max_alphabet)
    seqs = [s for k in range(1, length + 1) for s in product(range(bound), repeat=k)]
    table = tuple(sorted(seqs, key=seq_encode))

    def angel(moves):
        words = [table[i] for i in moves]
        for k in range(1, len(words)):
            prev, cur = words[k - 1], words[k]
            if cur[:len(prev)] != prev:
                # move k broke the rule; even k is Angel's move
                return k % 2 == 1
        return bool(target(words[-1]))

    return BMEncoding(GameSpec(len(table), rounds, angel), table)
