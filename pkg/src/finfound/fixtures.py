"""Small named orders used in tests, scripts and the CLI."""
from .boolattice import FiniteLattice, lattice_from_poset
from .order import FinitePoset, divisibility_poset, from_covers

BOT, TOP = "0", "1"


def six_element_tree() -> FinitePoset:
    """A on top of B and C; B over D, E; C over E, F."""
    return from_covers("ABCDEF", [("D", "B"), ("E", "B"), ("E", "C"), ("F", "C"),
                                  ("B", "A"), ("C", "A")])


def twelve_element_no_join() -> FinitePoset:
    """Bounded poset in which B and C have three upper bounds but no join."""
    els = [BOT, *"ABCDEFGHIJ", TOP]
    cov = [(BOT, x) for x in "ABCD"]
    cov += [("A", "E"), ("C", "E"), ("A", "F"), ("B", "F"), ("C", "G"),
            ("E", "H"), ("F", "H"), ("F", "I"), ("G", "I"), ("D", "I"), ("G", "J")]
    cov += [(x, TOP) for x in "HIJ"]
    return from_covers(els, cov)


def fifteen_element_poset() -> FinitePoset:
    """Bounded poset where D & E exists but D | E does not (J, L both minimal)."""
    els = [BOT, *"ABCDEFGHIJKLM", TOP]
    cov = [(BOT, "A"), (BOT, "B"), ("A", "C"), ("A", "D"), ("B", "D"), ("B", "E"),
           ("C", "F"), ("D", "F"), ("C", "K"), ("D", "G"), ("E", "H"),
           ("F", "K"), ("F", "J"), ("G", "K"), ("G", "L"), ("H", "I"), ("H", "J"),
           ("I", "L"), ("I", "M"), ("J", "M"), ("K", TOP), ("L", TOP), ("M", TOP)]
    return from_covers(els, cov)


def diamond() -> FiniteLattice:
    """M3: bottom, three pairwise incomparable atoms a, b, c, top."""
    p = from_covers([BOT, "a", "b", "c", TOP],
                    [(BOT, x) for x in "abc"] + [(x, TOP) for x in "abc"])
    return lattice_from_poset(p)


def pentagon() -> FiniteLattice:
    """N5: bottom < a < b < top, bottom < c < top."""
    p = from_covers([BOT, "a", "b", "c", TOP],
                    [(BOT, "a"), ("a", "b"), ("b", TOP), (BOT, "c"), ("c", TOP)])
    return lattice_from_poset(p)


def divisors_of_24() -> FinitePoset:
    return divisibility_poset(24)
