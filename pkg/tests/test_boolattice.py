import itertools
import random

import pytest

from finfound import boolattice as ba
from finfound.errors import InputError
from finfound.fixtures import BOT, TOP, diamond, pentagon, twelve_element_no_join
from finfound.generators import boolean_algebras, random_poset
from finfound.order import antichain_poset, chain_poset, down_set_lattice, from_covers

P = frozenset


def subsets(xs):
    xs = list(xs)
    for bits in itertools.product((0, 1), repeat=len(xs)):
        yield P(x for x, b in zip(xs, bits) if b)


# --- definitional oracles ------------------------------------------------

def o_ideal(l, s, dual=False):
    L = set(l.elements)
    if not s or s == L:
        return False
    le = (lambda a, b: l.le(b, a)) if dual else l.le
    op = l.meet if dual else l.join
    return (all(y in s for x in s for y in L if le(y, x))
            and all(op(x, y) in s for x in s for y in s))


def o_prime(l, s, dual=False):
    op = l.join if dual else l.meet
    return all(a in s or b in s for a in l.elements for b in l.elements if op(a, b) in s)


def o_all(l, dual=False):
    return [s for s in subsets(l.elements) if o_ideal(l, s, dual)]


def o_maximal(l, s, dual=False):
    return not any(s < t for t in o_all(l, dual))


def distributive_lattices():
    out = [ba.divisor_lattice(n) for n in (1, 2, 6, 12, 24, 30, 36)]
    out += [ba.chain_lattice(range(k)) for k in (1, 2, 3, 5)]
    out += [ba.powerset_algebra(range(k)).lattice for k in range(4)]
    rng = random.Random(8)
    for _ in range(8):
        lat, _ = down_set_lattice(random_poset(rng, rng.randint(1, 4)))
        out.append(ba.lattice_from_poset(lat.poset))
    return [l for l in out if len(l) <= 12]


def small_lattices():
    return distributive_lattices() + [diamond(), pentagon()]


# --- structure -------------------------------------------------------------

def test_powerset_lattice_ops():
    b = ba.powerset_algebra([1, 2])
    for x, y in itertools.product(b.elements, repeat=2):
        assert b.meet(x, y) == x & y and b.join(x, y) == x | y
    lat = ba.lattice_from_poset(b.poset)
    assert lat.meet_t == b.lattice.meet_t and lat.join_t == b.lattice.join_t


def test_missing_join_named():
    with pytest.raises(ba.NotALattice) as e:
        ba.lattice_from_poset(twelve_element_no_join())
    assert ("B", "C", "join") in e.value.failures
    # A and C also lack a join (E and I are both minimal upper bounds)
    assert e.value.pair == ("A", "C")


def test_unbounded_rejected():
    with pytest.raises(ba.NotALattice):
        ba.lattice_from_poset(antichain_poset("ab"))


def test_one_element_lattice():
    l = ba.lattice_from_poset(chain_poset(["x"]))
    assert l.bottom == l.top == "x"


def test_distributivity():
    assert ba.is_distributive(diamond()) == (False, ("a", "b", "c"))
    assert not ba.is_distributive(pentagon())[0]
    for k in range(4):
        assert ba.is_distributive(ba.powerset_algebra(range(k)).lattice)[0]
    assert ba.is_distributive(ba.chain_lattice(range(5)))[0]


def test_diamond_dual_law_fails_on_witness():
    d = diamond()
    a, b, c = "a", "b", "c"
    assert d.join(d.meet(a, b), c) == c
    assert d.meet(d.join(a, c), d.join(b, c)) == TOP


def test_boolean_structure():
    b = ba.boolean_structure(ba.powerset_algebra([1, 2, 3]).lattice)
    for x in b.elements:
        assert b.neg(x) == P({1, 2, 3}) - x
    with pytest.raises(ba.NotBoolean) as e:
        ba.boolean_structure(ba.chain_lattice([0, 1, 2]))
    assert e.value.witness == 1
    two = ba.boolean_structure(ba.chain_lattice([0, 1]))
    assert two.neg(0) == 1 and two.neg(1) == 0
    with pytest.raises(ba.NotBoolean):
        ba.boolean_structure(diamond())


# --- ideals and filters ------------------------------------------------------

def test_divisor_examples():
    l = ba.divisor_lattice(24)
    assert ba.classify_subset(l, {1, 2, 3, 6}).is_ideal
    c = ba.classify_subset(l, {1, 2, 3, 4, 6})
    assert not c.is_ideal and not c.is_filter


def test_diamond_maximal_filters_not_prime():
    d = diamond()
    for x in "abc":
        c = ba.classify_subset(d, {TOP, x})
        assert c.is_filter and c.is_maximal and not c.is_prime


def test_classify_against_oracle():
    for l in small_lattices():
        for s in subsets(l.elements):
            c = ba.classify_subset(l, s)
            assert c.is_ideal == o_ideal(l, s)
            assert c.is_filter == o_ideal(l, s, dual=True)
            if c.is_ideal or c.is_filter:
                dual = c.is_filter
                assert c.is_prime == o_prime(l, s, dual)
                assert c.is_maximal == o_maximal(l, s, dual)


def test_all_filters_and_ideals_match_oracle():
    for l in small_lattices():
        assert set(ba.all_filters(l)) == set(o_all(l, dual=True))
        assert set(ba.all_ideals(l)) == set(o_all(l))


def test_maximal_filters_prime_in_distributive():
    for l in distributive_lattices():
        for f in ba.all_filters(l):
            c = ba.classify_subset(l, f)
            if c.is_maximal:
                assert c.is_prime


def test_prime_filter_iff_complement_prime_ideal():
    for l in small_lattices():
        full = P(l.elements)
        for s in subsets(l.elements):
            c = ba.classify_subset(l, s)
            d = ba.classify_subset(l, full - s)
            assert (c.is_filter and c.is_prime) == (d.is_ideal and d.is_prime)


def test_generate_filter_examples():
    b = ba.powerset_algebra([1, 2, 3])
    assert ba.generate_filter(b, [P({1, 2, 3})]) == {P({1, 2, 3})}
    f = ba.generate_filter(b, [P({1, 2}), P({2, 3})])
    assert f == {P({2}), P({1, 2}), P({2, 3}), P({1, 2, 3})}
    with pytest.raises(ba.NotAFilterBase):
        ba.generate_filter(b, [P({1}), P({2})])
    with pytest.raises(InputError):
        ba.generate_filter(b, [])


def test_generate_filter_is_smallest():
    rng = random.Random(1)
    for l in small_lattices():
        filters = o_all(l, dual=True)
        for _ in range(10):
            base = rng.sample(l.elements, rng.randint(1, min(3, len(l))))
            above = [f for f in filters if set(base) <= f]
            if not above:
                with pytest.raises(ba.NotAFilterBase):
                    ba.generate_filter(l, base)
                continue
            smallest = P(l.elements).intersection(*above)
            assert ba.generate_filter(l, base) == smallest


def test_generate_ideal():
    l = ba.divisor_lattice(24)
    assert ba.generate_ideal(l, [2, 3]) == {1, 2, 3, 6}


def test_ultrafilter_examples():
    b = ba.powerset_algebra([1, 2])
    us = ba.ultrafilters(b)
    assert us == [P(s for s in b.elements if 1 in s), P(s for s in b.elements if 2 in s)]
    two = ba.boolean_structure(ba.chain_lattice([0, 1]))
    assert ba.ultrafilters(two) == [{1}]
    assert len(ba.ultrafilters(ba.powerset_algebra([1, 2, 3]))) == 3


def test_ultrafilter_dichotomy_and_count():
    for b in boolean_algebras(4):
        us = ba.ultrafilters(b)
        assert len(us) == len(b.atoms())
        for u in us:
            for a in b.elements:
                assert (a in u) != (b.neg(a) in u)


def test_every_filter_in_an_ultrafilter():
    for b in boolean_algebras(4):
        us = ba.ultrafilters(b)
        for f in ba.all_filters(b):
            assert any(f <= u for u in us)


# --- symmetric difference and quotients ---------------------------------------

def test_symm_diff_examples():
    b = ba.powerset_algebra([1, 2, 3])
    for x in b.elements:
        assert ba.symm_diff(b, x, x) == P()
        assert ba.symm_diff(b, x, P()) == x
        for y in b.elements:
            assert ba.symm_diff(b, x, y) == (x | y) - (x & y)


def test_ring_laws():
    for b in boolean_algebras(4):
        d = lambda x, y: ba.symm_diff(b, x, y)
        for x, y, z in itertools.product(b.elements, repeat=3):
            assert d(x, d(y, z)) == d(d(x, y), z)
            assert b.meet(x, d(y, z)) == d(b.meet(x, y), b.meet(x, z))
        for x, y in itertools.product(b.elements, repeat=2):
            assert d(x, y) == d(y, x)
        for x in b.elements:
            assert d(x, b.bottom) == x and d(x, x) == b.bottom
            assert b.meet(x, b.top) == x and b.meet(x, x) == x


def test_quotient_trivial_ideal():
    b = ba.powerset_algebra([1, 2])
    q = ba.quotient(b, [P()])
    assert len(q) == 4 and q.elements == b.elements


def test_quotient_by_maximal_ideal():
    b = ba.powerset_algebra([1, 2, 3])
    ideal = list(subsets([2, 3]))
    q = ba.quotient(b, ideal)
    assert len(q) == 2


def test_quotient_rejects_non_ideal():
    b = ba.powerset_algebra([1, 2])
    with pytest.raises(ba.NotAnIdeal):
        ba.quotient(b, [P({1})])


def test_quotient_properties():
    for b in boolean_algebras(3):
        for I in ba.all_ideals(b):
            q = ba.quotient(b, I)
            c = ba.classify_subset(b, I)
            if c.is_prime:
                assert len(q) == 2
            for x in b.elements:
                assert (x in I) == (q.project(x) == q.project(b.bottom))
                assert q.project(b.neg(x)) == q.neg(q.project(x))
                for y in b.elements:
                    assert q.project(b.meet(x, y)) == q.meet(q.project(x), q.project(y))
                    assert q.project(b.join(x, y)) == q.join(q.project(x), q.project(y))


# --- prime ideals -------------------------------------------------------------

def test_extend_trivial_ideal_tiebreak():
    b = ba.powerset_algebra([1, 2])
    assert ba.extend_to_prime_ideal(b, [P()]) == {P(), P({2})}


def test_extend_prime_is_identity():
    b = ba.powerset_algebra([1, 2, 3])
    for J in ba.prime_ideals(b):
        assert ba.extend_to_prime_ideal(b, J) == J


def test_extend_random():
    for b in boolean_algebras(4):
        for I in ba.all_ideals(b):
            K = ba.extend_to_prime_ideal(b, I)
            c = ba.classify_subset(b, K)
            assert c.is_ideal and c.is_prime and K >= I


def test_separating_example():
    b = ba.powerset_algebra([1, 2])
    K = ba.separating_prime_ideal(b, P({1}), P({1, 2}))
    assert P({1}) in K and P({1, 2}) not in K
    K = ba.separating_prime_ideal(b, P(), P({1, 2}))
    assert P() in K and P({1, 2}) not in K
    with pytest.raises(InputError):
        ba.separating_prime_ideal(b, P(), P())


def test_separating_exhaustive():
    for b in boolean_algebras(4):
        for x, y in itertools.permutations(b.elements, 2):
            K = ba.separating_prime_ideal(b, x, y)
            c = ba.classify_subset(b, K)
            assert c.is_ideal and c.is_prime
            assert (x in K) != (y in K)


# --- Stone ----------------------------------------------------------------------

def test_stone_two_element():
    two = ba.boolean_structure(ba.chain_lattice([0, 1]))
    st = ba.stone_representation(two)
    assert st.algebra.points == (0,)
    assert st.psi[1] == {0} and st.psi[0] == P()


def test_stone_powerset_relabels_points():
    b = ba.powerset_algebra([1, 2, 3])
    st = ba.stone_representation(b)
    # ultrafilter i is the point filter at the (i+1)-th point
    for x in b.elements:
        assert st.psi[x] == {i for i, p in enumerate([1, 2, 3]) if p in x}


def test_stone_abstract_four():
    els = ["bot", "a", "na", "top"]
    order = from_covers(els, [("bot", "a"), ("bot", "na"), ("a", "top"), ("na", "top")])
    b = ba.boolean_structure(ba.lattice_from_poset(order))
    st = ba.stone_representation(b)
    assert len(st.algebra.points) == 2
    assert len(st.psi["a"]) == 1 and st.psi["na"] == P(st.algebra.points) - st.psi["a"]


def test_stone_all_small():
    for b in boolean_algebras(4):
        st = ba.stone_representation(b)
        assert len(st.ultrafilters) == len(b.atoms())
        assert len(st.algebra.sets) == len(b)


def test_tables_round_trip():
    b = ba.powerset_algebra("xy")
    meet, join, neg = ba.tables(b)
    c = ba.boolean_algebra_from_tables(b.elements, meet, join, neg)
    assert c.lattice.meet_t == b.lattice.meet_t
    bad = dict(neg)
    bad[P()] = P()
    with pytest.raises(InputError):
        ba.boolean_algebra_from_tables(b.elements, meet, join, bad)


def test_distribute_over_join():
    b = ba.powerset_algebra([1, 2, 3, 4])
    a = P({1, 2})
    assert ba.distribute_over_join(b, P({2, 3}), [a]) == (P({2}), P({2}))
    fam = [P({1}), P({3, 4})]
    assert ba.distribute_over_join(b, P({1, 2, 3, 4}), fam) == (P({1, 3, 4}),) * 2
    rng = random.Random(0)
    for _ in range(300):
        x = rng.choice(b.elements)
        fam = rng.sample(b.elements, rng.randint(1, 5))
        left, right = ba.distribute_over_join(b, x, fam)
        assert left == right
    with pytest.raises(InputError):
        ba.distribute_over_join(b, x, [])
