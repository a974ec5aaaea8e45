import math
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symorb.permgroup import (
    CycleType,
    DegreeMismatch,
    Permutation,
    centralizer_order,
    chen_ruan_degree,
    compose,
    conjugacy_pair_representatives,
    conjugate,
    cycle_type,
    excess_euler_degree,
    orbit_count,
    orbit_structure,
    partitions,
    rank_cocycle_sides,
    symmetric_group,
)


def P(text):
    return Permutation.parse(text)


def cyc(n, *cycles):
    return Permutation.from_cycles(n, cycles)


@st.composite
def perms(draw, n):
    return Permutation(tuple(draw(st.permutations(range(n)))))


def test_parse_and_word_round_trip():
    p = P("2,3,1")
    assert p.images == (1, 2, 0)
    assert p.word() == "2,3,1"
    assert p.cycle_notation() == "(1 2 3)"


@pytest.mark.parametrize("bad", ["1,1", "0,1", "2,3", ""])
def test_parse_rejects_non_bijections(bad):
    with pytest.raises(ValueError):
        P(bad)


def test_compose_involution_and_unit():
    t = cyc(2, (1, 2))
    assert compose(t, t).is_identity()
    p = P("3,1,2")
    assert compose(p, Permutation.identity(3)) == p
    assert compose(Permutation.identity(3), p) == p


def test_compose_applies_left_factor_first():
    # (12).(13): 1 -> 2 -> 2, 2 -> 1 -> 3, 3 -> 3 -> 1
    p = compose(cyc(3, (1, 2)), cyc(3, (1, 3)))
    assert [p(i) + 1 for i in range(3)] == [2, 3, 1]
    assert p.cycle_notation() == "(1 2 3)"


def test_compose_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        compose(Permutation.identity(2), Permutation.identity(3))


def test_conjugate_maps_cycles_by_h():
    h = P("2,3,1")
    tau = cyc(3, (1, 2))
    c = conjugate(h, tau)
    assert c == compose(compose(h.inverse(), tau), h)
    # orbits of h^-1 tau h are h applied to the orbits of tau
    assert sorted(map(sorted, c.cycles())) == sorted(sorted(h(i) for i in o) for o in tau.cycles())


def test_cycle_type_examples():
    assert cycle_type(Permutation.identity(3)) == CycleType.parse("1^3")
    assert cycle_type(cyc(3, (1, 2))) == CycleType.parse("2^1 1^1")
    assert cycle_type(cyc(6, (2, 4, 5, 6))) == CycleType.parse("4^1 1^2")
    assert str(CycleType.parse("2^1 1^1")) == "2^1 1^1"


def test_partitions_counts_and_order():
    assert [len(partitions(n)) for n in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]
    assert partitions(0) == [CycleType((), 0)]
    assert [str(p) for p in partitions(4)] == ["4^1", "3^1 1^1", "2^2", "2^1 1^2", "1^4"]


def test_centralizer_orders():
    assert centralizer_order(CycleType.parse("2^1 1^1")) == 2
    assert centralizer_order(CycleType.parse("1^5")) == 120
    assert centralizer_order(CycleType.parse("3^1")) == 3


@pytest.mark.parametrize("n", range(0, 9))
def test_class_equation(n):
    assert sum(math.factorial(n) // centralizer_order(ct) for ct in partitions(n)) == math.factorial(n)


@pytest.mark.parametrize("n", range(1, 6))
def test_cycle_type_is_complete_conjugacy_invariant(n):
    group = symmetric_group(n)
    for p in group:
        orbit = {conjugate(h, p) for h in group}
        assert orbit == {q for q in group if cycle_type(q) == cycle_type(p)}


@pytest.mark.parametrize("n", range(1, 6))
def test_class_sizes_match_centralizers(n):
    group = symmetric_group(n)
    for ct in partitions(n):
        size = sum(1 for p in group if cycle_type(p) == ct)
        assert size == math.factorial(n) // centralizer_order(ct)
        assert cycle_type(ct.representative()) == ct


def test_orbit_structure_examples():
    assert orbit_structure([cyc(3, (1, 2)), cyc(3, (1, 3))]).orbit_count == 1
    assert orbit_structure([], 5).orbit_count == 5
    s = orbit_structure([cyc(4, (1, 2))])
    assert s.orbit_count == 3
    assert s.orbits() == [(0, 1), (2,), (3,)]
    assert s.orbit_sizes == (2, 1, 1)


def test_orbit_structure_needs_degree_for_trivial_group():
    with pytest.raises(ValueError):
        orbit_structure([])
    with pytest.raises(DegreeMismatch):
        orbit_structure([Permutation.identity(2), Permutation.identity(3)])


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_orbit_structure_order_invariant_and_equivariant(data):
    n = data.draw(st.integers(1, 7))
    a, b, k = (data.draw(perms(n)) for _ in range(3))
    assert orbit_structure([a, b]) == orbit_structure([b, a])
    assert orbit_count(conjugate(k, a), conjugate(k, b)) == orbit_count(a, b)
    s = orbit_structure([a, b])
    assert sum(s.orbit_sizes) == n
    assert s.orbit_count == orbit_count(a, b) == len(set(s.orbit_assignment))


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_coarsening(data):
    n = data.draw(st.integers(1, 7))
    a, b = data.draw(perms(n)), data.draw(perms(n))
    joint, single = orbit_structure([a, b]), orbit_structure([a])
    assert joint.coarsens(single)
    fmap = joint.coarsening_map(single)
    for o, orbit in enumerate(single.orbits()):
        assert all(joint.orbit_assignment[i] == fmap[o] for i in orbit)
    # the product generates a subgroup, so its orbits are finer
    assert joint.coarsens(orbit_structure([compose(a, b)]))


def test_degree_examples():
    t = cyc(2, (1, 2))
    assert excess_euler_degree(t, t, 2) == 2
    assert chen_ruan_degree(t, t, 2) == 0
    e = Permutation.identity(4)
    assert excess_euler_degree(e, e, 3) == 0
    assert chen_ruan_degree(e, e, 2) == 0
    a, b = cyc(3, (1, 2)), cyc(3, (1, 3))
    assert excess_euler_degree(a, b, 2) == 0
    assert chen_ruan_degree(a, b, 2) == 0


def test_degree_errors():
    t = cyc(2, (1, 2))
    with pytest.raises(ValueError):
        chen_ruan_degree(t, t, 3)
    with pytest.raises(DegreeMismatch):
        excess_euler_degree(t, Permutation.identity(3), 2)


@pytest.mark.parametrize("n", range(1, 5))
def test_degree_gap_identity(n):
    for tau, sigma in product(symmetric_group(n), repeat=2):
        gap = excess_euler_degree(tau, sigma, 4) - 2 * chen_ruan_degree(tau, sigma, 4)
        assert gap == 4 * (orbit_count(compose(tau, sigma)) - orbit_count(tau, sigma)) >= 0


@pytest.mark.parametrize("n", range(1, 5))
def test_pair_representatives_cover_all_orbits(n):
    group = symmetric_group(n)
    reps = conjugacy_pair_representatives(n)
    covered = set()
    for tau, sigma in reps:
        orbit = {(conjugate(h, tau), conjugate(h, sigma)) for h in group}
        assert not orbit & covered
        covered |= orbit
    assert len(covered) == len(group) ** 2


def test_rank_cocycle_small():
    for g, h, k in product(symmetric_group(3), repeat=3):
        left, right = rank_cocycle_sides(g, h, k)
        assert left == right >= 0
