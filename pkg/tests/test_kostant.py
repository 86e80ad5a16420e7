import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from gelfand_mvop.kostant import (
    PartitionError,
    VectorMultiset,
    f4_multiset_A,
    f4_multiset_B,
    lattice_box_count,
    partition_f4_A_closed,
    partition_f4_B_closed,
    partition_generic,
    partition_spin7_closed,
)
from gelfand_mvop.pairs import get_pair


def brute_force(vectors, v, witness):
    """Enumerate coefficient tuples bounded through the witness."""
    hv = sum(a * b for a, b in zip(witness, v))
    if hv < 0:
        return 0
    bounds = [hv // sum(a * b for a, b in zip(witness, u)) for u in vectors]
    count = 0
    for ks in itertools.product(*(range(b + 1) for b in bounds)):
        s = [sum(k * u[i] for k, u in zip(ks, vectors)) for i in range(len(v))]
        count += s == list(v)
    return count


SPIN7 = get_pair("spin7-g2")
E1, E2, E3 = (SPIN7.q(v) for v in ((2, 0, 0), (0, 2, 0), (0, 0, 2)))


def comb(*terms):
    out = [0, 0, 0]
    for c, v in terms:
        out = [x + c * y for x, y in zip(out, v)]
    return tuple(out)


def test_spin7_set_is_A():
    assert sorted(SPIN7.A.vectors) == sorted([E1, E2, E3])


def test_generic_examples():
    A = VectorMultiset([E1, E2, E3])
    assert partition_generic(A, comb((2, E1), (1, E2))) == 3
    assert partition_generic(A, (0, 0, 0)) == 1
    assert partition_generic(f4_multiset_A(), (2, 0, 0, 0)) == 4


def test_spin7_closed_examples():
    assert partition_spin7_closed(comb((3, E1), (2, E2))) == 4
    assert partition_spin7_closed(E2) == 1
    assert partition_spin7_closed(comb((-1, E1))) == 0


def test_spin7_closed_matches_generic():
    A = SPIN7.A
    for x, y in itertools.product(range(-6, 7), repeat=2):
        v = comb((x, E2), (y, E3))
        assert partition_spin7_closed(v) == A.count(v)


def test_f4_A_examples():
    assert partition_f4_A_closed((2, 0, 0, 0)) == 4
    assert partition_f4_A_closed((0, 0, 0, 0)) == 1
    assert partition_f4_A_closed((2, 4, 0, 0)) == 0


def test_box_count_examples():
    assert lattice_box_count((1, 1, 1, 1), 2) == 6
    assert lattice_box_count((0, 0, 0, 0), 0) == 1
    assert lattice_box_count((2, 1, 0, 3), 7) == 0


def test_f4_B_examples():
    assert partition_f4_B_closed((0, 0, 0, 0)) == 1
    B = f4_multiset_B()
    v = (2, 2, 0, 0)
    assert partition_f4_B_closed(v) == B.count(v) > 0
    assert partition_f4_B_closed((2, 0, 0, 4)) == 0


def _f4_points(r):
    """F4 lattice points (scaled) with all doubled coordinates in [-r, r]."""
    for v in itertools.product(range(-r, r + 1), repeat=4):
        if len({x % 2 for x in v}) == 1:
            yield v


def test_f4_closed_forms_match_generic_small():
    A, B = f4_multiset_A(), f4_multiset_B()
    for v in _f4_points(6):
        assert partition_f4_A_closed(v) == A.count(v)
        assert partition_f4_B_closed(v) == B.count(v)


def test_f4_supports():
    for v in _f4_points(6):
        L1, L2, L3, L4 = v
        a_in = abs(L2) <= L1 and abs(L3) <= L1 and abs(L4) <= L1
        assert (partition_f4_A_closed(v) > 0) == a_in
        b_in = L1 + L2 >= 0 and L1 + L3 >= 0 and L2 + L3 >= 0 and abs(L4) <= L1 + L2 + L3
        assert (partition_f4_B_closed(v) > 0) == b_in


def test_f4_brute_force_oracle():
    A = f4_multiset_A()
    for v in [(2, 0, 0, 0), (4, 2, 0, 0), (3, 1, 1, 1), (4, 0, 2, -2)]:
        assert A.count(v) == brute_force(A.vectors, v, A.witness)


def test_witness_rejected():
    with pytest.raises(PartitionError):
        VectorMultiset([(1, 0), (-1, 0)])
    with pytest.raises(PartitionError):
        VectorMultiset([(1, 0)], witness=(0, 1))
    with pytest.raises(PartitionError):
        VectorMultiset([])


vec2 = st.tuples(st.integers(-2, 2), st.integers(1, 3))


@settings(max_examples=60, deadline=None)
@given(vs=st.lists(vec2, min_size=1, max_size=5), target=st.tuples(st.integers(-5, 5), st.integers(0, 8)))
def test_generic_matches_brute_force_and_ignores_order(vs, target):
    A = VectorMultiset(vs, witness=(0, 1))
    shuffled = list(vs)
    random.Random(len(vs)).shuffle(shuffled)
    B = VectorMultiset(list(reversed(shuffled)), witness=(0, 1))
    expected = brute_force(vs, target, (0, 1))
    assert A.count(target) == expected == B.count(target)


@settings(max_examples=80, deadline=None)
@given(m=st.lists(st.integers(0, 4), min_size=4, max_size=4), s=st.integers(-2, 18))
def test_box_count_by_enumeration(m, s):
    brute = sum(1 for t in itertools.product(*(range(x + 1) for x in m)) if sum(t) == s)
    assert lattice_box_count(tuple(m), s) == brute
