from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gelfand_mvop.rootsys import LatticeError, build_root_system

TYPES = ["A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"]
POS = {"A2": 3, "A3": 6, "B2": 4, "B3": 9, "C3": 9, "D4": 12, "G2": 6, "F4": 24}
ORDER = {"A2": 6, "A3": 24, "B2": 8, "B3": 48, "C3": 48, "D4": 192, "G2": 12, "F4": 1152}


@pytest.fixture(scope="module", params=TYPES)
def R(request):
    return build_root_system(request.param)


def test_positive_root_count(R):
    assert len(R.positive_roots) == POS[R.label]


def test_weyl_order(R):
    assert len(R.weyl_group) == ORDER[R.label]


def test_weyl_order_by_orbit_stabilizer(R):
    # rho is regular, so its orbit is a regular W-orbit
    assert len(R.orbit(R.rho)) == ORDER[R.label]


def test_fundamental_weights_dual_to_coroots(R):
    for i, w in enumerate(R.fundamental_weights):
        for j in range(R.rank):
            assert R.pairing(w, j) == (i == j)


def test_rho_is_half_sum_and_sum_of_fundamentals(R):
    half = [sum(a[i] for a in R.positive_roots) for i in range(R.dim)]
    assert tuple(Fraction(x, 2) for x in half) == R.rho
    if not R.gl:
        total = [sum(w[i] for w in R.fundamental_weights) for i in range(R.dim)]
        assert tuple(total) == R.rho


def test_weyl_elements_orthogonal_with_sign(R):
    W = R.weyl_group
    for g in W.elements[:: max(1, len(W) // 50)]:
        m = g.matrix
        n = len(m)
        for i in range(n):
            for j in range(n):
                assert sum(m[i][k] * m[j][k] for k in range(n)) == (i == j)
        assert g.det in (1, -1)


def test_weyl_order_is_lexicographic(R):
    mats = [g.matrix for g in R.weyl_group.elements]
    assert mats == sorted(mats)


def test_g2_long_and_short():
    G = build_root_system("G2")
    lengths = sorted(sum(x * x for x in a) for a in G.positive_roots)
    assert lengths[:3] == [lengths[0]] * 3 and lengths[3:] == [3 * lengths[0]] * 3


def test_b3_fundamental_weights():
    B = build_root_system("B3")
    assert [B.to_epsilon(w) for w in B.fundamental_weights] == [
        (1, 0, 0), (1, 1, 0), (Fraction(1, 2),) * 3,
    ]


def test_f4_first_fundamental_is_e1():
    F = build_root_system("F4")
    assert F.to_epsilon(F.fundamental_weights[0]) == (1, 0, 0, 0)


def test_dominance_examples():
    C = build_root_system("C3")
    assert C.is_dominant(C.from_epsilon((1, 0, 0)))
    assert not C.is_dominant(C.from_epsilon((0, 1, 0)))
    G = build_root_system("G2")
    assert G.is_dominant(G.from_fundamental((1, 1)))
    with pytest.raises(LatticeError):
        G.is_dominant((0, 0))


def test_coords_examples():
    B = build_root_system("B3")
    assert B.coords_convert((0, 0, 1), "epsilon") == (Fraction(1, 2),) * 3
    rho = B.from_epsilon((Fraction(5, 2), Fraction(3, 2), Fraction(1, 2)))
    assert rho == B.rho and B.coords_convert(rho, "fundamental") == (1, 1, 1)
    G = build_root_system("G2")
    a1, a2 = G.simple_roots
    assert G.fundamental_weights[0] == tuple(2 * x + y for x, y in zip(a1, a2))
    with pytest.raises(LatticeError):
        B.to_fundamental((1, 0, 0))


def test_weyl_dim_examples():
    assert build_root_system("B3").weyl_dim(build_root_system("B3").fundamental_weights[2]) == 8
    F = build_root_system("F4")
    assert [F.weyl_dim(w) for w in F.fundamental_weights] == [26, 273, 1274, 52]
    for t in TYPES:
        R = build_root_system(t)
        assert R.weyl_dim((0,) * R.dim) == 1


def test_weight_multiplicity_examples():
    G = build_root_system("G2")
    ch = G.weight_multiplicities(G.fundamental_weights[0])
    short = [a for a in G.positive_roots if sum(x * x for x in a) == min(sum(y * y for y in b) for b in G.positive_roots)]
    assert len(ch) == 7 and ch[(0, 0, 0)] == 1
    assert all(ch[a] == 1 and ch[tuple(-x for x in a)] == 1 for a in short)
    F = build_root_system("F4")
    ch = F.weight_multiplicities(F.fundamental_weights[0])
    assert ch[(0, 0, 0, 0)] == 2 and len(ch) == 25 and sum(ch.values()) == 26
    B = build_root_system("B3")
    ch = B.weight_multiplicities(B.fundamental_weights[2])
    assert sorted(ch) == sorted((x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1))
    assert set(ch.values()) == {1}


def test_dominance_order_examples():
    G = build_root_system("G2")
    assert G.dominance_leq((0, 0, 0), G.fundamental_weights[0])
    B = build_root_system("B3")
    assert not B.dominance_leq(B.fundamental_weights[0], B.fundamental_weights[2])


def test_word_matches_reflections():
    F = build_root_system("F4")
    m = F.word(1, 2)
    v = F.rho
    expected = F.reflect(F.reflect(v, 1), 0)
    got = tuple(int(sum(c * x for c, x in zip(row, v))) for row in m)
    assert got == expected
    assert F.to_epsilon(got) == tuple(Fraction(x, 2) for x in (9, 7, 5, 1))


labels = st.lists(st.integers(0, 3), min_size=4, max_size=4)


@pytest.mark.parametrize("t", ["A3", "B3", "C3", "G2", "D4"])
@settings(max_examples=25, deadline=None)
@given(lab=labels)
def test_freudenthal_sums_to_weyl_dim_and_is_invariant(t, lab):
    R = build_root_system(t)
    lam = R.from_fundamental(tuple(lab[: R.rank]))
    if R.weyl_dim(lam) > 10**4:
        return
    ch = R.weight_multiplicities(lam)
    assert sum(ch.values()) == R.weyl_dim(lam)
    for i in range(R.rank):
        for nu, m in ch.items():
            assert ch[R.reflect(nu, i)] == m


@pytest.mark.parametrize("t", TYPES)
@settings(max_examples=40, deadline=None)
@given(lab=st.lists(st.integers(-6, 6), min_size=4, max_size=4))
def test_coords_round_trip(t, lab):
    R = build_root_system(t)
    lab = tuple(lab[: R.rank])
    v = R.from_fundamental(lab)
    assert R.coords_convert(v, "fundamental") == lab
    assert R.from_epsilon(R.coords_convert(lab, "epsilon")) == v


@pytest.mark.parametrize("t", ["B3", "G2", "C3"])
@settings(max_examples=60, deadline=None)
@given(a=labels, b=labels, c=labels)
def test_dominance_is_a_partial_order(t, a, b, c):
    R = build_root_system(t)
    x, y, z = (R.from_fundamental(tuple(v[: R.rank])) for v in (a, b, c))
    assert R.dominance_leq(x, x)
    if R.dominance_leq(x, y) and R.dominance_leq(y, x):
        assert x == y
    if R.dominance_leq(x, y) and R.dominance_leq(y, z):
        assert R.dominance_leq(x, z)


@settings(max_examples=40, deadline=None)
@given(lab=st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_to_dominant_lands_in_orbit(lab):
    R = build_root_system("B3")
    v = R.from_fundamental(tuple(lab))
    d, sign = R.to_dominant(v)
    assert R.is_dominant(d) and d in R.orbit(v) and sign in (1, -1)


def test_unsupported_label():
    with pytest.raises(ValueError):
        build_root_system("E8")
