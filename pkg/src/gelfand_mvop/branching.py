"""Branching multiplicities from G to K (and from K to M).

Three independent routes:

* ``branch_kostant``: the alternating Weyl group sum of partition values
  m(lam, mu) = sum_w det(w) p_A(q(w(lam + rho_G)) - q(rho_G) - mu);
* closed forms specific to each exceptional or symplectic pair;
* ``branch_oracle``: restrict the full weight system and peel off
  K-characters from the top, with no partition functions involved.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .kostant import (
    VectorMultiset,
    partition_f4_A_closed,
    partition_f4_B_closed,
    partition_spin7_closed,
)
from .pairs import Restriction, get_pair
from .rootsys import DEFAULT_DIM_CAP, add, dot, sub


class OracleError(RuntimeError):
    """The peeling oracle hit a negative residual."""


class FaceError(ValueError):
    """A K-type is not on a face where the closed form applies."""


@dataclass
class BranchingTable:
    pair: str
    lam: tuple
    entries: dict

    def dimension_defect(self, big, small):
        """dim V(lam) minus the dimension accounted for by the entries."""
        total = sum(m * small.weyl_dim(mu) for mu, m in self.entries.items())
        return big.weyl_dim(self.lam) - total

    def sorted_entries(self):
        return sorted(self.entries.items())


def _as_pair(pair):
    return get_pair(pair) if isinstance(pair, str) else pair


# -- generic Kostant-type sum --------------------------------------------------

def _restricted_images(pair, lam):
    G = pair.G
    imgs = G.weyl_group.apply_all(add(lam, G.rho))
    Q = np.array(pair.q.num, dtype=np.int64)
    out = imgs @ Q.T
    if pair.q.den != 1:
        assert not np.any(out % pair.q.den)
        out //= pair.q.den
    return out


def branch_kostant(pair, lam, mu):
    """Alternating W_G-sum of partition values; valid for non-dominant arguments too."""
    pair = _as_pair(pair)
    target = np.array(add(pair.q_rho, mu), dtype=np.int64)
    V = _restricted_images(pair, lam) - target
    h = np.array(pair.A.witness, dtype=np.int64)
    keep = np.nonzero(V @ h >= 0)[0]
    dets = pair.G.weyl_group.dets
    total = 0
    for i in keep:
        c = pair.A.count(tuple(int(x) for x in V[i]))
        if c:
            total += int(dets[i]) * c
    return total


def _shifted_dominant(R, v):
    """(dominant rep of v + rho, minus rho; sign), or None when v + rho is singular."""
    d, sign = R.to_dominant(add(v, R.rho))
    if any(dot(d, a) == 0 for a in R.simple_roots):
        return None
    return sub(d, R.rho), sign


def branch_extended(pair, lam, mu):
    """m(lam, mu) for arbitrary lattice points through the dot action on both sides."""
    pair = _as_pair(pair)
    g = _shifted_dominant(pair.G, tuple(lam))
    k = _shifted_dominant(pair.K, tuple(mu))
    if g is None or k is None:
        return 0
    return g[1] * k[1] * branch_kostant(pair, g[0], k[0])


def kostant_table(pair, lam, mus):
    pair = _as_pair(pair)
    return BranchingTable(pair.name, tuple(lam), {
        tuple(mu): m for mu in mus if (m := branch_kostant(pair, lam, mu))
    })


# -- peeling oracle ------------------------------------------------------------

def restricted_dominant_weights(restr, lam, cap=DEFAULT_DIM_CAP):
    """Weights of V(lam) restricted to the small group, kept when small-dominant."""
    big, small, f = restr.big, restr.small, restr.map
    out = {}
    if f.is_identity() and big.dim == small.dim:
        for mu, m in big.dominant_character(lam, cap).items():
            for nu in big.orbit(mu):
                if small.is_dominant(nu):
                    out[nu] = out.get(nu, 0) + m
    else:
        for nu, m in big.weight_multiplicities(lam, cap).items():
            v = f(nu)
            if small.is_dominant(v):
                out[v] = out.get(v, 0) + m
    return out


def peel(small, residual, cap=DEFAULT_DIM_CAP):
    """Greedy decomposition of a small-dominant weight multiset into characters."""
    residual = dict(residual)
    entries = {}
    while residual:
        top = max(residual, key=lambda v: (small.height(v), v))
        m = residual[top]
        if m < 0:
            raise OracleError(f"negative residual {m} at {top} for {small.label}")
        entries[top] = m
        for nu, c in small.dominant_character(top, cap).items():
            r = residual.get(nu, 0) - m * c
            if r:
                residual[nu] = r
            else:
                residual.pop(nu, None)
    return entries


def branch_restriction(restr, lam, cap=DEFAULT_DIM_CAP, name=""):
    entries = peel(restr.small, restricted_dominant_weights(restr, lam, cap), cap)
    return BranchingTable(name, tuple(lam), entries)


def branch_oracle(pair, lam, cap=DEFAULT_DIM_CAP):
    """Independent G -> K decomposition of V(lam) by character peeling."""
    if isinstance(pair, Restriction):
        return branch_restriction(pair, lam, cap)
    pair = _as_pair(pair)
    return branch_restriction(pair.restriction(), lam, cap, pair.name)


def branch_oracle_m(pair, mu, cap=DEFAULT_DIM_CAP):
    """K -> M decomposition of the K-type mu by peeling."""
    pair = _as_pair(pair)
    return branch_restriction(pair.m_restriction(), mu, cap, pair.name + ":M")


# -- Spin(7) > G2 --------------------------------------------------------------

def _spin7_xyz(lam):
    """klm labels -> (x, y, z) in doubled coordinates."""
    k, l, m = lam
    return (2 * k + 2 * l + m, 2 * l + m, m)


_SPIN7_W = (
    (1, lambda x, y, z: (x, y, z)),
    (-1, lambda x, y, z: (x, y, -z)),
    (1, lambda x, y, z: (x, z, -y)),
    (-1, lambda x, y, z: (x, -z, -y)),
)


def spin7_weight_mult(lam, nu):
    """The A2-type hexagon multiplicity m_lam(nu) on G2 weights (scaled)."""
    P = get_pair("spin7-g2")
    x, y, z = (a + b for a, b in zip(_spin7_xyz(lam), P.G.rho))
    e1, e2 = P.q((2, 0, 0)), P.q((0, 2, 0))
    total = 0
    for sign, w in _SPIN7_W:
        v = sub(sub(P.q(w(x, y, z)), P.q_rho), nu)
        total += sign * partition_spin7_closed(v)
    k, l, m = lam
    a = tuple((k + l + m) * c for c in e1)
    b = tuple((k + l) * c for c in e1)
    total -= partition_spin7_closed(sub(sub(a, e2), nu))
    total += partition_spin7_closed(sub(sub(sub(b, e1), e2), nu))
    return total


def branch_spin7_g2(lam, mu):
    """Spin(7) -> G2 multiplicity, lam = (k, l, m) and mu = (m1, m2) in labels."""
    P = get_pair("spin7-g2")
    K = P.K
    nu = K.from_fundamental(tuple(mu))
    s1nu = K.reflect(nu, 0)
    eps3 = K.simple_roots[0]
    return spin7_weight_mult(lam, nu) - spin7_weight_mult(lam, sub(s1nu, eps3))


def spin7_window(lam, mu):
    """Windows on the two faces: 1 inside, 0 outside; None off the faces."""
    k, l, m = lam
    m1, m2 = mu
    if m2 == 0:
        return int(k + l <= m1 <= k + l + m)
    if m1 == 0:
        return int(max(k, l) <= m2 <= min(k + l, l + m))
    return None


# -- G2 > SU(3) ----------------------------------------------------------------

def branch_g2_su3(lam, mu):
    """G2 -> SU(3) multiplicity, lam = (n1, n2), mu = (m1, m2) in labels."""
    P = get_pair("g2-su3")
    return branch_kostant(P, P.g_weight(lam), P.k_weight(mu))


def g2_su3_min_formula(n2, m1, m2):
    """Large-n1 value min{m1+1, m2+1, m1+m2-n2+1, n2+1}, clipped at 0."""
    return max(0, min(m1 + 1, m2 + 1, m1 + m2 - n2 + 1, n2 + 1))


def branch_su3_su2(mu, n2):
    """SU(3) -> SU(2) (root subgroup) multiplicity of the spin n2/2 type in (m1, m2)."""
    m1, m2 = mu
    return max(0, min(n2 + 1, min(m1, m2) + 1, m1 + m2 - n2 + 1))


# -- Sp(2n) > Sp(2n-2) x Sp(2) -------------------------------------------------

@lru_cache(maxsize=None)
def _sigma(n):
    e = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    vecs = [add(e[i], e[n - 1]) for i in range(n - 1)]
    vecs += [sub(e[i], e[n - 1]) for i in range(n - 1)]
    return VectorMultiset(vecs)


def sp_A(n, lam, mu):
    """The quantities A_1, ..., A_n (epsilon coordinates a and b = (b_1..b_{n-1}; b_n))."""
    a, b = list(lam), list(mu)
    A = [a[0] - max(a[1], b[0])]
    for k in range(2, n):
        A.append(min(a[k - 1], b[k - 2]) - max(a[k], b[k - 1]))
    A.append(min(a[n - 1], b[n - 2]))
    return A


def _check_sp(n, lam, mu):
    if n < 3:
        raise ValueError("the symplectic rules need n >= 3")
    if len(lam) != n or len(mu) != n:
        raise ValueError(f"need {n} coordinates")


def branch_sp_lepowsky(n, lam, mu):
    """Lepowsky's rule; lam = (a_1..a_n), mu = (b_1..b_{n-1}, b_n) in epsilon coordinates."""
    _check_sp(n, lam, mu)
    A = sp_A(n, lam, mu)
    bn = mu[n - 1]
    if min(A) < 0 or (bn + sum(A)) % 2:
        return 0
    S = _sigma(n)
    v1 = tuple(A[:-1]) + (A[-1] - bn,)
    v2 = tuple(A[:-1]) + (A[-1] + bn + 2,)
    return S.count(v1) - S.count(v2)


def sp_face(n, mu):
    """Indices (1-based) of the nonzero K-labels of mu = (b_1..b_{n-1}; b_n)."""
    b = list(mu)
    labels = [b[i] - b[i + 1] for i in range(n - 2)] + [b[n - 2], b[n - 1]]
    return [i + 1 for i, c in enumerate(labels) if c]


def branch_sp_closed(n, lam, mu):
    """Multiplicity free closed form on faces of rank at most two (values 0 or 1)."""
    _check_sp(n, lam, mu)
    if len(sp_face(n, mu)) > 2:
        raise FaceError(f"{mu} is on a face of rank > 2; use branch_sp_lepowsky")
    A = sp_A(n, lam, mu)
    bn = mu[n - 1]
    if min(A[:-1]) < 0:
        return 0
    s = bn + sum(A)
    if s % 2:
        return 0
    return int(2 * max(max(A), bn) <= s)


# -- F4 > Spin(9) -------------------------------------------------------------

@lru_cache(maxsize=None)
def _f4_tilde():
    """Matrix of w~ (s1 after s2) and the shifted Weyl vector rho~ (doubled)."""
    G = get_pair("f4-spin9").G
    m = G.word(1, 2)
    rho_t = tuple(int(sum(c * r for c, r in zip(row, G.rho))) for row in m)
    return m, rho_t


def f4_tilde_apply(v):
    m, _ = _f4_tilde()
    out = []
    for row in m:
        x = sum(c * a for c, a in zip(row, v))
        assert x.denominator == 1
        out.append(int(x))
    return tuple(out)


def _support_A(V):
    L1 = V[:, 0]
    return (np.abs(V[:, 1]) <= L1) & (np.abs(V[:, 2]) <= L1) & (np.abs(V[:, 3]) <= L1)


def _support_B(V):
    a, b, c, d = V[:, 0], V[:, 1], V[:, 2], V[:, 3]
    return (a + b >= 0) & (a + c >= 0) & (b + c >= 0) & (np.abs(d) <= a + b + c)


def f4_terms(lam, mu, chamber="tilde"):
    """Surviving (index, det, Lambda_w) triples of the F4 Kostant sum after support pruning."""
    P = get_pair("f4-spin9")
    G = P.G
    W = G.weyl_group
    if chamber == "standard":
        V = W.apply_all(add(lam, G.rho)) - np.array(add(mu, G.rho))
        keep = _support_A(V)
    elif chamber == "tilde":
        _, rho_t = _f4_tilde()
        V = W.apply_all(add(f4_tilde_apply(lam), rho_t)) - np.array(add(mu, rho_t))
        keep = _support_B(V)
    else:
        raise ValueError(f"unknown chamber {chamber!r}")
    return [(int(i), int(W.dets[i]), tuple(int(x) for x in V[i])) for i in np.nonzero(keep)[0]]


def branch_f4_spin9(lam, mu, chamber="tilde"):
    """F4 -> Spin(9) multiplicity, lam and mu in (doubled) epsilon coordinates."""
    part = partition_f4_B_closed if chamber == "tilde" else partition_f4_A_closed
    return sum(d * part(v) for _, d, v in f4_terms(lam, mu, chamber))


def f4_survivors(lam, mu, chamber="tilde"):
    """Weyl elements whose term lies in the partition function support."""
    return [i for i, _, _ in f4_terms(lam, mu, chamber)]


def f4_face(mu_labels):
    """Which multiplicity free face the B4 labels lie on: '12', '3', '4' or None."""
    support = {i for i, c in enumerate(mu_labels) if c}
    if support <= {0, 1}:
        return "12"
    if support == {2}:
        return "3"
    if support == {3}:
        return "4"
    return None


def branch_spin9_spin7(mu_labels, nu_labels):
    """Membership of nu = nu1 eta1 + nu2 eta2 + nu3 eta3 in the spectrum of mu (0 or 1)."""
    face = f4_face(mu_labels)
    if face is None:
        raise FaceError(f"{mu_labels} is off the multiplicity free faces")
    m1, m2, m3, m4 = mu_labels
    l4, l3, l2 = nu_labels
    if min(nu_labels) < 0:
        return 0
    if face == "12":
        ok = l2 + l3 + l4 <= m1 + m2 and l3 + l4 <= m2 <= l2 + l3 + l4
    elif face == "3":
        ok = l2 + l3 <= m3 and l3 + l4 <= m3 <= l2 + l3 + l4
    else:
        ok = l3 == 0 and l2 + l4 <= m4
    return int(ok)


def spin9_spin7_spectrum(mu_labels):
    bound = sum(mu_labels)
    out = []
    for l4 in range(bound + 1):
        for l3 in range(bound + 1):
            for l2 in range(bound + 1):
                if branch_spin9_spin7(mu_labels, (l4, l3, l2)):
                    out.append((l4, l3, l2))
    return sorted(out)
