"""Descriptors for the rank one multiplicity free pairs (G, K) and their M.

Each descriptor carries the two root systems, the restriction q of
G-weights to K-weights, the multiset A = q(R_G^+) - R_K^+, the spherical
weight and, where implemented, the centralizer M with its own restriction
from K.  All coordinates are the scaled integer ones of ``rootsys``.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .kostant import VectorMultiset
from .rootsys import LatticeError, RootSystem, add, build_root_system, dot


class LinearMap:
    """Exact rational linear map stored as an integer matrix over a denominator."""

    def __init__(self, matrix, den=1):
        rows = [[Fraction(c) / den for c in row] for row in matrix]
        d = lcm(1, *(c.denominator for row in rows for c in row))
        self.num = tuple(tuple(int(c * d) for c in row) for row in rows)
        self.den = d
        self.rows = len(self.num)
        self.cols = len(self.num[0])

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def from_fractions(cls, rows):
        return cls(rows, 1)

    def __call__(self, v):
        out = []
        for row in self.num:
            x = sum(a * b for a, b in zip(row, v))
            q, r = divmod(x, self.den)
            if r:
                raise LatticeError(f"restriction of {tuple(v)} is not a lattice point")
            out.append(q)
        return tuple(out)

    def is_identity(self):
        return self.den == 1 and self.rows == self.cols and all(
            self.num[i][j] == (i == j) for i in range(self.rows) for j in range(self.cols)
        )


def _multiset_difference(big, small):
    c = Counter(big)
    for r in small:
        if c[r] <= 0:
            raise ValueError(f"K-root {r} is not the image of a positive G-root")
        c[r] -= 1
    return sorted(c.elements(), reverse=True)


@dataclass
class PairDescriptor:
    name: str
    G: RootSystem
    K: RootSystem
    q: LinearMap
    spherical: tuple
    faces: str = "any"
    n: int | None = None
    M: RootSystem | None = None
    qM: LinearMap | None = None
    witness: tuple | None = None
    A: VectorMultiset = field(init=False)

    def __post_init__(self):
        images = [self.q(r) for r in self.G.positive_roots]
        if any(all(c == 0 for c in v) for v in images):
            raise ValueError(f"{self.name}: a positive root restricts to zero")
        rest = _multiset_difference(images, self.K.positive_roots)
        self.A = VectorMultiset(rest, self.witness)
        two_rho_a = [0] * self.K.dim
        for v in rest:
            two_rho_a = [x + y for x, y in zip(two_rho_a, v)]
        self.q_rho = self.q(self.G.rho)
        if tuple(2 * x for x in self.q_rho) != tuple(
            2 * a + b for a, b in zip(self.K.rho, two_rho_a)
        ):
            raise ValueError(f"{self.name}: q(rho_G) != rho_K + rho_A")
        labels = self.G.to_fundamental(self.spherical)
        if min(labels) < 0 or gcd(*labels) != 1:
            raise ValueError(f"{self.name}: spherical weight is not primitive dominant")

    def __repr__(self):
        return f"PairDescriptor({self.name!r})"

    # -- convenience ------------------------------------------------------
    def g_weight(self, labels):
        return self.G.from_fundamental(tuple(labels))

    def k_weight(self, labels):
        return self.K.from_fundamental(tuple(labels))

    def g_labels(self, lam):
        return self.G.to_fundamental(lam)

    def k_labels(self, mu):
        return self.K.to_fundamental(mu)

    def on_face(self, mu):
        """Is the K-weight mu on one of the multiplicity free faces?"""
        support = {i for i, c in enumerate(self.k_labels(mu)) if c}
        if self.faces == "any":
            return True
        if self.faces == "rk1":
            return len(support) <= 1
        if self.faces == "rk2":
            return len(support) <= 2
        if self.faces == "f4":
            return len(support) <= 1 or support <= {0, 1}
        raise ValueError(self.faces)

    def restriction(self):
        return Restriction(self.G, self.K, self.q)

    def m_restriction(self):
        if self.M is None:
            raise NotImplementedError(f"{self.name}: M not implemented")
        return Restriction(self.K, self.M, self.qM)


@dataclass(frozen=True)
class Restriction:
    """A closed subgroup inclusion seen on weights: big -> small via ``map``."""

    big: RootSystem
    small: RootSystem
    map: LinearMap


def _orth_projection(vec, scale_ratio=1):
    """Matrix of scale_ratio times the projection onto vec^perp."""
    n = len(vec)
    vv = dot(vec, vec)
    return LinearMap(
        [
            [Fraction(scale_ratio * ((i == j) * vv - vec[i] * vec[j]), vv) for j in range(n)]
            for i in range(n)
        ]
    )


def _line_projection(vec):
    n = len(vec)
    vv = dot(vec, vec)
    return LinearMap([[Fraction(vec[i] * vec[j], vv) for j in range(n)] for i in range(n)])


# -- the individual pairs ------------------------------------------------------

def g2_su3():
    G = build_root_system("G2")
    a1, a2 = G.simple_roots
    beta1 = tuple(3 * x + y for x, y in zip(a1, a2))
    K = RootSystem("A2<G2", [beta1, a2], 2)
    M = RootSystem("A1<A2", [a2], 2)
    return PairDescriptor(
        "g2-su3", G, K, LinearMap.identity(3), G.fundamental_weights[0],
        faces="rk1", M=M, qM=_line_projection(a2),
    )


# e1, e2, e3 of B3 go to the three positive short roots of G2 (scale 2)
_SPIN7_Q = ((0, -1, 1), (-1, 0, -1), (1, 1, 0))


def spin7_g2():
    G = build_root_system("B3")
    K = build_root_system("G2")
    # M = SU(3) spanned by the long roots of G2
    a1, a2 = K.simple_roots
    beta1 = tuple(3 * x + y for x, y in zip(a1, a2))
    M = RootSystem("A2<G2", [beta1, a2], 2)
    return PairDescriptor(
        "spin7-g2", G, K, LinearMap(_SPIN7_Q), G.fundamental_weights[2],
        faces="rk1", M=M, qM=LinearMap.identity(3),
    )


def sp_pair(n):
    if n < 2:
        raise ValueError("sp-n needs n >= 2")
    G = build_root_system(f"C{n}")
    e = [tuple(2 * int(i == j) for j in range(n)) for i in range(n)]
    simple = [tuple(x - y for x, y in zip(e[i], e[i + 1])) for i in range(n - 2)]
    simple += [tuple(2 * x for x in e[n - 2]), tuple(2 * x for x in e[n - 1])]
    K = RootSystem(f"C{n - 1}xC1", simple, 2)
    # M: diagonal A1 (root e1 + en) times C_{n-2} on coordinates 2..n-1
    m_simple = [add(e[0], e[n - 1])]
    m_simple += [tuple(x - y for x, y in zip(e[i], e[i + 1])) for i in range(1, n - 2)]
    if n >= 3:
        m_simple.append(tuple(2 * x for x in e[n - 2]))
    M = RootSystem(f"A1xC{n - 2}", m_simple, 2)
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n - 1):
        rows[i][i] = 1
    for i in (0, n - 1):
        rows[i][0] = rows[i][n - 1] = Fraction(1, 2)
    return PairDescriptor(
        f"sp-{n}", G, K, LinearMap.identity(n), G.fundamental_weights[1],
        faces="rk2", n=n, M=M, qM=LinearMap(rows),
    )


# twisted Spin(7) in Spin(9): torus = alpha1^perp, scale 4
F4_ALPHA1 = (1, -1, -1, -1)
F4_DELTA = ((0, 0, 4, -4), (0, 4, -4, 0), (2, -2, 2, 2))
F4_W_M = ((1, 1, 1, 1), (-1, 1, 1, -1), (-1, 1, -1, 1), (-1, -1, 1, 1))  # over 2


def f4_spin9():
    G = build_root_system("F4")
    K = build_root_system("B4")
    M = RootSystem("B3~", F4_DELTA, 4)
    return PairDescriptor(
        "f4-spin9", G, K, LinearMap.identity(4), G.fundamental_weights[0],
        faces="f4", M=M, qM=_orth_projection(F4_ALPHA1, scale_ratio=2),
    )


def su_pair(n):
    if n < 2:
        raise ValueError("su-n needs n >= 2")
    G = build_root_system(f"A{n}")
    d = n + 1
    simple = G.simple_roots[: n - 1]
    fws = G.fundamental_weights[: n - 1]
    K = RootSystem(f"A{n - 1}xT", simple, 2, fundamental_weights=fws, gl=True)
    sph = tuple([2] + [0] * (d - 2) + [-2])
    witness = tuple([1] * n + [-n])
    return PairDescriptor(
        f"su-{n}", G, K, LinearMap.identity(d), sph, faces="any", n=n, witness=witness,
    )


def so_odd(n):
    if n < 2:
        raise ValueError("so-odd-n needs n >= 2")
    G = build_root_system(f"B{n}")
    K = build_root_system(f"D{n}")
    return PairDescriptor(
        f"so-odd-{n}", G, K, LinearMap.identity(n), G.fundamental_weights[0], faces="any", n=n,
    )


def so_even(n):
    if n < 3:
        raise ValueError("so-even-n needs n >= 3")
    G = build_root_system(f"D{n}")
    K = build_root_system(f"B{n - 1}")
    rows = [[int(i == j) for j in range(n)] for i in range(n - 1)]
    return PairDescriptor(
        f"so-even-{n}", G, K, LinearMap(rows), G.fundamental_weights[0], faces="any", n=n,
    )


_PATTERNS = [
    (re.compile(r"^sp-(\d+)$"), lambda m: sp_pair(int(m.group(1)))),
    (re.compile(r"^su-(\d+)$"), lambda m: su_pair(int(m.group(1)))),
    (re.compile(r"^so-odd-(\d+)$"), lambda m: so_odd(int(m.group(1)))),
    (re.compile(r"^so-even-(\d+)$"), lambda m: so_even(int(m.group(1)))),
    (re.compile(r"^so-odd$"), lambda m: so_odd(3)),
    (re.compile(r"^so-even$"), lambda m: so_even(4)),
    (re.compile(r"^sp-n$"), lambda m: sp_pair(3)),
    (re.compile(r"^su-n$"), lambda m: su_pair(2)),
    (re.compile(r"^g2-su3$"), lambda m: g2_su3()),
    (re.compile(r"^spin7-g2$"), lambda m: spin7_g2()),
    (re.compile(r"^f4-spin9$"), lambda m: f4_spin9()),
]


@lru_cache(maxsize=None)
def get_pair(name):
    """Look up a pair by identifier, e.g. ``sp-3``, ``spin7-g2``, ``so-odd-4``."""
    for pat, make in _PATTERNS:
        m = pat.match(name.strip().lower())
        if m:
            return make(m)
    raise KeyError(f"unknown pair {name!r}")
