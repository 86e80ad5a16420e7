"""Root systems, weight lattices and Weyl groups in exact integer coordinates.

A weight is a tuple of ints holding ``scale`` times its epsilon-coordinates.
Every group used here lives comfortably at ``scale=2`` (half-integral spin
weights stay integral); the twisted Spin(7) inside Spin(9) needs ``scale=4``.
Inner products are the standard dot product on epsilon-coordinates; every
quantity the algorithms need (coroot pairings, Freudenthal quotients,
dimension ratios) is invariant under the common rescaling.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

DEFAULT_DIM_CAP = 10**5


class LatticeError(ValueError):
    """A point is not in the lattice it was claimed to belong to."""


class CapExceeded(RuntimeError):
    """A representation is larger than the configured dimension cap."""


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def smul(k, v):
    return tuple(k * a for a in v)


def _frac_solve(a, b):
    """Solve a x = b over the rationals (a square, nonsingular)."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[-1] for row in m]


def _frac_inverse(a):
    n = len(a)
    cols = [_frac_solve(a, [int(i == j) for i in range(n)]) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class WeylElement:
    """Orthogonal matrix on the ambient epsilon-space, exact entries."""

    matrix: tuple
    det: int
    length: int

    def __call__(self, v):
        out = []
        for row in self.matrix:
            x = sum(c * a for c, a in zip(row, v))
            if x.denominator != 1:
                raise LatticeError(f"Weyl element does not preserve lattice at {v}")
            out.append(int(x))
        return tuple(out)


class WeylGroup:
    """Fully materialized Weyl group.

    ``num`` is an integer array of shape (|W|, n, n) with ``num / den`` the
    element matrices, for vectorized application.
    """

    def __init__(self, elements):
        self.elements = elements
        den = 1
        for w in elements:
            for row in w.matrix:
                for c in row:
                    den = lcm(den, c.denominator)
        self.den = den
        self.num = np.array(
            [[[int(c * den) for c in row] for row in w.matrix] for w in elements],
            dtype=np.int64,
        )
        self.dets = np.array([w.det for w in elements], dtype=np.int64)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def apply_all(self, v):
        """Images of ``v`` under every element, as an int array (|W|, n)."""
        x = self.num @ np.asarray(v, dtype=np.int64)
        if self.den != 1:
            if np.any(x % self.den):
                raise LatticeError(f"{v} is not preserved by the Weyl group")
            x //= self.den
        return x

    def index(self, matrix):
        key = tuple(tuple(Fraction(c) for c in row) for row in matrix)
        for i, w in enumerate(self.elements):
            if w.matrix == key:
                return i
        raise KeyError("matrix is not an element of this Weyl group")


class RootSystem:
    """Root data for a (possibly reducible, possibly non-spanning) root system.

    Built from simple roots given in scaled integer coordinates.  Fundamental
    weights default to the ones inside the span of the roots; ``gl=True``
    marks the GL(n+1) convention for type A where the lattice is all of
    Z^{n+1} and fundamental weights are e1+...+ei.
    """

    def __init__(self, label, simple_roots, scale=2, fundamental_weights=None, gl=False):
        self.label = label
        self.scale = scale
        self.gl = gl
        self.simple_roots = tuple(tuple(int(c) for c in a) for a in simple_roots)
        self.rank = len(self.simple_roots)
        self.dim = len(self.simple_roots[0])
        self._sq = tuple(dot(a, a) for a in self.simple_roots)
        self.cartan = tuple(
            tuple(self._coroot_pair(ai, aj) for aj in self.simple_roots)
            for ai in self.simple_roots
        )
        gram = [[dot(a, b) for b in self.simple_roots] for a in self.simple_roots]
        self._gram_inv = _frac_inverse(gram)

        roots = self._all_roots()
        pos = sorted((r for r in roots if self._height_frac(r) > 0), reverse=True)
        self.positive_roots = tuple(pos)

        if fundamental_weights is None:
            inv = _frac_inverse([list(r) for r in self.cartan])
            fws = []
            for i in range(self.rank):
                v = [Fraction(0)] * self.dim
                for j in range(self.rank):
                    for k in range(self.dim):
                        v[k] += inv[i][j] * self.simple_roots[j][k]
                if any(x.denominator != 1 for x in v):
                    raise LatticeError(
                        f"{label}: fundamental weight {i + 1} not integral at scale {scale}"
                    )
                fws.append(tuple(int(x) for x in v))
            fundamental_weights = fws
        self.fundamental_weights = tuple(tuple(int(c) for c in w) for w in fundamental_weights)
        for i, w in enumerate(self.fundamental_weights):
            for j, a in enumerate(self.simple_roots):
                if self._coroot_pair(w, a) != (i == j):
                    raise ValueError(f"{label}: fundamental weights are not dual to coroots")

        two_rho = [0] * self.dim
        for r in self.positive_roots:
            two_rho = [x + y for x, y in zip(two_rho, r)]
        if any(x % 2 for x in two_rho):
            raise LatticeError(f"{label}: Weyl vector not integral at scale {scale}")
        self.rho = tuple(x // 2 for x in two_rho)

        # integer vector proportional to the sum of fundamental coweights
        hv = [Fraction(0)] * self.dim
        for r in self.positive_roots:
            rr = dot(r, r)
            hv = [x + Fraction(c, rr) for x, c in zip(hv, r)]
        hden = lcm(*(x.denominator for x in hv))
        self._hv = tuple(int(x * hden) for x in hv)
        self._hden = hden

        self._weyl = None
        self._dom_cache = {}
        self._char_cache = {}

    def __repr__(self):
        return f"RootSystem({self.label!r})"

    # -- pairings -------------------------------------------------------
    @staticmethod
    def _coroot_pair(v, a):
        num = 2 * dot(v, a)
        den = dot(a, a)
        if num % den:
            return Fraction(num, den)
        return num // den

    def pairing(self, v, i):
        """<v, alpha_i^vee> for the i-th simple root."""
        return self._coroot_pair(v, self.simple_roots[i])

    def coroot_pairing(self, v, a):
        return self._coroot_pair(v, a)

    def simple_coords(self, v):
        """Coefficients of ``v`` in the simple roots, or None if outside their span."""
        b = [dot(a, v) for a in self.simple_roots]
        c = [sum(g * x for g, x in zip(row, b)) for row in self._gram_inv]
        back = [sum(c[j] * self.simple_roots[j][k] for j in range(self.rank)) for k in range(self.dim)]
        if any(x != y for x, y in zip(back, v)):
            return None
        return tuple(c)

    def _height_frac(self, v):
        c = self.simple_coords(v)
        return sum(c)

    def height(self, v):
        """Integer proportional to the height (sum of simple-root coefficients)."""
        return dot(self._hv, v)

    # -- reflections ----------------------------------------------------
    def reflect(self, v, i):
        a = self.simple_roots[i]
        k = self._coroot_pair(v, a)
        if isinstance(k, Fraction):
            raise LatticeError(f"{v} has non-integral pairing with simple root {i + 1}")
        return tuple(x - k * y for x, y in zip(v, a))

    def _all_roots(self):
        seen = set(self.simple_roots)
        queue = deque(self.simple_roots)
        while queue:
            r = queue.popleft()
            for i in range(self.rank):
                s = self.reflect(r, i)
                if s not in seen:
                    seen.add(s)
                    queue.append(s)
        return seen

    def is_dominant(self, v):
        if len(v) != self.dim:
            raise LatticeError(f"{tuple(v)} does not live in the ambient space of {self.label}")
        return all(dot(v, a) >= 0 for a in self.simple_roots)

    def to_dominant(self, v):
        """Dominant representative of the W-orbit of ``v`` and the sign det(w)."""
        hit = self._dom_cache.get(v)
        if hit is not None:
            return hit
        x, sign = v, 1
        moved = True
        while moved:
            moved = False
            for i, a in enumerate(self.simple_roots):
                if dot(x, a) < 0:
                    x = self.reflect(x, i)
                    sign = -sign
                    moved = True
        self._dom_cache[v] = (x, sign)
        return x, sign

    def orbit(self, v):
        seen = {v}
        queue = deque([v])
        while queue:
            x = queue.popleft()
            for i in range(self.rank):
                y = self.reflect(x, i)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    # -- lattice and coordinates -----------------------------------------
    def in_lattice(self, v):
        if len(v) != self.dim:
            return False
        labels = [self.pairing(v, i) for i in range(self.rank)]
        if any(isinstance(x, Fraction) for x in labels):
            return False
        if self.gl:
            return all(c % self.scale == 0 for c in v)
        return self.from_fundamental(labels) == tuple(v)

    def check(self, v):
        v = tuple(int(c) for c in v)
        if not self.in_lattice(v):
            raise LatticeError(f"{v} is not in the weight lattice of {self.label}")
        return v

    def to_fundamental(self, v):
        labels = [self.pairing(v, i) for i in range(self.rank)]
        if any(isinstance(x, Fraction) for x in labels):
            raise LatticeError(f"{v} has non-integral fundamental coordinates in {self.label}")
        return tuple(labels)

    def from_fundamental(self, labels):
        if len(labels) != self.rank:
            raise LatticeError(f"{self.label} needs {self.rank} fundamental coordinates")
        out = [0] * self.dim
        for c, w in zip(labels, self.fundamental_weights):
            out = [x + c * y for x, y in zip(out, w)]
        return tuple(out)

    def to_epsilon(self, v):
        return tuple(Fraction(c, self.scale) for c in v)

    def from_epsilon(self, coords):
        out = []
        for c in coords:
            x = Fraction(c) * self.scale
            if x.denominator != 1:
                raise LatticeError(f"{coords} not representable at scale {self.scale}")
            out.append(int(x))
        return self.check(out)

    def coords_convert(self, v, target):
        """Convert between scaled-epsilon storage and user-facing coordinates.

        ``target='fundamental'`` takes a stored weight and returns its labels;
        ``target='epsilon'`` takes labels and returns exact epsilon-coordinates.
        """
        if target == "fundamental":
            return self.to_fundamental(self.check(v))
        if target == "epsilon":
            return self.to_epsilon(self.from_fundamental(v))
        raise ValueError(f"unknown target {target!r}")

    def dominance_leq(self, lam, lam2):
        """True iff lam2 - lam is a nonnegative integral combination of simple roots."""
        c = self.simple_coords(sub(lam2, lam))
        if c is None:
            return False
        return all(x.denominator == 1 and x >= 0 for x in c)

    # -- Weyl group ------------------------------------------------------
    @property
    def weyl_group(self):
        if self._weyl is None:
            self._weyl = self._build_weyl()
        return self._weyl

    def _reflection_matrix(self, a):
        aa = dot(a, a)
        n = self.dim
        return tuple(
            tuple(Fraction(int(i == j)) - Fraction(2 * a[i] * a[j], aa) for j in range(n))
            for i in range(n)
        )

    def _build_weyl(self):
        n = self.dim
        gens = [self._reflection_matrix(a) for a in self.simple_roots]
        ident = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))

        def mul(a, b):
            return tuple(
                tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
                for i in range(n)
            )

        def key(m):
            return tuple(sum(m[i][k] * self.rho[k] for k in range(n)) for i in range(n))

        found = {key(ident): (ident, 0)}
        queue = deque([ident])
        while queue:
            m = queue.popleft()
            length = found[key(m)][1]
            for g in gens:
                p = mul(g, m)
                k = key(p)
                if k not in found:
                    found[k] = (p, length + 1)
                    queue.append(p)
        elems = [
            WeylElement(matrix=m, det=(-1) ** length, length=length)
            for m, length in found.values()
        ]
        elems.sort(key=lambda w: w.matrix)
        return WeylGroup(elems)

    def word(self, *indices):
        """Matrix of s_{i1} s_{i2} ... (1-based simple reflection indices)."""
        n = self.dim
        m = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
        for i in indices:
            g = self._reflection_matrix(self.simple_roots[i - 1])
            m = tuple(
                tuple(sum(m[r][k] * g[k][c] for k in range(n)) for c in range(n))
                for r in range(n)
            )
        return m

    # -- representations -------------------------------------------------
    def weyl_dim(self, lam):
        if not self.is_dominant(lam):
            raise ValueError(f"{lam} is not dominant for {self.label}")
        lr = add(lam, self.rho)
        num = den = 1
        for a in self.positive_roots:
            num *= dot(lr, a)
            den *= dot(self.rho, a)
        q = Fraction(num, den)
        assert q.denominator == 1
        return int(q)

    def dominant_weights_below(self, lam):
        """Dominant weights of the irreducible module with highest weight ``lam``."""
        seen = {lam}
        queue = deque([lam])
        while queue:
            mu = queue.popleft()
            for a in self.positive_roots:
                nu = sub(mu, a)
                if nu not in seen and self.is_dominant(nu):
                    seen.add(nu)
                    queue.append(nu)
        return seen

    def dominant_character(self, lam, cap=DEFAULT_DIM_CAP):
        """Freudenthal multiplicities on the dominant weights of V(lam)."""
        lam = tuple(lam)
        hit = self._char_cache.get(lam)
        if hit is not None:
            return hit
        dim = self.weyl_dim(lam)
        if cap is not None and dim > cap:
            raise CapExceeded(f"dim V({lam}) = {dim} exceeds cap {cap} for {self.label}")
        doms = sorted(self.dominant_weights_below(lam), key=lambda m: (-self.height(m), m))
        lr = add(lam, self.rho)
        top = dot(lr, lr)
        mult = {lam: 1}
        for mu in doms[1:]:
            acc = 0
            for a in self.positive_roots:
                k = 1
                while True:
                    nu = tuple(x + k * y for x, y in zip(mu, a))
                    d, _ = self.to_dominant(nu)
                    m = mult.get(d)
                    if not m:
                        break
                    acc += m * dot(nu, a)
                    k += 1
            mr = add(mu, self.rho)
            denom = top - dot(mr, mr)
            q, r = divmod(2 * acc, denom)
            if r:
                raise ArithmeticError(f"Freudenthal quotient not integral at {mu}")
            if q:
                mult[mu] = q
        self._char_cache[lam] = mult
        return mult

    def weight_multiplicities(self, lam, cap=DEFAULT_DIM_CAP):
        """Full weight system of V(lam) as a dict weight -> multiplicity."""
        dom = self.dominant_character(lam, cap)
        out = {}
        for mu, m in dom.items():
            for nu in self.orbit(mu):
                out[nu] = m
        return out

    def multiplicity(self, lam, nu, cap=DEFAULT_DIM_CAP):
        d, _ = self.to_dominant(tuple(nu))
        return self.dominant_character(lam, cap).get(d, 0)


_LABEL = re.compile(r"^([ABCDFG])(\d+)$")


def _unit(n, i, c=1):
    v = [0] * n
    v[i] = c
    return v


def build_root_system(label, scale=2):
    """Standard root systems in Bourbaki/Knapp coordinates.

    F4 uses the labelling with alpha1 = (e1-e2-e3-e4)/2, alpha2 = e4,
    alpha3 = e3-e4, alpha4 = e2-e3, so that varpi1 = e1.
    """
    m = _LABEL.match(label.upper())
    if not m:
        raise ValueError(f"unsupported root system {label!r}")
    kind, n = m.group(1), int(m.group(2))
    s = scale
    if kind == "A" and n >= 1:
        d = n + 1
        simple = [[s * (x - y) for x, y in zip(_unit(d, i), _unit(d, i + 1))] for i in range(n)]
        fws = [[s if j <= i else 0 for j in range(d)] for i in range(n)]
        return RootSystem(f"A{n}", simple, s, fundamental_weights=fws, gl=True)
    if kind in "BCD" and n >= (2 if kind == "D" else 1):
        simple = [[s * (x - y) for x, y in zip(_unit(n, i), _unit(n, i + 1))] for i in range(n - 1)]
        if kind == "B":
            simple.append(_unit(n, n - 1, s))
        elif kind == "C":
            simple.append(_unit(n, n - 1, 2 * s))
        else:
            simple.append([s if j >= n - 2 else 0 for j in range(n)])
        return RootSystem(f"{kind}{n}", simple, s)
    if kind == "G" and n == 2:
        return RootSystem("G2", [[s, -s, 0], [-2 * s, s, s]], s)
    if kind == "F" and n == 4:
        h = s // 2 if s % 2 == 0 else None
        if h is None:
            raise LatticeError("F4 needs an even scale")
        simple = [[h, -h, -h, -h], [0, 0, 0, s], [0, 0, s, -s], [0, s, -s, 0]]
        return RootSystem("F4", simple, s)
    raise ValueError(f"unsupported root system {label!r}")
