"""Vector partition functions.

``VectorMultiset`` counts the ways a lattice vector is a nonnegative integral
combination of a fixed finite list of vectors lying in an open half-space.
The closed forms below cover the three multisets that show up in the
exceptional branching rules.
"""
from __future__ import annotations

from math import comb

from .rootsys import dot


class PartitionError(ValueError):
    pass


class VectorMultiset:
    """Finite multiset of integer vectors with a half-space witness.

    The witness ``h`` must satisfy <h, a> > 0 for every member; it is what
    makes the partition count finite and bounds the recursion.  When none is
    given the sum of the vectors is tried.
    """

    def __init__(self, vectors, witness=None):
        vecs = [tuple(int(c) for c in v) for v in vectors]
        if not vecs:
            raise PartitionError("empty multiset")
        dim = len(vecs[0])
        if any(len(v) != dim for v in vecs):
            raise PartitionError("vectors of mixed length")
        if witness is None:
            witness = tuple(sum(v[i] for v in vecs) for i in range(dim))
        witness = tuple(int(c) for c in witness)
        bad = [v for v in vecs if dot(witness, v) <= 0]
        if bad:
            raise PartitionError(f"witness {witness} does not separate {bad[0]}")
        self.dim = dim
        self.witness = witness
        # peel the lexicographically largest vector first
        self.vectors = tuple(sorted(vecs, reverse=True))
        self._hvals = tuple(dot(witness, v) for v in self.vectors)
        self._cache = {}

    def __len__(self):
        return len(self.vectors)

    def __repr__(self):
        return f"VectorMultiset({list(self.vectors)!r})"

    def count(self, v):
        v = tuple(int(c) for c in v)
        if len(v) != self.dim:
            raise PartitionError(f"dimension mismatch: {len(v)} vs {self.dim}")
        return self._count(0, v)

    __call__ = count

    def _count(self, i, v):
        hv = dot(self.witness, v)
        if hv < 0:
            return 0
        last = len(self.vectors) - 1
        if i == last:
            a = self.vectors[i]
            k, r = divmod(hv, self._hvals[i])
            if r:
                return 0
            return int(all(x == k * y for x, y in zip(v, a)))
        key = (i, v)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        a, ha = self.vectors[i], self._hvals[i]
        total = 0
        w = v
        for _ in range(hv // ha + 1):
            total += self._count(i + 1, w)
            w = tuple(x - y for x, y in zip(w, a))
        self._cache[key] = total
        return total

    def clear(self):
        self._cache.clear()


def partition_generic(multiset, v):
    return multiset.count(v)


# -- Spin(7) inside G2 -------------------------------------------------------
# A = {e1, e2, e3} with e1 = e2 + e3, written in the G2 ambient R^3 (scale 2):
# e1 -> (0,-2,2), e2 -> (-2,0,2), e3 -> (2,-2,0).

def partition_spin7_closed(v):
    """Partition function of {e1, e2, e3}, e1 = e2 + e3, on G2 weights.

    Writing v = x e2 + y e3 the count is min(x, y) + 1 when x, y are
    nonnegative integers and 0 otherwise; equivalently k + 1 on
    k e1 + l e2 and k e1 + m e3.
    """
    v0, v1, v2 = (int(c) for c in v)
    if v0 + v1 + v2 != 0 or v1 % 2 or v2 % 2:
        return 0
    x, y = v2 // 2, -v1 // 2
    if x < 0 or y < 0:
        return 0
    return min(x, y) + 1


# -- F4 inside Spin(9) -------------------------------------------------------

def lattice_box_count(m, s):
    """#{x in Z^k : 0 <= x_i <= m_i, sum x = s} by inclusion-exclusion."""
    k = len(m)
    if s < 0 or any(c < 0 for c in m):
        return 0
    total = 0
    for mask in range(1 << k):
        t = s
        bits = 0
        for i in range(k):
            if mask >> i & 1:
                t -= m[i] + 1
                bits += 1
        if t >= 0:
            total += (-1) ** bits * comb(t + k - 1, k - 1)
    return total


def partition_f4_A_closed(lam):
    """Partition function of {(e1 +- e2 +- e3 +- e4)/2} (doubled coordinates).

    Splits into two commuting triples of vectors, each counted by a 2-d
    staircase, and sums over the middle coordinates.
    """
    L1, L2, L3, L4 = (int(c) for c in lam)
    if (L1 + L2) % 2 or (L1 - L2) % 2:
        return 0
    p, s = (L1 + L2) // 2, (L1 - L2) // 2
    if p < 0 or s < 0 or abs(L3) > L1 or abs(L4) > L1:
        return 0
    if (L3 - p - s) % 2 or (L4 - p - s) % 2:
        return 0

    def lo(a, b):
        x = max(a, b)
        return x if (x - p) % 2 == 0 else x + 1

    total = 0
    for v1 in range(lo(-p, L3 - s), min(p, L3 + s) + 1, 2):
        for v2 in range(lo(-p, L4 - s), min(p, L4 + s) + 1, 2):
            f = (2 + p - max(abs(v1), abs(v2))) // 2
            g = (2 + s - max(abs(L3 - v1), abs(L4 - v2))) // 2
            if f > 0 and g > 0:
                total += f * g
    return total


def partition_f4_B_closed(lam):
    """Partition function of the tilde chamber multiset B (doubled coordinates).

    B = {(c + e4)/2, (c - e4)/2} for c in {(-1,1,1), (1,-1,1), (1,1,-1), (1,1,1)}.
    The function is symmetric in the first three coordinates and reduces to
    a sum of box counts.
    """
    a = sorted((int(c) for c in lam[:3]), reverse=True)
    L4 = int(lam[3])
    if any(c % 2 != L4 % 2 for c in a):
        return 0
    l1, l2, l3 = a
    if l2 + l3 < 0:
        return 0
    t = (l2 + l3) // 2
    u1, u2 = (l1 - l3) // 2, (l1 - l2) // 2
    if (l1 + L4) % 2:
        return 0
    s0 = (l1 + L4) // 2
    total = 0
    for r in range(t + 1):
        total += lattice_box_count((u1 + r, u2 + r, r, t - r), s0 + r)
    return total


def f4_multiset_A(scale=2):
    h = scale // 2
    vecs = [(h, e2 * h, e3 * h, e4 * h) for e2 in (1, -1) for e3 in (1, -1) for e4 in (1, -1)]
    return VectorMultiset(vecs, witness=(1, 0, 0, 0))


def f4_multiset_B(scale=2):
    h = scale // 2
    cs = [(-1, 1, 1), (1, -1, 1), (1, 1, -1), (1, 1, 1)]
    vecs = [tuple(h * x for x in c) + (sgn * h,) for c in cs for sgn in (1, -1)]
    return VectorMultiset(vecs, witness=(1, 1, 1, 0))
