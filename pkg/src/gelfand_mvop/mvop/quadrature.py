"""Gauss-Jacobi rules and the orthonormal scalar Jacobi basis on [-1, 1]."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import exp, lgamma, log

import numpy as np
from scipy.linalg import eigh_tridiagonal

# Gram matrices of high-degree monic polynomials are tiny next to those of
# low degree; the quadrature and the stored coefficients use the platform
# extended type so that cross inner products stay below that scale.
LD = np.longdouble


def _real(x):
    return float(Fraction(x)) if isinstance(x, (str, Fraction)) else float(x)


@lru_cache(maxsize=None)
def _recurrence(alpha, beta, n):
    """Monic recurrence p_{j+1} = (x - a_j) p_j - b_j p_{j-1} for j < n (extended precision)."""
    a = np.empty(n, dtype=LD)
    b = np.zeros(n + 1, dtype=LD)
    alpha, beta = LD(alpha), LD(beta)
    ab = alpha + beta
    for j in range(n):
        if j == 0:
            a[j] = (beta - alpha) / (ab + 2)
        else:
            a[j] = (beta * beta - alpha * alpha) / ((2 * j + ab) * (2 * j + ab + 2))
    for j in range(1, n + 1):
        if j == 1:
            b[j] = 4 * (1 + alpha) * (1 + beta) / ((2 + ab) ** 2 * (3 + ab))
        else:
            t = 2 * j + ab
            b[j] = 4 * j * (j + alpha) * (j + beta) * (j + ab) / (t * t * (t + 1) * (t - 1))
    return a, b


@dataclass(frozen=True)
class JacobiBasis:
    """Polynomials orthonormal for (1-x)^alpha (1+x)^beta on [-1, 1]."""

    alpha: float
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", _real(self.alpha))
        object.__setattr__(self, "beta", _real(self.beta))
        if self.alpha <= -1 or self.beta <= -1:
            raise ValueError("Jacobi exponents must exceed -1")

    @property
    def mass(self):
        al, be = self.alpha, self.beta
        return LD(exp((al + be + 1) * log(2) + lgamma(al + 1) + lgamma(be + 1) - lgamma(al + be + 2)))

    def recurrence(self, n):
        """(a_0..a_{n-1}, s_0..s_n) with s_j = sqrt(b_j)."""
        a, b = _recurrence(self.alpha, self.beta, n)
        return a, np.sqrt(b)

    def values(self, x, n):
        """Array V with V[i, j] = phat_j(x_i) for j <= n."""
        x = np.atleast_1d(np.asarray(x)).astype(LD)
        a, s = self.recurrence(n + 1)
        V = np.zeros((x.size, n + 1), dtype=LD)
        V[:, 0] = 1 / np.sqrt(self.mass)
        if n >= 1:
            V[:, 1] = (x - a[0]) * V[:, 0] / s[1]
        for j in range(1, n):
            V[:, j + 1] = ((x - a[j]) * V[:, j] - s[j] * V[:, j - 1]) / s[j + 1]
        return V

    def power_matrix(self, n):
        """Row j holds the power-basis coefficients of phat_j."""
        a, s = self.recurrence(n + 1)
        P = np.zeros((n + 1, n + 1), dtype=LD)
        P[0, 0] = 1 / np.sqrt(self.mass)
        for j in range(n):
            row = np.zeros(n + 1, dtype=LD)
            row[1:] = P[j, :-1]
            row -= a[j] * P[j]
            if j:
                row -= s[j] * P[j - 1]
            P[j + 1] = row / s[j + 1]
        return P

    def monomial_matrix(self, n):
        """Row k holds the coefficients of x^k in this basis."""
        a, s = self.recurrence(n + 1)
        Q = np.zeros((n + 1, n + 1), dtype=LD)
        Q[0, 0] = np.sqrt(self.mass)
        for k in range(n):
            Q[k + 1] = times_x(Q[k][:, None, None], a, s)[: n + 1, 0, 0]
        return Q


def times_x(c, a, s):
    """Coefficients of x * sum_j c_j phat_j; c has shape (m, ...)."""
    m = c.shape[0]
    out = np.zeros((m + 1,) + c.shape[1:], dtype=c.dtype)
    for j in range(m):
        out[j + 1] += s[j + 1] * c[j]
        out[j] += a[j] * c[j]
        if j:
            out[j - 1] += s[j] * c[j]
    return out


@lru_cache(maxsize=None)
def _gauss_jacobi(k, alpha, beta):
    basis = JacobiBasis(alpha, beta)
    a, s = basis.recurrence(k)
    if k == 1:
        x = np.array([a[0]], dtype=LD)
    else:
        x = eigh_tridiagonal(
            a[:k].astype(float), s[1:k].astype(float), eigvals_only=True
        ).astype(LD)
    b = s * s
    for _ in range(6):
        p0, p1 = np.ones_like(x), x - a[0]
        d0, d1 = np.zeros_like(x), np.ones_like(x)
        for j in range(1, k):
            p0, p1 = p1, (x - a[j]) * p1 - b[j] * p0
            d0, d1 = d1, p0 + (x - a[j]) * d1 - b[j] * d0
        step = p1 / d1
        x = x - step
        if np.max(np.abs(step)) < 1e-19:
            break
    V = basis.values(x, k - 1)
    w = 1 / np.sum(V * V, axis=1)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_jacobi(k, alpha=0.0, beta=0.0, extended=False):
    """Nodes and weights of the k-point Gauss rule for (1-x)^alpha (1+x)^beta.

    Exact on polynomials of degree <= 2k - 1.  Nodes come from the
    symmetric tridiagonal eigenproblem and are polished by Newton steps on
    the monic Jacobi polynomial; weights from the Christoffel function.
    """
    if k < 1:
        raise ValueError("need at least one node")
    x, w = _gauss_jacobi(int(k), _real(alpha), _real(beta))
    if extended:
        return x, w
    return x.astype(float), w.astype(float)
