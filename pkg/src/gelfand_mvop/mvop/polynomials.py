"""Matrix valued polynomials and factored matrix weights."""
from __future__ import annotations

import numpy as np

from .quadrature import JacobiBasis, times_x

CLD = np.clongdouble


class WeightError(ValueError):
    pass


def _stack(coeffs, size=None):
    arr = np.array(coeffs, dtype=CLD)
    if arr.ndim == 2:
        arr = arr[None]
    if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
        raise ValueError("coefficients must be square matrices of equal size")
    if size is not None and arr.shape[1] != size:
        raise ValueError(f"expected {size}x{size} coefficients")
    return arr


def _trim(arr):
    n = arr.shape[0]
    while n > 1 and not np.any(arr[n - 1]):
        n -= 1
    return arr[:n]


class MatrixPolynomial:
    """sum_k C_k b_k(x) with N x N complex C_k.

    With ``basis=None`` the b_k are the powers x^k.  A ``JacobiBasis`` may be
    used instead; the engine does so because products of orthonormal
    polynomials are far better conditioned than monomial expansions.
    ``coefficients`` always returns the power-basis view in double precision;
    storage is extended precision.
    """

    def __init__(self, coeffs, basis=None):
        self._c = _trim(_stack(coeffs))
        self.basis = basis
        self._power = None

    # -- constructors ----------------------------------------------------
    @classmethod
    def constant(cls, A, basis=None):
        A = np.asarray(A).astype(CLD)
        if basis is None:
            return cls([A])
        return cls([A * np.sqrt(basis.mass)], basis)

    @classmethod
    def identity(cls, n, basis=None):
        return cls.constant(np.eye(n), basis)

    @classmethod
    def monomial(cls, k, n):
        c = np.zeros((k + 1, n, n), dtype=CLD)
        c[k] = np.eye(n)
        return cls(c)

    # -- basic data --------------------------------------------------------
    @property
    def size(self):
        return self._c.shape[1]

    @property
    def degree(self):
        return self._c.shape[0] - 1

    @property
    def raw(self):
        """Coefficients in the storage basis."""
        return self._c

    def _power_raw(self):
        if self.basis is None:
            return self._c
        if self._power is None:
            P = self.basis.power_matrix(self.degree)
            self._power = _trim(np.einsum("jk,jab->kab", P, self._c))
        return self._power

    @property
    def coefficients(self):
        return list(self._power_raw().astype(complex))

    def leading(self):
        return self.coefficients[-1]

    def is_monic(self, tol=1e-9):
        return np.allclose(self.leading(), np.eye(self.size), atol=tol)

    def is_zero(self):
        return not np.any(self._c)

    def __repr__(self):
        tag = "" if self.basis is None else f", basis=Jacobi({self.basis.alpha}, {self.basis.beta})"
        return f"MatrixPolynomial(N={self.size}, degree={self.degree}{tag})"

    # -- evaluation ----------------------------------------------------------
    def __call__(self, x):
        x = np.atleast_1d(np.asarray(x)).astype(np.longdouble)
        if self.basis is None:
            out = np.zeros((x.size, self.size, self.size), dtype=CLD)
            for c in self._c[::-1]:
                out = out * x[:, None, None] + c
            return out
        V = self.basis.values(x, self.degree)
        return np.einsum("ij,jab->iab", V, self._c)

    # -- change of basis ---------------------------------------------------------
    def in_basis(self, basis):
        if basis == self.basis:
            return self
        c = self._power_raw()
        if basis is None:
            return MatrixPolynomial(c)
        Q = basis.monomial_matrix(self.degree)
        return MatrixPolynomial(np.einsum("kj,kab->jab", Q, c), basis)

    def _aligned(self, other):
        if self.basis == other.basis:
            return self, other
        return self, other.in_basis(self.basis)

    # -- arithmetic --------------------------------------------------------------
    def _combine(self, other, sign):
        a, b = self._aligned(other)
        n = max(a.degree, b.degree) + 1
        out = np.zeros((n, self.size, self.size), dtype=CLD)
        out[: a.degree + 1] += a._c
        out[: b.degree + 1] += sign * b._c
        return MatrixPolynomial(out, self.basis)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return MatrixPolynomial(-self._c, self.basis)

    def __matmul__(self, A):
        """Right multiplication by a constant matrix."""
        return MatrixPolynomial(self._c @ np.asarray(A).astype(CLD), self.basis)

    def __rmatmul__(self, A):
        return MatrixPolynomial(np.asarray(A).astype(CLD) @ self._c, self.basis)

    def __mul__(self, c):
        return MatrixPolynomial(self._c * c, self.basis)

    __rmul__ = __mul__

    def times_x(self):
        if self.basis is None:
            out = np.zeros((self.degree + 2, self.size, self.size), dtype=CLD)
            out[1:] = self._c
            return MatrixPolynomial(out)
        a, s = self.basis.recurrence(self.degree + 2)
        return MatrixPolynomial(times_x(self._c, a, s), self.basis)

    def dagger(self):
        """P(x)^dagger for real x."""
        return MatrixPolynomial(np.conj(np.swapaxes(self._c, 1, 2)), self.basis)

    def coefficient_norm(self):
        return float(np.sqrt(np.sum(np.abs(self._power_raw()) ** 2)))


class MatrixWeight:
    """W(x) = T(x)^dagger D T(x) (1-x)^alpha (1+x)^beta on [-1, 1]."""

    def __init__(self, T, D, alpha=0, beta=0):
        self.T = T if isinstance(T, MatrixPolynomial) else MatrixPolynomial(T)
        D = np.asarray(D)
        if D.ndim == 2:
            if np.any(D - np.diag(np.diag(D))):
                raise WeightError("D must be diagonal")
            D = np.diag(D)
        if np.iscomplexobj(D):
            if np.any(D.imag):
                raise WeightError("D must be real")
            D = D.real
        D = D.astype(np.longdouble)
        if D.shape != (self.T.size,):
            raise WeightError(f"D has {D.size} entries, T is {self.T.size}x{self.T.size}")
        if np.any(D <= 0):
            raise WeightError(f"D must be positive, got {[float(d) for d in D]}")
        try:
            self.basis = JacobiBasis(alpha, beta)
        except ValueError as e:
            raise WeightError(str(e)) from None
        self.D = D
        self.jacobi_alpha = self.basis.alpha
        self.jacobi_beta = self.basis.beta

    @property
    def size(self):
        return self.T.size

    @property
    def polynomial_part(self):
        return self.T

    def core(self, x):
        """T(x)^dagger D T(x) without the scalar Jacobi factor."""
        t = self.T(x)
        return np.conj(np.swapaxes(t, 1, 2)) @ (self.D[:, None] * t)

    def __call__(self, x):
        x = np.atleast_1d(np.asarray(x)).astype(np.longdouble)
        w = (1 - x) ** self.jacobi_alpha * (1 + x) ** self.jacobi_beta
        return self.core(x) * w[:, None, None]

    def __repr__(self):
        return (
            f"MatrixWeight(N={self.size}, alpha={self.jacobi_alpha}, beta={self.jacobi_beta}, "
            f"deg T={self.T.degree})"
        )


def weight_from_paper_form(T, D, alpha, beta):
    """Build W = T^dagger D T w from its factors, validating D > 0 and alpha, beta > -1."""
    return MatrixWeight(T, D, alpha, beta)
