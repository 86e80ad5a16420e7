"""Quadrature inner products, monic orthogonal sequences and recurrences."""
from __future__ import annotations

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .polynomials import MatrixPolynomial
from .quadrature import gauss_jacobi

COND_LIMIT = 1e12


class QuadratureError(ValueError):
    """The node budget cannot integrate the requested product exactly."""


class SingularGramError(ArithmeticError):
    def __init__(self, degree, cond):
        super().__init__(f"Gram block at degree {degree} is numerically singular (cond {cond:.3g})")
        self.degree = degree
        self.cond = cond


class InnerProductEngine:
    """<P, Q> = int P(x)^dagger W(x) Q(x) dx by Gauss-Jacobi quadrature.

    With ``node_budget=None`` the rule is sized per call from the degrees;
    with an explicit budget a product that would need more nodes raises
    ``QuadratureError`` instead of being under-integrated.
    """

    def __init__(self, weight, node_budget=None):
        self.weight = weight
        self.node_budget = node_budget
        self.basis = weight.basis

    def required_nodes(self, deg_p, deg_q):
        total = deg_p + deg_q + 2 * self.weight.T.degree
        return total // 2 + 1

    def rule(self, k):
        return gauss_jacobi(k, self.weight.jacobi_alpha, self.weight.jacobi_beta, extended=True)

    def nodes_for(self, deg_p, deg_q):
        need = self.required_nodes(deg_p, deg_q)
        if self.node_budget is None:
            return self.rule(need)
        if self.node_budget < need:
            raise QuadratureError(
                f"degrees {deg_p} and {deg_q} need {need} nodes, budget is {self.node_budget}"
            )
        return self.rule(self.node_budget)

    def lift(self, P):
        """P in the engine's orthonormal basis."""
        return P.in_basis(self.basis)

    def inner_product(self, P, Q):
        """Double precision view of ``inner_product_ext``."""
        return self.inner_product_ext(P, Q).astype(complex)

    def inner_product_ext(self, P, Q):
        x, w = self.nodes_for(P.degree, Q.degree)
        T = self.weight.T(x)
        tp, tq = T @ P(x), T @ Q(x)
        d = self.weight.D[:, None]
        return np.einsum("i,iba,ibc->ac", w, np.conj(tp), d * tq)


def inner_product(engine, P, Q):
    return engine.inner_product(P, Q)


def _solve(fac, H, G):
    """H^{-1} G with one refinement step carried in extended precision."""
    C = cho_solve(fac, G.astype(complex)).astype(G.dtype)
    r = G - H @ C
    return C + cho_solve(fac, r.astype(complex)).astype(G.dtype)


def _check_gram(H, degree):
    H = (H + H.conj().T) / 2
    H = H.astype(complex)
    ev = np.linalg.eigvalsh(H)
    cond = np.inf if ev[0] <= 0 else ev[-1] / ev[0]
    if cond > COND_LIMIT:
        raise SingularGramError(degree, cond)
    return cho_factor(H), H


def monic_sequence(engine, n_max):
    """Monic M_0..M_{n_max}, orthogonal for the engine's weight.

    M_{n+1} is x M_n minus its projections on all earlier M_m, each
    coefficient solved against the Cholesky factor of <M_m, M_m>; the
    projection is applied twice to keep orthogonality at the rounding
    level.
    """
    N = engine.weight.size
    ip = engine.inner_product_ext
    M = [MatrixPolynomial.identity(N, engine.basis)]
    H = [ip(M[0], M[0])]
    facs = [_check_gram(H[0], 0)[0]]
    for n in range(n_max):
        R = M[n].times_x()
        for _ in range(2):
            for m in range(n + 1):
                R = R - M[m] @ _solve(facs[m], H[m], ip(M[m], R))
        M.append(R)
        H.append(ip(R, R))
        facs.append(_check_gram(H[-1], n + 1)[0])
    return M


def gram_blocks(engine, basis):
    return [inner_product(engine, P, P) for P in basis]


def expand_in_monic(engine, basis, P):
    """Coefficients C_n with P = sum_n M_n C_n."""
    if P.degree >= len(basis):
        raise ValueError(f"basis of length {len(basis)} cannot expand degree {P.degree}")
    P = engine.lift(P)
    ip = engine.inner_product_ext
    out = []
    for n in range(P.degree + 1):
        H = ip(basis[n], basis[n])
        fac, _ = _check_gram(H, n)
        out.append(_solve(fac, H, ip(basis[n], P)).astype(complex))
    return out


def expansion_residual(basis, P, coeffs):
    """Relative coefficient-norm residual of P - sum M_n C_n."""
    acc = basis[0] @ coeffs[0]
    for M, C in zip(basis[1:], coeffs[1:]):
        acc = acc + M @ C
    diff = (P.in_basis(None) - acc.in_basis(None)).coefficient_norm()
    return diff / max(P.coefficient_norm(), 1e-300)


def recurrence_coeffs(engine, basis):
    """B_n, C_n of x M_n = M_{n+1} + M_n B_n + M_{n-1} C_n, for n < len(basis) - 1.

    C_0 is reported as the zero matrix.
    """
    if len(basis) < 2:
        raise ValueError("need at least M_0 and M_1")
    N = engine.weight.size
    ip = engine.inner_product_ext
    B, C = [], []
    H = [ip(P, P) for P in basis]
    facs = [_check_gram(h, n)[0] for n, h in enumerate(H)]
    for n in range(len(basis) - 1):
        xM = basis[n].times_x()
        B.append(_solve(facs[n], H[n], ip(basis[n], xM)).astype(complex))
        if n == 0:
            C.append(np.zeros((N, N), dtype=complex))
        else:
            C.append(_solve(facs[n - 1], H[n - 1], ip(basis[n - 1], xM)).astype(complex))
    return B, C


def recurrence_residuals(basis, B, C):
    """Relative power-coefficient residuals of the three-term recurrence."""
    out = []
    for n in range(len(B)):
        xM = basis[n].times_x()
        R = xM - basis[n + 1] - basis[n] @ B[n]
        if n:
            R = R - basis[n - 1] @ C[n]
        out.append(R.in_basis(None).coefficient_norm() / xM.coefficient_norm())
    return out


def orthogonality_residual(engine, basis):
    """max over m != n of ||<M_m, M_n>|| / ||<M_n, M_n>|| (spectral norms)."""
    H = [np.linalg.norm(inner_product(engine, P, P), 2) for P in basis]
    worst = 0.0
    for n in range(len(basis)):
        for m in range(len(basis)):
            if m != n:
                worst = max(worst, np.linalg.norm(inner_product(engine, basis[m], basis[n]), 2) / H[n])
    return worst
