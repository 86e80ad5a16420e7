import json
from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import roots_jacobi

from gelfand_mvop.mvop import (
    InnerProductEngine,
    MatrixPolynomial,
    MatrixWeight,
    QuadratureError,
    SingularGramError,
    WeightError,
    WeightFileError,
    expand_in_monic,
    expansion_residual,
    gauss_jacobi,
    inner_product,
    load_weight,
    monic_sequence,
    orthogonality_residual,
    parse_weight,
    recurrence_coeffs,
    recurrence_residuals,
    weight_from_paper_form,
)


def scalar_weight(alpha=0, beta=0, n=1):
    return MatrixWeight([np.eye(n)], np.ones(n), alpha, beta)


def random_weight(rng, N, degT, alpha=0.0, beta=0.0):
    T = rng.normal(size=(degT + 1, N, N)) + 1j * rng.normal(size=(degT + 1, N, N))
    T[0] += 3 * np.eye(N)
    return weight_from_paper_form(MatrixPolynomial(T), rng.uniform(0.5, 3, N), alpha, beta)


def poly(coeffs):
    return MatrixPolynomial(np.array(coeffs, dtype=complex))


# -- exact rational oracle ------------------------------------------------------------

def moments(alpha, beta, k):
    """int x^j w / int w, j <= k, for w = (1-x)^alpha (1+x)^beta."""
    a, b = Fraction(alpha), Fraction(beta)
    shifted = [Fraction(1)]
    for j in range(k):
        shifted.append(shifted[-1] * 2 * (b + 1 + j) / (a + b + 2 + j))
    # x^m = ((1 + x) - 1)^m
    return [sum(comb(m, j) * (-1) ** (m - j) * shifted[j] for j in range(m + 1)) for m in range(k + 1)]


def exact_monic(alpha, beta, n_max):
    mom = moments(alpha, beta, 2 * n_max + 1)

    def ip(p, q):
        return sum(x * y * mom[i + j] for i, x in enumerate(p) for j, y in enumerate(q))

    out = [[Fraction(1)]]
    for n in range(1, n_max + 1):
        p = [Fraction(0)] * n + [Fraction(1)]
        for q in out:
            c = ip(q, p) / ip(q, q)
            p = [a - c * (q[i] if i < len(q) else 0) for i, a in enumerate(p)]
        out.append(p)
    return out


def test_moment_oracle_sanity():
    assert moments(0, 0, 4) == [1, 0, Fraction(1, 3), 0, Fraction(1, 5)]
    assert exact_monic(0, 0, 2)[2] == [Fraction(-1, 3), 0, 1]


# -- quadrature ---------------------------------------------------------------------

@pytest.mark.parametrize("alpha,beta", [(0, 0), (0.5, 0.5), (1, 0), (-0.5, 1.5), (2, 3)])
def test_nodes_match_scipy(alpha, beta):
    for k in (1, 2, 5, 17, 40):
        x, w = gauss_jacobi(k, alpha, beta)
        xs, ws = roots_jacobi(k, alpha, beta)
        assert np.allclose(x, xs, atol=1e-13)
        assert np.allclose(w, ws, rtol=1e-12)


@pytest.mark.parametrize("alpha,beta", [(0, 0), (0.5, 0.5), (1, 1), (1, 0)])
def test_quadrature_exact_through_2k_minus_1(alpha, beta):
    mom = moments(alpha, beta, 60)
    for k in (1, 3, 8, 20, 30):
        x, w = gauss_jacobi(k, alpha, beta, extended=True)
        mass = np.sum(w)
        for j in range(2 * k):
            got = np.sum(w * x ** j) / mass
            assert abs(got - float(mom[j])) <= 1e-12 * max(1.0, abs(float(mom[j])))


def test_quadrature_needs_a_node():
    with pytest.raises(ValueError):
        gauss_jacobi(0)


# -- inner products --------------------------------------------------------------------

def test_inner_product_examples():
    E = InnerProductEngine(scalar_weight(n=2))
    one = MatrixPolynomial.identity(2)
    assert np.allclose(inner_product(E, one, one), 2 * np.eye(2), atol=1e-15)
    x = poly([[[0]], [[1]]])
    assert np.isclose(inner_product(InnerProductEngine(scalar_weight()), x, x)[0, 0], 2 / 3, atol=1e-15)
    one = MatrixPolynomial.identity(1)
    assert np.isclose(inner_product(InnerProductEngine(scalar_weight(1, 0)), one, one)[0, 0], 2, atol=1e-14)


def test_budget_detected():
    E = InnerProductEngine(scalar_weight(), node_budget=3)
    p = MatrixPolynomial.monomial(2, 1)
    assert np.isclose(inner_product(E, p, p)[0, 0], 2 / 5)  # degree 4 needs 3 nodes
    with pytest.raises(QuadratureError):
        inner_product(E, MatrixPolynomial.monomial(3, 1), MatrixPolynomial.monomial(3, 1))


def test_budget_respects_T_degree():
    W = weight_from_paper_form(poly([[[1]], [[1]]]), [1], 0, 0)
    E = InnerProductEngine(W, node_budget=2)
    assert E.required_nodes(1, 1) == 3
    with pytest.raises(QuadratureError):
        inner_product(E, MatrixPolynomial.monomial(1, 1), MatrixPolynomial.monomial(1, 1))


def _rand_poly(rng, N, deg):
    return MatrixPolynomial(rng.normal(size=(deg + 1, N, N)) + 1j * rng.normal(size=(deg + 1, N, N)))


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), N=st.integers(1, 4), degT=st.integers(0, 3))
def test_sesquilinearity(seed, N, degT):
    rng = np.random.default_rng(seed)
    E = InnerProductEngine(random_weight(rng, N, degT, rng.choice([0, 0.5, 1]), rng.choice([0, 0.5, 1])))
    P, Q = _rand_poly(rng, N, 3), _rand_poly(rng, N, 4)
    A = rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N))
    pq = inner_product(E, P, Q)
    scale = np.linalg.norm(pq) * max(1.0, np.linalg.norm(A))
    assert np.linalg.norm(inner_product(E, P @ A, Q) - A.conj().T @ pq) <= 1e-12 * scale
    assert np.linalg.norm(inner_product(E, P, Q @ A) - pq @ A) <= 1e-12 * scale
    assert np.linalg.norm(inner_product(E, Q, P) - pq.conj().T) <= 1e-12 * np.linalg.norm(pq)
    pp = inner_product(E, P, P)
    assert np.allclose(pp, pp.conj().T, atol=1e-12 * np.linalg.norm(pp))
    assert np.linalg.eigvalsh((pp + pp.conj().T) / 2)[0] > 0


# -- monic sequences --------------------------------------------------------------------

def test_legendre_monic():
    E = InnerProductEngine(scalar_weight())
    M = monic_sequence(E, 4)
    assert np.allclose(M[0].coefficients[0], 1)
    assert M[2].degree == 2
    assert np.allclose([c[0, 0] for c in M[2].coefficients], [-1 / 3, 0, 1], atol=1e-15)
    assert all(P.is_monic() for P in M)


@pytest.mark.parametrize("alpha,beta", [(0, 0), (Fraction(1, 2), Fraction(1, 2)), (1, 1)])
def test_scalar_against_exact_oracle(alpha, beta):
    E = InnerProductEngine(scalar_weight(float(alpha), float(beta)))
    M = monic_sequence(E, 10)
    exact = exact_monic(alpha, beta, 10)
    for P, q in zip(M, exact):
        got = np.array([c[0, 0] for c in P.coefficients])
        assert got.shape == (len(q),)
        assert np.max(np.abs(got - np.array([float(v) for v in q]))) <= 1e-12


def test_symmetric_weight_parity():
    E = InnerProductEngine(scalar_weight(0.5, 0.5))
    for n, P in enumerate(monic_sequence(E, 8)):
        c = np.array([x[0, 0] for x in P.coefficients])
        assert np.all(np.abs(c[(n + 1) % 2::2]) <= 1e-13)


@pytest.mark.parametrize("seed", range(6))
def test_random_weights_orthogonal(seed):
    rng = np.random.default_rng(seed)
    N, degT = int(rng.integers(1, 5)), int(rng.integers(0, 4))
    E = InnerProductEngine(random_weight(rng, N, degT, rng.choice([0, 0.5, 1]), rng.choice([0, 0.5])))
    M = monic_sequence(E, 12)
    assert all(P.is_monic() and P.degree == n for n, P in enumerate(M))
    assert orthogonality_residual(E, M) <= 1e-10
    for P in M:
        H = inner_product(E, P, P)
        assert np.allclose(H, H.conj().T, atol=1e-10 * np.linalg.norm(H))
        assert np.linalg.eigvalsh((H + H.conj().T) / 2)[0] > 0


def test_singular_gram_aborts():
    # T vanishes identically on the second row: the weight is singular
    W = weight_from_paper_form(poly([[[1, 0], [0, 0]]]), [1, 1], 0, 0)
    with pytest.raises(SingularGramError) as err:
        monic_sequence(InnerProductEngine(W), 2)
    assert err.value.degree == 0


def test_isolated_zero_of_det_T_is_fine():
    # det T(x) = x vanishes at one point only
    W = weight_from_paper_form(poly([[[1, 0], [0, 0]], [[0, 0], [0, 1]]]), [1, 2], 0, 0)
    E = InnerProductEngine(W)
    M = monic_sequence(E, 6)
    assert orthogonality_residual(E, M) <= 1e-10
    xs = np.linspace(-0.99, 0.99, 41)
    assert np.all(np.linalg.eigvalsh(W(xs).astype(complex))[:, 0] >= -1e-15)


def test_weight_is_hermitian():
    rng = np.random.default_rng(3)
    W = random_weight(rng, 3, 2, 0.5, 1)
    vals = W(np.linspace(-0.9, 0.9, 7))
    assert np.allclose(vals, np.conj(np.swapaxes(vals, 1, 2)))
    assert np.all(np.linalg.eigvalsh(vals.astype(complex))[:, 0] > 0)


# -- expansion -----------------------------------------------------------------------------

def test_expansion_examples():
    E = InnerProductEngine(scalar_weight())
    M = monic_sequence(E, 4)
    C = expand_in_monic(E, M, MatrixPolynomial.monomial(2, 1))
    assert np.allclose([c[0, 0] for c in C], [1 / 3, 0, 1], atol=1e-14)
    C = expand_in_monic(E, M, M[3])
    assert np.allclose([c[0, 0] for c in C], [0, 0, 0, 1], atol=1e-13)
    with pytest.raises(ValueError):
        expand_in_monic(E, M, MatrixPolynomial.monomial(5, 1))


def test_expansion_random():
    rng = np.random.default_rng(11)
    E = InnerProductEngine(random_weight(rng, 3, 2, 0.5, 0))
    M = monic_sequence(E, 8)
    P = _rand_poly(rng, 3, 7)
    C = expand_in_monic(E, M, P)
    assert expansion_residual(M, P, C) <= 1e-10
    assert np.allclose(C[-1], P.leading(), atol=1e-10 * np.linalg.norm(P.leading()))


# -- recurrence -------------------------------------------------------------------------------

def test_legendre_recurrence():
    E = InnerProductEngine(scalar_weight())
    M = monic_sequence(E, 8)
    B, C = recurrence_coeffs(E, M)
    assert max(abs(b[0, 0]) for b in B) <= 1e-15
    assert np.isclose(C[1][0, 0], 1 / 3, atol=1e-15)
    for n in range(1, len(C)):
        assert np.isclose(C[n][0, 0], n * n / (4 * n * n - 1), atol=1e-14)
    assert max(recurrence_residuals(M, B, C)) <= 1e-9


def test_decoupled_recurrence():
    E2 = InnerProductEngine(scalar_weight(n=2))
    E1 = InnerProductEngine(scalar_weight())
    B2, C2 = recurrence_coeffs(E2, monic_sequence(E2, 6))
    B1, C1 = recurrence_coeffs(E1, monic_sequence(E1, 6))
    for b2, b1, c2, c1 in zip(B2, B1, C2, C1):
        assert np.allclose(b2, b1[0, 0] * np.eye(2), atol=1e-14)
        assert np.allclose(c2, c1[0, 0] * np.eye(2), atol=1e-14)


def test_random_recurrence():
    rng = np.random.default_rng(5)
    E = InnerProductEngine(random_weight(rng, 4, 3, 1, 0.5))
    M = monic_sequence(E, 15)
    B, C = recurrence_coeffs(E, M)
    assert max(recurrence_residuals(M, B, C)) <= 1e-9
    with pytest.raises(ValueError):
        recurrence_coeffs(E, M[:1])


# -- weights and files -----------------------------------------------------------------------

def test_weight_validation():
    T = [np.eye(2)]
    with pytest.raises(WeightError):
        weight_from_paper_form(T, [1, 0], 0, 0)
    with pytest.raises(WeightError):
        weight_from_paper_form(T, [1, -2], 0, 0)
    with pytest.raises(WeightError):
        weight_from_paper_form(T, [[1, 1], [0, 1]], 0, 0)
    with pytest.raises(WeightError):
        weight_from_paper_form(T, [1, 1], -1, 0)
    with pytest.raises(WeightError):
        weight_from_paper_form(T, [1, 1, 1], 0, 0)


def test_polynomial_basics():
    P = MatrixPolynomial(np.zeros((4, 2, 2)))
    assert P.degree == 0 and P.is_zero()
    Q = MatrixPolynomial.monomial(3, 2)
    assert Q.degree == 3 and Q.is_monic()
    assert np.allclose(Q(0.5)[0], 0.125 * np.eye(2))
    assert (Q - Q).is_zero()
    with pytest.raises(ValueError):
        MatrixPolynomial(np.zeros((2, 2, 3)))


def test_weightfile_roundtrip(tmp_path):
    doc = {"N": 2, "alpha": "1/2", "beta": 0, "D": [1, "3"], "T": [[[1, 0], [0, 1]], [[0, [0, 1]], ["1/2", 0]]]}
    W = parse_weight(doc)
    assert W.size == 2 and W.jacobi_alpha == 0.5 and W.T.degree == 1
    assert np.isclose(W.T.coefficients[1][0, 1], 1j) and np.isclose(W.T.coefficients[1][1, 0], 0.5)
    path = tmp_path / "w.json"
    path.write_text(json.dumps(doc))
    assert load_weight(path).size == 2


@pytest.mark.parametrize("bad", [
    [],
    {"N": 1, "alpha": 0, "beta": 0, "D": [1]},
    {"N": 0, "alpha": 0, "beta": 0, "D": [], "T": [[[1]]]},
    {"N": 1, "alpha": "x", "beta": 0, "D": [1], "T": [[[1]]]},
    {"N": 1, "alpha": 0, "beta": 0, "D": [1, 2], "T": [[[1]]]},
    {"N": 2, "alpha": 0, "beta": 0, "D": [1, 2], "T": [[[1, 0]]]},
    {"N": 1, "alpha": 0, "beta": 0, "D": [True], "T": [[[1]]]},
])
def test_weightfile_errors(bad):
    with pytest.raises(WeightFileError):
        parse_weight(bad)


def test_weightfile_bad_json(tmp_path):
    path = tmp_path / "w.json"
    path.write_text("{not json")
    with pytest.raises(WeightFileError):
        load_weight(path)
