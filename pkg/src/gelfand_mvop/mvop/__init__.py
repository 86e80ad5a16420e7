"""Matrix valued orthogonal polynomials for factored Jacobi-type weights."""
from .engine import (
    InnerProductEngine,
    QuadratureError,
    SingularGramError,
    expand_in_monic,
    expansion_residual,
    gram_blocks,
    inner_product,
    monic_sequence,
    orthogonality_residual,
    recurrence_coeffs,
    recurrence_residuals,
)
from .polynomials import MatrixPolynomial, MatrixWeight, WeightError, weight_from_paper_form
from .quadrature import JacobiBasis, gauss_jacobi
from .weightfile import WeightFileError, load_weight, parse_weight

__all__ = [
    "InnerProductEngine", "QuadratureError", "SingularGramError", "expand_in_monic",
    "expansion_residual", "gram_blocks", "inner_product", "monic_sequence",
    "orthogonality_residual", "recurrence_coeffs", "recurrence_residuals",
    "MatrixPolynomial", "MatrixWeight", "WeightError", "weight_from_paper_form",
    "JacobiBasis", "gauss_jacobi", "WeightFileError", "load_weight", "parse_weight",
]
