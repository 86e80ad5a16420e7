"""JSON weight specification files.

Schema::

    {
      "N": 2,
      "alpha": "1/2",            # number or "p/q"
      "beta": 0,
      "D": [1, 3],               # positive diagonal of D
      "T": [C_0, C_1, ...]       # N x N matrices, C_k multiplies x^k
    }

Matrix entries are numbers, "p/q" strings, or [re, im] pairs.  An optional
"c" records the constant of the change of variable that brought the weight
to [-1, 1]; it is carried along but not used.
"""
from __future__ import annotations

import json
from fractions import Fraction

import numpy as np

from .polynomials import MatrixPolynomial, WeightError, weight_from_paper_form


class WeightFileError(ValueError):
    pass


def _scalar(v, where):
    if isinstance(v, bool):
        raise WeightFileError(f"{where}: booleans are not numbers")
    if isinstance(v, (int, float)):
        return v
    if isinstance(v, str):
        try:
            return float(Fraction(v.strip()))
        except (ValueError, ZeroDivisionError):
            raise WeightFileError(f"{where}: cannot read {v!r} as a rational") from None
    if isinstance(v, list) and len(v) == 2:
        return complex(float(_scalar(v[0], where)), float(_scalar(v[1], where)))
    raise WeightFileError(f"{where}: unsupported entry {v!r}")


def parse_weight(doc):
    """MatrixWeight from an already-decoded JSON document."""
    if not isinstance(doc, dict):
        raise WeightFileError("top level must be an object")
    missing = {"N", "alpha", "beta", "D", "T"} - set(doc)
    if missing:
        raise WeightFileError(f"missing keys: {sorted(missing)}")
    N = doc["N"]
    if not isinstance(N, int) or N < 1:
        raise WeightFileError("N must be a positive integer")
    alpha = _scalar(doc["alpha"], "alpha")
    beta = _scalar(doc["beta"], "beta")
    if isinstance(alpha, complex) or isinstance(beta, complex):
        raise WeightFileError("alpha and beta must be real")
    D = doc["D"]
    if not isinstance(D, list) or len(D) != N:
        raise WeightFileError(f"D must list {N} diagonal entries")
    D = [_scalar(d, f"D[{i}]") for i, d in enumerate(D)]
    T = doc["T"]
    if not isinstance(T, list) or not T:
        raise WeightFileError("T must be a nonempty list of matrices")
    coeffs = []
    for k, C in enumerate(T):
        if not isinstance(C, list) or len(C) != N or any(not isinstance(r, list) or len(r) != N for r in C):
            raise WeightFileError(f"T[{k}] must be {N}x{N}")
        coeffs.append([[_scalar(x, f"T[{k}][{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(C)])
    try:
        return weight_from_paper_form(MatrixPolynomial(np.array(coeffs, dtype=complex)), D, alpha, beta)
    except WeightError:
        raise
    except ValueError as e:
        raise WeightFileError(str(e)) from None


def load_weight(path):
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as e:
            raise WeightFileError(f"{path}: {e}") from None
    return parse_weight(doc)
