"""Command line front end: ``gelfand-mvop branch|well|verify|mvop``.

Exit codes: 0 ok, 1 a check failed, 2 usage or input error, 3 dimension
cap exceeded, 4 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

import numpy as np

from . import verify as _verify
from .branching import FaceError, branch_oracle, restricted_dominant_weights
from .mvop import (
    InnerProductEngine,
    QuadratureError,
    SingularGramError,
    WeightError,
    WeightFileError,
    load_weight,
    monic_sequence,
    orthogonality_residual,
    recurrence_coeffs,
    recurrence_residuals,
)
from .pairs import get_pair
from .rootsys import DEFAULT_DIM_CAP, CapExceeded, LatticeError
from .wells import make_well, multiplicity

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP, EXIT_NUMERIC = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _ints(text):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma separated integers, got {text!r}") from None


def _fracs(text):
    try:
        return tuple(Fraction(x) for x in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"expected comma separated rationals, got {text!r}") from None


def _num(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else str(x)


def _eps(system, v):
    return [_num(c) for c in system.to_epsilon(v)]


def _dump(doc, out):
    out.write(json.dumps(doc, sort_keys=True, indent=2))
    out.write("\n")


# -- branch ------------------------------------------------------------------------

def _g_weight(P, text, epsilon):
    if epsilon:
        lam = P.G.from_epsilon(_fracs(text))
    else:
        lam = _ints(text)
        if len(lam) != P.G.rank:
            raise UsageError(f"{P.name} needs {P.G.rank} labels, got {len(lam)}")
        lam = P.g_weight(lam)
    if not P.G.is_dominant(lam):
        raise UsageError(f"{text} is not dominant for {P.G.label}")
    return lam


def branch_table(P, lam, cap, oracle):
    """Entries by the fast route; with ``oracle`` also the peeling result."""
    candidates = restricted_dominant_weights(P.restriction(), lam, cap)
    entries = {}
    for mu in sorted(candidates):
        m = multiplicity(P, lam, mu)
        if m:
            entries[mu] = m
    mismatches = []
    if oracle:
        ref = branch_oracle(P, lam, cap).entries
        for mu in sorted(set(ref) | set(entries)):
            if ref.get(mu, 0) != entries.get(mu, 0):
                mismatches.append({"mu": _eps(P.K, mu), "fast": entries.get(mu, 0), "oracle": ref.get(mu, 0)})
    return entries, mismatches


def _table_doc(P, lam, entries):
    rows = []
    for mu in sorted(entries, key=lambda v: (P.K.to_fundamental(v), v)):
        rows.append({
            "mu": list(P.K.to_fundamental(mu)),
            "mu_epsilon": _eps(P.K, mu),
            "mult": entries[mu],
        })
    return {
        "pair": P.name,
        "lambda": list(P.g_labels(lam)),
        "lambda_epsilon": _eps(P.G, lam),
        "entries": rows,
    }


def cmd_branch(args, out):
    P = get_pair(args.pair)
    docs, status = [], EXIT_OK
    for text in args.lam:
        lam = _g_weight(P, text, args.epsilon)
        entries, mismatches = branch_table(P, lam, args.cap, args.oracle)
        total = sum(m * P.K.weyl_dim(mu) for mu, m in entries.items())
        if total != P.G.weyl_dim(lam):
            print(f"dimension check failed for {text}: {total} != {P.G.weyl_dim(lam)}", file=sys.stderr)
            return EXIT_FAIL
        doc = _table_doc(P, lam, entries)
        if args.oracle:
            doc["oracle"] = {"checked": True, "mismatches": mismatches}
            if mismatches:
                status = EXIT_FAIL
        docs.append(doc)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["pair", "lambda", "mu", "mult"])
        for d in docs:
            for row in d["entries"]:
                w.writerow([d["pair"], " ".join(map(str, d["lambda"])), " ".join(map(str, row["mu"])), row["mult"]])
        out.write(buf.getvalue())
    else:
        _dump(docs[0] if len(docs) == 1 else docs, out)
    return status


# -- well ----------------------------------------------------------------------------

def cmd_well(args, out):
    P = get_pair(args.pair)
    mu = _ints(args.mu)
    if len(mu) != P.K.rank:
        raise UsageError(f"{P.name} needs {P.K.rank} K-labels")
    well = make_well(P, P.k_weight(mu))
    spectrum = []
    for lam, d in well.members(args.deg_max):
        spectrum.append({"lambda": list(P.g_labels(lam)), "degree": d, "mult": multiplicity(P, lam, well.mu)})
    _dump({
        "pair": P.name,
        "mu": list(mu),
        "spherical": list(P.g_labels(P.spherical)),
        "bottom": sorted(list(P.g_labels(b)) for b in well.bottom),
        "spectrum": sorted(spectrum, key=lambda r: (r["degree"], r["lambda"])),
    }, out)
    return EXIT_OK


# -- verify -------------------------------------------------------------------------

def cmd_verify(args, out):
    if args.theorem not in _verify.THEOREMS:
        raise UsageError(f"unknown theorem {args.theorem!r}; choose from {', '.join(_verify.THEOREMS)}")
    mu = _ints(args.mu) if args.mu else None
    rep = _verify.run(args.theorem, args.pair, mu, args.mu_max, args.deg_max, args.bound)
    _dump(rep.to_dict(), out)
    return EXIT_OK if rep.ok else EXIT_FAIL


# -- mvop ------------------------------------------------------------------------------

def _cnum(z, digits=17):
    z = complex(z)
    re, im = float(f"{z.real:.{digits}g}"), float(f"{z.imag:.{digits}g}")
    return re if im == 0 else [re, im]


def _cmat(A):
    return [[_cnum(z) for z in row] for row in np.asarray(A)]


def cmd_mvop(args, out):
    W = load_weight(args.file)
    if args.n_max < 1:
        raise UsageError("n_max must be at least 1")
    E = InnerProductEngine(W)
    M = monic_sequence(E, args.n_max)
    B, C = recurrence_coeffs(E, M)
    _dump({
        "N": W.size,
        "alpha": W.jacobi_alpha,
        "beta": W.jacobi_beta,
        "monic": [[_cmat(c) for c in P.coefficients] for P in M],
        "norms": [_cmat(E.inner_product(P, P)) for P in M],
        "recurrence": {"B": [_cmat(b) for b in B], "C": [_cmat(c) for c in C]},
        "residuals": {
            "orthogonality": float(f"{orthogonality_residual(E, M):.3e}"),
            "recurrence": float(f"{max(recurrence_residuals(M, B, C)):.3e}"),
        },
    }, out)
    return EXIT_OK


# -- parser ------------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="gelfand-mvop", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("branch", help="decompose V(lambda) under K")
    b.add_argument("pair")
    b.add_argument("--lambda", dest="lam", action="append", required=True,
                   help="fundamental labels a,b,c (repeatable)")
    b.add_argument("--epsilon", action="store_true", help="read --lambda in epsilon coordinates")
    b.add_argument("--oracle", action="store_true", help="cross-check against character peeling")
    b.add_argument("--format", choices=("json", "csv"), default="json")
    b.add_argument("--cap", type=int, default=DEFAULT_DIM_CAP, help="largest dimension to expand")
    b.set_defaults(func=cmd_branch)

    w = sub.add_parser("well", help="bottom and spectrum of a K-type")
    w.add_argument("pair")
    w.add_argument("--mu", required=True)
    w.add_argument("--deg-max", type=int, default=2)
    w.set_defaults(func=cmd_well)

    v = sub.add_parser("verify", help="run a theorem sweep")
    v.add_argument("theorem", help=", ".join(_verify.THEOREMS))
    v.add_argument("--pair")
    v.add_argument("--mu")
    v.add_argument("--mu-max", type=int)
    v.add_argument("--deg-max", type=int)
    v.add_argument("--bound", type=int)
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("mvop", help="monic MVOPs for a weight file")
    m.add_argument("file")
    m.add_argument("n_max", type=int)
    m.set_defaults(func=cmd_mvop)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except CapExceeded as e:
        print(f"cap exceeded: {e}", file=sys.stderr)
        return EXIT_CAP
    except SingularGramError as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, KeyError, LatticeError, FaceError, WeightError, WeightFileError,
            QuadratureError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
