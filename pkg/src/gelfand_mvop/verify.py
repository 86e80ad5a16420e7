"""Sweeps behind ``gelfand-mvop verify``; each returns a ``Report``."""
from __future__ import annotations

import itertools

from .branching import (
    branch_kostant,
    branch_oracle,
    branch_sp_closed,
    branch_sp_lepowsky,
    branch_spin7_g2,
    g2_su3_min_formula,
    sp_face,
    spin7_window,
)
from .pairs import get_pair
from .wells import (
    Report,
    bottom_closed_form,
    check_bottom_bijection,
    check_degree_inequality,
    check_monotone_limit,
    check_well,
    dominant_box,
    face_weights,
    multiplicity,
    project_to_M,
)
from .rootsys import DEFAULT_DIM_CAP, sub


def _mus(P, mu, mu_max):
    if mu is not None:
        return [P.k_weight(tuple(mu))]
    return face_weights(P, mu_max)


def _merge(theorem, sweep, reports):
    out = Report(theorem, sweep)
    for r in reports:
        for v in r.violations:
            v = dict(v)
            v.setdefault("mu", r.sweep.get("mu"))
            if "lambda" in r.sweep:
                v.setdefault("lambda", r.sweep["lambda"])
            out.violations.append(v)
    out.stats = {"checks": len(reports)}
    return out


def degree_inequality(pair, mu=None, mu_max=3, deg_max=4):
    P = get_pair(pair)
    reps = [check_degree_inequality(P, m, deg_max) for m in _mus(P, mu, mu_max)]
    out = _merge("thm-1.2", {"pair": P.name, "mu_max": mu_max, "deg_max": deg_max}, reps)
    out.stats["shifts_checked"] = sum(r.stats["pairs_checked"] for r in reps)
    return out


def _spin7_display(n, face):
    if face == 0:
        return {(k, l) for k in range(n + 1) for l in range(n + 1 - k)}
    return {(k, l) for k in range(n + 1) for l in range(n + 1) if k + l >= n}


def bottom_bijection(pair, mu=None, mu_max=3):
    P = get_pair(pair)
    reps = []
    for m in _mus(P, mu, mu_max):
        r = check_bottom_bijection(P, m)
        if P.name == "spin7-g2":
            m1, m2 = P.k_labels(m)
            want = _spin7_display(m1 + m2, 0 if m2 == 0 else 1)
            got = {project_to_M(P, b) for b in bottom_closed_form(P, m)}
            if got != want:
                r.violations.append({"kind": "display", "missing": sorted(want - got), "extra": sorted(got - want)})
        reps.append(r)
    out = _merge("prop-2.3", {"pair": P.name, "mu_max": mu_max}, reps)
    out.stats["bottom_total"] = sum(r.stats["bottom"] for r in reps)
    return out


def monotone_limit(pair, mu=None, mu_max=2, bound=2, deg_max=8):
    P = get_pair(pair)
    reps = []
    for m in _mus(P, mu, mu_max):
        for lam in dominant_box(P.G, bound):
            reps.append(check_monotone_limit(P, lam, m, deg_max))
    out = _merge("prop-2.4", {"pair": P.name, "mu_max": mu_max, "bound": bound, "n_max": deg_max}, reps)
    if P.name == "g2-su3":
        out.violations.extend(g2_min_formula(n1=max(deg_max, 12), bound=max(mu_max, 4)).violations)
    return out


def g2_min_formula(n1=12, bound=4):
    """Kostant value at large n1 against min{m1+1, m2+1, m1+m2-n2+1, n2+1}."""
    P = get_pair("g2-su3")
    rep = Report("prop-2.4", {"pair": P.name, "n1": n1, "bound": bound})
    for n2, m1, m2 in itertools.product(range(bound + 1), repeat=3):
        got = branch_kostant(P, P.g_weight((n1, n2)), P.k_weight((m1, m2)))
        want = g2_su3_min_formula(n2, m1, m2)
        if got != want:
            rep.violations.append({"kind": "min-formula", "n2": n2, "mu": [m1, m2], "kostant": got, "formula": want})
    return rep


def _table_check(P, lam, mus, routes, rep, cap=DEFAULT_DIM_CAP):
    table = branch_oracle(P, lam, cap)
    defect = table.dimension_defect(P.G, P.K)
    if defect:
        rep.violations.append({"kind": "dimension", "lambda": list(P.g_labels(lam)), "defect": defect})
    for mu in mus:
        want = table.entries.get(mu, 0)
        vals = {name: f(lam, mu) for name, f in routes.items()}
        if any(v != want for v in vals.values()):
            rep.violations.append({
                "kind": "mismatch", "lambda": list(P.g_labels(lam)), "mu": list(P.k_labels(mu)),
                "oracle": want, **vals,
            })


def spin7_branching(bound=5, mu_max=5):
    P = get_pair("spin7-g2")
    rep = Report("thm-4.2", {"pair": P.name, "lambda_sum_max": bound, "mu_sum_max": mu_max})
    mus = [P.k_weight(m) for m in itertools.product(range(mu_max + 1), repeat=2) if sum(m) <= mu_max]
    routes = {
        "closed": lambda lam, mu: branch_spin7_g2(P.g_labels(lam), P.k_labels(mu)),
        "kostant": lambda lam, mu: branch_kostant(P, lam, mu),
    }
    n = 0
    for lab in itertools.product(range(bound + 1), repeat=3):
        if sum(lab) <= bound:
            _table_check(P, P.g_weight(lab), mus, routes, rep)
            n += 1
    rep.stats = {"lambdas": n, "mus": len(mus)}
    return rep


def spin7_windows(face, bound=5, mu_max=5):
    """Window on the face n0 (face=0) or 0n (face=1) against the closed rule and the bottom."""
    P = get_pair("spin7-g2")
    rep = Report("cor-4.4" if face == 0 else "cor-4.5", {"pair": P.name, "bound": bound, "mu_max": mu_max})
    for n in range(mu_max + 1):
        mu = (n, 0) if face == 0 else (0, n)
        for lab in itertools.product(range(bound + 1), repeat=3):
            got = branch_spin7_g2(lab, mu)
            want = spin7_window(lab, mu)
            if got != want:
                rep.violations.append({"kind": "window", "lambda": list(lab), "mu": list(mu), "branching": got, "window": want})
        rep.violations.extend(check_well(P, P.k_weight(mu), bound).violations)
    return rep


def _sp_weights(n, bound):
    for a in itertools.product(range(bound + 1), repeat=n):
        if all(a[i] >= a[i + 1] for i in range(n - 1)):
            yield a


def sp_closed_form(n=3, bound=4, cap=10**7):
    P = get_pair(f"sp-{n}")
    rep = Report("thm-5.2", {"pair": P.name, "bound": bound})
    mus = []
    for b in itertools.product(range(bound + 1), repeat=n):
        if all(b[i] >= b[i + 1] for i in range(n - 2)) and len(sp_face(n, b)) <= 2:
            mus.append(tuple(2 * x for x in b))
    routes = {
        "closed": lambda lam, mu: branch_sp_closed(n, [x // 2 for x in lam], [x // 2 for x in mu]),
        "lepowsky": lambda lam, mu: branch_sp_lepowsky(n, [x // 2 for x in lam], [x // 2 for x in mu]),
    }
    lams = [tuple(2 * x for x in a) for a in _sp_weights(n, bound)]
    for lam in lams:
        _table_check(P, lam, mus, routes, rep, cap)
    rep.stats = {"lambdas": len(lams), "mus": len(mus)}
    return rep


F4_MUS = ((1, 0, 0, 0), (0, 1, 0, 0), (1, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))


def f4_bottoms(mu=None, bound=2):
    """Bottom elements have m = 1 and m = 0 one spherical step down; sweep agrees."""
    P = get_pair("f4-spin9")
    mus = [tuple(mu)] if mu is not None else list(F4_MUS)
    rep = Report("thm-6.4", {"pair": P.name, "mus": [list(m) for m in mus], "bound": bound})
    count = 0
    for lab in mus:
        m = P.k_weight(lab)
        for b in sorted(bottom_closed_form(P, m)):
            if max(P.g_labels(b)) > bound:
                continue
            count += 1
            if multiplicity(P, b, m) != 1:
                rep.violations.append({"kind": "bottom", "lambda": list(P.g_labels(b)), "mu": list(lab)})
            below = sub(b, P.spherical)
            if P.G.is_dominant(below) and multiplicity(P, below, m) != 0:
                rep.violations.append({"kind": "below", "lambda": list(P.g_labels(b)), "mu": list(lab)})
        rep.violations.extend(check_well(P, m, bound).violations)
    rep.stats = {"bottom_checked": count}
    return rep


THEOREMS = ("thm-1.2", "prop-2.3", "prop-2.4", "thm-4.2", "cor-4.4", "cor-4.5", "thm-5.2", "thm-6.4")


def run(theorem, pair=None, mu=None, mu_max=None, deg_max=None, bound=None):
    """Dispatch a theorem identifier to its sweep."""
    rep = _run(theorem, pair, mu, mu_max, deg_max, bound)
    if mu is not None:
        rep.sweep.pop("mu_max", None)
        rep.sweep["mu"] = list(mu)
    return rep


def _run(theorem, pair, mu, mu_max, deg_max, bound):
    def pick(v, default):
        return default if v is None else v

    if theorem == "thm-1.2":
        return degree_inequality(pick(pair, "spin7-g2"), mu, pick(mu_max, 3), pick(deg_max, 4))
    if theorem == "prop-2.3":
        return bottom_bijection(pick(pair, "spin7-g2"), mu, pick(mu_max, 3))
    if theorem == "prop-2.4":
        pair = pick(pair, "g2-su3")
        big = get_pair(pair).G.rank > 3
        return monotone_limit(pair, mu, pick(mu_max, 1 if big else 2), pick(bound, 1 if big else 2), pick(deg_max, 6 if big else 8))
    if theorem == "thm-4.2":
        return spin7_branching(pick(bound, 5), pick(mu_max, 5))
    if theorem in ("cor-4.4", "cor-4.5"):
        return spin7_windows(0 if theorem == "cor-4.4" else 1, pick(bound, 5), pick(mu_max, 5))
    if theorem == "thm-5.2":
        n = get_pair(pick(pair, "sp-3")).n
        return sp_closed_form(n, pick(bound, 4))
    if theorem == "thm-6.4":
        return f4_bottoms(mu, pick(bound, 2))
    raise KeyError(f"unknown theorem identifier {theorem!r}; known: {', '.join(THEOREMS)}")
