"""Induced spectra, bottoms and degree functions (wells).

For a K-type mu on a multiplicity free face the G-types containing mu form
a well B(mu) + N lam_sph.  This module builds the bottom from the closed
forms, recomputes it independently from branching multiplicities, and
checks the structural statements: well closure, the bottom bijection with
the M-spectrum, the degree inequality and the monotone limit along the
spherical direction.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .branching import (
    FaceError,
    branch_f4_spin9,
    branch_kostant,
    branch_oracle_m,
    branch_sp_closed,
    branch_sp_lepowsky,
    branch_spin7_g2,
    branch_spin9_spin7,
    branch_su3_su2,
    f4_face,
    sp_face,
    spin9_spin7_spectrum,
)
from .pairs import get_pair
from .rootsys import add, sub


def _pair(pair):
    return get_pair(pair) if isinstance(pair, str) else pair


def _half(v):
    return tuple(x // 2 for x in v)


def _dbl(v):
    return tuple(2 * x for x in v)


# -- multiplicities, fastest route per pair -----------------------------------

def multiplicity(pair, lam, mu):
    """m(lam, mu) for internal G- and K-weights, dispatching to the closed forms."""
    P = _pair(pair)
    if not (P.G.is_dominant(lam) and P.K.is_dominant(mu)):
        return 0
    if P.name == "spin7-g2":
        return branch_spin7_g2(P.g_labels(lam), P.k_labels(mu))
    if P.name.startswith("sp-"):
        a, b = _half(lam), _half(mu)
        if len(sp_face(P.n, b)) <= 2:
            return branch_sp_closed(P.n, a, b)
        return branch_sp_lepowsky(P.n, a, b)
    if P.name == "f4-spin9":
        return branch_f4_spin9(lam, mu)
    return branch_kostant(P, lam, mu)


# -- the well itself -------------------------------------------------------------

@dataclass
class Well:
    pair: str
    mu: tuple
    bottom: frozenset
    spherical: tuple
    _dominant: object = field(repr=False, default=None)

    def degree(self, lam):
        """Number of spherical steps above the bottom; ValueError outside the well."""
        b, d = tuple(lam), 0
        while self._dominant(b):
            if b in self.bottom:
                return d
            b = sub(b, self.spherical)
            d += 1
        raise ValueError(f"{lam} is not in the well of {self.mu}")

    def contains(self, lam):
        try:
            self.degree(lam)
        except ValueError:
            return False
        return True

    def members(self, degree_bound):
        out = []
        for b in self.bottom:
            for d in range(degree_bound + 1):
                out.append((tuple(x + d * s for x, s in zip(b, self.spherical)), d))
        return sorted(out)


def make_well(pair, mu, bottom=None):
    P = _pair(pair)
    if bottom is None:
        bottom = bottom_closed_form(P, mu)
    return Well(P.name, tuple(mu), frozenset(bottom), P.spherical, P.G.is_dominant)


# -- closed-form bottoms ---------------------------------------------------------

def _require_face(P, mu):
    if not P.K.is_dominant(mu):
        raise FaceError(f"{mu} is not K-dominant")
    if not P.on_face(mu):
        raise FaceError(f"{P.k_labels(mu)} is not on a multiplicity free face of {P.name}")


def bottom_closed_form(pair, mu):
    """The explicit bottom B(mu) as a set of internal G-weights."""
    P = _pair(pair)
    _require_face(P, mu)
    lab = P.k_labels(mu)
    if P.name == "g2-su3":
        n = sum(lab)
        return {P.g_weight((k, n - k)) for k in range(n + 1)}
    if P.name == "spin7-g2":
        m1, m2 = lab
        if m2 == 0:
            n = m1
            return {
                P.g_weight((k, l, n - k - l)) for k in range(n + 1) for l in range(n + 1 - k)
            }
        n = m2
        return {
            P.g_weight((k, n - m, m)) for m in range(n + 1) for k in range(m, n + 1)
        }
    if P.name.startswith("sp-"):
        return _sp_bottom(P, mu)
    if P.name == "f4-spin9":
        return _f4_bottom(P, lab)
    raise NotImplementedError(f"no closed-form bottom for {P.name}")


def _f4_bottom(P, lab):
    face = f4_face(lab)
    m1, m2, m3, m4 = lab
    out = set()
    for l4, l3, l2 in spin9_spin7_spectrum(lab):
        if face == "12":
            l1 = m1 + m2 - l2 - l3 - l4
        elif face == "3":
            l1 = m3 - l2 - l3
        else:
            l1 = m4 - l2 - l4
        if l1 >= 0:
            out.add(P.g_weight((l1, l2, l3, l4)))
    return out


def sp_m_spectrum(P, mu):
    """P_M^+(mu) for the symplectic pair as internal M-weights (oracle)."""
    return set(branch_oracle_m(P, mu).entries)


def _sp_line_base(P, nu):
    """q(lam) for the M-weight nu = (c1, c2..c_{n-1}, c1): (c1, -c1, c2, ..)."""
    c1 = nu[0]
    return (c1, -c1) + tuple(nu[1:-1])


def _sp_bottom(P, mu):
    out = set()
    sph = P.spherical
    for nu in sp_m_spectrum(P, mu):
        base = _sp_line_base(P, nu)
        # half-steps along lam_sph keep a1 - a2 fixed; only lattice points count
        start = base
        steps = 0
        found = None
        limit = 4 * (sum(abs(x) for x in mu) + sum(abs(x) for x in base) + 4)
        lam = start
        while steps <= limit:
            if all(x % 2 == 0 for x in lam) and P.G.is_dominant(lam) and multiplicity(P, lam, mu):
                found = lam
                break
            lam = tuple(x + s // 2 for x, s in zip(lam, sph))
            steps += 1
        if found is None:
            raise RuntimeError(f"no bottom on the line of {nu} for {mu}")
        out.add(found)
    return out


def sp_bottom_d_formula(P, mu, nu):
    """The closed expression for the minimal d (in units of lam_sph), or None.

    Case i > 1: d = c1 + b1.  Case i = 1 with a second label j: the maximum
    of b1 - c1, b2 + c1 and (b1 + B + max(a3, b2)) / 2.
    """
    from fractions import Fraction

    n = P.n
    b = _half(mu)
    face = sp_face(n, b)
    c1 = Fraction(nu[0], 2)
    a = [Fraction(x, 2) for x in nu[1:-1]]
    a3 = a[0] if a else Fraction(0)
    if not face:
        return Fraction(0) + c1
    i = face[0]
    if i > 1:
        return c1 + b[0]
    if len(face) < 2:
        return None
    j = face[1]
    if j == n:
        B = b[n - 1]
    else:
        lam_tail = [None, None] + a + [Fraction(0)] * 2
        ak = lambda k: lam_tail[k - 1] if k - 1 < len(lam_tail) and lam_tail[k - 1] is not None else Fraction(0)
        B = min(ak(j + 1), b[j - 1]) - max(ak(j + 2), b[j] if j < n else 0)
    return max(b[0] - c1, b[1] + c1, (b[0] + B + max(a3, b[1])) / 2)


# -- independent bottoms from branching sweeps -----------------------------------

def dominant_box(G, bound):
    """Dominant weights with all fundamental labels <= bound."""
    for lab in itertools.product(range(bound + 1), repeat=G.rank):
        yield G.from_fundamental(lab)


def bottom_by_branching(pair, mu, bound):
    """{lam in spectrum : lam - lam_sph not in spectrum} among labels <= bound."""
    P = _pair(pair)
    out = set()
    for lam in dominant_box(P.G, bound):
        if multiplicity(P, lam, mu) >= 1:
            prev = sub(lam, P.spherical)
            if not P.G.is_dominant(prev) or multiplicity(P, prev, mu) == 0:
                out.add(lam)
    return out


def induced_spectrum(pair, mu, degree_bound):
    """[(lam, multiplicity)] for the spectrum up to the given degree."""
    P = _pair(pair)
    well = make_well(P, mu)
    return [(lam, multiplicity(P, lam, mu)) for lam, _ in well.members(degree_bound)]


def degree(well, lam):
    return well.degree(lam)


# -- projection to M and the M-spectrum -----------------------------------------

def project_to_M(pair, lam):
    """M-labels of p(lam), constant along lam + Z lam_sph."""
    P = _pair(pair)
    if P.name == "spin7-g2":
        k, l, _ = P.g_labels(lam)
        return (k, l)
    if P.name == "g2-su3":
        return (P.g_labels(lam)[1],)
    if P.name == "f4-spin9":
        l1, l2, l3, l4 = P.g_labels(lam)
        return (l4, l3, l2)
    if P.name.startswith("sp-"):
        c1 = (lam[0] - lam[1]) // 2
        nu = (c1,) + tuple(lam[2:]) + (c1,)
        return P.M.to_fundamental(nu)
    raise NotImplementedError(f"project_to_M is not implemented for {P.name}")


def m_spectrum(pair, mu):
    """P_M^+(mu) in M-labels, from the K -> M rule of each pair."""
    P = _pair(pair)
    lab = P.k_labels(mu)
    if P.name == "g2-su3":
        return {(n2,) for n2 in range(sum(lab) + 1) if branch_su3_su2(lab, n2)}
    if P.name == "f4-spin9":
        return set(spin9_spin7_spectrum(lab))
    if P.M is None:
        raise NotImplementedError(f"no M for {P.name}")
    return {P.M.to_fundamental(nu) for nu in branch_oracle_m(P, mu).entries}


def m_multiplicity(pair, mu, nu_labels):
    """m^{K,M}_mu(nu) with nu in M-labels."""
    P = _pair(pair)
    lab = P.k_labels(mu)
    if P.name == "g2-su3":
        return branch_su3_su2(lab, nu_labels[0])
    if P.name == "f4-spin9" and f4_face(lab) is not None:
        return branch_spin9_spin7(lab, nu_labels)
    nu = P.M.from_fundamental(nu_labels)
    return branch_oracle_m(P, mu).entries.get(nu, 0)


# -- reports -------------------------------------------------------------------------

@dataclass
class Report:
    theorem: str
    sweep: dict
    violations: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.violations

    def to_dict(self):
        return {
            "theorem": self.theorem,
            "sweep": self.sweep,
            "violations": self.violations,
            "stats": self.stats,
        }


def check_bottom_bijection(pair, mu):
    P = _pair(pair)
    bottom = bottom_closed_form(P, mu)
    target = m_spectrum(P, mu)
    images = [project_to_M(P, lam) for lam in bottom]
    rep = Report("prop-2.3", {"pair": P.name, "mu": list(P.k_labels(mu))})
    rep.stats = {"bottom": len(bottom), "m_spectrum": len(target)}
    if len(set(images)) != len(images):
        rep.violations.append({"kind": "not injective"})
    if len(bottom) != len(target):
        rep.violations.append({"kind": "cardinality", "bottom": len(bottom), "m_spectrum": len(target)})
    missing = sorted(target - set(images))
    extra = sorted(set(images) - target)
    if missing or extra:
        rep.violations.append({"kind": "image", "missing": missing, "extra": extra})
    return rep


def spherical_weights(pair):
    P = _pair(pair)
    return sorted(P.G.weight_multiplicities(P.spherical))


def check_degree_inequality(pair, mu, bound, verify_membership=True):
    """|d(lam + w) - d(lam)| <= 1 for lam of degree <= bound and w a spherical weight."""
    P = _pair(pair)
    well = make_well(P, mu)
    weights = spherical_weights(P)
    rep = Report("thm-1.2", {"pair": P.name, "mu": list(P.k_labels(mu)), "deg_max": bound})
    checked = 0
    for lam, d in well.members(bound):
        for w in weights:
            lam2 = add(lam, w)
            if not P.G.is_dominant(lam2):
                continue
            inside = well.contains(lam2)
            if verify_membership:
                truth = multiplicity(P, lam2, mu) >= 1
                if truth != inside:
                    rep.violations.append({
                        "kind": "membership", "lambda": list(P.g_labels(lam2)),
                        "well": inside, "branching": truth,
                    })
                    continue
            if not inside:
                continue
            if not (P.G.dominance_leq(sub(lam, P.spherical), lam2)
                    and P.G.dominance_leq(lam2, add(lam, P.spherical))):
                rep.violations.append({"kind": "sandwich", "lambda": list(P.g_labels(lam2))})
            d2 = well.degree(lam2)
            checked += 1
            if abs(d2 - d) > 1:
                rep.violations.append({
                    "kind": "degree", "lambda": list(P.g_labels(lam)),
                    "shifted": list(P.g_labels(lam2)), "d": d, "d_shifted": d2,
                })
    rep.stats = {"pairs_checked": checked, "bottom": len(well.bottom)}
    return rep


def check_well(pair, mu, bound):
    """Closed-form bottom against the branching sweep over labels <= bound."""
    P = _pair(pair)
    closed = {b for b in bottom_closed_form(P, mu) if max(P.g_labels(b)) <= bound}
    swept = bottom_by_branching(P, mu, bound)
    rep = Report("well", {"pair": P.name, "mu": list(P.k_labels(mu)), "bound": bound})
    for lam in sorted(closed ^ swept):
        rep.violations.append({
            "kind": "bottom", "lambda": list(P.g_labels(lam)),
            "closed_form": lam in closed, "branching": lam in swept,
        })
    rep.stats = {"bottom": len(closed)}
    return rep


def spherical_line(pair, lam, mu, n_max):
    P = _pair(pair)
    return [multiplicity(P, add(lam, tuple(n * s for s in P.spherical)), mu) for n in range(n_max + 1)]


def check_monotone_limit(pair, lam, mu, n_max):
    """Monotonicity along lam + N lam_sph and the limit m^{K,M}_mu(p(lam)).

    The stabilization index is found empirically: the first n after which
    the sequence stays constant up to n_max.
    """
    P = _pair(pair)
    seq = spherical_line(P, lam, mu, n_max)
    rep = Report("prop-2.4", {
        "pair": P.name, "lambda": list(P.g_labels(lam)), "mu": list(P.k_labels(mu)), "n_max": n_max,
    })
    for n in range(n_max):
        if seq[n] > seq[n + 1]:
            rep.violations.append({"kind": "monotone", "n": n, "values": [seq[n], seq[n + 1]]})
    stable = n_max
    while stable > 0 and seq[stable - 1] == seq[-1]:
        stable -= 1
    limit = None
    try:
        limit = m_multiplicity(P, mu, project_to_M(P, lam))
    except NotImplementedError:
        pass
    if limit is not None and stable < n_max and seq[-1] != limit:
        rep.violations.append({"kind": "limit", "tail": seq[-1], "m_KM": limit})
    rep.stats = {"sequence": seq, "stable_from": stable, "limit": limit}
    return rep


def face_weights(pair, mu_max):
    """K-weights on the multiplicity free faces with labels <= mu_max."""
    P = _pair(pair)
    out = []
    for lab in itertools.product(range(mu_max + 1), repeat=P.K.rank):
        mu = P.k_weight(lab)
        if P.on_face(mu):
            out.append(mu)
    return out
