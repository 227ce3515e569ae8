"""Closed-form characteristic quantities of the dispersion diagram.

Cut-off frequencies at k = 0, slopes of the oblique asymptotes, the levels
of horizontal asymptotes and the tangents of the two acoustic branches at
the origin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

from .errors import InvalidParams, ModelMismatch
from .params import MaterialParams, macro_moduli, validate

Model = Literal["relaxed", "internal_variable"]


def _require_positive_eta(p: MaterialParams):
    report = validate(p, "exploratory")
    if not report.ok:
        raise InvalidParams(report.describe())


def _sqrt(value, name, lenient=False):
    if value < 0:
        if lenient:
            return math.nan
        raise InvalidParams(f"{name} has a negative radicand ({value:g})")
    return math.sqrt(value)


def cutoffs(p: MaterialParams):
    """(omega_s, omega_r, omega_p) in rad/s."""
    _require_positive_eta(p)
    ws = _sqrt(2 * (p.mu_e + p.mu_micro) / p.eta1, "omega_s")
    wr = _sqrt(2 * p.mu_c / p.eta2, "omega_r")
    wp = _sqrt((3 * (p.lambda_e + p.lambda_micro) + 2 * (p.mu_e + p.mu_micro)) / p.eta3, "omega_p")
    return ws, wr, wp


@dataclass(frozen=True)
class ObliqueSlopes:
    c_m_d: float
    c_m_vd: float
    c_m_dr: float
    c_s: float
    c_p: float
    c_m_r: float

    def as_tuple(self):
        return (self.c_m_d, self.c_m_vd, self.c_m_dr, self.c_s, self.c_p, self.c_m_r)


def oblique_slopes(p: MaterialParams, lenient: bool = False) -> ObliqueSlopes:
    """Slopes in m/s. ``lenient`` turns an imaginary slope into NaN instead of raising."""
    _require_positive_eta(p)
    curv = p.mu_e * p.L_c ** 2
    e1, e2, e3 = p.etas
    a1, a2, a3 = p.alphas
    return ObliqueSlopes(
        c_m_d=_sqrt(a1 * curv / e1, "c_m_d", lenient),
        c_m_vd=_sqrt((a1 + 2 * a3) * curv / (3 * e2), "c_m_vd", lenient),
        c_m_dr=0.5 * _sqrt((e1 + e2) / (e1 * e2) * (a1 + a2) * curv, "c_m_dr", lenient),
        c_s=_sqrt((p.mu_e + p.mu_c) / p.rho, "c_s", lenient),
        c_p=_sqrt((2 * p.mu_e + p.lambda_e) / p.rho, "c_p", lenient),
        c_m_r=_sqrt((2 * e1 + e3) / (3 * e1 * e3) * a2 * curv, "c_m_r", lenient),
    )


@dataclass(frozen=True)
class InternalAux:
    """Auxiliary quantities of the internal-variable plateaus.

    ``p1`` is the corrected coefficient; ``p1_printed`` (equal to
    ``p2_printed``) keeps the variant whose last term carries 2*eta3*2*mu_e
    instead of eta1*2*mu_e.
    """

    q1: float
    q2: float
    p1: float
    p1_printed: float
    p2_printed: float
    p3: float
    denom_q: float
    denom_p: float


def internal_aux(p: MaterialParams) -> InternalAux:
    me, le, mm, lm, mc = p.mu_e, p.lambda_e, p.mu_micro, p.lambda_micro, p.mu_c
    e1, e2, e3 = p.etas
    q1 = e1 * mc * me + e2 * (mc * (me + mm) + me * mm)
    q2 = ((e1 + e2) * mc * me + e2 * mm * (mc + me)) ** 2 - 4 * e1 * e2 * mc * me * mm * (mc + me)
    common = 2 * e3 * (3 * le * (me + mm) + 2 * me * (me + 3 * mm)) + e1 * (3 * le * (4 * me + 3 * lm + 2 * mm))
    tail = 2 * me * (4 * me + 9 * lm + 6 * mm)
    inner = le * (3 * lm * (me + mm) + 2 * mm * (3 * me + mm)) + 2 * me * (lm * (me + 3 * mm) + 2 * mm * (me + mm))
    return InternalAux(
        q1=q1,
        q2=q2,
        p1=common + e1 * tail,
        p1_printed=common + 2 * e3 * tail,
        p2_printed=common + 2 * e3 * tail,
        p3=72 * e1 * e3 * (le + 2 * me) * inner,
        denom_q=e1 * e2 * (mc + me),
        denom_p=6 * e1 * e3 * (le + 2 * me),
    )


@dataclass(frozen=True)
class InternalLevels:
    omega_l: float | None
    omega_t: float | None
    omega_1: float | None
    omega_2: float | None


def _pair(center, disc, denom):
    # (center -+ sqrt(disc))/denom under a square root; None when not real
    if disc < 0 or denom == 0:
        return None, None
    root = math.sqrt(disc)
    out = []
    for v in (center - root, center + root):
        w = v / denom
        out.append(math.sqrt(w) if w >= 0 else None)
    return tuple(out)


def internal_levels(p: MaterialParams, corrected: bool = False) -> InternalLevels:
    a = internal_aux(p)
    if corrected:
        pl, p1 = _pair(a.p1, a.p1 ** 2 - a.p3, a.denom_p)
    else:
        pl, p1 = _pair(a.p1_printed, a.p2_printed ** 2 - a.p3, a.denom_p)
    qt, q2 = _pair(a.q1, a.q2, a.denom_q)
    return InternalLevels(omega_l=pl, omega_t=qt, omega_1=p1, omega_2=q2)


def _dedup(values, rel=1e-8):
    out = []
    for v in sorted(values):
        if out and abs(v - out[-1]) <= rel * max(v, out[-1], 1e-300):
            continue
        out.append(v)
    return out


def alpha_profile(p: MaterialParams) -> str:
    a1, a2, a3 = p.alphas
    if a1 == 0 and a2 == 0 and a3 == 0:
        return "internal_variable"
    if a1 > 0 and a2 > 0:
        return "relaxed"
    return "other"


def horizontal_asymptotes(p: MaterialParams, model: Model, corrected: bool = False):
    """Candidate plateau levels omega* (rad/s), ascending.

    The internal-variable set is the literal closed-form one, with
    sqrt(2(mu_e+mu_c)/eta1) and the p-pair built on p1 = p2 as printed.
    Two of those values do not zero the leading determinant row; use
    ``cross_check_horizontal`` to see which. ``corrected=True`` returns the
    set that does: omega_s from the P_(23), P^V block in place of
    sqrt(2(mu_e+mu_c)/eta1), and the p-pair with the last term of p1 carrying
    eta1 instead of 2*eta3.
    """
    _require_positive_eta(p)
    profile = alpha_profile(p)
    if model == "relaxed":
        if profile != "relaxed":
            raise ModelMismatch("relaxed asymptotes need alpha1 > 0 and alpha2 > 0")
        return _dedup([
            _sqrt(2 * p.mu_micro / (p.eta1 + p.eta2), "relaxed asymptote"),
            _sqrt(3 * (p.lambda_micro + 2 * p.mu_micro) / (2 * p.eta1 + p.eta3), "relaxed asymptote"),
        ])
    if model == "internal_variable":
        if profile != "internal_variable":
            raise ModelMismatch("internal-variable asymptotes need alpha1 = alpha2 = alpha3 = 0")
        ws, wr, _ = cutoffs(p)
        second = ws if corrected else math.sqrt(2 * (p.mu_e + p.mu_c) / p.eta1)
        lv = internal_levels(p, corrected=corrected)
        vals = [wr, second] + [v for v in (lv.omega_l, lv.omega_t, lv.omega_1, lv.omega_2) if v is not None]
        return _dedup(vals)
    raise ValueError(f"unknown model {model!r}")


def cross_check_horizontal(p: MaterialParams, model: Model, rel: float = 1e-6, corrected: bool = False):
    """Closed-form plateaus that have no matching detpoly leading root (and vice versa)."""
    from .detpoly import build_detpoly, leading_roots

    closed = horizontal_asymptotes(p, model, corrected=corrected)
    roots = leading_roots(build_detpoly(p))

    def near(v, pool):
        return any(abs(v - r) <= rel * max(v, r, 1e-300) for r in pool)

    return {
        "closed_only": [v for v in closed if not near(v, roots)],
        "detpoly_only": [r for r in roots if not near(r, closed)],
    }


def acoustic_tangents(p: MaterialParams):
    """(slope_long, slope_trans) in m/s from the macroscopic moduli."""
    m = macro_moduli(p)
    return (
        _sqrt((2 * m.mu_macro + m.lambda_macro) / p.rho, "longitudinal tangent"),
        _sqrt(m.mu_macro / p.rho, "transverse tangent"),
    )


def acoustic_tangents_raw(p: MaterialParams):
    """Same tangents written directly in the micro parameters."""
    me, le, mm, lm = p.mu_e, p.lambda_e, p.mu_micro, p.lambda_micro
    num = le * (3 * lm * (me + mm) + 2 * mm * (3 * me + mm)) + 2 * me * (lm * (me + 3 * mm) + 2 * mm * (me + mm))
    den = p.rho * (me + mm) * (2 * (me + mm) + 3 * (le + lm))
    return (
        _sqrt(num / den, "longitudinal tangent"),
        _sqrt(me * mm / (p.rho * (me + mm)), "transverse tangent"),
    )


@dataclass(frozen=True)
class Characteristics:
    omega_s: float
    omega_r: float
    omega_p: float
    c_p: float
    c_s: float
    c_m_d: float
    c_m_vd: float
    c_m_dr: float
    c_m_r: float
    horiz: tuple
    slope_aco_long: float
    slope_aco_trans: float
    horiz_mismatch: dict = field(default_factory=dict, compare=False)


def characteristics(p: MaterialParams) -> Characteristics:
    """Everything above in one record.

    Plateau levels use the closed forms when the alpha profile matches one
    of the two models and fall back to detpoly leading roots otherwise
    (tag "detpoly"). Disagreements with detpoly are kept in
    ``horiz_mismatch``.
    """
    from .detpoly import build_detpoly, leading_roots

    ws, wr, wp = cutoffs(p)
    s = oblique_slopes(p, lenient=True)
    long_, trans = acoustic_tangents(p)
    profile = alpha_profile(p)
    if profile in ("relaxed", "internal_variable"):
        horiz = tuple((v, profile) for v in horizontal_asymptotes(p, profile))
        mismatch = cross_check_horizontal(p, profile)
        mismatch = {k: v for k, v in mismatch.items() if v}
    else:
        horiz = tuple((v, "detpoly") for v in leading_roots(build_detpoly(p)))
        mismatch = {}
    return Characteristics(
        omega_s=ws, omega_r=wr, omega_p=wp,
        c_p=s.c_p, c_s=s.c_s, c_m_d=s.c_m_d, c_m_vd=s.c_m_vd, c_m_dr=s.c_m_dr, c_m_r=s.c_m_r,
        horiz=horiz, slope_aco_long=long_, slope_aco_trans=trans, horiz_mismatch=mismatch,
    )
