"""Dispersion of the limit models: Cauchy, weighted Cosserat, internal variable, couple stress.

Infinite-stiffness or infinite-inertia limits are not represented here;
tests approach them with large finite surrogates of the full model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .branches import BranchSet, DispersionBranch, KGrid, compute_branches
from .errors import InvalidParams
from .params import MacroModuli, MaterialParams

Tag = Literal["cauchy", "cosserat", "internal_variable", "couple_stress"]

USED_FIELDS = {
    "cauchy": ("mu_macro", "lambda_macro", "rho"),
    "cosserat": ("mu_e", "lambda_e", "mu_c", "L_c", "rho", "eta2", "alpha1", "alpha2", "alpha3"),
    "internal_variable": ("mu_e", "lambda_e", "mu_micro", "lambda_micro", "mu_c", "L_c", "rho",
                          "eta1", "eta2", "eta3"),
    "couple_stress": ("mu_e", "lambda_e", "rho", "L_c", "alpha1", "alpha2"),
}


@dataclass(frozen=True)
class LimitModel:
    tag: Tag
    values: dict

    @classmethod
    def from_params(cls, tag: Tag, p: MaterialParams) -> "LimitModel":
        if tag == "cauchy":
            from .params import macro_moduli

            m = macro_moduli(p)
            return cls(tag, {"mu_macro": m.mu_macro, "lambda_macro": m.lambda_macro, "rho": p.rho})
        return cls(tag, {f: getattr(p, f) for f in USED_FIELDS[tag]})


def cauchy_curves(m: MacroModuli, rho: float, k):
    """Longitudinal and transverse lines of the classical continuum."""
    if not rho > 0:
        raise InvalidParams("rho must be positive")
    k = np.asarray(k, dtype=float)
    long_ = math.sqrt((2 * m.mu_macro + m.lambda_macro) / rho) * k
    trans = math.sqrt(m.mu_macro / rho) * k
    if long_.ndim == 0:
        return float(long_), float(trans)
    return long_, trans


def _check_cosserat(p: MaterialParams):
    if not p.rho > 0:
        raise InvalidParams("rho must be positive")
    if not p.eta2 > 0:
        raise InvalidParams("eta2 must be positive")
    if not p.mu_c >= 0:
        raise InvalidParams("mu_c must be non-negative")
    if not p.L_c >= 0:
        raise InvalidParams("L_c must be non-negative")


def cosserat_asymptotes(p: MaterialParams):
    """(c1, c2, c3, c4): rotational, shear, transverse-acoustic and longitudinal slopes."""
    _check_cosserat(p)
    curv = p.mu_e * p.L_c ** 2
    rad = [
        (p.alpha1 + 2 * p.alpha3) * curv / (3 * p.eta2),
        (p.mu_c + p.mu_e) / p.rho,
        (p.alpha1 + p.alpha2) * curv / p.eta2,
        (p.lambda_e + 2 * p.mu_e) / p.rho,
    ]
    if min(rad) < 0:
        raise InvalidParams("negative radicand in Cosserat asymptotes")
    c1, c2, c3, c4 = (math.sqrt(r) for r in rad)
    return c1, c2, 0.5 * c3, c4


def cosserat_transverse_block(p: MaterialParams, k: float):
    """Symmetric 2x2 block for (u_xi, axl skew P) at wavenumber k: (a11, a22, a12)."""
    _check_cosserat(p)
    a11 = (p.mu_e + p.mu_c) / p.rho * k * k
    a22 = (p.alpha1 + p.alpha2) * p.mu_e * p.L_c ** 2 / (4 * p.eta2) * k * k + 2 * p.mu_c / p.eta2
    a12 = -math.sqrt(2.0) * p.mu_c / math.sqrt(p.rho * p.eta2) * k
    return a11, a22, a12


def _eig2(a11, a22, a12):
    mean = 0.5 * (a11 + a22)
    rad = math.hypot(0.5 * (a11 - a22), a12)
    hi = mean + rad
    # product form for the small root avoids cancellation
    det = a11 * a22 - a12 * a12
    lo = det / hi if hi > 0 else mean - rad
    return max(lo, 0.0), max(hi, 0.0)


def cosserat_branches(p: MaterialParams, grid: KGrid) -> BranchSet:
    """LA, TA, TO (transverse pair, multiplicity 2) and the uncoupled TRO."""
    _check_cosserat(p)
    ks = grid.values()
    cp = math.sqrt((2 * p.mu_e + p.lambda_e) / p.rho)
    cvd2 = (p.alpha1 + 2 * p.alpha3) * p.mu_e * p.L_c ** 2 / (3 * p.eta2)
    wr2 = 2 * p.mu_c / p.eta2
    ta = np.empty_like(ks)
    to = np.empty_like(ks)
    for i, k in enumerate(ks):
        lo, hi = _eig2(*cosserat_transverse_block(p, float(k)))
        ta[i], to[i] = math.sqrt(lo), math.sqrt(hi)
    branches = (
        DispersionBranch("LA", "longitudinal", 1, ks, cp * ks),
        DispersionBranch("TA", "transverse", 2, ks, ta),
        DispersionBranch("TO", "transverse", 2, ks, to),
        DispersionBranch("TRO", "uncoupled", 1, ks, np.sqrt(cvd2 * ks * ks + wr2)),
    )
    return BranchSet(branches, grid, model="cosserat")


def internal_variable_branches(p: MaterialParams, grid: KGrid) -> BranchSet:
    """Full model with all curvature weights set to zero."""
    q = p.replace(alpha1=0.0, alpha2=0.0, alpha3=0.0)
    bs = compute_branches(q, grid)
    return BranchSet(bs.branches, grid, model="internal_variable")


def couple_stress_branches(p: MaterialParams, grid: KGrid) -> BranchSet:
    """Two acoustic branches of the indeterminate couple stress model.

    rho w^2 = (2 mu_e + lambda_e) k^2 for longitudinal waves and
    rho w^2 = mu_e k^2 + mu_e L_c^2 (alpha1 + alpha2)/8 k^4 for each
    transverse polarization. See docs/couple_stress.md for the reduction.
    """
    if not p.rho > 0:
        raise InvalidParams("rho must be positive")
    if not p.mu_e > 0:
        raise InvalidParams("mu_e must be positive")
    if not p.L_c >= 0:
        raise InvalidParams("L_c must be non-negative")
    ks = grid.values()
    long_ = math.sqrt((2 * p.mu_e + p.lambda_e) / p.rho) * ks
    curv = p.mu_e * p.L_c ** 2 * (p.alpha1 + p.alpha2) / 8.0
    w2 = (p.mu_e * ks ** 2 + curv * ks ** 4) / p.rho
    if np.any(w2 < 0):
        raise InvalidParams("transverse couple-stress branch turns imaginary")
    branches = (
        DispersionBranch("LA", "longitudinal", 1, ks, long_),
        DispersionBranch("TA", "transverse", 2, ks, np.sqrt(w2)),
    )
    return BranchSet(branches, grid, model="couple_stress")
