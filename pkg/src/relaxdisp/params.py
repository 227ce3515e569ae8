"""Material parameters of the weighted relaxed micromorphic continuum.

All quantities are stored in SI units: stresses in Pa, lengths in m, the
macroscopic density in kg/m^3 and the micro-inertia weights in kg/m.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Literal

from .errors import DegenerateDenominator

Mode = Literal["strict", "exploratory"]

FIELD_NAMES = (
    "mu_e", "lambda_e", "mu_micro", "lambda_micro", "mu_c", "L_c", "rho",
    "eta1", "eta2", "eta3", "alpha1", "alpha2", "alpha3",
)


@dataclass(frozen=True)
class MaterialParams:
    mu_e: float
    lambda_e: float
    mu_micro: float
    lambda_micro: float
    mu_c: float
    L_c: float
    rho: float
    eta1: float = 1e-2
    eta2: float = 1e-2
    eta3: float = 1e-2
    alpha1: float = 1.0
    alpha2: float = 1.0
    alpha3: float = 1.0

    @classmethod
    def table1(cls, **overrides) -> "MaterialParams":
        """Reference metamaterial (200/400/100/100/440 MPa, 3 mm, 2000 kg/m^3)."""
        base = cls(
            mu_e=2e8, lambda_e=4e8, mu_micro=1e8, lambda_micro=1e8,
            mu_c=4.4e8, L_c=3e-3, rho=2000.0,
        )
        return base.replace(**overrides) if overrides else base

    def replace(self, **changes) -> "MaterialParams":
        return dataclasses.replace(self, **changes)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)

    @property
    def alphas(self) -> tuple:
        return (self.alpha1, self.alpha2, self.alpha3)

    @property
    def etas(self) -> tuple:
        return (self.eta1, self.eta2, self.eta3)


@dataclass(frozen=True)
class Violation:
    field: str
    condition: str
    value: float


@dataclass(frozen=True)
class ValidationReport:
    mode: Mode
    violations: tuple = ()
    # strict-mode inequalities that exploratory mode tolerates
    warnings: tuple = field(default=(), compare=False)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return f"admissible ({self.mode})"
        return "; ".join(f"{v.condition} violated ({v.field} -> {v.value:g})" for v in self.violations)


def _basic_checks(p: MaterialParams):
    out = []
    for name in FIELD_NAMES:
        value = getattr(p, name)
        if not math.isfinite(value):
            out.append(Violation(name, f"{name} finite", value))
    if p.rho <= 0:
        out.append(Violation("rho", "rho > 0", p.rho))
    if p.L_c < 0:
        out.append(Violation("L_c", "L_c >= 0", p.L_c))
    for i, eta in enumerate(p.etas, start=1):
        if eta <= 0:
            out.append(Violation(f"eta{i}", f"eta{i} > 0", eta))
    return out


def _well_posedness_checks(p: MaterialParams):
    out = []
    if not 3 * p.lambda_e + 2 * p.mu_e > 0:
        out.append(Violation("lambda_e", "3*lambda_e + 2*mu_e > 0", 3 * p.lambda_e + 2 * p.mu_e))
    if not p.mu_e > 0:
        out.append(Violation("mu_e", "mu_e > 0", p.mu_e))
    if not p.mu_micro > 0:
        out.append(Violation("mu_micro", "mu_micro > 0", p.mu_micro))
    if not 3 * p.lambda_micro + 2 * p.mu_micro > 0:
        out.append(Violation("lambda_micro", "3*lambda_micro + 2*mu_micro > 0",
                             3 * p.lambda_micro + 2 * p.mu_micro))
    if not p.mu_c >= 0:
        out.append(Violation("mu_c", "mu_c >= 0", p.mu_c))
    if not p.L_c > 0:
        out.append(Violation("L_c", "L_c > 0", p.L_c))
    if not p.alpha1 > 0:
        out.append(Violation("alpha1", "alpha1 > 0", p.alpha1))
    if not p.alpha2 > 0:
        out.append(Violation("alpha2", "alpha2 > 0", p.alpha2))
    if not p.alpha3 >= 0:
        out.append(Violation("alpha3", "alpha3 >= 0", p.alpha3))
    return out


def _sorted(violations) -> tuple:
    unique = {(v.field, v.condition): v for v in violations}
    return tuple(unique[key] for key in sorted(unique))


def validate(p: MaterialParams, mode: Mode = "strict") -> ValidationReport:
    """Check ``p`` against the admissibility rules of ``mode``.

    Strict mode enforces the well-posedness inequalities. Exploratory mode
    only insists on what the plane-wave reduction needs (finite values,
    positive density and micro-inertia, non-negative length) and demotes the
    remaining inequalities to warnings, so that sweeps through vanishing or
    negative weights stay possible. Never raises.
    """
    if mode not in ("strict", "exploratory"):
        raise ValueError(f"unknown validation mode {mode!r}")
    basic = _basic_checks(p)
    posed = _well_posedness_checks(p)
    if mode == "strict":
        return ValidationReport(mode, _sorted(basic + posed))
    return ValidationReport(mode, _sorted(basic), warnings=_sorted(posed))


@dataclass(frozen=True)
class MacroModuli:
    mu_macro: float
    lambda_macro: float
    kappa_macro: float


def macro_moduli(p: MaterialParams) -> MacroModuli:
    """Effective Lame moduli of the long-wavelength (Cauchy) limit."""
    shear_sum = p.mu_e + p.mu_micro
    if shear_sum == 0:
        raise DegenerateDenominator("mu_e + mu_micro vanishes")
    bulk_e = 2 * p.mu_e + 3 * p.lambda_e
    bulk_micro = 2 * p.mu_micro + 3 * p.lambda_micro
    bulk_sum = bulk_e + bulk_micro
    if bulk_sum == 0:
        raise DegenerateDenominator("2(mu_e + mu_micro) + 3(lambda_e + lambda_micro) vanishes")
    mu_macro = p.mu_e * p.mu_micro / shear_sum
    # single fraction over the common denominator 3*bulk_sum*shear_sum
    lambda_macro = (bulk_e * bulk_micro * shear_sum - 2 * p.mu_e * p.mu_micro * bulk_sum) / (
        3 * bulk_sum * shear_sum
    )
    kappa_macro = bulk_e * bulk_micro / (3 * bulk_sum)
    return MacroModuli(mu_macro, lambda_macro, kappa_macro)


def beta_plus(p: MaterialParams) -> float:
    """Share ``mu_e/(mu_e+mu_micro)`` of the displacement gradient carried by P."""
    shear_sum = p.mu_e + p.mu_micro
    if shear_sum == 0:
        raise DegenerateDenominator("mu_e + mu_micro vanishes")
    return p.mu_e / shear_sum
