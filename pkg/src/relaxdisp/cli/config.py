"""Flat ``key = value`` run configuration in MPa / mm units."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field

from ..branches import KGrid
from ..errors import MissingKey, ParseError, RangeError, UnitError, UnknownKey
from ..params import MaterialParams, validate

# config key -> (field name, factor to SI, accepted unit suffix)
MATERIAL_KEYS = {
    "mu_e_mpa": ("mu_e", 1e6, "mpa"),
    "lambda_e_mpa": ("lambda_e", 1e6, "mpa"),
    "mu_micro_mpa": ("mu_micro", 1e6, "mpa"),
    "lambda_micro_mpa": ("lambda_micro", 1e6, "mpa"),
    "mu_c_mpa": ("mu_c", 1e6, "mpa"),
    "L_c_mm": ("L_c", 1e-3, "mm"),
    "rho_kg_m3": ("rho", 1.0, "kg/m3"),
    "eta1_kg_m": ("eta1", 1.0, "kg/m"),
    "eta2_kg_m": ("eta2", 1.0, "kg/m"),
    "eta3_kg_m": ("eta3", 1.0, "kg/m"),
    "alpha1": ("alpha1", 1.0, ""),
    "alpha2": ("alpha2", 1.0, ""),
    "alpha3": ("alpha3", 1.0, ""),
}
REQUIRED = ("mu_e_mpa", "lambda_e_mpa", "mu_micro_mpa", "lambda_micro_mpa", "mu_c_mpa", "L_c_mm", "rho_kg_m3")
FIELD_TO_KEY = {v[0]: k for k, v in MATERIAL_KEYS.items()}
MODELS = ("relaxed", "internal_variable", "cosserat", "couple_stress", "cauchy")
OTHER_KEYS = ("model", "k_min_inv_m", "k_max_inv_m", "k_count", "k_spacing", "sweep_param", "sweep_values")
ALL_KEYS = tuple(MATERIAL_KEYS) + OTHER_KEYS


@dataclass(frozen=True)
class RunConfig:
    """Values are kept in config units so that rendering is lossless."""

    mu_e_mpa: float
    lambda_e_mpa: float
    mu_micro_mpa: float
    lambda_micro_mpa: float
    mu_c_mpa: float
    L_c_mm: float
    rho_kg_m3: float
    eta1_kg_m: float = 1e-2
    eta2_kg_m: float = 1e-2
    eta3_kg_m: float = 1e-2
    alpha1: float = 1.0
    alpha2: float = 1.0
    alpha3: float = 1.0
    model: str = "relaxed"
    k_min_inv_m: float = 0.0
    k_max_inv_m: float | None = None
    k_count: int = 400
    k_spacing: str = "linear"
    sweep_param: str | None = None
    sweep_values: tuple = ()
    mode: str = field(default="strict", compare=False)
    warnings: tuple = field(default=(), compare=False)

    @property
    def params(self) -> MaterialParams:
        kw = {name: getattr(self, key) * factor for key, (name, factor, _) in MATERIAL_KEYS.items()}
        return MaterialParams(**kw)

    @property
    def grid(self) -> KGrid:
        k_max = self.k_max_inv_m if self.k_max_inv_m is not None else 10.0 / self.params.L_c
        return KGrid(self.k_min_inv_m, k_max, self.k_count, self.k_spacing)

    def with_value(self, key: str, value: float) -> "RunConfig":
        return dataclasses.replace(self, **{key: value})


def _number(text, key, line, unit):
    parts = text.split()
    if len(parts) == 2:
        if not unit or parts[1].lower().replace("^", "") != unit:
            raise UnitError(f"{key} expects unit {unit or 'none'}, got {parts[1]!r}", line)
        text = parts[0]
    elif len(parts) != 1:
        raise ParseError(f"cannot read a number from {text!r}", line)
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"{key}: {text!r} is not a number", line) from None
    if not math.isfinite(value):
        raise ParseError(f"{key}: value must be finite", line)
    return value


def _sweep_key(name, line):
    if name in MATERIAL_KEYS:
        return name
    if name in FIELD_TO_KEY:
        return FIELD_TO_KEY[name]
    raise UnknownKey(f"sweep_param {name!r} is not one of the material parameters", line)


def parse_config(text: str, mode: str = "strict") -> RunConfig:
    """Parse and check a configuration.

    Blank lines and ``#`` comments are skipped. Material values may carry
    their unit as a second token (``200 MPa``). Unknown or repeated keys and
    any of the seven material constants missing are errors. In strict mode
    every well-posedness inequality must hold; exploratory mode keeps the
    failures as warnings.
    """
    raw = {}
    lines = {}
    for n, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ParseError(f"expected 'key = value', got {body!r}", n)
        key, value = (s.strip() for s in body.split("=", 1))
        if key not in ALL_KEYS:
            raise UnknownKey(f"unknown key {key!r}", n)
        if key in raw:
            raise ParseError(f"duplicate key {key!r}", n)
        if not value:
            raise ParseError(f"{key} has no value", n)
        raw[key] = value
        lines[key] = n

    missing = [k for k in REQUIRED if k not in raw]
    if missing:
        raise MissingKey("missing required keys: " + ", ".join(missing))

    kw = {}
    for key, (_, _, unit) in MATERIAL_KEYS.items():
        if key in raw:
            kw[key] = _number(raw[key], key, lines[key], unit)
    model = raw.get("model", "relaxed")
    if model not in MODELS:
        raise ParseError(f"model must be one of {', '.join(MODELS)}", lines.get("model"))
    kw["model"] = model
    if model == "internal_variable":
        for a in ("alpha1", "alpha2", "alpha3"):
            kw.setdefault(a, 0.0)
    for key in ("k_min_inv_m", "k_max_inv_m"):
        if key in raw:
            kw[key] = _number(raw[key], key, lines[key], "1/m")
    if "k_count" in raw:
        try:
            kw["k_count"] = int(raw["k_count"])
        except ValueError:
            raise ParseError("k_count must be an integer", lines["k_count"]) from None
    if "k_spacing" in raw:
        if raw["k_spacing"] not in ("linear", "log"):
            raise ParseError("k_spacing must be linear or log", lines["k_spacing"])
        kw["k_spacing"] = raw["k_spacing"]
    if "sweep_param" in raw:
        kw["sweep_param"] = _sweep_key(raw["sweep_param"], lines["sweep_param"])
    if "sweep_values" in raw:
        n = lines["sweep_values"]
        items = [s.strip() for s in raw["sweep_values"].split(",")]
        if not all(items):
            raise ParseError("empty entry in sweep_values", n)
        kw["sweep_values"] = tuple(_number(s, "sweep_values", n, "") for s in items)
    if ("sweep_param" in kw) != ("sweep_values" in kw):
        raise MissingKey("sweep_param and sweep_values go together")

    cfg = RunConfig(**kw, mode=mode)
    return _checked(cfg, mode, lines)


def _checked(cfg: RunConfig, mode: str, lines=None) -> RunConfig:
    lines = lines or {}
    try:
        cfg.grid
    except ValueError as exc:
        raise RangeError(str(exc)) from None
    if cfg.model in ("cosserat", "couple_stress", "cauchy"):
        return dataclasses.replace(cfg, mode=mode)
    p = cfg.params
    if cfg.model == "internal_variable":
        # vanishing curvature weights define this model; judge the rest
        p = p.replace(alpha1=1.0, alpha2=1.0, alpha3=1.0)
    report = validate(p, mode)
    if not report.ok:
        first = report.violations[0]
        raise RangeError(report.describe(), lines.get(FIELD_TO_KEY.get(first.field)))
    warns = tuple(f"{w.condition} violated ({w.field} = {w.value:g})" for w in report.warnings)
    return dataclasses.replace(cfg, mode=mode, warnings=warns)


def render_config(cfg: RunConfig) -> str:
    """Inverse of parse_config: every field written with repr precision."""
    out = []
    for key in MATERIAL_KEYS:
        out.append(f"{key} = {getattr(cfg, key)!r}")
    out.append(f"model = {cfg.model}")
    out.append(f"k_min_inv_m = {cfg.k_min_inv_m!r}")
    if cfg.k_max_inv_m is not None:
        out.append(f"k_max_inv_m = {cfg.k_max_inv_m!r}")
    out.append(f"k_count = {cfg.k_count}")
    out.append(f"k_spacing = {cfg.k_spacing}")
    if cfg.sweep_param is not None:
        out.append(f"sweep_param = {cfg.sweep_param}")
        out.append("sweep_values = " + ", ".join(repr(v) for v in cfg.sweep_values))
    return "\n".join(out) + "\n"


TABLE1_TEXT = """\
# reference metamaterial
mu_e_mpa = 200
lambda_e_mpa = 400
mu_micro_mpa = 100
lambda_micro_mpa = 100
mu_c_mpa = 440
L_c_mm = 3
rho_kg_m3 = 2000
"""
