"""Implementations behind the ``disp`` subcommands."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

from ..branches import (
    compute_branches,
    default_omega_grid,
    detect_band_gaps,
    edge_provenance,
)
from ..characteristics import characteristics
from ..errors import ModelMismatch
from ..limits import cauchy_curves, cosserat_asymptotes, cosserat_branches, couple_stress_branches
from ..params import macro_moduli
from .config import RunConfig
from .svg import render_svg

HEADER = ("k", "LA", "TA", "LO1", "LO2", "TO1", "TO2", "TRO", "LSO", "TCVO_1", "TCVO_2", "TS_dup", "LS_dup")
# CSV column -> branch label; the last three repeat the second transverse polarization
COLUMN_SOURCE = {
    "LA": "LA", "TA": "TA", "LO1": "LO1", "LO2": "LO2", "TO1": "TO1", "TO2": "TO2",
    "TRO": "TRO", "LSO": "LSO", "TCVO_1": "TCVO", "TCVO_2": "TA", "TS_dup": "TO1", "LS_dup": "TO2",
}


def _fmt(v) -> str:
    return format(float(v), ".9g")


def model_params(cfg: RunConfig):
    p = cfg.params
    if cfg.model == "internal_variable":
        p = p.replace(alpha1=0.0, alpha2=0.0, alpha3=0.0)
    return p


def dispersion_csv(cfg: RunConfig, workers: int | None = None) -> str:
    p = model_params(cfg)
    grid = cfg.grid
    if cfg.model in ("relaxed", "internal_variable"):
        bs = compute_branches(p, grid, max_workers=workers)
        cols = [bs[COLUMN_SOURCE[h]].omega for h in HEADER[1:]]
        header = HEADER
    else:
        if cfg.model == "cosserat":
            bs = cosserat_branches(p, grid)
        elif cfg.model == "couple_stress":
            bs = couple_stress_branches(p, grid)
        else:
            long_, trans = cauchy_curves(macro_moduli(p), p.rho, grid.values())
            header = ("k", "LA", "TA", "TA_dup")
            cols = [long_, trans, trans]
            bs = None
        if bs is not None:
            header = ["k"]
            cols = []
            for b in bs:
                for i in range(b.multiplicity):
                    header.append(b.label if i == 0 else f"{b.label}_dup")
                    cols.append(b.omega)
    ks = grid.values()
    lines = [",".join(header)]
    for i, k in enumerate(ks):
        lines.append(",".join([_fmt(k)] + [_fmt(c[i]) for c in cols]))
    return "\n".join(lines) + "\n"


def _write(path, text):
    if path is None or path == "-":
        return text
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return text


def cmd_dispersion(cfg: RunConfig, out=None, workers: int | None = None) -> str:
    return _write(out, dispersion_csv(cfg, workers))


def characteristics_report(cfg: RunConfig) -> str:
    p = model_params(cfg)
    lines = [f"model = {cfg.model}"]
    if cfg.model == "cosserat":
        c = cosserat_asymptotes(p)
        names = ("c1_cos = c_m_vd", "c2_cos = c_s", "c3_cos = 0.5*sqrt((alpha1+alpha2)mu_e L_c^2/eta2)", "c4_cos = c_p")
        for v, n in zip(c, names):
            lines.append(f"{n.split(' ')[0]} = {v:.9g} m/s  [{n}]")
        return "\n".join(lines) + "\n"
    if cfg.model in ("couple_stress", "cauchy"):
        m = macro_moduli(p)
        lines.append(f"mu_macro = {m.mu_macro:.9g} Pa  [mu_e mu_micro/(mu_e+mu_micro)]")
        lines.append(f"lambda_macro = {m.lambda_macro:.9g} Pa  [kappa_macro - 2 mu_macro/3]")
        return "\n".join(lines) + "\n"
    c = characteristics(p)
    rows = [
        ("omega_s", c.omega_s, "rad/s", "sqrt(2(mu_e+mu_micro)/eta1)"),
        ("omega_r", c.omega_r, "rad/s", "sqrt(2 mu_c/eta2)"),
        ("omega_p", c.omega_p, "rad/s", "sqrt((3(lambda_e+lambda_micro)+2(mu_e+mu_micro))/eta3)"),
        ("c_p", c.c_p, "m/s", "sqrt((2 mu_e+lambda_e)/rho)"),
        ("c_s", c.c_s, "m/s", "sqrt((mu_e+mu_c)/rho)"),
        ("c_m_d", c.c_m_d, "m/s", "sqrt(alpha1 mu_e L_c^2/eta1)"),
        ("c_m_vd", c.c_m_vd, "m/s", "sqrt((alpha1+2 alpha3) mu_e L_c^2/(3 eta2))"),
        ("c_m_dr", c.c_m_dr, "m/s", "0.5 sqrt((eta1+eta2)/(eta1 eta2) (alpha1+alpha2) mu_e L_c^2)"),
        ("c_m_r", c.c_m_r, "m/s", "sqrt((2 eta1+eta3)/(3 eta1 eta3) alpha2 mu_e L_c^2)"),
    ]
    for name, v, unit, formula in rows:
        lines.append(f"{name} = {v:.9g} {unit}  [{formula}]")
    unmatched = set(c.horiz_mismatch.get("closed_only", ()))
    for i, (v, tag) in enumerate(c.horiz, start=1):
        note = "closed form, not a detpoly leading root" if v in unmatched else "plateau"
        lines.append(f"horiz_{i} = {v:.9g} rad/s  [{tag} {note}]")
    lines.append(f"slope_aco_long = {c.slope_aco_long:.9g} m/s  [sqrt((2 mu_macro+lambda_macro)/rho)]")
    lines.append(f"slope_aco_trans = {c.slope_aco_trans:.9g} m/s  [sqrt(mu_macro/rho)]")
    for key, vals in c.horiz_mismatch.items():
        lines.append(f"# {key}: " + ", ".join(f"{v:.9g}" for v in vals))
    return "\n".join(lines) + "\n"


def cmd_characteristics(cfg: RunConfig, out=None) -> str:
    return _write(out, characteristics_report(cfg))


def bandgap_report(cfg: RunConfig) -> str:
    if cfg.model not in ("relaxed", "internal_variable"):
        raise ModelMismatch(f"band gaps are computed for the micromorphic models, not {cfg.model}")
    p = model_params(cfg)
    rep = detect_band_gaps(p, default_omega_grid(p))
    lines = [f"scan {rep.omega_min:.9g} .. {rep.omega_max:.9g} rad/s, {rep.count} points, "
             f"edges refined to {rep.refine_rel:g} relative"]
    if not rep.intervals:
        lines.append("no complete band gap")
    for i, (lo, hi) in enumerate(rep.intervals, start=1):
        lines.append(f"gap {i}: {lo:.9g} .. {hi:.9g} rad/s")
        lines.append(f"  lower edge: {edge_provenance(p, lo)}")
        lines.append(f"  upper edge: {edge_provenance(p, hi)}")
    return "\n".join(lines) + "\n"


def cmd_bandgap(cfg: RunConfig, out=None) -> str:
    return _write(out, bandgap_report(cfg))


def _sweep_name(key, index):
    return f"sweep_{key}_{index:03d}.csv"


def cmd_sweep(cfg: RunConfig, out_dir: str, workers: int | None = None):
    """One dispersion CSV per sweep value, then index.csv."""
    from .config import _checked

    if cfg.sweep_param is None:
        raise ModelMismatch("config has no sweep_param/sweep_values")
    os.makedirs(out_dir, exist_ok=True)
    entries = []
    for i, v in enumerate(cfg.sweep_values):
        entries.append((i, v, _checked(cfg.with_value(cfg.sweep_param, v), cfg.mode)))

    def run(entry):
        i, _, c = entry
        path = os.path.join(out_dir, _sweep_name(cfg.sweep_param, i))
        _write(path, dispersion_csv(c))
        return path

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            paths = list(pool.map(run, entries))
    else:
        paths = [run(e) for e in entries]
    index = ["index,param,value,file"]
    for (i, v, _), path in zip(entries, paths):
        index.append(f"{i},{cfg.sweep_param},{v!r},{os.path.basename(path)}")
    _write(os.path.join(out_dir, "index.csv"), "\n".join(index) + "\n")
    return paths


def cmd_plot(csv_path: str, out=None) -> str:
    with open(csv_path, encoding="utf-8") as fh:
        text = fh.read()
    svg = render_svg(text)
    return _write(out, svg)
