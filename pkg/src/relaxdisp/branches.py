"""Sampled dispersion branches, their asymptotic behaviour, and band gaps."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .blocks import _coefficients, _spectrum, assemble_blocks, check_params
from .errors import InsufficientRange, InvalidGrid
from .numkernels import SymBlock3, real_roots_poly, symeig3
from .params import MaterialParams

LONGITUDINAL = ("LA", "LO1", "LO2")
TRANSVERSE = ("TA", "TO1", "TO2")
# uncoupled block order: P_(23), P_[23], P^V
UNCOUPLED = ("TCVO", "TRO", "LSO")
LABELS = LONGITUDINAL + TRANSVERSE + ("TRO", "LSO", "TCVO")


@dataclass(frozen=True)
class KGrid:
    k_min: float
    k_max: float
    count: int = 400
    spacing: Literal["linear", "log"] = "linear"

    def __post_init__(self):
        if not (math.isfinite(self.k_min) and math.isfinite(self.k_max)):
            raise InvalidGrid("grid bounds must be finite")
        if self.k_min < 0:
            raise InvalidGrid("k_min must be >= 0")
        if self.k_max <= self.k_min:
            raise InvalidGrid("k_max must exceed k_min")
        if int(self.count) != self.count or self.count < 2:
            raise InvalidGrid("count must be an integer >= 2")
        if self.spacing not in ("linear", "log"):
            raise InvalidGrid(f"unknown spacing {self.spacing!r}")
        if self.spacing == "log" and self.k_min <= 0:
            raise InvalidGrid("log spacing needs k_min > 0")

    @classmethod
    def default(cls, p: MaterialParams) -> "KGrid":
        return cls(0.0, 10.0 / p.L_c, 400, "linear")

    def values(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.k_min, self.k_max, int(self.count))
        return np.linspace(self.k_min, self.k_max, int(self.count))


@dataclass(frozen=True)
class DispersionBranch:
    label: str
    group: Literal["longitudinal", "transverse", "uncoupled"]
    multiplicity: int
    k: np.ndarray
    omega: np.ndarray
    bounded: bool = False

    @property
    def samples(self):
        return list(zip(self.k.tolist(), self.omega.tolist()))


@dataclass(frozen=True)
class BranchSet:
    branches: tuple
    grid: KGrid | None = None
    model: str = "relaxed"

    def __getitem__(self, label) -> DispersionBranch:
        for b in self.branches:
            if b.label == label:
                return b
        raise KeyError(label)

    def __iter__(self):
        return iter(self.branches)

    def __len__(self):
        return len(self.branches)

    @property
    def labels(self):
        return tuple(b.label for b in self.branches)

    @property
    def curve_count(self) -> int:
        return sum(b.multiplicity for b in self.branches)

    def curves(self):
        """One array per curve, transverse branches repeated."""
        out = []
        for b in self.branches:
            out.extend([b.omega] * b.multiplicity)
        return out


def _nullity(block: SymBlock3) -> int:
    lams = symeig3(block)
    top = max(abs(v) for v in lams)
    if top == 0.0:
        return 3
    return sum(1 for v in lams if abs(v) <= 1e-10 * top)


def bounded_counts(p: MaterialParams):
    """Number of bounded branches per coupled block, from the k^2 coefficient matrices."""
    s1, s2, _ = _coefficients(p)
    return tuple(_nullity(SymBlock3(*(c[2] for c in s))) for s in (s1, s2))


def _uncoupled_bounded(p: MaterialParams):
    _, _, s4 = _coefficients(p)
    return tuple(s4[i][2] == 0.0 for i in range(3))


def _rows(p, ks):
    out = np.empty((len(ks), 9))
    for i, k in enumerate(ks):
        b = assemble_blocks(p, float(k))
        s = _spectrum(b)
        d = b.S4
        out[i, 0:3] = s.longitudinal
        out[i, 3:6] = s.transverse
        out[i, 6:9] = [math.sqrt(max(v, 0.0)) for v in (d.a11, d.a22, d.a33)]
    return out


def compute_branches(p: MaterialParams, grid: KGrid, max_workers: int | None = None) -> BranchSet:
    """Sample the nine distinct branches (twelve curves) on ``grid``.

    Within the coupled blocks the j-th branch is the j-th smallest
    eigenfrequency at every k. Uncoupled branches follow their field.
    Chunks may run on a thread pool; the result is assembled in grid
    order and does not depend on scheduling.
    """
    check_params(p)
    ks = grid.values()
    if max_workers and max_workers > 1 and len(ks) > 1:
        chunks = np.array_split(ks, min(max_workers * 4, len(ks)))
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            parts = list(pool.map(lambda c: _rows(p, c), chunks))
        table = np.vstack(parts)
    else:
        table = _rows(p, ks)

    n1, n2 = bounded_counts(p)
    ub = _uncoupled_bounded(p)
    branches = []
    for j, lab in enumerate(LONGITUDINAL):
        branches.append(DispersionBranch(lab, "longitudinal", 1, ks, table[:, j].copy(), j < n1))
    for j, lab in enumerate(TRANSVERSE):
        branches.append(DispersionBranch(lab, "transverse", 2, ks, table[:, 3 + j].copy(), j < n2))
    by_field = {lab: j for j, lab in enumerate(UNCOUPLED)}
    for lab in ("TRO", "LSO", "TCVO"):
        j = by_field[lab]
        branches.append(DispersionBranch(lab, "uncoupled", 1, ks, table[:, 6 + j].copy(), ub[j]))
    return BranchSet(tuple(branches), grid)


@dataclass(frozen=True)
class Asymptote:
    kind: Literal["oblique", "horizontal"]
    value: float
    elasticity: float = field(default=float("nan"), compare=False)


def asymptote_grid(k_max: float = 5e4, count: int = 400) -> KGrid:
    """Log grid used for tail estimates; the last decade is well resolved."""
    return KGrid(k_max / 1e3, k_max, count, "log")


def _interp(branch, k):
    return float(np.interp(k, branch.k, branch.omega))


def numeric_asymptote(branch: DispersionBranch, L_c: float | None = None, tail_ratio: float = 5.0) -> Asymptote:
    """Classify the large-k behaviour of a sampled branch.

    The log-log slope over the last decade decides: close to 1 is linear
    growth, close to 0 is a plateau; 0.5 splits them. Oblique branches
    return the secant slope over [k_max/tail_ratio, k_max], horizontal ones
    the mean level over that window.
    """
    k_end = float(branch.k[-1])
    if L_c is not None and L_c > 0 and k_end < 50.0 / L_c:
        raise InsufficientRange(f"k_max = {k_end:g} is below 50/L_c = {50.0 / L_c:g}")
    k_dec = k_end / 10.0
    if k_dec < branch.k[0]:
        raise InsufficientRange("branch does not span a full decade")
    w_end = _interp(branch, k_end)
    w_dec = _interp(branch, k_dec)
    if w_end <= 0.0 or w_dec <= 0.0:
        elasticity = 0.0 if w_end == w_dec else 1.0
    else:
        elasticity = math.log(w_end / w_dec) / math.log(10.0)
    k_lo = k_end / tail_ratio
    if elasticity < 0.5:
        mask = branch.k >= k_lo
        return Asymptote("horizontal", float(np.mean(branch.omega[mask])), elasticity)
    slope = (w_end - _interp(branch, k_lo)) / (k_end - k_lo)
    return Asymptote("oblique", slope, elasticity)


@dataclass(frozen=True)
class BandGapReport:
    intervals: tuple
    omega_min: float
    omega_max: float
    count: int
    refine_rel: float = 1e-4


def _block_polys(p):
    from .detpoly import build_detpoly

    return build_detpoly(p).factors


def _propagates(factors, omega) -> bool:
    for f in factors:
        c, m = f.at_omega(omega)
        c = np.where(np.abs(c) <= 1e-12 * m, 0.0, c)
        if not np.any(c):
            return True
        roots = real_roots_poly(list(c)).roots
        if not roots:
            continue
        scale = max(1.0, max(abs(r) for r in roots))
        if any(r >= -1e-12 * scale for r in roots):
            return True
    return False


def _refine(factors, lo, hi, lo_state, rel):
    # lo has state lo_state, hi has the opposite one
    while hi - lo > rel * max(abs(hi), abs(lo), 1e-300):
        mid = 0.5 * (lo + hi)
        if _propagates(factors, mid) == lo_state:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def detect_band_gaps(p: MaterialParams, omega_grid, refine_rel: float = 1e-4) -> BandGapReport:
    """Frequency intervals where no block admits a real k.

    At fixed omega each block determinant is a cubic in x = k^2; omega
    propagates when some block has a root x >= 0 (up to round-off).
    Maximal runs of non-propagating samples become gaps; their inner edges
    are refined by bisection.
    """
    check_params(p)
    om = np.asarray(omega_grid, dtype=float)
    if om.ndim != 1 or om.size < 100:
        raise InvalidGrid("omega grid needs at least 100 points")
    if np.any(np.diff(om) <= 0):
        raise InvalidGrid("omega grid must be strictly ascending")
    factors = _block_polys(p)
    states = [_propagates(factors, float(w)) for w in om]
    gaps = []
    i = 0
    n = len(om)
    while i < n:
        if states[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and not states[j + 1]:
            j += 1
        lo = float(om[0]) if i == 0 else _refine(factors, float(om[i - 1]), float(om[i]), True, refine_rel)
        hi = float(om[-1]) if j == n - 1 else _refine(factors, float(om[j]), float(om[j + 1]), False, refine_rel)
        if hi > lo:
            gaps.append((lo, hi))
        i = j + 1
    return BandGapReport(tuple(gaps), float(om[0]), float(om[-1]), n, refine_rel)


def default_omega_grid(p: MaterialParams, count: int = 2000) -> np.ndarray:
    from .characteristics import cutoffs

    top = max(cutoffs(p))
    return np.linspace(0.0, 1.5 * top if top > 0 else 1.0, count)


def edge_provenance(p: MaterialParams, value: float, rel: float = 5e-3) -> str:
    """Name of the closed-form quantity an edge sits on, or "numeric"."""
    from .characteristics import alpha_profile, cutoffs, horizontal_asymptotes

    ws, wr, wp = cutoffs(p)
    named = [("omega_s", ws), ("omega_r", wr), ("omega_p", wp)]
    profile = alpha_profile(p)
    if profile == "relaxed":
        named += [
            ("horizontal asymptote sqrt(2 mu_micro/(eta1+eta2))", math.sqrt(2 * p.mu_micro / (p.eta1 + p.eta2))),
            ("horizontal asymptote sqrt(3(lambda_micro+2mu_micro)/(2eta1+eta3))",
             math.sqrt(3 * (p.lambda_micro + 2 * p.mu_micro) / (2 * p.eta1 + p.eta3))),
        ]
    elif profile == "internal_variable":
        # edges sit on real plateaus, so use the set that zeroes the leading row
        named += [("horizontal asymptote (internal variable)", v)
                  for v in horizontal_asymptotes(p, "internal_variable", corrected=True)]
    for name, v in named:
        if v > 0 and abs(value - v) <= rel * v:
            return name
    return "numeric"
