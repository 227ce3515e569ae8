"""Plane-wave dispersion analysis for the weighted isotropic relaxed micromorphic continuum."""

from .blocks import BlockSet, OmegaSpectrum, assemble_blocks, omega_spectrum
from .branches import (
    BandGapReport,
    BranchSet,
    DispersionBranch,
    KGrid,
    compute_branches,
    detect_band_gaps,
    numeric_asymptote,
)
from .characteristics import (
    Characteristics,
    acoustic_tangents,
    characteristics,
    cutoffs,
    horizontal_asymptotes,
    oblique_slopes,
)
from .detpoly import BiPoly, build_detpoly, coefficient, leading_roots
from .limits import (
    cauchy_curves,
    cosserat_asymptotes,
    cosserat_branches,
    couple_stress_branches,
    internal_variable_branches,
)
from .numkernels import RealRoots, SymBlock3, real_roots_poly, symeig3
from .params import MacroModuli, MaterialParams, ValidationReport, beta_plus, macro_moduli, validate

__version__ = "0.1.0"
