"""Plane-wave acoustic-tensor blocks along x1 and their eigenfrequencies.

The 12x12 system splits into a longitudinal block (u1, P^D, P^S), two
identical transverse blocks (u_xi, P_(1xi), P_[1xi]) and a diagonal block
for (P_(23), P_[23], P^V). The complex blocks are similar to real symmetric
ones through a diagonal rescaling; only the symmetric forms are built here.
The returned matrices are the B_i = E_i + omega^2 * I, so their eigenvalues
are omega^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidParams, NegativeEigenvalue, NegativeWavenumber
from .numkernels import SymBlock3, symeig3
from .params import MaterialParams, validate


@dataclass(frozen=True)
class BlockSet:
    S1: SymBlock3
    S2: SymBlock3
    S4: SymBlock3
    k: float


@dataclass(frozen=True)
class OmegaSpectrum:
    """Twelve frequencies at one wavenumber; the transverse group counts twice."""

    k: float
    longitudinal: tuple
    transverse: tuple
    uncoupled: tuple

    def all_twelve(self):
        return sorted(self.longitudinal + self.transverse * 2 + self.uncoupled)


def check_params(p: MaterialParams):
    report = validate(p, "exploratory")
    if not report.ok:
        raise InvalidParams(report.describe())


def _coefficients(p: MaterialParams):
    """k-independent pieces of the symmetric blocks.

    Each entry is (constant, coefficient of k, coefficient of k^2).
    """
    mu_e, lam_e, mu_c = p.mu_e, p.lambda_e, p.mu_c
    rho, e1, e2, e3 = p.rho, p.eta1, p.eta2, p.eta3
    a1, a2, a3 = p.alphas
    curv = mu_e * p.L_c ** 2
    ws2 = 2.0 * (mu_e + p.mu_micro) / e1
    wr2 = 2.0 * mu_c / e2
    wp2 = (3.0 * (lam_e + p.lambda_micro) + 2.0 * (mu_e + p.mu_micro)) / e3
    a12 = a1 + a2

    s1 = (
        (0.0, 0.0, (2.0 * mu_e + lam_e) / rho),
        (ws2, 0.0, a2 * curv / (3.0 * e1)),
        (wp2, 0.0, 2.0 * a2 * curv / (3.0 * e3)),
        (0.0, 2.0 * math.sqrt(2.0) * mu_e / math.sqrt(3.0 * rho * e1), 0.0),
        (0.0, (3.0 * lam_e + 2.0 * mu_e) / math.sqrt(3.0 * rho * e3), 0.0),
        (0.0, 0.0, -a2 / math.sqrt(e1 * e3) * math.sqrt(2.0) * curv / 3.0),
    )
    s2 = (
        (0.0, 0.0, (mu_e + mu_c) / rho),
        (ws2, 0.0, a12 * curv / (4.0 * e1)),
        (wr2, 0.0, a12 * curv / (4.0 * e2)),
        (0.0, math.sqrt(2.0) * mu_e / math.sqrt(rho * e1), 0.0),
        (0.0, -math.sqrt(2.0) * mu_c / math.sqrt(rho * e2), 0.0),
        (0.0, 0.0, a12 * curv / (4.0 * math.sqrt(e1 * e2))),
    )
    cd2 = a1 * curv / e1
    cvd2 = (a1 + 2.0 * a3) * curv / (3.0 * e2)
    s4 = (
        (ws2, 0.0, cd2),
        (wr2, 0.0, cvd2),
        (ws2, 0.0, cd2),
        (0.0, 0.0, 0.0),
        (0.0, 0.0, 0.0),
        (0.0, 0.0, 0.0),
    )
    return s1, s2, s4


def block_coefficients(p: MaterialParams):
    """Entries of S1, S2, S4 as (c0, c1, c2) triples in powers of k.

    Order inside each block: a11, a22, a33, a12, a13, a23. Used by the
    determinant-polynomial builder.
    """
    check_params(p)
    return _coefficients(p)


def _at(coeffs, k):
    return SymBlock3(*(c0 + c1 * k + c2 * k * k for c0, c1, c2 in coeffs))


def assemble_blocks(p: MaterialParams, k: float) -> BlockSet:
    check_params(p)
    if not k >= 0:
        raise NegativeWavenumber(f"wavenumber must be >= 0, got {k!r}")
    s1, s2, s4 = _coefficients(p)
    return BlockSet(_at(s1, k), _at(s2, k), _at(s4, k), float(k))


def _freqs(block: SymBlock3):
    lams = symeig3(block)
    floor = -1e-9 * block.scale()
    out = []
    for lam in lams:
        if lam < floor:
            raise NegativeEigenvalue(f"eigenvalue {lam:g} below {floor:g}")
        out.append(math.sqrt(max(lam, 0.0)))
    return tuple(out)


def _spectrum(blocks: BlockSet) -> OmegaSpectrum:
    return OmegaSpectrum(
        k=blocks.k,
        longitudinal=_freqs(blocks.S1),
        transverse=_freqs(blocks.S2),
        uncoupled=tuple(sorted(_freqs(blocks.S4))),
    )


def omega_spectrum(p: MaterialParams, k: float) -> OmegaSpectrum:
    return _spectrum(assemble_blocks(p, k))


def uncoupled_frequencies(p: MaterialParams, k: float):
    """Uncoupled frequencies by field, (P_(23), P_[23], P^V), not sorted."""
    b = assemble_blocks(p, k).S4
    return tuple(math.sqrt(max(v, 0.0)) for v in (b.a11, b.a22, b.a33))
