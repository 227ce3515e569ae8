"""det D(k, omega) as an exact polynomial in (k^2, omega^2).

Each symmetric block is expanded symbolically: its entries are tiny
polynomials in (k, w) with w = omega^2, the 3x3 determinant is formed with
polynomial arithmetic, odd powers of k are checked to cancel, and the
product det S1 * (det S2)^2 * det S4 gives the full determinant.

Alongside every coefficient we carry a magnitude bound: the same expansion
run on absolute values. A coefficient counts as zero when it is below
1e-12 of its bound. Raw SI coefficients span dozens of decades, so this
relative test is the only meaningful notion of "vanishes" here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .blocks import block_coefficients
from .errors import IndexOutOfRange, ZeroPolynomial
from .numkernels import real_roots_poly
from .params import MaterialParams

ZERO_TOL = 1e-12
MAX_H = 12


def _mul(a, b):
    out = np.zeros((a.shape[0] + b.shape[0] - 1, a.shape[1] + b.shape[1] - 1))
    for i, j in zip(*np.nonzero(a)):
        out[i:i + b.shape[0], j:j + b.shape[1]] += a[i, j] * b
    return out


def _add(*terms):
    rows = max(t.shape[0] for t in terms)
    cols = max(t.shape[1] for t in terms)
    out = np.zeros((rows, cols))
    for t in terms:
        out[:t.shape[0], :t.shape[1]] += t
    return out


def _entry(c, diagonal):
    # polynomial in (k, w): rows index powers of k, columns powers of w
    e = np.zeros((3, 2 if diagonal else 1))
    e[:, 0] = c
    if diagonal:
        e[0, 1] = -1.0
    return e


def _det3(entries, absolute=False):
    a11, a22, a33, a12, a13, a23 = entries
    if absolute:
        a11, a22, a33, a12, a13, a23 = (np.abs(x) for x in entries)
        s = 1.0
    else:
        s = -1.0
    return _add(
        _mul(_mul(a11, a22), a33),
        2.0 * _mul(_mul(a12, a13), a23),
        s * _mul(a11, _mul(a23, a23)),
        s * _mul(a22, _mul(a13, a13)),
        s * _mul(a33, _mul(a12, a12)),
    )


def _to_even(poly, mag):
    """Drop odd k powers (checked negligible) and reindex by k^2."""
    odd = np.abs(poly[1::2])
    if odd.size and np.any(odd > 1e-9 * mag[1::2] + 0.0):
        raise ArithmeticError("odd powers of k failed to cancel")
    return poly[0::2].copy(), mag[0::2].copy()


def _clean(c, m):
    c = np.where(np.abs(c) <= ZERO_TOL * m, 0.0, c)
    nz = np.nonzero(c)
    if not nz[0].size:
        return np.zeros((1, 1)), np.zeros((1, 1))
    h, q = nz[0].max() + 1, nz[1].max() + 1
    return c[:h, :q].copy(), m[:h, :q].copy()


def _eval(c, k2, w):
    # Horner in w inside Horner in k^2
    acc = 0.0
    for row in c[::-1]:
        inner = 0.0
        for v in row[::-1]:
            inner = inner * w + v
        acc = acc * k2 + inner
    return acc


@dataclass(frozen=True)
class BiPoly:
    """coeff[h, q] multiplies k^(2h) * omega^(2q)."""

    coeff: np.ndarray
    mag: np.ndarray
    factors: tuple = field(default=(), compare=False)
    powers: tuple = field(default=(), compare=False)

    @property
    def degree_k2(self) -> int:
        return self.coeff.shape[0] - 1

    @property
    def degree_w(self) -> int:
        return self.coeff.shape[1] - 1

    def evaluate(self, k: float, omega: float) -> float:
        return _eval(self.coeff, k * k, omega * omega)

    def magnitude(self, k: float, omega: float) -> float:
        return _eval(self.mag, k * k, omega * omega)

    def row(self, h: int) -> np.ndarray:
        if h < self.coeff.shape[0]:
            return self.coeff[h].copy()
        return np.zeros(1)

    def row_scale(self, h: int) -> float:
        r = self.row(h)
        return float(np.max(np.abs(r)))

    def normalized_row(self, h: int) -> np.ndarray:
        """Row divided entrywise by its magnitude bound (0 where the bound is 0)."""
        if h >= self.coeff.shape[0]:
            return np.zeros(1)
        m = self.mag[h]
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(m > 0, self.coeff[h] / np.where(m > 0, m, 1.0), 0.0)

    def is_zero_row(self, h: int) -> bool:
        return not np.any(self.row(h))

    def leading_h(self) -> int:
        for h in range(self.coeff.shape[0] - 1, -1, -1):
            if np.any(self.coeff[h]):
                return h
        raise ZeroPolynomial("determinant polynomial vanishes identically")

    def at_omega(self, omega: float):
        """Coefficients in x = k^2 at fixed omega, ascending, with magnitude bounds."""
        w = omega * omega
        pw = w ** np.arange(self.coeff.shape[1])
        return self.coeff @ pw, self.mag @ pw


def _block_poly(entries):
    polys = [_entry(c, i < 3) for i, c in enumerate(entries)]
    det = _det3(polys)
    mag = _det3(polys, absolute=True)
    c, m = _to_even(det, mag)
    c, m = _clean(c, m)
    return BiPoly(c, m)


def build_detpoly(p: MaterialParams) -> BiPoly:
    """Full determinant det S1 * (det S2)^2 * det S4 and its three factors."""
    s1, s2, s4 = block_coefficients(p)
    f1, f2, f4 = (_block_poly(b) for b in (s1, s2, s4))
    coeff = _mul(_mul(f1.coeff, _mul(f2.coeff, f2.coeff)), f4.coeff)
    mag = _mul(_mul(f1.mag, _mul(f2.mag, f2.mag)), f4.mag)
    coeff, mag = _clean(coeff, mag)
    return BiPoly(coeff, mag, factors=(f1, f2, f4), powers=(1, 2, 1))


def coefficient(poly: BiPoly, h: int) -> np.ndarray:
    """Row c_2h as ascending coefficients in omega^2."""
    if not 0 <= h <= MAX_H:
        raise IndexOutOfRange(f"h must lie in 0..{MAX_H}, got {h}")
    return poly.row(h)


def _row_roots_omega(row):
    if not np.any(row):
        raise ZeroPolynomial("row vanishes")
    out = []
    for w in real_roots_poly(list(row)).roots:
        if w >= 0.0:
            out.append(math.sqrt(w))
        elif w > -1e-9 * max(1.0, abs(w)):
            out.append(0.0)
    return out


def _dedup(values, rel=1e-8):
    out = []
    for v in sorted(values):
        if out and abs(v - out[-1]) <= rel * max(abs(v), abs(out[-1]), 1e-300):
            continue
        out.append(v)
    return out


def leading_roots(poly: BiPoly):
    """Real nonnegative omega roots of the highest nonzero k^2 row.

    The leading row of the product is the product of the factors' leading
    rows, so roots come from each factor (degree at most 3 in omega^2),
    which keeps the root finder within its closed forms.
    """
    if not poly.factors:
        return _dedup(_row_roots_omega(poly.row(poly.leading_h())))
    roots = []
    for f in poly.factors:
        roots += _row_roots_omega(f.row(f.leading_h()))
    return _dedup(roots)


def dump(poly: BiPoly, stream) -> None:
    """Write `h q coeff` lines, row-major, skipping nothing."""
    for h in range(poly.coeff.shape[0]):
        for q in range(poly.coeff.shape[1]):
            stream.write(f"{h} {q} {float(poly.coeff[h, q])!r}\n")


def direct_product(p: MaterialParams, k: float, omega: float):
    """det S1 * (det S2)^2 * det S4 by plain 3x3 arithmetic."""
    from .blocks import assemble_blocks

    b = assemble_blocks(p, k)
    w = omega * omega
    d1 = b.S1.char_poly(w)
    d2 = b.S2.char_poly(w)
    d4 = b.S4.char_poly(w)
    return d1 * d2 * d2 * d4
