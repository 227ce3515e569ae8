"""Small dense kernels: 3x3 symmetric eigenvalues and real roots of low-degree polynomials.

Everything here works on plain floats. The dispersion code calls these
millions of times on tiny problems, so there is no numpy overhead and no
general-purpose solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NonFinite, ZeroPolynomial

_TWO_PI_3 = 2.0 * math.pi / 3.0


@dataclass(frozen=True)
class SymBlock3:
    """Real symmetric 3x3 matrix stored by its upper triangle."""

    a11: float
    a22: float
    a33: float
    a12: float
    a13: float
    a23: float

    def __post_init__(self):
        for v in self.entries():
            if not math.isfinite(v):
                raise NonFinite(f"non-finite matrix entry {v!r}")

    def entries(self):
        return (self.a11, self.a22, self.a33, self.a12, self.a13, self.a23)

    def to_rows(self):
        return (
            (self.a11, self.a12, self.a13),
            (self.a12, self.a22, self.a23),
            (self.a13, self.a23, self.a33),
        )

    def scale(self) -> float:
        return max(abs(v) for v in self.entries())

    def trace(self) -> float:
        return self.a11 + self.a22 + self.a33

    def det(self) -> float:
        return _det_shifted(self.entries(), 0.0)

    def char_poly(self, lam: float) -> float:
        """det(M - lam*I)."""
        return _det_shifted(self.entries(), lam)


def _det_shifted(e, lam):
    a11, a22, a33, a12, a13, a23 = e
    d1, d2, d3 = a11 - lam, a22 - lam, a33 - lam
    return d1 * (d2 * d3 - a23 * a23) - a12 * (a12 * d3 - a23 * a13) + a13 * (a12 * a23 - d2 * a13)


def _minor_sum(e, lam):
    # sum of principal 2x2 minors of M - lam*I; d/dlam det(M - lam I) = -this
    a11, a22, a33, a12, a13, a23 = e
    d1, d2, d3 = a11 - lam, a22 - lam, a33 - lam
    return d1 * d2 - a12 * a12 + d1 * d3 - a13 * a13 + d2 * d3 - a23 * a23


def _jacobi3(e, sweeps=60):
    a = [[e[0], e[3], e[4]], [e[3], e[1], e[5]], [e[4], e[5], e[2]]]
    for _ in range(sweeps):
        off = a[0][1] ** 2 + a[0][2] ** 2 + a[1][2] ** 2
        diag = a[0][0] ** 2 + a[1][1] ** 2 + a[2][2] ** 2
        if off <= 1e-32 * diag or off == 0.0:
            break
        for p, q in ((0, 1), (0, 2), (1, 2)):
            apq = a[p][q]
            if apq == 0.0:
                continue
            theta = (a[q][q] - a[p][p]) / (2.0 * apq)
            t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
            c = 1.0 / math.sqrt(t * t + 1.0)
            s = t * c
            for r in range(3):
                arp, arq = a[r][p], a[r][q]
                a[r][p] = c * arp - s * arq
                a[r][q] = s * arp + c * arq
            for r in range(3):
                apr, aqr = a[p][r], a[q][r]
                a[p][r] = c * apr - s * aqr
                a[q][r] = s * apr + c * aqr
    return sorted((a[0][0], a[1][1], a[2][2]))


def _polish_eig(e, lam, gap):
    f = _det_shifted(e, lam)
    if f == 0.0:
        return lam
    df = -_minor_sum(e, lam)
    if df == 0.0:
        return lam
    cand = lam - f / df
    # e is scaled to max entry 1; near a double root Newton can jump onto
    # the neighbouring eigenvalue, so the step must stay well inside the gap
    if abs(cand - lam) <= min(1e-8, 0.1 * gap) and abs(_det_shifted(e, cand)) < abs(f):
        return cand
    return lam


def symeig3(m: SymBlock3):
    """Eigenvalues of a real symmetric 3x3 matrix, ascending.

    Closed trigonometric form on the scaled, shifted matrix. When the
    spectrum is nearly degenerate the arccos argument is ill-conditioned,
    so cyclic Jacobi takes over.
    """
    e = m.entries()
    for v in e:
        if not math.isfinite(v):
            raise NonFinite(f"non-finite matrix entry {v!r}")
    s = max(abs(v) for v in e)
    if s == 0.0:
        return (0.0, 0.0, 0.0)
    if e[3] == 0.0 and e[4] == 0.0 and e[5] == 0.0:
        return tuple(sorted(e[:3]))

    u = [v / s for v in e]
    q = (u[0] + u[1] + u[2]) / 3.0
    off2 = u[3] * u[3] + u[4] * u[4] + u[5] * u[5]
    b11, b22, b33 = u[0] - q, u[1] - q, u[2] - q
    pp = math.sqrt((b11 * b11 + b22 * b22 + b33 * b33 + 2.0 * off2) / 6.0)
    if pp == 0.0:
        return (q * s, q * s, q * s)
    r = _det_shifted((b11 / pp, b22 / pp, b33 / pp, u[3] / pp, u[4] / pp, u[5] / pp), 0.0) / 2.0
    if 1.0 - r * r < 1e-13:
        lams = _jacobi3(u)
    else:
        phi = math.acos(max(-1.0, min(1.0, r))) / 3.0
        hi = q + 2.0 * pp * math.cos(phi)
        lo = q + 2.0 * pp * math.cos(phi + _TWO_PI_3)
        lams = [lo, 3.0 * q - hi - lo, hi]
    lams = sorted(lams)
    gaps = [lams[1] - lams[0], min(lams[1] - lams[0], lams[2] - lams[1]), lams[2] - lams[1]]
    out = sorted(_polish_eig(u, lam, g) * s for lam, g in zip(lams, gaps))
    for v in out:
        if not math.isfinite(v):
            raise NonFinite("eigenvalue computation overflowed")
    return tuple(out)


@dataclass(frozen=True)
class RealRoots:
    roots: tuple = ()
    multiplicities: tuple = ()

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def expanded(self):
        """Roots repeated according to multiplicity."""
        out = []
        for r, m in zip(self.roots, self.multiplicities):
            out.extend([r] * m)
        return out


def _powf(x, n):
    # float power that saturates to inf instead of raising
    try:
        return x ** n
    except OverflowError:
        return math.inf


def _componentwise_ok(c, y, e, tol=1e-8):
    """|p(x)| <= tol * sum |c_i x^i| at x = y*2^e, without forming x.

    Catches scaled-space roots that only exist because a small coefficient
    underflowed during scaling.
    """
    if y == 0.0:
        return c[0] == 0.0
    my, ey = math.frexp(y)
    terms = []
    for i, ci in enumerate(c):
        if ci == 0.0:
            continue
        mc, ec = math.frexp(ci)
        terms.append((mc * my ** i, ec + (ey + e) * i))
    top = max(ex for _, ex in terms)
    vals = [math.ldexp(m, ex - top) for m, ex in terms]
    return abs(math.fsum(vals)) <= tol * math.fsum(abs(v) for v in vals)


def _polish_root(c, x):
    # one Newton step in the original variable; scaled-space roots far below
    # the root bound can sit in denormal range and lose digits
    f, df = _horner_d(c, x)
    if not (math.isfinite(f) and math.isfinite(df)) or f == 0.0 or df == 0.0:
        return x
    cand = x - f / df
    if abs(cand - x) <= 1e-6 * abs(x) and abs(_horner(c, cand)) < abs(f):
        return cand
    return x


def _horner(c, x):
    # c ascending
    acc = 0.0
    for a in reversed(c):
        acc = acc * x + a
    return acc


def _horner_d(c, x):
    f = 0.0
    df = 0.0
    for a in reversed(c):
        df = df * x + f
        f = f * x + a
    return f, df


def _newton(c, x, steps=1):
    for _ in range(steps):
        f, df = _horner_d(c, x)
        if f == 0.0 or df == 0.0:
            break
        cand = x - f / df
        if abs(_horner(c, cand)) < abs(f):
            x = cand
        else:
            break
    return x


def _quadratic(a, b, c):
    """Real roots of a x^2 + b x + c; a near-zero negative discriminant is a double root."""
    if a == 0.0:
        return [] if b == 0.0 else [-c / b]
    disc = b * b - 4.0 * a * c
    tol = 1e-12 * max(b * b, abs(4.0 * a * c))
    if disc < 0.0:
        if -disc <= tol:
            x = -b / (2.0 * a)
            return [x, x]
        return []
    sq = math.sqrt(disc)
    if sq <= math.sqrt(tol):
        x = -b / (2.0 * a)
        return [x, x]
    t = -0.5 * (b + math.copysign(sq, b))
    return sorted([t / a, c / t])


def _cubic_candidates(a, b, c):
    """Real roots of x^3 + a x^2 + b x + c from the closed forms (all three or one)."""
    p = b - a * a / 3.0
    q = 2.0 * a ** 3 / 27.0 - a * b / 3.0 + c
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    if p < 0.0 and disc <= 0.0:
        m = 2.0 * math.sqrt(-p / 3.0)
        if p * m == 0.0:
            return [-a / 3.0] * 3
        phi = math.acos(max(-1.0, min(1.0, 3.0 * q / (p * m)))) / 3.0
        return [m * math.cos(phi - j * _TWO_PI_3) - a / 3.0 for j in range(3)]
    sq = math.sqrt(max(disc, 0.0))
    w = -q / 2.0 - math.copysign(sq, q) if q != 0.0 else sq
    u = math.copysign(abs(w) ** (1.0 / 3.0), w)
    t = u - p / (3.0 * u) if u != 0.0 else 0.0
    return [t - a / 3.0]


def _bounded(coeffs, limit=1e3):
    # monic factors of a scaled polynomial (roots within |y| <= 4) have
    # coefficients well below this; anything larger is deflation blow-up
    return all(math.isfinite(v) and abs(v) <= limit for v in coeffs)


def _cubic(a, b, c):
    mono = [c, b, a, 1.0]
    r = max((_newton(mono, x, steps=3) for x in _cubic_candidates(a, b, c)), key=abs)
    q = None
    if r != 0.0 and abs(r) ** 3 >= abs(c):
        # r dominates the remaining pair: deflate from the constant term
        q0 = -c / r
        q = ((q0 - b) / r, q0)
    if q is None or not _bounded(q):
        # small r, or only a near-root: deflating from the top stays bounded
        q1 = a + r
        q = (q1, b + r * q1)
    return [r] + _quadratic(1.0, *q)


def _ferrari(a, b, c, d):
    """Candidate real roots plus, outside the biquadratic case, the two
    quadratic factors (c1, c0) of x^2 + c1 x + c0 they come from."""
    # depressed: y^4 + p y^2 + q y + r with x = y - a/4
    s = a / 4.0
    p = b - 6.0 * s * s
    q = c - 2.0 * b * s + 8.0 * s ** 3
    r = d - c * s + b * s * s - 3.0 * s ** 4
    scale = max(abs(p), math.sqrt(abs(r)), abs(q) ** (2.0 / 3.0), 1e-300)
    ys = []
    factors = None
    if abs(q) <= 1e-14 * scale ** 1.5:
        for z in _quadratic(1.0, p, r):
            if z > 0.0:
                ys += [math.sqrt(z), -math.sqrt(z)]
            elif z > -1e-12 * scale:
                ys += [0.0, 0.0]
    else:
        # resolvent 8m^3 + 8p m^2 + (2p^2 - 8r) m - q^2 = 0 has a positive root
        res = _cubic(p, (p * p - 4.0 * r) / 4.0, -q * q / 8.0)
        m = max(res)
        if m <= 0.0:
            m = _newton([-q * q / 8.0, (p * p - 4.0 * r) / 4.0, p, 1.0], abs(m) or 1e-300 * scale, 3)
        m = max(m, 1e-300)
        w = math.sqrt(2.0 * m)
        h = q / (2.0 * w)
        factors = []
        for sw, k0 in ((-w, p / 2.0 + m + h), (w, p / 2.0 + m - h)):
            ys += _quadratic(1.0, sw, k0)
            # y^2 + sw*y + k0 with y = x + s
            factors.append((2.0 * s + sw, s * s + sw * s + k0))
    return [y - s for y in ys], factors


def _quartic(a, b, c, d):
    """Real roots of the monic quartic; expects coefficients scaled so that
    the largest root has magnitude of order one."""
    # the shift a/4 wipes out small roots when the spread is large, so only
    # the dominant part of the Ferrari output is trusted and the rest comes
    # from a deflation done from the constant term
    mono = [d, c, b, a, 1.0]
    cmax = max(abs(v) for v in mono)
    cands, factors = _ferrari(a, b, c, d)
    best = None
    for y in cands:
        y = _newton(mono, y, steps=3)
        if abs(_horner(mono, y)) <= 1e-9 * cmax * max(1.0, abs(y)) ** 4:
            if best is None or abs(y) > abs(best):
                best = y
    if (best is None or abs(best) < 0.1) and factors:
        # dominant roots form a complex pair: divide out their quadratic
        s1, s0 = max(factors, key=lambda f: abs(f[1]))
        if s0 != 0.0:
            t0 = d / s0
            t1 = (c - s1 * t0) / s0
            return _quadratic(1.0, s1, s0) + _quadratic(1.0, t1, t0)
    if best is None:
        return []
    q = None
    if best != 0.0 and best ** 4 >= abs(d):
        q0 = -d / best
        q1 = (q0 - c) / best
        q = ((q1 - b) / best, q1, q0)
    if q is None or not _bounded(q):
        q2 = a + best
        q1 = b + best * q2
        q = (q2, q1, c + best * q1)
    return [best] + _cubic(*q)


def real_roots_poly(coeffs) -> RealRoots:
    """Real roots of sum(coeffs[i] * x**i) for degree up to 4.

    Trailing zero coefficients lower the degree. Exact zero roots are split
    off first; the rest is solved on a power-of-two rescaled variable with
    closed forms, polished by Newton, checked by residual, and merged into
    multiplicities when closer than 1e-8 relative.
    """
    c = [float(v) for v in coeffs]
    for v in c:
        if not math.isfinite(v):
            raise NonFinite(f"non-finite coefficient {v!r}")
    while c and c[-1] == 0.0:
        c.pop()
    if not c:
        raise ZeroPolynomial("all coefficients are zero")
    if len(c) > 5:
        raise ValueError("degree above 4 is not supported")

    zeros = 0
    while c[0] == 0.0:
        c.pop(0)
        zeros += 1
    n = len(c) - 1
    found = [0.0] * zeros
    if n >= 1:
        # x = 2^e*y with 2^e near the root bound max |c_i/c_n|^(1/(n-i)), so the
        # monic scaled coefficients stay within [-2^n, 2^n]; done on exponents
        # because the bound itself may not be representable
        lead = math.log2(abs(c[-1]))
        e = round(max((math.log2(abs(c[i])) - lead) / (n - i) for i in range(n) if c[i] != 0.0))
        mant_n, exp_n = math.frexp(c[-1])
        mono = []
        for i in range(n):
            mant, ex = math.frexp(c[i])
            mono.append(math.ldexp(mant / mant_n, ex - exp_n - e * (n - i)))
        mono.append(1.0)
        if n == 1:
            ys = [-mono[0]]
        elif n == 2:
            ys = _quadratic(1.0, mono[1], mono[0])
        elif n == 3:
            ys = _cubic(mono[2], mono[1], mono[0])
        else:
            ys = _quartic(mono[3], mono[2], mono[1], mono[0])
        cmax = max(abs(v) for v in mono)
        for y in ys:
            # Fujiwara: scaled roots satisfy |y| <= 2*sqrt(2)
            if not math.isfinite(y) or abs(y) > 4.0:
                continue
            y = _newton(mono, y, steps=1)
            bound = 1e-9 * cmax * _powf(max(1.0, abs(y)), n)
            if abs(_horner(mono, y)) <= bound and _componentwise_ok(c, y, e):
                try:
                    x = math.ldexp(y, e)
                except OverflowError:
                    continue
                found.append(_polish_root(c, x))

    found.sort()
    roots, mults = [], []
    for x in found:
        if roots and abs(x - roots[-1]) <= 1e-8 * max(abs(x), abs(roots[-1])):
            k = mults[-1]
            roots[-1] = (roots[-1] * k + x) / (k + 1)
            mults[-1] = k + 1
        else:
            roots.append(x)
            mults.append(1)
    return RealRoots(tuple(roots), tuple(mults))
