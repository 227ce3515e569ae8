"""Dispersion-diagram SVG from a branch CSV. No plotting library involved."""

from __future__ import annotations

import csv
import io

WIDTH, HEIGHT = 800, 600
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 80, 120, 30, 60

COLORS = {
    "LO1": "darkred",
    "LO2": "red",
    "LA": "orange",
    "TO1": "blue",
    "TO2": "green",
    "TA": "cyan",
    "TO": "green",
    "TRO": "black",
    "LSO": "gray",
    "TCVO": "gray",
    "TCVO_1": "gray",
    # second transverse polarization repeats TA, TO1, TO2
    "TCVO_2": "cyan",
    "TS_dup": "blue",
    "LS_dup": "green",
}


def _color(label):
    if label in COLORS:
        return COLORS[label]
    return COLORS.get(label.split("_")[0], "purple")


def read_table(text: str):
    rows = list(csv.reader(io.StringIO(text)))
    if len(rows) < 2 or not rows[0]:
        raise OSError("CSV holds no data rows")
    header = rows[0]
    if header[0] != "k":
        raise OSError("first CSV column must be k")
    cols = [[] for _ in header]
    for n, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise OSError(f"CSV line {n} has {len(row)} fields, expected {len(header)}")
        try:
            for i, v in enumerate(row):
                cols[i].append(float(v))
        except ValueError:
            raise OSError(f"CSV line {n} holds a non-numeric field") from None
    if not cols[0]:
        raise OSError("CSV holds no data rows")
    return header, cols


def _ticks(lo, hi, n=5):
    step = (hi - lo) / n
    return [lo + i * step for i in range(n + 1)]


def render_svg(text: str) -> str:
    """Full SVG document for the CSV ``text``; raises OSError on unusable input."""
    header, cols = read_table(text)
    ks = cols[0]
    k_lo, k_hi = min(ks), max(ks)
    values = [v for c in cols[1:] for v in c]
    w_hi = max(values) if values else 1.0
    if k_hi == k_lo:
        k_hi = k_lo + 1.0
    if w_hi <= 0:
        w_hi = 1.0
    pw = WIDTH - MARGIN_L - MARGIN_R
    ph = HEIGHT - MARGIN_T - MARGIN_B

    def sx(k):
        return MARGIN_L + (k - k_lo) / (k_hi - k_lo) * pw

    def sy(w):
        return MARGIN_T + ph - w / w_hi * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" '
        f'width="{WIDTH}" height="{HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for t in _ticks(k_lo, k_hi):
        x = sx(t)
        out.append(f'<text x="{x:.1f}" y="{MARGIN_T + ph + 18}" font-size="11" text-anchor="middle">{t:.4g}</text>')
    for t in _ticks(0.0, w_hi):
        y = sy(t)
        out.append(f'<text x="{MARGIN_L - 6}" y="{y:.1f}" font-size="11" text-anchor="end">{t:.3g}</text>')
    out.append(f'<text x="{MARGIN_L + pw / 2}" y="{HEIGHT - 15}" font-size="13" text-anchor="middle">k [1/m]</text>')
    out.append(f'<text x="18" y="{MARGIN_T + ph / 2}" font-size="13" text-anchor="middle" '
               f'transform="rotate(-90 18 {MARGIN_T + ph / 2})">omega [rad/s]</text>')
    for j, label in enumerate(header[1:], start=1):
        pts = " ".join(f"{sx(k):.2f},{sy(w):.2f}" for k, w in zip(ks, cols[j]))
        out.append(f'<polyline fill="none" stroke="{_color(label)}" stroke-width="1.5" points="{pts}">'
                   f'<title>{label}</title></polyline>')
        ly = MARGIN_T + 14 * j
        lx = MARGIN_L + pw + 10
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 20}" y2="{ly}" stroke="{_color(label)}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 25}" y="{ly + 4}" font-size="11">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
