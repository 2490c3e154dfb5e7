"""Minimal hand-emitted SVG 1.1 line charts (no plotting dependency)."""

from __future__ import annotations

_PALETTE = ["#1f6fb2", "#d1495b", "#3a8f5f", "#8464a0", "#c07f20", "#55606d"]


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def line_chart(series, band=None, title: str = "", xlabel: str = "",
               ylabel: str = "", width: int = 720, height: int = 480) -> str:
    """Polyline chart. series: [(label, xs, ys)]; band: optional
    (xs, lo_ys, hi_ys) shaded polygon (drawn under the lines)."""
    ml, mr, mt, mb = 60, 16, 28, 44
    pw, ph = width - ml - mr, height - mt - mb

    all_x, all_y = [], []
    for _, xs, ys in series:
        all_x.extend(xs)
        all_y.extend(ys)
    if band is not None:
        bx, blo, bhi = band
        all_x.extend(bx)
        all_y.extend(blo)
        all_y.extend(bhi)
    if not all_x:
        raise ValueError("nothing to plot")
    x0, x1 = min(all_x), max(all_x)
    y0, y1 = min(all_y), max(all_y)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0
    pad = 0.05 * (y1 - y0)
    y0 -= pad
    y1 += pad

    def px(x):
        return ml + pw * (x - x0) / (x1 - x0)

    def py(y):
        return mt + ph * (1.0 - (y - y0) / (y1 - y0))

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{width / 2:.1f}" y="18" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="14">{title}</text>')
    if band is not None:
        bx, blo, bhi = band
        pts = [f"{px(x):.2f},{py(y):.2f}" for x, y in zip(bx, bhi)]
        pts += [f"{px(x):.2f},{py(y):.2f}" for x, y in zip(reversed(bx), reversed(blo))]
        out.append(f'<polygon points="{" ".join(pts)}" fill="#9ecbe8" '
                   f'fill-opacity="0.45" stroke="none"/>')
    # axes
    out.append(f'<line x1="{ml}" y1="{mt + ph}" x2="{ml + pw}" y2="{mt + ph}" '
               f'stroke="black" stroke-width="1"/>')
    out.append(f'<line x1="{ml}" y1="{mt}" x2="{ml}" y2="{mt + ph}" '
               f'stroke="black" stroke-width="1"/>')
    for i in range(5):
        fx = x0 + (x1 - x0) * i / 4
        fy = y0 + (y1 - y0) * i / 4
        out.append(f'<text x="{px(fx):.1f}" y="{mt + ph + 16}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="11">{_fmt(fx)}</text>')
        out.append(f'<text x="{ml - 6}" y="{py(fy) + 4:.1f}" text-anchor="end" '
                   f'font-family="sans-serif" font-size="11">{_fmt(fy)}</text>')
        out.append(f'<line x1="{ml - 3}" y1="{py(fy):.1f}" x2="{ml}" y2="{py(fy):.1f}" '
                   f'stroke="black" stroke-width="1"/>')
        out.append(f'<line x1="{px(fx):.1f}" y1="{mt + ph}" x2="{px(fx):.1f}" '
                   f'y2="{mt + ph + 3}" stroke="black" stroke-width="1"/>')
    if xlabel:
        out.append(f'<text x="{ml + pw / 2:.1f}" y="{height - 8}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="12">{xlabel}</text>')
    if ylabel:
        out.append(f'<text x="14" y="{mt + ph / 2:.1f}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="12" '
                   f'transform="rotate(-90 14 {mt + ph / 2:.1f})">{ylabel}</text>')
    for i, (label, xs, ys) in enumerate(series):
        color = _PALETTE[i % len(_PALETTE)]
        pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                   f'stroke-width="1.8"/>')
        out.append(f'<text x="{ml + pw - 6}" y="{mt + 16 + 15 * i}" text-anchor="end" '
                   f'font-family="sans-serif" font-size="11" '
                   f'fill="{color}">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
