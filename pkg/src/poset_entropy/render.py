"""SVG drawings of the rectangle packing and of the span-2 representation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PosetEntropyError
from .intervals import IntervalPipeline, interval_order_of
from .poset import incomparability_graph

__all__ = ["Rect", "packing_rects", "render_packing", "render_q", "fmt"]

SCALE = 400
MARGIN = 20


def fmt(x) -> str:
    return f"{float(x):.12g}"


@dataclass(frozen=True)
class Rect:
    v: str
    x: Fraction
    y: Fraction
    w: Fraction  # interval length 1/(n x*_v)
    h: Fraction  # x*_v

    @property
    def area(self) -> Fraction:
        return self.w * self.h

    @property
    def centre(self) -> tuple[Fraction, Fraction]:
        return self.x + self.w / 2, self.y + self.h / 2


def packing_rects(pl: IntervalPipeline) -> list[Rect]:
    """One rectangle per element: horizontally its canonical interval, vertically
    ``x*_v``; chain A elements hang from the top edge, chain B stand on the bottom.

    Raises if any area differs from ``1/n`` or a block column is not filled.
    """
    n = pl.poset.n
    xs = pl.km.x_star
    chain_a = set(pl.chains.chainA)
    rects = []
    for v in pl.poset.elements:
        lo, hi = pl.rep.intervals[v]
        h = Fraction(xs[v])
        y = Fraction(0) if v in chain_a else 1 - h
        rects.append(Rect(v, lo, y, hi - lo, h))
    for r in rects:
        if r.area != Fraction(1, n):
            raise PosetEntropyError(f"rectangle {r.v} has area {r.area}, expected 1/{n}")
    for a_i, b_i in pl.rep.blocks:
        ha = xs[a_i[0]] if a_i else 0
        hb = xs[b_i[0]] if b_i else 0
        if ha + hb != 1:
            raise PosetEntropyError("block column is not filled exactly")
    return rects


def _svg(width, height, body: list[str]) -> str:
    w = fmt(width * SCALE + 2 * MARGIN)
    h = fmt(height * SCALE + 2 * MARGIN)
    head = f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">'
    return "\n".join([head, f'<g transform="translate({MARGIN},{MARGIN})">', *body, "</g>", "</svg>"]) + "\n"


def _line(p, q, dashed: bool) -> str:
    style = ' stroke-dasharray="6,4" stroke="#c33"' if dashed else ' stroke="#333"'
    return (
        f'<line x1="{fmt(p[0] * SCALE)}" y1="{fmt(p[1] * SCALE)}" '
        f'x2="{fmt(q[0] * SCALE)}" y2="{fmt(q[1] * SCALE)}"{style}/>'
    )


def render_packing(pl: IntervalPipeline) -> str:
    """Unit-square packing; solid lines are edges of the incomparability graph
    of I(P), dashed ones are edges of P's graph that vanish in I(P)."""
    rects = packing_rects(pl)
    by_v = {r.v: r for r in rects}
    body = []
    for r in rects:
        body.append(
            f'<rect x="{fmt(r.x * SCALE)}" y="{fmt(r.y * SCALE)}" width="{fmt(r.w * SCALE)}" '
            f'height="{fmt(r.h * SCALE)}" fill="#dde" stroke="#000"/>'
        )
        cx, cy = r.centre
        body.append(f'<text x="{fmt(cx * SCALE)}" y="{fmt(cy * SCALE)}" text-anchor="middle">{r.v}</text>')
    g_ip = incomparability_graph(interval_order_of(pl.rep)).edge_set
    g_p = incomparability_graph(pl.poset).edge_set
    for e in sorted(g_ip, key=sorted):
        u, v = sorted(e)
        body.append(_line(by_v[u].centre, by_v[v].centre, False))
    for e in sorted(g_p - g_ip, key=sorted):
        u, v = sorted(e)
        body.append(_line(by_v[u].centre, by_v[v].centre, True))
    return _svg(1, 1, body)


def render_q(pl: IntervalPipeline) -> str:
    """Interval bars of the span-2 representation of Q; phantom edges dashed."""
    if pl.qrep is None:
        raise PosetEntropyError("no Q representation (incomparability graph disconnected)")
    rep = pl.qrep
    chain_a = set(pl.chains.chainA)
    mid = {}
    body = []
    for v in pl.poset.elements:
        lo, hi = rep.intervals[v]
        y = Fraction(1, 4) if v in chain_a else Fraction(3, 4)
        mid[v] = ((lo + hi) / 2, y)
        body.append(
            f'<line x1="{fmt(lo * SCALE)}" y1="{fmt(y * SCALE)}" x2="{fmt(hi * SCALE)}" '
            f'y2="{fmt(y * SCALE)}" stroke="#000" stroke-width="6"/>'
        )
        body.append(f'<text x="{fmt(mid[v][0] * SCALE)}" y="{fmt((y - Fraction(1, 20)) * SCALE)}" '
                    f'text-anchor="middle">{v}</text>')
    phantom = pl.phantoms.pairs() if pl.phantoms is not None else set()
    for e in sorted(incomparability_graph(pl.Q).edge_set, key=sorted):
        u, v = sorted(e)
        body.append(_line(mid[u], mid[v], e in phantom))
    return _svg(rep.span, 1, body)
