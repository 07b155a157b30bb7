"""ASCII interval diagrams.

Closed intervals draw as ``[===]`` and open ones as ``(---)``; rows are
sorted by left endpoint and the horizontal axis is scaled to a column
budget.  Purely presentational: exact endpoints are printed beside each bar.
"""

from __future__ import annotations

from fractions import Fraction

from .intervals import Representation

DEFAULT_WIDTH = 60


def _column(v: Fraction, lo: Fraction, span: Fraction, width: int) -> int:
    if span == 0:
        return 0
    return round((v - lo) / span * (width - 1))


def render(rep: Representation, width: int = DEFAULT_WIDTH) -> str:
    """One row per element; ``width`` is the number of bar columns."""
    if width < 2:
        raise ValueError("width must be at least 2")
    if not len(rep):
        return ""
    rows = sorted(rep.items(), key=lambda kv: (kv[1].left, kv[1].right, kv[0]))
    lo = min(iv.left for _, iv in rows)
    hi = max(iv.right for _, iv in rows)
    span = hi - lo
    label_w = max(len(x) for x, _ in rows)
    lines = []
    for x, iv in rows:
        a = _column(iv.left, lo, span, width)
        b = _column(iv.right, lo, span, width)
        cells = [" "] * width
        if a == b:
            cells[a] = "|"
        else:
            fill = "=" if iv.closed else "-"
            for c in range(a + 1, b):
                cells[c] = fill
            cells[a], cells[b] = ("[", "]") if iv.closed else ("(", ")")
        lines.append(f"{x.ljust(label_w)} {''.join(cells)}  {iv}")
    return "\n".join(lines)
