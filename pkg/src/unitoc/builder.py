"""Initial closed representation of an interval order and its index tables.

The pipeline here is: down/up-set indexing gives integer intervals, the
``1/(k+3)`` widening makes all endpoints distinct while keeping exactly the
containments that had no shared endpoint, and the sorted endpoints are laid
out in two tables.

``EndpointTable`` mirrors the three-row storage matrix: one column per
endpoint, 1-based, holding the owning element, the side, and the index of
the element's other endpoint.  ``ElementTable`` keeps per-element index
pairs plus the containment sets filled in later by the scan.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import IntervalError, TwinError
from .intervals import Representation, closed, has_distinct_endpoints
from .poset import DownSetChain, Poset


def greenough_representation(P: Poset, chain: DownSetChain) -> Representation:
    """``I(x) = [i, j]`` where ``D(x)`` is the i-th down set and ``U(x)`` the j-th up set."""
    out = {}
    for x in P.elements:
        i, j = chain.left_index[x], chain.right_index[x]
        if i > j:
            raise IntervalError(f"left index {i} exceeds right index {j} for {x!r}")
        out[x] = closed(i, j)
    return Representation(out, "closed")


def peeking_refinement(rep: Representation, P: Poset | None = None) -> Representation:
    """Widen every ``[j, j+k]`` to ``[j - 1/(k+3), j + k + 1/(k+3)]``.

    Twin-free input yields pairwise distinct endpoints; equal outputs mean
    the poset had twins.
    """
    out = {}
    seen: dict[tuple[Fraction, Fraction], str] = {}
    for x, iv in rep.items():
        k = iv.right - iv.left
        eps = Fraction(1) / (k + 3)
        new = closed(iv.left - eps, iv.right + eps)
        key = (new.left, new.right)
        if key in seen:
            raise TwinError(f"{seen[key]!r} and {x!r} received the same interval: they are twins")
        seen[key] = x
        out[x] = new
    return Representation(out, "closed")


@dataclass(frozen=True)
class EndpointTable:
    """Sorted endpoints; every accessor takes a 1-based index."""

    elements: tuple[str, ...]
    sides: tuple[str, ...]
    partners: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def element(self, j: int) -> str:
        return self.elements[j - 1]

    def side(self, j: int) -> str:
        return self.sides[j - 1]

    def partner(self, j: int) -> int:
        return self.partners[j - 1]

    def format(self) -> str:
        """Render in the index / element / L-R / other-end layout."""
        rows = [
            ["Index"] + [str(j) for j in range(1, len(self) + 1)],
            ["Element"] + list(self.elements),
            ["L/R"] + list(self.sides),
            ["Other end"] + [str(p) for p in self.partners],
        ]
        widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
        return "\n".join(
            "  ".join(cell.rjust(w) if c else cell.ljust(w) for c, (cell, w) in enumerate(zip(r, widths)))
            for r in rows)


@dataclass
class ElementTable:
    index_pair: dict[str, tuple[int, int]]
    containers: dict[str, set[str]] = field(default_factory=dict)
    contained: dict[str, set[str]] = field(default_factory=dict)

    def left(self, x: str) -> int:
        return self.index_pair[x][0]

    def right(self, x: str) -> int:
        return self.index_pair[x][1]


def build_tables(rep: Representation) -> tuple[EndpointTable, ElementTable]:
    """Sort the ``2n`` endpoints and index them; ties are refused."""
    if not has_distinct_endpoints(rep):
        raise IntervalError("endpoint tables need pairwise distinct endpoints")
    ends = []
    for x, iv in rep.items():
        ends.append((iv.left, x, "L"))
        ends.append((iv.right, x, "R"))
    ends.sort(key=lambda e: e[0])
    pos: dict[tuple[str, str], int] = {}
    for j, (_, x, side) in enumerate(ends, start=1):
        pos[(x, side)] = j
    partners = tuple(pos[(x, "R" if side == "L" else "L")] for _, x, side in ends)
    A = EndpointTable(tuple(e[1] for e in ends), tuple(e[2] for e in ends), partners)
    B = ElementTable({x: (pos[(x, "L")], pos[(x, "R")]) for x in rep.intervals},
                     {x: set() for x in rep.intervals}, {x: set() for x in rep.intervals})
    return A, B


def peekers(rep: Representation, inner: str, outer: str, side: str) -> list[str]:
    """Elements whose interval meets ``outer`` but not ``inner``, on one side.

    Direct transcription of the definition, for checking; the recognizer
    reads peekers off the tables instead.
    """
    I, V = rep[inner], rep[outer]
    out = []
    for x, X in rep.items():
        if x in (inner, outer):
            continue
        meets_outer = X.left <= V.right and V.left <= X.right
        meets_inner = X.left <= I.right and I.left <= X.right
        if not meets_outer or meets_inner:
            continue
        if side == "left" and X.right <= I.left:
            out.append(x)
        elif side == "right" and I.right <= X.left:
            out.append(x)
    return out


def proper_inclusions(rep: Representation) -> list[tuple[str, str]]:
    """``(inner, outer)`` pairs of closed intervals with ``inner ⊊ outer``."""
    out = []
    for u, I in rep.items():
        for v, V in rep.items():
            if u != v and V.left <= I.left and I.right <= V.right and (I.left, I.right) != (V.left, V.right):
                out.append((u, v))
    return out


def has_peeking_property(rep: Representation) -> bool:
    return all(peekers(rep, u, v, "left") and peekers(rep, u, v, "right")
               for u, v in proper_inclusions(rep))

