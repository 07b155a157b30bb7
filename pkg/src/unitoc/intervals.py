"""Exact open/closed intervals and the checks a representation must pass.

Endpoints are :class:`fractions.Fraction` throughout; nothing is ever
rounded.  A :class:`Representation` assigns one interval to every element
of a poset and carries the precedence semantics it should be read with:

* ``"closed"``: all intervals closed, ``x < y`` iff ``R(x) < L(y)``;
* ``"oc"``: open or closed intervals, ``x < y`` iff every point of ``I(x)``
  lies below every point of ``I(y)``.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import IntervalError
from .poset import Poset

OPEN = "open"
CLOSED = "closed"
SEMANTICS = ("closed", "oc")


@dataclass(frozen=True)
class Interval:
    left: Fraction
    right: Fraction
    style: str = CLOSED

    def __post_init__(self):
        object.__setattr__(self, "left", Fraction(self.left))
        object.__setattr__(self, "right", Fraction(self.right))
        if self.style not in (OPEN, CLOSED):
            raise IntervalError(f"style must be 'open' or 'closed', got {self.style!r}")
        if self.style == CLOSED and self.left > self.right:
            raise IntervalError(f"closed interval with left {self.left} > right {self.right}")
        if self.style == OPEN and not self.left < self.right:
            raise IntervalError(f"open interval ({self.left}, {self.right}) is empty")

    @property
    def closed(self) -> bool:
        return self.style == CLOSED

    @property
    def length(self) -> Fraction:
        return self.right - self.left

    def closure(self) -> Interval:
        return Interval(self.left, self.right, CLOSED)

    def contains_point(self, t: Fraction) -> bool:
        if self.closed:
            return self.left <= t <= self.right
        return self.left < t < self.right

    def __str__(self) -> str:
        lo, hi = ("[", "]") if self.closed else ("(", ")")
        return f"{lo}{self.left}, {self.right}{hi}"


def closed(left, right) -> Interval:
    return Interval(Fraction(left), Fraction(right), CLOSED)


def open_(left, right) -> Interval:
    return Interval(Fraction(left), Fraction(right), OPEN)


@dataclass(frozen=True)
class Representation:
    intervals: Mapping[str, Interval]
    semantics: str = "oc"
    unit_length: Fraction | None = None

    def __post_init__(self):
        if self.semantics not in SEMANTICS:
            raise IntervalError(f"unknown semantics {self.semantics!r}")
        object.__setattr__(self, "intervals", dict(self.intervals))
        if self.semantics == "closed":
            bad = [x for x, iv in self.intervals.items() if not iv.closed]
            if bad:
                raise IntervalError(f"closed-only representation has open intervals for {bad}")
        if self.unit_length is not None:
            u = Fraction(self.unit_length)
            object.__setattr__(self, "unit_length", u)
            bad = [x for x, iv in self.intervals.items() if iv.length != u]
            if bad:
                raise IntervalError(f"intervals of {bad} do not have length {u}")

    def __getitem__(self, x: str) -> Interval:
        return self.intervals[x]

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def items(self):
        return self.intervals.items()

    def precedes(self, I: Interval, J: Interval) -> bool:
        if self.semantics == "closed":
            return I.right < J.left
        return precedes_oc(I, J)


# -- precedence and realization --------------------------------------------


def precedes_oc(I: Interval, J: Interval) -> bool:
    """Every point of ``I`` is below every point of ``J``."""
    if I.right < J.left:
        return True
    return I.right == J.left and not (I.closed and J.closed)


def _require_total(P: Poset, rep: Representation) -> None:
    missing = [x for x in P.elements if x not in rep.intervals]
    if missing:
        raise IntervalError(f"representation has no interval for {missing}")


def realization_mismatches(P: Poset, rep: Representation) -> list[tuple[str, str]]:
    """Ordered pairs ``(x, y)`` where ``x < y`` in ``P`` disagrees with ``rep``."""
    _require_total(P, rep)
    out = []
    els = P.elements
    for x in els:
        ix = rep[x]
        for y in els:
            if x != y and P.less(x, y) != rep.precedes(ix, rep[y]):
                out.append((x, y))
    return out


def realizes(P: Poset, rep: Representation) -> bool:
    """True iff ``rep`` induces exactly the order of ``P``.

    Runs in ``O(n log n)`` comparisons plus ``O(n^2 / w)`` bit operations by
    comparing, per element, the bitmask of intervals lying to its right
    against the up set.
    """
    _require_total(P, rep)
    n = len(P)
    order = sorted(range(n), key=lambda i: rep[P.elements[i]].left)
    lefts = [rep[P.elements[i]].left for i in order]
    suffix = [0] * (n + 1)
    for pos in range(n - 1, -1, -1):
        suffix[pos] = suffix[pos + 1] | (1 << order[pos])
    oc = rep.semantics == "oc"
    for i, x in enumerate(P.elements):
        I = rep[x]
        lo = bisect_left(lefts, I.right)
        hi = bisect_right(lefts, I.right)
        mask = suffix[hi]
        if oc:
            for pos in range(lo, hi):
                j = order[pos]
                if j != i and not (I.closed and rep[P.elements[j]].closed):
                    mask |= 1 << j
        mask &= ~(1 << i)
        if mask != P.up_mask(i):
            return False
    return True


# -- containment properties ---------------------------------------------------


def contains(outer: Interval, inner: Interval) -> bool:
    """Set containment ``inner ⊆ outer`` respecting open/closed ends."""
    if outer.left > inner.left or (outer.left == inner.left and not outer.closed and inner.closed):
        return False
    if outer.right < inner.right or (outer.right == inner.right and not outer.closed and inner.closed):
        return False
    return True


def strictly_contains(outer: Interval, inner: Interval) -> bool:
    """``inner ⊆ outer`` with a different endpoint pair."""
    return (outer.left, outer.right) != (inner.left, inner.right) and contains(outer, inner)


def properly_contains(outer: Interval, inner: Interval) -> bool:
    """``inner ⊊ outer`` as point sets."""
    return outer != inner and contains(outer, inner)


def _pairs(rep: Representation):
    items = list(rep.items())
    for x, I in items:
        for y, J in items:
            if x != y:
                yield x, I, y, J


def is_unit(rep: Representation) -> bool:
    return len({iv.length for iv in rep.intervals.values()}) <= 1


def is_strict_pairwise(rep: Representation) -> bool:
    return not any(strictly_contains(I, J) for _, I, _, J in _pairs(rep))


def _shared_end_nesting(groups: dict[Fraction, list[tuple[Fraction, bool, bool]]]) -> bool:
    # groups: shared endpoint -> [(other endpoint, has_closed, has_open)] sorted
    # from widest to narrowest.  Widest with a closed member contains the
    # rest; an open member below the widest sits inside it; with three
    # widths the second widest is closed and contains the narrowest.
    for members in groups.values():
        if len(members) < 2:
            continue
        if members[0][1] or len(members) >= 3 or any(m[2] for m in members[1:]):
            return True
    return False


def is_strict(rep: Representation) -> bool:
    """No interval strictly contains another; ``O(n log n)``."""
    styles: dict[tuple[Fraction, Fraction], list[bool]] = {}
    for iv in rep.intervals.values():
        flags = styles.setdefault((iv.left, iv.right), [False, False])
        flags[0 if iv.closed else 1] = True
    pairs = sorted(styles)
    # Both ends strictly inside: an earlier left end with a larger right end.
    best = None
    i = 0
    while i < len(pairs):
        j = i
        while j < len(pairs) and pairs[j][0] == pairs[i][0]:
            j += 1
        if best is not None and any(pairs[t][1] < best for t in range(i, j)):
            return False
        top = max(pairs[t][1] for t in range(i, j))
        best = top if best is None else max(best, top)
        i = j
    by_left: dict[Fraction, list] = {}
    by_right: dict[Fraction, list] = {}
    for (l, r), (c, o) in styles.items():
        by_left.setdefault(l, []).append((r, c, o))
        by_right.setdefault(r, []).append((-l, c, o))
    for g in (by_left, by_right):
        for members in g.values():
            members.sort(key=lambda m: m[0], reverse=True)
    return not (_shared_end_nesting(by_left) or _shared_end_nesting(by_right))


def is_proper(rep: Representation) -> bool:
    return not any(properly_contains(I, J) for _, I, _, J in _pairs(rep))


def has_distinct_endpoints(rep: Representation) -> bool:
    ends = [e for iv in rep.intervals.values() for e in (iv.left, iv.right)]
    return len(set(ends)) == len(ends)


def strict_containments(rep: Representation) -> set[tuple[str, str]]:
    """All ``(inner, outer)`` pairs with a strict containment."""
    return {(y, x) for x, I, y, J in _pairs(rep) if strictly_contains(I, J)}


# -- conversions ----------------------------------------------------------------


def _common_point(I: Interval, J: Interval) -> Fraction:
    lo, hi = max(I.left, J.left), min(I.right, J.right)
    # Any point of a non-degenerate overlap's interior is in both intervals
    # regardless of styles; a degenerate overlap is a shared closed point.
    if lo > hi:
        raise IntervalError(f"{I} and {J} do not intersect")
    mid = (lo + hi) / 2
    if not (I.contains_point(mid) and J.contains_point(mid)):
        raise IntervalError(f"{I} and {J} do not intersect")
    return mid


def oc_to_closed(P: Poset, rep: Representation) -> Representation:
    """Closed representation of ``P`` from an OC one.

    Each incomparable pair ``u, v`` picks a common point ``x_uv`` (midpoint of
    the overlap) and ``v`` becomes the closed hull of its chosen points.
    Elements comparable to everything get the point interval at their own
    midpoint.
    """
    if rep.semantics != "oc":
        rep = Representation(rep.intervals, "oc")
    if not realizes(P, rep):
        raise IntervalError("input representation does not realize the poset")
    lo: dict[str, Fraction] = {}
    hi: dict[str, Fraction] = {}
    els = P.elements
    for a, u in enumerate(els):
        for v in els[a + 1:]:
            if P.incomparable(u, v):
                t = _common_point(rep[u], rep[v])
                for z in (u, v):
                    lo[z] = min(lo.get(z, t), t)
                    hi[z] = max(hi.get(z, t), t)
    out = {}
    for v in els:
        if v in lo:
            out[v] = closed(lo[v], hi[v])
        else:
            m = (rep[v].left + rep[v].right) / 2
            out[v] = closed(m, m)
    return Representation(out, "closed")


def closure_dedupe(rep: Representation) -> tuple[Representation, dict[str, str]]:
    """Close every interval and keep one element per distinct closure.

    Returns the closed family on the representatives (first element in
    iteration order for each closure) and the element -> representative
    map.  Refuses non-strict input, and checks the result is proper.
    """
    if not is_strict(rep):
        raise IntervalError("closure_dedupe needs a strict representation")
    first: dict[tuple[Fraction, Fraction], str] = {}
    rep_map = {}
    for x, iv in rep.items():
        key = (iv.left, iv.right)
        rep_map[x] = first.setdefault(key, x)
    out = Representation({x: closed(l, r) for (l, r), x in first.items()}, "closed")
    if not is_proper(out):
        raise IntervalError("closures of a strict representation are not proper")
    return out, rep_map


def representation_from_pairs(pairs: Mapping[str, tuple], semantics: str = "oc") -> Representation:
    """Convenience: ``{x: (left, right, style)}`` or ``{x: (left, right)}``."""
    ivs = {}
    for x, t in pairs.items():
        style = t[2] if len(t) > 2 else CLOSED
        ivs[x] = Interval(Fraction(t[0]), Fraction(t[1]), style)
    return Representation(ivs, semantics)


def endpoint_values(rep: Representation) -> Iterable[Fraction]:
    for iv in rep.intervals.values():
        yield iv.left
        yield iv.right
