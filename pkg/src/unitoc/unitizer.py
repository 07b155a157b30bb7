"""Unit-length representations and the general (twins allowed) entry point.

A strict OC representation becomes a unit one in three steps: close every
interval and keep one element per distinct closure, re-place the resulting
proper family with unit intervals that keep exactly the same touching pairs
``R(u) = L(v)``, then copy the unit endpoints back to every element with its
original open/closed style.

The re-placement solves a system of difference constraints on left
endpoints ``l_x``: for representatives ordered by left end, a pair that is
disjoint needs ``l_y - l_x > 1``, a touching pair ``= 1`` and an overlapping
pair ``0 < l_y - l_x < 1``.  Strict bounds get a slack ``1/(2n+2)``, small
enough that a simple cycle of at most ``n`` strict edges cannot change
feasibility, and the system is solved exactly by Bellman-Ford.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .catalog import Certificate, ForbiddenKind, T_KINDS, find_forbidden, verify_certificate
from .errors import InternalError, IntervalError
from .intervals import (Interval, Representation, closed, closure_dedupe, is_proper, is_strict,
                        is_unit, realizes)
from .poset import Poset, iter_bits, reduce_twins, twin_classes
from .recognizer import RecognizerOutcome, Trace, recognize_twin_free

log = logging.getLogger(__name__)

K = ForbiddenKind

EQ1 = "eq1"
GT1 = "gt1"
BETWEEN01 = "between01"

LIFT_DISTINGUISHER_CAP = 3


@dataclass(frozen=True)
class UnitConstraint:
    x: str
    y: str
    relation: str


@dataclass(frozen=True)
class UnitConstraintSystem:
    """Constraints on left endpoints; ``variables`` are in left-endpoint order."""

    variables: tuple[str, ...]
    constraints: tuple[UnitConstraint, ...]

    def satisfied_by(self, l: Mapping[str, Fraction]) -> bool:
        for c in self.constraints:
            d = l[c.y] - l[c.x]
            if c.relation == EQ1 and d != 1:
                return False
            if c.relation == GT1 and not d > 1:
                return False
            if c.relation == BETWEEN01 and not 0 < d < 1:
                return False
        return True


def unit_constraints(proper: Representation) -> UnitConstraintSystem:
    """All pairwise constraints for a proper, deduplicated closed family."""
    items = sorted(proper.items(), key=lambda kv: kv[1].left)
    for (x, I), (y, J) in zip(items, items[1:]):
        if I.left == J.left or I.right >= J.right:
            raise IntervalError(f"{x!r} and {y!r} are nested or share a left end; need proper input")
    out = []
    for a, (x, I) in enumerate(items):
        for y, J in items[a + 1:]:
            if I.right < J.left:
                rel = GT1
            elif I.right == J.left:
                rel = EQ1
            else:
                rel = BETWEEN01
            out.append(UnitConstraint(x, y, rel))
    return UnitConstraintSystem(tuple(x for x, _ in items), tuple(out))


def _solve(system: UnitConstraintSystem) -> dict[str, Fraction]:
    names = system.variables
    m = len(names)
    if m == 0:
        return {}
    pos = {x: i for i, x in enumerate(names)}
    scale = 2 * m + 2  # one unit of the scaled system is the slack 1/(2m+2)
    # For each y only the last disjoint predecessor, the touching one and
    # the first overlapping one bind; the rest follow from l increasing.
    last_gt: dict[int, int] = {}
    first_between: dict[int, int] = {}
    edges: list[tuple[int, int, int]] = []  # (u, v, w): l_v - l_u <= w
    for c in system.constraints:
        i, j = pos[c.x], pos[c.y]
        if c.relation == GT1:
            last_gt[j] = max(last_gt.get(j, -1), i)
        elif c.relation == EQ1:
            edges.append((i, j, scale))
            edges.append((j, i, -scale))
        else:
            first_between[j] = min(first_between.get(j, m), i)
    for j, i in last_gt.items():
        edges.append((j, i, -(scale + 1)))
    for j, i in first_between.items():
        edges.append((i, j, scale - 1))
    for i in range(m - 1):
        edges.append((i + 1, i, -1))

    dist = [0] * m
    for _ in range(m):
        changed = False
        for u, v, w in edges:
            if dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
                changed = True
        if not changed:
            break
    else:
        raise InternalError("unit constraint system is infeasible")
    base = min(dist)
    sol = {names[i]: Fraction(dist[i] - base, scale) for i in range(m)}
    if not system.satisfied_by(sol):
        raise InternalError("unit constraint solution violates a constraint")
    return sol


def proper_to_unit(proper: Representation) -> Representation:
    """Unit closed representation with the same order and the same touching pairs."""
    if not is_proper(proper):
        raise IntervalError("proper_to_unit needs a proper representation")
    system = unit_constraints(proper)
    sol = _solve(system)
    out = {x: closed(sol[x], sol[x] + 1) for x in proper}
    return Representation(out, "closed", unit_length=Fraction(1) if out else None)


def touching_pairs(rep: Representation) -> set[tuple[str, str]]:
    """Ordered pairs ``(u, v)`` with ``R(u) = L(v)``, ``u != v``."""
    by_left: dict[Fraction, list[str]] = {}
    for v, iv in rep.items():
        by_left.setdefault(iv.left, []).append(v)
    return {(u, v) for u, iv in rep.items() for v in by_left.get(iv.right, ()) if u != v}


def strict_to_unit(P: Poset, strict: Representation) -> Representation:
    """Unit OC representation of ``P`` from a strict OC one."""
    if not is_strict(strict):
        raise IntervalError("strict_to_unit needs a strict representation")
    proper, rep_map = closure_dedupe(strict)
    unit = proper_to_unit(proper)
    out = {}
    for x, iv in strict.items():
        u = unit[rep_map[x]]
        out[x] = Interval(u.left, u.right, iv.style)
    result = Representation(out, "oc", unit_length=Fraction(1) if out else None)
    if not realizes(P, result):
        raise InternalError("unit representation does not realize the poset")
    return result


# -- general mode ------------------------------------------------------------------


def _pattern_twin_pairs(kind: ForbiddenKind) -> list[tuple[str, str]]:
    from .catalog import catalog_poset

    pairs = []
    for cls in twin_classes(catalog_poset(kind)):
        for a in range(len(cls)):
            for b in range(a + 1, len(cls)):
                pairs.append((cls[a], cls[b]))
    return pairs


def _distinguishers(P: Poset, p: str, q: str, exclude: set[str], cap: int) -> list[str]:
    i, j = P.index(p), P.index(q)
    diff = (P.down_mask(i) ^ P.down_mask(j)) | (P.up_mask(i) ^ P.up_mask(j))
    out = []
    for z in iter_bits(diff):
        name = P.elements[z]
        if name not in exclude:
            out.append(name)
            if len(out) >= cap:
                break
    return out


def lift_certificate(P: Poset, twin_map: Mapping[str, str], fcert: Certificate) -> Certificate:
    """Turn a certificate over the twin reduction into one from ``T`` (or 2+2) over ``P``.

    The twin reduction is an induced subposet of ``P`` on the same names, so
    2+2, 4+1 and Z pass through.  3+1+1, D and Y have a pair forced to be
    twins; some element of ``P`` tells them apart, and the witnesses plus
    such distinguishers contain a member of ``T``.
    """
    if fcert.kind in (K.TwoPlusTwo, K.FourPlusOne, K.Z) or fcert.kind in T_KINDS:
        if not verify_certificate(P, fcert):
            raise InternalError(f"passthrough certificate {fcert} does not verify in P")
        return fcert
    witnesses = set(fcert.embedding.values())
    candidates = set(witnesses)
    for p, q in _pattern_twin_pairs(fcert.kind):
        a, b = fcert.embedding[p], fcert.embedding[q]
        candidates.update(_distinguishers(P, a, b, witnesses, LIFT_DISTINGUISHER_CAP))
    mask = 0
    for x in candidates:
        mask |= 1 << P.index(x)
    catalog = T_KINDS | {K.TwoPlusTwo}
    cert = find_forbidden(P, catalog, within=mask)
    if cert is None:
        log.warning("local lift of %s failed; searching all of P", fcert.kind)
        cert = find_forbidden(P, catalog, within=(1 << len(P)) - 1)
    if cert is None or not verify_certificate(P, cert):
        raise InternalError(f"no member of T found while lifting {fcert}")
    return cert


def recognize_general(P: Poset, trace: Trace | None = None) -> RecognizerOutcome:
    """Unit OC representation of any poset, or a 2+2 / ``T`` certificate.

    Twins are collapsed first, the twin-free algorithm runs on the
    reduction, and twins then share their representative's interval.
    """
    reduced, twin_map = reduce_twins(P)
    outcome = recognize_twin_free(reduced, trace)
    if outcome.certificate is not None:
        cert = lift_certificate(P, twin_map, outcome.certificate)
        return RecognizerOutcome(certificate=cert)
    unit = strict_to_unit(reduced, outcome.representation)
    out = {x: unit[twin_map[x]] for x in P.elements}
    rep = Representation(out, "oc", unit_length=Fraction(1) if out else None)
    if not (realizes(P, rep) and is_unit(rep)):
        raise InternalError("general-mode representation fails verification")
    return RecognizerOutcome(representation=rep)
