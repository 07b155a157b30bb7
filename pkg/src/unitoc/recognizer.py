"""Twin-free recognition: initial representation, inclusion scan, retraction.

Given a twin-free poset, :func:`recognize_twin_free` either returns a strict
OC interval representation or a certificate: a 2+2 (not an interval order)
or one of 4+1, 3+1+1, D, Y, dual Y, Z induced in the input.

Stage 2 walks the sorted endpoints keeping a queue of open left endpoints.
When a right endpoint arrives, the position of its partner in the queue
tells whether the interval is uncontained (front), strictly inside exactly
one other interval (second), or inside two (deeper).  Stage 3 retracts the
unique left and right peekers of every containment onto the outer
interval's ends, then replaces each inner interval by the open interval
spanned by its outer one.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .builder import (ElementTable, EndpointTable, build_tables, greenough_representation,
                      peeking_refinement)
from .catalog import Certificate, ForbiddenKind, find_forbidden, verify_certificate
from .errors import IntervalError, InternalError, OracleBoundError, TwinError
from .intervals import Representation, closed, is_strict, open_, realizes
from .poset import DownSetChain, Poset, TwoPlusTwoWitness, down_up_chain, is_twin_free

log = logging.getLogger(__name__)

K = ForbiddenKind


@dataclass(frozen=True)
class RecognizerOutcome:
    """Exactly one of ``representation`` and ``certificate`` is set."""

    representation: Representation | None = None
    certificate: Certificate | None = None

    def __post_init__(self):
        if (self.representation is None) == (self.certificate is None):
            raise ValueError("outcome needs exactly one of representation or certificate")

    @property
    def accepted(self) -> bool:
        return self.representation is not None


class Trace(list):
    """Line-oriented event log; events are plain strings."""

    def emit(self, event: str, *args) -> None:
        self.append(" ".join([event, *map(str, args)]))


def _emit(trace: Trace | None, event: str, *args) -> None:
    if trace is not None:
        trace.emit(event, *args)


class _IndexQueue:
    """FIFO over table indices with O(1) removal from any position."""

    def __init__(self, size: int):
        self.prev = [0] * (size + 1)
        self.next = [0] * (size + 1)
        self.member = [False] * (size + 1)
        self.head = 0
        self.tail = 0

    def push(self, j: int) -> None:
        self.member[j] = True
        self.prev[j] = self.tail
        self.next[j] = 0
        if self.tail:
            self.next[self.tail] = j
        else:
            self.head = j
        self.tail = j

    def remove(self, j: int) -> None:
        if not self.member[j]:
            raise InternalError(f"index {j} is not on the queue")
        p, n = self.prev[j], self.next[j]
        if p:
            self.next[p] = n
        else:
            self.head = n
        if n:
            self.prev[n] = p
        else:
            self.tail = p
        self.member[j] = False

    def __iter__(self):
        j = self.head
        while j:
            yield j
            j = self.next[j]


# -- stage 1 -------------------------------------------------------------------


@dataclass(frozen=True)
class InitialRepresentation:
    chain: DownSetChain
    greenough: Representation
    refined: Representation
    endpoints: EndpointTable
    elements: ElementTable


def initial_representation(P: Poset) -> InitialRepresentation | Certificate:
    """Down/up-set indexing, distinct-endpoint widening, and the two tables."""
    chain = down_up_chain(P)
    if isinstance(chain, TwoPlusTwoWitness):
        return Certificate(K.TwoPlusTwo, chain.as_embedding())
    green = greenough_representation(P, chain)
    refined = peeking_refinement(green, P)
    A, B = build_tables(refined)
    return InitialRepresentation(chain, green, refined, A, B)


# -- peekers ---------------------------------------------------------------------


def locate_peekers(A: EndpointTable, B: ElementTable, inner: str, outer: str,
                   side: str, limit: int = 2) -> list[str]:
    """Up to ``limit`` peekers into ``outer``/``inner``, nearest to ``inner`` first.

    Left peekers are right endpoints strictly between the two left ends;
    right peekers are left endpoints strictly between the two right ends.
    """
    if inner == outer:
        raise IntervalError("an interval is not strictly inside itself")
    (li, ri), (lo, ro) = B.index_pair[inner], B.index_pair[outer]
    if not (lo < li and ri < ro):
        raise IntervalError(f"{inner!r} is not strictly inside {outer!r}")
    found = []
    if side == "left":
        span, want = range(li - 1, lo, -1), "R"
    elif side == "right":
        span, want = range(ri + 1, ro), "L"
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    for t in span:
        if A.side(t) == want:
            found.append(A.element(t))
            if len(found) >= limit:
                break
    if not found:
        raise InternalError(f"no {side} peeker into {outer}/{inner}: peeking property violated")
    return found


# -- certificates ------------------------------------------------------------------


_F_AND_22 = (K.TwoPlusTwo, K.FourPlusOne, K.ThreePlusOnePlusOne, K.Z, K.D, K.Y, K.YDual)


def _certify(P: Poset, kind: ForbiddenKind, mapping: dict[str, str],
             trace: Trace | None) -> Certificate:
    cert = Certificate(kind, mapping)
    if verify_certificate(P, cert):
        _emit(trace, "certificate", kind.value, *(f"{p}={h}" for p, h in mapping.items()))
        return cert
    log.warning("constructed %s certificate %s failed verification; searching", kind, mapping)
    catalog = _F_AND_22
    mask = 0
    for h in mapping.values():
        mask |= 1 << P.index(h)
    found = find_forbidden(P, catalog, within=mask)
    if found is None:
        try:
            found = find_forbidden(P, catalog)
        except OracleBoundError:
            found = None
    if found is None:
        raise InternalError(f"could not certify {kind} on {mapping}")
    _emit(trace, "certificate", found.kind.value, *(f"{p}={h}" for p, h in found.embedding.items()))
    return found


def _chain_or(P: Poset, kind: ForbiddenKind, mapping: dict[str, str], pair: tuple[str, str],
              chain_of, trace: Trace | None) -> Certificate:
    # Two same-side peekers are normally incomparable (giving Y or its dual);
    # if they are comparable they extend the chain to a 4+1.
    p, q = pair
    if P.less(p, q) or P.less(q, p):
        lo, hi = (p, q) if P.less(p, q) else (q, p)
        return _certify(P, K.FourPlusOne, chain_of(lo, hi), trace)
    return _certify(P, kind, mapping, trace)


# -- stage 2 ---------------------------------------------------------------------------


def stage2_scan(A: EndpointTable, B: ElementTable, P: Poset,
                trace: Trace | None = None) -> Certificate | None:
    """Record every strict inclusion in ``B`` or return a certificate.

    On ``None`` the representation has no interval strictly containing two
    others, none strictly inside two others, and a unique left and right
    peeker for each inclusion.
    """
    Q = _IndexQueue(len(A))
    for j in range(1, len(A) + 1):
        if A.side(j) == "L":
            Q.push(j)
            _emit(trace, "push", j, A.element(j))
            continue
        x = A.element(j)
        i = B.left(x)
        if not Q.member[i]:
            raise InternalError(f"left index {i} of {x!r} missing from queue")
        front = Q.head
        if front == i:
            Q.remove(i)
            _emit(trace, "pop", i, x)
            continue
        if Q.next[front] != i:
            # inside two intervals
            k1, k2 = front, Q.next[front]
            v1, v2 = A.element(k1), A.element(k2)
            u1 = locate_peekers(A, B, x, v2, "left", 1)[0]
            narrower = v1 if B.right(v1) < B.right(v2) else v2
            u2 = locate_peekers(A, B, x, narrower, "right", 1)[0]
            return _certify(P, K.ThreePlusOnePlusOne,
                            {"a": u1, "b": x, "c": u2, "x": v1, "y": v2}, trace)

        w = A.element(front)
        B.containers[x].add(w)
        B.contained[w].add(x)
        _emit(trace, "inclusion", x, w)
        if len(B.contained[w]) >= 2:
            y = next(e for e in sorted(B.contained[w]) if e != x)
            u1 = locate_peekers(A, B, y, w, "left", 1)[0]
            u2 = locate_peekers(A, B, x, w, "right", 1)[0]
            kind = K.FourPlusOne if B.right(y) < B.left(x) else K.D
            return _certify(P, kind, {"a": u1, "b": y, "c": x, "d": u2, "x": w}, trace)

        lefts = locate_peekers(A, B, x, w, "left", 2)
        rights = locate_peekers(A, B, x, w, "right", 2)
        if len(lefts) >= 2:
            p1, p2 = lefts
            return _chain_or(P, K.YDual, {"b": p1, "c": p2, "d": x, "a": rights[0], "x": w},
                             (p1, p2),
                             lambda lo, hi: {"a": lo, "b": hi, "c": x, "d": rights[0], "x": w},
                             trace)
        if len(rights) >= 2:
            q1, q2 = rights
            return _chain_or(P, K.Y, {"a": lefts[0], "d": x, "b": q1, "c": q2, "x": w},
                             (q1, q2),
                             lambda lo, hi: {"a": lefts[0], "b": x, "c": lo, "d": hi, "x": w},
                             trace)
        Q.remove(i)
        _emit(trace, "remove", i, x)
    return None


# -- stage 3 ---------------------------------------------------------------------------


def _meets(L: dict, R: dict, a: str, b: str) -> bool:
    return L[a] <= R[b] and L[b] <= R[a]


def locate_z(A: EndpointTable, B: ElementTable, P: Poset, u: str, v: str, u2: str, v2: str,
             trace: Trace | None = None) -> Certificate:
    """Six elements inducing Z from two overlapping containments.

    ``u`` sits in ``v`` and ``u2`` in ``v2``, ``v2`` starts first, ``v2``
    meets ``u`` but ``u`` misses ``u2``.
    """
    w1 = locate_peekers(A, B, u2, v2, "left", 1)[0]
    w2 = locate_peekers(A, B, u, v, "right", 1)[0]
    return _certify(P, K.Z, {"a": w1, "b": u2, "c": u, "d": w2, "x": v2, "y": v}, trace)


def stage3_retract(A: EndpointTable, B: ElementTable, rep: Representation, P: Poset,
                   trace: Trace | None = None) -> Representation | Certificate:
    """Pull each containment's peekers onto the outer interval's ends, or find Z."""
    L = {x: iv.left for x, iv in rep.items()}
    R = {x: iv.right for x, iv in rep.items()}
    Qh = _IndexQueue(len(A))
    for j in range(1, len(A) + 1):
        v = A.element(j)
        if not B.contained[v]:
            continue
        (u,) = B.contained[v]
        if A.side(j) == "L":
            for i in Qh:
                v_prev = A.element(i)
                (u_prev,) = B.contained[v_prev]
                if _meets(L, R, v_prev, u) and not _meets(L, R, u, u_prev):
                    return locate_z(A, B, P, u, v, u_prev, v_prev, trace)
            Qh.push(j)
            _emit(trace, "push-outer", j, v)
        else:
            Qh.remove(B.left(v))
            x = locate_peekers(A, B, u, v, "left", 1)[0]
            y = locate_peekers(A, B, u, v, "right", 1)[0]
            R[x] = L[v]
            L[y] = R[v]
            _emit(trace, "retract", x, "R:=", L[v], y, "L:=", R[v])
    return Representation({x: closed(L[x], R[x]) for x in rep}, "closed")


def stage3_expand(B: ElementTable, rep: Representation,
                  trace: Trace | None = None) -> Representation:
    """Replace every inner interval by the open interval of its container."""
    out = dict(rep.intervals)
    for u in rep:
        outer = B.containers.get(u)
        if outer:
            (v,) = outer
            out[u] = open_(rep[v].left, rep[v].right)
            _emit(trace, "expand", u, v)
    return Representation(out, "oc")


# -- orchestration ----------------------------------------------------------------------


def recognize_twin_free(P: Poset, trace: Trace | None = None,
                        verify: bool = True) -> RecognizerOutcome:
    """Strict OC representation of ``P`` or a certificate (2+2 or from ``F``)."""
    if not is_twin_free(P):
        raise TwinError("input has twins; use recognize_general for posets with twins")
    init = initial_representation(P)
    if isinstance(init, Certificate):
        _emit(trace, "certificate", init.kind.value,
              *(f"{p}={h}" for p, h in init.embedding.items()))
        return RecognizerOutcome(certificate=init)
    A, B = init.endpoints, init.elements
    cert = stage2_scan(A, B, P, trace)
    if cert is not None:
        return RecognizerOutcome(certificate=cert)
    retracted = stage3_retract(A, B, init.refined, P, trace)
    if isinstance(retracted, Certificate):
        return RecognizerOutcome(certificate=retracted)
    final = stage3_expand(B, retracted, trace)
    if verify and not (realizes(P, final) and is_strict(final)):
        raise InternalError("stage 3 produced a representation that fails verification")
    return RecognizerOutcome(representation=final)

