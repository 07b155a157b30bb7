"""Ground truth for the recognizers: exhaustive enumeration and brute force.

Nothing in here calls the staged algorithm to decide membership; the
oracle is a plain induced-subposet search over the forbidden catalog.
"""

from __future__ import annotations

import itertools
import json
import string
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from .catalog import DEFAULT_ORACLE_BOUND, F_KINDS, T_KINDS, ForbiddenKind, catalog_poset, find_forbidden, verify_certificate
from .errors import OracleBoundError, TwinError
from .intervals import Interval, Representation, closure_dedupe, is_strict, is_unit, realizes
from .poset import Poset, build_poset, induced, is_twin_free, iter_bits, reduce_twins
from .recognizer import recognize_twin_free
from .unitizer import proper_to_unit, recognize_general, touching_pairs

ENUMERATION_BOUND = 7
_NAMES = string.ascii_lowercase


def element_names(n: int) -> list[str]:
    if n <= len(_NAMES):
        return list(_NAMES[:n])
    return [f"e{i}" for i in range(n)]


def _extensions(down: list[int], up: list[int], n: int) -> Iterator[tuple[int, int]]:
    # (down set, up set) choices for a new element on top of the poset
    # {0..n-1}: a down-closed set and an up-closed set with everything in the
    # former below everything in the latter.
    # Only already-decided elements are checked; later ones check against i.
    def rec(i: int, d: int, u: int):
        if i == n:
            yield d, u
            return
        bit = 1 << i
        dec = bit - 1
        if not (down[i] & u) and not (up[i] & d):
            yield from rec(i + 1, d, u)
        if not (down[i] & dec & ~d) and not (u & ~up[i]):
            yield from rec(i + 1, d | bit, u)
        if not (up[i] & dec & ~u) and not (d & ~down[i]):
            yield from rec(i + 1, d, u | bit)

    yield from rec(0, 0, 0)


def _enumerate_masks(n: int) -> Iterator[list[int]]:
    if n == 0:
        yield []
        return
    for down in _enumerate_masks(n - 1):
        up = [0] * (n - 1)
        for i, m in enumerate(down):
            for j in iter_bits(m):
                up[j] |= 1 << i
        new = n - 1
        for d, u in _extensions(down, up, n - 1):
            nd = list(down) + [d]
            for j in iter_bits(u):
                nd[j] |= 1 << new
            yield nd


def enumerate_posets(n: int, bound: int = ENUMERATION_BOUND) -> Iterator[Poset]:
    """Every labeled strict partial order on ``n`` elements, exactly once."""
    if n > bound:
        raise OracleBoundError(f"enumeration of n={n} exceeds bound {bound}")
    names = element_names(n)
    for down in _enumerate_masks(n):
        yield Poset(names, down)


def brute_force_count(n: int) -> int:
    """Count labeled posets by filtering all relations; only for tiny ``n``."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    count = 0
    for bits in range(1 << len(pairs)):
        rel = {pairs[t] for t in range(len(pairs)) if bits >> t & 1}
        if any((j, i) in rel for i, j in rel):
            continue
        if all((i, k) in rel for i, j in rel for j2, k in rel if j == j2):
            count += 1
    return count


def oracle_is_unit_oc(P: Poset, bound: int = DEFAULT_ORACLE_BOUND) -> bool:
    """No induced 2+2 and no induced member of ``T``, by exhaustive search."""
    if find_forbidden(P, "TwoTwoOnly", bound=bound) is not None:
        return False
    return find_forbidden(P, "T", bound=bound) is None


# -- differential testing ------------------------------------------------------------


@dataclass
class EnumerationReport:
    n: int
    total_labeled: int = 0
    agreements: int = 0
    disagreements: int = 0
    disagreement_samples: list[str] = field(default_factory=list)
    twin_free: int = 0
    representations: int = 0
    certificates: int = 0
    star_checks: int = 0

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    def merge(self, other: EnumerationReport) -> EnumerationReport:
        out = EnumerationReport(max(self.n, other.n))
        for f in ("total_labeled", "agreements", "disagreements", "twin_free",
                  "representations", "certificates", "star_checks"):
            setattr(out, f, getattr(self, f) + getattr(other, f))
        out.disagreement_samples = self.disagreement_samples + other.disagreement_samples
        return out


def check_star_property(strict: Representation, unit_closed: Representation,
                        rep_map: dict[str, str]) -> bool:
    """Touching pairs among closure representatives survive unitization, both ways."""
    reps = set(rep_map.values())
    before = {(u, v) for u, v in touching_pairs(Representation(
        {x: Interval(strict[x].left, strict[x].right) for x in reps}, "closed"))}
    after = touching_pairs(unit_closed)
    return before == after


@dataclass
class PosetCheck:
    problems: list[str] = field(default_factory=list)
    accepted: bool = False
    star_checked: bool = False


def check_poset(P: Poset, oracle: bool = True) -> PosetCheck:
    """Run every cross-check on one poset and collect the problems.

    With ``oracle=False`` only the self-checks run (certificates verify,
    representations realize), which is what large random inputs can afford.
    """
    out = PosetCheck()
    problems = out.problems
    outcome = recognize_general(P)
    out.accepted = outcome.accepted
    expected = oracle_is_unit_oc(P) if oracle else outcome.accepted
    if outcome.accepted != expected:
        problems.append(f"general verdict {outcome.accepted} but oracle says {expected}")
    if outcome.representation is not None:
        rep = outcome.representation
        if not (realizes(P, rep) and is_unit(rep)):
            problems.append("general representation fails realizes/is_unit")
        _, twin_map = reduce_twins(P)
        if any(rep[x] != rep[t] for x, t in twin_map.items()):
            problems.append("twins received different intervals")
    else:
        cert = outcome.certificate
        if not verify_certificate(P, cert):
            problems.append(f"general certificate {cert} does not verify")
        if cert.kind is not ForbiddenKind.TwoPlusTwo and cert.kind not in T_KINDS:
            problems.append(f"general certificate kind {cert.kind.value} outside T and 2+2")

    if is_twin_free(P):
        tf = recognize_twin_free(P)
        if oracle:
            tf_expected = (find_forbidden(P, "F") is None
                           and find_forbidden(P, "TwoTwoOnly") is None)
            if tf.accepted != tf_expected:
                problems.append(f"twin-free verdict {tf.accepted} but F-oracle says {tf_expected}")
        if tf.representation is not None:
            strict = tf.representation
            if not (realizes(P, strict) and is_strict(strict)):
                problems.append("twin-free representation fails realizes/is_strict")
            proper, rep_map = closure_dedupe(strict)
            unit = proper_to_unit(proper)
            out.star_checked = True
            if not check_star_property(strict, unit, rep_map):
                problems.append("touching pairs not preserved by unitization")
        elif not verify_certificate(P, tf.certificate):
            problems.append(f"twin-free certificate {tf.certificate} does not verify")
    return out


def catalog_checks() -> list[str]:
    """Every catalog poset is rejected, and every ``T`` member is minimal."""
    problems = []
    for kind in F_KINDS:
        # Members with a twin pair are refused as input; the rest get a certificate.
        try:
            if recognize_twin_free(catalog_poset(kind)).accepted:
                problems.append(f"{kind.value} accepted in twin-free mode")
        except TwinError:
            pass
    for kind in T_KINDS:
        P = catalog_poset(kind)
        if recognize_general(P).accepted:
            problems.append(f"{kind.value} accepted in general mode")
        for x in P.elements:
            Q = induced(P, [y for y in P.elements if y != x])
            if not recognize_general(Q).accepted or not oracle_is_unit_oc(Q):
                problems.append(f"{kind.value} minus {x} is rejected")
    return problems


def differential_suite(n_max: int = 6, progress: Callable[[int, int], None] | None = None,
                       sample_limit: int = 20) -> EnumerationReport:
    """Compare the recognizers with the oracle on every labeled poset up to ``n_max``."""
    from .textio import format_poset

    report = EnumerationReport(n_max)
    for n in range(n_max + 1):
        for P in enumerate_posets(n):
            report.total_labeled += 1
            if is_twin_free(P):
                report.twin_free += 1
            check = check_poset(P)
            if check.accepted:
                report.representations += 1
            else:
                report.certificates += 1
            report.star_checks += check.star_checked
            if check.problems:
                report.disagreements += 1
                if len(report.disagreement_samples) < sample_limit:
                    report.disagreement_samples.append(
                        format_poset(P, name="; ".join(check.problems), kind="full"))
            else:
                report.agreements += 1
        if progress is not None:
            progress(n, report.total_labeled)
    for problem in catalog_checks():
        report.disagreements += 1
        report.disagreement_samples.append(f"# catalog: {problem}\n")
    return report


# -- random generators -------------------------------------------------------------


def _order_from_intervals(names: list[str], ivs: list[Interval], oc: bool) -> Poset:
    n = len(ivs)
    down = [0] * n
    for i, I in enumerate(ivs):
        for j, J in enumerate(ivs):
            if i != j:
                if J.right < I.left or (oc and J.right == I.left and not (J.closed and I.closed)):
                    down[i] |= 1 << j
    return Poset(names, down)


def _order_from_closed(names: list[str], lefts: list[Fraction], rights: list[Fraction]) -> Poset:
    # down[i] = { j : R(j) < L(i) }, via a sweep over sorted right ends
    n = len(names)
    by_right = sorted(range(n), key=lambda j: rights[j])
    prefix = [0] * (n + 1)
    for t, j in enumerate(by_right):
        prefix[t + 1] = prefix[t] | (1 << j)
    sorted_rights = [rights[j] for j in by_right]
    from bisect import bisect_left

    down = [prefix[bisect_left(sorted_rights, lefts[i])] for i in range(n)]
    return Poset(names, down)


def random_interval_order(n: int, seed: int, density: float = 8.0,
                          reduce: bool = False) -> Poset:
    """Closed-semantics order of ``n`` random unit intervals with distinct endpoints.

    Left ends are random integers in ``[0, span)`` with ``span`` chosen so a
    point is covered by about ``density`` intervals; element ``i`` is shifted
    by ``i/(n+1)`` so no two endpoints coincide.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rng = np.random.default_rng(seed)
    width = 64
    span = max(1, int(n * width / density))
    starts = rng.integers(0, span, size=n)
    lefts = [Fraction(int(s)) + Fraction(i, n + 1) for i, s in enumerate(starts)]
    rights = [l + width for l in lefts]
    P = _order_from_closed(element_names(n), lefts, rights)
    if reduce:
        P, _ = reduce_twins(P)
    return P


def fuzz_poset(rng: np.random.Generator, n: int) -> Poset:
    """Random interval order seeded with forbidden structure.

    Mostly unit intervals with random open/closed styles (unit OC members);
    a few long intervals nest several short ones (4+1, 3+1+1, D, Y, Z
    configurations); occasionally an extra comparability is forced and the
    relation closed (often a 2+2).
    """
    names = element_names(n)
    span = max(2, n // 3)
    n_long = int(rng.integers(0, 4)) if n >= 5 else 0
    ivs = []
    for i in range(n):
        left = Fraction(int(rng.integers(0, 4 * span)), 4)
        length = Fraction(int(rng.integers(5, 13)), 4) if i < n_long else Fraction(1)
        style = "open" if rng.random() < 0.3 else "closed"
        ivs.append(Interval(left, left + length, style))
    P = _order_from_intervals(names, ivs, oc=True)
    if n >= 4 and rng.random() < 0.15:
        a, b = (int(t) for t in rng.choice(n, size=2, replace=False))
        pairs = set(P.pairs())
        if (names[b], names[a]) not in pairs:
            pairs.add((names[a], names[b]))
            P = build_poset(names, pairs, mode="covers")
    return P


def all_twin_free(n: int) -> Iterator[Poset]:
    return (P for P in enumerate_posets(n) if is_twin_free(P))


def one_point_extensions(P: Poset, name: str = "y") -> Iterator[Poset]:
    """Every poset on ``P``'s elements plus ``name`` that restricts to ``P``."""
    n = len(P)
    down = list(P.down_masks)
    up = list(P.up_masks)
    for d, u in _extensions(down, up, n):
        nd = down + [d]
        for j in iter_bits(u):
            nd[j] |= 1 << n
        yield Poset(list(P.elements) + [name], nd)


def permutations_of(P: Poset) -> Iterator[dict[str, str]]:
    for perm in itertools.permutations(P.elements):
        yield dict(zip(P.elements, perm))
