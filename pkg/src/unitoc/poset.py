"""Finite strict partial orders stored as per-element bitmasks.

Elements are opaque strings.  Internally every element gets a dense index
and the relation is kept as two lists of Python ints: ``down[i]`` has bit
``j`` set when element ``j`` is strictly below element ``i``, ``up[i]`` the
other way round.  All operations treat a :class:`Poset` as an immutable
value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import OracleBoundError, PosetError

DEFAULT_PATTERN_BOUND = 7


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _up_from_down(down: Sequence[int]) -> list[int]:
    up = [0] * len(down)
    for i, mask in enumerate(down):
        bit = 1 << i
        for j in iter_bits(mask):
            up[j] |= bit
    return up


class Poset:
    """An irreflexive, transitive relation on a finite list of elements."""

    __slots__ = ("elements", "_index", "_down", "_up", "_hash")

    def __init__(self, elements: Sequence[str], down: Sequence[int],
                 up: Sequence[int] | None = None):
        # Trusted constructor: callers must pass a closed, acyclic relation.
        # Public code should go through build_poset().
        self.elements: tuple[str, ...] = tuple(elements)
        self._index = {x: i for i, x in enumerate(self.elements)}
        self._down = tuple(down)
        self._up = tuple(up) if up is not None else tuple(_up_from_down(down))
        self._hash = None

    # -- basic protocol ---------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[str]:
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self._index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and self._down == other._down

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.elements, self._down))
        return self._hash

    def __repr__(self) -> str:
        rel = " ".join(f"{x}<{y}" for x, y in sorted(self.pairs()))
        return f"Poset([{' '.join(self.elements)}] {rel})"

    # -- lookups ----------------------------------------------------------

    def index(self, x: str) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise PosetError(f"unknown element {x!r}") from None

    def less(self, x: str, y: str) -> bool:
        """True when ``x`` is strictly below ``y``."""
        return bool(self._down[self.index(y)] >> self.index(x) & 1)

    def comparable(self, x: str, y: str) -> bool:
        return self.less(x, y) or self.less(y, x)

    def incomparable(self, x: str, y: str) -> bool:
        return x != y and not self.comparable(x, y)

    def down_mask(self, i: int) -> int:
        return self._down[i]

    def up_mask(self, i: int) -> int:
        return self._up[i]

    @property
    def down_masks(self) -> tuple[int, ...]:
        return self._down

    @property
    def up_masks(self) -> tuple[int, ...]:
        return self._up

    def names(self, mask: int) -> frozenset[str]:
        return frozenset(self.elements[j] for j in iter_bits(mask))

    def down_set(self, x: str) -> frozenset[str]:
        return self.names(self._down[self.index(x)])

    def up_set(self, x: str) -> frozenset[str]:
        return self.names(self._up[self.index(x)])

    def pairs(self) -> frozenset[tuple[str, str]]:
        """The full strict relation as ``(lower, upper)`` pairs."""
        els = self.elements
        return frozenset((els[j], els[i]) for i, mask in enumerate(self._down)
                         for j in iter_bits(mask))

    def covers(self) -> list[tuple[str, str]]:
        """Cover pairs (Hasse diagram edges), sorted by element position."""
        out = []
        for i, mask in enumerate(self._down):
            # j is covered by i when nothing in down(i) sits above j
            for j in iter_bits(mask):
                if not (self._up[j] & mask):
                    out.append((j, i))
        out.sort()
        return [(self.elements[j], self.elements[i]) for j, i in out]


def _check_names(elements: Iterable[str]) -> list[str]:
    els = list(elements)
    seen = set()
    for x in els:
        if not isinstance(x, str) or not x:
            raise PosetError(f"element identifiers must be non-empty strings, got {x!r}")
        if x in seen:
            raise PosetError(f"duplicate element {x!r}")
        seen.add(x)
    return els


def build_poset(elements: Iterable[str], pairs: Iterable[tuple[str, str]],
                mode: str = "covers") -> Poset:
    """Validate ``pairs`` over ``elements`` and return the poset they describe.

    ``mode="covers"`` closes the relation transitively; ``mode="full"``
    requires the relation to be transitively closed already.
    """
    if mode not in ("covers", "full"):
        raise PosetError(f"unknown input mode {mode!r}")
    els = _check_names(elements)
    index = {x: i for i, x in enumerate(els)}
    n = len(els)
    down = [0] * n
    for x, y in pairs:
        if x not in index or y not in index:
            missing = x if x not in index else y
            raise PosetError(f"pair ({x}, {y}) references undeclared element {missing!r}")
        if x == y:
            raise PosetError(f"reflexive pair ({x}, {x})")
        down[index[y]] |= 1 << index[x]

    if mode == "covers":
        # Warshall's closure on bitmasks: after round k, down[i] holds all
        # elements reachable through intermediates < k.
        for k in range(n):
            dk = down[k]
            if not dk:
                continue
            bit = 1 << k
            for i in range(n):
                if down[i] & bit:
                    down[i] |= dk
        for i in range(n):
            if down[i] >> i & 1:
                raise PosetError(f"cycle through {els[i]!r}: not a partial order")
    else:
        for i in range(n):
            for j in iter_bits(down[i]):
                if down[j] >> i & 1:
                    raise PosetError(f"cycle between {els[j]!r} and {els[i]!r}: not a partial order")
                if down[j] & ~down[i]:
                    k = next(iter_bits(down[j] & ~down[i]))
                    raise PosetError(
                        f"relation is not transitively closed: {els[k]}<{els[j]} and "
                        f"{els[j]}<{els[i]} but not {els[k]}<{els[i]}")
    return Poset(els, down)


# -- down/up set chains -----------------------------------------------------


@dataclass(frozen=True)
class TwoPlusTwoWitness:
    """Four elements with ``low1 < high1`` and ``low2 < high2`` and nothing else."""

    low1: str
    high1: str
    low2: str
    high2: str

    def as_embedding(self) -> dict[str, str]:
        return {"a": self.low1, "b": self.high1, "c": self.low2, "d": self.high2}


@dataclass(frozen=True)
class DownSetChain:
    """The inclusion chains of distinct down sets and up sets of an interval order.

    Masks are over the owning poset's element indices; ``left_index`` and
    ``right_index`` are 1-based positions in the chains.
    """

    poset: Poset
    down_chain: tuple[int, ...]
    up_chain: tuple[int, ...]
    left_index: Mapping[str, int]
    right_index: Mapping[str, int]

    @property
    def k(self) -> int:
        return len(self.down_chain)

    @property
    def down_sets(self) -> list[frozenset[str]]:
        return [self.poset.names(m) for m in self.down_chain]

    @property
    def up_sets(self) -> list[frozenset[str]]:
        return [self.poset.names(m) for m in self.up_chain]


def _ordered_distinct(P: Poset, masks: Sequence[int], descending: bool) -> list[int]:
    # Sort by size; equal sizes (only possible off a chain) fall back to the
    # sorted element names so witnesses are deterministic.
    by_size: dict[int, list[int]] = {}
    for m in set(masks):
        by_size.setdefault(m.bit_count(), []).append(m)
    out = []
    for size in sorted(by_size, reverse=descending):
        group = by_size[size]
        if len(group) > 1:
            group.sort(key=lambda m: sorted(P.names(m)))
        out.extend(group)
    return out


def down_up_chain(P: Poset) -> DownSetChain | TwoPlusTwoWitness:
    """Order the down sets by size; return the chains or a 2+2 witness."""
    down = P.down_masks
    chain = _ordered_distinct(P, down, descending=False)
    for i in range(len(chain) - 1):
        lo, hi = chain[i], chain[i + 1]
        if lo & ~hi:
            x = next(iter_bits(lo & ~hi))
            y = next(iter_bits(hi & ~lo))
            a = down.index(lo)
            b = down.index(hi)
            els = P.elements
            return TwoPlusTwoWitness(els[x], els[a], els[y], els[b])

    up = P.up_masks
    up_chain = _ordered_distinct(P, up, descending=True)
    if len(up_chain) != len(chain):
        raise PosetError("down and up set counts differ although down sets form a chain")
    for i in range(len(up_chain) - 1):
        if up_chain[i + 1] & ~up_chain[i]:
            raise PosetError("up sets are not a chain although down sets are")
    dpos = {m: i + 1 for i, m in enumerate(chain)}
    upos = {m: i + 1 for i, m in enumerate(up_chain)}
    left = {x: dpos[down[i]] for i, x in enumerate(P.elements)}
    right = {x: upos[up[i]] for i, x in enumerate(P.elements)}
    return DownSetChain(P, tuple(chain), tuple(up_chain), left, right)


def is_interval_order(P: Poset) -> bool:
    return isinstance(down_up_chain(P), DownSetChain)


# -- structural operations ----------------------------------------------------


def dual(P: Poset) -> Poset:
    """Reverse every comparability."""
    return Poset(P.elements, P.up_masks, P.down_masks)


def induced(P: Poset, subset: Iterable[str]) -> Poset:
    """Restrict ``P`` to ``subset``, keeping ``P``'s element order."""
    wanted = set(subset)
    for x in wanted:
        P.index(x)
    keep = [i for i, x in enumerate(P.elements) if x in wanted]
    remap = {old: new for new, old in enumerate(keep)}
    down = []
    for old in keep:
        mask = 0
        for j in iter_bits(P.down_mask(old)):
            if j in remap:
                mask |= 1 << remap[j]
        down.append(mask)
    return Poset([P.elements[i] for i in keep], down)


def twin_classes(P: Poset) -> list[list[str]]:
    """Partition the elements into classes of twins, in first-occurrence order.

    Twins have identical down sets and identical up sets; that already
    forces them to be incomparable.
    """
    groups: dict[tuple[int, int], list[str]] = {}
    for i, x in enumerate(P.elements):
        groups.setdefault((P.down_mask(i), P.up_mask(i)), []).append(x)
    return list(groups.values())


def is_twin_free(P: Poset) -> bool:
    return len({(P.down_mask(i), P.up_mask(i)) for i in range(len(P))}) == len(P)


def reduce_twins(P: Poset) -> tuple[Poset, dict[str, str]]:
    """Keep the first element of every twin class; map each element to it."""
    rep_map = {}
    for cls in twin_classes(P):
        for x in cls:
            rep_map[x] = cls[0]
    reps = {cls[0] for cls in twin_classes(P)}
    return induced(P, reps), rep_map


# -- induced subposet search -------------------------------------------------


def is_induced_embedding(host: Poset, pattern: Poset, mapping: Mapping[str, str]) -> bool:
    """Check that ``mapping`` is an injective, order-reflecting embedding."""
    if set(mapping) != set(pattern.elements):
        return False
    images = list(mapping.values())
    if len(set(images)) != len(images) or any(h not in host for h in images):
        return False
    for p in pattern.elements:
        for q in pattern.elements:
            if p != q and pattern.less(p, q) != host.less(mapping[p], mapping[q]):
                return False
    return True


def find_induced_copy(host: Poset, pattern: Poset, bound: int = DEFAULT_PATTERN_BOUND,
                      within: int | None = None) -> dict[str, str] | None:
    """Backtracking search for an induced copy of ``pattern`` in ``host``.

    ``within`` optionally restricts images to a bitmask of host indices.
    Returns ``pattern element -> host element`` or None.
    """
    m = len(pattern)
    if m > bound:
        raise OracleBoundError(f"pattern has {m} elements, bound is {bound}")
    n = len(host)
    allowed = (1 << n) - 1 if within is None else within
    if m == 0:
        return {}
    if m > allowed.bit_count():
        return None

    hd, hu = host.down_masks, host.up_masks
    pd, pu = pattern.down_masks, pattern.up_masks
    # Degree pruning: an image needs at least as many elements below, above
    # and incomparable as its preimage has inside the pattern.
    cands = []
    for p in range(m):
        nd, nu = pd[p].bit_count(), pu[p].bit_count()
        ni = m - 1 - nd - nu
        row = []
        for h in iter_bits(allowed):
            d = (hd[h] & allowed).bit_count()
            u = (hu[h] & allowed).bit_count()
            if d >= nd and u >= nu and allowed.bit_count() - 1 - d - u >= ni:
                row.append(h)
        if not row:
            return None
        cands.append(row)

    # Most comparabilities first, then fewest candidates.
    order = sorted(range(m), key=lambda p: (-(pd[p] | pu[p]).bit_count(), len(cands[p])))
    image = [-1] * m
    placed: list[int] = []

    def extend(t: int, used: int) -> bool:
        if t == m:
            return True
        p = order[t]
        for h in cands[p]:
            if used >> h & 1:
                continue
            ok = True
            hdh, huh = hd[h], hu[h]
            for q in placed:
                g = image[q]
                if (pd[p] >> q & 1) != (hdh >> g & 1) or (pu[p] >> q & 1) != (huh >> g & 1):
                    ok = False
                    break
            if ok:
                image[p] = h
                placed.append(p)
                if extend(t + 1, used | (1 << h)):
                    return True
                placed.pop()
        image[p] = -1
        return False

    if not extend(0, 0):
        return None
    return {pattern.elements[p]: host.elements[image[p]] for p in range(m)}


def is_isomorphic(P: Poset, Q: Poset) -> bool:
    return len(P) == len(Q) and find_induced_copy(P, Q, bound=max(len(Q), 1)) is not None
