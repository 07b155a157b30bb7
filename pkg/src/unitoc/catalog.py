"""Forbidden posets for unit OC interval orders, and certificate checking.

Two catalogs matter.  ``F`` characterizes the twin-free case and ``T`` the
general case; the 2+2 on its own separates interval orders from the rest.
Element names follow the usual drawings so certificates read naturally:
chains are ``a < b < c < d`` and isolated points are ``x`` and ``y``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import OracleBoundError
from .poset import Poset, build_poset, dual, find_induced_copy, is_induced_embedding

DEFAULT_ORACLE_BOUND = 9


class ForbiddenKind(str, enum.Enum):
    TwoPlusTwo = "TwoPlusTwo"
    FourPlusOne = "FourPlusOne"
    ThreePlusOnePlusOne = "ThreePlusOnePlusOne"
    Z = "Z"
    D = "D"
    Y = "Y"
    YDual = "YDual"
    DStar = "DStar"
    DStarDual = "DStarDual"
    YStar = "YStar"
    YStarDual = "YStarDual"
    YStarStar = "YStarStar"
    YStarStarDual = "YStarStarDual"

    def __str__(self) -> str:
        return self.value


K = ForbiddenKind

F_KINDS = frozenset({K.FourPlusOne, K.ThreePlusOnePlusOne, K.Z, K.D, K.Y, K.YDual})
T_KINDS = frozenset({K.FourPlusOne, K.Z, K.DStar, K.DStarDual, K.YStar, K.YStarDual,
                     K.YStarStar, K.YStarStarDual})
CATALOGS = {
    "F": F_KINDS,
    "T": T_KINDS,
    "TwoTwoOnly": frozenset({K.TwoPlusTwo}),
}

_DEFINITIONS: dict[ForbiddenKind, tuple[str, list[str]]] = {
    K.TwoPlusTwo: ("abcd", ["a<b", "c<d"]),
    K.FourPlusOne: ("abcdx", ["a<b", "b<c", "c<d"]),
    K.ThreePlusOnePlusOne: ("abcxy", ["a<b", "b<c"]),
    K.Z: ("abcdxy", ["a<b", "b<c", "c<d", "x<d", "a<y"]),
    K.D: ("abcdx", ["a<b", "b<d", "a<c", "c<d"]),
    K.Y: ("abcdx", ["a<d", "d<b", "d<c"]),
    K.DStar: ("abcdxy", ["a<b", "b<d", "a<c", "c<d", "y<c"]),
    K.YStar: ("abcdxy", ["a<d", "d<b", "d<c", "c<y", "x<y"]),
    K.YStarStar: ("abcdxy", ["a<d", "d<b", "d<c", "y<c"]),
}
_DUALS = {K.YDual: K.Y, K.DStarDual: K.DStar, K.YStarDual: K.YStar,
          K.YStarStarDual: K.YStarStar}


@lru_cache(maxsize=None)
def catalog_poset(kind: ForbiddenKind) -> Poset:
    """The forbidden poset named by ``kind``, on its canonical element names."""
    kind = ForbiddenKind(kind)
    if kind in _DUALS:
        return dual(catalog_poset(_DUALS[kind]))
    names, rels = _DEFINITIONS[kind]
    return build_poset(list(names), [tuple(r.split("<")) for r in rels], mode="covers")


def search_order(kinds: Iterable[ForbiddenKind]) -> list[ForbiddenKind]:
    """Smaller patterns first, then declaration order of the enum."""
    tags = list(ForbiddenKind)
    return sorted(kinds, key=lambda k: (len(catalog_poset(k)), tags.index(k)))


@dataclass(frozen=True)
class Certificate:
    """An induced copy of a forbidden poset inside some host poset."""

    kind: ForbiddenKind
    embedding: Mapping[str, str]

    @property
    def elements(self) -> list[str]:
        return [self.embedding[p] for p in catalog_poset(self.kind).elements]

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "elements": dict(self.embedding)}


def verify_certificate(P: Poset, cert: Certificate) -> bool:
    """True iff the certificate's embedding is an induced copy in ``P``."""
    try:
        pattern = catalog_poset(cert.kind)
    except (KeyError, ValueError):
        return False
    return is_induced_embedding(P, pattern, cert.embedding)


def find_forbidden(P: Poset, catalog: str | Iterable[ForbiddenKind] = "F",
                   bound: int = DEFAULT_ORACLE_BOUND,
                   within: int | None = None) -> Certificate | None:
    """Exhaustive search of ``P`` for any member of ``catalog``; first hit wins.

    This is the brute-force oracle, deliberately independent of the staged
    recognizer.
    """
    if len(P) > bound and within is None:
        raise OracleBoundError(f"poset has {len(P)} elements, oracle bound is {bound}")
    if isinstance(catalog, str):
        if catalog not in CATALOGS:
            raise ValueError(f"unknown catalog {catalog!r}; expected one of {sorted(CATALOGS)}")
        kinds = CATALOGS[catalog]
    else:
        kinds = frozenset(catalog)
    for kind in search_order(kinds):
        pattern = catalog_poset(kind)
        hit = find_induced_copy(P, pattern, within=within)
        if hit is not None:
            return Certificate(kind, hit)
    return None


def export_catalog(kinds: Iterable[ForbiddenKind] | None = None) -> dict[ForbiddenKind, Poset]:
    """Catalog posets keyed by kind, in search order."""
    chosen = list(ForbiddenKind) if kinds is None else list(kinds)
    return {k: catalog_poset(k) for k in search_order(chosen)}

