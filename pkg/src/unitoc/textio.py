"""Poset text format and JSON documents for representations and results.

The text format is line oriented::

    # the poset N
    name N
    elem a b c d e
    rel d<e d<b a<b b<c
    kind covers

``elem`` and ``rel`` may repeat; ``kind`` is ``covers`` (default, closed
transitively) or ``full``.  Rationals in JSON are ``"p/q"`` strings so
output stays exact; floats and decimal strings are refused on input.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .catalog import Certificate, ForbiddenKind, verify_certificate
from .errors import IntervalError, ParseError, PosetError
from .intervals import Interval, Representation, is_strict, is_unit, realizes
from .poset import Poset, build_poset

RELATION_KINDS = ("covers", "full")
VERDICTS = ("unit-oc", "not-unit-oc", "not-interval-order")
MODES = ("twin-free", "general")

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


@dataclass
class PosetDocument:
    elements: list[str]
    relations: list[tuple[str, str]]
    relation_kind: str = "covers"
    name: str | None = None
    # source line of each relation, for build-stage diagnostics
    relation_lines: list[int] = field(default_factory=list, compare=False, repr=False)

    def to_poset(self) -> Poset:
        """Build the poset; build errors point at the offending line when possible."""
        lines = self.relation_lines or [None] * len(self.relations)
        for (x, y), line in zip(self.relations, lines):
            if x == y:
                raise ParseError(f"reflexive relation {x}<{y}", line)
        try:
            return build_poset(self.elements, self.relations, mode=self.relation_kind)
        except PosetError as exc:
            raise ParseError(f"{exc}") from exc


def parse_poset(text: str) -> PosetDocument:
    """Parse the text format; stops at the first error."""
    elements: list[str] = []
    declared: set[str] = set()
    relations: list[tuple[str, str]] = []
    relation_lines: list[int] = []
    kind = None
    name = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        directive, _, rest = line.partition(" ")
        tokens = rest.split()
        if directive == "elem":
            for x in tokens:
                if x in declared:
                    raise ParseError(f"duplicate element {x!r}", lineno)
                if "<" in x:
                    raise ParseError(f"element name {x!r} may not contain '<'", lineno)
                declared.add(x)
                elements.append(x)
        elif directive == "rel":
            for tok in tokens:
                parts = tok.split("<")
                if len(parts) != 2 or not all(parts):
                    raise ParseError(f"relation token {tok!r} is not of the form a<b", lineno)
                for x in parts:
                    if x not in declared:
                        raise ParseError(f"undeclared element {x!r}", lineno)
                relations.append((parts[0], parts[1]))
                relation_lines.append(lineno)
        elif directive == "kind":
            if len(tokens) != 1 or tokens[0] not in RELATION_KINDS:
                raise ParseError(f"kind must be one of {', '.join(RELATION_KINDS)}", lineno)
            if kind is not None:
                raise ParseError("kind given twice", lineno)
            kind = tokens[0]
        elif directive == "name":
            name = rest.strip()
        else:
            raise ParseError(f"unknown directive {directive!r}", lineno)
    return PosetDocument(elements, relations, kind or "covers", name, relation_lines)


def serialize_poset(doc: PosetDocument) -> str:
    out = []
    if doc.name:
        out.append(f"name {doc.name}")
    out.append("elem " + " ".join(doc.elements) if doc.elements else "elem")
    if doc.relations:
        out.append("rel " + " ".join(f"{x}<{y}" for x, y in doc.relations))
    out.append(f"kind {doc.relation_kind}")
    return "\n".join(out) + "\n"


def poset_document(P: Poset, name: str | None = None, kind: str = "covers") -> PosetDocument:
    rels = P.covers() if kind == "covers" else sorted(P.pairs(), key=lambda p: (P.index(p[0]), P.index(p[1])))
    return PosetDocument(list(P.elements), list(rels), kind, name)


def format_poset(P: Poset, name: str | None = None, kind: str = "covers") -> str:
    return serialize_poset(poset_document(P, name, kind))


def load_poset(text: str) -> Poset:
    return parse_poset(text).to_poset()


# -- rationals and representations -------------------------------------------------


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def parse_rational(value: Any) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ParseError(f"rational must be an integer or a 'p/q' string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not _RATIONAL.match(value.strip()):
        raise ParseError(f"rational must look like 'p/q', got {value!r}")
    q = value.strip()
    if q.endswith("/0"):
        raise ParseError(f"zero denominator in {value!r}")
    return Fraction(q)


def representation_to_dict(rep: Representation) -> dict:
    return {
        "semantics": rep.semantics,
        "unit_length": None if rep.unit_length is None else format_rational(rep.unit_length),
        "intervals": {x: {"left": format_rational(iv.left), "right": format_rational(iv.right),
                          "style": iv.style} for x, iv in rep.items()},
    }


def representation_from_dict(data: dict) -> Representation:
    try:
        ivs = {x: Interval(parse_rational(d["left"]), parse_rational(d["right"]), d.get("style", "closed"))
               for x, d in data["intervals"].items()}
        unit = data.get("unit_length")
        return Representation(ivs, data.get("semantics", "oc"),
                              None if unit is None else parse_rational(unit))
    except (KeyError, TypeError, AttributeError) as exc:
        raise ParseError(f"malformed representation: {exc}") from exc
    except IntervalError as exc:
        raise ParseError(str(exc)) from exc


# -- result documents -----------------------------------------------------------------


@dataclass
class ResultDocument:
    verdict: str
    mode: str
    representation: Representation | None = None
    certificate: Certificate | None = None
    trace: list[str] | None = None

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.verdict == "unit-oc" and self.representation is None:
            raise ValueError("a unit-oc verdict needs a representation")
        if self.verdict != "unit-oc" and self.certificate is None:
            raise ValueError(f"verdict {self.verdict} needs a certificate")

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"verdict": self.verdict, "mode": self.mode}
        if self.representation is not None:
            out["representation"] = representation_to_dict(self.representation)
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_dict()
        if self.trace is not None:
            out["trace"] = list(self.trace)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> ResultDocument:
        rep = data.get("representation")
        cert = data.get("certificate")
        try:
            certificate = None if cert is None else Certificate(ForbiddenKind(cert["kind"]), dict(cert["elements"]))
            return cls(data["verdict"], data["mode"],
                       None if rep is None else representation_from_dict(rep),
                       certificate, data.get("trace"))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed result document: {exc}") from exc
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    @classmethod
    def from_json(cls, text: str) -> ResultDocument:
        try:
            data = json.loads(text, parse_float=_refuse_float)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from exc
        return cls.from_dict(data)

    def verifies(self, P: Poset) -> bool:
        """Re-check the payload against ``P``."""
        if self.representation is not None:
            rep = self.representation
            shape_ok = is_unit(rep) if rep.unit_length is not None else is_strict(rep)
            return realizes(P, rep) and shape_ok
        return verify_certificate(P, self.certificate)


def _refuse_float(text: str):
    raise ParseError(f"floating-point value {text} in JSON; use a 'p/q' string")
