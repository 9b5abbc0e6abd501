"""Lattice documents: exact JSON input files and the entry grammar.

Entry grammar (exact, no whitespace):

    RAT   := INT | INT "/" POSINT
    ENTRY := RAT | RAT SIGN RAT "*sqrt(" POSINT ")"     SIGN in {+, -}

A document is UTF-8 JSON of the form

    {"field": {"kind": "rational"} | {"kind": "quadratic", "D": <int>},
     "basis": [[<entry>, ...], ...]}

where basis holds equal-length column vectors and every sqrt argument must
equal the declared D.  Serialization emits canonical strings, so
serialize(parse(doc)) round-trips canonical documents byte for byte.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .errors import DocumentError
from .lattice import Lattice
from .scalars import Scalar, is_squarefree

_RAT = r"-?\d+(?:/\d+)?"
_ENTRY_RE = re.compile(
    rf"^(?P<a>{_RAT})(?:(?P<sign>[+-])(?P<b>\d+(?:/\d+)?)\*sqrt\((?P<d>\d+)\))?$")


def parse_rational(text: str, where: str) -> Fraction:
    if "/" in text:
        num, den = text.split("/", 1)
        if int(den) <= 0:
            raise DocumentError(f"denominator must be positive in {text!r}",
                                where=where)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def parse_entry(text: str, expected_d: int | None, where: str) -> Scalar:
    m = _ENTRY_RE.match(text)
    if not m:
        raise DocumentError(f"malformed entry {text!r}", where=where)
    a = parse_rational(m.group("a"), where)
    if m.group("b") is None:
        return Scalar(a)
    if expected_d is None:
        raise DocumentError(
            f"surd entry {text!r} in a rational-field document", where=where)
    d = int(m.group("d"))
    if d != expected_d:
        raise DocumentError(
            f"sqrt argument {d} does not match the declared D={expected_d}",
            where=where)
    b = parse_rational(m.group("b"), where)
    if m.group("sign") == "-":
        b = -b
    if b == 0:
        raise DocumentError(
            f"surd entry {text!r} must have a nonzero coefficient; "
            "write a plain rational instead", where=where)
    return Scalar(a, b, d)


def serialize_scalar(x: Scalar) -> str:
    return str(x)  # Scalar.__str__ emits the entry grammar


def parse_scalar_literal(text: str, where: str = "value") -> Scalar:
    """Entry-grammar constant with any squarefree sqrt argument."""
    m = _ENTRY_RE.match(text)
    if not m:
        raise DocumentError(f"malformed entry {text!r}", where=where)
    if m.group("b") is None:
        return Scalar(parse_rational(m.group("a"), where))
    d = int(m.group("d"))
    if d <= 1 or not is_squarefree(d):
        raise DocumentError(f"sqrt argument must be squarefree > 1, got {d}",
                            where=where)
    return parse_entry(text, d, where)


def parse_document(text: str) -> tuple[Lattice, int | None]:
    """Parse a lattice document; returns the lattice and the declared D."""
    try:
        doc: Any = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}", where="document") from None
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object", where="document")
    field = doc.get("field")
    if not isinstance(field, dict) or "kind" not in field:
        raise DocumentError("missing field descriptor", where="field")
    kind = field["kind"]
    if kind == "rational":
        d = None
    elif kind == "quadratic":
        d = field.get("D")
        if not isinstance(d, int) or d <= 1 or not is_squarefree(d):
            raise DocumentError(f"D must be a squarefree integer > 1, got {d}",
                                where="field.D")
    else:
        raise DocumentError(f"unknown field kind {kind!r}", where="field.kind")
    basis = doc.get("basis")
    if not isinstance(basis, list) or not basis:
        raise DocumentError("basis must be a nonempty array of columns",
                            where="basis")
    columns = []
    length = None
    for j, col in enumerate(basis):
        if not isinstance(col, list) or not col:
            raise DocumentError("column must be a nonempty array",
                                where=f"basis[{j}]")
        if length is None:
            length = len(col)
        elif len(col) != length:
            raise DocumentError("columns must have equal length",
                                where=f"basis[{j}]")
        entries = []
        for i, cell in enumerate(col):
            if not isinstance(cell, str):
                raise DocumentError("entries must be strings",
                                    where=f"basis[{j}][{i}]")
            entries.append(parse_entry(cell, d, where=f"basis[{j}][{i}]"))
        columns.append(entries)
    try:
        lat = Lattice(columns)
    except Exception as exc:
        raise DocumentError(f"basis is not a lattice basis: {exc}",
                            where="basis") from None
    return lat, d


def serialize_document(lat: Lattice, d: int | None) -> str:
    field = {"kind": "rational"} if d is None else {"kind": "quadratic", "D": d}
    doc = {
        "field": field,
        "basis": [[serialize_scalar(x) for x in col]
                  for col in lat.basis_columns],
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"
