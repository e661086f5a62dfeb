"""
JSON documents for algebras, dual pairs and reports.

Rationals are written as JSON integers when integral and as ``"p/q"``
strings otherwise, so every number in a document is exact.  Input also
accepts integers written as strings and the typographic minus sign.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .algebra import Algebra
from .errors import ParseError
from .exact import Matrix

_RATIONAL = re.compile(r"^[-−]?\d+(/\d+)?$")


def parse_rational(value, field: str | None = None) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(f"expected an integer or 'p/q' string, got {value!r}", field=field)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if _RATIONAL.match(text):
            text = text.replace("−", "-")
            num, _, den = text.partition("/")
            if den and int(den) == 0:
                raise ParseError("zero denominator", field=field)
            return Fraction(int(num), int(den or 1))
    raise ParseError(f"not a rational: {value!r}", field=field)


def parse_rational_list(text: str, field: str = "functional") -> tuple:
    parts = [p for p in text.replace(" ", "").split(",")]
    if not parts or any(p == "" for p in parts):
        raise ParseError(f"expected comma-separated rationals, got {text!r}", field=field)
    return tuple(parse_rational(p, f"{field}[{i}]") for i, p in enumerate(parts))


def encode(x):
    """Exact JSON value for Fractions (recursively through containers)."""
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, Matrix):
        return [[encode(c) for c in row] for row in x.tolist()]
    if isinstance(x, dict):
        return {str(k): encode(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [encode(v) for v in x]
    return x


def _load(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed JSON: {e.msg}", line=e.lineno) from None


def _field(doc: dict, key: str):
    if key not in doc:
        raise ParseError(f"missing field {key!r}", field=key)
    return doc[key]


def algebra_from_doc(doc) -> Algebra:
    if not isinstance(doc, dict):
        raise ParseError("algebra document must be a JSON object")
    n = _field(doc, "dim")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ParseError("dim must be a positive integer", field="dim")
    names = doc.get("basis") or [f"e{i + 1}" for i in range(n)]
    if not isinstance(names, list) or len(names) != n or not all(isinstance(s, str) for s in names):
        raise ParseError(f"basis must list {n} names", field="basis")
    if len(set(names)) != n:
        raise ParseError("basis names must be distinct", field="basis")
    table = _field(doc, "table")
    if not isinstance(table, list) or len(table) != n:
        raise ParseError(f"table must have {n} rows", field="table")
    t = []
    for i, row in enumerate(table):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"row must have {n} entries", field=f"table[{i}]")
        cells = []
        for j, cell in enumerate(row):
            if not isinstance(cell, list) or len(cell) != n:
                raise ParseError(f"product must have {n} coordinates", field=f"table[{i}][{j}]")
            cells.append(tuple(parse_rational(c, f"table[{i}][{j}][{k}]") for k, c in enumerate(cell)))
        t.append(tuple(cells))
    unity = doc.get("unity")
    idx = None
    if unity is not None:
        if unity not in names:
            raise ParseError(f"unity {unity!r} is not a basis name", field="unity")
        idx = names.index(unity)
    a = Algebra(n, tuple(names), tuple(t), idx)
    if idx is not None:
        e = a.basis_vector(idx)
        if any(a.mul(e, a.basis_vector(i)) != a.basis_vector(i) or a.mul(a.basis_vector(i), e) != a.basis_vector(i)
               for i in range(n)):
            raise ParseError(f"{unity!r} is not a two-sided unity", field="unity")
    return a


def parse_algebra(text: str) -> Algebra:
    return algebra_from_doc(_load(text))


def algebra_to_doc(a: Algebra) -> dict:
    return {
        "dim": a.dim,
        "basis": list(a.basis_names),
        "unity": None if a.unity is None else a.basis_names[a.unity],
        "table": encode(a.table),
    }


def serialize_algebra(a: Algebra) -> str:
    """Canonical text form: one product per line, deterministic byte for byte."""
    doc = algebra_to_doc(a)
    rows = []
    for row in doc["table"]:
        cells = ", ".join(json.dumps(c, ensure_ascii=False) for c in row)
        rows.append(f"    [{cells}]")
    head = (
        "{\n"
        f'  "dim": {doc["dim"]},\n'
        f'  "basis": {json.dumps(doc["basis"], ensure_ascii=False)},\n'
        f'  "unity": {json.dumps(doc["unity"], ensure_ascii=False)},\n'
        '  "table": [\n'
    )
    return head + ",\n".join(rows) + "\n  ]\n}\n"


def parse_matrix(text: str, key: str = "pairing") -> Matrix:
    """A square matrix given either bare or as ``{"pairing": [[...]]}``."""
    doc = _load(text)
    if isinstance(doc, dict):
        doc = _field(doc, key)
    if not isinstance(doc, list) or not doc or not all(isinstance(r, list) and len(r) == len(doc) for r in doc):
        raise ParseError("expected a square matrix", field=key)
    return Matrix(
        [[parse_rational(c, f"{key}[{i}][{j}]") for j, c in enumerate(r)] for i, r in enumerate(doc)],
        cols=len(doc),
    )


def dumps_report(doc) -> str:
    return json.dumps(encode(doc), indent=2, ensure_ascii=False) + "\n"
