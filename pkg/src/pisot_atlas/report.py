"""Serialization of fields, elements and analysis results to JSON, CSV and text."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any

from .errors import ParseError
from .number_field import FieldElement, NumberField


def num(q) -> str:
    """Exact integer or rational as a string."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def basis_name(K: NumberField) -> str:
    d = K.degree
    if K.denominator == 1 and all(K.basis_rows[i][k] == int(i == k) for i in range(d) for k in range(d)):
        return "power"
    rows = ";".join(",".join(str(v) for v in row) for row in K.basis_rows)
    return f"rows[{rows}]/{K.denominator}"


def _rational_term(c: Fraction, body: str, first: bool) -> str:
    sign = "-" if c < 0 else ("" if first else "+")
    mag = abs(c)
    if body == "":
        return f"{sign}{num(mag)}"
    if mag == 1:
        return f"{sign}{body}"
    if mag.denominator == 1:
        return f"{sign}{mag.numerator}{body}"
    return f"{sign}({num(mag)}){body}"


def exact_text(x: FieldElement) -> str:
    """a+b√m for fields built from sqrt:m, else a polynomial in t = root of the defining polynomial."""
    K = x.field
    pc = x.power_coeffs
    if K.surd is not None:
        bodies = ["", f"√{K.surd}"]
    else:
        bodies = [""] + ["t" if k == 1 else f"t^{k}" for k in range(1, K.degree)]
    parts = []
    for c, body in zip(pc, bodies):
        if c != 0:
            parts.append(_rational_term(c, body, not parts))
    return "".join(parts) if parts else "0"


def element_json(x: FieldElement, digits: int) -> dict[str, Any]:
    K = x.field
    out = {
        "coords": [str(c) for c in x.coords],
        "basis": basis_name(K),
        "exact": exact_text(x),
        "approx": x.decimal(digits),
        "minpoly": [str(c) for c in x.minpoly.coeffs],
    }
    return out


def element_from_json(K: NumberField, obj: dict) -> FieldElement:
    """Inverse of element_json (coordinates are authoritative)."""
    try:
        coords = [int(c) for c in obj["coords"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("element JSON needs integer coords") from exc
    if obj.get("basis", basis_name(K)) != basis_name(K):
        raise ParseError("element was serialized over a different basis")
    return K.element(coords)


def parse_coords(text: str) -> list[int]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"cannot parse coordinates {text!r}") from exc
    if not isinstance(data, list) or not all(isinstance(a, int) for a in data):
        raise ParseError(f"coordinates must be a list of integers: {text!r}")
    return data


def field_json(K: NumberField) -> dict[str, Any]:
    r, s = K.signature
    return {
        "spec": K.spec,
        "poly": [str(c) for c in K.poly.coeffs],
        "degree": str(K.degree),
        "signature": [str(r), str(s)],
        "basis": basis_name(K),
        "maximality": K.maximality.value,
        "irreducibility": K.irreducibility,
    }


@dataclass
class Report:
    """One command's output: JSON document plus flat element rows for CSV and text."""

    field: NumberField | None
    command: str
    result: Any
    certificates: dict[str, Any] = dc_field(default_factory=dict)
    caveats: list[str] = dc_field(default_factory=list)
    rows: list[tuple[str, FieldElement]] = dc_field(default_factory=list)
    digits: int = 12

    def document(self) -> dict[str, Any]:
        return {
            "field": field_json(self.field) if self.field is not None else None,
            "command": self.command,
            "result": self.result,
            "certificates": self.certificates,
            "caveats": list(self.caveats),
        }


def emit_report(report: Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.document(), indent=2, ensure_ascii=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["label", "coords", "minpoly", "approx", "exact"])
        for label, x in report.rows:
            w.writerow(
                [
                    label,
                    " ".join(str(c) for c in x.coords),
                    " ".join(str(c) for c in x.minpoly.coeffs),
                    x.decimal(report.digits),
                    exact_text(x),
                ]
            )
        return buf.getvalue()
    if fmt == "text":
        return _text(report)
    raise ParseError(f"unknown format {fmt!r}")


def _text(report: Report) -> str:
    lines = []
    if report.field is not None:
        K = report.field
        lines.append(f"field {K.spec}  degree {K.degree}  signature {K.signature}  basis {K.maximality.value}")
    lines.append(f"command {report.command}")
    if report.rows:
        table = [(label, exact_text(x), x.decimal(report.digits)) for label, x in report.rows]
        w0 = max(len("label"), *(len(t[0]) for t in table))
        w1 = max(len("exact"), *(len(t[1]) for t in table))
        lines.append(f"{'label':<{w0}}  {'exact':<{w1}}  approx")
        for label, ex, ap in table:
            lines.append(f"{label:<{w0}}  {ex:<{w1}}  {ap}")
    else:
        lines.append(json.dumps(report.result, ensure_ascii=False))
    for key, value in report.certificates.items():
        lines.append(f"certificate {key}: {json.dumps(value, ensure_ascii=False)}")
    for c in report.caveats:
        lines.append(f"caveat: {c}")
    return "\n".join(lines) + "\n"
