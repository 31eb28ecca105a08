"""JSON documents for Abel data and blowup sequences.

An Abel data document::

    {"name": "example-7-1",
     "matrix": [[-2, 1, 1, 0], [1, -5, 3, 1], [1, 3, -6, 2], [0, 1, 2, -3]],
     "v": 1,
     "q": [2, 0, 0, 0],
     "e": ["0", "0", "0", "0"]}

Vertex indices are 1-based. Polarization entries are rational strings
(``"-1/2"``) so nothing passes through floating point. A sequence
document is a list of steps, each a pair of 1-based vertex lists.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any

from .blowup import BlowupSequence
from .errors import AbelDataError, BadRational, BadSequence
from .graph import parse_intersection_matrix
from .quasistability import AbelData

_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: Any) -> Fraction:
    if isinstance(text, bool):
        raise BadRational(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise BadRational(f"rationals must be strings like \"-1/2\", got {text!r}")
    m = _RATIONAL.match(text)
    if not m:
        raise BadRational(f"not a rational: {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise BadRational(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def _int_list(obj: Any, what: str) -> list[int]:
    if not isinstance(obj, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in obj):
        raise AbelDataError(f"{what} must be a list of integers")
    return obj


def data_from_document(doc: dict) -> tuple[str, AbelData]:
    if not isinstance(doc, dict):
        raise AbelDataError("document must be a JSON object")
    missing = [k for k in ("matrix", "v", "q", "e") if k not in doc]
    if missing:
        raise AbelDataError(f"document is missing field(s): {', '.join(missing)}")
    matrix = doc["matrix"]
    if not isinstance(matrix, list) or not all(isinstance(r, list) for r in matrix):
        raise AbelDataError("matrix must be a list of lists")
    for row in matrix:
        _int_list(row, "matrix rows")
    graph = parse_intersection_matrix(matrix)
    v = doc["v"]
    if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= graph.p:
        raise AbelDataError(f"v must be a vertex index in 1..{graph.p}, got {v!r}")
    q = _int_list(doc["q"], "q")
    if not isinstance(doc["e"], list):
        raise AbelDataError("e must be a list of rational strings")
    e = [parse_rational(x) for x in doc["e"]]
    if len(q) != graph.p or len(e) != graph.p:
        raise AbelDataError(f"q and e must have {graph.p} entries")
    name = str(doc.get("name", ""))
    return name, AbelData(graph, e, q, v - 1)


def document_from_data(name: str, data: AbelData) -> dict:
    """Canonical document: corrected diagonal, canonical rational strings."""
    return {
        "e": [format_rational(x) for x in data.e],
        "matrix": [list(r) for r in data.graph.intersection_matrix],
        "name": name,
        "q": list(data.q),
        "v": data.v + 1,
    }


def dumps_document(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True)


def load_document(path: str | Path) -> tuple[str, AbelData]:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AbelDataError(f"{path}: invalid JSON ({exc})") from exc
    name, data = data_from_document(doc)
    return name or Path(path).stem, data


def load_sequence(path: str | Path) -> BlowupSequence:
    try:
        steps = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise BadSequence(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(steps, list):
        raise BadSequence("sequence document must be a list of steps")
    return BlowupSequence.from_lists(steps)
