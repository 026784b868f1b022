"""JSON formats for measures and test functions.

Rationals travel as strings ``"p/q"``.  Loading errors raise
:class:`FormatError` naming the offending JSON path (and line/column when the
text itself is malformed).
"""

from __future__ import annotations

import json
from pathlib import Path

from .core import Measure, TestFunction
from .scalar import format_scalar, to_scalar


class FormatError(ValueError):
    pass


def _scalar(value, where: str):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise FormatError(f"{where}: expected a rational string like \"p/q\", got {value!r}")
    try:
        return to_scalar(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"{where}: {exc}") from None


def _require(obj, key: str, where: str):
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected an object")
    if key not in obj:
        raise FormatError(f"{where}: missing key {key!r}")
    return obj[key]


def measure_to_dict(mu: Measure) -> dict:
    return {
        "atoms": [{"x": format_scalar(x), "w": format_scalar(w)} for x, w in mu.atoms],
        "density": [{"a": format_scalar(a), "b": format_scalar(b), "value": format_scalar(v)}
                    for a, b, v in mu.density],
    }


def measure_from_dict(data, where: str = "$") -> Measure:
    if not isinstance(data, dict):
        raise FormatError(f"{where}: expected an object")
    atoms = []
    for i, item in enumerate(data.get("atoms", [])):
        at = f"{where}.atoms[{i}]"
        atoms.append((_scalar(_require(item, "x", at), at + ".x"),
                      _scalar(_require(item, "w", at), at + ".w")))
    pieces = []
    for i, item in enumerate(data.get("density", [])):
        at = f"{where}.density[{i}]"
        a = _scalar(_require(item, "a", at), at + ".a")
        b = _scalar(_require(item, "b", at), at + ".b")
        if not a < b:
            raise FormatError(f"{at}: need a < b")
        pieces.append((a, b, _scalar(_require(item, "value", at), at + ".value")))
    return Measure(tuple(atoms), tuple(pieces))


def function_to_dict(f: TestFunction) -> dict:
    return {
        "breakpoints": [format_scalar(x) for x in f.breakpoints],
        "pieces": [[format_scalar(c) for c in p] for p in f.pieces],
        "left_tail": format_scalar(f.left_tail),
        "right_tail": format_scalar(f.right_tail),
        "class": f.class_tag,
    }


def function_from_dict(data, where: str = "$") -> TestFunction:
    bps = [_scalar(x, f"{where}.breakpoints[{i}]")
           for i, x in enumerate(_require(data, "breakpoints", where))]
    pieces = []
    for i, p in enumerate(_require(data, "pieces", where)):
        if not isinstance(p, list):
            raise FormatError(f"{where}.pieces[{i}]: expected a coefficient array")
        pieces.append(tuple(_scalar(c, f"{where}.pieces[{i}][{k}]") for k, c in enumerate(p)))
    left = _scalar(data.get("left_tail", "0"), f"{where}.left_tail")
    right = _scalar(data.get("right_tail", "0"), f"{where}.right_tail")
    tag = data.get("class", "Cb")
    try:
        return TestFunction(tuple(bps), tuple(pieces), left, right, tag)
    except ValueError as exc:
        raise FormatError(f"{where}: {exc}") from None


def loads_json(text: str, source: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def load_measure(path) -> Measure:
    path = Path(path)
    return measure_from_dict(loads_json(path.read_text(encoding="utf-8"), str(path)))


def load_function(path) -> TestFunction:
    path = Path(path)
    return function_from_dict(loads_json(path.read_text(encoding="utf-8"), str(path)))


def dumps(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
