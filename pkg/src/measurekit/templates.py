"""User-defined measure sequences from closed-form templates in ``n``.

A sequence spec is a JSON object::

    {
      "label": "shrinking tent",
      "atoms":   [{"x": "1/n", "w": "1"}],
      "density": [{"a": "0", "b": "1/n", "value": "n*2^n"}],
      "limit":   {"atoms": [{"x": "0", "w": "1"}]}
    }

Every ``x``, ``w``, ``a``, ``b`` and ``value`` is an expression over integers
and ``n`` using ``+ - * /``, parentheses and integer powers (``^`` or ``**``).
``limit`` is optional and uses the plain measure format.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from fractions import Fraction

from .core import Measure
from .serialize import FormatError, loads_json, measure_from_dict
from .sequences import MeasureSequence

_MAX_EXPONENT = 4096


class ExpressionError(ValueError):
    """Malformed template expression; ``col`` is 1-based within the text."""

    def __init__(self, text: str, col: int, message: str):
        self.text, self.col = text, col
        super().__init__(f"{message} at column {col} in {text!r}")


@dataclass(frozen=True)
class Expr:
    text: str
    tree: ast.expr

    def __call__(self, n: int) -> Fraction:
        return _eval(self.tree, Fraction(n), self.text)


def _fail(text, node, message):
    raise ExpressionError(text, getattr(node, "col_offset", 0) + 1, message)


def _power(base: Fraction, exp: Fraction, text, node) -> Fraction:
    if exp.denominator != 1:
        _fail(text, node, "non-integer exponent")
    if abs(exp) > _MAX_EXPONENT:
        _fail(text, node, "exponent too large")
    if base == 0 and exp < 0:
        _fail(text, node, "zero to a negative power")
    return base ** int(exp)


def _eval(node, n: Fraction, text: str) -> Fraction:
    if isinstance(node, ast.Constant):
        if isinstance(node.value, int) and not isinstance(node.value, bool):
            return Fraction(node.value)
        _fail(text, node, "only integer literals are allowed")
    if isinstance(node, ast.Name):
        if node.id == "n":
            return n
        _fail(text, node, f"unknown name {node.id!r}")
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
        v = _eval(node.operand, n, text)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        left = _eval(node.left, n, text)
        right = _eval(node.right, n, text)
        op = node.op
        if isinstance(op, ast.Add):
            return left + right
        if isinstance(op, ast.Sub):
            return left - right
        if isinstance(op, ast.Mult):
            return left * right
        if isinstance(op, ast.Div):
            if right == 0:
                _fail(text, node, "division by zero")
            return left / right
        if isinstance(op, ast.Pow):
            return _power(left, right, text, node)
    _fail(text, node, "unsupported syntax")


def _check_tree(node, text):
    # Structural pass so syntax errors surface at load time, not at some n.
    if isinstance(node, ast.Constant):
        if not isinstance(node.value, int) or isinstance(node.value, bool):
            _fail(text, node, "only integer literals are allowed")
    elif isinstance(node, ast.Name):
        if node.id != "n":
            _fail(text, node, f"unknown name {node.id!r}")
    elif isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
        _check_tree(node.operand, text)
    elif isinstance(node, ast.BinOp) and isinstance(
            node.op, (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)):
        _check_tree(node.left, text)
        _check_tree(node.right, text)
    else:
        _fail(text, node, "unsupported syntax")


def _caret_to_pow(text: str):
    """Rewrite ``^`` as ``**`` (so it binds like a power) and return a map
    from 0-based positions in the rewritten text to 1-based source columns."""
    out, cols = [], []
    for i, ch in enumerate(text):
        if ch == "^":
            out.append("**")
            cols += [i + 1, i + 1]
        else:
            out.append(ch)
            cols.append(i + 1)
    cols.append(len(text) + 1)
    return "".join(out), cols


def _end_column(text: str) -> int:
    return len(text.rstrip()) + 1


def parse_expr(text) -> Expr:
    """Compile a template expression.  ``^`` is exponentiation."""
    if isinstance(text, int) and not isinstance(text, bool):
        text = str(text)
    if not isinstance(text, str):
        raise ExpressionError(str(text), 1, "expression must be a string")
    if not text.strip():
        raise ExpressionError(text, 1, "empty expression")
    source, cols = _caret_to_pow(text)
    lead = len(source) - len(source.lstrip())
    try:
        tree = ast.parse(source.strip(), mode="eval").body
    except SyntaxError as exc:
        if not exc.offset:  # the parser reports end-of-input as offset 0
            raise ExpressionError(text, _end_column(text), "unexpected end of expression") from None
        pos = min(lead + exc.offset - 1, len(cols) - 1)
        raise ExpressionError(text, cols[pos], "syntax error") from None
    for node in ast.walk(tree):
        if hasattr(node, "col_offset"):
            node.col_offset = cols[min(lead + node.col_offset, len(cols) - 1)] - 1
    _check_tree(tree, text)
    return Expr(text, tree)


@dataclass(frozen=True)
class SequenceTemplate:
    label: str
    atoms: tuple      # ((x_expr, w_expr), ...)
    density: tuple    # ((a_expr, b_expr, value_expr), ...)
    limit: Measure | None = None

    def measure(self, n: int) -> Measure:
        if n < 1:
            raise ValueError("n must be >= 1")
        atoms = tuple((x(n), w(n)) for x, w in self.atoms)
        pieces = []
        for i, (a, b, v) in enumerate(self.density):
            lo, hi = a(n), b(n)
            if lo >= hi:
                raise ValueError(f"density[{i}]: a >= b at n={n}")
            pieces.append((lo, hi, v(n)))
        return Measure(atoms, tuple(pieces))

    def sequence(self) -> MeasureSequence:
        return MeasureSequence(self.measure, self.label, self.limit)


def _field(obj, key, path):
    if not isinstance(obj, dict) or key not in obj:
        raise FormatError(f"{path}: missing key {key!r}")
    try:
        return parse_expr(obj[key])
    except ExpressionError as exc:
        raise FormatError(f"{path}.{key}: {exc}") from None


def template_from_dict(data: dict) -> SequenceTemplate:
    if not isinstance(data, dict):
        raise FormatError("$: sequence spec must be an object")
    unknown = set(data) - {"label", "atoms", "density", "limit"}
    if unknown:
        raise FormatError(f"$: unknown keys {sorted(unknown)}")
    atoms = tuple((_field(a, "x", f"$.atoms[{i}]"), _field(a, "w", f"$.atoms[{i}]"))
                  for i, a in enumerate(data.get("atoms", [])))
    density = tuple((_field(p, "a", f"$.density[{i}]"), _field(p, "b", f"$.density[{i}]"),
                     _field(p, "value", f"$.density[{i}]"))
                    for i, p in enumerate(data.get("density", [])))
    limit = measure_from_dict(data["limit"], "$.limit") if "limit" in data else None
    return SequenceTemplate(str(data.get("label", "user sequence")), atoms, density, limit)


def load_template(path) -> SequenceTemplate:
    with open(path, encoding="utf-8") as fh:
        return template_from_dict(loads_json(fh.read(), str(path)))
