from fractions import Fraction

import pytest

from measurekit.corpus import example_3_3
from measurekit.serialize import FormatError
from measurekit.templates import ExpressionError, parse_expr, template_from_dict

F = Fraction


def test_expressions():
    assert parse_expr("2^n/n")(3) == F(8, 3)
    assert parse_expr("n**2 - 1")(4) == 15
    assert parse_expr("-(1/n)")(2) == F(-1, 2)
    assert parse_expr("2^-n")(3) == F(1, 8)
    assert parse_expr(7)(1) == 7


@pytest.mark.parametrize("text, col", [("1/n+", 5), ("n + x", 5), ("1.5*n", 1), ("abs(n)", 1),
                                       ("  n ^ ", 6), ("n ^ ^ 2", 5)])
def test_errors_carry_position(text, col):
    with pytest.raises(ExpressionError) as info:
        parse_expr(text)
    assert info.value.col == col


def test_runtime_errors():
    with pytest.raises(ExpressionError, match="division by zero"):
        parse_expr("1/(n-1)")(1)
    with pytest.raises(ExpressionError, match="non-integer exponent"):
        parse_expr("2^(1/n)")(2)


def test_template_reproduces_example_3_3():
    spec = {"label": "tent", "density": [
        {"a": "0", "b": "1/n", "value": "n*2^n"},
        {"a": "1/n", "b": "2/n", "value": "-n*2^n"}]}
    t = template_from_dict(spec)
    for n in (1, 2, 7):
        assert t.measure(n) == example_3_3(n)
    assert t.limit is None


def test_template_errors_name_the_field():
    with pytest.raises(FormatError, match=r"\$\.atoms\[0\]\.w"):
        template_from_dict({"atoms": [{"x": "1/n", "w": "n +"}]})
    with pytest.raises(FormatError, match="unknown keys"):
        template_from_dict({"atom": []})
    t = template_from_dict({"density": [{"a": "1", "b": "1/n", "value": "1"}]})
    with pytest.raises(ValueError, match="a >= b"):
        t.measure(1)
