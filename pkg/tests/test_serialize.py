from fractions import Fraction

import pytest
from hypothesis import given

from conftest import cc_functions, measures
from measurekit import hat, sign_ramp
from measurekit.scalar import decimal_str, format_scalar, is_large, to_scalar
from measurekit.serialize import (FormatError, function_from_dict, function_to_dict, loads_json,
                                  measure_from_dict, measure_to_dict)


def test_scalar_parsing_and_format():
    assert to_scalar("-3/6") == Fraction(-1, 2)
    assert format_scalar(Fraction(-1, 2)) == "-1/2"
    assert format_scalar(Fraction(4)) == "4"
    assert decimal_str(Fraction(1, 3)) == "0.333333333333"
    with pytest.raises(TypeError):
        to_scalar(True)


def test_huge_integers_survive_text_round_trip():
    big = Fraction(2 ** 20000, 3)
    assert to_scalar(format_scalar(big)) == big
    assert is_large(big) and not is_large(Fraction(10 ** 9))


@given(measures())
def test_measure_round_trip(mu):
    assert measure_from_dict(measure_to_dict(mu)) == mu


@given(cc_functions())
def test_function_round_trip(f):
    assert function_from_dict(function_to_dict(f)) == f


def test_function_format_keys():
    d = function_to_dict(sign_ramp(0, 1))
    assert list(d) == ["breakpoints", "pieces", "left_tail", "right_tail", "class"]
    assert d["pieces"] == [["0", "1"]] and d["class"] == "Cb"
    assert function_from_dict(function_to_dict(hat(0, 1))) == hat(0, 1)


@pytest.mark.parametrize("data, where", [
    ({"atoms": [{"x": "1"}]}, r"\$\.atoms\[0\]"),
    ({"atoms": [{"x": 0.5, "w": "1"}]}, r"\$\.atoms\[0\]\.x"),
    ({"density": [{"a": "1", "b": "0", "value": "1"}]}, r"\$\.density\[0\]"),
    ({"atoms": [{"x": "1/0", "w": "1"}]}, r"\$\.atoms\[0\]\.x"),
])
def test_measure_errors_name_the_path(data, where):
    with pytest.raises(FormatError, match=where):
        measure_from_dict(data)


def test_discontinuous_function_rejected():
    data = {"breakpoints": ["0", "1"], "pieces": [["0", "1"]], "left_tail": "0", "right_tail": "2"}
    with pytest.raises(FormatError, match="jump"):
        function_from_dict(data)


def test_json_errors_report_position():
    with pytest.raises(FormatError, match="line 2 column 3"):
        loads_json('{\n  ]')
