import random
from fractions import Fraction

import pytest

from measurekit import _kernels_py, kernels

needs_compiled = pytest.mark.skipif("compiled" not in kernels.BACKENDS,
                                    reason="compiled extension not built")


def _case(rng):
    k = rng.randint(1, 40)
    cuts = sorted({Fraction(rng.randint(-400, 400), rng.randint(1, 9)) for _ in range(k + 1)})
    starts, ends = cuts[:-1], cuts[1:]
    values = [Fraction(rng.randint(-50, 50), rng.randint(1, 7)) for _ in starts]
    breaks = sorted({Fraction(rng.randint(-300, 300), rng.randint(1, 5)) for _ in range(4)})
    coeffs = [tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(rng.randint(1, 4)))
              for _ in breaks[1:]]
    return starts, ends, values, breaks, coeffs, Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3))


@needs_compiled
def test_backends_agree():
    rng = random.Random(7)
    compiled = kernels.BACKENDS["compiled"]
    for _ in range(200):
        case = _case(rng)
        assert compiled.density_poly_integral(*case) == _kernels_py.density_poly_integral(*case)
        assert compiled.cumulative_masses(*case[:3]) == _kernels_py.cumulative_masses(*case[:3])


@needs_compiled
def test_default_backend_is_compiled():
    assert kernels.BACKEND == "compiled"


def test_pure_python_fallback_reproduces_golden_report():
    import os
    import subprocess
    import sys

    from conftest import GOLDEN

    env = dict(os.environ, MEASUREKIT_PURE_PYTHON="1")
    code = "import measurekit, sys; sys.stdout.write(measurekit.BACKEND)"
    assert subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                          text=True).stdout == "python"
    out = subprocess.run([sys.executable, "-m", "measurekit", "classify", "--corpus", "example_3_10"],
                         env=env, capture_output=True, text=True, check=True).stdout
    assert out == (GOLDEN / "classify_example_3_10.json").read_text(encoding="utf-8")
