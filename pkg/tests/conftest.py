import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from measurekit import Measure, RealSet, piecewise_linear

GOLDEN = Path(__file__).parent / "golden"

small_ints = st.integers(min_value=-12, max_value=12)
rationals = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=8))
nonzero = rationals.filter(lambda q: q != 0)


@st.composite
def measures(draw, max_atoms=4, max_pieces=5, positive=False):
    weight = rationals.filter(lambda q: q > 0) if positive else nonzero
    atoms = draw(st.lists(st.tuples(rationals, weight), max_size=max_atoms))
    cuts = sorted(set(draw(st.lists(rationals, min_size=0, max_size=max_pieces + 1))))
    values = draw(st.lists(weight, min_size=len(cuts), max_size=len(cuts)))
    pieces = [(a, b, v) for (a, b), v in zip(zip(cuts, cuts[1:]), values)]
    return Measure(tuple(atoms), tuple(pieces))


@st.composite
def cc_functions(draw, max_knots=5):
    xs = sorted(set(draw(st.lists(rationals, min_size=2, max_size=max_knots))))
    if len(xs) < 2:
        xs = [xs[0], xs[0] + 1]
    inner = draw(st.lists(rationals, min_size=len(xs) - 2, max_size=len(xs) - 2))
    ys = [Fraction(0)] + inner + [Fraction(0)]
    return piecewise_linear(list(zip(xs, ys)), "Cc")


@st.composite
def intervals_sets(draw):
    kinds = ["closed", "open", "left_open", "right_open", "point"]
    parts = []
    for _ in range(draw(st.integers(0, 3))):
        a, b = sorted((draw(rationals), draw(rationals)))
        kind = draw(st.sampled_from(kinds))
        if kind == "point":
            parts.append(RealSet.point(a))
        elif a < b or kind == "closed":
            parts.append(getattr(RealSet, kind)(a, b))
    return RealSet.union_of(parts)


def random_measure(rng: random.Random, positive: bool = False) -> Measure:
    """Random rational atoms plus a random sawtooth density."""
    def q(lo=-6, hi=6, den=6):
        return Fraction(rng.randint(lo * den, hi * den), rng.randint(1, den))

    atoms = []
    for _ in range(rng.randint(0, 4)):
        w = q(0 if positive else -3, 3) or Fraction(1)
        atoms.append((q(), abs(w) if positive else w))
    start, width = q(-3, 0), Fraction(1, rng.randint(1, 8))
    height = Fraction(rng.randint(1, 5), rng.randint(1, 4))
    pieces = []
    for k in range(rng.randint(0, 8)):
        sign = 1 if positive else (-1) ** k
        pieces.append((start + k * width, start + (k + 1) * width, sign * height * rng.randint(1, 3)))
    return Measure(tuple(atoms), tuple(pieces))


@pytest.fixture
def rng():
    return random.Random(20240611)


ACCEPTANCE_LINES: dict = {}


def record_criterion(number: int, title: str, failures: list) -> None:
    status = "PASS" if not failures else "FAIL"
    line = f"criterion {number} [{status}] {title}"
    if failures:
        line += f" -- {len(failures)} mismatch(es); first: {failures[0]}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])
