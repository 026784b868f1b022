"""Built-in measure sequences with exact expected values and verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .bv import distribution_function, eval_bv, piecewise_linear_measure, sup_abs_bv
from .calculus import integrate, measure_of_set, total_mass, tv_norm, variation
from .core import Measure, RealSet, dirac, hat, linear_combine, sign_ramp
from .report import ClassifyConfig, classify
from .sequences import MeasureSequence, Schedule, TestFamily, check_vague

HAT = hat(0, 1)
SIGN_LIKE = sign_ramp(0, 1)


def _check_n(n: int) -> int:
    n = int(n)
    if n < 1:
        raise ValueError("n must be >= 1")
    return n


def example_2_1(n: int) -> Measure:
    """``delta_n - delta_{-n}``: vague but not weak convergence to zero."""
    n = _check_n(n)
    return linear_combine([1, -1], [dirac(n), dirac(-n)])


def remark_3_2a(n: int) -> Measure:
    """``delta_{1/n}``, converging vaguely to ``delta_0``."""
    return dirac(Fraction(1, _check_n(n)))


def example_3_3(n: int) -> Measure:
    """Measure of the tent through (0, 0), (1/n, 2**n), (2/n, 0)."""
    n = _check_n(n)
    return piecewise_linear_measure([(0, 0), (Fraction(1, n), 2 ** n), (Fraction(2, n), 0)])


def example_3_4(n: int) -> Measure:
    """``delta_0 - delta_{1/n}``."""
    n = _check_n(n)
    return linear_combine([1, -1], [dirac(0), dirac(Fraction(1, n))])


def _sawtooth(n: int, step: Fraction) -> Measure:
    knots = [(k * step, Fraction(k % 2, 2 ** n)) for k in range(-2 ** n, 2 ** n + 1)]
    return piecewise_linear_measure(knots)


def example_3_8(n: int) -> Measure:
    """Sawtooth of height ``2**-n`` on the grid ``k 2**-2n`` inside ``[-2**-n, 2**-n]``."""
    n = _check_n(n)
    return _sawtooth(n, Fraction(1, 4 ** n))


def example_3_10(n: int) -> Measure:
    """Sawtooth of height ``2**-n`` on the grid ``k 2**-n`` spanning ``[-1, 1]``."""
    n = _check_n(n)
    return _sawtooth(n, Fraction(1, 2 ** n))


@dataclass(frozen=True)
class Fact:
    description: str
    value: Callable[[int], Fraction]
    expected: Callable[[int], Fraction]
    min_n: int = 1


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    title: str
    generator: Callable[[int], Measure]
    limit: Measure
    expected: dict
    facts: tuple = ()
    config: ClassifyConfig = field(default_factory=ClassifyConfig)
    extra_checks: Callable | None = None

    def sequence(self) -> MeasureSequence:
        return MeasureSequence(self.generator, self.id, self.limit)

    def classify(self, config: ClassifyConfig | None = None) -> dict:
        config = config or self.config
        seq = self.sequence()
        extra = self.extra_checks(seq, config) if self.extra_checks else None
        return classify(seq, self.limit, config, extra)


def _F0(mu: Measure, x) -> Fraction:
    return eval_bv(distribution_function(mu, 0), x)


def _variation_to_first(seq: MeasureSequence, config: ClassifyConfig) -> dict:
    family = TestFamily.cc(config.family_extent, config.family_depth)
    first = variation(seq(1))
    return {"variation_vague_to_first": check_vague(seq.map(variation), first, family, config.schedule)}


# Explicit sawtooth measures have 2**(n+1) pieces, so their runs stop at n = 10.
SAWTOOTH_CONFIG = ClassifyConfig(schedule=Schedule.upto(10))

ZERO_MEASURE = Measure()

ENTRIES = (
    CorpusEntry(
        "example_2_1", "delta_n - delta_{-n} vs the zero measure", example_2_1, ZERO_MEASURE,
        {"vague": "holds", "signed_mass": "holds", "tightness": "fails", "weak": "fails"},
        (
            Fact("signed mass mu_n(R)", lambda n: total_mass(example_2_1(n)), lambda n: Fraction(0)),
            Fact("total variation ||mu_n||", lambda n: tv_norm(example_2_1(n)), lambda n: Fraction(2)),
            Fact("integral of the sign-like ramp", lambda n: integrate(example_2_1(n), SIGN_LIKE),
                 lambda n: Fraction(2)),
            Fact("integral of the hat on [-1, 1]", lambda n: integrate(example_2_1(n), HAT),
                 lambda n: Fraction(0)),
        ),
    ),
    CorpusEntry(
        "remark_3_2a", "delta_{1/n} vs delta_0", remark_3_2a, dirac(0),
        {"vague": "holds", "distfun@-1": "fails", "distfun@-1/2": "fails", "rejected:0": "rejected"},
        (
            Fact("F^(0)_{mu_n}(-1)", lambda n: _F0(remark_3_2a(n), -1), lambda n: Fraction(0)),
            Fact("F^(0)_{mu}(-1) of the limit", lambda n: _F0(dirac(0), -1), lambda n: Fraction(-1)),
            Fact("total variation ||mu_n||", lambda n: tv_norm(remark_3_2a(n)), lambda n: Fraction(1)),
        ),
    ),
    CorpusEntry(
        "example_3_3", "tent of height 2^n on [0, 2/n] vs the zero measure", example_3_3, ZERO_MEASURE,
        {"distfun": "holds", "bounded_on_compacts": "fails", "vague": "fails"},
        (
            Fact("integral of the hat (exact value 2^n/n)", lambda n: integrate(example_3_3(n), HAT),
                 lambda n: Fraction(2 ** n, n), min_n=2),
            Fact("F^(0)_{mu_n}(1/n) peak", lambda n: _F0(example_3_3(n), Fraction(1, n)),
                 lambda n: Fraction(2 ** n)),
            Fact("total variation ||mu_n||", lambda n: tv_norm(example_3_3(n)),
                 lambda n: Fraction(2 ** (n + 1))),
            Fact("signed mass mu_n(R)", lambda n: total_mass(example_3_3(n)), lambda n: Fraction(0)),
        ),
    ),
    CorpusEntry(
        "example_3_4", "delta_0 - delta_{1/n} vs the zero measure", example_3_4, ZERO_MEASURE,
        {"weak": "holds", "no_mass@0": "fails", "distfun@1/2": "fails", "distfun@1": "fails",
         "norm_limsup": "fails"},
        (
            Fact("F^(0)_{mu_n}(1)", lambda n: _F0(example_3_4(n), 1), lambda n: Fraction(-1)),
            Fact("signed mass mu_n(R)", lambda n: total_mass(example_3_4(n)), lambda n: Fraction(0)),
            Fact("total variation ||mu_n||", lambda n: tv_norm(example_3_4(n)), lambda n: Fraction(2)),
        ),
    ),
    CorpusEntry(
        "example_3_8", "dyadic sawtooth on [-2^-n, 2^-n] vs the zero measure", example_3_8, ZERO_MEASURE,
        {"distfun": "holds", "bounded_on_compacts": "holds", "vague": "holds", "no_mass@0": "fails",
         "jordan_vague": "fails"},
        (
            Fact("total variation ||mu_n||", lambda n: tv_norm(example_3_8(n)), lambda n: Fraction(2)),
            Fact("sup |F^(0)_{mu_n}|", lambda n: sup_abs_bv(distribution_function(example_3_8(n), 0)),
                 lambda n: Fraction(1, 2 ** n)),
            Fact("|mu_n|([-2^-n, 2^-n])",
                 lambda n: measure_of_set(variation(example_3_8(n)),
                                          RealSet.closed(-Fraction(1, 2 ** n), Fraction(1, 2 ** n))),
                 lambda n: Fraction(2)),
        ),
        SAWTOOTH_CONFIG,
    ),
    CorpusEntry(
        "example_3_10", "sawtooth with slopes +-1 on [-1, 1] vs the zero measure", example_3_10,
        ZERO_MEASURE,
        {"vague": "holds", "no_mass": "holds", "jordan_vague": "fails", "variation_vague_to_first": "holds"},
        (
            Fact("total variation ||mu_n||", lambda n: tv_norm(example_3_10(n)), lambda n: Fraction(2)),
            Fact("sup |F^(0)_{mu_n}|", lambda n: sup_abs_bv(distribution_function(example_3_10(n), 0)),
                 lambda n: Fraction(1, 2 ** n)),
        ) + tuple(
            Fact(f"|mu_n|(B_(eps/2)(0)) with eps={eps}",
                 lambda n, eps=eps: measure_of_set(variation(example_3_10(n)), RealSet.ball(0, eps / 2)),
                 lambda n, eps=eps: eps)
            for eps in (Fraction(1, 4), Fraction(1, 2), Fraction(1))
        ),
        SAWTOOTH_CONFIG,
        _variation_to_first,
    ),
)

BY_ID = {e.id: e for e in ENTRIES}


def get(entry_id: str) -> CorpusEntry:
    try:
        return BY_ID[entry_id]
    except KeyError:
        raise KeyError(f"unknown corpus id {entry_id!r}; known: {', '.join(BY_ID)}") from None


def fact_rows(entry: CorpusEntry, indices=None):
    """Yield ``(description, n, value, expected)`` over the entry's schedule."""
    indices = indices or entry.config.schedule.indices
    for fact in entry.facts:
        for n in indices:
            if n >= fact.min_n:
                yield fact.description, n, fact.value(n), fact.expected(n)


def expected_matches(entry: CorpusEntry, report: dict) -> dict:
    """``{key: (expected, observed)}`` for every expected verdict of ``entry``."""
    out = {}
    for key, want in entry.expected.items():
        if key.startswith("rejected:"):
            point = key.split(":", 1)[1]
            got = "rejected" if point in report["rejected_points"] else "accepted"
        else:
            got = report["checks"].get(key, {}).get("status", "missing")
        out[key] = (want, got)
    return out


__all__ = [
    "CorpusEntry", "ENTRIES", "BY_ID", "Fact", "get", "fact_rows", "expected_matches",
    "example_2_1", "remark_3_2a", "example_3_3", "example_3_4", "example_3_8", "example_3_10",
    "HAT", "SIGN_LIKE",
]
