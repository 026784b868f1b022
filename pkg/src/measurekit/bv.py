"""Right-continuous BV functions and distribution functions of measures."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .calculus import variation
from .core import NEG_INF, POS_INF, Measure, linear_combine
from .scalar import HALF, ZERO, ScalarLike, decimal_str, format_scalar, to_scalar


@dataclass(frozen=True)
class Centre:
    """Where a distribution function is pinned to zero: a rational or +-inf."""

    kind: str = "finite"          # "finite", "-inf" or "+inf"
    alpha: Fraction | None = None

    def __post_init__(self):
        if self.kind == "finite":
            if self.alpha is None:
                raise ValueError("finite centre needs alpha")
            object.__setattr__(self, "alpha", to_scalar(self.alpha))
        elif self.kind in ("-inf", "+inf"):
            if self.alpha is not None:
                raise ValueError("infinite centre takes no alpha")
        else:
            raise ValueError(f"unknown centre kind {self.kind!r}")

    @classmethod
    def at(cls, alpha: ScalarLike) -> "Centre":
        return cls("finite", to_scalar(alpha))

    @classmethod
    def parse(cls, text) -> "Centre":
        if isinstance(text, Centre):
            return text
        token = str(text).strip().lower()
        if token in ("-inf", "-infinity", "neg-inf"):
            return cls("-inf")
        if token in ("+inf", "inf", "+infinity", "infinity", "pos-inf"):
            return cls("+inf")
        try:
            return cls.at(token)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"invalid centre {text!r}: expected a rational, -inf or +inf") from None

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def point(self):
        """The centre as a coordinate (+-inf as float sentinels)."""
        if self.kind == "-inf":
            return NEG_INF
        if self.kind == "+inf":
            return POS_INF
        return self.alpha

    def __str__(self) -> str:
        return format_scalar(self.alpha) if self.is_finite else self.kind


NEG_INF_CENTRE = Centre("-inf")
POS_INF_CENTRE = Centre("+inf")


@dataclass(frozen=True)
class BVFunction:
    """``F(x) = offset + mu((-inf, x])``."""

    offset: Fraction
    mu: Measure

    def __post_init__(self):
        object.__setattr__(self, "offset", to_scalar(self.offset))

    def __call__(self, x) -> Fraction:
        return eval_bv(self, x)

    def left_limit(self, x: ScalarLike) -> Fraction:
        """``F(x-) = offset + mu((-inf, x))``."""
        x = to_scalar(x)
        return self.offset + self.mu.atom_cdf(x, inclusive=False) + self.mu.density_cdf(x)

    def breakpoints(self) -> tuple:
        return self.mu.breakpoints()


def distribution_function(mu: Measure, centre) -> BVFunction:
    """``F^(centre)_mu``: ``mu((alpha, x])`` for ``x >= alpha`` and
    ``-mu((x, alpha])`` below; ``mu((-inf, x])`` / ``-mu((x, inf))`` for the
    infinite centres."""
    centre = Centre.parse(centre)
    if centre.kind == "-inf":
        return BVFunction(ZERO, mu)
    if centre.kind == "+inf":
        return BVFunction(-mu.total_mass(), mu)
    return BVFunction(-mu.cdf(centre.alpha), mu)


def eval_bv(F: BVFunction, x) -> Fraction:
    """Exact value of ``F`` at ``x``; ``x = +-inf`` gives the limits."""
    if x == NEG_INF:
        return F.offset
    if x == POS_INF:
        return F.offset + F.mu.total_mass()
    return F.offset + F.mu.cdf(to_scalar(x))


def variation_function(F: BVFunction) -> BVFunction:
    """``V_F`` with ``V_F(-inf) = 0``; its measure is ``|mu_F|``."""
    return BVFunction(ZERO, variation(F.mu))


def updown_parts(F: BVFunction) -> tuple:
    """``(F_up, F_down) = ((V_F + F0) / 2, (V_F - F0) / 2)`` where ``F0 = F - F(-inf)``."""
    V = variation_function(F)
    up = linear_combine([HALF, HALF], [V.mu, F.mu])
    down = linear_combine([HALF, -HALF], [V.mu, F.mu])
    return BVFunction(ZERO, up), BVFunction(ZERO, down)


def measure_from_bv(F: BVFunction) -> Measure:
    """Recover ``mu_F`` from the values of ``F`` alone.

    Jumps ``F(x) - F(x-)`` at the candidate breakpoints become atoms; the
    slope between consecutive breakpoints becomes the density there.
    """
    pts = F.breakpoints()
    atoms = []
    for x in pts:
        jump = F(x) - F.left_limit(x)
        if jump:
            atoms.append((x, jump))
    pieces = []
    for a, b in zip(pts, pts[1:]):
        rise = F.left_limit(b) - F(a)
        if rise:
            pieces.append((a, b, rise / (b - a)))
    return Measure(tuple(atoms), tuple(pieces))


def piecewise_linear_measure(knots: Sequence[tuple]) -> Measure:
    """``mu_F`` for the continuous ``F`` that is linear between ``knots`` and
    constant outside them."""
    pts = [(to_scalar(x), to_scalar(y)) for x, y in knots]
    pieces = [(x0, x1, (y1 - y0) / (x1 - x0)) for (x0, y0), (x1, y1) in zip(pts, pts[1:])]
    return Measure((), tuple(pieces))


def sample_rows(F: BVFunction, start: ScalarLike, stop: ScalarLike, step: ScalarLike):
    """Yield ``(x, F(x))`` on the grid ``start, start + step, ...`` up to ``stop``."""
    start, stop, step = to_scalar(start), to_scalar(stop), to_scalar(step)
    if step <= 0:
        raise ValueError("step must be positive")
    x = start
    while x <= stop:
        yield x, eval_bv(F, x)
        x += step


def sample_csv(F: BVFunction, start, stop, step, precision: int = 12, exact: bool = False) -> str:
    """CSV text of :func:`sample_rows`, values in decimal."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = ["x", "F"] + (["F_exact"] if exact else [])
    writer.writerow(header)
    for x, y in sample_rows(F, start, stop, step):
        row = [decimal_str(x, precision), decimal_str(y, precision)]
        if exact:
            row.append(format_scalar(y))
        writer.writerow(row)
    return buf.getvalue()



def sup_abs_bv(F: BVFunction) -> Fraction:
    """``sup |F|`` over the line.

    Exact for this representation: ``F`` is linear between breakpoints, so the
    supremum is attained at a breakpoint value, a left limit, or a tail.
    """
    best = max(abs(eval_bv(F, NEG_INF)), abs(eval_bv(F, POS_INF)))
    for x in F.breakpoints():
        best = max(best, abs(F(x)), abs(F.left_limit(x)))
    return best
