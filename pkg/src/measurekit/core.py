"""Exact value types: measures, subsets of the line, test functions, verdicts.

All types are frozen and normalize on construction, so structural equality
is mathematical equality.
"""

from __future__ import annotations

import bisect
import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import kernels
from .scalar import ONE, ZERO, ScalarLike, format_scalar, to_scalar

NEG_INF = -math.inf
POS_INF = math.inf


# --------------------------------------------------------------------------
# Measures


def _normalize_atoms(atoms) -> tuple:
    merged: dict = {}
    for x, w in atoms:
        x = to_scalar(x)
        merged[x] = merged.get(x, ZERO) + to_scalar(w)
    return tuple((x, merged[x]) for x in sorted(merged) if merged[x] != 0)


def _normalize_density(pieces) -> tuple:
    pieces = [(to_scalar(a), to_scalar(b), to_scalar(v)) for a, b, v in pieces]
    for a, b, _ in pieces:
        if not a < b:
            raise ValueError(f"density piece needs a < b, got [{a}, {b})")
    ordered = all(pieces[i][1] <= pieces[i + 1][0] for i in range(len(pieces) - 1))
    if not ordered:
        # overlapping or unsorted input: sweep a difference array
        delta: dict = {}
        for a, b, v in pieces:
            delta[a] = delta.get(a, ZERO) + v
            delta[b] = delta.get(b, ZERO) - v
        keys = sorted(delta)
        pieces = []
        level = ZERO
        for left, right in zip(keys, keys[1:]):
            level += delta[left]
            pieces.append((left, right, level))
    out: list = []
    for a, b, v in pieces:
        if v == 0:
            continue
        if out and out[-1][1] == a and out[-1][2] == v:
            out[-1] = (out[-1][0], b, v)
        else:
            out.append((a, b, v))
    return tuple(out)


@dataclass(frozen=True)
class Measure:
    """Finite signed measure: point masses plus a piecewise-constant density.

    ``atoms`` is a sorted tuple of ``(location, weight)``; ``density`` a sorted
    tuple of disjoint half-open pieces ``(a, b, value)`` meaning density
    ``value`` on ``[a, b)``.  Zero weights and values are dropped, equal
    locations merge and adjacent equal pieces are joined.
    """

    atoms: tuple = ()
    density: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", _normalize_atoms(self.atoms))
        object.__setattr__(self, "density", _normalize_density(self.density))

    @classmethod
    def zero(cls) -> "Measure":
        return cls()

    def is_zero(self) -> bool:
        return not self.atoms and not self.density

    def is_positive(self) -> bool:
        return all(w > 0 for _, w in self.atoms) and all(v > 0 for *_, v in self.density)

    def __add__(self, other: "Measure") -> "Measure":
        return linear_combine([ONE, ONE], [self, other])

    def __sub__(self, other: "Measure") -> "Measure":
        return linear_combine([ONE, -ONE], [self, other])

    def __neg__(self) -> "Measure":
        return self.scale(-ONE)

    def scale(self, c: ScalarLike) -> "Measure":
        c = to_scalar(c)
        if c == 0:
            return Measure()
        return Measure(tuple((x, c * w) for x, w in self.atoms),
                       tuple((a, b, c * v) for a, b, v in self.density))

    def __rmul__(self, c):
        return self.scale(c)

    def shift(self, h: ScalarLike) -> "Measure":
        h = to_scalar(h)
        return Measure(tuple((x + h, w) for x, w in self.atoms),
                       tuple((a + h, b + h, v) for a, b, v in self.density))

    @property
    def atom_locations(self) -> tuple:
        return tuple(x for x, _ in self.atoms)

    def atom_weight(self, x: ScalarLike) -> Fraction:
        x = to_scalar(x)
        i = bisect.bisect_left(self.atom_locations, x)
        if i < len(self.atoms) and self.atoms[i][0] == x:
            return self.atoms[i][1]
        return ZERO

    def breakpoints(self) -> tuple:
        """Sorted atom locations and density endpoints."""
        pts = set(self.atom_locations)
        for a, b, _ in self.density:
            pts.add(a)
            pts.add(b)
        return tuple(sorted(pts))

    def support_hull(self):
        pts = self.breakpoints()
        if not pts:
            return None
        return pts[0], pts[-1]

    # -- cached helpers for fast set evaluation ----------------------------

    @cached_property
    def _starts(self) -> list:
        return [a for a, _, _ in self.density]

    @cached_property
    def _atom_prefix(self) -> list:
        out = [ZERO]
        for _, w in self.atoms:
            out.append(out[-1] + w)
        return out

    @cached_property
    def _density_prefix(self):
        return kernels.cumulative_masses(self._starts, [b for _, b, _ in self.density],
                                         [v for _, _, v in self.density])

    def density_cdf(self, x) -> Fraction:
        """Density mass of ``(-inf, x]`` (``x`` may be +-inf)."""
        if not self.density:
            return ZERO
        prefix, denom = self._density_prefix
        if x == POS_INF:
            return Fraction(prefix[-1], denom)
        if x == NEG_INF:
            return ZERO
        i = bisect.bisect_right(self._starts, x)
        if i == 0:
            return ZERO
        a, b, v = self.density[i - 1]
        partial = v * (min(x, b) - a)
        return Fraction(prefix[i - 1], denom) + partial

    def atom_cdf(self, x, inclusive: bool = True) -> Fraction:
        """Atom mass of ``(-inf, x]`` (or ``(-inf, x)`` when not inclusive)."""
        if x == POS_INF:
            return self._atom_prefix[-1]
        if x == NEG_INF:
            return ZERO
        locs = self.atom_locations
        i = bisect.bisect_right(locs, x) if inclusive else bisect.bisect_left(locs, x)
        return self._atom_prefix[i]

    def cdf(self, x) -> Fraction:
        """``mu((-inf, x])``."""
        return self.atom_cdf(x) + self.density_cdf(x)

    def total_mass(self) -> Fraction:
        return self.cdf(POS_INF)

    def __repr__(self) -> str:
        atoms = ", ".join(f"({format_scalar(x)}, {format_scalar(w)})" for x, w in self.atoms)
        if len(self.density) > 6:
            dens = f"<{len(self.density)} pieces>"
        else:
            dens = ", ".join(f"[{format_scalar(a)}, {format_scalar(b)}): {format_scalar(v)}"
                             for a, b, v in self.density)
        return f"Measure(atoms=[{atoms}], density=[{dens}])"


def dirac(x: ScalarLike) -> Measure:
    """Unit point mass at ``x``."""
    return Measure(atoms=((to_scalar(x), ONE),))


def linear_combine(coeffs: Sequence[ScalarLike], measures: Sequence[Measure]) -> Measure:
    """``sum(c * m for c, m in zip(coeffs, measures))`` in canonical form."""
    if len(coeffs) != len(measures):
        raise ValueError("coeffs and measures must have the same length")
    atoms = []
    pieces = []
    for c, m in zip(coeffs, measures):
        c = to_scalar(c)
        if c == 0:
            continue
        atoms.extend((x, c * w) for x, w in m.atoms)
        pieces.extend((a, b, c * v) for a, b, v in m.density)
    return Measure(tuple(atoms), tuple(pieces))


# --------------------------------------------------------------------------
# Subsets of the real line


def _endpoint(value):
    if value == NEG_INF or value == POS_INF:
        return NEG_INF if value < 0 else POS_INF
    return to_scalar(value)


@dataclass(frozen=True, order=True)
class Interval:
    """Interval with per-endpoint inclusion flags; infinite ends are open."""

    lo: object
    hi: object
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "lo", _endpoint(self.lo))
        object.__setattr__(self, "hi", _endpoint(self.hi))
        if self.lo == NEG_INF:
            object.__setattr__(self, "lo_closed", False)
        if self.hi == POS_INF:
            object.__setattr__(self, "hi_closed", False)

    @property
    def is_empty(self) -> bool:
        if self.lo < self.hi:
            return False
        return not (self.lo == self.hi and self.lo_closed and self.hi_closed)

    @property
    def is_bounded(self) -> bool:
        return self.lo != NEG_INF and self.hi != POS_INF

    def contains(self, x) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.lo_closed:
            return False
        if x == self.hi and not self.hi_closed:
            return False
        return True

    def _sort_key(self):
        # closed lower ends sort first at equal coordinates
        return (self.lo, 0 if self.lo_closed else 1)

    def __str__(self) -> str:
        def fmt(v):
            if v == NEG_INF:
                return "-inf"
            if v == POS_INF:
                return "+inf"
            return format_scalar(v)
        if self.lo == self.hi:
            return "{" + fmt(self.lo) + "}"
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{fmt(self.lo)}, {fmt(self.hi)}{right}"


def _touch(left: Interval, right: Interval) -> bool:
    """True when ``right`` (starting no earlier) overlaps or abuts ``left``."""
    if right.lo < left.hi:
        return True
    if right.lo == left.hi:
        return left.hi_closed or right.lo_closed
    return False


def _normalize_intervals(intervals: Iterable[Interval]) -> tuple:
    items = sorted((iv for iv in intervals if not iv.is_empty), key=Interval._sort_key)
    out: list = []
    for iv in items:
        if out and _touch(out[-1], iv):
            last = out[-1]
            if iv.hi > last.hi:
                hi, hi_closed = iv.hi, iv.hi_closed
            elif iv.hi == last.hi:
                hi, hi_closed = last.hi, last.hi_closed or iv.hi_closed
            else:
                hi, hi_closed = last.hi, last.hi_closed
            out[-1] = Interval(last.lo, hi, last.lo_closed, hi_closed)
        else:
            out.append(iv)
    return tuple(out)


@dataclass(frozen=True)
class RealSet:
    """Finite union of disjoint, non-adjacent intervals, kept sorted."""

    intervals: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "intervals", _normalize_intervals(self.intervals))

    # constructors
    @classmethod
    def empty(cls) -> "RealSet":
        return cls()

    @classmethod
    def reals(cls) -> "RealSet":
        return cls((Interval(NEG_INF, POS_INF, False, False),))

    @classmethod
    def closed(cls, a, b) -> "RealSet":
        return cls((Interval(a, b, True, True),))

    @classmethod
    def open(cls, a, b) -> "RealSet":
        return cls((Interval(a, b, False, False),))

    @classmethod
    def left_open(cls, a, b) -> "RealSet":
        """The half-open interval ``(a, b]``."""
        return cls((Interval(a, b, False, True),))

    @classmethod
    def right_open(cls, a, b) -> "RealSet":
        """The half-open interval ``[a, b)``."""
        return cls((Interval(a, b, True, False),))

    @classmethod
    def point(cls, x) -> "RealSet":
        return cls.closed(x, x)

    @classmethod
    def ball(cls, x, radius) -> "RealSet":
        x, radius = to_scalar(x), to_scalar(radius)
        return cls.open(x - radius, x + radius)

    @classmethod
    def union_of(cls, sets: Iterable["RealSet"]) -> "RealSet":
        return cls(tuple(iv for s in sets for iv in s.intervals))

    # algebra
    def complement(self) -> "RealSet":
        gaps = []
        lo, lo_closed = NEG_INF, False
        for iv in self.intervals:
            gaps.append(Interval(lo, iv.lo, lo_closed, not iv.lo_closed))
            lo, lo_closed = iv.hi, not iv.hi_closed
        gaps.append(Interval(lo, POS_INF, lo_closed, False))
        return RealSet(tuple(g for g in gaps if not (g.lo == NEG_INF and g.hi == NEG_INF)
                             and not (g.lo == POS_INF)))

    def union(self, other: "RealSet") -> "RealSet":
        return RealSet(self.intervals + other.intervals)

    def intersect(self, other: "RealSet") -> "RealSet":
        out = []
        for p in self.intervals:
            for q in other.intervals:
                if p.lo > q.lo or (p.lo == q.lo and not p.lo_closed):
                    lo, lo_closed = p.lo, p.lo_closed
                else:
                    lo, lo_closed = q.lo, q.lo_closed
                if p.hi < q.hi or (p.hi == q.hi and not p.hi_closed):
                    hi, hi_closed = p.hi, p.hi_closed
                else:
                    hi, hi_closed = q.hi, q.hi_closed
                if lo == hi and (lo == NEG_INF or lo == POS_INF):
                    continue
                out.append(Interval(lo, hi, lo_closed, hi_closed))
        return RealSet(tuple(out))

    def __or__(self, other):
        return self.union(other)

    def __and__(self, other):
        return self.intersect(other)

    def __invert__(self):
        return self.complement()

    def contains(self, x) -> bool:
        return any(iv.contains(x) for iv in self.intervals)

    def __contains__(self, x) -> bool:
        return self.contains(x)

    @property
    def is_bounded(self) -> bool:
        return all(iv.is_bounded for iv in self.intervals)

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    def is_compact(self) -> bool:
        return all(iv.is_bounded and iv.lo_closed and iv.hi_closed for iv in self.intervals)

    def is_open(self) -> bool:
        return all((iv.lo == NEG_INF or not iv.lo_closed) and (iv.hi == POS_INF or not iv.hi_closed)
                   and iv.lo != iv.hi for iv in self.intervals)

    def __str__(self) -> str:
        if not self.intervals:
            return "{}"
        return " u ".join(str(iv) for iv in self.intervals)


def complement(a: RealSet) -> RealSet:
    return a.complement()


def union(a: RealSet, b: RealSet) -> RealSet:
    return a.union(b)


def intersect(a: RealSet, b: RealSet) -> RealSet:
    return a.intersect(b)


# --------------------------------------------------------------------------
# Test functions


def _trim(coeffs) -> tuple:
    coeffs = [to_scalar(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def poly_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = ZERO
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


class DiscontinuityError(ValueError):
    pass


@dataclass(frozen=True)
class TestFunction:
    """Continuous piecewise polynomial with constant tails.

    ``pieces[i]`` holds the coefficients (constant term first, in the global
    variable) on ``[breakpoints[i], breakpoints[i+1])``; degree at most 3.
    ``class_tag`` is ``"Cc"`` (compact support, zero tails) or ``"Cb"``.
    """

    __test__ = False  # not a pytest class

    breakpoints: tuple
    pieces: tuple
    left_tail: Fraction = ZERO
    right_tail: Fraction = ZERO
    class_tag: str = "Cb"
    name: str = field(default="", compare=False)

    def __post_init__(self):
        bps = tuple(to_scalar(x) for x in self.breakpoints)
        pieces = tuple(_trim(p) for p in self.pieces)
        left, right = to_scalar(self.left_tail), to_scalar(self.right_tail)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "pieces", pieces)
        object.__setattr__(self, "left_tail", left)
        object.__setattr__(self, "right_tail", right)
        if not bps:
            raise ValueError("a test function needs at least one breakpoint")
        if any(not bps[i] < bps[i + 1] for i in range(len(bps) - 1)):
            raise ValueError("breakpoints must be strictly increasing")
        if len(pieces) != len(bps) - 1:
            raise ValueError(f"expected {len(bps) - 1} pieces, got {len(pieces)}")
        if any(len(p) > 4 for p in pieces):
            raise ValueError("piece degree exceeds 3")
        if self.class_tag not in ("Cc", "Cb"):
            raise ValueError(f"unknown class tag {self.class_tag!r}")
        if self.class_tag == "Cc" and (left != 0 or right != 0):
            raise ValueError("a Cc test function must have zero tails")
        self._check_continuity()

    def _check_continuity(self):
        bps = self.breakpoints
        for i, x in enumerate(bps):
            left = self.left_tail if i == 0 else poly_eval(self.pieces[i - 1], x)
            right = self.right_tail if i == len(bps) - 1 else poly_eval(self.pieces[i], x)
            if left != right:
                raise DiscontinuityError(
                    f"jump at x={format_scalar(x)}: {format_scalar(left)} vs {format_scalar(right)}")

    def __call__(self, x: ScalarLike) -> Fraction:
        x = to_scalar(x)
        bps = self.breakpoints
        if x < bps[0]:
            return self.left_tail
        if x >= bps[-1]:
            return self.right_tail
        i = bisect.bisect_right(bps, x) - 1
        return poly_eval(self.pieces[i], x)

    @property
    def has_compact_support(self) -> bool:
        return self.left_tail == 0 and self.right_tail == 0

    def derivative_pieces(self) -> tuple:
        return tuple(tuple(k * c for k, c in enumerate(p) if k > 0) for p in self.pieces)

    def is_piecewise_linear(self) -> bool:
        return all(len(p) <= 2 for p in self.pieces)


def eval_test_function(f: TestFunction, x: ScalarLike) -> Fraction:
    return f(x)


def piecewise_linear(knots: Sequence[tuple], class_tag: str | None = None,
                     name: str = "") -> TestFunction:
    """Continuous piecewise-linear function through ``knots``.

    Tails continue the first and last knot values.
    """
    pts = [(to_scalar(x), to_scalar(y)) for x, y in knots]
    pieces = []
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        slope = (y1 - y0) / (x1 - x0)
        pieces.append((y0 - slope * x0, slope))
    left, right = pts[0][1], pts[-1][1]
    if class_tag is None:
        class_tag = "Cc" if left == 0 and right == 0 else "Cb"
    return TestFunction(tuple(x for x, _ in pts), tuple(pieces), left, right, class_tag, name)


def hat(centre: ScalarLike, half_width: ScalarLike, height: ScalarLike = 1) -> TestFunction:
    c, w, h = to_scalar(centre), to_scalar(half_width), to_scalar(height)
    return piecewise_linear([(c - w, 0), (c, h), (c + w, 0)],
                            name=f"hat(c={format_scalar(c)},w={format_scalar(w)})")


def sign_ramp(centre: ScalarLike, half_width: ScalarLike) -> TestFunction:
    """-1 left of ``centre - w``, +1 right of ``centre + w``, linear between."""
    c, w = to_scalar(centre), to_scalar(half_width)
    return piecewise_linear([(c - w, -1), (c + w, 1)],
                            name=f"ramp(c={format_scalar(c)},w={format_scalar(w)})")


def constant(value: ScalarLike = 1) -> TestFunction:
    v = to_scalar(value)
    return TestFunction((ZERO,), (), v, v, "Cc" if v == 0 else "Cb", f"const({format_scalar(v)})")


def make_cutoff(alpha: ScalarLike, t: ScalarLike, delta: ScalarLike) -> TestFunction:
    """Trapezoid: 1 on ``[alpha, t]``, 0 off ``(alpha - delta, t + delta)``."""
    alpha, t, delta = to_scalar(alpha), to_scalar(t), to_scalar(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    if alpha > t:
        raise ValueError("need alpha <= t")
    knots = [(alpha - delta, 0), (alpha, 1)]
    if t > alpha:
        knots.append((t, 1))
    knots.append((t + delta, 0))
    return piecewise_linear(knots, "Cc", name=f"cutoff({format_scalar(alpha)},{format_scalar(t)},{format_scalar(delta)})")


# --------------------------------------------------------------------------
# Verdicts


class Status(str, enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Verdict:
    status: Status
    evidence: tuple = ()
    note: str = ""
    witness: str = ""

    def __post_init__(self):
        object.__setattr__(self, "status", Status(self.status))
        if self.status is Status.FAILS and not self.evidence:
            raise ValueError("a fails verdict needs evidence")

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def fails(self) -> bool:
        return self.status is Status.FAILS
