"""Integration, Jordan decomposition and set evaluation for :class:`Measure`."""

from __future__ import annotations

import bisect
from fractions import Fraction
from math import isqrt

from . import kernels
from .core import NEG_INF, POS_INF, Measure, RealSet, TestFunction, poly_eval
from .scalar import ZERO


def integrate(mu: Measure, f: TestFunction) -> Fraction:
    """Exact value of the integral of ``f`` against ``mu``."""
    total = sum((w * f(x) for x, w in mu.atoms), ZERO)
    if not mu.density:
        return total
    bps = f.breakpoints
    lo, hi = bps[0], bps[-1]
    ends = [b for _, b, _ in mu.density]
    i_lo = bisect.bisect_right(ends, lo)        # first piece reaching past lo
    i_hi = bisect.bisect_left(mu._starts, hi)   # first piece starting at/after hi
    prefix, denom = mu._density_prefix
    if f.left_tail and i_lo:
        total += f.left_tail * Fraction(prefix[i_lo], denom)
    if f.right_tail and i_hi < len(mu.density):
        total += f.right_tail * Fraction(prefix[-1] - prefix[i_hi], denom)
    if i_lo < i_hi:
        middle = mu.density[i_lo:i_hi]
        total += kernels.density_poly_integral(
            [a for a, _, _ in middle], [b for _, b, _ in middle], [v for *_, v in middle],
            bps, f.pieces, f.left_tail, f.right_tail)
    return total


def jordan(mu: Measure) -> tuple:
    """Return ``(positive part, negative part)``; both are positive measures."""
    pos = Measure(tuple((x, w) for x, w in mu.atoms if w > 0),
                  tuple(p for p in mu.density if p[2] > 0))
    neg = Measure(tuple((x, -w) for x, w in mu.atoms if w < 0),
                  tuple((a, b, -v) for a, b, v in mu.density if v < 0))
    return pos, neg


def variation(mu: Measure) -> Measure:
    """The variation measure ``|mu|``."""
    return Measure(tuple((x, abs(w)) for x, w in mu.atoms),
                   tuple((a, b, abs(v)) for a, b, v in mu.density))


def tv_norm(mu: Measure) -> Fraction:
    return (sum((abs(w) for _, w in mu.atoms), ZERO)
            + sum((abs(v) * (b - a) for a, b, v in mu.density), ZERO))


def total_mass(mu: Measure) -> Fraction:
    """Signed mass of the whole line."""
    return mu.total_mass()


def measure_of_set(mu: Measure, A: RealSet) -> Fraction:
    total = ZERO
    for iv in A.intervals:
        upper = mu.atom_cdf(iv.hi, inclusive=iv.hi_closed)
        lower = mu.atom_cdf(iv.lo, inclusive=not iv.lo_closed)
        total += upper - lower
        total += mu.density_cdf(iv.hi) - mu.density_cdf(iv.lo)
    return total


def restrict(mu: Measure, A: RealSet) -> Measure:
    """``mu`` restricted to ``A`` (atoms by inclusion flags, density by overlap)."""
    atoms = tuple((x, w) for x, w in mu.atoms if A.contains(x))
    pieces = []
    ends = [b for _, b, _ in mu.density]
    for iv in A.intervals:
        start = 0 if iv.lo == NEG_INF else bisect.bisect_right(ends, iv.lo)
        for a, b, v in mu.density[start:]:
            if a >= iv.hi:
                break
            lo = a if iv.lo == NEG_INF else max(a, iv.lo)
            hi = b if iv.hi == POS_INF else min(b, iv.hi)
            if lo < hi:
                pieces.append((lo, hi, v))
    return Measure(atoms, tuple(pieces))


# --------------------------------------------------------------------------
# sup |f|

_ROOT_BITS = 64


def _rational_sqrt(q: Fraction):
    """Exact square root of ``q`` if rational, else ``None``."""
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _sqrt_bracket(q: Fraction):
    scale = 1 << _ROOT_BITS
    m = q.numerator * q.denominator
    s = isqrt(m * scale * scale)
    return Fraction(s, scale * q.denominator), Fraction(s + 1, scale * q.denominator)


def _critical_candidates(coeffs, lo, hi):
    """Points (or tiny brackets) where the piece may attain an extremum."""
    c = list(coeffs) + [ZERO] * (4 - len(coeffs))
    a, b, k = 3 * c[3], 2 * c[2], c[1]
    if a == 0:
        if b != 0:
            yield ("point", -k / b)
        return
    disc = b * b - 4 * a * k
    if disc < 0:
        return
    root = _rational_sqrt(disc)
    if root is not None:
        yield ("point", (-b + root) / (2 * a))
        yield ("point", (-b - root) / (2 * a))
        return
    s_lo, s_hi = _sqrt_bracket(disc)
    for sign in (1, -1):
        r1, r2 = sorted([(-b + sign * s_lo) / (2 * a), (-b + sign * s_hi) / (2 * a)])
        yield ("bracket", (r1, r2))


def sup_abs(f: TestFunction) -> Fraction:
    """``sup |f|``: exact when extrema sit at rational points, else a tight
    rational upper bound (bracket width about 2**-64)."""
    best = max(abs(f.left_tail), abs(f.right_tail))
    bps = f.breakpoints
    for x in bps:
        best = max(best, abs(f(x)))
    for (lo, hi), coeffs in zip(zip(bps, bps[1:]), f.pieces):
        best = max(best, abs(poly_eval(coeffs, hi)))  # left limit at hi equals f(hi)
        for kind, val in _critical_candidates(coeffs, lo, hi):
            if kind == "point":
                if lo < val < hi:
                    best = max(best, abs(poly_eval(coeffs, val)))
                continue
            r1, r2 = max(val[0], lo), min(val[1], hi)
            if r1 > r2:
                continue
            radius = max(abs(r1), abs(r2))
            c = list(coeffs) + [ZERO] * (4 - len(coeffs))
            lipschitz = abs(c[1]) + 2 * abs(c[2]) * radius + 3 * abs(c[3]) * radius * radius
            edge = max(abs(poly_eval(coeffs, r1)), abs(poly_eval(coeffs, r2)))
            best = max(best, edge + lipschitz * (r2 - r1))
    return best
