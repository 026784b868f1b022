"""Pure-Python integration kernels (reference backend).

Both kernels move every rational onto a common denominator up front and then
accumulate plain integers, so the inner loops never touch ``Fraction``.
``_kernels.pyx`` is a line-for-line compiled twin of this module.
"""

from fractions import Fraction
from math import lcm


def _scaled(values, denom):
    return [v.numerator * (denom // v.denominator) for v in values]


def density_poly_integral(starts, ends, values, breaks, coeffs, left_tail, right_tail):
    """Return ``sum_i values[i] * integral of f over [starts[i], ends[i])``.

    ``f`` is the piecewise polynomial with breakpoints ``breaks``, per-piece
    coefficient tuples ``coeffs`` (constant term first, global variable) and
    constant tails.  Density pieces must be sorted and disjoint.
    """
    k = len(starts)
    if k == 0:
        return Fraction(0)
    dx = lcm(*[a.denominator for a in starts], *[b.denominator for b in ends],
             *[x.denominator for x in breaks])
    dv = lcm(*[v.denominator for v in values])
    A = _scaled(starts, dx)
    B = _scaled(ends, dx)
    V = _scaled(values, dv)
    X = _scaled(breaks, dx)
    nb = len(X)

    polys = [(left_tail,)] + [tuple(c) for c in coeffs] + [(right_tail,)]
    acc = [[0] * len(p) for p in polys]

    j = 0
    for i in range(k):
        s = A[i]
        e = B[i]
        v = V[i]
        while j < nb and X[j] <= s:
            j += 1
        r = j
        cur = s
        while True:
            if r < nb and X[r] < e:
                seg_end = X[r]
            else:
                seg_end = e
            row = acc[r]
            pe = seg_end
            ps = cur
            for q in range(len(row)):
                row[q] += v * (pe - ps)
                pe *= seg_end
                ps *= cur
            if seg_end == e:
                break
            cur = seg_end
            r += 1

    total = Fraction(0)
    for poly, row in zip(polys, acc):
        for q, c in enumerate(poly):
            if c and row[q]:
                total += c * Fraction(row[q], (q + 1) * dv * dx ** (q + 1))
    return total


def cumulative_masses(starts, ends, values):
    """Integer prefix sums of piece masses and their shared denominator.

    ``prefix[i] / denom`` is the total mass of pieces ``0..i-1``.
    """
    k = len(starts)
    if k == 0:
        return [0], 1
    dx = lcm(*[a.denominator for a in starts], *[b.denominator for b in ends])
    dv = lcm(*[v.denominator for v in values])
    A = _scaled(starts, dx)
    B = _scaled(ends, dx)
    V = _scaled(values, dv)
    prefix = [0] * (k + 1)
    run = 0
    for i in range(k):
        run += V[i] * (B[i] - A[i])
        prefix[i + 1] = run
    return prefix, dx * dv
