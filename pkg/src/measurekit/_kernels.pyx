# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_kernels_py``; keep the two in lockstep."""

from fractions import Fraction
from math import lcm


cdef list _scaled(list values, object denom):
    cdef Py_ssize_t i, n = len(values)
    cdef list out = [None] * n
    for i in range(n):
        v = values[i]
        out[i] = v.numerator * (denom // v.denominator)
    return out


def density_poly_integral(starts, ends, values, breaks, coeffs, left_tail, right_tail):
    cdef list s_list = list(starts)
    cdef list e_list = list(ends)
    cdef list v_list = list(values)
    cdef list b_list = list(breaks)
    cdef Py_ssize_t k = len(s_list)
    if k == 0:
        return Fraction(0)
    dx = lcm(*[a.denominator for a in s_list], *[b.denominator for b in e_list],
             *[x.denominator for x in b_list])
    dv = lcm(*[v.denominator for v in v_list])
    cdef list A = _scaled(s_list, dx)
    cdef list B = _scaled(e_list, dx)
    cdef list V = _scaled(v_list, dv)
    cdef list X = _scaled(b_list, dx)
    cdef Py_ssize_t nb = len(X)

    cdef list polys = [(left_tail,)] + [tuple(c) for c in coeffs] + [(right_tail,)]
    cdef list acc = [[0] * len(p) for p in polys]
    cdef list row
    cdef Py_ssize_t i, j = 0, r, q, deg

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
            row = <list>acc[r]
            deg = len(row)
            pe = seg_end
            ps = cur
            for q in range(deg):
                row[q] = row[q] + v * (pe - ps)
                pe = pe * seg_end
                ps = ps * cur
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
    cdef list s_list = list(starts)
    cdef list e_list = list(ends)
    cdef list v_list = list(values)
    cdef Py_ssize_t i, k = len(s_list)
    if k == 0:
        return [0], 1
    dx = lcm(*[a.denominator for a in s_list], *[b.denominator for b in e_list])
    dv = lcm(*[v.denominator for v in v_list])
    cdef list A = _scaled(s_list, dx)
    cdef list B = _scaled(e_list, dx)
    cdef list V = _scaled(v_list, dv)
    cdef list prefix = [0] * (k + 1)
    run = 0
    for i in range(k):
        run = run + V[i] * (B[i] - A[i])
        prefix[i + 1] = run
    return prefix, dx * dv
