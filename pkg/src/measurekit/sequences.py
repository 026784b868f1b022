"""Measure sequences and empirical convergence checkers.

A check samples a sequence on a finite :class:`Schedule` and returns a
:class:`~measurekit.core.Verdict`.  ``limsup``/``liminf`` are read off the
tail window of the schedule; verdicts are evidence, never proof.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .bv import Centre, distribution_function, eval_bv
from .calculus import integrate, measure_of_set, total_mass, tv_norm, variation
from .core import (NEG_INF, POS_INF, Measure, RealSet, Status, TestFunction, Verdict,
                   constant, hat, sign_ramp)
from .scalar import HALF, ZERO, ScalarLike, format_scalar, to_scalar

EMPIRICAL_NOTE = "empirical evidence on a finite schedule, not a proof"


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("MEASUREKIT_THREADS", "1")))
    except ValueError:
        return 1


def pmap(fn, items) -> list:
    """Ordered map; threaded when ``MEASUREKIT_THREADS`` > 1."""
    items = list(items)
    workers = min(thread_count(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# --------------------------------------------------------------------------
# Sequences and schedules


class MeasureSequence:
    """``n -> Measure`` for ``n >= 1`` with memoised evaluations."""

    def __init__(self, generator: Callable[[int], Measure], label: str = "",
                 declared_limit: Measure | None = None):
        self._generator = generator
        self.label = label
        self.declared_limit = declared_limit
        self._cache: dict = {}

    def __call__(self, n: int) -> Measure:
        if n < 1:
            raise ValueError("sequence indices start at 1")
        key = ("mu", n)
        if key not in self._cache:
            self._cache[key] = self._generator(n)
        return self._cache[key]

    def _memo(self, key, compute):
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]

    def variation_at(self, n: int) -> Measure:
        return self._memo(("var", n), lambda: variation(self(n)))

    def integral(self, n: int, f: TestFunction) -> Fraction:
        return self._memo(("int", n, f), lambda: integrate(self(n), f))

    def abs_mass(self, n: int, A: RealSet) -> Fraction:
        return self._memo(("abs", n, A), lambda: measure_of_set(self.variation_at(n), A))

    def map(self, fn: Callable[[Measure], Measure], label: str = "") -> "MeasureSequence":
        return MeasureSequence(lambda n: fn(self(n)), label or self.label)

    def __repr__(self) -> str:
        return f"MeasureSequence({self.label!r})"


def _default_indices() -> tuple:
    return tuple(sorted(set(range(1, 17)) | {2 ** k for k in range(15)}))


@dataclass(frozen=True)
class Schedule:
    indices: tuple = field(default_factory=_default_indices)
    tail_window: int = 4
    tolerance: Fraction = ZERO
    decay_ratio: Fraction = HALF

    def __post_init__(self):
        idx = tuple(int(n) for n in self.indices)
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "tolerance", to_scalar(self.tolerance))
        object.__setattr__(self, "decay_ratio", to_scalar(self.decay_ratio))
        if not idx or idx[0] < 1 or any(a >= b for a, b in zip(idx, idx[1:])):
            raise ValueError("indices must be strictly increasing positive integers")
        if not 1 <= self.tail_window <= len(idx):
            raise ValueError("tail_window must lie in [1, len(indices)]")
        if self.tolerance < 0:
            raise ValueError("tolerance must be nonnegative")
        if not 0 < self.decay_ratio < 1:
            raise ValueError("decay_ratio must lie in (0, 1)")

    @classmethod
    def default(cls) -> "Schedule":
        return cls()

    @classmethod
    def upto(cls, last: int, tail_window: int = 4, **kw) -> "Schedule":
        return cls(tuple(range(1, last + 1)), tail_window, **kw)

    @staticmethod
    def parse_indices(text: str) -> tuple:
        """``"1-16,32,64"`` style lists; ``"default"`` gives the default set."""
        text = text.strip()
        if text == "default":
            return _default_indices()
        out = set()
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            lo, sep, hi = part.partition("-")
            if sep:
                out.update(range(int(lo), int(hi) + 1))
            else:
                out.add(int(part))
        return tuple(sorted(out))

    def to_dict(self) -> dict:
        return {"indices": list(self.indices), "tail_window": self.tail_window,
                "tolerance": format_scalar(self.tolerance),
                "decay_ratio": format_scalar(self.decay_ratio)}


# --------------------------------------------------------------------------
# Test families


@dataclass(frozen=True)
class TestFamily:
    """Finite stand-in for "all f in C_c" (hats) or "all f in C_b" (hats and ramps).

    Hats have half-width ``2**-l`` for ``l = 0..depth`` and centres on the grid
    ``k * 2**-l`` inside ``[-extent, extent]``.
    """

    __test__ = False

    functions: tuple
    extent: Fraction = Fraction(2)
    depth: int = 2
    kind: str = "Cc"

    @staticmethod
    def _grid(extent: Fraction, depth: int):
        for level in range(depth + 1):
            w = Fraction(1, 2 ** level)
            steps = int(extent / w)
            for k in range(-steps, steps + 1):
                yield k * w, w

    @classmethod
    def cc(cls, extent: ScalarLike = 2, depth: int = 2) -> "TestFamily":
        extent = to_scalar(extent)
        fns = tuple(hat(c, w) for c, w in cls._grid(extent, depth))
        return cls(fns, extent, depth, "Cc")

    @classmethod
    def cb(cls, extent: ScalarLike = 2, depth: int = 2) -> "TestFamily":
        extent = to_scalar(extent)
        hats = tuple(hat(c, w) for c, w in cls._grid(extent, depth))
        ramps = tuple(sign_ramp(c, w) for c, w in cls._grid(extent, depth))
        return cls(hats + ramps, extent, depth, "Cb")

    @classmethod
    def compactified(cls, extent: ScalarLike = 2, depth: int = 2) -> "TestFamily":
        """Hats plus the constant 1: continuous functions with equal tails."""
        extent = to_scalar(extent)
        hats = tuple(hat(c, w) for c, w in cls._grid(extent, depth))
        return cls(hats + (constant(1),), extent, depth, "Cb-equal-tails")

    def compact_sets(self) -> tuple:
        """Closed supports of the hat members."""
        seen = []
        for f in self.functions:
            if f.class_tag == "Cc":
                K = RealSet.closed(f.breakpoints[0], f.breakpoints[-1])
                if K not in seen:
                    seen.append(K)
        return tuple(seen)

    def cc_members(self) -> tuple:
        return tuple(f for f in self.functions if f.class_tag == "Cc")

    def __len__(self) -> int:
        return len(self.functions)


# --------------------------------------------------------------------------
# Diagnostics on sample lists


def _nondecreasing(xs) -> bool:
    return all(a <= b for a, b in zip(xs, xs[1:]))


def _nonincreasing(xs) -> bool:
    return all(a >= b for a, b in zip(xs, xs[1:]))


def _decays(xs, ratio) -> bool:
    return len(xs) >= 2 and xs[0] > 0 and _nonincreasing(xs) and xs[-1] <= ratio * xs[0]


def _evidence(samples) -> tuple:
    return tuple((int(n), to_scalar(v)) for n, v in samples)


def limit_diagnostic(samples: Sequence[tuple], target: ScalarLike, schedule: Schedule) -> Verdict:
    """Does ``a_n -> target``?

    holds: every tail distance is within tolerance, or the tail distances
    shrink monotonically by at least ``decay_ratio`` across the window.
    fails: the last distance exceeds tolerance, tail distances are
    nondecreasing and the tail samples themselves are monotone.
    """
    if not samples:
        raise ValueError("no samples")
    target = to_scalar(target)
    tail = list(samples)[-schedule.tail_window:]
    values = [to_scalar(v) for _, v in tail]
    dists = [abs(v - target) for v in values]
    tol = schedule.tolerance
    evidence = _evidence(tail)
    if all(d <= tol for d in dists):
        return Verdict(Status.HOLDS, evidence, "tail within tolerance of the target")
    if _decays(dists, schedule.decay_ratio):
        return Verdict(Status.HOLDS, evidence, "distance to the target decays across the tail")
    if dists[-1] > tol and _nondecreasing(dists) and (_nondecreasing(values) or _nonincreasing(values)):
        return Verdict(Status.FAILS, evidence, "distance to the target does not shrink on the tail")
    return Verdict(Status.INCONCLUSIVE, evidence, "no trend certificate on the tail")


def bound_diagnostic(samples: Sequence[tuple], bound: ScalarLike, schedule: Schedule,
                     upper: bool = True) -> Verdict:
    """Is ``limsup a_n <= bound`` (``upper``) or ``liminf a_n >= bound``?"""
    if not samples:
        raise ValueError("no samples")
    bound = to_scalar(bound)
    tail = list(samples)[-schedule.tail_window:]
    values = [to_scalar(v) for _, v in tail]
    excess = [v - bound if upper else bound - v for v in values]
    tol = schedule.tolerance
    evidence = _evidence(tail)
    word = "limsup" if upper else "liminf"
    if all(e <= tol for e in excess):
        return Verdict(Status.HOLDS, evidence, f"tail respects the {word} bound")
    if _decays(excess, schedule.decay_ratio):
        return Verdict(Status.HOLDS, evidence, f"excess over the {word} bound decays")
    if all(e > tol for e in excess) and _nondecreasing(excess):
        return Verdict(Status.FAILS, evidence, f"tail violates the {word} bound without shrinking")
    return Verdict(Status.INCONCLUSIVE, evidence, "no trend certificate on the tail")


def combine(named: Sequence[tuple], note: str = "") -> Verdict:
    """All-of aggregation: fails if any fails, holds if all hold."""
    for name, v in named:
        if v.fails:
            return Verdict(Status.FAILS, v.evidence, note or v.note, name)
    for name, v in named:
        if not v.holds:
            return Verdict(Status.INCONCLUSIVE, v.evidence, note or v.note, name)
    if not named:
        return Verdict(Status.INCONCLUSIVE, (), "nothing to check")
    return Verdict(Status.HOLDS, named[0][1].evidence, note or named[0][1].note)


def search_diagnostic(per_eps: Sequence[tuple], note: str) -> Verdict:
    """Aggregation for "for every eps there is a set with small mass".

    ``per_eps`` is ``[(eps_label, [(set_label, verdict), ...]), ...]``.  An eps
    is satisfied when one candidate holds; the check fails when, for some eps,
    every candidate fails.
    """
    failing = None
    pending = None
    for eps_label, candidates in per_eps:
        if any(v.holds for _, v in candidates):
            continue
        if candidates and all(v.fails for _, v in candidates):
            if failing is None:
                set_label, v = candidates[-1]
                failing = (f"eps={eps_label}, {set_label}", v)
        elif pending is None:
            pending = (f"eps={eps_label}", candidates[-1][1] if candidates else None)
    if failing is not None:
        label, v = failing
        return Verdict(Status.FAILS, v.evidence, note, label)
    if pending is not None:
        label, v = pending
        return Verdict(Status.INCONCLUSIVE, v.evidence if v else (), note, label)
    return Verdict(Status.HOLDS, (), note)


# --------------------------------------------------------------------------
# Checks


def _integral_verdicts(seq: MeasureSequence, limit: Measure, functions: Sequence[TestFunction],
                       schedule: Schedule) -> list:
    rows = pmap(lambda n: [seq.integral(n, f) for f in functions], schedule.indices)
    out = []
    for j, f in enumerate(functions):
        samples = [(n, row[j]) for n, row in zip(schedule.indices, rows)]
        out.append((f.name, limit_diagnostic(samples, integrate(limit, f), schedule)))
    return out


def check_vague(seq: MeasureSequence, limit: Measure, family: TestFamily,
                schedule: Schedule) -> Verdict:
    """Integrals against every compactly supported family member converge."""
    members = family.cc_members()
    if not members:
        raise ValueError("vague check needs Cc members in the family")
    return combine(_integral_verdicts(seq, limit, members, schedule),
                   "vague convergence on the Cc family; " + EMPIRICAL_NOTE)


def check_weak(seq: MeasureSequence, limit: Measure, family: TestFamily,
               schedule: Schedule) -> Verdict:
    """Integrals against every bounded family member converge."""
    if all(f.has_compact_support for f in family.functions):
        raise ValueError("weak check needs Cb members with nonzero tails")
    return combine(_integral_verdicts(seq, limit, family.functions, schedule),
                   "weak convergence on the Cb family; " + EMPIRICAL_NOTE)


def _abs_samples(seq: MeasureSequence, A: RealSet, schedule: Schedule) -> list:
    return list(zip(schedule.indices, pmap(lambda n: seq.abs_mass(n, A), schedule.indices)))


def check_tightness(seq: MeasureSequence, epsilons: Sequence[ScalarLike],
                    M_schedule: Sequence[ScalarLike], schedule: Schedule) -> Verdict:
    """For each eps some ``[-M, M]`` leaves at most eps of variation outside."""
    per_eps = []
    for eps in epsilons:
        eps = to_scalar(eps)
        if eps <= 0:
            raise ValueError("epsilons must be positive")
        candidates = []
        for M in M_schedule:
            outside = RealSet.closed(-to_scalar(M), to_scalar(M)).complement()
            v = bound_diagnostic(_abs_samples(seq, outside, schedule), eps, schedule)
            candidates.append((f"M={format_scalar(to_scalar(M))}", v))
            if v.holds:
                break
        per_eps.append((format_scalar(eps), candidates))
    return search_diagnostic(per_eps, "tightness: |mu_n|([-M,M]^c) <= eps; " + EMPIRICAL_NOTE)


def check_signed_mass_preservation(seq: MeasureSequence, limit: Measure,
                                   schedule: Schedule) -> Verdict:
    samples = list(zip(schedule.indices, pmap(lambda n: total_mass(seq(n)), schedule.indices)))
    v = limit_diagnostic(samples, total_mass(limit), schedule)
    return Verdict(v.status, v.evidence, "mu_n(R) -> mu(R); " + v.note)


def check_compact_limsup(seq: MeasureSequence, limit: Measure, K: RealSet,
                         schedule: Schedule) -> Verdict:
    """``limsup |mu_n|(K) <= |mu|(K)`` for a compact ``K``."""
    if not K.is_compact():
        raise ValueError(f"{K} is not a finite union of bounded closed intervals")
    bound = measure_of_set(variation(limit), K)
    v = bound_diagnostic(_abs_samples(seq, K, schedule), bound, schedule)
    return Verdict(v.status, v.evidence, v.note, str(K))


def check_open_liminf(seq: MeasureSequence, limit: Measure, theta: RealSet,
                      schedule: Schedule) -> Verdict:
    """``liminf |mu_n|(theta) >= |mu|(theta)`` for an open ``theta``."""
    if not theta.is_open():
        raise ValueError(f"{theta} is not a finite union of open intervals")
    bound = measure_of_set(variation(limit), theta)
    v = bound_diagnostic(_abs_samples(seq, theta, schedule), bound, schedule, upper=False)
    return Verdict(v.status, v.evidence, v.note, str(theta))


def check_norm_limsup(seq: MeasureSequence, limit: Measure, schedule: Schedule) -> Verdict:
    samples = list(zip(schedule.indices, pmap(lambda n: tv_norm(seq(n)), schedule.indices)))
    v = bound_diagnostic(samples, tv_norm(limit), schedule)
    return Verdict(v.status, v.evidence, "limsup ||mu_n|| <= ||mu||; " + v.note)


def as_point(x):
    """Rational, +-inf sentinel, ``Centre`` or centre token -> coordinate."""
    if isinstance(x, Centre):
        return x.point
    if isinstance(x, str):
        return Centre.parse(x).point
    if x == NEG_INF or x == POS_INF:
        return x
    return to_scalar(x)


def point_label(x) -> str:
    p = as_point(x)
    if p == NEG_INF:
        return "-inf"
    if p == POS_INF:
        return "+inf"
    return format_scalar(p)


def neighbourhood(x, delta: ScalarLike) -> RealSet:
    """Open ball ``B_delta(x)``; at +-inf the ray beyond ``+-1/delta``."""
    delta = to_scalar(delta)
    point = as_point(x)
    if point == POS_INF:
        return RealSet.open(1 / delta, POS_INF)
    if point == NEG_INF:
        return RealSet.open(NEG_INF, -1 / delta)
    return RealSet.ball(point, delta)


def check_no_mass_at(seq: MeasureSequence, x, epsilons: Sequence[ScalarLike],
                     delta_schedule: Sequence[ScalarLike], schedule: Schedule) -> Verdict:
    """For each eps some ``B_delta(x)`` carries at most eps of variation in the limit."""
    deltas = [to_scalar(d) for d in delta_schedule]
    if any(d <= 0 for d in deltas):
        raise ValueError("deltas must be positive")
    per_eps = []
    for eps in epsilons:
        eps = to_scalar(eps)
        if eps <= 0:
            raise ValueError("epsilons must be positive")
        candidates = []
        for d in deltas:
            v = bound_diagnostic(_abs_samples(seq, neighbourhood(x, d), schedule), eps, schedule)
            candidates.append((f"delta={format_scalar(d)}", v))
            if v.holds:
                break
        per_eps.append((format_scalar(eps), candidates))
    return search_diagnostic(per_eps, f"no mass at {point_label(x)}; " + EMPIRICAL_NOTE)


def check_bounded_on_compacts(seq: MeasureSequence, K_list: Iterable[RealSet],
                              schedule: Schedule) -> Verdict:
    """Is ``sup_n |mu_n|(K)`` finite?  Judged by whether the tail stays under
    the envelope of the earlier samples."""
    w = schedule.tail_window
    named = []
    for K in K_list:
        if not K.is_bounded:
            raise ValueError(f"{K} is not bounded")
        samples = _abs_samples(seq, K, schedule)
        head, tail = samples[:-w], samples[-w:]
        values = [v for _, v in tail]
        evidence = _evidence(tail)
        envelope = max((v for _, v in head), default=None)
        if envelope is not None and max(values) <= envelope:
            v = Verdict(Status.HOLDS, evidence, "tail stays under the earlier envelope")
        elif _nondecreasing(values) and values[-1] > values[0] and (envelope is None or values[-1] > envelope):
            v = Verdict(Status.FAILS, evidence, "tail keeps growing past the earlier envelope")
        else:
            v = Verdict(Status.INCONCLUSIVE, evidence, "no stabilisation or growth certificate")
        named.append((str(K), v))
    return combine(named, "bounded on compact sets; " + EMPIRICAL_NOTE)


def distfun_point_verdicts(seq: MeasureSequence, limit: Measure, centre, points: Sequence,
                           schedule: Schedule) -> list:
    centre = Centre.parse(centre)
    pts = [to_scalar(x) for x in points]
    for x in pts:
        if limit.atom_weight(x) != 0:
            raise ValueError(f"x={format_scalar(x)} is an atom of the limit, not a continuity point")
    target_F = distribution_function(limit, centre)

    def row(n):
        F = distribution_function(seq(n), centre)
        return [eval_bv(F, x) for x in pts]

    rows = pmap(row, schedule.indices)
    out = []
    for j, x in enumerate(pts):
        samples = [(n, r[j]) for n, r in zip(schedule.indices, rows)]
        out.append((format_scalar(x), limit_diagnostic(samples, eval_bv(target_F, x), schedule)))
    return out


def check_distfun_convergence(seq: MeasureSequence, limit: Measure, centre, points: Sequence,
                              schedule: Schedule) -> Verdict:
    """``F^(centre)_{mu_n}(x) -> F^(centre)_mu(x)`` at continuity points ``x`` of the limit."""
    named = distfun_point_verdicts(seq, limit, centre, points, schedule)
    return combine([(f"x={x}", v) for x, v in named],
                   f"distribution functions centred at {Centre.parse(centre)}; " + EMPIRICAL_NOTE)
