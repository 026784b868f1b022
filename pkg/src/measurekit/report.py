"""Classification reports: the three Table-1 rows, the distribution-function
checks, and implication audits over the collected verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .bv import Centre
from .calculus import jordan
from .core import Measure, RealSet, Status, Verdict
from .scalar import decimal_str, format_scalar, is_large, to_scalar
from .serialize import measure_to_dict
from .sequences import (MeasureSequence, Schedule, TestFamily, check_bounded_on_compacts,
                        check_compact_limsup, check_distfun_convergence, check_no_mass_at,
                        check_norm_limsup, check_open_liminf, check_signed_mass_preservation,
                        check_tightness, check_vague, check_weak, combine,
                        distfun_point_verdicts)


def _fr(*values) -> tuple:
    return tuple(to_scalar(v) for v in values)


@dataclass(frozen=True)
class ClassifyConfig:
    schedule: Schedule = field(default_factory=Schedule)
    family_extent: Fraction = Fraction(2)
    family_depth: int = 2
    epsilons: tuple = _fr(1, "1/2", "1/4")
    tight_radii: tuple = tuple(Fraction(2 ** k) for k in range(11))
    deltas: tuple = _fr("1/2", "1/4", "1/8", "1/16", "1/32")
    probes: tuple = _fr(-1, "-1/2", 0, "1/3", "1/2", 1)
    centre: Centre = Centre.at(0)
    open_sets: tuple = (RealSet.open(-2, 2), RealSet.open(0, 1))
    bounded_sets: tuple = (RealSet.closed(-1, 1), RealSet.closed(-2, 2))

    def to_dict(self) -> dict:
        return {
            "schedule": self.schedule.to_dict(),
            "family": {"extent": format_scalar(to_scalar(self.family_extent)),
                       "depth": self.family_depth},
            "epsilons": [format_scalar(e) for e in self.epsilons],
            "tight_radii": [format_scalar(m) for m in self.tight_radii],
            "deltas": [format_scalar(d) for d in self.deltas],
            "probes": [format_scalar(p) for p in self.probes],
            "centre": str(self.centre),
            "open_sets": [str(s) for s in self.open_sets],
            "bounded_sets": [str(s) for s in self.bounded_sets],
        }


# --------------------------------------------------------------------------
# JSON rendering


def scalar_json(value: Fraction) -> dict:
    """Exact text for moderate rationals; decimal only for huge ones."""
    if is_large(value):
        return {"exact": None, "approx": decimal_str(value)}
    return {"exact": format_scalar(value), "approx": decimal_str(value)}


def verdict_json(v: Verdict) -> dict:
    return {
        "status": v.status.value,
        "witness": v.witness,
        "note": v.note,
        "evidence": [dict(n=n, **scalar_json(x)) for n, x in v.evidence],
    }


# --------------------------------------------------------------------------
# Classification


TABLE1_ROWS = (
    (1, "vague + tightness", "weak", "A => B; B => A on Polish spaces"),
    (2, "vague + compact limsup", "vague convergence of Jordan parts", "A <=> B on locally compact spaces"),
    (3, "vague + norm limsup", "weak convergence of Jordan parts", "A <=> B on locally compact spaces"),
)


def _consistent(a: Verdict, b: Verdict) -> bool:
    return not ((a.holds and b.fails) or (b.holds and a.fails))


def run_checks(seq: MeasureSequence, limit: Measure, config: ClassifyConfig) -> tuple:
    """Every check the report needs, as an ordered ``{name: Verdict}`` plus
    the list of probe points rejected as atoms of the limit."""
    sched = config.schedule
    cc = TestFamily.cc(config.family_extent, config.family_depth)
    cb = TestFamily.cb(config.family_extent, config.family_depth)
    cpt = TestFamily.compactified(config.family_extent, config.family_depth)

    pos_lim, neg_lim = jordan(limit)
    pos_seq = seq.map(lambda m: jordan(m)[0], seq.label + " (positive part)")
    neg_seq = seq.map(lambda m: jordan(m)[1], seq.label + " (negative part)")

    checks: dict = {}
    checks["vague"] = check_vague(seq, limit, cc, sched)
    checks["weak"] = check_weak(seq, limit, cb, sched)
    checks["compactified_weak"] = combine(
        [("family", check_weak(seq, limit, cpt, sched))],
        "weak convergence of the one-point-compactified extensions (equal-tail Cb family)")
    checks["signed_mass"] = check_signed_mass_preservation(seq, limit, sched)
    checks["tightness"] = check_tightness(seq, config.epsilons, config.tight_radii, sched)
    checks["compact_limsup"] = combine(
        [(str(K), check_compact_limsup(seq, limit, K, sched)) for K in cc.compact_sets()],
        "limsup |mu_n|(K) <= |mu|(K) over the compact grid")
    checks["norm_limsup"] = check_norm_limsup(seq, limit, sched)
    checks["open_liminf"] = combine(
        [(str(T), check_open_liminf(seq, limit, T, sched)) for T in config.open_sets],
        "|mu|(theta) <= liminf |mu_n|(theta)")
    checks["jordan_vague"] = combine(
        [("positive part", check_vague(pos_seq, pos_lim, cc, sched)),
         ("negative part", check_vague(neg_seq, neg_lim, cc, sched))],
        "vague convergence of both Jordan parts")
    checks["jordan_weak"] = combine(
        [("positive part", check_weak(pos_seq, pos_lim, cb, sched)),
         ("negative part", check_weak(neg_seq, neg_lim, cb, sched))],
        "weak convergence of both Jordan parts")
    checks["bounded_on_compacts"] = check_bounded_on_compacts(seq, config.bounded_sets, sched)

    for inf in ("-inf", "+inf"):
        checks[f"no_mass@{inf}"] = check_no_mass_at(seq, inf, config.epsilons, config.deltas, sched)
    mass_points = list(config.probes)
    if config.centre.is_finite and config.centre.alpha not in mass_points:
        mass_points.append(config.centre.alpha)
    named = []
    for x in mass_points:
        v = check_no_mass_at(seq, x, config.epsilons, config.deltas, sched)
        checks[f"no_mass@{format_scalar(x)}"] = v
        named.append((f"x={format_scalar(x)}", v))
    checks["no_mass"] = combine(named, "no mass at every probe point")

    continuity = [x for x in config.probes if limit.atom_weight(x) == 0]
    rejected = [x for x in config.probes if limit.atom_weight(x) != 0]
    if continuity:
        for x, v in distfun_point_verdicts(seq, limit, config.centre, continuity, sched):
            checks[f"distfun@{x}"] = v
        checks["distfun"] = check_distfun_convergence(seq, limit, config.centre, continuity, sched)
    return checks, rejected


def classify_table1(checks: dict) -> list:
    """Rows of Table 1 as (A, B) verdict pairs with a consistency flag."""
    pairs = {
        1: (combine([("vague", checks["vague"]), ("tightness", checks["tightness"])]), checks["weak"]),
        2: (combine([("vague", checks["vague"]), ("compact_limsup", checks["compact_limsup"])]),
            checks["jordan_vague"]),
        3: (combine([("vague", checks["vague"]), ("norm_limsup", checks["norm_limsup"])]),
            checks["jordan_weak"]),
    }
    rows = []
    for number, a_desc, b_desc, relation in TABLE1_ROWS:
        a, b = pairs[number]
        rows.append({
            "row": number,
            "A": {"conditions": a_desc, "status": a.status.value, "witness": a.witness},
            "B": {"conditions": b_desc, "status": b.status.value, "witness": b.witness},
            "relation": relation,
            "consistent": _consistent(a, b),
        })
    return rows


# --------------------------------------------------------------------------
# Implication audits

AUDITS = (
    ("i", "weak => vague", ("weak",), "vague", False),
    ("ii", "vague + tight => weak", ("vague", "tightness"), "weak", False),
    ("iii", "vague + compact limsup => Jordan parts vague", ("vague", "compact_limsup"), "jordan_vague", False),
    ("iv", "vague + norm limsup => Jordan parts weak", ("vague", "norm_limsup"), "jordan_weak", False),
    ("v", "vague + signed mass <=> compactified weak", ("vague", "signed_mass"), "compactified_weak", True),
    ("vi", "distfun + bounded on compacts => vague", ("distfun", "bounded_on_compacts"), "vague", False),
    ("vii", "vague + no mass at probes => distfun", ("vague", "no_mass"), "distfun", False),
    ("viii", "no mass at probes => bounded on compacts", ("no_mass",), "bounded_on_compacts", False),
    ("ix", "positive measures: distfun <=> vague", ("distfun",), "vague", True),
    ("x", "tight <=> no mass at -inf and +inf", ("tightness",), None, True),
)


def _conj(checks: dict, names) -> Status:
    verdicts = [checks.get(n) for n in names]
    if any(v is None for v in verdicts):
        return Status.INCONCLUSIVE
    if any(v.fails for v in verdicts):
        return Status.FAILS
    if all(v.holds for v in verdicts):
        return Status.HOLDS
    return Status.INCONCLUSIVE


def audit_implications(checks: dict, positive: bool, centre_ok: bool) -> list:
    """Evaluate each theorem-backed implication on the verdicts.

    An implication is violated when its premises hold and its conclusion fails;
    an equivalence when one side holds and the other fails.  Premises that are
    not certified skip the audit.
    """
    out = []
    for key, text, premises, conclusion, equivalence in AUDITS:
        if key in ("vii", "ix") and not centre_ok:
            out.append({"id": key, "audit": text, "result": "skipped", "reason": "centre is an atom of the limit"})
            continue
        if key == "ix" and not positive:
            out.append({"id": key, "audit": text, "result": "skipped", "reason": "not a positive sequence"})
            continue
        left = _conj(checks, premises)
        if key == "x":
            right = _conj(checks, ("no_mass@-inf", "no_mass@+inf"))
        else:
            right = _conj(checks, (conclusion,))
        if equivalence:
            if Status.INCONCLUSIVE in (left, right):
                result = "skipped"
            else:
                result = "ok" if left == right else "violation"
        elif left is not Status.HOLDS:
            result = "skipped"
        elif right is Status.FAILS:
            result = "violation"
        elif right is Status.HOLDS:
            result = "ok"
        else:
            result = "unverified"
        out.append({"id": key, "audit": text, "premise": left.value, "conclusion": right.value,
                    "result": result})
    return out


def classify(seq: MeasureSequence, limit: Measure, config: ClassifyConfig | None = None,
             extra: dict | None = None) -> dict:
    """Full JSON-ready report for ``seq`` against the candidate ``limit``."""
    config = config or ClassifyConfig()
    checks, rejected = run_checks(seq, limit, config)
    if extra:
        checks.update(extra)
    positive = limit.is_positive() or limit.is_zero()
    positive = positive and all(seq(n).is_positive() or seq(n).is_zero() for n in config.schedule.indices)
    centre_ok = not config.centre.is_finite or limit.atom_weight(config.centre.alpha) == 0
    table = classify_table1(checks)
    audits = audit_implications(checks, positive, centre_ok)
    defects = [f"table 1 row {r['row']}: A={r['A']['status']} but B={r['B']['status']}"
               for r in table if not r["consistent"]]
    defects += [f"audit ({a['id']}) violated: {a['audit']}" for a in audits if a["result"] == "violation"]
    return {
        "sequence": seq.label,
        "limit": measure_to_dict(limit),
        "config": config.to_dict(),
        "positive_sequence": positive,
        "rejected_points": [format_scalar(x) for x in rejected],
        "checks": {name: verdict_json(v) for name, v in checks.items()},
        "table1": table,
        "audits": audits,
        "defects": defects,
    }


def statuses(report: dict) -> dict:
    return {name: c["status"] for name, c in report["checks"].items()}
