"""``measurekit`` command line."""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import replace

from . import corpus
from .bv import Centre, distribution_function, sample_csv
from .calculus import integrate, jordan, tv_norm, variation
from .report import ClassifyConfig, classify, scalar_json
from .scalar import decimal_str, format_scalar, to_scalar
from .sequences import Schedule
from .serialize import dumps, load_function, load_measure, measure_to_dict
from .templates import load_template


class UsageError(Exception):
    pass


def _scalar_arg(text: str):
    try:
        return to_scalar(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


def _centre_arg(text: str) -> Centre:
    try:
        return Centre.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _indices_arg(text: str) -> tuple:
    try:
        return Schedule.parse_indices(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad schedule {text!r}; use e.g. 1-16,32,64") from None


def cmd_integrate(args, out) -> None:
    value = integrate(load_measure(args.measure), load_function(args.function))
    out.write(f"{format_scalar(value)}\t{decimal_str(value, args.precision)}\n")


def cmd_decompose(args, out) -> None:
    mu = load_measure(args.measure)
    pos, neg = jordan(mu)
    out.write(dumps({
        "positive": measure_to_dict(pos),
        "negative": measure_to_dict(neg),
        "variation": measure_to_dict(variation(mu)),
        "tv_norm": scalar_json(tv_norm(mu)),
    }))


def cmd_distfun(args, out) -> None:
    if args.step <= 0:
        raise UsageError("--step must be positive")
    if args.to < args.start:
        raise UsageError("--to must not be below --from")
    F = distribution_function(load_measure(args.measure), args.centre)
    out.write(sample_csv(F, args.start, args.to, args.step, args.precision, args.exact))


def _classify_config(args, base: ClassifyConfig) -> ClassifyConfig:
    sched = base.schedule
    changes = {}
    if args.schedule is not None:
        changes["indices"] = args.schedule
    if args.tail_window is not None:
        changes["tail_window"] = args.tail_window
    if args.tolerance is not None:
        changes["tolerance"] = args.tolerance
    try:
        if changes:
            if "indices" in changes and "tail_window" not in changes:
                changes["tail_window"] = min(sched.tail_window, len(changes["indices"]))
            sched = replace(sched, **changes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    config = replace(base, schedule=sched)
    if args.family_depth is not None:
        if args.family_depth < 0:
            raise UsageError("--family-depth must be >= 0")
        config = replace(config, family_depth=args.family_depth)
    if args.family_extent is not None:
        if args.family_extent <= 0:
            raise UsageError("--family-extent must be positive")
        config = replace(config, family_extent=args.family_extent)
    if args.centre is not None:
        config = replace(config, centre=args.centre)
    return config


def cmd_classify(args, out) -> None:
    if (args.corpus is None) == (args.spec is None):
        raise UsageError("give exactly one of --corpus ID or a sequence-spec file")
    limit = load_measure(args.limit) if args.limit else None
    if args.corpus is not None:
        try:
            entry = corpus.get(args.corpus)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        config = _classify_config(args, entry.config)
        if limit is None:
            report = entry.classify(config)
        else:
            report = classify(entry.sequence(), limit, config)
    else:
        template = load_template(args.spec)
        limit = limit if limit is not None else template.limit
        if limit is None:
            raise UsageError("the sequence spec has no limit; pass --limit FILE")
        report = classify(template.sequence(), limit, _classify_config(args, ClassifyConfig()))
    out.write(dumps(report))


def cmd_corpus_list(args, out) -> None:
    out.write(dumps([{"id": e.id, "title": e.title, "expected": e.expected}
                     for e in corpus.ENTRIES]))


def cmd_corpus_export(args, out) -> None:
    try:
        entry = corpus.get(args.id)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    out.write(dumps(measure_to_dict(entry.generator(args.n))))


def cmd_corpus_facts(args, out) -> None:
    entries = corpus.ENTRIES
    if args.id:
        try:
            entries = (corpus.get(args.id),)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["id", "fact", "n", "value", "expected", "match"])
    indices = args.schedule
    for entry in entries:
        for desc, n, value, expected in corpus.fact_rows(entry, indices):
            writer.writerow([entry.id, desc, n, format_scalar(value), format_scalar(expected),
                             "yes" if value == expected else "no"])
    out.write(buf.getvalue())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="measurekit",
        description="Exact finite signed measures on the real line and convergence diagnostics.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("integrate", help="integral of a test function against a measure")
    p.add_argument("measure")
    p.add_argument("function")
    p.add_argument("--precision", type=int, default=12)
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("decompose", help="Jordan parts, variation and total variation")
    p.add_argument("measure")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("distfun", help="sample a centred distribution function as CSV")
    p.add_argument("measure")
    p.add_argument("--centre", type=_centre_arg, default=Centre.at(0))
    p.add_argument("--from", dest="start", type=_scalar_arg, default=to_scalar(-1))
    p.add_argument("--to", type=_scalar_arg, default=to_scalar(1))
    p.add_argument("--step", type=_scalar_arg, default=to_scalar("1/8"))
    p.add_argument("--precision", type=int, default=12)
    p.add_argument("--exact", action="store_true", help="add an exact F column")
    p.set_defaults(func=cmd_distfun)

    p = sub.add_parser("classify", help="JSON convergence report for a sequence")
    p.add_argument("spec", nargs="?", help="sequence-spec JSON file")
    p.add_argument("--corpus", metavar="ID")
    p.add_argument("--limit", metavar="FILE", help="candidate limit measure (JSON)")
    p.add_argument("--schedule", type=_indices_arg, help='indices, e.g. "1-16,32" or "default"')
    p.add_argument("--tail-window", type=int)
    p.add_argument("--tolerance", type=_scalar_arg)
    p.add_argument("--family-depth", type=int)
    p.add_argument("--family-extent", type=_scalar_arg)
    p.add_argument("--centre", type=_centre_arg)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("corpus", help="built-in example sequences")
    csub = p.add_subparsers(dest="corpus_command", required=True)
    c = csub.add_parser("list")
    c.set_defaults(func=cmd_corpus_list)
    c = csub.add_parser("export")
    c.add_argument("--id", required=True)
    c.add_argument("--n", type=int, required=True)
    c.set_defaults(func=cmd_corpus_export)
    c = csub.add_parser("facts")
    c.add_argument("--id")
    c.add_argument("--schedule", type=_indices_arg)
    c.set_defaults(func=cmd_corpus_facts)
    return parser


# Flags whose values may legitimately start with "-" (e.g. -inf, -1/4).
_SIGNED_VALUE_FLAGS = {"--centre", "--from", "--to", "--step", "--tolerance", "--family-extent"}


def _attach_signed_values(argv: list) -> list:
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _SIGNED_VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_attach_signed_values(argv))
    try:
        args.func(args, sys.stdout)
    except (ValueError, UsageError, OSError) as exc:
        # FormatError and ExpressionError are ValueErrors carrying position info.
        print(f"measurekit: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
