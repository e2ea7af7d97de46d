"""Plain-text chain format and the command-line interface.

Model files look like::

    # optional comments
    dtmc <n> <init>
    <src> <dst> <prob>

One transition per line; ``prob`` is ``p/q`` or the bare integers 0 or 1;
pairs not listed carry probability zero.  Serialization is canonical --
positive entries sorted by source then destination, probabilities always
in ``p/q`` lowest terms -- so parse and serialize round-trip bit for bit
on canonical input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from .abstraction import path_abstract, prune_isolated
from .checker import (
    METHODS,
    GoalNotAbsorbingError,
    InitIsGoalError,
    InvalidSequenceError,
    concretize_witness,
    model_check,
    refine,
)
from .core import Dtmc, DtmcError, ValidationError, validate


class ModelFormatError(DtmcError):
    """Malformed model text; carries the offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ModelSyntaxError(ModelFormatError):
    pass


class DuplicateTransitionError(ModelFormatError):
    pass


class ProbabilityOutOfRangeError(ModelFormatError):
    pass


_INT = re.compile(r"^\d+$")
_PROB = re.compile(r"^\d+/\d+$|^[01]$")


def _parse_prob(token: str, line: int) -> Fraction:
    if not _PROB.match(token):
        raise ModelSyntaxError(line, f"bad probability {token!r} (want p/q, 0 or 1)")
    if "/" in token and token.split("/")[1].strip("0") == "":
        raise ModelSyntaxError(line, f"zero denominator in {token!r}")
    value = Fraction(token)
    if value > 1:
        raise ProbabilityOutOfRangeError(line, f"probability {token} exceeds 1")
    return value


def parse(text: str) -> Dtmc:
    """Parse model text; the result always satisfies :func:`core.validate`."""
    header: tuple[int, int] | None = None
    entries: dict[tuple[int, int], Fraction] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        tokens = stripped.split()
        if header is None:
            if (
                len(tokens) != 3
                or tokens[0] != "dtmc"
                or not (_INT.match(tokens[1]) and _INT.match(tokens[2]))
            ):
                raise ModelSyntaxError(
                    line_no, f"expected 'dtmc <n> <init>', got {stripped!r}"
                )
            header = (int(tokens[1]), int(tokens[2]))
            continue
        if len(tokens) != 3:
            raise ModelSyntaxError(
                line_no, f"expected '<src> <dst> <prob>', got {stripped!r}"
            )
        if not (_INT.match(tokens[0]) and _INT.match(tokens[1])):
            raise ModelSyntaxError(
                line_no, "source and destination must be positive integers"
            )
        src, dst = int(tokens[0]), int(tokens[1])
        n = header[0]
        if not (1 <= src <= n and 1 <= dst <= n):
            raise ModelSyntaxError(
                line_no, f"state pair ({src},{dst}) out of range 1..{n}"
            )
        if (src, dst) in entries:
            raise DuplicateTransitionError(
                line_no, f"duplicate transition ({src},{dst})"
            )
        entries[(src, dst)] = _parse_prob(tokens[2], line_no)
    if header is None:
        raise ModelSyntaxError(0, "missing 'dtmc <n> <init>' header")
    d = Dtmc.from_transitions(header[0], header[1], entries)
    validate(d)
    return d


def serialize(d: Dtmc) -> str:
    """Canonical text form: header, then positive entries sorted by (src, dst)."""
    lines = [f"dtmc {d.n} {d.init}"]
    lines += [f"{s} {t} {p.numerator}/{p.denominator}" for s, t, p in d.transitions()]
    return "\n".join(lines) + "\n"


def _fmt(p: Fraction) -> str:
    return f"{p.numerator}/{p.denominator}"


def _fmt_path(path) -> str:
    return ",".join(str(s) for s in path)


def _parse_states_csv(text: str) -> list[int]:
    if not text.strip():
        return []
    out = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not _INT.match(chunk):
            raise ValueError(f"bad state index {chunk!r}")
        out.append(int(chunk))
    return out


def _parse_threshold(text: str) -> Fraction:
    text = text.strip()
    if not _PROB.match(text):
        raise ValueError(f"bad threshold {text!r} (want p/q, 0 or 1)")
    value = Fraction(text)
    if value > 1:
        raise ValueError(f"threshold {text} exceeds 1")
    return value


def _cmd_check(args: argparse.Namespace, d: Dtmc) -> int:
    goals = _parse_states_csv(args.goal)
    if not goals:
        raise ValueError("--goal needs at least one state")
    result = model_check(d, goals, method=args.method)
    ordered = sorted(result.per_goal.items())
    if args.json:
        payload = {str(g): _fmt(p) for g, p in ordered}
        payload["total"] = _fmt(result.total)
        print(json.dumps(payload))
    else:
        for g, p in ordered:
            print(f"{g} {_fmt(p)}")
        print(f"total {_fmt(result.total)}")
    return 0


def _cmd_abstract(args: argparse.Namespace, d: Dtmc) -> int:
    subset = _parse_states_csv(args.set)
    result = path_abstract(d, subset)
    header = ""
    if args.prune:
        result, mapping = prune_isolated(result)
        header = "".join(
            f"# map {old} -> {new}\n" for old, new in sorted(mapping.items())
        )
    sys.stdout.write(header + serialize(result))
    return 0


def _cmd_refine(args: argparse.Namespace, d: Dtmc) -> int:
    threshold = _parse_threshold(args.threshold)
    seq = [
        _parse_states_csv(segment)
        for segment in args.seq.split(";")
        if segment.strip()
    ]
    if not seq:
        raise ValueError("--seq needs at least one abstraction set")
    report = refine(d, args.target, threshold, seq)
    if report.violated:
        line = (
            f"VIOLATED step={report.step_index}"
            f" path={_fmt_path(report.witness_path)}"
            f" prob={_fmt(report.witness_prob)}"
        )
        if args.concretize:
            concrete = concretize_witness(
                d, seq[: report.step_index + 1], report.witness_path
            )
            line += f" concrete={_fmt_path(concrete)}"
        print(line)
        return 3
    line = f"OK best={_fmt(report.witness_prob)}"
    if args.concretize and report.witness_path:
        upto = len(seq) if report.step_index is None else report.step_index + 1
        concrete = concretize_witness(d, seq[:upto], report.witness_path)
        line += f" concrete={_fmt_path(concrete)}"
    print(line)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pathfold",
        description=(
            "Exact reachability analysis for discrete-time Markov chains "
            "by collapsing state subsets."
        ),
    )
    sub = parser.add_subparsers(required=True, metavar="command")

    check = sub.add_parser(
        "check", help="reachability probabilities of absorbing goal states"
    )
    check.add_argument("file", help="model file")
    check.add_argument(
        "--goal", required=True, help="comma-separated absorbing goal states"
    )
    check.add_argument("--method", choices=METHODS, default="direct")
    check.add_argument("--json", action="store_true", help="emit one JSON object")
    check.set_defaults(run=_cmd_check)

    abstract = sub.add_parser(
        "abstract", help="collapse a state subset and print the resulting model"
    )
    abstract.add_argument("file", help="model file")
    abstract.add_argument(
        "--set", required=True, help="comma-separated states to collapse"
    )
    abstract.add_argument(
        "--prune",
        action="store_true",
        help="drop isolated non-initial states, noting the renumbering in comments",
    )
    abstract.set_defaults(run=_cmd_abstract)

    refine_cmd = sub.add_parser(
        "refine", help="threshold check along a sequence of collapse steps"
    )
    refine_cmd.add_argument("file", help="model file")
    refine_cmd.add_argument("--target", required=True, type=int)
    refine_cmd.add_argument("--threshold", required=True, help="p/q, 0 or 1")
    refine_cmd.add_argument(
        "--seq",
        required=True,
        help="semicolon-separated list of comma-separated state sets",
    )
    refine_cmd.add_argument(
        "--concretize",
        action="store_true",
        help="also print the witness expanded back into the original model",
    )
    refine_cmd.set_defaults(run=_cmd_refine)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        text = Path(args.file).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        d = parse(text)
    except (ModelFormatError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.run(args, d)
    except (
        GoalNotAbsorbingError,
        InitIsGoalError,
        InvalidSequenceError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
