"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data/validation error,
3 degenerate model.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path
from typing import Sequence, TextIO

from approval_seats.dataset import (
    ElectionDataset,
    Group,
    filter_by_approval,
    parse_dataset,
    reference_dataset,
    summarize,
)
from approval_seats.errors import DataError, DegenerateModelError
from approval_seats.inference import (
    describe_seats,
    mean_response_interval,
    prediction_interval,
    seats_interval,
    slope_utility_test,
)
from approval_seats.regress import fit_ols
from approval_seats.report import render_markdown, render_scatter_svg, reproduce_paper

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_DEGENERATE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _level(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid level {text!r}") from None
    if not 0.0 < v < 1.0:
        raise argparse.ArgumentTypeError(f"level must lie in (0, 1), got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--input", default="builtin",
                        help='CSV file, or "builtin" for the embedded 1946-2010 data')
    common.add_argument("--group", choices=[g.value for g in Group], default="all")
    common.add_argument("--output", type=Path, help="write results here instead of stdout")

    parser = _Parser(prog="approval-seats",
                     description="Approval rating vs. midterm seat change regression.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("summary", parents=[common], help="mean and sd of both columns")
    sub.add_parser("fit", parents=[common], help="fit the line and test its utility")

    p = sub.add_parser("predict", parents=[common], help="interval forecast at an approval")
    p.add_argument("--approval", type=float, required=True)
    p.add_argument("--level", type=_level, default=0.95)
    p.add_argument("--interval-kind", choices=["mean", "individual"], default="mean")

    r = sub.add_parser("report", parents=[common], help="full Markdown analysis report")
    r.add_argument("--approval", type=float, default=44.0)
    r.add_argument("--level", type=_level, default=0.95)
    r.add_argument("--interval-kind", choices=["mean", "individual"], default="mean")
    r.add_argument("--plots", type=Path, help="directory for scatter_<group>.svg files")
    return parser


def _load(source: str) -> ElectionDataset:
    if source == "builtin":
        return reference_dataset()
    try:
        text = Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read {source}: {exc.strerror or exc}") from None
    return parse_dataset(text)


def _cmd_summary(ds: ElectionDataset, args: argparse.Namespace) -> str:
    lines = [f"group: {args.group}", f"n: {len(ds)}"]
    for name, values in (("approval", ds.approvals()), ("seat_change", ds.seat_changes())):
        s = summarize(values)
        sd = f"{s.sd:.10g}" if s.sd is not None else "undefined"
        lines.append(f"{name}: mean = {s.mean:.10g}, sd = {sd}")
    return "\n".join(lines)


def _cmd_fit(ds: ElectionDataset, args: argparse.Namespace) -> str:
    fit = fit_ols(ds.pairs())
    test = slope_utility_test(fit)
    verdict = "useful at α=0.05" if test.reject_at_005 else "not useful at α=0.05"
    return "\n".join([
        f"group: {args.group}",
        f"n: {fit.n}",
        f"model: y = {fit.a:.6g} + {fit.b:.6g}x",
        f"a = {fit.a:.6g}",
        f"b = {fit.b:.6g}",
        f"r = {fit.r:.6g}",
        f"r^2 = {fit.r2:.6g}",
        f"s = {fit.s:.6g}",
        f"df = {fit.df}",
        f"t = {test.t_stat:.6g}",
        f"p = {test.p_two_sided:.6g}",
        f"verdict: {verdict}",
    ])


def _cmd_predict(ds: ElectionDataset, args: argparse.Namespace) -> str:
    fit = fit_ols(ds.pairs())
    group = None if args.group == "all" else args.group
    if args.interval_kind == "mean":
        iv = mean_response_interval(fit, args.approval, args.level, group=group)
        label = "mean-response confidence interval"
    else:
        iv = prediction_interval(fit, args.approval, args.level, group=group)
        label = "individual prediction interval"
    lo, hi = seats_interval(iv)
    return "\n".join([
        f"group: {args.group}",
        f"approval: {args.approval:g}",
        f"kind: {label}",
        f"level: {args.level:g}",
        f"center: {iv.center:.2f}",
        f"margin: {iv.margin:.2f}",
        f"interval: [{iv.lower:.2f}, {iv.upper:.2f}]",
        f"seats: {describe_seats(lo, hi)} (whole seats [{lo}, {hi}])",
    ])


def _cmd_report(ds: ElectionDataset, args: argparse.Namespace) -> str:
    kind = "mean_response" if args.interval_kind == "mean" else "individual_prediction"
    rep = reproduce_paper(ds, args.approval, args.level, kind)
    if args.plots is not None:
        args.plots.mkdir(parents=True, exist_ok=True)
        for g, res in rep.groups.items():
            sub = filter_by_approval(ds, g)
            if len(sub):
                svg = render_scatter_svg(sub, res.fit, title=f"Approval vs. seat change ({g.value})")
                (args.plots / f"scatter_{g.value}.svg").write_text(svg, encoding="utf-8")
    return render_markdown(rep).rstrip("\n")


_COMMANDS = {
    "summary": _cmd_summary,
    "fit": _cmd_fit,
    "predict": _cmd_predict,
    "report": _cmd_report,
}


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None,
        stderr: TextIO | None = None) -> int:
    """Run the CLI and return its exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(sys.argv[1:] if argv is None else argv))
    except UsageError as exc:
        print(exc, file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            ds = _load(args.input)
            if args.command != "report":
                ds = filter_by_approval(ds, args.group)
            text = _COMMANDS[args.command](ds, args)
        except DegenerateModelError as exc:
            print(f"error: {exc}", file=stderr)
            return EXIT_DEGENERATE
        except DataError as exc:
            print(f"error: {exc}", file=stderr)
            return EXIT_DATA
        finally:
            for w in caught:
                print(f"warning: {w.message}", file=stderr)

    if args.output is not None:
        try:
            args.output.write_text(text + "\n", encoding="utf-8")
        except OSError as exc:
            print(f"error: cannot write {args.output}: {exc}", file=stderr)
            return EXIT_DATA
    else:
        print(text, file=stdout)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
