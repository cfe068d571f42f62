"""Full analysis report, model comparison and SVG scatter plots."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from approval_seats.dataset import (
    ElectionDataset,
    Group,
    SummaryStats,
    boundary_records,
    filter_by_approval,
    summarize,
)
from approval_seats.errors import DegenerateModelError, InsufficientDataError
from approval_seats.inference import (
    IntervalKind,
    ResponseInterval,
    SlopeTest,
    describe_seats,
    mean_response_interval,
    prediction_interval,
    seats_interval,
    slope_utility_test,
)
from approval_seats.regress import LinearFit, fit_ols

GROUP_TITLES = {
    Group.ALL: "All approval ratings",
    Group.ABOVE_50: "Approval above 50%",
    Group.BELOW_50: "Approval below 50%",
}


@dataclass(frozen=True)
class GroupResult:
    group: Group
    n: int
    approval: SummaryStats | None
    seats: SummaryStats | None
    fit: LinearFit | None
    test: SlopeTest | None
    note: str | None = None


@dataclass(frozen=True)
class AnalysisReport:
    groups: dict[Group, GroupResult]
    forecast: ResponseInterval | None
    forecast_seats: tuple[int, int] | None
    x0: float
    level: float
    notes: list[str] = field(default_factory=list)


def _g6(v: float) -> str:
    # "-0" is not a useful thing to print
    out = f"{v:.6g}"
    return "0" if out == "-0" else out


def _g10(v: float) -> str:
    return f"{v:.10g}"


def _analyze_group(ds: ElectionDataset, group: Group) -> GroupResult:
    sub = filter_by_approval(ds, group)
    approval = summarize(sub.approvals()) if len(sub) else None
    seats = summarize(sub.seat_changes()) if len(sub) else None
    try:
        fit = fit_ols(sub.pairs())
    except InsufficientDataError as exc:
        return GroupResult(group, len(sub), approval, seats, None, None,
                           f"{group.value}: insufficient data ({exc})")
    except DegenerateModelError as exc:
        return GroupResult(group, len(sub), approval, seats, None, None,
                           f"{group.value}: {exc}")
    try:
        test = slope_utility_test(fit)
    except DegenerateModelError as exc:
        return GroupResult(group, len(sub), approval, seats, fit, None,
                           f"{group.value}: {exc}")
    return GroupResult(group, len(sub), approval, seats, fit, test)


def reproduce_paper(ds: ElectionDataset, x0: float = 44.0, level: float = 0.95,
                    kind: IntervalKind | str = IntervalKind.MEAN_RESPONSE) -> AnalysisReport:
    """
    Run the three-model analysis and the forecast at ``x0``.

    Groups that cannot be fitted get a note instead of failing the report.
    The forecast always uses the all-data model.

    :raises InsufficientDataError: when no group can be fitted
    """
    kind = IntervalKind(kind)
    groups = {g: _analyze_group(ds, g) for g in Group}
    notes = [r.note for r in groups.values() if r.note]
    if all(r.fit is None for r in groups.values()):
        raise InsufficientDataError("no group could be fitted: " + "; ".join(notes))
    n_boundary = len(boundary_records(ds))
    if n_boundary:
        notes.append(f"{n_boundary} record(s) with approval exactly 50 "
                     "are excluded from both subgroups")

    forecast = seats = None
    full = groups[Group.ALL].fit
    if full is not None:
        interval_fn = (mean_response_interval if kind is IntervalKind.MEAN_RESPONSE
                       else prediction_interval)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            forecast = interval_fn(full, x0, level)
        notes.extend(str(w.message) for w in caught)
        seats = seats_interval(forecast)
        if full.constant_y:
            notes.append("all: response is constant; r and r^2 reported as 0")
    return AnalysisReport(groups, forecast, seats, x0, level, notes)


def _verdict(test: SlopeTest | None) -> str:
    if test is None:
        return "untestable"
    return "useful at α=0.05" if test.reject_at_005 else "not useful at α=0.05"


def compare_models(report: AnalysisReport) -> str:
    """
    Side-by-side comparison of the fitted models as a Markdown table,
    followed by a recommendation for the query point.
    """
    lines = [
        "| Model | n | r | r^2 | t | p | Verdict |",
        "|---|---|---|---|---|---|---|",
    ]
    for g, res in report.groups.items():
        if res.fit is None:
            continue
        t = _g6(res.test.t_stat) if res.test else "n/a"
        p = _g6(res.test.p_two_sided) if res.test else "n/a"
        lines.append(f"| {g.value} | {res.n} | {_g6(res.fit.r)} | {_g6(res.fit.r2)} "
                     f"| {t} | {p} | {_verdict(res.test)} |")

    x0 = report.x0
    home = next((g for g in (Group.ABOVE_50, Group.BELOW_50)
                 if g in report.groups and g.contains(x0)), None)
    lines.append("")
    if home is None or report.groups[home].fit is None:
        lines.append(f"Recommendation for x0 = {x0:g}: use the all-data model.")
    elif report.groups[home].test is not None and report.groups[home].test.reject_at_005:
        lines.append(f"Recommendation for x0 = {x0:g}: the {home.value} model applies "
                     "and is useful; the all-data model is also available.")
    else:
        lines.append(f"Recommendation for x0 = {x0:g}: the {home.value} model is not "
                     "useful; use the all-data model.")
    return "\n".join(lines)


def render_markdown(report: AnalysisReport) -> str:
    """The complete report as Markdown. Byte-stable for identical input."""
    out: list[str] = ["# Presidential approval and midterm seat change", ""]

    out += ["## Summary statistics", "",
            "| Group | n | Approval mean | Approval sd | Seat change mean | Seat change sd |",
            "|---|---|---|---|---|---|"]
    for g, res in report.groups.items():
        if res.approval is None:
            out.append(f"| {g.value} | 0 | n/a | n/a | n/a | n/a |")
            continue
        def sd(s: SummaryStats) -> str:
            return _g10(s.sd) if s.sd is not None else "n/a"
        out.append(f"| {g.value} | {res.n} | {_g10(res.approval.mean)} | {sd(res.approval)} "
                   f"| {_g10(res.seats.mean)} | {sd(res.seats)} |")
    out.append("")

    out += ["## Regression models", "",
            "| Group | a | b | r | r^2 | s | df | t | p | 1 - p |",
            "|---|---|---|---|---|---|---|---|---|---|"]
    for g, res in report.groups.items():
        f = res.fit
        if f is None:
            out.append(f"| {g.value} | n/a | n/a | n/a | n/a | n/a | n/a | n/a | n/a | n/a |")
            continue
        t = res.test
        tcols = (f"{_g6(t.t_stat)} | {_g6(t.p_two_sided)} | {t.confidence:.4f}"
                 if t else "n/a | n/a | n/a")
        out.append(f"| {g.value} | {_g6(f.a)} | {_g6(f.b)} | {_g6(f.r)} | {_g6(f.r2)} "
                   f"| {_g6(f.s)} | {f.df} | {tcols} |")
    out.append("")
    for g, res in report.groups.items():
        if res.fit is not None:
            out.append(f"- {g.value}: y = {_g6(res.fit.a)} + {_g6(res.fit.b)}x "
                       f"({_verdict(res.test)})")
    out += ["", "Tests are two-sided t-tests of a zero slope with df = n - 2.", ""]

    out += ["## Model comparison", "", compare_models(report), ""]

    out += ["## Forecast", ""]
    fc = report.forecast
    if fc is None:
        out.append("No forecast: the all-data model could not be fitted.")
    else:
        label = ("mean-response confidence interval" if fc.kind is IntervalKind.MEAN_RESPONSE
                 else "individual prediction interval")
        lo, hi = report.forecast_seats
        out += [
            f"- Model: all-data, {label}",
            f"- Approval x0: {fc.x0:g}%",
            f"- Level: {fc.level:g}",
            f"- Center: {_g6(fc.center)} seats",
            f"- Margin: {_g6(fc.margin)} seats",
            f"- Interval: [{_g6(fc.lower)}, {_g6(fc.upper)}]",
            f"- Whole seats: [{lo}, {hi}] ({describe_seats(lo, hi)})",
        ]
    out.append("")

    out += ["## Notes", ""]
    out += [f"- {n}" for n in report.notes] if report.notes else ["- none"]
    return "\n".join(out) + "\n"


# --- SVG ------------------------------------------------------------------

SVG_WIDTH = 640
SVG_HEIGHT = 480
_MARGIN_X = 0.1 * SVG_WIDTH
_MARGIN_Y = 0.1 * SVG_HEIGHT
POINT_RADIUS = 4

_AXIS_LABELS = {
    "approval": "President's approval rating (%)",
    "seat_change": "Seat gain/loss of President's party",
    "year": "Year",
}


def _nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    if hi == lo:
        lo, hi = lo - 1.0, hi + 1.0
    raw = (hi - lo) / target
    mag = 10.0 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1.0, 2.0, 5.0, 10.0) if m * mag >= raw)
    first = math.ceil(lo / step - 1e-9)
    last = math.floor(hi / step + 1e-9)
    return [k * step for k in range(first, last + 1)]


def _padded(lo: float, hi: float) -> tuple[float, float]:
    if hi == lo:
        return lo - 1.0, hi + 1.0
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def _field(ds: ElectionDataset, name: str) -> list[float]:
    if name not in _AXIS_LABELS:
        raise ValueError(f"unknown axis field {name!r}")
    return [float(getattr(r, name)) for r in ds]


def render_scatter_svg(ds: ElectionDataset, fit: LinearFit | None = None,
                       x_field: str = "approval", y_field: str = "seat_change",
                       title: str | None = None) -> str:
    """
    Scatter plot of one record field against another as a standalone SVG.

    Points are ``<circle>`` elements in record order; the fitted line, when
    given, is the only ``<line>`` element (axes and ticks are paths).

    :raises ValueError: on an empty dataset
    """
    if len(ds) == 0:
        raise ValueError("cannot plot an empty dataset")
    xs = _field(ds, x_field)
    ys = _field(ds, y_field)
    x_lo, x_hi = _padded(min(xs), max(xs))
    y_vals = list(ys)
    if fit is not None:
        y_vals += [fit.predict(min(xs)), fit.predict(max(xs))]
    y_lo, y_hi = _padded(min(y_vals), max(y_vals))

    left, right = _MARGIN_X, SVG_WIDTH - _MARGIN_X
    top, bottom = _MARGIN_Y, SVG_HEIGHT - _MARGIN_Y

    def px(x: float) -> float:
        return left + (x - x_lo) / (x_hi - x_lo) * (right - left)

    def py(y: float) -> float:
        return bottom - (y - y_lo) / (y_hi - y_lo) * (bottom - top)

    if title is None:
        title = f"{_AXIS_LABELS[x_field]} vs. {_AXIS_LABELS[y_field]}"
    el: list[str] = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" '
        f'height="{SVG_HEIGHT}" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">',
        f'<rect width="{SVG_WIDTH}" height="{SVG_HEIGHT}" fill="white"/>',
        f'<text x="{SVG_WIDTH / 2:.2f}" y="{top / 2:.2f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{escape(title)}</text>',
        f'<path class="axis" d="M{left:.2f},{bottom:.2f} H{right:.2f} '
        f'M{left:.2f},{bottom:.2f} V{top:.2f}" stroke="black" fill="none"/>',
    ]
    for tx in _nice_ticks(x_lo, x_hi):
        X = px(tx)
        el.append(f'<path class="tick" d="M{X:.2f},{bottom:.2f} V{bottom + 5:.2f}" stroke="black"/>')
        el.append(f'<text x="{X:.2f}" y="{bottom + 18:.2f}" text-anchor="middle" '
                  f'font-family="sans-serif" font-size="10">{tx:g}</text>')
    for ty in _nice_ticks(y_lo, y_hi):
        Y = py(ty)
        el.append(f'<path class="tick" d="M{left - 5:.2f},{Y:.2f} H{left:.2f}" stroke="black"/>')
        el.append(f'<text x="{left - 8:.2f}" y="{Y + 3:.2f}" text-anchor="end" '
                  f'font-family="sans-serif" font-size="10">{ty:g}</text>')
    el.append(f'<text x="{SVG_WIDTH / 2:.2f}" y="{SVG_HEIGHT - 8:.2f}" text-anchor="middle" '
              f'font-family="sans-serif" font-size="12">{escape(_AXIS_LABELS[x_field])}</text>')
    el.append(f'<text x="14" y="{SVG_HEIGHT / 2:.2f}" text-anchor="middle" '
              f'transform="rotate(-90 14 {SVG_HEIGHT / 2:.2f})" font-family="sans-serif" '
              f'font-size="12">{escape(_AXIS_LABELS[y_field])}</text>')
    for x, y in zip(xs, ys):
        el.append(f'<circle class="point" cx="{px(x):.2f}" cy="{py(y):.2f}" '
                  f'r="{POINT_RADIUS}" fill="steelblue"/>')
    if fit is not None:
        x1, x2 = min(xs), max(xs)
        el.append(f'<line class="fit" x1="{px(x1):.2f}" y1="{py(fit.predict(x1)):.2f}" '
                  f'x2="{px(x2):.2f}" y2="{py(fit.predict(x2)):.2f}" '
                  f'stroke="firebrick" stroke-width="2"/>')
    el.append("</svg>")
    return "\n".join(el) + "\n"
