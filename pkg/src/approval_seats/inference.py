"""Model-utility t-test and response intervals for a fitted line.

The p-value reported here is the usual frequentist one: the probability,
assuming the true slope is zero, of a t statistic at least as extreme as
the one observed. It is not the probability that the null hypothesis holds.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from enum import Enum

from approval_seats.dataset import Group
from approval_seats.errors import DegenerateModelError, DomainError, ExtrapolationWarning
from approval_seats.regress import LinearFit, predict_point
from approval_seats.specfun import t_quantile, t_sf

ALPHA = 0.05


@dataclass(frozen=True)
class SlopeTest:
    """Two-sided t-test of a zero slope."""

    t_stat: float
    df: int
    p_two_sided: float
    null_slope: float = 0.0

    @property
    def reject_at_005(self) -> bool:
        return self.p_two_sided < ALPHA

    @property
    def confidence(self) -> float:
        """``1 - p``, the level at which the null is just rejected."""
        return 1.0 - self.p_two_sided


class IntervalKind(str, Enum):
    MEAN_RESPONSE = "mean_response"
    INDIVIDUAL_PREDICTION = "individual_prediction"


@dataclass(frozen=True)
class ResponseInterval:
    x0: float
    center: float
    margin: float
    level: float
    kind: IntervalKind

    @property
    def lower(self) -> float:
        return self.center - self.margin

    @property
    def upper(self) -> float:
        return self.center + self.margin


def slope_utility_test(fit: LinearFit) -> SlopeTest:
    """
    Test H0: slope = 0 against a two-sided alternative.

    :raises DegenerateModelError: when the residual standard error is zero
    """
    if fit.s == 0.0:
        cause = "response is constant" if fit.constant_y else "points lie exactly on a line"
        raise DegenerateModelError(
            f"slope test undefined: residual standard error is 0 ({cause})")
    t_stat = fit.b / fit.se_b
    p = 2.0 * t_sf(abs(t_stat), fit.df)
    return SlopeTest(t_stat=t_stat, df=fit.df, p_two_sided=min(1.0, p))


def _check_level(level: float) -> None:
    if not 0.0 < level < 1.0:
        raise DomainError(f"confidence level must lie in (0, 1), got {level}")


def _guard(fit: LinearFit, x0: float, group: Group | str | None) -> None:
    if not fit.x_min <= x0 <= fit.x_max:
        warnings.warn(
            f"x0 = {x0:g} is outside the fitted range [{fit.x_min:g}, {fit.x_max:g}]; "
            "the interval is an extrapolation",
            ExtrapolationWarning, stacklevel=3)
    if group is not None:
        group = Group(group)
        if not group.contains(x0):
            warnings.warn(
                f"x0 = {x0:g} does not belong to group {group.value}; "
                "this subgroup model does not apply there",
                ExtrapolationWarning, stacklevel=3)


def _interval(fit: LinearFit, x0: float, level: float, extra: float,
              kind: IntervalKind, group: Group | str | None) -> ResponseInterval:
    _check_level(level)
    _guard(fit, x0, group)
    t_crit = t_quantile(0.5 * (1.0 + level), fit.df)
    dx = x0 - fit.x_mean
    margin = t_crit * fit.s * math.sqrt(extra + 1.0 / fit.n + dx * dx / fit.sxx)
    return ResponseInterval(x0=x0, center=predict_point(fit, x0), margin=margin,
                            level=level, kind=kind)


def mean_response_interval(fit: LinearFit, x0: float, level: float = 0.95,
                           group: Group | str | None = None) -> ResponseInterval:
    """
    Confidence interval for the expected response at ``x0``.

    Warns with :class:`ExtrapolationWarning` when ``x0`` is outside the
    fitted x-range, or outside ``group`` when the fit is a subgroup model.
    """
    return _interval(fit, x0, level, 0.0, IntervalKind.MEAN_RESPONSE, group)


def prediction_interval(fit: LinearFit, x0: float, level: float = 0.95,
                        group: Group | str | None = None) -> ResponseInterval:
    """Prediction interval for a single new observation at ``x0``."""
    return _interval(fit, x0, level, 1.0, IntervalKind.INDIVIDUAL_PREDICTION, group)


def _round_half_away(v: float) -> int:
    return int(Decimal(v).quantize(Decimal(1), rounding=ROUND_HALF_UP))


def seats_interval(interval: ResponseInterval) -> tuple[int, int]:
    """Interval bounds rounded to whole seats, ascending.

    >>> from approval_seats.inference import ResponseInterval, IntervalKind
    >>> seats_interval(ResponseInterval(0.0, 0.0, 10.5, 0.95, IntervalKind.MEAN_RESPONSE))
    (-11, 11)
    """
    lo, hi = sorted((_round_half_away(interval.lower), _round_half_away(interval.upper)))
    return lo, hi


def describe_seats(lo: int, hi: int) -> str:
    """Plain-language seat range, e.g. ``"lose 27 to 48"``."""
    if hi <= 0:
        if lo == hi:
            return f"lose {-hi}"
        return f"lose {-hi} to {-lo}"
    if lo >= 0:
        if lo == hi:
            return f"gain {lo}"
        return f"gain {lo} to {hi}"
    return f"between losing {-lo} and gaining {hi}"
