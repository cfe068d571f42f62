"""Ordinary least squares fit of a straight line ``y = a + b x``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from approval_seats.errors import DegenerateModelError, InsufficientDataError

MIN_OBSERVATIONS = 3


@dataclass(frozen=True)
class LinearFit:
    """
    A fitted simple linear regression.

    ``r2`` is the coefficient of determination and ``r`` the Pearson
    correlation; the two are kept apart on purpose. ``s`` is the residual
    standard error ``sqrt(SSE / df)`` and ``se_b`` the slope's standard
    error ``s / sqrt(sxx)``. ``constant_y`` flags a response with zero
    variance, in which case ``r`` and ``r2`` are set to 0 by convention.
    """

    a: float
    b: float
    r2: float
    r: float
    s: float
    n: int
    df: int
    x_mean: float
    y_mean: float
    sxx: float
    se_b: float
    sse: float
    sst: float
    x_min: float
    x_max: float
    constant_y: bool = False

    def predict(self, x0: float) -> float:
        return self.a + self.b * x0


def fit_ols(pairs: Iterable[tuple[float, float]]) -> LinearFit:
    """
    Fit ``y = a + b x`` by least squares.

    Sums are accumulated on centered data (two passes).

    :param pairs: ``(x, y)`` observations
    :raises InsufficientDataError: fewer than three observations
    :raises DegenerateModelError: all ``x`` equal
    """
    pts = [(float(x), float(y)) for x, y in pairs]
    n = len(pts)
    if n < MIN_OBSERVATIONS:
        raise InsufficientDataError(
            f"need at least {MIN_OBSERVATIONS} observations, got {n}")
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x_mean = math.fsum(xs) / n
    y_mean = math.fsum(ys) / n
    dx = [x - x_mean for x in xs]
    dy = [y - y_mean for y in ys]
    sxx = math.fsum(d * d for d in dx)
    if sxx == 0.0:
        raise DegenerateModelError("all x values are equal; slope is undefined")
    syy = math.fsum(d * d for d in dy)
    sxy = math.fsum(u * v for u, v in zip(dx, dy))

    b = sxy / sxx
    a = y_mean - b * x_mean
    df = n - 2
    constant_y = syy == 0.0
    if constant_y:
        r = r2 = 0.0
        sse = 0.0
    else:
        r = sxy / math.sqrt(sxx * syy)
        r = max(-1.0, min(1.0, r))
        # algebraically 1 - SSE/SST, without the cancellation near r2 = 0
        r2 = min(1.0, sxy * sxy / (sxx * syy))
        sse = math.fsum((v - b * u) ** 2 for u, v in zip(dx, dy))
    s = math.sqrt(sse / df)
    return LinearFit(
        a=a, b=b, r2=r2, r=r, s=s, n=n, df=df,
        x_mean=x_mean, y_mean=y_mean, sxx=sxx, se_b=s / math.sqrt(sxx),
        sse=sse, sst=syy, x_min=min(xs), x_max=max(xs), constant_y=constant_y,
    )


def predict_point(fit: LinearFit, x0: float) -> float:
    """Fitted response ``a + b * x0``."""
    return fit.a + fit.b * x0


def residuals(fit: LinearFit, pairs: Iterable[tuple[float, float]]) -> list[float]:
    return [y - predict_point(fit, x) for x, y in pairs]
