"""Special functions for Student-t inference.

Log-gamma, the regularized incomplete beta function, and the Student-t
distribution function and its inverse. Scalar, pure-Python, no SciPy.
"""

from __future__ import annotations

import math

from approval_seats.errors import DomainError

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

# B_{2k} / (2k (2k - 1)) for k = 1..8
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)
_STIRLING_MIN = 15.0

_CF_MAX_ITER = 300
_CF_EPS = 1e-15
_CF_TINY = 1e-300


def ln_gamma(x: float) -> float:
    """
    Natural logarithm of the gamma function for ``x > 0``.

    Uses the Stirling series for ``x >= 15`` and shifts smaller arguments
    up with ``Gamma(x + 1) = x Gamma(x)``.

    >>> ln_gamma(1.0)
    0.0
    >>> round(ln_gamma(0.5), 10)
    0.5723649429
    """
    if not x > 0.0 or math.isinf(x):
        raise DomainError(f"ln_gamma requires finite x > 0, got {x}")
    if x == 1.0 or x == 2.0:
        return 0.0
    shift = 0.0
    if x < _STIRLING_MIN:
        prod = 1.0
        while x < _STIRLING_MIN:
            prod *= x
            x += 1.0
        shift = math.log(prod)
    inv = 1.0 / x
    inv2 = inv * inv
    series = 0.0
    for c in reversed(_STIRLING):
        series = series * inv2 + c
    return (x - 0.5) * math.log(x) - x + _HALF_LOG_2PI + series * inv - shift


def _beta_cf(a: float, b: float, x: float) -> float:
    # Continued fraction for I_x(a, b), modified Lentz evaluation.
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_TINY:
        d = _CF_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h
    raise ArithmeticError(
        f"incomplete beta continued fraction did not converge for a={a}, b={b}, x={x}")


def _reg_inc_beta(a: float, b: float, x: float, y: float) -> float:
    # ``y`` is ``1 - x`` supplied by the caller so it keeps full precision.
    if x == 0.0:
        return 0.0
    if y == 0.0:
        return 1.0
    log_front = (ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b)
                 + a * math.log(x) + b * math.log(y))
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cf(a, b, x) / a
    return 1.0 - front * _beta_cf(b, a, y) / b


def reg_inc_beta(a: float, b: float, x: float) -> float:
    """
    Regularized incomplete beta function ``I_x(a, b)``.

    :param a: first shape parameter, ``a > 0``
    :param b: second shape parameter, ``b > 0``
    :param x: upper integration limit in ``[0, 1]``
    :raises DomainError: for parameters outside these ranges
    """
    if not (a > 0.0 and b > 0.0) or math.isinf(a) or math.isinf(b):
        raise DomainError(f"reg_inc_beta requires a > 0 and b > 0, got a={a}, b={b}")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"reg_inc_beta requires 0 <= x <= 1, got x={x}")
    return _reg_inc_beta(a, b, x, 1.0 - x)


def _check_df(df: float) -> None:
    if not df >= 1.0 or math.isinf(df):
        raise DomainError(f"degrees of freedom must be >= 1, got {df}")


def _t_tail(t: float, df: float) -> float:
    # P(T > t) for t >= 0.
    t2 = t * t
    denom = df + t2
    return 0.5 * _reg_inc_beta(0.5 * df, 0.5, df / denom, t2 / denom)


def t_pdf(t: float, df: float) -> float:
    """Density of the Student-t distribution with ``df`` degrees of freedom."""
    _check_df(df)
    log_norm = (ln_gamma(0.5 * (df + 1.0)) - ln_gamma(0.5 * df)
                - 0.5 * math.log(df * math.pi))
    return math.exp(log_norm - 0.5 * (df + 1.0) * math.log1p(t * t / df))


def t_cdf(t: float, df: float) -> float:
    """
    Student-t cumulative distribution function.

    ``df`` may be any real ``>= 1``; regression inference uses ``n - 2``.

    >>> t_cdf(0.0, 7)
    0.5
    >>> round(t_cdf(1.0, 1), 12)
    0.75
    """
    _check_df(df)
    if math.isnan(t):
        raise DomainError("t_cdf of NaN")
    if math.isinf(t):
        return 1.0 if t > 0 else 0.0
    tail = _t_tail(abs(t), df)
    return 1.0 - tail if t >= 0.0 else tail


def t_sf(t: float, df: float) -> float:
    """Upper tail ``P(T > t)``, accurate where ``t_cdf`` rounds to 1."""
    return t_cdf(-t, df)


def t_quantile(p: float, df: float) -> float:
    """
    Inverse of :func:`t_cdf` for ``0 < p < 1``.

    Works on the smaller tail so probabilities close to 1 keep their
    precision, then brackets the root (initially ``[0, 60]``, widened as
    needed for heavy tails) and refines it by safeguarded Newton steps.

    >>> t_quantile(0.5, 3)
    0.0
    """
    _check_df(df)
    if not 0.0 < p < 1.0:
        raise DomainError(f"t_quantile requires 0 < p < 1, got {p}")
    if p == 0.5:
        return 0.0
    # exact for p in [0.5, 1)
    q = 1.0 - p if p > 0.5 else p
    sign = 1.0 if p > 0.5 else -1.0

    lo, hi = 0.0, 60.0
    while _t_tail(hi, df) > q:
        lo = hi
        hi *= 2.0
        if math.isinf(hi):
            raise DomainError(f"t_quantile({p}, {df}) overflows")

    t = 0.5 * (lo + hi)
    for _ in range(200):
        f = _t_tail(t, df) - q
        if f == 0.0:
            break
        # tail is decreasing in t
        if f > 0.0:
            lo = t
        else:
            hi = t
        dens = t_pdf(t, df)
        step = f / dens if dens > 0.0 else math.inf
        nxt = t + step
        if not lo < nxt < hi:
            nxt = 0.5 * (lo + hi)
        if abs(nxt - t) <= 4e-16 * max(1.0, abs(t)) or hi - lo <= 4e-16 * max(1.0, hi):
            t = nxt
            break
        t = nxt
    return sign * t
