"""Gamma and Mittag-Leffler special functions on the real line.

This module provides the two special functions everything else is built on:

* :func:`gamma` -- Euler's gamma function via a Lanczos approximation with
  reflection for arguments below 1/2.
* :func:`ml` -- the two-parameter Mittag-Leffler function ``E_{alpha,beta}(z)``
  restricted to the domain this package actually uses: ``0 < alpha <= 2`` and
  real ``z <= 0``.

``ml`` is a hybrid evaluator.  A truncated power series and an algebraic
asymptotic expansion each carry a running error estimate and are only trusted
when that estimate clears an accuracy budget; every argument the fast branches
cannot certify falls through to numerical inversion of the Laplace transform
``s^(alpha-beta) / (s^alpha + x)`` on a parabolic contour, which is accurate
uniformly in ``alpha`` (including the otherwise awkward neighbourhoods of
``alpha = 1`` and ``alpha = 2``).
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "GammaPoleError",
    "MittagLefflerDomainError",
    "gamma",
    "lgamma",
    "rgamma",
    "ml",
]


class GammaPoleError(ValueError):
    """Raised when gamma() is evaluated at a non-positive integer."""


class MittagLefflerDomainError(ValueError):
    """Raised when ml() is called outside 0 < alpha <= 2, z <= 0."""


# Lanczos approximation, g = 7, 9 coefficients.
_LANCZOS_G = 7.0
_LANCZOS_P = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = 2.5066282746310002
_LN_SQRT_2PI = 0.9189385332046727
_LN_PI = 1.1447298858494002
# gamma overflows double precision just above this argument
_GAMMA_OVERFLOW = 171.62437695630272


def _lanczos_series(x: float) -> float:
    acc = _LANCZOS_P[0]
    for i in range(1, 9):
        acc += _LANCZOS_P[i] / (x - 1.0 + i)
    return acc


def _sinpi(x: float) -> float:
    """sin(pi*x) with exact argument reduction (full accuracy near integers)."""
    n = round(x)
    s = math.sin(math.pi * (x - n))  # |x - n| <= 1/2, no cancellation in sin
    return -s if (n & 1) else s


def _lgamma_positive(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    t = x + _LANCZOS_G - 0.5
    return _LN_SQRT_2PI + (x - 0.5) * math.log(t) - t + math.log(_lanczos_series(x))


def gamma(x: float) -> float:
    """Euler gamma function.

    Accurate to better than 1e-12 relative error away from the poles.
    Raises :class:`GammaPoleError` at ``x = 0, -1, -2, ...``.
    """
    x = float(x)
    if math.isnan(x):
        raise GammaPoleError("gamma: argument is NaN")
    if x <= 0.0 and x == math.floor(x):
        raise GammaPoleError(f"gamma: pole at non-positive integer x = {x:g}")
    if x >= 0.5:
        if x > _GAMMA_OVERFLOW:
            return math.inf
        if x <= 140.0:
            t = x + _LANCZOS_G - 0.5
            return _SQRT_2PI * t ** (x - 0.5) * math.exp(-t) * _lanczos_series(x)
        return math.exp(_lgamma_positive(x))
    # reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
    return math.pi / (_sinpi(x) * gamma(1.0 - x))


def lgamma(x: float) -> float:
    """ln |Gamma(x)| for x > 0 (companion used for overflow-safe estimates)."""
    x = float(x)
    if x <= 0.0:
        raise GammaPoleError("lgamma: requires x > 0")
    return _lgamma_positive(x)


def rgamma(x: float) -> float:
    """Reciprocal gamma 1/Gamma(x); exactly 0.0 at the poles of Gamma."""
    x = float(x)
    if math.isnan(x):
        raise GammaPoleError("rgamma: argument is NaN")
    if x >= 0.5:
        if x > _GAMMA_OVERFLOW:
            return 0.0
        return 1.0 / gamma(x)
    if x == math.floor(x):
        return 0.0
    s = _sinpi(x)
    y = 1.0 - x
    if y <= 140.0:
        return s * gamma(y) / math.pi
    ln = math.log(abs(s)) + _lgamma_positive(y) - _LN_PI
    if ln > 709.0:
        return math.copysign(math.inf, s)
    return math.copysign(math.exp(ln), s)


# ---------------------------------------------------------------------------
# Mittag-Leffler evaluation
# ---------------------------------------------------------------------------

# |z| ranges where the fast branches are even attempted
_SERIES_CUTOFF = 16.0
_ASYM_CUTOFF = 25.0
# accuracy budgets the running error estimates must clear
_SERIES_BUDGET = 3e-13
_ASYM_BUDGET = 1e-12
_SERIES_MAX_TERMS = 500
_ASYM_MAX_TERMS = 200


def _series_feasible(alpha: float, beta: float, z: np.ndarray) -> np.ndarray:
    """Cheap screen: can the power series possibly certify for these z?

    The largest term sits near k* where (alpha k + beta) ~ |z|^(1/alpha); its
    magnitude (by Stirling) bounds the cancellation error.  Elements whose
    predicted peak already exceeds the budget, or whose terms have not even
    started shrinking by the term cap, are routed elsewhere without summing.
    """
    absz = np.abs(z)
    kpeak = np.maximum((absz ** (1.0 / alpha) - beta) / alpha, 0.0)
    arg = alpha * kpeak + beta
    stirling = arg * np.log(np.maximum(arg, 1.0)) - arg
    ln_peak = np.where(kpeak > 0.0, kpeak * np.log(np.maximum(absz, 1e-300)) - stirling, 0.0)
    # budget / epsilon ~ 2.7e3; ln of that ~ 7.9, keep a safety margin
    return (kpeak <= 0.85 * _SERIES_MAX_TERMS) & (ln_peak <= 7.0)


def _ml_series(alpha: float, beta: float, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Power series sum_k z^k / Gamma(alpha k + beta) with certification.

    Returns (values, ok) where ok marks elements whose estimated rounding
    error (machine epsilon times the largest term encountered) stayed inside
    the series budget.  The sum of each element is frozen as soon as its own
    terms converge, so results do not depend on what other array elements need.
    """
    total = np.full(z.shape, rgamma(beta))
    maxmag = np.abs(total)
    zk = np.ones_like(z)
    active = _series_feasible(alpha, beta, z)
    never_ok = ~active
    small_run = np.zeros(z.shape, dtype=np.int64)
    converged_at = np.full(z.shape, _SERIES_MAX_TERMS, dtype=np.int64)
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(1, _SERIES_MAX_TERMS + 1):
            if not active.any():
                break
            zk = zk * z
            term = zk * rgamma(alpha * k + beta)
            dead = active & ~np.isfinite(term)
            never_ok |= dead
            active &= ~dead
            total = np.where(active, total + term, total)
            mag = np.abs(term)
            np.maximum(maxmag, np.where(active, mag, 0.0), out=maxmag)
            tiny = mag <= 1e-16 * np.abs(total) + 1e-300
            small_run = np.where(active & tiny, small_run + 1, 0)
            newly_done = active & (small_run >= 3)
            converged_at[newly_done] = k
            active &= ~newly_done
    err = maxmag * 1.1e-16 * np.sqrt(np.maximum(converged_at, 1))
    ok = ~active & ~never_ok & (err <= _SERIES_BUDGET)
    return total, ok


def _ml_asymptotic(alpha: float, beta: float, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Algebraic expansion -sum_k z^-k / Gamma(beta - alpha k), optimally truncated.

    For alpha > 1 the conjugate pole pair of the Laplace image contributes an
    exact oscillatory term which is added on top.  An element certifies once
    the (smooth) magnitude envelope of its terms drops below the asymptotic
    budget while still decreasing; the envelope is evaluated in log space so
    no intermediate overflow can occur.
    """
    x = -z
    lnx = np.log(x)
    total = np.zeros_like(x)
    prev_env = np.full(x.shape, np.inf)
    active = np.ones(x.shape, dtype=bool)
    ok = np.zeros(x.shape, dtype=bool)
    for k in range(1, _ASYM_MAX_TERMS + 1):
        y = beta - alpha * k
        w = 1.0 - y
        sign = 1.0 if (k % 2 == 1) else -1.0
        if w >= 0.5:
            # reflected: 1/Gamma(y) = sin(pi y) Gamma(w) / pi, envelope |sin| <= 1
            ln_env = _lgamma_positive(w) - _LN_PI
            env = np.exp(ln_env - k * lnx)
            term = (sign * _sinpi(y)) * env
        else:
            rg = rgamma(y)
            env = abs(rg) * np.exp(-k * lnx)
            term = (sign * rg) * np.exp(-k * lnx)
        rising = active & (env > prev_env)
        active &= ~rising
        total = np.where(active, total + term, total)
        certified = active & (env <= _ASYM_BUDGET)
        ok |= certified
        active &= ~certified
        prev_env = env
        if not active.any():
            break
    if alpha > 1.0:
        r = x ** (1.0 / alpha)
        theta = math.pi / alpha
        expo = r * math.cos(theta)
        osc = np.where(
            expo > -745.0,
            (2.0 / alpha)
            * r ** (1.0 - beta)
            * np.exp(expo)
            * np.cos(r * math.sin(theta) + (1.0 - beta) * theta),
            0.0,
        )
        total = total + osc
    return total, ok


def _contour_mu(alpha: float, x: float) -> int:
    """Parabola vertex: large enough that the Laplace-image poles (alpha > 1)
    stay on the cut side of the contour, small enough to keep exp(mu) rounding
    harmless.  Integer-valued so scalar and array evaluations bucket alike."""
    if alpha <= 1.0:
        return 10
    r = x ** (1.0 / alpha)
    need = 1.3 * r * math.cos(math.pi / (2.0 * alpha)) ** 2
    return max(10, min(15, math.ceil(need)))


def _ml_contour(alpha: float, beta: float, z: np.ndarray) -> np.ndarray:
    """Bromwich integral on the parabola s = mu (1 + iu)^2, trapezoid rule.

    E_{alpha,beta}(-x) is the inverse Laplace transform of
    s^(alpha-beta)/(s^alpha + x) at t = 1.  With conjugate symmetry the
    integral reduces to summing imaginary parts over u >= 0.
    """
    x = -z
    out = np.empty_like(x)
    mus = np.array([_contour_mu(alpha, float(v)) for v in np.atleast_1d(x)])
    for mu in np.unique(mus):
        sel = mus == mu
        hstep = 0.035 * (10.0 / mu)
        umax = math.sqrt(46.0 / mu)
        n = int(math.ceil(umax / hstep))
        u = hstep * np.arange(n + 1)
        s = mu * (1.0 + 1j * u) ** 2
        ds = 2j * mu * (1.0 + 1j * u)
        base = np.exp(s) * s ** (alpha - beta) * ds
        spow = s ** alpha
        weights = np.full(n + 1, 2.0)
        weights[0] = 1.0
        xs = np.atleast_1d(x)[sel]
        g = base[None, :] / (spow[None, :] + xs[:, None])
        # pairwise np.sum keeps the accumulation order independent of how
        # many arguments share the bucket, so scalar and vector calls agree
        vals = np.sum(g.imag * weights[None, :], axis=1) * hstep / (2.0 * math.pi)
        np.atleast_1d(out)[sel] = vals
    return out


def _ml_exact_order_one(beta_int: int, z: np.ndarray) -> np.ndarray:
    """E_{1,m}(z) = (e^z - sum_{j<m-1} z^j/j!) / z^(m-1) for integer m.

    Used only away from 0 (the series owns small |z|), so the subtractions
    do not cancel.  Keeps E_{1,1}(z) = e^z exactly positive however far the
    argument sits down the negative axis.
    """
    if beta_int == 1:
        return np.exp(z)
    em = np.expm1(z)
    if beta_int == 2:
        return em / z
    if beta_int == 3:
        return (em - z) / z ** 2
    return (em - z - 0.5 * z ** 2) / z ** 3


def _ml_array(alpha: float, beta: float, z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    done = np.zeros(z.shape, dtype=bool)

    at_zero = z == 0.0
    if at_zero.any():
        out[at_zero] = rgamma(beta)
        done |= at_zero

    small = ~done & (np.abs(z) <= _SERIES_CUTOFF)
    if small.any():
        vals, ok = _ml_series(alpha, beta, z[small])
        idx = np.flatnonzero(small)[ok]
        out.flat[idx] = vals[ok]
        done.flat[idx] = True

    # at alpha = 1 with integer beta every algebraic asymptotic term is a
    # gamma pole, so the generic branches would lose the exponentially small
    # remainder; the closed form keeps it (and its sign) exactly
    if alpha == 1.0 and beta in (1.0, 2.0, 3.0, 4.0) and not done.all():
        rest = ~done
        out[rest] = _ml_exact_order_one(int(beta), z[rest])
        done |= rest

    large = ~done & (np.abs(z) >= _ASYM_CUTOFF)
    if large.any():
        vals, ok = _ml_asymptotic(alpha, beta, z[large])
        idx = np.flatnonzero(large)[ok]
        out.flat[idx] = vals[ok]
        done.flat[idx] = True

    rest = ~done
    if rest.any():
        out[rest] = _ml_contour(alpha, beta, z[rest])
    return out


def ml(alpha: float, beta: float, z):
    """Two-parameter Mittag-Leffler function E_{alpha,beta}(z).

    Parameters
    ----------
    alpha : float
        Order, required to satisfy 0 < alpha <= 2.
    beta : float
        Second parameter.  Exercised and validated for beta in
        {1, 2, alpha, alpha + 1, alpha + 2, 2 alpha}; any finite real value
        is accepted.
    z : float or array_like
        Argument(s), restricted to the closed half line z <= 0.

    Returns
    -------
    float or ndarray
        E_{alpha,beta}(z), with absolute error <= 1e-10 over the supported
        box (validated against a high-precision reference).

    Raises
    ------
    MittagLefflerDomainError
        If alpha lies outside (0, 2], z > 0, or an argument is not finite.
    """
    alpha = float(alpha)
    beta = float(beta)
    if not (0.0 < alpha <= 2.0) or math.isnan(alpha):
        raise MittagLefflerDomainError(
            f"ml: order alpha = {alpha:g} outside the supported range (0, 2]"
        )
    if not math.isfinite(beta):
        raise MittagLefflerDomainError("ml: beta must be finite")
    arr = np.asarray(z, dtype=float)
    if arr.size and (np.isnan(arr).any() or (arr > 0.0).any()):
        raise MittagLefflerDomainError("ml: argument z must be real and <= 0")
    scalar = arr.ndim == 0
    vals = _ml_array(alpha, beta, np.atleast_1d(arr).astype(float))
    return float(vals[0]) if scalar else vals.reshape(arr.shape)
