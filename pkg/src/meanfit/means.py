"""Generalized central tendencies: Kolmogorov f-mean, Holder and Lehmer families.

The Holder (power) family generalizes the Pythagorean means through an
exponent ``alpha``: arithmetic at 1, geometric in the ``alpha -> 0`` limit,
harmonic at -1, min/max at the infinite limits.  The Lehmer family is the
ratio-of-power-sums alternative: arithmetic at 1, geometric at 0.5, harmonic
at 0.  Both families accept optional relevance weights, are bounded by the
data extremes, and are non-decreasing in ``alpha``.

Inputs are one-dimensional collections of finite non-negative reals; weights
must be finite and strictly positive.  Exponents may be ``+/-math.inf``
(max/min limits); NaN is rejected.  Zero values are admitted only where the
exponent applied to them keeps every power finite.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .errors import DomainError

__all__ = [
    "GEOMETRIC_CUTOFF",
    "holder_lehmer_link",
    "holder_mean",
    "kolmogorov_mean",
    "lehmer_mean",
    "v_weights",
]

#: Below this magnitude the Holder exponent is routed to the analytic
#: geometric-mean branch; x**alpha loses its signal that close to zero.
GEOMETRIC_CUTOFF = 1e-9

# Factoring an extreme value out of the power sums is only worth the extra
# rounding when overflow is actually in reach.
_RESCALE_ALPHA = 30.0
_RESCALE_SPREAD = 1e6


def _as_values(values) -> np.ndarray:
    xs = np.atleast_1d(np.asarray(values, dtype=float))
    if xs.ndim != 1 or xs.size == 0:
        raise DomainError("values must form a non-empty one-dimensional series")
    if not np.all(np.isfinite(xs)):
        raise DomainError("values must all be finite")
    if np.any(xs < 0.0):
        raise DomainError("values must be non-negative")
    return xs


def _as_weights(weights, n: int) -> np.ndarray:
    if weights is None:
        return np.ones(n)
    ws = np.atleast_1d(np.asarray(weights, dtype=float))
    if ws.shape != (n,):
        raise DomainError(f"expected {n} weights, got {ws.size}")
    if not np.all(np.isfinite(ws)) or np.any(ws <= 0.0):
        raise DomainError("weights must be finite and strictly positive")
    return ws


def _checked_alpha(alpha) -> float:
    a = float(alpha)
    if math.isnan(a):
        raise DomainError("exponent must not be NaN")
    return a


def _reject_zeros(xs: np.ndarray, alpha: float) -> None:
    if np.any(xs == 0.0):
        raise DomainError(f"zero values are not admitted for exponent {alpha}")


def _anchor(xs: np.ndarray, alpha: float) -> float | None:
    """Extreme value to factor out of the power sums, or None for the plain path."""
    if abs(alpha) <= _RESCALE_ALPHA:
        return None
    xmin = float(xs.min())
    xmax = float(xs.max())
    if xmin > 0.0 and xmax / xmin <= _RESCALE_SPREAD:
        return None
    return xmax if alpha > 0.0 else xmin


def kolmogorov_mean(values, transform: Callable[[float], float],
                    inverse: Callable[[float], float]) -> float:
    """Generalized f-mean ``inverse(mean(transform(x_i)))``.

    ``transform`` must be continuous and increasing on the data range and
    ``inverse`` must be its true inverse; both are trusted as supplied.
    """
    xs = _as_values(values)
    fx = np.empty(xs.size)
    for i, x in enumerate(xs):
        try:
            y = float(transform(x))
        except (ArithmeticError, ValueError) as exc:
            raise DomainError(f"transform failed at x={x!r}: {exc}") from exc
        if not math.isfinite(y):
            raise DomainError(f"transform produced a non-finite value at x={x!r}")
        fx[i] = y
    return float(inverse(fx.mean()))


def holder_mean(values, alpha, weights=None) -> float:
    """Weighted Holder (power) mean ``(sum w x^a / sum w)^(1/a)``.

    ``alpha=0`` (and any ``|alpha| < GEOMETRIC_CUTOFF``) evaluates the
    weighted geometric mean analytically; ``+/-inf`` return max/min.
    Non-positive exponents require strictly positive values.
    """
    xs = _as_values(values)
    a = _checked_alpha(alpha)
    ws = _as_weights(weights, xs.size)
    if a == math.inf:
        return float(xs.max())
    if a == -math.inf:
        _reject_zeros(xs, a)
        return float(xs.min())
    if abs(a) < GEOMETRIC_CUTOFF:
        _reject_zeros(xs, a)
        return float(np.exp(np.log(xs) @ ws / ws.sum()))
    if a < 0.0:
        _reject_zeros(xs, a)
    anchor = _anchor(xs, a)
    if anchor is None:
        return float((np.power(xs, a) @ ws / ws.sum()) ** (1.0 / a))
    scaled = xs / anchor
    return float(anchor * (np.power(scaled, a) @ ws / ws.sum()) ** (1.0 / a))


def lehmer_mean(values, alpha, weights=None) -> float:
    """Weighted Lehmer mean ``sum w x^a / sum w x^(a-1)``.

    ``+/-inf`` return max/min.  Exponents below 1 require strictly positive
    values so that ``x^(a-1)`` stays finite.
    """
    xs = _as_values(values)
    a = _checked_alpha(alpha)
    ws = _as_weights(weights, xs.size)
    if a == math.inf:
        return float(xs.max())
    if a == -math.inf:
        _reject_zeros(xs, a)
        return float(xs.min())
    if a < 1.0:
        _reject_zeros(xs, a)
    anchor = _anchor(xs, a) if a >= 1.0 else _anchor(xs, a - 1.0)
    scaled = xs if anchor is None else xs / anchor
    num = np.power(scaled, a) @ ws
    den = np.power(scaled, a - 1.0) @ ws
    if den == 0.0:
        raise DomainError("Lehmer denominator vanished (all values zero)")
    ratio = num / den
    return float(ratio if anchor is None else anchor * ratio)


def v_weights(values, alpha, family: str) -> np.ndarray:
    """Per-value relevance weights ``x^(alpha-1)`` of the chosen family.

    Holder weights are normalized by ``n`` (they sum to the (alpha-1)-power
    mean raised to ``alpha-1``); Lehmer weights are normalized by their own
    sum and therefore always sum to one.
    """
    xs = _as_values(values)
    a = _checked_alpha(alpha)
    if not math.isfinite(a):
        raise DomainError("v-weights need a finite exponent")
    kind = family.lower()
    if kind not in ("holder", "lehmer"):
        raise DomainError(f"unknown mean family {family!r} (use 'holder' or 'lehmer')")
    if a < 1.0:
        _reject_zeros(xs, a)
    powers = np.power(xs, a - 1.0)
    if kind == "holder":
        return powers / xs.size
    return powers / powers.sum()


def holder_lehmer_link(values, alpha) -> tuple[float, float]:
    """Two routes to one number: sum-normalized Holder vs ``lehmer^(1/alpha)``.

    Renormalizing the Holder v-weights by their own sum collapses the Holder
    mean onto ``(sum x^a / sum x^(a-1))^(1/a)``, which is exactly the Lehmer
    mean raised to ``1/alpha``.  Both evaluations are returned so callers can
    check the identity to floating tolerance.
    """
    xs = _as_values(values)
    a = _checked_alpha(alpha)
    if not math.isfinite(a) or a == 0.0:
        raise DomainError("the rescaled-weight identity needs a finite nonzero exponent")
    if a < 1.0:
        _reject_zeros(xs, a)
    num = float(np.power(xs, a).sum())
    den = float(np.power(xs, a - 1.0).sum())
    rescaled_holder = (num / den) ** (1.0 / a)
    via_lehmer = lehmer_mean(xs, a) ** (1.0 / a)
    return rescaled_holder, via_lehmer
