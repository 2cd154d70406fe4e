"""Weighted likelihood estimation for the exponential-family catalog.

Data points carry a strictly positive, theta-free relevance weight ``u(x)``.
The weighted log-likelihood of a catalog model is

    sum_i u_i * (ln a(x_i) + eta(theta) * T(x_i) - H(theta))

whose unique critical point is ``theta = mean_inverse(sum u T / sum u)`` --
a weighted generalized mean of the data.  ``mle_closed_form`` evaluates that
expression; ``mle_numeric`` maximizes the likelihood directly and serves as
an independent cross-check.  The weighted least-squares functional
``sum u (T(x) - O(theta))^2`` has the same critical point when ``O`` is the
model mean function, which ``lse_critical`` exposes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, EmptyDataError, NoSolutionError
from .expfam import FamilyModel, _check_support, _checked_theta, stat_mean_inverse

__all__ = [
    "KERNEL_KINDS",
    "MleResult",
    "WeightKernel",
    "WeightedSeries",
    "apply_kernel",
    "lse_critical",
    "lse_objective",
    "mle_closed_form",
    "mle_numeric",
    "sufficient_mean",
    "weighted_loglik",
]

KERNEL_KINDS = ("unit", "power", "log1p")


@dataclass(frozen=True)
class WeightKernel:
    """A theta-free relevance weight u(x): 1, x**beta, or ln(x+1)."""

    kind: str
    beta: float | None = None

    def __post_init__(self):
        if self.kind not in KERNEL_KINDS:
            raise DomainError(f"unknown kernel kind {self.kind!r}; choose from {KERNEL_KINDS}")
        if self.kind == "power":
            if self.beta is None or not math.isfinite(float(self.beta)):
                raise DomainError("power kernel needs a finite exponent")
            object.__setattr__(self, "beta", float(self.beta))
        elif self.beta is not None:
            raise DomainError(f"{self.kind} kernel takes no exponent")

    @classmethod
    def unit(cls) -> "WeightKernel":
        return cls("unit")

    @classmethod
    def power(cls, beta) -> "WeightKernel":
        return cls("power", beta)

    @classmethod
    def log_shift(cls) -> "WeightKernel":
        """The ln(x+1) kernel (reported under the label 'log1p')."""
        return cls("log1p")

    def weights(self, x) -> np.ndarray:
        """Evaluate u(x) elementwise."""
        xs = np.asarray(x, dtype=float)
        if self.kind == "unit":
            return np.ones_like(xs)
        if self.kind == "power":
            return np.power(xs, self.beta)
        return np.log1p(xs)


@dataclass(frozen=True)
class WeightedSeries:
    """Non-negative values paired with strictly positive weights."""

    values: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        vals = np.atleast_1d(np.asarray(self.values, dtype=float))
        ws = np.atleast_1d(np.asarray(self.weights, dtype=float))
        if vals.ndim != 1 or vals.size == 0:
            raise DomainError("weighted series needs at least one point")
        if ws.shape != vals.shape:
            raise DomainError("values and weights must have matching lengths")
        if not np.all(np.isfinite(vals)) or np.any(vals < 0.0):
            raise DomainError("values must be finite and non-negative")
        if not np.all(np.isfinite(ws)) or np.any(ws <= 0.0):
            raise DomainError("weights must be finite and strictly positive")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "weights", ws)

    def __len__(self) -> int:
        return self.values.size

    @property
    def total_weight(self) -> float:
        return float(self.weights.sum())


@dataclass(frozen=True)
class MleResult:
    """A maximizer of the weighted log-likelihood.

    ``curvature`` is the second derivative of the weighted log-likelihood at
    ``theta_hat``; it is negative at every true maximum.
    """

    theta_hat: float
    loglik: float
    curvature: float


def apply_kernel(values, kernel: WeightKernel, base_weights=None) -> tuple[WeightedSeries, int]:
    """Attach kernel weights to a value series.

    Each point receives ``u(x) * base_weight`` (base weights default to 1).
    Points whose combined weight is zero are dropped; the count of dropped
    points is returned alongside the series.
    """
    xs = np.atleast_1d(np.asarray(values, dtype=float))
    if xs.ndim != 1 or xs.size == 0:
        raise EmptyDataError("no values to weight")
    if not np.all(np.isfinite(xs)) or np.any(xs < 0.0):
        raise DomainError("values must be finite and non-negative")
    if base_weights is None:
        base = np.ones_like(xs)
    else:
        base = np.atleast_1d(np.asarray(base_weights, dtype=float))
        if base.shape != xs.shape:
            raise DomainError("base weights must match the series length")
        if not np.all(np.isfinite(base)) or np.any(base < 0.0):
            raise DomainError("base weights must be finite and non-negative")
    if kernel.kind == "power" and kernel.beta < 0.0 and np.any(xs == 0.0):
        raise DomainError("power kernel with negative exponent requires strictly positive values")
    combined = base * kernel.weights(xs)
    keep = combined > 0.0
    dropped = int(xs.size - np.count_nonzero(keep))
    if not keep.any():
        raise EmptyDataError("every point received zero weight")
    return WeightedSeries(xs[keep], combined[keep]), dropped


def weighted_loglik(model: FamilyModel, theta, data: WeightedSeries) -> float:
    """Weighted log-likelihood sum u (ln a + eta(theta) T - H(theta))."""
    th = _checked_theta(model, theta)
    _check_support(model, data.values)
    per_point = (
        np.log(model.base_measure(data.values))
        + model.natural_param(th) * model.suff_stat(data.values)
        - model.log_normalizer(th)
    )
    return float(data.weights @ per_point)


def sufficient_mean(model: FamilyModel, data: WeightedSeries) -> float:
    """Weight-averaged sufficient statistic ``sum u T(x) / sum u``."""
    _check_support(model, data.values)
    return float(data.weights @ model.suff_stat(data.values) / data.weights.sum())


def mle_closed_form(model: FamilyModel, data: WeightedSeries) -> MleResult:
    """Closed-form weighted MLE: invert the mean function at the data mean.

    At the maximizer the second derivative of the weighted log-likelihood
    reduces to ``-eta'(theta) * r'(theta) * sum(u)`` (with ``r`` the mean
    function, so ``eta' * r' = eta'^2 * Var[T]``), hence it is negative
    whenever the estimate exists.
    """
    m = sufficient_mean(model, data)
    theta = stat_mean_inverse(model, m)
    loglik = weighted_loglik(model, theta, data)
    curvature = (
        -float(model.natural_param_deriv(theta))
        * float(model.mean_deriv(theta))
        * data.total_weight
    )
    return MleResult(theta_hat=theta, loglik=loglik, curvature=curvature)


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_max(fn, lo: float, hi: float, tol: float) -> float:
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = fn(c), fn(d)
    while (b - a) > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = fn(d)
    return 0.5 * (a + b)


def mle_numeric(model: FamilyModel, data: WeightedSeries,
                bracket: tuple[float, float] = (1e-6, 1e6),
                tol: float = 1e-9) -> MleResult:
    """Maximize the weighted log-likelihood directly (no closed form used).

    Golden-section search over log(theta), so the bracket is scale-free and
    the tolerance bounds the relative theta error.  A maximizer pinned to a
    bracket edge triggers up to three tenfold expansions of that edge before
    giving up.  The returned curvature is a central second difference of the
    log-likelihood, keeping this estimate fully independent of the
    closed-form path.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not (0.0 < lo < hi) or not math.isfinite(hi):
        raise DomainError("bracket must satisfy 0 < lo < hi with both finite")
    _check_support(model, data.values)

    def objective(t: float) -> float:
        return weighted_loglik(model, math.exp(t), data)

    a, b = math.log(lo), math.log(hi)
    expansions = 0
    while True:
        t_hat = _golden_max(objective, a, b, tol)
        margin = 0.02 * (b - a)
        if t_hat - a < margin:
            a -= math.log(10.0)
        elif b - t_hat < margin:
            b += math.log(10.0)
        else:
            break
        expansions += 1
        if expansions > 3:
            raise NoSolutionError("no interior likelihood maximum inside the expanded bracket")
    theta = math.exp(t_hat)
    loglik = weighted_loglik(model, theta, data)
    h = theta * 1e-4
    curvature = (
        weighted_loglik(model, theta + h, data)
        - 2.0 * loglik
        + weighted_loglik(model, theta - h, data)
    ) / h**2
    return MleResult(theta_hat=theta, loglik=loglik, curvature=curvature)


def lse_objective(model: FamilyModel, data: WeightedSeries, theta, transform) -> float:
    """Weighted least-squares functional ``sum u (T(x) - O(theta))^2``."""
    th = _checked_theta(model, theta)
    _check_support(model, data.values)
    offset = float(transform(th))
    residual = model.suff_stat(data.values) - offset
    return float(data.weights @ residual**2)


def lse_critical(model: FamilyModel, data: WeightedSeries, transform, transform_inverse) -> float:
    """Critical point of the weighted least-squares functional.

    ``transform`` and ``transform_inverse`` must be a strictly monotone pair
    on the theta domain; the critical point is ``transform_inverse`` of the
    weighted sufficient mean.  With the model mean function as transform this
    coincides exactly with the closed-form MLE.
    """
    m = sufficient_mean(model, data)
    theta = float(transform_inverse(m))
    back = float(transform(theta))
    if not math.isclose(back, m, rel_tol=1e-6, abs_tol=1e-12):
        raise DomainError("transform/inverse pair is inconsistent at the critical point")
    return theta
