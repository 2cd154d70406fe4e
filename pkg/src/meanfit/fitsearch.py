"""Histogram fitting, MSE scoring, and grid sweeps over kernel/shape parameters.

A histogram is fitted by treating bin centers as observations, bin counts as
frequency weights, and multiplying in the kernel weight ``u(center)``.  Fit
quality is the mean squared difference between the empirical bin density
``count / (total * width)`` and the fitted density at the bin centers.
Kernel exponents and shape hyperparameters are chosen by exhaustive grid
search with deterministic tie-breaking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, EmptyDataError, NoSolutionError, SweepError
from .expfam import FamilyModel, catalog, in_support, pdf, _checked_theta
from .wmle import WeightKernel, WeightedSeries, mle_closed_form

__all__ = [
    "FitReport",
    "Histogram",
    "KernelComparison",
    "SweepGrid",
    "beta_mse_profile",
    "compare_kernels",
    "fit_histogram",
    "histogram_to_series",
    "mse_score",
    "sweep_beta",
    "sweep_shape",
]

_FIT_ERRORS = (DomainError, EmptyDataError, NoSolutionError)


@dataclass(frozen=True)
class Histogram:
    """Strictly increasing bin edges plus non-negative counts."""

    edges: np.ndarray
    counts: np.ndarray

    def __post_init__(self):
        edges = np.atleast_1d(np.asarray(self.edges, dtype=float))
        counts = np.atleast_1d(np.asarray(self.counts, dtype=float))
        if edges.ndim != 1 or edges.size < 2:
            raise DomainError("histogram needs at least two bin edges")
        if not np.all(np.isfinite(edges)) or np.any(np.diff(edges) <= 0.0):
            raise DomainError("bin edges must be finite and strictly increasing")
        if counts.shape != (edges.size - 1,):
            raise DomainError("counts must have one entry per bin")
        if not np.all(np.isfinite(counts)) or np.any(counts < 0.0):
            raise DomainError("counts must be finite and non-negative")
        if not np.any(counts > 0.0):
            raise DomainError("at least one count must be positive")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "counts", counts)

    @property
    def nbins(self) -> int:
        return self.counts.size

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    @property
    def total(self) -> float:
        return float(self.counts.sum())


@dataclass(frozen=True)
class FitReport:
    """One fitted (model, kernel) combination on one histogram."""

    model: str
    kernel: str
    beta: float | None
    alpha: float | None
    theta_hat: float
    mse: float
    loglik: float
    dropped_bins: int

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "kernel": self.kernel,
            "beta": self.beta,
            "alpha": self.alpha,
            "theta_hat": self.theta_hat,
            "mse": self.mse,
            "loglik": self.loglik,
            "dropped_bins": self.dropped_bins,
        }


@dataclass(frozen=True)
class SweepGrid:
    """Inclusive arithmetic grid lo, lo+step, ..., hi."""

    lo: float
    hi: float
    step: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi) and math.isfinite(self.step)):
            raise DomainError("grid bounds and step must be finite")
        if self.lo > self.hi:
            raise DomainError("grid needs lo <= hi")
        if self.step <= 0.0:
            raise DomainError("grid step must be positive")

    def points(self) -> np.ndarray:
        n = int(math.floor((self.hi - self.lo) / self.step + 1e-9))
        return self.lo + self.step * np.arange(n + 1)


@dataclass(frozen=True)
class KernelComparison:
    """Per-kernel win percentages for one model over a set of histograms."""

    model: str
    pct_unit: float
    pct_power: float
    pct_log1p: float
    mean_improvement: float
    n_scored: int
    failures: tuple[str, ...]


def histogram_to_series(hist: Histogram, kernel: WeightKernel) -> tuple[WeightedSeries, int]:
    """Turn bins into weighted observations at the bin centers.

    Each retained bin contributes the point ``(center, count * u(center))``.
    Bins with non-positive centers, zero counts, or zero kernel weight are
    dropped; the dropped-bin count is returned with the series.
    """
    centers = hist.centers
    counts = hist.counts
    usable = centers > 0.0
    combined = np.zeros_like(counts)
    if usable.any():
        combined[usable] = counts[usable] * kernel.weights(centers[usable])
    keep = usable & (combined > 0.0)
    dropped = int(hist.nbins - np.count_nonzero(keep))
    if not keep.any():
        raise EmptyDataError("every histogram bin was dropped")
    return WeightedSeries(centers[keep], combined[keep]), dropped


def mse_score(model: FamilyModel, theta, hist: Histogram) -> float:
    """Mean squared error between empirical bin densities and the fitted pdf.

    The empirical density of bin b is ``count_b / (total * width_b)``; the
    comparison runs over every bin whose center lies in the model support
    (zero-count bins included: an empty bin is honest evidence of density 0).
    """
    th = _checked_theta(model, theta)
    mask = in_support(model, hist.centers)
    if not mask.any():
        raise EmptyDataError("no histogram bin center lies in the model support")
    empirical = hist.counts / (hist.total * hist.widths)
    fitted = pdf(model, th, hist.centers[mask])
    return float(np.mean((empirical[mask] - fitted) ** 2))


def fit_histogram(model: FamilyModel, hist: Histogram, kernel: WeightKernel) -> FitReport:
    """Closed-form fit of one model/kernel pair, scored by MSE."""
    series, dropped = histogram_to_series(hist, kernel)
    est = mle_closed_form(model, series)
    mse = mse_score(model, est.theta_hat, hist)
    return FitReport(
        model=model.name,
        kernel=kernel.kind,
        beta=kernel.beta,
        alpha=model.hyper.get("alpha"),
        theta_hat=est.theta_hat,
        mse=mse,
        loglik=est.loglik,
        dropped_bins=dropped,
    )


def _report_key(report: FitReport, alpha_last: float = 0.0) -> tuple:
    # Ties go to the exponent of smallest magnitude, then the smaller
    # exponent, then the smaller shape; completion order never matters.
    beta = report.beta if report.beta is not None else 0.0
    return (report.mse, abs(beta), beta, alpha_last)


def sweep_beta(model: FamilyModel, hist: Histogram, grid: SweepGrid) -> FitReport:
    """Best power-kernel fit over an exponent grid (minimal MSE wins)."""
    best = None
    best_key = None
    causes = []
    for beta in grid.points():
        try:
            report = fit_histogram(model, hist, WeightKernel.power(beta))
        except _FIT_ERRORS as exc:
            causes.append((float(beta), exc))
            continue
        key = _report_key(report)
        if best_key is None or key < best_key:
            best, best_key = report, key
    if best is None:
        raise SweepError("every exponent in the sweep failed", causes)
    return best


def sweep_shape(model: FamilyModel, hist: Histogram, shape_grid: SweepGrid,
                kernel: WeightKernel | None = None,
                beta_grid: SweepGrid | None = None) -> FitReport:
    """Best fit over a shape-hyperparameter grid, optionally crossed with a
    power-exponent grid.

    Only models carrying a shape hyperparameter (weibull, gen-half-normal,
    gen-gamma) can be swept.  When ``beta_grid`` is given the ``kernel``
    argument is ignored and power kernels from the grid are used instead.
    """
    if "alpha" not in model.hyper:
        raise DomainError(f"{model.name} has no shape hyperparameter to sweep")
    shapes = shape_grid.points()
    if np.any(shapes <= 0.0):
        raise DomainError("shape grid values must be positive")
    if kernel is None:
        kernel = WeightKernel.unit()
    fixed = {k: v for k, v in model.hyper.items() if k != "alpha"}

    best = None
    best_key = None
    causes = []
    for shape in shapes:
        shaped = catalog(model.name, alpha=float(shape), **fixed)
        kernels = (
            [WeightKernel.power(b) for b in beta_grid.points()]
            if beta_grid is not None
            else [kernel]
        )
        for kern in kernels:
            try:
                report = fit_histogram(shaped, hist, kern)
            except _FIT_ERRORS as exc:
                causes.append(((float(shape), kern.beta), exc))
                continue
            key = _report_key(report, alpha_last=float(shape))
            if best_key is None or key < best_key:
                best, best_key = report, key
    if best is None:
        raise SweepError("every point of the shape sweep failed", causes)
    return best


def beta_mse_profile(model: FamilyModel, hist: Histogram, grid: SweepGrid,
                     shape_grid: SweepGrid | None = None) -> list[tuple[float, float]]:
    """(beta, mse) rows for every grid exponent; NaN marks failed points.

    With ``shape_grid`` the reported MSE at each beta is the best over the
    shape grid, so the profile stays one row per exponent.
    """
    rows = []
    for beta in grid.points():
        single = SweepGrid(float(beta), float(beta), 1.0)
        try:
            if shape_grid is not None:
                report = sweep_shape(model, hist, shape_grid, beta_grid=single)
            else:
                report = fit_histogram(model, hist, WeightKernel.power(beta))
            rows.append((float(beta), report.mse))
        except (SweepError, *_FIT_ERRORS):
            rows.append((float(beta), math.nan))
    return rows


def compare_kernels(models, hists, beta_grid: SweepGrid,
                    tie_epsilon: float = 1e-3) -> list[KernelComparison]:
    """Count, per model, how often each kernel attains the minimal MSE.

    MSEs within a relative ``tie_epsilon`` of the per-histogram minimum are
    treated as identical, so several kernels may win the same histogram and
    percentages can sum above 100.  The improvement column is the mean of
    ``|mse_unit - mse_power| / mse_unit`` over histograms where both fits
    succeeded.
    """
    models = list(models)
    hists = list(hists)
    if not models or not hists:
        raise EmptyDataError("compare_kernels needs at least one model and one histogram")
    if tie_epsilon < 0.0:
        raise DomainError("tie epsilon must be non-negative")

    results = []
    for model in models:
        wins = {"unit": 0, "power": 0, "log1p": 0}
        improvements = []
        failures = []
        n_scored = 0
        for idx, hist in enumerate(hists):
            scores = {}
            attempts = (
                ("unit", lambda: fit_histogram(model, hist, WeightKernel.unit())),
                ("power", lambda: sweep_beta(model, hist, beta_grid)),
                ("log1p", lambda: fit_histogram(model, hist, WeightKernel.log_shift())),
            )
            for label, attempt in attempts:
                try:
                    scores[label] = attempt().mse
                except (SweepError, *_FIT_ERRORS) as exc:
                    failures.append(f"histogram {idx}: {label}: {exc}")
            if not scores:
                continue
            n_scored += 1
            floor = min(scores.values())
            for label, mse in scores.items():
                if mse <= floor * (1.0 + tie_epsilon):
                    wins[label] += 1
            if "unit" in scores and "power" in scores:
                unit_mse = scores["unit"]
                if unit_mse > 0.0:
                    improvements.append(abs(unit_mse - scores["power"]) / unit_mse)
                else:
                    improvements.append(0.0)
        denom = max(n_scored, 1)
        results.append(
            KernelComparison(
                model=model.name,
                pct_unit=100.0 * wins["unit"] / denom,
                pct_power=100.0 * wins["power"] / denom,
                pct_log1p=100.0 * wins["log1p"] / denom,
                mean_improvement=float(np.mean(improvements)) if improvements else 0.0,
                n_scored=n_scored,
                failures=tuple(failures),
            )
        )
    return results
