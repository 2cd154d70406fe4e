"""Shared test infrastructure: catalog instances, reference samplers, CDFs.

The samplers are test-only oracles (inverse-CDF / standard transforms); their
own correctness is pinned by the Kolmogorov-Smirnov suite in test_expfam.py.
"""

import numpy as np
import pytest
from scipy.special import erf, gammainc, gammaincc

from meanfit import build_histogram, catalog


def desk_models():
    """One representative instance of each catalog family."""
    return [
        catalog("exponential"),
        catalog("weibull", alpha=1.7),
        catalog("std-lognormal"),
        catalog("half-normal"),
        catalog("gen-half-normal", alpha=0.8),
        catalog("gamma", k=2.5),
        catalog("inv-gamma", k=3.0),
        catalog("gen-gamma", alpha=1.5, b=2.2),
    ]


def model_ids():
    return [m.name for m in desk_models()]


def sample_model(model, theta, n, rng):
    """Draw n variates from the model at the given theta."""
    name = model.name
    if name == "exponential":
        return rng.exponential(1.0 / theta, n)
    if name == "weibull":
        return rng.weibull(model.hyper["alpha"], n) / theta
    if name == "std-lognormal":
        return np.exp(rng.standard_normal(n) / theta)
    if name == "half-normal":
        return np.abs(rng.standard_normal(n)) / theta
    if name == "gen-half-normal":
        a = model.hyper["alpha"]
        return np.abs(rng.standard_normal(n)) ** (1.0 / a) / theta
    if name == "gamma":
        return rng.gamma(model.hyper["k"], 1.0 / theta, n)
    if name == "inv-gamma":
        return theta / rng.gamma(model.hyper["k"], 1.0, n)
    if name == "gen-gamma":
        a, b = model.hyper["alpha"], model.hyper["b"]
        return rng.gamma(b / a, 1.0, n) ** (1.0 / a) / theta
    raise AssertionError(f"no sampler for {name}")


def model_cdf(model, theta):
    """Closed-form CDF, used to KS-validate the samplers."""
    name = model.name
    if name == "exponential":
        return lambda x: 1.0 - np.exp(-theta * np.asarray(x, float))
    if name == "weibull":
        a = model.hyper["alpha"]
        return lambda x: 1.0 - np.exp(-((theta * np.asarray(x, float)) ** a))
    if name == "std-lognormal":
        return lambda x: 0.5 * (1.0 + erf(theta * np.log(np.asarray(x, float)) / np.sqrt(2.0)))
    if name == "half-normal":
        return lambda x: erf(theta * np.asarray(x, float) / np.sqrt(2.0))
    if name == "gen-half-normal":
        a = model.hyper["alpha"]
        return lambda x: erf((theta * np.asarray(x, float)) ** a / np.sqrt(2.0))
    if name == "gamma":
        k = model.hyper["k"]
        return lambda x: gammainc(k, theta * np.asarray(x, float))
    if name == "inv-gamma":
        k = model.hyper["k"]
        return lambda x: gammaincc(k, theta / np.asarray(x, float))
    if name == "gen-gamma":
        a, b = model.hyper["alpha"], model.hyper["b"]
        return lambda x: gammainc(b / a, (theta * np.asarray(x, float)) ** a)
    raise AssertionError(f"no cdf for {name}")


def random_series(rng, n=50, lo=0.1, hi=10.0):
    """Positive test data, uniform on (lo, hi]."""
    return hi - rng.random(n) * (hi - lo)


def dct_like_histogram(rng, n=20000, bins=80):
    """Heavy-tailed synthetic histogram shaped like |DCT| magnitude data.

    A sharp exponential bulk near zero plus a long exponential tail; the
    mixture is deliberately not a single exponential so that a nontrivial
    power-kernel exponent has something to gain.
    """
    tail_share = rng.uniform(0.15, 0.35)
    bulk_scale = rng.uniform(0.05, 0.2)
    tail_scale = rng.uniform(1.0, 4.0)
    in_tail = rng.random(n) < tail_share
    x = np.where(in_tail, rng.exponential(tail_scale, n), rng.exponential(bulk_scale, n))
    hi = float(np.quantile(x, 0.995))
    hist, _ = build_histogram(x, bins=bins, value_range=(0.0, hi))
    return hist


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)
