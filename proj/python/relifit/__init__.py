"""Failure-rate software reliability models fitted by PSO-GSA maximum likelihood."""

import json

from ._core import (
    DebugProbs,
    FailureSeries,
    FeasibilityError,
    IntervalContext,
    IoError,
    ModelKind,
    ModelSpec,
    Modulation,
    SchemaError,
    SwarmConfig,
    __version__,
    cdf,
    compare,
    density,
    failure_csv,
    fit,
    gamma_from_mu,
    hazard,
    jm_equivalent_gamma_sequence,
    llf_gradient,
    load_failure_csv,
    log_likelihood,
    log_likelihood_closed_form,
    mass_distribution,
    minimize,
    mse,
    mu_from_gamma,
    predicted_intervals,
    reliability,
    simulate_series,
    sse,
    stationarity_residuals,
)


def fit_result(series, model, **kwargs):
    """Like fit(), but returns the FitResult document parsed into a dict."""
    return json.loads(fit(series, model, **kwargs))
