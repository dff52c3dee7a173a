"""Least squares regression for interval-valued data in (K_C, delta)."""

import json as _json

from iregress._core import *  # noqa: F401,F403
from iregress._core import (  # noqa: F401
    __version__,
    run_comparison_study_json,
    run_parameter_study_json,
)


def run_parameter_study(configs, replications):
    """Monte-Carlo parameter recovery study; returns the report as a dict."""
    return _json.loads(run_parameter_study_json(configs, replications))


def run_comparison_study(configs, replications, split=0.8):
    """Train/validation AMSE comparison against CCRM; returns a dict."""
    return _json.loads(run_comparison_study_json(configs, replications, split))
