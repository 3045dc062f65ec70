"""Nearest-neighbour power sums: statistics, limit constants, density catalog,
condition checks, MST functionals and Monte Carlo experiments."""

import json as _json

from . import _core
from ._core import (
    ConditionRefused,
    ConfigError,
    DegenerateStatistic,
    InvalidGammaArgument,
    InvalidModel,
    InvalidPointSet,
    InvalidRho,
    Model,
    NnlawError,
    QuadratureBudgetExceeded,
    build_mst,
    entropy_from_integral,
    gamma_constant,
    l_phi,
    l_power_nn,
    limit_functional,
    mann_kendall,
    nn_distances,
    poisson_nn_moment,
    poisson_nn_tail,
    statistic_phi,
    statistic_power,
    unit_ball_volume,
)

__all__ = [
    "ConditionRefused",
    "ConfigError",
    "DegenerateStatistic",
    "InvalidGammaArgument",
    "InvalidModel",
    "InvalidPointSet",
    "InvalidRho",
    "Model",
    "NnlawError",
    "QuadratureBudgetExceeded",
    "build_mst",
    "condition_report",
    "converge",
    "diverge",
    "entropy",
    "entropy_from_integral",
    "estimate",
    "gamma_constant",
    "l_phi",
    "l_power_nn",
    "limit_functional",
    "make_model",
    "mann_kendall",
    "nn_distances",
    "poisson_nn_moment",
    "poisson_nn_tail",
    "probe",
    "records_csv",
    "statistic_phi",
    "statistic_power",
    "unit_ball_volume",
]


def make_model(spec=None, **keys):
    """Density from a spec dict, e.g. make_model(model="power_law", d=2, beta=6)."""
    spec = dict(spec or {}, **keys)
    return _core.make_model(_json.dumps(spec))


def condition_report(model, alpha, q=1):
    return _json.loads(_core.condition_report(model, alpha, q))


def estimate(points, j=1, alpha=1.0):
    return _json.loads(_core.estimate(points, j, alpha))


def converge(config):
    return _json.loads(_core.run_experiment("converge", _json.dumps(config)))


def diverge(config):
    return _json.loads(_core.run_experiment("diverge", _json.dumps(config)))


def entropy(config, rho):
    return _json.loads(_core.run_experiment("entropy", _json.dumps(config), rho))


def probe(config, p):
    return _json.loads(_core.run_experiment("probe", _json.dumps(config), p))


def records_csv(kind, config, parameter=0.0):
    """Experiment records in the CSV layout written by the command line tool."""
    return _core.records_csv(kind, _json.dumps(config), parameter)
