"""Distributed fictitious play in networked games with state uncertainty."""

import json

from ._core import (
    TRAJECTORY_CSV_HEADER,
    ConfigError,
    DomainError,
    ResourceError,
    RunResult,
    Scenario,
    baseline,
    beauty_payoff,
    cover_assignment,
    cover_objective,
    cover_payoff,
    load_scenario,
    parse_scenario,
    path_stats,
    run,
    verify,
)


def run_batch(scenario, seeds, parallel=1):
    """Runs every seed and returns the batch summary as a dict."""
    return json.loads(_core.run_batch_json(scenario, list(seeds), parallel))


from . import _core  # noqa: E402

__all__ = [
    "TRAJECTORY_CSV_HEADER",
    "ConfigError",
    "DomainError",
    "ResourceError",
    "RunResult",
    "Scenario",
    "baseline",
    "beauty_payoff",
    "cover_assignment",
    "cover_objective",
    "cover_payoff",
    "load_scenario",
    "parse_scenario",
    "path_stats",
    "run",
    "run_batch",
    "verify",
]
