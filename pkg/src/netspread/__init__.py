"""Event-driven, rejection-based simulation of stochastic spreading
processes on networks, with Gillespie baselines and an exact CTMC oracle."""

from . import (
    engine_baseline,
    engine_reject,
    event_queue,
    exact_oracle,
    model,
    netgraph,
    simcore,
    stochastics,
)
from .model import competing, sir, sis, validate
from .netgraph import Network, configuration_model, from_edge_list
from .simcore import RunStats, SimConfig, Trajectory
from .stochastics import RandomSource, scripted_source

__all__ = [
    "Network",
    "RandomSource",
    "RunStats",
    "SimConfig",
    "Trajectory",
    "competing",
    "configuration_model",
    "engine_baseline",
    "engine_reject",
    "event_queue",
    "exact_oracle",
    "from_edge_list",
    "model",
    "netgraph",
    "simcore",
    "sir",
    "sis",
    "stochastics",
    "validate",
]

__version__ = "0.1.0"
