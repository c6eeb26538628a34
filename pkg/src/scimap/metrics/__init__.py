"""Density, average path length and betweenness."""
from .scores import (
    APL_POLICIES,
    CentralityVector,
    MetricUndefinedError,
    average_path_length,
    betweenness,
    density,
    top_k,
)

__all__ = [
    "APL_POLICIES", "CentralityVector", "MetricUndefinedError", "average_path_length",
    "betweenness", "density", "top_k",
]
