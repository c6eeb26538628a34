"""Network construction from a corpus."""
from .builders import (
    build_bibliographic_coupling,
    build_coauthorship,
    build_coword,
    connected_components,
    load_stoplist,
    normalize_reference,
    threshold_filter,
)
from .network import NODE_KINDS, Network, NetworkError, Node

__all__ = [
    "NODE_KINDS", "Network", "NetworkError", "Node", "build_bibliographic_coupling",
    "build_coauthorship", "build_coword", "connected_components", "load_stoplist",
    "normalize_reference", "threshold_filter",
]
