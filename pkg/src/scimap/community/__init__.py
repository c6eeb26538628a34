"""Modularity and Louvain communities."""
from .louvain import Partition, cluster_census, louvain, louvain_restarts, modularity

__all__ = ["Partition", "cluster_census", "louvain", "louvain_restarts", "modularity"]
