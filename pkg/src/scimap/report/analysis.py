"""Macro / meso / micro analysis report."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field, fields

from ..community.louvain import Partition, cluster_census, louvain_restarts
from ..metrics.scores import (
    APL_POLICIES,
    CentralityVector,
    MetricUndefinedError,
    average_path_length,
    betweenness,
    density,
    top_k,
)
from ..netbuild.network import Network


@dataclass
class AnalysisParams:
    resolution: float = 1.0
    seed: int = 42
    restarts: int = 1
    max_passes: int = 100
    weighted: bool = False
    normalized: bool = True
    apl_policy: str = "reachable_pairs"
    top_k: int = 10

    def __post_init__(self):
        if self.apl_policy not in APL_POLICIES:
            raise ValueError(f"unknown APL policy {self.apl_policy!r}")
        if self.top_k < 1 or self.restarts < 1 or self.max_passes < 1:
            raise ValueError("top_k, restarts and max_passes must be >= 1")
        if self.resolution <= 0:
            raise ValueError("resolution must be positive")

    def echo(self) -> dict:
        return asdict(self)

    @classmethod
    def from_echo(cls, echo: dict) -> "AnalysisParams":
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in echo.items() if k in names})


@dataclass
class Macro:
    density: float
    average_path_length: float
    apl_policy: str


@dataclass
class CensusRow:
    community_id: int
    size: int
    share_percent: float
    top_members: list[str]


@dataclass
class Meso:
    modularity: float
    cluster_count: int
    resolution: float
    census: list[CensusRow]


@dataclass
class BetweennessRow:
    rank: int
    node_id: str
    label: str
    score: float


@dataclass
class Micro:
    top_betweenness: list[BetweennessRow]
    normalized: bool
    weighted: bool


@dataclass
class AnalysisReport:
    network_name: str
    n_nodes: int
    n_edges: int
    macro: Macro
    meso: Meso
    micro: Micro
    config_echo: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "AnalysisReport":
        meso = dict(d["meso"])
        meso["census"] = [CensusRow(**row) for row in meso["census"]]
        micro = dict(d["micro"])
        micro["top_betweenness"] = [BetweennessRow(**row) for row in micro["top_betweenness"]]
        return cls(
            d["network_name"], d["n_nodes"], d["n_edges"], Macro(**d["macro"]), Meso(**meso), Micro(**micro),
            dict(d.get("config_echo", {})),
        )


@dataclass
class Analysis:
    report: AnalysisReport
    partition: Partition
    centrality: CentralityVector


def run_analysis(net: Network, params: AnalysisParams | None = None, extra_echo: dict | None = None) -> Analysis:
    """Compute every score of the report and keep the partition and centrality."""
    params = params or AnalysisParams()
    if net.n < 2:
        raise MetricUndefinedError("density", f"needs at least 2 nodes, got {net.n}")
    if net.m < 1:
        raise MetricUndefinedError("density", "network has no edges")
    dens = density(net)
    apl = average_path_length(net, params.apl_policy)
    part = louvain_restarts(net, params.resolution, params.seed, params.restarts, params.max_passes)
    cent = betweenness(net, weighted=params.weighted, normalized=params.normalized)
    labels = dict(zip((nd.node_id for nd in net.nodes), net.labels))
    top = [BetweennessRow(r, i, lab, s) for r, (i, lab, s) in enumerate(top_k(cent, params.top_k, labels), start=1)]
    census = [CensusRow(c, size, share, members) for c, size, share, members in cluster_census(net, part)]
    echo = params.echo()
    if extra_echo:
        echo.update({k: v for k, v in extra_echo.items() if k not in echo})
    report = AnalysisReport(
        net.name, net.n, net.m,
        Macro(dens, apl, params.apl_policy),
        Meso(part.modularity, part.cluster_count, params.resolution, census),
        Micro(top, params.normalized, params.weighted),
        echo,
    )
    return Analysis(report, part, cent)


def analyze(net: Network, params: AnalysisParams | None = None) -> AnalysisReport:
    """Density, path length, communities and top betweenness in one report.

    Raises :class:`MetricUndefinedError` naming the first score that cannot
    be computed (a network needs two nodes and one edge).
    """
    return run_analysis(net, params).report
