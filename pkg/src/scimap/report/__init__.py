"""Analysis report assembly, rendering and network export."""
from .analysis import (
    Analysis,
    AnalysisParams,
    AnalysisReport,
    BetweennessRow,
    CensusRow,
    Macro,
    Meso,
    Micro,
    analyze,
    run_analysis,
)
from .export import (
    export_edgelist_csv,
    export_gexf,
    export_graphml,
    import_edgelist_csv,
    read_centrality_csv,
    read_layout_csv,
    read_partition_csv,
    write_centrality_csv,
    write_layout_csv,
    write_partition_csv,
)
from .render import render_report_json, render_report_markdown, report_from_json

__all__ = [
    "Analysis", "AnalysisParams", "AnalysisReport", "BetweennessRow", "CensusRow", "Macro", "Meso", "Micro",
    "analyze", "export_edgelist_csv", "export_gexf", "export_graphml", "import_edgelist_csv",
    "read_centrality_csv", "read_layout_csv", "read_partition_csv", "render_report_json",
    "render_report_markdown", "report_from_json", "run_analysis", "write_centrality_csv",
    "write_layout_csv", "write_partition_csv",
]
