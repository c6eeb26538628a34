"""Report rendering to JSON (machine) and Markdown (reader)."""
from __future__ import annotations

import json

from .analysis import AnalysisReport


def render_report_json(report: AnalysisReport, sink) -> None:
    sink.write(json.dumps(report.to_dict(), ensure_ascii=False, indent=2) + "\n")


def report_from_json(text: str) -> AnalysisReport:
    return AnalysisReport.from_dict(json.loads(text))


def _cell(text: str) -> str:
    return str(text).replace("|", "\\|").replace("\n", " ")


def render_report_markdown(report: AnalysisReport, sink) -> None:
    mac, mes, mic = report.macro, report.meso, report.micro
    kind = ("normalized" if mic.normalized else "raw") + (", weighted" if mic.weighted else "")
    lines = [
        f"# {report.network_name}",
        "",
        f"nodes: {report.n_nodes}",
        f"edges: {report.n_edges}",
        "",
        "## Macro",
        "",
        f"- density: {mac.density:.4f}",
        f"- average path length ({mac.apl_policy}): {mac.average_path_length:.4f}",
        "",
        "## Meso",
        "",
        f"- modularity: {mes.modularity:.4f} (resolution {mes.resolution:g})",
        f"- clusters: {mes.cluster_count}",
        "",
        "| Cluster | Size | Share | Top members |",
        "|---:|---:|---:|---|",
    ]
    for row in mes.census:
        members = ", ".join(_cell(m) for m in row.top_members)
        lines.append(f"| {row.community_id} | {row.size} | {row.share_percent:.2f}% | {members} |")
    lines += [
        "",
        "## Micro",
        "",
        f"Top betweenness ({kind}):",
        "",
        "| Rank | Label | Betweenness |",
        "|---:|---|---:|",
    ]
    for row in mic.top_betweenness:
        lines.append(f"| {row.rank} | {_cell(row.label)} | {row.score:.6f} |")
    lines += ["", "## Configuration", ""]
    lines += [f"- {key}: {value}" for key, value in report.config_echo.items()]
    sink.write("\n".join(lines) + "\n")
