"""Matplotlib rendering of retrieval payloads to figure files.

The CLI report path writes these PNGs alongside the delimited output; the
console draws the same payloads client-side with the same class colors.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Polygon as MplPolygon

from wildfire_advisor.model import PERIOD_LABELS, Period, RiskClass, Season
from wildfire_advisor.geo.engine import (
    CensusQueryResult,
    FwiQueryResult,
    IncidentQueryResult,
)

# Yellow-to-red six-class ramp, shared with the console.
RISK_COLORS = {
    RiskClass.LOW: "#ffffb2",
    RiskClass.MEDIUM: "#fed976",
    RiskClass.HIGH: "#feb24c",
    RiskClass.VERY_HIGH: "#fd8d3c",
    RiskClass.EXTREME: "#f03b20",
    RiskClass.VERY_EXTREME: "#bd0026",
}


def render_fwi_figure(result: FwiQueryResult, season: Season, period: Period,
                      path: str | Path) -> Path:
    """Choropleth of the queried cells for one (season, period) selection."""
    from wildfire_advisor.geo.grid import classify_fwi

    fig, ax = plt.subplots(figsize=(7, 6))
    for cell in result.cells:
        value = cell.values[(season, period)]
        color = RISK_COLORS[classify_fwi(value)]
        xy = [(p.longitude, p.latitude) for p in cell.footprint]
        ax.add_patch(MplPolygon(xy, closed=True, facecolor=color,
                                edgecolor="#666666", linewidth=0.6))
        cx = sum(p.longitude for p in cell.footprint) / len(cell.footprint)
        cy = sum(p.latitude for p in cell.footprint) / len(cell.footprint)
        ax.annotate(f"{value}", (cx, cy), ha="center", va="center", fontsize=7)
    ax.plot(result.center.longitude, result.center.latitude, marker="*",
            markersize=14, color="#1f4e9c", linestyle="none", label="query point")
    ax.autoscale_view()
    ax.set_xlabel("longitude")
    ax.set_ylabel("latitude")
    ax.set_title(f"Fire Weather Index, {season.value} {PERIOD_LABELS[period]}")
    ax.legend(loc="upper right", fontsize=8)
    handles = [plt.Rectangle((0, 0), 1, 1, facecolor=c) for c in RISK_COLORS.values()]
    ax.legend(handles, [r.value for r in RISK_COLORS], loc="lower right",
              fontsize=7, title="risk class")
    path = Path(path)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def render_trend_figure(result: IncidentQueryResult, path: str | Path) -> Path:
    """Annual frequency and monthly distribution line plots."""
    fig, (ax_year, ax_month) = plt.subplots(1, 2, figsize=(11, 4))
    yearly = dict(sorted(result.trends.yearly.items()))
    if yearly:
        ax_year.plot(list(yearly), list(yearly.values()), marker="o",
                     color="#d7301f")
    ax_year.set_title("Incidents per year")
    ax_year.set_xlabel("year")
    ax_year.set_ylabel("count")
    monthly = dict(sorted(result.trends.monthly.items()))
    ax_month.plot(list(monthly), list(monthly.values()), marker="o",
                  color="#d7301f")
    ax_month.set_xticks(range(1, 13))
    ax_month.set_title("Incidents per calendar month")
    ax_month.set_xlabel("month")
    ax_month.set_ylabel("count")
    fig.suptitle(f"{result.count} incidents within {result.radius_km} km")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_incident_map(result: IncidentQueryResult, path: str | Path) -> Path:
    """Red incident markers around the query point."""
    fig, ax = plt.subplots(figsize=(6, 6))
    xs = [inc.location.longitude for inc in result.incidents]
    ys = [inc.location.latitude for inc in result.incidents]
    ax.plot(xs, ys, linestyle="none", marker="o", markersize=4,
            color="#d7301f", label="incident")
    ax.plot(result.center.longitude, result.center.latitude, marker="*",
            markersize=14, color="#1f4e9c", linestyle="none", label="query point")
    ax.set_xlabel("longitude")
    ax.set_ylabel("latitude")
    ax.set_title("Recent wildfire incidents")
    ax.legend(loc="upper right", fontsize=8)
    path = Path(path)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def render_census_figure(result: CensusQueryResult, path: str | Path) -> Path:
    """Block-group polygons shaded by poverty share."""
    fig, ax = plt.subplots(figsize=(7, 6))
    cmap = plt.get_cmap("OrRd")
    for block in result.summary.blocks:
        share = (block.below_poverty / block.total_population
                 if block.total_population else 0.0)
        xy = [(p.longitude, p.latitude) for p in block.geometry]
        ax.add_patch(MplPolygon(xy, closed=True, facecolor=cmap(min(1.0, share * 3)),
                                edgecolor="#444444", linewidth=0.6))
    ax.plot(result.center.longitude, result.center.latitude, marker="*",
            markersize=14, color="#1f4e9c", linestyle="none", label="query point")
    ax.autoscale_view()
    ax.set_xlabel("longitude")
    ax.set_ylabel("latitude")
    ax.set_title("Census block groups (poverty share)")
    ax.legend(loc="upper right", fontsize=8)
    path = Path(path)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path
