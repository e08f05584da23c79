"""Location-based retrieval and aggregation over the fixture datasets."""

from wildfire_advisor.geo.distance import (
    EARTH_RADIUS_KM,
    haversine_km,
    distance_to_polygon_km,
    point_in_polygon,
    polygon_sample_points,
)
from wildfire_advisor.geo.grid import (
    FWI_THRESHOLDS,
    CrossmodelId,
    FwiCell,
    FwiSummary,
    GridQueryResult,
    SeasonPeriodStat,
    classify_fwi,
    map_point_to_cells,
    summarize_fwi,
)
from wildfire_advisor.geo.incidents import (
    INCIDENT_YEAR_RANGE,
    FireIncident,
    IncidentTrends,
    incident_trends,
    incidents_within_radius,
)
from wildfire_advisor.geo.paleofire import NearestSites, PaleofireSite, nearest_paleofire_sites
from wildfire_advisor.geo.census import CensusBlockGroup, CensusSummary, census_summary
from wildfire_advisor.geo.reports import CAUTIONARY_MESSAGE, DataReport, render_data_report
from wildfire_advisor.geo.engine import (
    CensusQueryResult,
    FwiQueryResult,
    GeodataEngine,
    IncidentQueryResult,
    PaleofireQueryResult,
)

__all__ = [
    "CAUTIONARY_MESSAGE",
    "CensusBlockGroup",
    "CensusQueryResult",
    "CensusSummary",
    "CrossmodelId",
    "DataReport",
    "EARTH_RADIUS_KM",
    "FWI_THRESHOLDS",
    "FireIncident",
    "FwiCell",
    "FwiQueryResult",
    "FwiSummary",
    "GeodataEngine",
    "GridQueryResult",
    "INCIDENT_YEAR_RANGE",
    "IncidentQueryResult",
    "IncidentTrends",
    "NearestSites",
    "PaleofireQueryResult",
    "PaleofireSite",
    "SeasonPeriodStat",
    "census_summary",
    "classify_fwi",
    "distance_to_polygon_km",
    "haversine_km",
    "incident_trends",
    "incidents_within_radius",
    "map_point_to_cells",
    "nearest_paleofire_sites",
    "point_in_polygon",
    "polygon_sample_points",
    "render_data_report",
    "summarize_fwi",
]
