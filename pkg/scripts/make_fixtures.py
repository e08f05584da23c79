#!/usr/bin/env python3
"""Regenerate the fixture datasets under data/fixtures/.

Deterministic by construction; run from the repository root. The incident
counts are engineered so the Covington query shows a 2018 peak of 29
incidents and a July peak of 21, and the FWI grid carries one fixed value
per (season, period) across all cells so summary means are bit-exact.
"""

from __future__ import annotations

import csv
import json
import math
import random
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
OUT = ROOT / "data" / "fixtures"

COVINGTON = (37.7935, -79.9939)
MORA_NM = (35.9717, -105.3506)

# One value per (season, period): the regression listing used across tests.
FWI_VALUES = {
    "winter_historical": 6.98, "spring_historical": 13.1,
    "summer_historical": 17.04, "autumn_historical": 19.31,
    "winter_mid_century": 8.49, "spring_mid_century": 17.31,
    "summer_mid_century": 18.26, "autumn_mid_century": 16.25,
    "winter_end_century": 11.52, "spring_end_century": 23.82,
    "summer_end_century": 20.43, "autumn_end_century": 20.5,
}

CELL_KM = 12.0


def write_fwi_grid() -> None:
    lat0, lon0 = COVINGTON
    dlat = CELL_KM / 111.32
    dlon = CELL_KM / (111.32 * math.cos(math.radians(lat0)))
    columns = (["Crossmodel"]
               + [f"{c}{i}" for i in range(1, 5) for c in ("lat", "lon")]
               + list(FWI_VALUES))
    rows = []
    for r in range(3):
        for c in range(3):
            south = lat0 + (r - 1.5) * dlat
            west = lon0 + (c - 1.5) * dlon
            north, east = south + dlat, west + dlon
            corners = [(south, west), (south, east), (north, east), (north, west)]
            row = {"Crossmodel": f"R{40 + r:03d}C{100 + c:03d}"}
            for i, (lat, lon) in enumerate(corners, start=1):
                row[f"lat{i}"] = round(lat, 6)
                row[f"lon{i}"] = round(lon, 6)
            row.update(FWI_VALUES)
            rows.append(row)
    with open(OUT / "fwi_grid.csv", "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=columns)
        writer.writeheader()
        writer.writerows(rows)


def write_incidents() -> None:
    rng = random.Random(20180721)
    lat0, lon0 = COVINGTON
    # (year, month, count) engineered: 2018 totals 29, July totals 21.
    spec = [
        (2016, 10, 4),
        (2018, 3, 8), (2018, 6, 7), (2018, 7, 14),
        (2019, 5, 3), (2019, 7, 7),
    ]
    rows = []
    serial = 1
    for year, month, count in spec:
        for _ in range(count):
            # Scatter inside the 36 km disc (box corners stay under ~30 km).
            dlat = rng.uniform(-0.20, 0.20)
            dlon = rng.uniform(-0.22, 0.22)
            day = rng.randint(1, 28)
            rows.append({
                "lat": round(lat0 + dlat, 5), "lon": round(lon0 + dlon, 5),
                "date": f"{year:04d}-{month:02d}-{day:02d}",
                "name": f"Allegheny Fire {serial:03d}",
            })
            serial += 1
    # Distant cluster (outside any Covington query).
    lat1, lon1 = MORA_NM
    for k in range(7):
        rows.append({
            "lat": round(lat1 + rng.uniform(-0.2, 0.2), 5),
            "lon": round(lon1 + rng.uniform(-0.2, 0.2), 5),
            "date": f"{2015 + k % 9:04d}-{4 + k % 6:02d}-{3 + k:02d}",
            "name": f"Sangre Fire {k + 1:03d}",
        })
    with open(OUT / "incidents.csv", "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=["lat", "lon", "date", "name"])
        writer.writeheader()
        writer.writerows(rows)


def write_paleofire() -> None:
    sites = [
        (37.95, -79.80, "Warm Springs Mountain",
         "Lafon et al. 2005 Fire regimes of the Appalachian highlands"),
        (38.10, -79.55, "Shenandoah Ridge",
         "Hoss et al. 2008 Fire history of a southern Appalachian watershed"),
        (37.45, -80.52, "Peters Mountain Bog",
         "Underwood 2013 Sediment charcoal records from Peters Mountain"),
        (35.77, -105.72, "Sangre de Cristo Crest",
         "Margolis & Balmat 2009 Fire history of the Santa Fe watershed"),
        (36.10, -106.10, "Jemez Plateau",
         "Allen 2002 Lots of lightning and plenty of people"),
        (32.42, -110.73, "Santa Catalina Highlands",
         "Swetnam & Baisan 1996 Historical fire regime patterns; Iniguez et al. 2016 Fire history of Rincon Peak"),
        (44.55, -110.40, "Yellowstone Plateau Lakes",
         "Whitlock 2004 Holocene fire history from lake sediments"),
        (39.05, -106.95, "Elk Mountain Fen",
         "Higuera et al. 2014 Subalpine fire regime reconstruction"),
    ]
    with open(OUT / "paleofire.csv", "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=["lat", "lon", "site_name", "publications"])
        writer.writeheader()
        for lat, lon, name, pubs in sites:
            writer.writerow({"lat": lat, "lon": lon, "site_name": name,
                             "publications": pubs})


def write_census() -> None:
    rng = random.Random(51163)
    lat0, lon0 = COVINGTON
    features = []

    def block(geoid, lat, lon, size, pop, poor, half_poor, housing):
        ring = [
            [lon - size, lat - size], [lon + size, lat - size],
            [lon + size, lat + size], [lon - size, lat + size],
            [lon - size, lat - size],
        ]
        features.append({
            "type": "Feature",
            "properties": {
                "geoid": geoid, "total_population": pop, "below_poverty": poor,
                "below_half_poverty": half_poor, "housing_units": housing,
            },
            "geometry": {"type": "Polygon", "coordinates": [ring]},
        })

    near = [
        ("511630301001", 0.00, 0.00, 1287, 214, 96, 603),
        ("511630301002", 0.12, 0.10, 942, 151, 60, 455),
        ("511630302001", -0.11, 0.14, 1530, 189, 77, 701),
        ("511630302002", 0.09, -0.13, 876, 240, 118, 390),
        ("510050501001", -0.15, -0.09, 1104, 95, 31, 512),
        ("510050501002", 0.18, 0.02, 655, 83, 40, 301),
    ]
    for geoid, dlat, dlon, pop, poor, half, housing in near:
        block(geoid, lat0 + dlat, lon0 + dlon, 0.045, pop, poor, half, housing)
    far = [
        ("350330901001", MORA_NM[0], MORA_NM[1], 1421, 413, 187, 689),
        ("350330901002", MORA_NM[0] + 0.2, MORA_NM[1] - 0.15, 980, 301, 140, 430),
        ("350330902001", MORA_NM[0] - 0.25, MORA_NM[1] + 0.18, 1160, 356, 162, 520),
    ]
    for geoid, lat, lon, pop, poor, half, housing in far:
        block(geoid, lat, lon, 0.05, pop, poor, half, housing)
    collection = {"type": "FeatureCollection", "features": features}
    with open(OUT / "census.geojson", "w") as fh:
        json.dump(collection, fh, indent=1)


CORPUS = [
    ("doc-moritz-2008", "Fire and sustainability: considerations for California's altered future climate",
     "Moritz, Max A.; Stephens, Scott L.", 2008,
     "Examines how fire-prone regions can pursue sustainable coexistence with wildfire "
     "under a changing climate, recommending risk-based decision frameworks, managed "
     "reintroduction of fire, and reevaluated urban planning in hazardous locations.",
     "10.1007/s10584-007-9361-1"),
    ("doc-stan-2006", "Oak woodland dynamics and fire history in northeastern Illinois",
     "Stan, Amanda B.; Rigg, Lesley S.; Jones, Linda S.", 2006,
     "Reconstructs fire history in remnant oak woodlands and documents the role of "
     "early-spring burns, particularly in March, in sustaining white oak regeneration "
     "in the Midwest.", "10.3159/1095-5674(2006)133[158:ODAFHI]2.0.CO;2"),
    ("doc-schoennagel-2017", "Adapt to more wildfire in western North American forests as climate changes",
     "Schoennagel, Tania; Balch, Jennifer K.; Brenkert-Smith, Hannah", 2017,
     "Argues that adaptive resilience to wildfire requires managing forests and "
     "communities for inevitable fire, prioritizing ecological benefits of burning "
     "and land-use decisions that reduce exposure.", "10.1073/pnas.1617464114"),
    ("doc-ager-2019", "Wildfire exposure to the wildland urban interface in the western US",
     "Ager, Alan A.; Day, Michelle A.; Palaiologou, Palaiologos", 2019,
     "Quantifies community wildfire exposure across the wildland-urban interface and "
     "maps transmission of fire risk from surrounding lands, informing evacuation "
     "planning and defendable space priorities.", "10.1016/j.apgeog.2019.102059"),
    ("doc-stevens-2020", "Forest vegetation change and its impacts on soil water following 47 years of managed wildfire",
     "Stevens, Jens T.; Boisrame, Gabrielle F. S.; Rakhmatulina, Ekaterina", 2020,
     "Shows how managed wildfire alters vegetation structure and soil moisture "
     "dynamics over decades, with implications for drainage, slope stability, and "
     "water-aware forest management.", "10.1007/s10021-020-00489-5"),
    ("doc-hvenegaard-2014", "Long-term monitoring of fuel treatment effectiveness in boreal stands",
     "Hvenegaard, Steven", 2014,
     "Reports multi-year monitoring of mechanical and prescribed-fire fuel treatments, "
     "assessing how treatment longevity affects fire behavior moderation near "
     "infrastructure corridors.", None),
    ("doc-dale-2006", "Wildfire policy and fire use on public lands in the United States",
     "Dale, Lisa", 2006,
     "Critiques suppression-dominated wildfire policy and examines institutional "
     "barriers to expanded fire use on public lands, including liability and air "
     "quality constraints.", "10.1080/08941920500460898"),
    ("doc-waltz-2014", "Effectiveness of fuel reduction treatments: assessing metrics of forest resiliency and wildfire severity",
     "Waltz, Amy E. M.; Stoddard, Michael T.; Kalies, Elizabeth L.", 2014,
     "Evaluates ecological outcomes of fuel reduction treatments during a landscape "
     "fire, measuring burn severity, tree mortality, and understory response to "
     "quantify resiliency benefits.", "10.1016/j.foreco.2014.09.026"),
    ("doc-hansen-2020", "Can wildland fire management alter 21st-century subalpine fire and forests in Grand Teton National Park?",
     "Hansen, Winslow D.; Abendroth, Diane; Rammer, Werner", 2020,
     "Uses simulation modeling to test whether managed wildfire can moderate "
     "late-century fire activity and sustain subalpine forests under warming "
     "scenarios in the northern Rockies.", "10.1002/eap.2030"),
    ("doc-vegmgmt-2016", "Vegetation management practices for electric transmission rights-of-way",
     "Ballard, Benjamin D.; McLoughlin, Kevin T.; Nowak, Christopher A.", 2016,
     "Synthesizes integrated vegetation management practice for power line "
     "rights-of-way, comparing mechanical, chemical, and biological control for "
     "maintaining transmission line clearance and grid reliability.", None),
    ("doc-defensible-2018", "Defensible space effectiveness in wildland urban interface home survival",
     "Syphard, Alexandra D.; Keeley, Jon E.", 2018,
     "Analyzes structure survival data to estimate how defensible space distance and "
     "vegetation modification around homes change the odds of surviving wildfire in "
     "the wildland-urban interface.", "10.1071/WF18046"),
    ("doc-floodplain-2015", "Urban floodplain zoning and insurance incentives after repeated loss events",
     "Harmon, Dana R.", 2015,
     "Studies municipal floodplain zoning reform and insurance incentive programs in "
     "river towns after repeated flood losses; unrelated to fire but useful as a "
     "retrieval distractor.", None),
]


def write_corpus() -> None:
    with open(OUT / "corpus.csv", "w", newline="") as fh:
        writer = csv.DictWriter(fh,
                                fieldnames=["id", "title", "authors", "year",
                                            "abstract", "doi"])
        writer.writeheader()
        for doc_id, title, authors, year, abstract, doi in CORPUS:
            writer.writerow({"id": doc_id, "title": title, "authors": authors,
                             "year": year, "abstract": abstract, "doi": doi or ""})


def write_metadata_responses() -> None:
    """Recorded metadata-service responses for hermetic DOI validation."""
    responses = {
        # Exact match: verified.
        "Fire and sustainability: considerations for California's altered future climate": [{
            "title": "Fire and sustainability: considerations for California's altered future climate",
            "authors": ["Moritz, Max A.", "Stephens, Scott L."],
            "doi": "10.1007/s10584-007-9361-1",
        }],
        # Near match above threshold: verified.
        "Adapt to more wildfire in western North American forests as climate changes": [{
            "title": "Adapt to more wildfire in western North American forests as climate change",
            "authors": ["Schoennagel, Tania", "Balch, Jennifer K."],
            "doi": "10.1073/pnas.1617464114",
        }],
        # Title similarity far below threshold: discarded.
        "Oak woodland dynamics and fire history in northeastern Illinois": [{
            "title": "Grassland bird population decline in agricultural landscapes",
            "authors": ["Stan, Amanda B."],
            "doi": "10.9999/unrelated-0001",
        }],
        # Right title, wrong first author: discarded.
        "Wildfire exposure to the wildland urban interface in the western US": [{
            "title": "Wildfire exposure to the wildland urban interface in the western US",
            "authors": ["Palaiologou, Palaiologos", "Ager, Alan A."],
            "doi": "10.1016/j.apgeog.2019.102059",
        }],
        # Simulated outage.
        "Long-term monitoring of fuel treatment effectiveness in boreal stands": "timeout",
    }
    with open(OUT / "metadata_responses.json", "w") as fh:
        json.dump(responses, fh, indent=1)


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    write_fwi_grid()
    write_incidents()
    write_paleofire()
    write_census()
    write_corpus()
    write_metadata_responses()
    print(f"fixtures written to {OUT}")


if __name__ == "__main__":
    main()
