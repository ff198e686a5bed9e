#!/usr/bin/env python3
"""Census runs over a catalog: bound checks, density profile, extremal scan.

The catalog here is every nonempty restriction of the Fano plane (127
members).  Reports separate pass / violation / unknown, and their canonical
JSON form is byte-stable across runs.
"""

import json

from matroidlab.harness.catalogs import registry_catalog
from matroidlab.harness.census import (check_kung_bound, density_profile,
                                       extremal_census)

catalog = registry_catalog("pg3q2-restrictions")
print(f"catalog {catalog.name}: {len(catalog.members)} members")
print()

report = check_kung_bound(catalog, l=2)
print("point-count bound check at l = 2:")
print("  checked:", report.summary["checked"],
      " violations:", len(report.violations),
      " unknown:", report.unknowns)
print("  extremal members (epsilon meets the bound):")
for hit in report.summary["extremal"]:
    print("   ", hit)
print()

profile = density_profile(catalog, l=2)
print("density profile (max epsilon per rank vs theta):")
for row in profile.summary["table"]:
    print(f"  rank {row['rank']}: max eps {row['max_epsilon']} vs "
          f"theta {row['theta_q']} (excess {row['excess']})")
print()

extremal = extremal_census(catalog, l=2)
print("extremal census (who attains theta, and are they geometries?):")
for hit in extremal.summary["extremal"]:
    print("  ", hit)
print()

payload = json.loads(report.to_json(canonical=True))
print("canonical JSON report keys:", sorted(payload))
print("first record:", payload["records"][0])
