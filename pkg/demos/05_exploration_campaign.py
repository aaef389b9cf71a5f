"""
A seeded exploration campaign
=============================

The explore command runs many generated trials of one route and compares
each with the oracle. The same campaign is run here from Python; the
command-line equivalent is

    python3 -m gdrazin explore H33 --trials 20 --dim 3 --seed 42
"""

import json

from gdrazin.cli import explore

body = explore("H33", trials=20, dim=3, seed=42)
print(json.dumps(body["summary"], indent=2))
for rec in body["trials"][:5]:
    print(rec["index"], rec["seed"], rec["status"], rec["discrepancy"])

# with one condition deliberately broken, forced runs are recorded
body = explore("H31", trials=10, dim=3, seed=42, violate=2)
print(json.dumps(body["summary"], indent=2))
print({r["status"] for r in body["trials"]}, "notes:",
      [r["note"] for r in body["trials"] if r["note"]])
