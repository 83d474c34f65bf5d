"""Uniform versus heterogeneous mitigation floors on the bundled fixture.

Runs the 27-region example under both published floor tables and prints
the aggregate consequences: total floor burden, cumulative emissions,
final warming, and who gains.
"""

import tempfile
from pathlib import Path

from climneg.cli import execute_compare
from climneg.fixtures import load_example27
from climneg.negotiation import load_floor_table

###############################################################################
# The two published tables.

uniform = load_floor_table("uniform")
dynamic = load_floor_table("dynamic")
print("region :  uniform  dynamic")
for rid in range(1, 28):
    marker = "  <- relaxed" if dynamic.floor(rid) < uniform.floor(rid) else ""
    print(f"  {rid:>4} :  {uniform.floor(rid):.1f}      {dynamic.floor(rid):.1f}{marker}")
print(f"sum    :  {sum(uniform.floors):.1f}     {sum(dynamic.floors):.1f}")

###############################################################################
# Full comparison: optimize and simulate under each regime.

cfg = load_example27()
with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp)
    execute_compare(cfg, ["uniform", "dynamic"], out)
    lines = (out / "compare.csv").read_text().strip().split("\n")
    header = lines[0].split(",")
    print()
    for line in lines[1:]:
        row = dict(zip(header, line.split(",")))
        print(f"{row['regime']:>8}: floorSum={float(row['floorSum']):.1f}  "
              f"emissions={float(row['cumulativeEmissions']):.1f} GtC  "
              f"meanReturn={float(row['meanReturn']):.1f}  "
              f"finalTAT={float(row['finalTAT']):.2f} degC")
    # Regions whose returns move the most when floors are relaxed.
    last = dict(zip(header, lines[-1].split(",")))
    deltas = {int(k.split("_")[1]): float(v) for k, v in last.items()
              if k.startswith("deltaReturn_")}
    top = sorted(deltas.items(), key=lambda kv: -abs(kv[1]))[:5]
    print("largest per-region return changes (dynamic minus uniform):")
    for rid, delta in top:
        print(f"  region {rid:>2}: {delta:+.2f}")
