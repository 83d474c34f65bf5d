"""Regenerate the frontend's golden CSVs from the bundled fixture.

Runs the primary CLI's compare on the 27-region example and copies the
artifacts the frontend tests consume. Outputs are deterministic, so the
files only change when the simulator or the fixture changes.
"""

import shutil
import tempfile
from pathlib import Path

from climneg.cli import main

GOLDEN = Path(__file__).resolve().parents[1] / "frontend" / "test" / "golden"
FIXTURE = Path(__file__).resolve().parents[1] / "src" / "climneg" / "data" / "example27.json"


def regenerate():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        out = Path(tmp)
        code = main(["compare", "--config", str(FIXTURE),
                     "--regimes", "uniform,dynamic", "--out", str(out)])
        if code != 0:
            raise SystemExit(f"compare failed with exit code {code}")
        shutil.copy(out / "compare.csv", GOLDEN / "compare.csv")
        shutil.copy(out / "uniform" / "floors.csv", GOLDEN / "floors_uniform.csv")
        shutil.copy(out / "dynamic" / "floors.csv", GOLDEN / "floors_dynamic.csv")
        shutil.copy(out / "dynamic" / "trajectory.csv", GOLDEN / "trajectory.csv")
        shutil.copy(out / "dynamic" / "summary.json", GOLDEN / "summary.json")
    for name in sorted(p.name for p in GOLDEN.iterdir()):
        print(f"wrote {GOLDEN / name}")


if __name__ == "__main__":
    regenerate()
