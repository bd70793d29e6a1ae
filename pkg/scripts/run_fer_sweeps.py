#!/usr/bin/env python3
"""Run the failure-rate sweeps for all three shipped codes and write one CSV
per code plus a combined results/fer_sweeps.csv (input for the plotting
frontend)."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from keyrec.sim import CSV_HEADER, SimConfig, sweep

CONFIG_DIR = Path(__file__).parent.parent / "src" / "keyrec" / "data" / "configs"


def main() -> None:
    out_dir = Path(__file__).parent.parent / "results"
    out_dir.mkdir(exist_ok=True)
    rows = []
    for name in ("fig1_c1", "fig1_c2", "fig1_c3"):
        csv_path = out_dir / f"{name}.csv"
        result = sweep(SimConfig.from_file(CONFIG_DIR / f"{name}.cfg"), csv_path=csv_path)
        rows.extend(pt.csv_row() for pt in result.points)
        print(f"wrote {csv_path}")
    combined = out_dir / "fer_sweeps.csv"
    combined.write_text("\n".join([CSV_HEADER] + rows) + "\n")
    print(f"wrote {combined}")


if __name__ == "__main__":
    main()
