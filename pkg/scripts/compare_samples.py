"""Provision every bundled sample with 1+1 and with joint protection; print CSV."""

import argparse
import sys
from pathlib import Path

from npcodes.provisioner import COST_HEADER, Limits, compare_costs, load_topology

SAMPLES = Path(__file__).resolve().parents[1] / "samples"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("paths", nargs="*", type=Path, help="topology files (default: all samples)")
    ap.add_argument("--seconds", type=float, help="time cap per instance")
    args = ap.parse_args(argv)
    paths = args.paths or sorted(SAMPLES.glob("*.top"))
    print(COST_HEADER + ",status,saving")
    for path in paths:
        t, c = load_topology(path)
        base, npc = compare_costs(t, c, path.stem, Limits(seconds=args.seconds))
        saving = 1 - npc.total / base.total
        for row in (base, npc):
            print(f"{row.csv()},{row.status},{float(saving if row is npc else 0):.3f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
