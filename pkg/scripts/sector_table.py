"""Print the sector residual table for a field config, in both descent modes.

Usage: python3 scripts/sector_table.py '{"Ex": "t", "Bz": "x"}'
       python3 scripts/sector_table.py path/to/config.json
"""
import json
import os
import sys

from formdescent.exterior import Metric
from formdescent.maxwell import DescentViolation, EMConfig, componentwise_crosscheck, split_double, split_single


def load(arg: str) -> EMConfig:
    text = open(arg, encoding="utf-8").read() if os.path.exists(arg) else arg
    return EMConfig.from_strings(json.loads(text))


def main(argv) -> int:
    c = load(argv[1] if len(argv) > 1 else '{"Ey": "t - x", "Bz": "t - x"}')
    g = Metric.lorentzian(4)
    for mode, split in (("single", split_single), ("double", split_double)):
        print(f"== {mode} descent ==")
        try:
            rep = split(c, g)
        except DescentViolation as exc:
            print(f"  skipped: {exc}")
            continue
        for sector, rids in rep.sectors.items():
            for rid in rids:
                print(f"  {sector:5} {rid:28} {rep.residuals[rid]}")
        scalars = componentwise_crosscheck(c, g, mode)
        print("  component equations: " + ", ".join(f"{k}={v}" for k, v in sorted(scalars.items())))
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
