"""Run a differential sweep and print a per-theorem tally.

    python scripts/run_sweep.py --n-range 5:256 --out sweep.csv
"""

import argparse
from collections import Counter

from harary.formulas import DiameterRule
from harary.verify import QUANTITIES, SweepConfig, emit_report, parse_range, sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k-range", default="2:12")
    ap.add_argument("--n-range", default="5:64")
    ap.add_argument("--quantities", default=",".join(QUANTITIES))
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--diameter-rule", choices=[r.value for r in DiameterRule], default="exact")
    ap.add_argument("--out", help="write the CSV report here")
    args = ap.parse_args()

    cfg = SweepConfig(
        k_range=parse_range(args.k_range),
        n_range=parse_range(args.n_range),
        quantities=tuple(args.quantities.split(",")),
        jobs=args.jobs,
        diameter_rule=DiameterRule(args.diameter_rule),
    )
    report = sweep(cfg)
    tally = Counter((r.quantity, r.theorem_id, r.status) for r in report.rows)
    print(f"{'quantity':<15}{'theorem_id':<30}{'status':<12}count")
    for (q, tid, status), count in sorted(tally.items()):
        print(f"{q:<15}{tid:<30}{status:<12}{count}")
    print("total", report.counts())
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(emit_report(report, "csv"))


if __name__ == "__main__":
    main()
