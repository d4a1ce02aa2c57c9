"""Check the qualitative campaign claims.

With a CSV argument only the averaged records are checked; without one the
campaign is re-run so the per-draw checks can use the individual outcomes.
Exits 1 if any claim fails.
"""
import argparse
import sys

from wiretap_ic.claims import CAMPAIGN, check_claims
from wiretap_ic.simulation import SimulationRecord, draw_channels, read_records, run_cells


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("csv", nargs="?", help="campaign CSV from run_campaign.py")
    args = ap.parse_args()

    if args.csv:
        results = check_claims(read_records(args.csv))
    else:
        channels = draw_channels(CAMPAIGN.seed, CAMPAIGN.trials)
        cells = run_cells(CAMPAIGN, channels)
        records = sorted((c.record for c in cells), key=SimulationRecord.sort_key)
        results = check_claims(records, cells, channels)
    for r in results:
        print(f"[{'PASS' if r.passed else 'FAIL'}] {r.label}: {r.detail}")
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
