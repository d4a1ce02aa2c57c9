"""Run the default Monte-Carlo campaign and write its CSV."""
import argparse
import time
from dataclasses import replace
from pathlib import Path

from wiretap_ic.claims import CAMPAIGN
from wiretap_ic.simulation import run_montecarlo, write_records


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--output", default="results/campaign.csv")
    ap.add_argument("--seed", type=int, default=CAMPAIGN.seed)
    ap.add_argument("--trials", type=int, default=CAMPAIGN.trials)
    ap.add_argument("--averaging", choices=("paired", "per-cell"), default=CAMPAIGN.averaging)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    cfg = replace(CAMPAIGN, seed=args.seed, trials=args.trials, averaging=args.averaging)
    out = Path(args.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    t = time.perf_counter()
    records = run_montecarlo(cfg, workers=args.workers)
    write_records(records, out)
    print(f"{len(records)} cells, {cfg.trials} trials each, written to {out} in {time.perf_counter() - t:.1f} s")


if __name__ == "__main__":
    main()
