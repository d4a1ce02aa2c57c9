"""Plot campaign averages from a CSV written by run_campaign.py or the montecarlo command."""
import argparse
from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from wiretap_ic.simulation import read_records  # noqa: E402

STYLE = {"altruistic": "-o", "egoistic": "--s", "single-user": ":^"}


def _series(records, field, scenario, gamma, pmax2):
    pts = sorted((r.pmax1, getattr(r, field)) for r in records
                 if r.scenario == scenario and r.gamma == gamma and r.pmax2 == pmax2)
    return [p for p, _ in pts], [v for _, v in pts]


def versus_pmax1(records, field, ylabel, scenarios, gamma, out):
    fig, ax = plt.subplots(figsize=(6, 4))
    for pmax2 in sorted({r.pmax2 for r in records}):
        for scen in scenarios:
            x, y = _series(records, field, scen, gamma, pmax2)
            if x:
                ax.plot(x, y, STYLE[scen], label=f"{scen}, pmax2={pmax2:g}")
    ax.set_xscale("log", base=2)
    ax.set_xlabel("pmax1")
    ax.set_ylabel(ylabel)
    ax.set_title(f"gamma = {gamma:g}")
    ax.grid(alpha=0.3)
    ax.legend(fontsize=7, ncol=2)
    fig.tight_layout()
    fig.savefig(out, dpi=120)
    plt.close(fig)


def efficiency_by_gamma(records, out):
    diag = defaultdict(list)
    for r in records:
        if r.pmax1 == r.pmax2 and r.scenario in ("altruistic", "single-user"):
            diag[(r.scenario, r.gamma)].append((r.pmax1, r.avg_energy_efficiency))
    fig, ax = plt.subplots(figsize=(6, 4))
    for (scen, gamma), pts in sorted(diag.items()):
        pts.sort()
        label = scen if scen == "single-user" else f"{scen}, gamma={gamma:g}"
        if scen == "single-user" and gamma != min(g for s, g in diag if s == scen):
            continue  # the benchmark does not depend on gamma
        ax.plot([p for p, _ in pts], [v for _, v in pts], STYLE[scen], label=label)
    ax.set_xscale("log", base=2)
    ax.set_xlabel("pmax1 = pmax2")
    ax.set_ylabel("avg secrecy energy efficiency")
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out, dpi=120)
    plt.close(fig)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv")
    ap.add_argument("--outdir", default="figures")
    ap.add_argument("--gamma", type=float, default=1.0)
    args = ap.parse_args()
    records = read_records(args.csv)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    both = ("altruistic", "egoistic")
    versus_pmax1(records, "avg_secrecy", "avg secrecy rate", both, args.gamma, outdir / "secrecy.png")
    versus_pmax1(records, "avg_p1", "avg P1", both + ("single-user",), args.gamma, outdir / "power_p1.png")
    versus_pmax1(records, "avg_p2", "avg P2", both, args.gamma, outdir / "power_p2.png")
    versus_pmax1(records, "avg_excess_sinr", "avg excess SINR at D2", ("altruistic",), args.gamma,
                 outdir / "excess_sinr.png")
    efficiency_by_gamma(records, outdir / "efficiency.png")
    print(f"figures written to {outdir}/")


if __name__ == "__main__":
    main()
