"""Reproduce the travel-savings tables: k-buffer planning vs one buffer.

Runs the pipeline planner over 1D and 2D sweeps, writes the raw results
CSV plus the aggregated travel-ratio table for each dimension.  With the
default 30 trials this takes a few minutes on one core.
"""

import argparse
from pathlib import Path

from latticeswap.bench import (
    report_savings,
    run_sweep,
    sweep_cases,
    write_results_csv,
    write_savings_csv,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=30)
    parser.add_argument("--seed", type=int, default=20260819)
    parser.add_argument("--out-dir", default="results")
    args = parser.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    for dim, ks, baseline in ((1, [1, 2, 3, 4, 5], "switch"), (2, [1, 2, 3], "2d-greedy")):
        algos = [baseline, "dp"]
        cases = sweep_cases(
            dims=[dim],
            ms=[50, 100, 200],
            ks=ks,
            algos=algos,
            trials=args.trials,
            timeout_s=600.0,
        )
        # the single-buffer baseline ignores k; only run it once per instance
        cases = [c for c in cases if c.algo == "dp" or c.k == 1]
        rows = run_sweep(cases, args.seed)
        write_results_csv(rows, str(out / f"trends_{dim}d.csv"))
        table = report_savings(rows, baseline_algo=baseline, baseline_k=1)
        write_savings_csv(table, str(out / f"savings_{dim}d.csv"))
        print(f"{dim}D: {len(rows)} runs")
        for entry in table:
            if entry["algo"] == "dp":
                print(
                    f"  m={entry['m']:<4} k={entry['k']}  travel ratio "
                    f"{entry['ratio_mean']} +- {entry['ratio_std']} ({entry['samples']} trials)"
                )


if __name__ == "__main__":
    main()
