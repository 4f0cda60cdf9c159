"""Walkthrough: the Gaussian-noise sweep benchmark, in miniature.

Runs the Pattern 1 harness on a reduced grid and prints the mean rrse per
method as sigma rises. Heavy noise is where the spread between methods
opens up; the raw observation degrades linearly while the denoisers bend
the curve. The full-size sweep is one CLI call:

    tarst bench-p1 --out p1.csv
"""

import tempfile
from pathlib import Path

import numpy as np

from tarst.bench import Pattern1Config, mean_rrse_by_cell, run_pattern1, write_csv

cfg = Pattern1Config(
    shape=(10, 10, 10),
    true_ranks=(3, 3, 3),
    sigma_grid=tuple(float(s) for s in np.logspace(-1, 1, 7)),
    reps=5,
    seed=0,
)
print(f"shape {cfg.shape}, ranks {cfg.true_ranks}, mean {cfg.true_mean}, "
      f"std {cfg.true_std}, {cfg.reps} reps per cell")

records = run_pattern1(cfg)
means = mean_rrse_by_cell(records)

header = f"{'sigma':>8}" + "".join(f"{m:>12}" for m in cfg.methods)
print("\nmean rrse over reps")
print(header)
for sigma in cfg.sigma_grid:
    row = f"{sigma:>8.3f}"
    for method in cfg.methods:
        row += f"{means[(method, sigma, None, None)]:>12.4f}"
    print(row)

# Every trial seed is derived from (master seed, cell indices), so rerunning
# this script reproduces the numbers above exactly, and the CSV is the same
# file row for row apart from wall-clock timings.
with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp) / "p1_demo.csv"
    write_csv(records, out)
    lines = out.read_text().splitlines()
    print(f"\nwrote {len(lines) - 1} records; first two rows:")
    for line in lines[:3]:
        print(" ", line)

# What the TARST column was doing internally: rank estimates fall with
# noise until nothing survives thresholding.
print("\nTARST median estimated ranks per sigma:")
for sigma in cfg.sigma_grid:
    cell_ranks = [r.estimated_ranks for r in records
                  if r.method == "TARST" and r.sigma == sigma]
    med = tuple(int(v) for v in np.median(np.array(cell_ranks), axis=0))
    print(f"  sigma {sigma:>7.3f}: {med}")
