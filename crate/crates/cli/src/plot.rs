/// Standalone matplotlib script that renders `results.csv` next to it.
pub const SCRIPT: &str = r#"#!/usr/bin/env python3
"""Plot MSE curves from results.csv (written by `linest run`)."""
import csv
import os
import sys
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
path = sys.argv[1] if len(sys.argv) > 1 else os.path.join(here, "results.csv")

curves = defaultdict(list)
sweep = None
with open(path, newline="") as f:
    for row in csv.DictReader(f):
        sweep = row["sweep_name"]
        if row["mean_mse"] == "":
            continue
        curves[row["estimator"]].append(
            (float(row["sweep_value"]), float(row["mean_mse"]), float(row["std_err"]))
        )

fig, ax = plt.subplots(figsize=(6, 4))
for name, points in curves.items():
    points.sort()
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    errs = [p[2] for p in points]
    ax.errorbar(xs, ys, yerr=errs, marker="o", markersize=3, capsize=2, label=name)
ax.set_xscale("log")
ax.set_yscale("log")
ax.set_xlabel("SNR (1/sigma^2)" if sweep == "snr" else "training samples n_t")
ax.set_ylabel("MSE")
ax.grid(True, which="both", alpha=0.3)
ax.legend()
fig.tight_layout()
out = os.path.join(os.path.dirname(os.path.abspath(path)), "mse.png")
fig.savefig(out, dpi=150)
print(out)
"#;
