"""Reproducible figure datasets from the command line interface.

`movingwell figures` writes the five standard datasets (moving box,
Poschl-Teller, and three confluent wells at omega = 0.4, -1, 0; densities at
t = 1/4, 1/2, 3/4, 1) as plain CSV plus a manifest for exact reruns.  This
script drives the same code through the Python API, then re-plots one of the
datasets straight from the emitted file, the way an external plotting
pipeline would.
"""

import csv
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from movingwell.cli import main as movingwell_cli

out = Path("figure_data")
code = movingwell_cli(["figures", "--points", "1201", "--out", str(out)])
assert code == 0
print(f"figure datasets written under {out}/")
for sub in sorted(out.iterdir()):
    if sub.is_dir():
        files = sorted(p.name for p in sub.glob("*.csv"))
        print(f"  {sub.name}: {', '.join(files)}")

manifest = json.loads((out / "fig3" / "manifest.json").read_text())
print(f"\nfig3 manifest: states {manifest['parameters']['states']}, "
      f"omega={manifest['parameters']['omega']}")

# plot fig3 purely from the emitted CSV files
fig, axes = plt.subplots(2, 2, figsize=(9, 6))
styles = {"n1": ("state 1", "tab:blue"), "eps": ("missing state", "tab:purple"),
          "n3": ("state 3", "tab:olive")}
for path in sorted((out / "fig3").glob("*.csv")):
    key = path.stem.rsplit("_", 1)[-1]
    label, color = styles[key]
    rows = list(csv.DictReader(path.open()))
    by_t = {}
    for r in rows:
        by_t.setdefault(float(r["t"]), []).append((float(r["x"]), float(r["density"])))
    for ax, (t, pts) in zip(axes.ravel(), sorted(by_t.items())):
        xs, ds = zip(*pts)
        ax.plot(xs, ds, color=color, label=label)
        ax.set_title(f"t = {t}")
        ax.set_xlabel("x")
for ax in axes.ravel():
    ax.legend(fontsize=8)
fig.suptitle("confluent well m=2, omega=0.4: normalized densities")
fig.tight_layout()
fig.savefig("confluent_densities_from_csv.png", dpi=130)
print("wrote confluent_densities_from_csv.png")
