"""The moving square well: exact states of a box whose wall runs away.

A particle in a box of length L has the familiar sine eigenfunctions.  When
one wall moves with constant velocity 4L, a point transformation produces
exact solutions on the growing interval (0, ell(t)), ell(t) = L(4t+1): the
same sines squeezed into the current width, dressed with a quadratic phase
that encodes the local flow.

This script plots the first three probability densities at four times and
prints the conserved quantities.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from movingwell import (
    WellConfig,
    instantaneous_energy,
    moving_box_state,
    norm,
    wall_position,
)

cfg = WellConfig(L=1.0)
times = (0.25, 0.5, 0.75, 1.0)

fig, axes = plt.subplots(2, 2, figsize=(9, 6), sharey=True)
for ax, t in zip(axes.ravel(), times):
    l = wall_position(t, cfg)
    x = np.linspace(0.0, l, 800)
    for n, color in ((1, "tab:blue"), (2, "tab:purple"), (3, "tab:olive")):
        density = np.abs(moving_box_state(n, x, t, cfg)) ** 2
        ax.plot(x, density, color=color, label=f"n={n}")
    ax.axvline(l, color="gray", lw=2)
    ax.set_title(f"t = {t}, wall at {l:g}")
    ax.set_xlabel("x")
axes[0, 0].set_ylabel(r"$|\psi_n|^2$")
axes[0, 0].legend()
fig.tight_layout()
fig.savefig("expanding_box_densities.png", dpi=130)
print("wrote expanding_box_densities.png")

print("\nwall motion is linear: ell(t) = L(4t+1)")
for t in times:
    print(f"  t={t:4}: ell={wall_position(t, cfg):4g}", end="")
    print(f"  norm(n=1)={norm(lambda x, tt: moving_box_state(1, x, tt, cfg), t, cfg):.12f}",
          end="")
    print(f"  E_inst(n=1)={instantaneous_energy(1, t, cfg):.6f}")

print("\nthe states stay normalized while the instantaneous energy decays as 1/ell^2")
