"""The biparametric confluent wells: seeds with nodes are allowed.

A single SUSY step needs a nodeless seed, which limits it to the ground
state.  The confluent second step reuses one seed state (index m, nodes and
all) and adds a real constant omega; the construction stays regular as long
as omega + integral_0^x |u|^2 stays away from zero, i.e. omega outside
(-1, 0).  The result is a two-parameter family of moving wells:

* generic omega: sharp walls on both sides, a square-integrable extra state
  (the "missing state") with norm^2 = 1/(omega(omega+1));
* omega = 0 or -1: one wall becomes a smooth 6/x^2-type shoulder and the
  missing state loses normalizability.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from movingwell import (
    ConfluentConfig,
    WellConfig,
    confluent_missing_state,
    confluent_well_potential,
    confluent_well_state,
    norm,
    wall_position,
)
from movingwell.errors import RegularityViolationError

cfg = WellConfig()
t = 0.25
l = wall_position(t, cfg)
grid = np.linspace(0.005 * l, 0.995 * l, 900)

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
for omega, color in ((0.4, "tab:gray"), (-1.0, "tab:red"), (0.0, "tab:green"),
                     (10.0, "tab:brown")):
    cc = ConfluentConfig(m=2, omega=omega)
    ax1.plot(grid, confluent_well_potential(grid, t, cfg, cc), color=color,
             label=f"omega={omega}")
ax1.set_ylim(-60, 130)
ax1.set_xlabel("x")
ax1.set_title(f"confluent wells, m=2, t={t}")
ax1.legend()

cc = ConfluentConfig(m=2, omega=0.4)
for selector, color in (("1", "tab:blue"), ("eps", "tab:purple"), ("3", "tab:olive")):
    if selector == "eps":
        state = lambda x, tt: confluent_missing_state(x, tt, cfg, cc)
    else:
        n = int(selector)
        state = lambda x, tt: confluent_well_state(n, x, tt, cfg, cc)
    density = np.abs(state(grid, t)) ** 2 / norm(state, t, cfg)
    ax2.plot(grid, density, color=color, label=f"state {selector}")
ax2.set_xlabel("x")
ax2.set_title("normalized densities, omega=0.4")
ax2.legend()
fig.tight_layout()
fig.savefig("confluent_wells.png", dpi=130)
print("wrote confluent_wells.png")

print("\nmissing-state norm has the closed form 1/(omega(omega+1)):")
for omega in (0.4, 2.0, -3.0):
    cc = ConfluentConfig(m=2, omega=omega)
    got = norm(lambda x, tt: confluent_missing_state(x, tt, cfg, cc), t, cfg,
               panels=256)
    print(f"  omega={omega:5}: quadrature {got:.10f} vs exact "
          f"{1 / (omega * (omega + 1)):.10f}")

print("\nomega in (-1, 0) is rejected up front:")
try:
    confluent_well_potential(grid, t, cfg, ConfluentConfig(m=2, omega=-0.5))
except RegularityViolationError as exc:
    print(f"  RegularityViolationError: {exc}")
