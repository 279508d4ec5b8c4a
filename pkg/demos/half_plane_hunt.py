"""Hunting with half-plane hints.

Every hint is a half-plane through the agent's position that contains the
treasure. The hunt doubles a search square each phase and shrinks it with
rectangle reductions, so the total cost grows linearly with the distance.

Run with ``python3 demos/half_plane_hunt.py``.
"""

# %%
import math

import numpy as np

from angular_hunt import Episode, HalfPlaneAdversary, treasure_hunt_halfplane

# %% [markdown]
# One hunt against the adversary that answers with the least informative
# direction (perpendicular to the line towards the treasure).

# %%
treasure = (37.0, -12.5)
ep = Episode(treasure, HalfPlaneAdversary(treasure, "perpendicular_worst"))
report = treasure_hunt_halfplane(ep)
print(f"found={report.found} cost={report.cost:.1f} hints={len(ep.trajectory.hint_events)}")
for phase in report.phases:
    print(f"  phase {phase['phase']}: cost {phase['cost']:.1f}")

# %% [markdown]
# Cost divided by distance stays flat as the distance grows.

# %%
print(f"{'D':>8} {'worst':>8} {'random':>8} {'fixed':>8}")
for D in np.geomspace(2, 1024, 8):
    row = []
    for strategy in ("perpendicular_worst", "random_honest", "fixed_direction"):
        ratios = []
        for seed in range(5):
            z = (D * math.cos(seed + 0.3), D * math.sin(seed + 0.3))
            adv = HalfPlaneAdversary(z, strategy, seed=seed, theta=0.7)
            ratios.append(treasure_hunt_halfplane(Episode(z, adv)).cost / D)
        row.append(max(ratios))
    print(f"{D:8.1f} " + " ".join(f"{r:8.1f}" for r in row))
