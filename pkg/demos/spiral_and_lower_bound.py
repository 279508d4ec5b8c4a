"""The quadratic baseline and why tiny hints cannot beat it.

A square spiral finds any treasure at distance D in time proportional to D^2.
Against an adversary whose i-th hint rules out only a 2^-i wedge, any walk of
length D^2 / 2 leaves part of the disc both unseen and consistent with every
hint, so a treasure placed there has not been found.

Run with ``python3 demos/spiral_and_lower_bound.py [out.svg]``.
"""

# %%
import json
import math
import sys

from angular_hunt import Episode, export_episode, lower_bound_walk, spiral_search
from angular_hunt.render import render_svg

# %% [markdown]
# Spiral cost over D^2 settles to a constant.

# %%
for D in (4, 8, 16, 32, 64, 128):
    worst = max(spiral_search(Episode((D * math.cos(t), D * math.sin(t)))).cost for t in (0.3, 1.9, 3.5, 5.1))
    print(f"D={D:4d} cost/D^2={worst / D**2:.2f}")

# %% [markdown]
# Audit a walk of length D^2 / 2 at D = 20.

# %%
ep, rep = lower_bound_walk(20.0, samples=400_000)
print(json.dumps({k: v for k, v in rep.to_dict().items() if k != "witness"}, indent=1))
print("witness:", rep.witness, "consistent with every hint and never seen")

# %%
if len(sys.argv) > 1:
    record = json.loads(json.dumps(export_episode(ep).to_dict()))
    with open(sys.argv[1], "w") as fh:
        fh.write(render_svg(record))
    print("wrote", sys.argv[1])
