"""Behaviours are finite trajectory sets over named variables.

Build a space, enumerate behaviours, restrict horizons, project variables
away, and ask the two structural questions: is a variable free, and is one
variable group observable from another?
"""

import trajkit as tk

# Two variables over horizon 2: a water valve (open/closed) and a level flag.
space = tk.signal_space(2, valve=(0, 1), level=("lo", "hi"))
print("space:", ", ".join(v.name for v in space.variables), "horizon", space.horizon)
print("conforming trajectories:", space.trajectory_count())

# A behaviour is just a set of rows; construction dedups, validates and sorts.
plant = tk.make_behaviour(
    space,
    [
        {"valve": (0, 0), "level": ("lo", "lo")},
        {"valve": (0, 1), "level": ("lo", "hi")},
        {"valve": (1, 1), "level": ("hi", "hi")},
        {"valve": (0, 0), "level": ("lo", "lo")},  # duplicate, dropped
    ],
)
print("\nplant behaviour in canonical form:")
print(plant.canonical_text())

# Prefix restriction: what the same system looks like over a shorter window.
short = tk.restrict(plant, 1)
print("restricted to one step:")
print(short.canonical_text())

# Projection drops variables, keeping whatever combinations occurred.
levels = tk.project(plant, ["level"])
print("level component:")
print(levels.canonical_text())

# Freeness: can the valve follow any trajectory?  Here it cannot: the
# valve never closes again after opening.
print("valve free in the plant:", tk.is_free(plant, ["valve"]))
print("valve trajectories seen: ", len(tk.project(plant, ["valve"])), "of",
      tk.full_space(space.subspace(["valve"])).rows.__len__())

# Observability: each level trajectory pins the valve trajectory.
print("valve observable from level:", tk.is_observable(plant, ["valve"], ["level"]))
