"""Interconnection through a network behaviour, and rebuilding from projections.

The network is itself a behaviour over all subsystem variables: wiring two
variables together is the diagonal relation, a switch is a union of wirings,
and "no interconnection" is the full space.  The composed behaviour can be
recovered exactly from the subsystems' local observations plus the network.
"""

import trajkit as tk

space = tk.signal_space(1, left=(0, 1), right=(0, 1), tap=(0, 1))

# Three one-variable subsystems.
left = tk.make_behaviour(space.subspace(["left"]), [{"left": (0,)}, {"left": (1,)}])
right = tk.make_behaviour(space.subspace(["right"]), [{"right": (1,)}])
tap = tk.full_space(space.subspace(["tap"]))

# A switch: the tap either mirrors the left signal or the right signal.
mirror_left = tk.product(
    tk.equality_behaviour(space, ["left", "tap"]),
    tk.full_space(space.subspace(["right"])),
)
mirror_right = tk.product(
    tk.equality_behaviour(space, ["right", "tap"]),
    tk.full_space(space.subspace(["left"])),
)
switch = tk.union(mirror_left, mirror_right)
print("switch network rows:", len(switch))

system = tk.InterconnectedSystem([left, right, tap], switch)
composed = tk.compose(system)
print("\ncomposed behaviour:")
print(composed.canonical_text())

# Local observations: what each subsystem sees once interconnected.
projections = [tk.local_projection(system, i) for i in range(3)]
for sub, proj in zip(system.subsystems, projections):
    print(f"local view of {sub.space.names}: {len(proj)} of {len(sub)} rows")

# The projections plus the network recover the composition exactly.
rebuilt = tk.reconstruct_from_projections(projections, switch)
print("\nreconstruction equals composition:", rebuilt == composed)

# Hybrid: keep the first subsystem's full behaviour, projections for the rest.
hybrid = tk.reconstruct_hybrid([left], projections[1:], switch)
print("hybrid reconstruction equals composition:", hybrid == composed)
