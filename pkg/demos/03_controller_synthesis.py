"""Distributed controller synthesis over a lossy plant/controller link.

The plant can sit at 0, 1 or 2; the requirement forbids 2.  The controller
only sees a one-bit signal, and the link maps both plant values 1 and 2 onto
the same controller value.  Keeping plant value 1 would therefore also admit
the forbidden 2, so the synthesized controller keeps 0 alone: value 1 is
sacrificed to indistinguishability.
"""

import trajkit as tk

space = tk.signal_space(1, p=(0, 1, 2), c=(0, 1))
p_space, c_space = space.subspace(["p"]), space.subspace(["c"])

plant = tk.InterconnectedSystem([tk.full_space(p_space)], tk.full_space(p_space))
requirement = tk.make_behaviour(p_space, [{"p": (0,)}, {"p": (1,)}])
link = tk.make_behaviour(
    space,
    [
        {"p": (0,), "c": (0,)},
        {"p": (1,), "c": (1,)},
        {"p": (2,), "c": (1,)},  # the lossy part: 1 and 2 look alike
    ],
)
problem = tk.SynthesisProblem(
    plant=plant,
    requirement=requirement,
    controller_network=tk.full_space(c_space),
    restriction=tk.full_space(c_space),
    coupling_network=link,
)

result = tk.synthesize(problem)
print("existence check passed:", result.exists)
print("fast path:", result.fast_path)

print("\ndesired joint behaviour:")
print(result.desired.canonical_text())
print("excluded (desired plant rows reachable through tainted controller rows):")
print(result.aux.excluded.canonical_text())
print("controlled behaviour actually implementable:")
print(result.controlled.canonical_text())
print("controller behaviour:")
print(result.controllers[0].canonical_text())

# The independent implementation check: interconnect the produced controller
# with the plant and project.  It reproduces the controlled behaviour exactly.
achieved = tk.implement(
    result.plant_behaviour,
    result.controllers,
    problem.controller_network,
    problem.coupling_network,
)
print("independent implementation agrees:", achieved == result.controlled)
report = tk.check_requirements(achieved, problem, result.controllers)
print("objectives met:", report.ok)

# Every plant value is someone's indistinguishable companion here.
companions = tk.multiplicity_set(problem, result.desired, result.plant_behaviour)
print("plant rows sharing a controller image with the desired set:")
print(companions.canonical_text())
