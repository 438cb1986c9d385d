"""The exhaustive controller search as ground truth.

The closed-form existence check is sufficient: when it passes, the produced
controllers work.  It is not necessary.  In this instance, plant value 1
reaches the controller through a wire shared with the forbidden value 2 and
through a private wire; the closed-form construction discards value 1
wholesale and reports failure, while brute-force enumeration of all
controller families finds a working one.  The result diagnostics point at
exactly the controller trajectory the construction left unused.
"""

import trajkit as tk

space = tk.signal_space(1, p=(0, 1, 2), c=(0, 1))
p_space, c_space = space.subspace(["p"]), space.subspace(["c"])

problem = tk.SynthesisProblem(
    plant=tk.InterconnectedSystem([tk.full_space(p_space)], tk.full_space(p_space)),
    requirement=tk.make_behaviour(p_space, [{"p": (0,)}, {"p": (1,)}]),
    controller_network=tk.full_space(c_space),
    restriction=tk.full_space(c_space),
    coupling_network=tk.make_behaviour(
        space,
        [
            {"p": (0,), "c": (0,)},
            {"p": (1,), "c": (0,)},  # shared with the forbidden value below
            {"p": (2,), "c": (0,)},
            {"p": (1,), "c": (1,)},  # private, safe wire for value 1
        ],
    ),
)

result = tk.synthesize(problem)
print("closed-form existence check passed:", result.exists)
print("construction tight:", result.construction_tight)
print("safe controller rows the construction did not use:")
print(result.unused_safe_controllers.canonical_text())

solution = tk.exhaustive_necessity_oracle(problem)
print("exhaustive search found a family:", solution is not None)
print("controller found:")
print(solution.controllers[0].canonical_text())
print("achieved controlled behaviour:")
print(solution.achieved.canonical_text())
print("objectives met:", tk.check_requirements(
    solution.achieved, problem, solution.controllers
).ok)

# The search is capped; asking for the impossible raises instead of spinning.
try:
    tk.exhaustive_necessity_oracle(problem, tk.OracleCaps(block_rows=1))
except tk.SearchSpaceTooLarge as exc:
    print("cap guard:", exc)
