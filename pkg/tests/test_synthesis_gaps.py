"""Boundary cases of the synthesis construction, pinned as regression facts.

The closed-form existence check and the retained-controller construction are
sound: whenever the check passes, the produced controllers implement the
produced controlled behaviour and meet every objective.  They are not
complete: the construction can discard controller trajectories that are
provably safe, which makes the existence check conservative and the
controlled behaviour sometimes smaller than the true optimum.  The instances
below witness each boundary exactly; the exhaustive oracle is the ground
truth.  The engine surfaces the boundary through ``construction_tight`` and
``unused_safe_controllers`` instead of guessing.
"""

import trajkit as tk
from conftest import beh, scalar_problem, scalar_values


def test_existence_check_is_conservative():
    # Plant value 1 reaches the controller through two wires: one shared with
    # the forbidden value 2 (controller value 0) and one private (controller
    # value 1).  The construction discards plant value 1 wholesale, ends with
    # nothing, and reports non-existence; yet the family {1} is valid.
    problem = scalar_problem(
        p_alphabet=(0, 1, 2),
        c_alphabet=(0, 1),
        plant_values=[0, 1, 2],
        requirement_values=[0, 1],
        coupling_pairs=[(0, 0), (1, 0), (2, 0), (1, 1)],
    )
    result = tk.synthesize(problem)
    assert not result.exists
    assert result.aux.retained.is_empty

    solution = tk.exhaustive_necessity_oracle(problem)
    assert solution is not None
    assert scalar_values(solution.controllers[0]) == [1]
    assert scalar_values(solution.achieved) == [1]
    report = tk.check_requirements(
        solution.achieved, problem, solution.controllers
    )
    assert report.ok

    # the diagnostic points exactly at the overlooked controller trajectory
    assert not result.construction_tight
    assert scalar_values(result.unused_safe_controllers) == [1]


def test_controlled_behaviour_can_undershoot_the_optimum():
    # Same wiring plus a private plant value 3 on controller value 2, so the
    # existence check passes; the construction still loses plant value 1.
    problem = scalar_problem(
        p_alphabet=(0, 1, 2, 3),
        c_alphabet=(0, 1, 2),
        plant_values=[0, 1, 2, 3],
        requirement_values=[0, 1, 3],
        coupling_pairs=[(0, 0), (1, 0), (2, 0), (1, 1), (3, 2)],
    )
    result = tk.synthesize(problem)
    assert result.exists
    assert scalar_values(result.controlled) == [3]
    assert scalar_values(result.controllers[0]) == [2]
    # returned controllers do implement the returned behaviour exactly
    achieved = tk.implement(
        result.plant_behaviour,
        result.controllers,
        problem.controller_network,
        problem.coupling_network,
    )
    assert achieved == result.controlled

    # but a larger controlled behaviour is implementable
    assert not result.construction_tight
    assert scalar_values(result.unused_safe_controllers) == [1]
    wider = tk.union(
        tk.project(result.aux.retained, ["c"]), result.unused_safe_controllers
    )
    wider_achieved = tk.implement(
        result.plant_behaviour,
        [wider],
        problem.controller_network,
        problem.coupling_network,
    )
    assert scalar_values(wider_achieved) == [1, 3]
    assert tk.check_requirements(wider_achieved, problem, [wider]).ok
    assert tk.is_subset(result.controlled, wider_achieved)
    assert result.controlled != wider_achieved


def test_block_split_can_overshoot_without_a_correlating_network():
    # The retained controller set {(0,0), (1,1)} is not a product set; with an
    # unconstraining controller network the per-block controllers jointly
    # admit the stray pair (0,1), which revives the forbidden plant value 2.
    sp = tk.signal_space(1, p=(0, 1, 2), c1=(0, 1), c2=(0, 1))
    p_space = sp.subspace(["p"])
    c_space = sp.subspace(["c1", "c2"])
    plant = tk.InterconnectedSystem([tk.full_space(p_space)], tk.full_space(p_space))
    coupling = beh(
        sp,
        {"p": (0,), "c1": (0,), "c2": (0,)},
        {"p": (1,), "c1": (1,), "c2": (1,)},
        {"p": (2,), "c1": (0,), "c2": (1,)},
    )
    problem = tk.SynthesisProblem(
        plant=plant,
        requirement=beh(p_space, ((0,),), ((1,),)),
        controller_network=tk.full_space(c_space),
        restriction=tk.full_space(c_space),
        coupling_network=coupling,
        controller_partition=(("c1",), ("c2",)),
    )
    result = tk.synthesize(problem)
    assert result.exists
    assert scalar_values(result.controlled) == [0, 1]
    assert result.partition_exact is False

    achieved = tk.implement(
        result.plant_behaviour,
        result.controllers,
        problem.controller_network,
        problem.coupling_network,
    )
    assert set(scalar_values(achieved)) == {0, 1, 2}
    assert not tk.check_requirements(achieved, problem, result.controllers).ok

    # a single controller over both variables implements the target exactly
    joint = tk.project(result.aux.retained, ["c1", "c2"])
    single_problem = tk.SynthesisProblem(
        plant=plant,
        requirement=problem.requirement,
        controller_network=problem.controller_network,
        restriction=problem.restriction,
        coupling_network=coupling,
        controller_partition=(("c1", "c2"),),
    )
    single = tk.implement(
        result.plant_behaviour,
        [joint],
        problem.controller_network,
        problem.coupling_network,
    )
    assert single == result.controlled
    assert tk.check_requirements(single, single_problem, [joint]).ok
