"""Shared helpers for building small behaviours tersely in tests."""

import trajkit as tk


def beh(space, *rows):
    """Behaviour from rows given as dicts or aligned per-variable sequences."""
    return tk.make_behaviour(space, rows)


def scalars(space, name, values):
    """One-variable behaviour over ``name`` with horizon-1 scalar values."""
    return tk.make_behaviour(space.subspace([name]), [{name: (v,)} for v in values])


def scalar_values(behaviour):
    """Values of a one-variable, horizon-1 behaviour, in canonical order."""
    assert len(behaviour.space.variables) == 1
    assert behaviour.space.horizon == 1
    return [row[0][0] for row in behaviour.rows]


def named_rows(behaviour):
    """Rows as dicts keyed by variable name (order-independent comparisons)."""
    names = behaviour.space.names
    return [
        {n: seq for n, seq in zip(names, row)} for row in behaviour.rows
    ]


def row_set(behaviour):
    """Rows as a set of ((name, seq), ...) items, for naive-oracle comparison."""
    names = behaviour.space.names
    return {tuple(zip(names, row)) for row in behaviour.rows}


def scalar_problem(
    p_alphabet,
    c_alphabet,
    plant_values,
    requirement_values,
    coupling_pairs,
    admissible_values=None,
    free_vars=(),
):
    """A one-plant-variable, one-controller-variable problem at horizon 1.

    ``coupling_pairs`` are (plant value, controller value) pairs.
    """
    sp = tk.signal_space(1, p=tuple(p_alphabet), c=tuple(c_alphabet))
    p_space, c_space = sp.subspace(["p"]), sp.subspace(["c"])
    plant_sub = tk.make_behaviour(p_space, [{"p": (v,)} for v in plant_values])
    plant = tk.InterconnectedSystem([plant_sub], tk.full_space(p_space))
    requirement = tk.make_behaviour(p_space, [{"p": (v,)} for v in requirement_values])
    restriction = (
        tk.full_space(c_space)
        if admissible_values is None
        else tk.make_behaviour(c_space, [{"c": (v,)} for v in admissible_values])
    )
    coupling = tk.make_behaviour(
        sp, [{"p": (p,), "c": (c,)} for p, c in coupling_pairs]
    )
    return tk.SynthesisProblem(
        plant=plant,
        requirement=requirement,
        controller_network=tk.full_space(c_space),
        restriction=restriction,
        coupling_network=coupling,
        free_vars=free_vars,
        controller_partition=(("c",),),
    )
