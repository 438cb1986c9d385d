import itertools
import random

import pytest

import trajkit as tk
from conftest import beh, row_set


def naive_compose(system):
    """Independent oracle: materialize the full subsystem product, then filter
    by network membership.  Works on name-keyed row items, not engine ops."""
    factor_rows = [row_set(sub) for sub in system.subsystems]
    network_rows = row_set(system.network)
    joined = set()
    for combo in itertools.product(*factor_rows):
        merged = dict(item for part in combo for item in part)
        key = tuple(sorted(merged.items()))
        if key in network_rows:
            joined.add(key)
    return joined


@pytest.fixture
def equality_system():
    sp = tk.signal_space(1, w1=(0, 1), w2=(0, 1))
    sub1 = beh(sp.subspace(["w1"]), ((0,),), ((1,),))
    sub2 = beh(sp.subspace(["w2"]), ((0,),))
    network = tk.equality_behaviour(sp, ["w1", "w2"])
    return tk.InterconnectedSystem([sub1, sub2], network)


def test_compose_equality_network(equality_system):
    composed = tk.compose(equality_system)
    # independent enumeration: 2 x 1 product, filtered by the network
    assert naive_compose(equality_system) == row_set(composed)
    assert row_set(composed) == {(("w1", (0,)), ("w2", (0,)))}


def test_compose_full_network_is_product():
    sp = tk.signal_space(1, w1=(0, 1), w2=(0, 1))
    sub1 = beh(sp.subspace(["w1"]), ((0,),), ((1,),))
    sub2 = beh(sp.subspace(["w2"]), ((1,),))
    system = tk.InterconnectedSystem([sub1, sub2], tk.full_space(sp))
    assert tk.compose(system) == tk.product(sub1, sub2)


def test_compose_empty_subsystem_annihilates():
    sp = tk.signal_space(1, w1=(0, 1), w2=(0, 1))
    sub1 = beh(sp.subspace(["w1"]))
    sub2 = tk.full_space(sp.subspace(["w2"]))
    system = tk.InterconnectedSystem([sub1, sub2], tk.full_space(sp))
    assert tk.compose(system).is_empty


def test_system_validation():
    sp = tk.signal_space(1, w1=(0, 1), w2=(0, 1))
    sub1 = tk.full_space(sp.subspace(["w1"]))
    with pytest.raises(tk.SchemaMismatch):
        tk.InterconnectedSystem([sub1], tk.full_space(sp))
    with pytest.raises(tk.VariableClash):
        tk.InterconnectedSystem([sub1, sub1], tk.full_space(sp))
    other = tk.signal_space(1, w1=(0, 1, 2)).subspace(["w1"])
    with pytest.raises(tk.SchemaMismatch):
        tk.InterconnectedSystem(
            [tk.full_space(other), tk.full_space(sp.subspace(["w2"]))], tk.full_space(sp)
        )
    deeper = tk.signal_space(2, w1=(0, 1))
    with pytest.raises(tk.HorizonMismatch):
        tk.InterconnectedSystem(
            [tk.full_space(deeper), tk.full_space(sp.subspace(["w2"]))], tk.full_space(sp)
        )


def test_reconstruct_from_projections_equality_example(equality_system):
    composed = tk.compose(equality_system)
    projections = [
        tk.local_projection(equality_system, i)
        for i in range(len(equality_system.subsystems))
    ]
    assert [row_set(p) for p in projections] == [
        {(("w1", (0,)),)},
        {(("w2", (0,)),)},
    ]
    rebuilt = tk.reconstruct_from_projections(projections, equality_system.network)
    assert rebuilt == composed


def test_reconstruct_empty_projection(equality_system):
    empty = tk.make_behaviour(equality_system.subsystems[0].space, [])
    projection = tk.local_projection(equality_system, 1)
    rebuilt = tk.reconstruct_from_projections([empty, projection], equality_system.network)
    assert rebuilt.is_empty


def test_hybrid_collapses_at_the_ends(equality_system):
    composed = tk.compose(equality_system)
    projections = [tk.local_projection(equality_system, i) for i in range(2)]
    assert (
        tk.reconstruct_hybrid(list(equality_system.subsystems), [], equality_system.network)
        == composed
    )
    assert (
        tk.reconstruct_hybrid([], projections, equality_system.network)
        == tk.reconstruct_from_projections(projections, equality_system.network)
    )


def test_local_projection_isolated_network():
    sp = tk.signal_space(1, w1=(0, 1), w2=(0, 1))
    sub1 = beh(sp.subspace(["w1"]), ((0,),))
    sub2 = tk.full_space(sp.subspace(["w2"]))
    system = tk.InterconnectedSystem([sub1, sub2], tk.full_space(sp))
    assert tk.local_projection(system, 0) == sub1
    with pytest.raises(IndexError):
        tk.local_projection(system, 2)


def test_filtered_join_requires_coverage():
    sp = tk.signal_space(1, w1=(0, 1), w2=(0, 1))
    sub1 = tk.full_space(sp.subspace(["w1"]))
    with pytest.raises(tk.SchemaMismatch):
        tk.filtered_join(tk.full_space(sp), [sub1])
    assert tk.filtered_join(
        tk.full_space(sp), [sub1], unconstrained=[("w2",)]
    ) == tk.full_space(sp)


def _random_system(rng, n, horizon, alphabet):
    variables = {f"v{i}": alphabet for i in range(n)}
    sp = tk.signal_space(horizon, **variables)
    subsystems = []
    for i in range(n):
        sub_space = sp.subspace([f"v{i}"])
        rows = [r for r in tk.full_space(sub_space).rows if rng.random() < 0.7]
        subsystems.append(tk.make_behaviour(sub_space, rows))
    net_rows = [r for r in tk.full_space(sp).rows if rng.random() < 0.6]
    return tk.InterconnectedSystem(subsystems, tk.make_behaviour(sp, net_rows))


def test_compose_matches_naive_oracle_randomized():
    rng = random.Random(5)
    for _ in range(60):
        system = _random_system(rng, rng.choice([2, 3]), rng.choice([1, 2]), (0, 1))
        assert row_set(tk.compose(system)) == naive_compose(system)


def test_reconstruction_identities_randomized():
    rng = random.Random(6)
    for _ in range(60):
        system = _random_system(rng, rng.choice([2, 3]), 1, (0, 1, 2))
        composed = tk.compose(system)
        projections = [
            tk.local_projection(system, i) for i in range(len(system.subsystems))
        ]
        assert tk.reconstruct_from_projections(projections, system.network) == composed
        for n in range(len(system.subsystems) + 1):
            rebuilt = tk.reconstruct_hybrid(
                list(system.subsystems[:n]), projections[n:], system.network
            )
            assert rebuilt == composed
        # local projections stay inside the subsystem behaviours, and the
        # composition stays inside the product of its projections
        for proj, sub in zip(projections, system.subsystems):
            assert tk.is_subset(proj, sub)
        assert tk.is_subset(composed, tk.product_all(projections))


def test_local_projection_closed_form_randomized():
    rng = random.Random(9)
    for _ in range(40):
        system = _random_system(rng, 2, 1, (0, 1))
        first, second = system.subsystems
        context = tk.filtered_join(
            system.network, [second], unconstrained=[first.space.names]
        )
        closed = tk.intersect(first, tk.project(context, first.space.names))
        assert closed == tk.local_projection(system, 0)


def test_observability_reconstruction_both_directions():
    # Positive: the interconnection pins the first variable per second value,
    # and rebuilding with the first subsystem unconstrained loses nothing.
    sp = tk.signal_space(1, a=(0, 1), b=(0, 1))
    diag = tk.equality_behaviour(sp, ["a", "b"])
    system = tk.InterconnectedSystem(
        [tk.full_space(sp.subspace(["a"])), tk.full_space(sp.subspace(["b"]))], diag
    )
    composed = tk.compose(system)
    assert tk.is_observable(composed, ["a"], ["b"])
    rebuilt = tk.filtered_join(
        system.network, [tk.local_projection(system, 1)], unconstrained=[("a",)]
    )
    assert rebuilt == composed

    # Negative: one second-variable value admits two first-variable values;
    # the same reconstruction overshoots (and even revives a value the first
    # subsystem never produces).
    sp2 = tk.signal_space(1, a=(0, 1, 2), b=(0, 1))
    fan_in = beh(sp2, ((0,), (0,)), ((1,), (0,)), ((2,), (0,)))
    first = beh(sp2.subspace(["a"]), ((0,),), ((1,),))
    system2 = tk.InterconnectedSystem(
        [first, tk.full_space(sp2.subspace(["b"]))], fan_in
    )
    composed2 = tk.compose(system2)
    assert not tk.is_observable(composed2, ["a"], ["b"])
    rebuilt2 = tk.filtered_join(
        system2.network, [tk.local_projection(system2, 1)], unconstrained=[("a",)]
    )
    assert tk.is_subset(composed2, rebuilt2) and rebuilt2 != composed2


def test_switching_network_as_union():
    # A switch picking one of two wirings is a single network behaviour:
    # the union of the per-position diagonal relations.
    sp = tk.signal_space(1, u=(0, 1), x=(0, 1), y=(0, 1))
    wire_x = tk.product(
        tk.equality_behaviour(sp, ["u", "x"]), tk.full_space(sp.subspace(["y"]))
    )
    wire_y = tk.product(
        tk.equality_behaviour(sp, ["u", "y"]), tk.full_space(sp.subspace(["x"]))
    )
    switch = tk.union(wire_x, wire_y)
    assert len(switch) == 6
    subs = [
        beh(sp.subspace(["u"]), ((1,),)),
        tk.full_space(sp.subspace(["x"])),
        beh(sp.subspace(["y"]), ((0,),)),
    ]
    system = tk.InterconnectedSystem(subs, switch)
    composed = tk.compose(system)
    # Forcing u=1 and y=0 rules the u-to-y wiring out; only the u-to-x wiring
    # survives, pinning x=1.
    assert row_set(composed) == {(("u", (1,)), ("x", (1,)), ("y", (0,)))}
    assert naive_compose(system) == row_set(composed)
