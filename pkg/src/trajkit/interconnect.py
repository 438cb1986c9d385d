"""Interconnection of subsystem behaviours through a network behaviour.

A network is itself a behaviour over the union of all subsystem variables; an
isolated collection of subsystems corresponds to the full-space network.  The
interconnected behaviour is the set of network trajectories whose per-subsystem
components are admissible locally; it is evaluated as a filtered join with the
network rows outermost, so the subsystem product is never materialized.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import algebra
from .core import Behaviour
from .errors import HorizonMismatch, SchemaMismatch, VariableClash


def filtered_join(
    network: Behaviour,
    factors: Sequence[Behaviour],
    unconstrained: Sequence[Iterable[str]] = (),
) -> Behaviour:
    """Rows of ``network`` whose projections lie in every factor.

    ``factors`` must have pairwise-disjoint variable sets; together with the
    ``unconstrained`` name sets they must cover the network's variables
    exactly.  Equivalent to intersecting the network with the product of the
    factors and the full spaces of the unconstrained sets, without building
    that product.
    """
    net_space = network.space
    seen: set[str] = set()
    for f in factors:
        if f.space.horizon != net_space.horizon:
            raise HorizonMismatch(
                f"factor horizon {f.space.horizon} != network horizon {net_space.horizon}"
            )
        for v in f.space.variables:
            if v.name in seen:
                raise VariableClash(f"variable {v.name!r} constrained twice")
            seen.add(v.name)
            if net_space.var(v.name).alphabet != v.alphabet:
                raise SchemaMismatch(
                    f"alphabet of {v.name!r} differs between factor and network"
                )
    for group in unconstrained:
        for n in group:
            net_space.var(n)
            if n in seen:
                raise VariableClash(f"variable {n!r} constrained twice")
            seen.add(n)
    if seen != set(net_space.names):
        missing = sorted(set(net_space.names) - seen)
        raise SchemaMismatch(f"network variables {missing} not covered by any factor")

    probes = [
        (network.space.positions(f.space.names), f._rowset) for f in factors
    ]
    rows = tuple(
        row
        for row in network.rows
        if all(tuple(row[i] for i in pos) in rowset for pos, rowset in probes)
    )
    return Behaviour._wrap(net_space, rows)


@dataclass(frozen=True)
class InterconnectedSystem:
    """Subsystem behaviours plugged into a network behaviour.

    Subsystems have pairwise-disjoint variable sets whose union is exactly the
    network's variable set; all horizons agree and shared variable names carry
    identical alphabets.
    """

    subsystems: tuple[Behaviour, ...]
    network: Behaviour

    def __init__(self, subsystems: Iterable[Behaviour], network: Behaviour):
        object.__setattr__(self, "subsystems", tuple(subsystems))
        object.__setattr__(self, "network", network)
        if not self.subsystems:
            raise SchemaMismatch("an interconnected system needs at least one subsystem")
        seen: set[str] = set()
        for sub in self.subsystems:
            if sub.space.horizon != network.space.horizon:
                raise HorizonMismatch(
                    f"subsystem horizon {sub.space.horizon} != "
                    f"network horizon {network.space.horizon}"
                )
            for v in sub.space.variables:
                if v.name in seen:
                    raise VariableClash(f"variable {v.name!r} in two subsystems")
                seen.add(v.name)
                if network.space.var(v.name).alphabet != v.alphabet:
                    raise SchemaMismatch(
                        f"alphabet of {v.name!r} differs between subsystem and network"
                    )
        if seen != set(network.space.names):
            missing = sorted(set(network.space.names) - seen)
            raise SchemaMismatch(f"network variables {missing} belong to no subsystem")

    @property
    def variable_groups(self) -> tuple[tuple[str, ...], ...]:
        return tuple(sub.space.names for sub in self.subsystems)


def compose(system: InterconnectedSystem) -> Behaviour:
    """The interconnected behaviour: network rows admissible through every subsystem."""
    return filtered_join(system.network, system.subsystems)


def reconstruct_from_projections(
    projections: Sequence[Behaviour], network: Behaviour
) -> Behaviour:
    """Rebuild the interconnected behaviour from its per-subsystem projections.

    Given the projections of the interconnected behaviour onto each
    subsystem's variables, the join with the network recovers the
    interconnected behaviour exactly.
    """
    return filtered_join(network, projections)


def reconstruct_hybrid(
    full: Sequence[Behaviour],
    projections: Sequence[Behaviour],
    network: Behaviour,
) -> Behaviour:
    """Rebuild from some fully known subsystem behaviours plus projections.

    With all subsystems in ``full`` this is ``compose``; with all in
    ``projections`` it is ``reconstruct_from_projections``.
    """
    return filtered_join(network, tuple(full) + tuple(projections))


def local_projection(system: InterconnectedSystem, index: int) -> Behaviour:
    """What subsystem ``index`` can observe locally: the interconnected
    behaviour projected onto its own variables."""
    subsystems = system.subsystems
    if not 0 <= index < len(subsystems):
        raise IndexError(f"subsystem index {index} out of range 0..{len(subsystems) - 1}")
    return algebra.project(compose(system), subsystems[index].space.names)
