"""Distributed controller synthesis over trajectory-set behaviours.

Given an interconnected plant, a requirement behaviour on the plant variables,
a controller network with a restriction behaviour, and a network linking plant
and controller variables, the pipeline builds the desired joint behaviour and
four auxiliary sets, decides whether a distributed controller family exists,
and constructs the controlled behaviour together with one behaviour per
controller block.

Set vocabulary used throughout (all joint sets live over plant ∪ controller
variables and inside the linking network):

* ``desired``   - joint rows pairing requirement-satisfying plant trajectories
                  with admissible controller trajectories;
* ``outside``   - joint rows carrying plant trajectories that violate the
                  requirement;
* ``excluded``  - desired plant trajectories reachable through a controller
                  trajectory that is shared with ``outside`` (their
                  multiplicities leave the desired set);
* ``retained``  - joint rows kept after dropping the excluded plant
                  trajectories;
* ``revived``   - excluded plant trajectories that are recovered because they
                  pair with a retained controller trajectory.

The closed-form existence check below is sufficient: whenever it passes, the
returned controllers implement the returned controlled behaviour exactly.  It
is not necessary in general, and the retained controller set may omit
trajectories that are provably safe; both facts are surfaced through the
``construction_tight`` / ``unused_safe_controllers`` diagnostics and can be
probed independently with the exhaustive search in ``trajkit.verify``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import (
    difference,
    intersect,
    is_free,
    is_observable,
    is_subset,
    project,
    union,
)
from .core import (
    DEFAULT_ENUMERATION_CAP,
    Behaviour,
    full_space,
    iter_full_rows,
)
from .errors import (
    HorizonMismatch,
    InternalInconsistency,
    NotSynthesizable,
    OverlapError,
    SchemaMismatch,
    UnknownVariable,
    VariableClash,
)
from .interconnect import InterconnectedSystem, compose, filtered_join


@dataclass(frozen=True)
class SynthesisProblem:
    """All givens of one synthesis task.

    ``requirement`` lives on the plant variables, ``controller_network`` and
    ``restriction`` on the controller variables, and ``coupling_network`` on
    their (disjoint) union.  ``free_vars`` names the plant variables that must
    stay free after control; ``controller_partition`` splits the controller
    variables into one block per controller.
    """

    plant: InterconnectedSystem
    requirement: Behaviour
    controller_network: Behaviour
    restriction: Behaviour
    coupling_network: Behaviour
    free_vars: tuple[str, ...] = ()
    controller_partition: tuple[tuple[str, ...], ...] = ()

    def __init__(
        self,
        plant: InterconnectedSystem,
        requirement: Behaviour,
        controller_network: Behaviour,
        restriction: Behaviour,
        coupling_network: Behaviour,
        free_vars: Iterable[str] = (),
        controller_partition: Iterable[Iterable[str]] = (),
    ):
        object.__setattr__(self, "plant", plant)
        object.__setattr__(self, "requirement", requirement)
        object.__setattr__(self, "controller_network", controller_network)
        object.__setattr__(self, "restriction", restriction)
        object.__setattr__(self, "coupling_network", coupling_network)
        object.__setattr__(self, "free_vars", tuple(sorted(set(free_vars))))
        partition = tuple(tuple(sorted(set(block))) for block in controller_partition)
        if not partition:
            partition = (tuple(controller_network.space.names),)
        object.__setattr__(self, "controller_partition", partition)
        self._validate()

    def _validate(self):
        plant_space = self.plant.network.space
        ctrl_space = self.controller_network.space
        if self.requirement.space != plant_space:
            raise SchemaMismatch(
                "requirement must live on exactly the plant variables "
                f"({plant_space.names}), got {self.requirement.space.names}"
            )
        if self.restriction.space != ctrl_space:
            raise SchemaMismatch(
                "restriction must live on exactly the controller variables "
                f"({ctrl_space.names}), got {self.restriction.space.names}"
            )
        clash = set(plant_space.names) & set(ctrl_space.names)
        if clash:
            raise VariableClash(f"plant and controller share variables {sorted(clash)}")
        want = set(plant_space.names) | set(ctrl_space.names)
        coupling = self.coupling_network.space
        if set(coupling.names) != want:
            raise SchemaMismatch(
                f"coupling network must cover {sorted(want)}, got {coupling.names}"
            )
        horizons = {
            plant_space.horizon,
            ctrl_space.horizon,
            coupling.horizon,
        }
        if len(horizons) != 1:
            raise HorizonMismatch(f"horizons differ across the problem: {sorted(horizons)}")
        for side in (plant_space, ctrl_space):
            for v in side.variables:
                if coupling.var(v.name).alphabet != v.alphabet:
                    raise SchemaMismatch(
                        f"alphabet of {v.name!r} differs between side and coupling network"
                    )
        for n in self.free_vars:
            if n not in plant_space.names:
                raise UnknownVariable(f"free variable {n!r} is not a plant variable")
        seen: set[str] = set()
        for block in self.controller_partition:
            if not block:
                raise SchemaMismatch("controller partition blocks must be nonempty")
            for n in block:
                if n not in ctrl_space.names:
                    raise UnknownVariable(f"partition variable {n!r} is not a controller variable")
                if n in seen:
                    raise OverlapError(f"variable {n!r} appears in two partition blocks")
                seen.add(n)
        if seen != set(ctrl_space.names):
            missing = sorted(set(ctrl_space.names) - seen)
            raise SchemaMismatch(f"controller variables {missing} belong to no block")

    @property
    def plant_names(self) -> tuple[str, ...]:
        return self.plant.network.space.names

    @property
    def controller_names(self) -> tuple[str, ...]:
        return self.controller_network.space.names

    def admissible_controllers(self) -> Behaviour:
        """Controller trajectories allowed by both network and restriction."""
        return intersect(self.controller_network, self.restriction)


@dataclass(frozen=True)
class AuxiliarySets:
    """The four joint sets driving the construction (see module docstring)."""

    outside: Behaviour
    excluded: Behaviour
    retained: Behaviour
    revived: Behaviour


@dataclass(frozen=True)
class ExistenceReport:
    """Outcome of the existence check, with witnesses for any violation.

    ``free_vars_free`` requires the declared free variables to be free in the
    uncontrolled plant; ``missing_free_row`` is a free-variable trajectory the
    plant cannot produce when that fails.  ``free_coverage`` requires every
    free-variable trajectory reachable only through dropped plant trajectories
    to also be reachable through the retained or revived sets;
    ``uncovered_free_row`` (with a carrying ``uncovered_plant_row``) witnesses
    a failure.  With no declared free variables the two conditions degenerate
    to plant nonemptiness and to "something dropped implies something kept".
    """

    free_vars_free: bool
    free_coverage: bool
    missing_free_row: tuple | None = None
    uncovered_free_row: tuple | None = None
    uncovered_plant_row: tuple | None = None

    @property
    def exists(self) -> bool:
        return self.free_vars_free and self.free_coverage


@dataclass(frozen=True)
class SynthesisResult:
    """Everything one synthesis run produces.

    ``controlled`` and ``controllers`` are populated only when the existence
    check passes.  ``fast_path`` records which observability special case
    applied (``"plant_observable"``, ``"controller_observable"`` or ``None``).
    ``partition_exact`` reports whether interconnecting the returned blocks
    through the controller network reproduces the retained controller set
    exactly; when it is False the blocks jointly admit more than intended.
    ``construction_tight`` reports whether the retained controller set already
    contains every safe admissible controller trajectory;
    ``unused_safe_controllers`` holds the safe trajectories it missed.
    """

    problem: SynthesisProblem
    plant_behaviour: Behaviour
    desired: Behaviour
    aux: AuxiliarySets
    report: ExistenceReport
    controlled: Behaviour | None
    controllers: tuple[Behaviour, ...]
    fast_path: str | None
    partition_exact: bool | None
    construction_tight: bool
    unused_safe_controllers: Behaviour

    @property
    def exists(self) -> bool:
        return self.report.exists


def lift_spec(raw: Behaviour, link_network: Behaviour, target: Iterable[str]) -> Behaviour:
    """Carry a requirement stated on foreign variables onto target variables.

    ``link_network`` must live on exactly the target variables plus the raw
    behaviour's variables; the result is the target-projection of the network
    rows whose raw components satisfy ``raw``.  The target side is left
    unconstrained, so no full space is ever materialized.
    """
    target_names = tuple(sorted(set(target)))
    joined = filtered_join(link_network, [raw], unconstrained=[target_names])
    return project(joined, target_names)


def desired_behaviour(
    problem: SynthesisProblem, plant_behaviour: Behaviour | None = None
) -> Behaviour:
    """Joint rows pairing requirement-satisfying plant trajectories with
    admissible controller trajectories through the coupling network."""
    plant = compose(problem.plant) if plant_behaviour is None else plant_behaviour
    wanted = intersect(plant, problem.requirement)
    return filtered_join(
        problem.coupling_network, [wanted, problem.admissible_controllers()]
    )


def auxiliary_sets(
    problem: SynthesisProblem,
    desired: Behaviour,
    plant_behaviour: Behaviour | None = None,
) -> AuxiliarySets:
    """Build outside, excluded, retained and revived, in that order."""
    plant = compose(problem.plant) if plant_behaviour is None else plant_behaviour
    coupling = problem.coupling_network
    admissible = problem.admissible_controllers()
    p = problem.plant_names
    c = problem.controller_names

    desired_p = project(desired, p)
    outside = filtered_join(coupling, [difference(plant, desired_p), admissible])
    excluded = filtered_join(coupling, [desired_p, project(outside, c)])
    retained = filtered_join(
        coupling, [difference(desired_p, project(excluded, p)), admissible]
    )
    revived = filtered_join(coupling, [project(excluded, p), project(retained, c)])
    return AuxiliarySets(outside, excluded, retained, revived)


def _first_missing_free(plant: Behaviour, free_vars: tuple[str, ...]) -> tuple | None:
    """First free-variable trajectory (canonical order) the plant cannot produce."""
    reachable = project(plant, free_vars)
    for row in iter_full_rows(reachable.space):
        if row not in reachable:
            return row
    return None


def check_existence(
    problem: SynthesisProblem,
    aux: AuxiliarySets,
    plant_behaviour: Behaviour | None = None,
) -> ExistenceReport:
    """Decide the two existence conditions; never raises, reports witnesses.

    Condition one (freeness): the declared free variables are free in the
    uncontrolled plant.  Condition two (coverage): projecting onto the free
    variables, everything the construction drops from the plant is still
    reachable through the retained or revived sets.  Passing both guarantees
    that the construction below yields controllers meeting the requirement;
    failing them does not always rule a controller family out (see the
    exhaustive search in ``trajkit.verify``).
    """
    plant = compose(problem.plant) if plant_behaviour is None else plant_behaviour
    p = problem.plant_names
    free = problem.free_vars

    free_ok = is_free(plant, free)
    missing = None if free_ok else _first_missing_free(plant, free)

    kept = union(project(aux.retained, p), project(aux.revived, p))
    residue = difference(plant, kept)
    lhs = project(residue, free)
    rhs = union(project(aux.retained, free), project(aux.revived, free))
    uncovered = difference(lhs, rhs)
    coverage_ok = uncovered.is_empty
    uncovered_row = None
    carrier_row = None
    if not coverage_ok:
        uncovered_row = uncovered.rows[0]
        free_pos = residue.space.positions(free)
        for row in residue.rows:
            if tuple(row[i] for i in free_pos) == uncovered_row:
                carrier_row = row
                break
    return ExistenceReport(
        free_vars_free=free_ok,
        free_coverage=coverage_ok,
        missing_free_row=missing,
        uncovered_free_row=uncovered_row,
        uncovered_plant_row=carrier_row,
    )


def controlled_behaviour(
    problem: SynthesisProblem,
    desired: Behaviour,
    aux: AuxiliarySets,
    report: ExistenceReport | None = None,
) -> Behaviour:
    """The largest controlled behaviour the construction implements.

    It always sits between the plant projections of the retained set and of
    the desired set, and equals the union of the retained and revived plant
    projections.
    """
    if report is None:
        report = check_existence(problem, aux)
    if not report.exists:
        raise NotSynthesizable("existence check failed; no controlled behaviour")
    p = problem.plant_names
    c = problem.controller_names
    controlled = project(
        filtered_join(
            problem.coupling_network,
            [project(desired, p), project(aux.retained, c)],
        ),
        p,
    )
    floor = union(project(aux.retained, p), project(aux.revived, p))
    if controlled != floor:
        raise InternalInconsistency(
            "controlled behaviour must equal retained ∪ revived plant projections"
        )
    if not is_subset(controlled, project(desired, p)):
        raise InternalInconsistency("controlled behaviour escaped the desired projection")
    return controlled


def controller_behaviours(
    problem: SynthesisProblem,
    desired: Behaviour,
    aux: AuxiliarySets,
    report: ExistenceReport | None = None,
) -> tuple[Behaviour, ...]:
    """One behaviour per controller block: the block projections of the
    retained set.

    Two alternative closed forms (desired minus excluded, desired minus
    outside, both projected onto the controller variables) are always equal to
    each other; their disagreement signals an engine bug.  The retained
    projection may be strictly smaller than both, which is reported through
    ``SynthesisResult.construction_tight`` rather than treated as an error.
    """
    if report is None:
        report = check_existence(problem, aux)
    if not report.exists:
        raise NotSynthesizable("existence check failed; no controllers")
    c = problem.controller_names
    desired_c = project(desired, c)
    via_excluded = difference(desired_c, project(aux.excluded, c))
    via_outside = difference(desired_c, project(aux.outside, c))
    if via_excluded != via_outside:
        raise InternalInconsistency(
            "the two closed forms of the controller set must agree"
        )
    return tuple(project(aux.retained, block) for block in problem.controller_partition)


def multiplicity_set(
    problem: SynthesisProblem,
    desired: Behaviour,
    plant_behaviour: Behaviour | None = None,
) -> Behaviour:
    """Plant trajectories sharing an admissible controller trajectory with the
    desired set (their indistinguishable companions included)."""
    plant = compose(problem.plant) if plant_behaviour is None else plant_behaviour
    c = problem.controller_names
    joined = filtered_join(problem.coupling_network, [plant, project(desired, c)])
    return project(joined, problem.plant_names)


def observability_carrier(
    problem: SynthesisProblem, plant_behaviour: Behaviour | None = None
) -> Behaviour:
    """The joint set on which plant/controller observability is evaluated:
    plant behaviour paired with admissible controller trajectories through the
    coupling network."""
    plant = compose(problem.plant) if plant_behaviour is None else plant_behaviour
    return filtered_join(
        problem.coupling_network, [plant, problem.admissible_controllers()]
    )


def pad_controllers(
    controllers: Sequence[Behaviour],
    controller_network: Behaviour,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> tuple[Behaviour, ...]:
    """Pad each block with rows provably inadmissible through the network.

    The added rows cannot extend to any network-admissible joint controller
    trajectory, so the interconnected controller behaviour is unchanged.
    Useful for robustness testing; off by default in the pipeline.
    """
    padded = []
    for block in controllers:
        everything = full_space(block.space, cap=cap)
        admissible = project(controller_network, block.space.names)
        padded.append(union(block, difference(everything, admissible)))
    return tuple(padded)


def synthesize(problem: SynthesisProblem, debug: bool = True) -> SynthesisResult:
    """Run the full pipeline and cross-check every provable identity.

    When the joint plant/controller correspondence makes the plant observable
    from the controller variables (or vice versa), the result is tagged with
    the matching fast path and, in debug mode, the simplified closed forms are
    asserted against the general construction.
    """
    p = problem.plant_names
    c = problem.controller_names
    plant = compose(problem.plant)
    desired = desired_behaviour(problem, plant)
    aux = auxiliary_sets(problem, desired, plant)
    report = check_existence(problem, aux, plant)

    retained_c = project(aux.retained, c)
    desired_c = project(desired, c)
    via_excluded = difference(desired_c, project(aux.excluded, c))
    via_outside = difference(desired_c, project(aux.outside, c))
    if debug:
        if not intersect(retained_c, project(aux.outside, c)).is_empty:
            raise InternalInconsistency("retained and outside controller sets overlap")
        if not intersect(retained_c, project(aux.excluded, c)).is_empty:
            raise InternalInconsistency("retained and excluded controller sets overlap")
        if via_excluded != via_outside:
            raise InternalInconsistency(
                "the two closed forms of the controller set must agree"
            )
    construction_tight = retained_c == via_outside
    unused_safe = difference(via_outside, retained_c)

    controlled: Behaviour | None = None
    controllers: tuple[Behaviour, ...] = ()
    partition_exact: bool | None = None
    if report.exists:
        if aux.retained.is_empty:
            raise InternalInconsistency(
                "retained set is empty although the existence check passed"
            )
        controlled = controlled_behaviour(problem, desired, aux, report)
        controllers = controller_behaviours(problem, desired, aux, report)
        if debug:
            if not is_subset(project(aux.retained, p), controlled):
                raise InternalInconsistency("controlled behaviour lost retained rows")
        rebuilt = filtered_join(problem.controller_network, controllers)
        partition_exact = rebuilt == retained_c

    carrier = observability_carrier(problem, plant)
    plant_obs = is_observable(carrier, p, c)
    ctrl_obs = is_observable(carrier, c, p)
    fast_path = (
        "plant_observable"
        if plant_obs
        else ("controller_observable" if ctrl_obs else None)
    )
    if debug and plant_obs:
        if not project(aux.excluded, p).is_empty:
            raise InternalInconsistency(
                "plant observable from controllers, yet the excluded set is nonempty"
            )
        if report.exists:
            if controlled != project(desired, p):
                raise InternalInconsistency(
                    "plant-observable fast path disagrees with the general construction"
                )
            for block, names in zip(controllers, problem.controller_partition):
                if block != project(desired, names):
                    raise InternalInconsistency(
                        "plant-observable controller blocks disagree with the general construction"
                    )
    if debug and ctrl_obs:
        if not aux.revived.is_empty:
            raise InternalInconsistency(
                "controllers observable from plant, yet the revived set is nonempty"
            )
        if report.exists and controlled != project(aux.retained, p):
            raise InternalInconsistency(
                "controller-observable fast path disagrees with the general construction"
            )

    return SynthesisResult(
        problem=problem,
        plant_behaviour=plant,
        desired=desired,
        aux=aux,
        report=report,
        controlled=controlled,
        controllers=controllers,
        fast_path=fast_path,
        partition_exact=partition_exact,
        construction_tight=construction_tight,
        unused_safe_controllers=unused_safe,
    )
