"""Independent verification: controller implementation, requirement checks,
exhaustive necessity search, and a seeded randomized property suite.

``implement`` deliberately shares no evaluation machinery with the synthesis
pipeline: it materializes products and intersects them, so agreement between
the two paths is meaningful evidence.  The exhaustive search enumerates every
controller family over the admissible candidate rows and is the ground truth
for existence questions at desk scale.
"""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass
from typing import Callable, Sequence

from . import algebra
from .algebra import is_free, is_observable, is_subset, project
from .core import (
    DEFAULT_ENUMERATION_CAP,
    Behaviour,
    SignalSpace,
    SignalVariable,
    full_space,
    signal_space,
)
from .errors import SchemaMismatch, SearchSpaceTooLarge, VariableClash
from .interconnect import (
    InterconnectedSystem,
    compose,
    filtered_join,
    local_projection,
    reconstruct_from_projections,
    reconstruct_hybrid,
)
from .synthesis import (
    SynthesisProblem,
    observability_carrier,
    synthesize,
)


def implement(
    plant_behaviour: Behaviour,
    controllers: Sequence[Behaviour],
    controller_network: Behaviour,
    coupling_network: Behaviour,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> Behaviour:
    """Controlled behaviour actually produced by a controller family.

    Interconnects the controller blocks through the controller network,
    pairs the result with the plant through the coupling network, and projects
    onto the plant variables.  Evaluated by materialized products and
    intersections, independently of the synthesis pipeline.
    """
    seen: set[str] = set()
    for block in controllers:
        for name in block.space.names:
            if name in seen:
                raise VariableClash(f"controller variable {name!r} in two blocks")
            seen.add(name)
    if seen != set(controller_network.space.names):
        missing = sorted(set(controller_network.space.names) - seen)
        raise SchemaMismatch(f"controller variables {missing} belong to no block")
    joint_controller = algebra.intersect(
        algebra.product_all(controllers, cap=cap), controller_network
    )
    joint = algebra.intersect(
        algebra.product(plant_behaviour, joint_controller, cap=cap), coupling_network
    )
    return project(joint, plant_behaviour.space.names)


@dataclass(frozen=True)
class RequirementsReport:
    """Does an achieved controlled behaviour meet the stated objectives?

    ``restriction_respected`` is None when no controllers were supplied.
    """

    within_requirement: bool
    requirement_witness: tuple | None
    free_vars_free: bool
    freeness_witness: tuple | None
    restriction_respected: bool | None
    restriction_witness: tuple | None

    @property
    def ok(self) -> bool:
        return (
            self.within_requirement
            and self.free_vars_free
            and self.restriction_respected is not False
        )


def check_requirements(
    achieved: Behaviour,
    problem: SynthesisProblem,
    controllers: Sequence[Behaviour] | None = None,
    plant_behaviour: Behaviour | None = None,
) -> RequirementsReport:
    """Check an achieved behaviour against the problem's objectives.

    Verifies containment in the requirement-satisfying plant behaviour,
    freeness of the declared free variables, and (when ``controllers`` are
    given) containment of the interconnected controller behaviour in the
    restriction.
    """
    plant = compose(problem.plant) if plant_behaviour is None else plant_behaviour
    allowed = algebra.intersect(plant, problem.requirement)
    escaped = algebra.difference(achieved, allowed)
    within = escaped.is_empty

    free_ok = is_free(achieved, problem.free_vars)
    freeness_witness = None
    if not free_ok:
        from .synthesis import _first_missing_free

        freeness_witness = _first_missing_free(achieved, problem.free_vars)

    restriction_ok = None
    restriction_witness = None
    if controllers is not None:
        joint = algebra.intersect(
            algebra.product_all(controllers), problem.controller_network
        )
        stray = algebra.difference(joint, problem.restriction)
        restriction_ok = stray.is_empty
        restriction_witness = stray.rows[0] if stray.rows else None
    return RequirementsReport(
        within_requirement=within,
        requirement_witness=escaped.rows[0] if escaped.rows else None,
        free_vars_free=free_ok,
        freeness_witness=freeness_witness,
        restriction_respected=restriction_ok,
        restriction_witness=restriction_witness,
    )


@dataclass(frozen=True)
class OracleCaps:
    """Limits for the exhaustive controller search."""

    block_rows: int = 12
    combinations: int = 2**20
    allow_empty: bool = False


@dataclass(frozen=True)
class OracleSolution:
    controllers: tuple[Behaviour, ...]
    achieved: Behaviour


def exhaustive_necessity_oracle(
    problem: SynthesisProblem, caps: OracleCaps = OracleCaps()
) -> OracleSolution | None:
    """Search every controller family over the admissible candidate rows.

    Candidate rows per block are the block projections of the admissible
    controller set (network ∩ restriction); rows outside it are filtered away
    by the interconnection anyway.  Families are enumerated in canonical
    subset order (bitmask over canonically sorted rows, blockwise), so the
    result is deterministic.  A family qualifies when its interconnected
    behaviour respects the restriction, the achieved controlled behaviour
    meets the requirement and freeness objectives, and — unless
    ``caps.allow_empty`` — the achieved behaviour is nonempty.
    """
    admissible = problem.admissible_controllers()
    blocks = [project(admissible, block) for block in problem.controller_partition]
    combos = 1
    for b in blocks:
        combos *= 2 ** len(b)
    oversized = [len(b) for b in blocks if len(b) > caps.block_rows]
    if oversized:
        raise SearchSpaceTooLarge(
            combos,
            caps.combinations,
            f"a block has {max(oversized)} candidate rows, per-block cap is {caps.block_rows}",
        )
    if combos > caps.combinations:
        raise SearchSpaceTooLarge(combos, caps.combinations)

    plant = compose(problem.plant)
    subset_lists = []
    for b in blocks:
        rows = b.rows
        subsets = []
        for mask in range(2 ** len(rows)):
            chosen = tuple(r for i, r in enumerate(rows) if mask >> i & 1)
            subsets.append(Behaviour._wrap(b.space, chosen))
        subset_lists.append(subsets)

    for family in itertools.product(*subset_lists):
        achieved = implement(
            plant, family, problem.controller_network, problem.coupling_network
        )
        if achieved.is_empty and not caps.allow_empty:
            continue
        report = check_requirements(achieved, problem, family, plant)
        if report.ok:
            return OracleSolution(controllers=tuple(family), achieved=achieved)
    return None


# ---------------------------------------------------------------------------
# Randomized instance generation (explicit, seeded configuration).
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorConfig:
    """Sizes and densities for random instances.

    Defaults keep every materialized set comfortably small: at most three
    subsystems, alphabets of two or three symbols, horizons one or two, and
    network densities between 0.3 and 0.9.
    """

    subsystem_counts: tuple[int, ...] = (2, 3)
    alphabet_sizes: tuple[int, ...] = (2, 3)
    horizons: tuple[int, ...] = (1, 2)
    density: tuple[float, float] = (0.3, 0.9)
    max_joint_rows: int = 729
    plant_var_counts: tuple[int, ...] = (1, 2)
    controller_var_counts: tuple[int, ...] = (1,)
    single_block: bool = True
    free_var_probability: float = 0.5


def random_behaviour(
    rng: random.Random, space: SignalSpace, density: float
) -> Behaviour:
    """Independent row sample of the full space at the given density."""
    keep = tuple(r for r in full_space(space).rows if rng.random() < density)
    return Behaviour._wrap(space, keep)


def _random_density(rng: random.Random, cfg: GeneratorConfig) -> float:
    lo, hi = cfg.density
    return rng.uniform(lo, hi)


def random_interconnection(
    rng: random.Random, cfg: GeneratorConfig = GeneratorConfig(), tag: str = "v"
) -> InterconnectedSystem:
    """A random interconnected system: one variable per subsystem."""
    while True:
        n = rng.choice(cfg.subsystem_counts)
        horizon = rng.choice(cfg.horizons)
        variables = [
            SignalVariable(f"{tag}{i}", tuple(range(rng.choice(cfg.alphabet_sizes))))
            for i in range(n)
        ]
        joint = SignalSpace(tuple(variables), horizon)
        if joint.trajectory_count() <= cfg.max_joint_rows:
            break
    subsystems = []
    for v in variables:
        sub_space = SignalSpace((v,), horizon)
        rows = random_behaviour(rng, sub_space, _random_density(rng, cfg))
        subsystems.append(rows)
    network = random_behaviour(rng, joint, _random_density(rng, cfg))
    return InterconnectedSystem(subsystems, network)


def random_synthesis_problem(
    rng: random.Random, cfg: GeneratorConfig = GeneratorConfig()
) -> SynthesisProblem:
    """A random synthesis problem with bounded joint space."""
    while True:
        horizon = rng.choice(cfg.horizons)
        n_p = rng.choice(cfg.plant_var_counts)
        n_c = rng.choice(cfg.controller_var_counts)
        plant_vars = [
            SignalVariable(f"p{i}", tuple(range(rng.choice(cfg.alphabet_sizes))))
            for i in range(n_p)
        ]
        ctrl_vars = [
            SignalVariable(f"c{i}", tuple(range(rng.choice(cfg.alphabet_sizes))))
            for i in range(n_c)
        ]
        joint = SignalSpace(tuple(plant_vars + ctrl_vars), horizon)
        if joint.trajectory_count() <= cfg.max_joint_rows:
            break
    plant_space = SignalSpace(tuple(plant_vars), horizon)
    ctrl_space = SignalSpace(tuple(ctrl_vars), horizon)

    subsystems = [
        random_behaviour(rng, SignalSpace((v,), horizon), _random_density(rng, cfg))
        for v in plant_vars
    ]
    plant_network = (
        full_space(plant_space)
        if rng.random() < 0.5
        else random_behaviour(rng, plant_space, _random_density(rng, cfg))
    )
    plant = InterconnectedSystem(subsystems, plant_network)

    requirement = random_behaviour(rng, plant_space, _random_density(rng, cfg))
    controller_network = (
        full_space(ctrl_space)
        if rng.random() < 0.5
        else random_behaviour(rng, ctrl_space, _random_density(rng, cfg))
    )
    restriction = (
        full_space(ctrl_space)
        if rng.random() < 0.5
        else random_behaviour(rng, ctrl_space, _random_density(rng, cfg))
    )
    coupling = random_behaviour(rng, joint, _random_density(rng, cfg))

    free_vars: tuple[str, ...] = ()
    if plant_vars and rng.random() < cfg.free_var_probability:
        free_vars = (rng.choice(plant_vars).name,)

    if cfg.single_block:
        partition: tuple[tuple[str, ...], ...] = (ctrl_space.names,)
    else:
        names = list(ctrl_space.names)
        cut = rng.randint(1, len(names)) if len(names) > 1 else 1
        partition = tuple(
            blk for blk in (tuple(names[:cut]), tuple(names[cut:])) if blk
        )
    return SynthesisProblem(
        plant=plant,
        requirement=requirement,
        controller_network=controller_network,
        restriction=restriction,
        coupling_network=coupling,
        free_vars=free_vars,
        controller_partition=partition,
    )


def random_tiny_problem(rng: random.Random) -> SynthesisProblem:
    """A synthesis problem small enough for the exhaustive oracle.

    Bounds: at most 6 plant rows, at most 8 candidate controller rows,
    a single controller block.
    """
    cfg = GeneratorConfig(
        plant_var_counts=(1,),
        controller_var_counts=(1,),
        alphabet_sizes=(2, 3),
        horizons=(1, 2),
        single_block=True,
    )
    while True:
        problem = random_synthesis_problem(rng, cfg)
        plant = compose(problem.plant)
        candidates = problem.admissible_controllers()
        if len(plant) <= 6 and len(candidates) <= 8:
            return problem


# ---------------------------------------------------------------------------
# Property suite.
# ---------------------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    passed: int = 0
    failed: int = 0
    counterexample: str | None = None
    path: str | None = None

    def record(self, ok: bool, describe: Callable[[], str]):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if self.counterexample is None:
                self.counterexample = describe()


@dataclass
class SuiteReport:
    """Line-oriented report with a machine-readable trailer."""

    seed: int
    cases: int
    synthesis_cases: int
    results: tuple[CheckResult, ...]

    @property
    def failures(self) -> int:
        return sum(r.failed for r in self.results)

    def render(self) -> str:
        lines = [f"property suite: seed={self.seed} cases={self.cases} synthesis-cases={self.synthesis_cases}"]
        for r in self.results:
            status = "ok" if r.failed == 0 else "FAIL"
            lines.append(f"  {r.name}: pass={r.passed} fail={r.failed} [{status}]")
            if r.counterexample is not None:
                for cline in r.counterexample.splitlines():
                    lines.append(f"    | {cline}")
            if r.path is not None:
                lines.append(f"    counterexample file: {r.path}")
        total_pass = sum(r.passed for r in self.results)
        paths = ";".join(r.path for r in self.results if r.path) or "-"
        lines.append(
            f"#trailer pass={total_pass} fail={self.failures} seed={self.seed} "
            f"cases={self.cases} counterexamples={paths}"
        )
        return "\n".join(lines) + "\n"


def _describe(**named: Behaviour) -> str:
    chunks = []
    for label, beh in named.items():
        chunks.append(f"{label}:")
        chunks.append(beh.canonical_text().rstrip("\n"))
    return "\n".join(chunks)


def _observability_fixtures() -> list[tuple[InterconnectedSystem, bool]]:
    """Two-subsystem fixtures: (system, expected reconstruction success).

    In the first, the interconnected behaviour determines the first
    subsystem's trajectory from the second's, so replacing the first
    behaviour by its full space and joining with the second's local
    projection loses nothing.  In the second, one trajectory of the second
    subsystem co-occurs with two of the first, and the same reconstruction
    overshoots (it also picks up a first-subsystem value the subsystem never
    produces).
    """
    sp_a = signal_space(1, a=(0, 1), b=(0, 1))
    diagonal = Behaviour(sp_a, [((0,), (0,)), ((1,), (1,))])
    observable = InterconnectedSystem(
        [full_space(sp_a.subspace(["a"])), full_space(sp_a.subspace(["b"]))], diagonal
    )

    sp_b = signal_space(1, a=(0, 1, 2), b=(0, 1))
    fan_in = Behaviour(sp_b, [((0,), (0,)), ((1,), (0,)), ((2,), (0,))])
    first = Behaviour(sp_b.subspace(["a"]), [((0,),), ((1,),)])
    unobservable = InterconnectedSystem(
        [first, full_space(sp_b.subspace(["b"]))], fan_in
    )
    return [(observable, True), (unobservable, False)]


def _strictness_fixtures() -> tuple[bool, bool]:
    """Witness strict inclusion for the intersection and difference laws."""
    sp = signal_space(1, a=(0, 1), b=(0, 1))
    b1 = Behaviour(sp, [((0,), (0,))])
    b2 = Behaviour(sp, [((0,), (1,))])
    lhs_i = project(algebra.intersect(b1, b2), ["a"])
    rhs_i = algebra.intersect(project(b1, ["a"]), project(b2, ["a"]))
    strict_i = is_subset(lhs_i, rhs_i) and lhs_i != rhs_i
    lhs_d = project(algebra.difference(b1, b2), ["a"])
    rhs_d = algebra.difference(project(b1, ["a"]), project(b2, ["a"]))
    strict_d = is_subset(rhs_d, lhs_d) and lhs_d != rhs_d
    return strict_i, strict_d


def run_property_suite(
    seed: int,
    cases: int,
    synthesis_cases: int | None = None,
    cfg: GeneratorConfig = GeneratorConfig(),
    out_dir: str | None = None,
) -> SuiteReport:
    """Generate random instances and check every algebraic and synthesis law.

    Identical seeds give byte-identical reports.  Failures never raise; they
    are recorded with a canonical-text counterexample (and written to
    ``out_dir`` when given).
    """
    if synthesis_cases is None:
        synthesis_cases = max(1, cases // 5)
    rng = random.Random(seed)

    pair_laws = CheckResult("pairwise-set-identities")
    product_laws = CheckResult("product-distributivity-and-symmetry")
    proj_meet = CheckResult("projection-of-intersection-shrinks")
    proj_join = CheckResult("projection-of-union-commutes")
    proj_diff = CheckResult("projection-of-difference-grows")
    proj_mono = CheckResult("projection-monotone")
    recon = CheckResult("reconstruction-equals-composition")
    hybrid = CheckResult("hybrid-reconstruction-equals-composition")
    local_inside = CheckResult("local-projection-inside-subsystem")
    comp_inside = CheckResult("composition-inside-projection-product")
    local_closed = CheckResult("local-projection-closed-form")
    obs_fixture = CheckResult("observability-reconstruction-fixtures")
    strict_fixture = CheckResult("projection-strictness-fixtures")
    sandwich = CheckResult("synthesis-sandwich")
    disjoint = CheckResult("synthesis-controller-sets-disjoint")
    closed_forms = CheckResult("synthesis-closed-forms-agree")
    nonempty = CheckResult("synthesis-retained-nonempty-when-exists")
    agreement = CheckResult("synthesis-implementation-agreement")
    fast_paths = CheckResult("synthesis-observability-fast-paths")
    tightness = CheckResult("synthesis-retained-covers-safe-set")

    # --- behaviour pair/triple laws -------------------------------------
    for _ in range(cases):
        horizon = rng.choice(cfg.horizons)
        k = rng.choice(cfg.alphabet_sizes)
        sp = signal_space(horizon, a=tuple(range(k)), b=tuple(range(k)))
        d1, d2 = _random_density(rng, cfg), _random_density(rng, cfg)
        b1 = random_behaviour(rng, sp, d1)
        b2 = random_behaviour(rng, sp, d2)
        sub = ["a"]

        ok = True
        inter, uni, diff = (
            algebra.intersect(b1, b2),
            algebra.union(b1, b2),
            algebra.difference(b1, b2),
        )
        subset = is_subset(b1, b2)
        ok &= (inter == b1) == subset
        ok &= (uni == b2) == subset
        ok &= diff.is_empty == subset
        ok &= (inter.is_empty) == (diff == b1)
        # A random two-part split of an ambient set: the complement of either
        # part is exactly the other, and only disjoint covering pairs pass.
        ambient = algebra.union(uni, random_behaviour(rng, sp, 0.3))
        mask = [rng.random() < 0.5 for _ in ambient.rows]
        part1 = Behaviour._wrap(sp, tuple(r for r, m in zip(ambient.rows, mask) if m))
        part2 = Behaviour._wrap(sp, tuple(r for r, m in zip(ambient.rows, mask) if not m))
        ok &= algebra.difference(ambient, part2) == part1
        ok &= algebra.intersect(part1, part2).is_empty
        ok &= algebra.union(part1, part2) == ambient
        leak = algebra.union(part2, b1)  # still a subset of the ambient set
        complement_eq = algebra.difference(ambient, leak) == part1
        partition_eq = (
            algebra.intersect(part1, leak).is_empty
            and algebra.union(part1, leak) == ambient
        )
        ok &= complement_eq == partition_eq
        pair_laws.record(ok, lambda: _describe(first=b1, second=b2))

        sp_c = signal_space(horizon, c=tuple(range(k)))
        c1 = random_behaviour(rng, sp_c, d1)
        c2 = random_behaviour(rng, sp_c, d2)
        lhs = algebra.product(algebra.intersect(b1, b2), algebra.intersect(c1, c2))
        rhs = algebra.intersect(algebra.product(b1, c1), algebra.product(b2, c2))
        ok = lhs == rhs
        ok &= algebra.product(b1, c1) == algebra.product(c1, b1)
        d3 = random_behaviour(rng, signal_space(horizon, d=(0, 1)), 0.6)
        ok &= algebra.product(algebra.product(b1, c1), d3) == algebra.product(
            b1, algebra.product(c1, d3)
        )
        product_laws.record(ok, lambda: _describe(first=b1, second=c1))

        proj_meet.record(
            is_subset(
                project(inter, sub),
                algebra.intersect(project(b1, sub), project(b2, sub)),
            ),
            lambda: _describe(first=b1, second=b2),
        )
        proj_join.record(
            project(uni, sub) == algebra.union(project(b1, sub), project(b2, sub)),
            lambda: _describe(first=b1, second=b2),
        )
        proj_diff.record(
            is_subset(
                algebra.difference(project(b1, sub), project(b2, sub)),
                project(diff, sub),
            ),
            lambda: _describe(first=b1, second=b2),
        )
        smaller = algebra.intersect(b1, b2)
        proj_mono.record(
            is_subset(project(smaller, sub), project(b1, sub)),
            lambda: _describe(first=b1, second=b2),
        )

    # --- interconnection laws --------------------------------------------
    for _ in range(cases):
        system = random_interconnection(rng, cfg)
        composed = compose(system)
        projections = [
            local_projection(system, i) for i in range(len(system.subsystems))
        ]
        recon.record(
            reconstruct_from_projections(projections, system.network) == composed,
            lambda: _describe(network=system.network, composed=composed),
        )
        ok = True
        for n in range(len(system.subsystems) + 1):
            rebuilt = reconstruct_hybrid(
                list(system.subsystems[:n]), projections[n:], system.network
            )
            ok &= rebuilt == composed
        hybrid.record(ok, lambda: _describe(network=system.network, composed=composed))
        local_inside.record(
            all(
                is_subset(proj, sub)
                for proj, sub in zip(projections, system.subsystems)
            ),
            lambda: _describe(network=system.network),
        )
        comp_inside.record(
            is_subset(composed, algebra.product_all(projections)),
            lambda: _describe(network=system.network),
        )
        first = system.subsystems[0]
        rest_constrained = filtered_join(
            system.network,
            system.subsystems[1:],
            unconstrained=[first.space.names],
        )
        closed = algebra.intersect(
            first, project(rest_constrained, first.space.names)
        )
        local_closed.record(
            closed == projections[0],
            lambda: _describe(network=system.network, first=first),
        )

    for system, expect_equal in _observability_fixtures():
        composed = compose(system)
        rebuilt = filtered_join(
            system.network,
            [local_projection(system, 1)],
            unconstrained=[system.subsystems[0].space.names],
        )
        observable = is_observable(
            composed, system.subsystems[0].space.names, system.subsystems[1].space.names
        )
        obs_fixture.record(
            observable == expect_equal and (rebuilt == composed) == expect_equal,
            lambda: _describe(network=system.network, composed=composed),
        )

    strict_i, strict_d = _strictness_fixtures()
    strict_fixture.record(strict_i and strict_d, lambda: "strictness fixtures")

    # --- synthesis laws ---------------------------------------------------
    for _ in range(synthesis_cases):
        problem = random_synthesis_problem(rng, cfg)
        result = synthesize(problem)
        p, c = problem.plant_names, problem.controller_names
        retained_c = project(result.aux.retained, c)
        outside_c = project(result.aux.outside, c)
        excluded_c = project(result.aux.excluded, c)
        desired_c = project(result.desired, c)
        disjoint.record(
            algebra.intersect(retained_c, outside_c).is_empty
            and algebra.intersect(retained_c, excluded_c).is_empty,
            lambda: _describe(coupling=problem.coupling_network),
        )
        closed_forms.record(
            algebra.difference(desired_c, excluded_c)
            == algebra.difference(desired_c, outside_c),
            lambda: _describe(coupling=problem.coupling_network),
        )
        tightness.record(
            result.construction_tight,
            lambda: _describe(
                coupling=problem.coupling_network,
                retained=result.aux.retained,
                missed=result.unused_safe_controllers,
            ),
        )
        if result.exists:
            nonempty.record(
                not result.aux.retained.is_empty,
                lambda: _describe(coupling=problem.coupling_network),
            )
            desired_p = project(result.desired, p)
            ok = (
                is_subset(project(result.aux.retained, p), result.controlled)
                and is_subset(result.controlled, desired_p)
                and is_subset(
                    desired_p,
                    algebra.intersect(result.plant_behaviour, problem.requirement),
                )
            )
            sandwich.record(ok, lambda: _describe(coupling=problem.coupling_network))
            achieved = implement(
                result.plant_behaviour,
                result.controllers,
                problem.controller_network,
                problem.coupling_network,
            )
            agreement.record(
                achieved == result.controlled,
                lambda: _describe(
                    coupling=problem.coupling_network,
                    achieved=achieved,
                    controlled=result.controlled,
                ),
            )
        carrier = observability_carrier(problem, result.plant_behaviour)
        ok = True
        if is_observable(carrier, p, c):
            ok &= project(result.aux.excluded, p).is_empty
            if result.exists:
                ok &= result.controlled == project(result.desired, p)
        if is_observable(carrier, c, p):
            ok &= result.aux.revived.is_empty
            if result.exists:
                ok &= result.controlled == project(result.aux.retained, p)
        fast_paths.record(ok, lambda: _describe(coupling=problem.coupling_network))

    results = (
        pair_laws,
        product_laws,
        proj_meet,
        proj_join,
        proj_diff,
        proj_mono,
        recon,
        hybrid,
        local_inside,
        comp_inside,
        local_closed,
        obs_fixture,
        strict_fixture,
        sandwich,
        disjoint,
        closed_forms,
        nonempty,
        agreement,
        fast_paths,
        tightness,
    )
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        for r in results:
            if r.counterexample is not None:
                path = os.path.join(out_dir, f"{r.name}.txt")
                with open(path, "w") as fh:
                    fh.write(r.counterexample + "\n")
                r.path = path
    return SuiteReport(
        seed=seed, cases=cases, synthesis_cases=synthesis_cases, results=results
    )
