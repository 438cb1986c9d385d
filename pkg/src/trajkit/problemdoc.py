"""JSON problem documents: parsing, validation and serialization.

A document declares a horizon and variable alphabets, a dictionary of named
behaviours (explicit rows, ``full``, or the ``equality`` diagonal shorthand),
an interconnected plant, and optionally a synthesis section.  Anywhere a
behaviour is expected, either a name from the dictionary or an inline
definition object is accepted.  The exact field-by-field format is documented
in the README.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Mapping

from . import core
from .core import Behaviour, SignalSpace, SignalVariable
from .errors import (
    EnumerationCapExceeded,
    ParseError,
    TrajkitError,
    ValidationError,
)
from .interconnect import InterconnectedSystem
from .synthesis import SynthesisProblem, lift_spec


@dataclass(frozen=True)
class ProblemDocument:
    """A fully resolved problem file."""

    space: SignalSpace
    behaviours: tuple[tuple[str, Behaviour], ...]
    plant: InterconnectedSystem | None
    synthesis: SynthesisProblem | None

    def named(self, name: str) -> Behaviour:
        for n, b in self.behaviours:
            if n == name:
                return b
        raise ValidationError(f"no behaviour named {name!r}")

    def require_plant(self) -> InterconnectedSystem:
        if self.plant is None:
            raise ValidationError("document has no 'plant' section")
        return self.plant

    def require_synthesis(self) -> SynthesisProblem:
        if self.synthesis is None:
            raise ValidationError("document has no 'synthesis' section")
        return self.synthesis


def _expect(mapping: Any, key: str, kind, path: str):
    if not isinstance(mapping, dict):
        raise ParseError(f"{path}: expected an object")
    if key not in mapping:
        raise ParseError(f"{path}: missing field {key!r}")
    value = mapping[key]
    if kind is not None and not isinstance(value, kind):
        raise ParseError(f"{path}.{key}: expected {kind.__name__}, got {type(value).__name__}")
    return value


class _Resolver:
    def __init__(self, space: SignalSpace, named: dict[str, Behaviour]):
        self.space = space
        self.named = named

    def _build(self, spec: Mapping, path: str) -> Behaviour:
        forms = [k for k in ("rows", "full", "equality") if k in spec]
        if len(forms) != 1:
            raise ParseError(
                f"{path}: exactly one of 'rows', 'full' or 'equality' is required"
            )
        form = forms[0]
        try:
            if form == "equality":
                names = spec["equality"]
                if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
                    raise ParseError(f"{path}.equality: expected a list of variable names")
                return core.equality_behaviour(self.space, names)
            variables = _expect(spec, "vars", list, path)
            sub = self.space.subspace(variables)
            if form == "full":
                if spec["full"] is not True:
                    raise ParseError(f"{path}.full: expected true")
                return core.full_space(sub)
            rows = spec["rows"]
            if not isinstance(rows, list):
                raise ParseError(f"{path}.rows: expected a list")
            return core.make_behaviour(sub, rows)
        except EnumerationCapExceeded:
            raise
        except (ParseError, ValidationError):
            raise
        except TrajkitError as exc:
            raise ValidationError(f"{path}: {exc}") from exc

    def resolve(self, ref: Any, path: str) -> Behaviour:
        if isinstance(ref, str):
            if ref not in self.named:
                raise ValidationError(f"{path}: no behaviour named {ref!r}")
            return self.named[ref]
        if isinstance(ref, dict):
            return self._build(ref, path)
        raise ParseError(f"{path}: expected a behaviour name or definition object")

    def resolve_lifted(self, ref: Any, target: tuple[str, ...], path: str) -> Behaviour:
        """A behaviour given directly, or as {'raw': ..., 'network': ...}."""
        if isinstance(ref, dict) and "raw" in ref:
            raw = self.resolve(_expect(ref, "raw", None, path), f"{path}.raw")
            network = self.resolve(_expect(ref, "network", None, path), f"{path}.network")
            try:
                return lift_spec(raw, network, target)
            except TrajkitError as exc:
                raise ValidationError(f"{path}: {exc}") from exc
        return self.resolve(ref, path)


def parse_problem_dict(data: Any, path: str = "document") -> ProblemDocument:
    if not isinstance(data, dict):
        raise ParseError(f"{path}: top level must be an object")
    horizon = _expect(data, "horizon", int, path)
    declarations = _expect(data, "variables", dict, path)
    try:
        variables = tuple(
            SignalVariable(name, tuple(alphabet))
            for name, alphabet in declarations.items()
        )
        space = SignalSpace(variables, horizon)
    except TrajkitError as exc:
        raise ValidationError(f"{path}.variables: {exc}") from exc

    named: dict[str, Behaviour] = {}
    resolver = _Resolver(space, named)
    for name, spec in data.get("behaviours", {}).items():
        if not isinstance(name, str) or not name:
            raise ParseError(f"{path}.behaviours: names must be nonempty strings")
        named[name] = resolver._build(spec, f"{path}.behaviours.{name}")

    plant = None
    if "plant" in data:
        section = _expect(data, "plant", dict, path)
        subsystem_refs = _expect(section, "subsystems", list, f"{path}.plant")
        subsystems = [
            resolver.resolve(ref, f"{path}.plant.subsystems[{i}]")
            for i, ref in enumerate(subsystem_refs)
        ]
        network = resolver.resolve(
            _expect(section, "network", None, f"{path}.plant"), f"{path}.plant.network"
        )
        try:
            plant = InterconnectedSystem(subsystems, network)
        except TrajkitError as exc:
            raise ValidationError(f"{path}.plant: {exc}") from exc

    synthesis = None
    if "synthesis" in data:
        if plant is None:
            raise ValidationError(f"{path}: a 'synthesis' section needs a 'plant' section")
        section = _expect(data, "synthesis", dict, path)
        spath = f"{path}.synthesis"
        plant_names = plant.network.space.names
        controller_network = resolver.resolve(
            _expect(section, "controller_network", None, spath),
            f"{spath}.controller_network",
        )
        controller_names = controller_network.space.names
        requirement = resolver.resolve_lifted(
            _expect(section, "requirement", None, spath), plant_names, f"{spath}.requirement"
        )
        restriction = resolver.resolve_lifted(
            _expect(section, "restriction", None, spath),
            controller_names,
            f"{spath}.restriction",
        )
        coupling = resolver.resolve(
            _expect(section, "coupling_network", None, spath), f"{spath}.coupling_network"
        )
        free_vars = section.get("free_vars", [])
        if not isinstance(free_vars, list) or not all(isinstance(n, str) for n in free_vars):
            raise ParseError(f"{spath}.free_vars: expected a list of variable names")
        partition = section.get("controller_partition", [list(controller_names)])
        if not isinstance(partition, list) or not all(
            isinstance(block, list) and all(isinstance(n, str) for n in block)
            for block in partition
        ):
            raise ParseError(f"{spath}.controller_partition: expected a list of name lists")
        try:
            synthesis = SynthesisProblem(
                plant=plant,
                requirement=requirement,
                controller_network=controller_network,
                restriction=restriction,
                coupling_network=coupling,
                free_vars=free_vars,
                controller_partition=partition,
            )
        except TrajkitError as exc:
            raise ValidationError(f"{spath}: {exc}") from exc

    return ProblemDocument(
        space=space,
        behaviours=tuple(sorted(named.items())),
        plant=plant,
        synthesis=synthesis,
    )


def parse_problem_text(text: str, path: str = "document") -> ProblemDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return parse_problem_dict(data, path)


def parse_problem(path: str) -> ProblemDocument:
    """Read and fully validate a problem file."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path!r}: {exc}") from exc
    return parse_problem_text(text, path)


def _behaviour_def(behaviour: Behaviour) -> dict:
    return {
        "vars": list(behaviour.space.names),
        "rows": [
            {v.name: list(seq) for v, seq in zip(behaviour.space.variables, row)}
            for row in behaviour.rows
        ],
    }


def serialize_problem(doc: ProblemDocument) -> dict:
    """Emit a document back as a plain dict with explicit rows everywhere."""
    data: dict = {
        "horizon": doc.space.horizon,
        "variables": {v.name: list(v.alphabet) for v in doc.space.variables},
        "behaviours": {name: _behaviour_def(b) for name, b in doc.behaviours},
    }
    if doc.plant is not None:
        data["plant"] = {
            "subsystems": [_behaviour_def(sub) for sub in doc.plant.subsystems],
            "network": _behaviour_def(doc.plant.network),
        }
    if doc.synthesis is not None:
        problem = doc.synthesis
        data["synthesis"] = {
            "requirement": _behaviour_def(problem.requirement),
            "controller_network": _behaviour_def(problem.controller_network),
            "restriction": _behaviour_def(problem.restriction),
            "coupling_network": _behaviour_def(problem.coupling_network),
            "free_vars": list(problem.free_vars),
            "controller_partition": [list(b) for b in problem.controller_partition],
        }
    return data


def parse_controllers(path: str, doc: ProblemDocument) -> tuple[Behaviour, ...]:
    """Read a controllers file ({"controllers": [definition, ...]}) against a
    document's variable declarations."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise ParseError(f"{path}: top level must be an object")
    refs = _expect(data, "controllers", list, path)
    resolver = _Resolver(doc.space, dict(doc.behaviours))
    return tuple(
        resolver.resolve(ref, f"{path}.controllers[{i}]") for i, ref in enumerate(refs)
    )
