"""Finite trajectory-set behaviours.

A behaviour is a finite relation: a set of trajectories over named variables,
each variable ranging over a finite alphabet, all sharing one discrete horizon
``T`` (time axis ``1..T``).  Rows are kept in a canonical sorted order so that
equal behaviours compare and serialize identically.  All values are immutable;
every operation returns a new behaviour.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .errors import (
    EnumerationCapExceeded,
    HorizonError,
    SchemaMismatch,
    SchemaViolation,
    UnknownVariable,
)

Symbol = int | str

#: Default guard on any row materialization (full spaces, products).
DEFAULT_ENUMERATION_CAP = 10**6

# Characters that would make the canonical text serialization ambiguous.
_FORBIDDEN = set(" \t\n,|{}:")


def _symbol_sort_key(sym: Symbol):
    # Integers sort before strings so mixed alphabets stay orderable.
    if isinstance(sym, bool):
        raise SchemaViolation("boolean symbols are not supported")
    if isinstance(sym, int):
        return (0, sym, "")
    return (1, 0, sym)


def _check_symbol(sym: Symbol) -> Symbol:
    if isinstance(sym, bool) or not isinstance(sym, (int, str)):
        raise SchemaViolation(f"symbol {sym!r} must be an int or a str")
    if isinstance(sym, str):
        if not sym or _FORBIDDEN & set(sym):
            raise SchemaViolation(
                f"string symbol {sym!r} must be nonempty and free of whitespace and ',|{{}}:'"
            )
    return sym


@dataclass(frozen=True)
class SignalVariable:
    """A named variable with a finite, canonically ordered alphabet."""

    name: str
    alphabet: tuple[Symbol, ...]
    _index: Mapping[Symbol, int] = field(
        init=False, repr=False, compare=False, hash=False, default=None
    )

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name.isidentifier():
            raise SchemaViolation(f"variable name {self.name!r} must be an identifier")
        symbols = tuple(_check_symbol(s) for s in self.alphabet)
        if not symbols:
            raise SchemaViolation(f"variable {self.name!r} has an empty alphabet")
        if len(set(symbols)) != len(symbols):
            raise SchemaViolation(f"variable {self.name!r} has duplicate symbols")
        ordered = tuple(sorted(symbols, key=_symbol_sort_key))
        object.__setattr__(self, "alphabet", ordered)
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(ordered)})

    def __contains__(self, sym) -> bool:
        return sym in self._index


@dataclass(frozen=True)
class SignalSpace:
    """The schema of a behaviour: variables (sorted by name) and a horizon.

    A space may have zero variables; its single conforming trajectory is the
    empty tuple.  Two spaces are equal iff they have the same variables (names
    and alphabets) and the same horizon.
    """

    variables: tuple[SignalVariable, ...]
    horizon: int

    def __post_init__(self):
        if not isinstance(self.horizon, int) or self.horizon < 1:
            raise HorizonError(f"horizon must be a positive integer, got {self.horizon!r}")
        ordered = tuple(sorted(self.variables, key=lambda v: v.name))
        names = [v.name for v in ordered]
        if len(set(names)) != len(names):
            raise SchemaViolation(f"duplicate variable names in {names}")
        object.__setattr__(self, "variables", ordered)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    def var(self, name: str) -> SignalVariable:
        for v in self.variables:
            if v.name == name:
                return v
        raise UnknownVariable(f"variable {name!r} not in space {self.names}")

    def positions(self, names: Iterable[str]) -> tuple[int, ...]:
        """Indices of the given names in this space's variable order."""
        lookup = {v.name: i for i, v in enumerate(self.variables)}
        out = []
        for n in names:
            if n not in lookup:
                raise UnknownVariable(f"variable {n!r} not in space {self.names}")
            out.append(lookup[n])
        return tuple(out)

    def subspace(self, names: Iterable[str]) -> "SignalSpace":
        keep = sorted(set(names))
        return SignalSpace(tuple(self.var(n) for n in keep), self.horizon)

    def trajectory_count(self) -> int:
        """Exact number of conforming trajectories (may be huge; never materialized)."""
        count = 1
        for v in self.variables:
            count *= len(v.alphabet) ** self.horizon
        return count

    def row_key(self, row: tuple) -> tuple:
        """Canonical sort key: variable-major, then time, then alphabet position."""
        return tuple(
            tuple(v._index[s] for s in seq) for v, seq in zip(self.variables, row)
        )

    def format_row(self, row: tuple) -> str:
        if not self.variables:
            return "()"
        return " ".join(
            f"{v.name}={','.join(str(s) for s in seq)}"
            for v, seq in zip(self.variables, row)
        )


def signal_space(horizon: int, **alphabets: Iterable[Symbol]) -> SignalSpace:
    """Convenience factory: ``signal_space(2, a=(0, 1), b=("x", "y"))``."""
    return SignalSpace(
        tuple(SignalVariable(n, tuple(a)) for n, a in alphabets.items()), horizon
    )


def _normalize_row(space: SignalSpace, row) -> tuple:
    """Validate one trajectory against the space; returns nested tuples.

    Accepts either a sequence of per-variable sequences aligned with the
    space's (sorted) variable order, or a mapping from variable name to
    sequence.
    """
    if isinstance(row, Mapping):
        extra = set(row) - set(space.names)
        if extra:
            raise SchemaViolation(f"row mentions unknown variables {sorted(extra)}")
        missing = set(space.names) - set(row)
        if missing:
            raise SchemaViolation(f"row is missing variables {sorted(missing)}")
        parts = [row[v.name] for v in space.variables]
    else:
        parts = list(row)
        if len(parts) != len(space.variables):
            raise SchemaViolation(
                f"row has {len(parts)} variable sequences, space has {len(space.variables)}"
            )
    out = []
    for v, seq in zip(space.variables, parts):
        if isinstance(seq, (str, int)):
            raise SchemaViolation(
                f"sequence for {v.name!r} must be a sequence of symbols, got {seq!r}"
            )
        seq = tuple(seq)
        if len(seq) != space.horizon:
            raise SchemaViolation(
                f"sequence for {v.name!r} has length {len(seq)}, horizon is {space.horizon}"
            )
        for s in seq:
            if isinstance(s, bool) or s not in v._index:
                raise SchemaViolation(f"symbol {s!r} not in alphabet of {v.name!r}")
        out.append(seq)
    return tuple(out)


@dataclass(frozen=True)
class Behaviour:
    """A canonical set of trajectories over a signal space.

    Construction validates every row against the space, removes duplicates and
    sorts rows into the canonical order, so two behaviours are equal exactly
    when they contain the same trajectory set over the same space.  The empty
    behaviour is valid.
    """

    space: SignalSpace
    rows: tuple = ()
    _rowset: frozenset = field(
        init=False, repr=False, compare=False, hash=False, default=None
    )

    def __post_init__(self):
        normalized = {_normalize_row(self.space, r) for r in self.rows}
        ordered = tuple(sorted(normalized, key=self.space.row_key))
        object.__setattr__(self, "rows", ordered)
        object.__setattr__(self, "_rowset", frozenset(ordered))

    @classmethod
    def _wrap(cls, space: SignalSpace, rows: tuple, rowset=None) -> "Behaviour":
        """Fast path for rows already canonical (validated, deduplicated, sorted)."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "space", space)
        object.__setattr__(obj, "rows", rows)
        object.__setattr__(obj, "_rowset", frozenset(rows) if rowset is None else rowset)
        return obj

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[tuple]:
        return iter(self.rows)

    def __contains__(self, row) -> bool:
        return row in self._rowset

    def __repr__(self) -> str:
        return f"Behaviour({len(self.rows)} rows over {','.join(self.space.names) or '()'} T={self.space.horizon})"

    @property
    def is_empty(self) -> bool:
        return not self.rows

    def contains(self, row) -> bool:
        """Membership test accepting any row form (mapping or aligned sequences)."""
        try:
            return _normalize_row(self.space, row) in self._rowset
        except SchemaViolation:
            return False

    def canonical_text(self) -> str:
        """One header line (schema), then one line per row in canonical order."""
        header_vars = " ".join(
            f"{v.name}:{{{','.join(str(s) for s in v.alphabet)}}}"
            for v in self.space.variables
        )
        header = f"{header_vars or '()'} | T={self.space.horizon} | rows={len(self.rows)}"
        lines = [header]
        for row in self.rows:
            if not self.space.variables:
                lines.append("()")
            else:
                lines.append(" | ".join(",".join(str(s) for s in seq) for seq in row))
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "horizon": self.space.horizon,
            "variables": {v.name: list(v.alphabet) for v in self.space.variables},
            "rows": [
                {v.name: list(seq) for v, seq in zip(self.space.variables, row)}
                for row in self.rows
            ],
        }


def make_behaviour(space: SignalSpace, rows: Iterable) -> Behaviour:
    """Build a behaviour from rows (mappings or aligned sequences); canonicalizes."""
    return Behaviour(space, tuple(rows))


def empty_behaviour(space: SignalSpace) -> Behaviour:
    return Behaviour._wrap(space, ())


def _seq_space(var: SignalVariable, horizon: int):
    # Sequences in canonical (alphabet-position lexicographic) order.
    return itertools.product(var.alphabet, repeat=horizon)


def full_space(space: SignalSpace, cap: int = DEFAULT_ENUMERATION_CAP) -> Behaviour:
    """The behaviour containing every conforming trajectory of the space."""
    count = space.trajectory_count()
    if count > cap:
        raise EnumerationCapExceeded(count, cap)
    rows = tuple(
        itertools.product(*(_seq_space(v, space.horizon) for v in space.variables))
    )
    return Behaviour._wrap(space, rows)


def iter_full_rows(space: SignalSpace) -> Iterator[tuple]:
    """Lazily yield every conforming trajectory in canonical order (no cap)."""
    return itertools.product(*(_seq_space(v, space.horizon) for v in space.variables))


def restrict(behaviour: Behaviour, new_horizon: int) -> Behaviour:
    """Prefix restriction: keep the first ``new_horizon`` steps of every row.

    The result holds the prefixes of the stored rows only; no claim is made
    about trajectories whose extensions were never stored.
    """
    space = behaviour.space
    if not isinstance(new_horizon, int) or new_horizon < 1 or new_horizon > space.horizon:
        raise HorizonError(
            f"new horizon {new_horizon!r} must be in 1..{space.horizon}"
        )
    new_space = SignalSpace(space.variables, new_horizon)
    rows = {tuple(seq[:new_horizon] for seq in row) for row in behaviour.rows}
    return Behaviour._wrap(new_space, tuple(sorted(rows, key=new_space.row_key)))


def equality_behaviour(
    space: SignalSpace, names: Iterable[str], cap: int = DEFAULT_ENUMERATION_CAP
) -> Behaviour:
    """The diagonal relation: all named variables share one trajectory.

    The result's space is the named subspace of ``space``.  All named variables
    must have identical alphabets.
    """
    keep = sorted(set(names))
    if len(keep) < 2:
        raise SchemaMismatch("equality needs at least two variables")
    variables = [space.var(n) for n in keep]
    first = variables[0]
    for v in variables[1:]:
        if v.alphabet != first.alphabet:
            raise SchemaMismatch(
                f"equality over {keep} needs identical alphabets; "
                f"{v.name!r} differs from {first.name!r}"
            )
    count = len(first.alphabet) ** space.horizon
    if count > cap:
        raise EnumerationCapExceeded(count, cap)
    sub = space.subspace(keep)
    rows = tuple((seq,) * len(keep) for seq in _seq_space(first, space.horizon))
    return Behaviour._wrap(sub, rows)
