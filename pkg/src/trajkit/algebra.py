"""Exact relational operations on behaviours.

Product, intersection, union, difference, projection, and the freeness and
observability tests.  Because variables are named and schemas are re-sorted,
the product here is commutative and associative up to schema equality, and the
n-ary product folds into the binary one.
"""

from __future__ import annotations

from typing import Iterable

from .core import DEFAULT_ENUMERATION_CAP, Behaviour, SignalSpace
from .errors import (
    EnumerationCapExceeded,
    HorizonMismatch,
    OverlapError,
    SchemaMismatch,
    VariableClash,
)


def _names(varset: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(set(varset)))


def _require_same_schema(b1: Behaviour, b2: Behaviour):
    if b1.space != b2.space:
        raise SchemaMismatch(
            f"schemas differ: {b1.space.names} T={b1.space.horizon} "
            f"vs {b2.space.names} T={b2.space.horizon}"
        )


def product(
    b1: Behaviour, b2: Behaviour, cap: int = DEFAULT_ENUMERATION_CAP
) -> Behaviour:
    """All combinations of a row of ``b1`` with a row of ``b2``.

    The operands must have disjoint variable names and equal horizons; the
    result's schema is the (re-sorted) union of the two schemas.
    """
    s1, s2 = b1.space, b2.space
    if s1.horizon != s2.horizon:
        raise HorizonMismatch(f"horizons differ: {s1.horizon} vs {s2.horizon}")
    clash = set(s1.names) & set(s2.names)
    if clash:
        raise VariableClash(f"variables {sorted(clash)} appear on both sides")
    needed = len(b1) * len(b2)
    if needed > cap:
        raise EnumerationCapExceeded(needed, cap)
    merged = SignalSpace(s1.variables + s2.variables, s1.horizon)
    # For each merged position, where the sequence comes from.
    pick = []
    pos1 = {n: i for i, n in enumerate(s1.names)}
    pos2 = {n: i for i, n in enumerate(s2.names)}
    for v in merged.variables:
        pick.append((0, pos1[v.name]) if v.name in pos1 else (1, pos2[v.name]))
    rows = []
    for r1 in b1.rows:
        for r2 in b2.rows:
            pair = (r1, r2)
            rows.append(tuple(pair[side][idx] for side, idx in pick))
    return Behaviour._wrap(merged, tuple(sorted(rows, key=merged.row_key)))


def intersect(b1: Behaviour, b2: Behaviour) -> Behaviour:
    _require_same_schema(b1, b2)
    if len(b2) < len(b1):
        b1, b2 = b2, b1
    rows = tuple(r for r in b1.rows if r in b2)
    return Behaviour._wrap(b1.space, rows)


def union(b1: Behaviour, b2: Behaviour) -> Behaviour:
    _require_same_schema(b1, b2)
    merged = set(b1.rows) | set(b2.rows)
    return Behaviour._wrap(
        b1.space, tuple(sorted(merged, key=b1.space.row_key)), frozenset(merged)
    )


def difference(b1: Behaviour, b2: Behaviour) -> Behaviour:
    _require_same_schema(b1, b2)
    rows = tuple(r for r in b1.rows if r not in b2)
    return Behaviour._wrap(b1.space, rows)


def is_subset(b1: Behaviour, b2: Behaviour) -> bool:
    _require_same_schema(b1, b2)
    return b1._rowset <= b2._rowset


def project(behaviour: Behaviour, varset: Iterable[str]) -> Behaviour:
    """Restriction to a variable subset, existentially dropping the rest.

    Projecting onto the empty set yields the zero-variable behaviour holding
    the single empty trajectory iff the input is nonempty.
    """
    keep = _names(varset)
    space = behaviour.space
    positions = space.positions(keep)  # raises UnknownVariable
    sub = space.subspace(keep)
    if not keep:
        rows = ((),) if behaviour.rows else ()
        return Behaviour._wrap(sub, rows)
    if keep == space.names:
        return behaviour
    seen = {tuple(row[i] for i in positions) for row in behaviour.rows}
    return Behaviour._wrap(sub, tuple(sorted(seen, key=sub.row_key)))


def is_free(behaviour: Behaviour, varset: Iterable[str]) -> bool:
    """True iff the projection onto ``varset`` is the full trajectory space.

    Compares cardinalities; the full space is never materialized.  With the
    empty variable set this reduces to nonemptiness of the behaviour.
    """
    keep = _names(varset)
    projected = project(behaviour, keep)
    return len(projected) == projected.space.trajectory_count()


def is_observable(
    behaviour: Behaviour, observed: Iterable[str], via: Iterable[str]
) -> bool:
    """True iff every ``via``-trajectory occurring in the behaviour co-occurs
    with exactly one ``observed``-trajectory.

    Distinct ``via``-trajectories may share the same ``observed``-trajectory.
    """
    s1 = _names(observed)
    s2 = _names(via)
    overlap = set(s1) & set(s2)
    if overlap:
        raise OverlapError(f"variable sets overlap on {sorted(overlap)}")
    space = behaviour.space
    pos1 = space.positions(s1)
    pos2 = space.positions(s2)
    seen: dict[tuple, tuple] = {}
    for row in behaviour.rows:
        key = tuple(row[i] for i in pos2)
        val = tuple(row[i] for i in pos1)
        if seen.setdefault(key, val) != val:
            return False
    return True


def product_all(
    behaviours: Iterable[Behaviour], cap: int = DEFAULT_ENUMERATION_CAP
) -> Behaviour:
    """Fold of the binary product over one or more behaviours."""
    items = list(behaviours)
    if not items:
        raise SchemaMismatch("product of zero behaviours is undefined")
    acc = items[0]
    for b in items[1:]:
        acc = product(acc, b, cap=cap)
    return acc
