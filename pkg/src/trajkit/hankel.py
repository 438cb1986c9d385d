"""Exact rational block-Hankel utilities for trajectory data.

Everything here runs on arbitrary-precision rationals; there is no floating
point and no tolerance anywhere.  Rank and determinant use fraction-free
(Bareiss) elimination on integer-scaled rows; span membership solves the
linear system exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import DimensionMismatch, LengthError, ParseError, UnknownBlock


def _to_fraction(value) -> Fraction:
    if isinstance(value, bool):
        raise DimensionMismatch(f"entry {value!r} is not a rational number")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"cannot read rational entry {value!r}: {exc}") from exc
    raise DimensionMismatch(f"entry {value!r} is not a rational number")


@dataclass(frozen=True)
class RationalMatrix:
    """An immutable matrix of exact rationals."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(_to_fraction(x) for x in row) for row in self.entries)
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise DimensionMismatch(f"ragged rows, widths {sorted(widths)}")
        object.__setattr__(self, "entries", rows)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)

    def submatrix(self, row_indices: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix(tuple(self.entries[i] for i in row_indices))

    def render(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.entries)


@dataclass(frozen=True)
class RealTrajectory:
    """A finite-length vector trajectory with named-size variable blocks.

    ``samples[t]`` is the stacked value of all blocks at time ``t + 1``.
    """

    block_sizes: tuple[int, ...]
    samples: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.block_sizes)
        if not sizes or any(s < 1 for s in sizes):
            raise DimensionMismatch(f"block sizes must be positive, got {sizes}")
        width = sum(sizes)
        rows = tuple(tuple(_to_fraction(x) for x in row) for row in self.samples)
        if not rows:
            raise LengthError("a trajectory needs at least one time step")
        for t, row in enumerate(rows):
            if len(row) != width:
                raise DimensionMismatch(
                    f"sample at step {t + 1} has {len(row)} entries, blocks need {width}"
                )
        object.__setattr__(self, "block_sizes", sizes)
        object.__setattr__(self, "samples", rows)

    @property
    def length(self) -> int:
        return len(self.samples)

    @property
    def width(self) -> int:
        return sum(self.block_sizes)

    def block_offsets(self) -> list[tuple[int, int]]:
        """(start, stop) column range of each block within a sample."""
        out = []
        start = 0
        for size in self.block_sizes:
            out.append((start, start + size))
            start += size
        return out


def hankel(trajectory: RealTrajectory, depth: int) -> RationalMatrix:
    """Block-Hankel matrix with ``depth`` block-rows and ``T - depth + 1`` columns.

    Column ``j`` stacks the samples at times ``j .. j + depth - 1``; within one
    block-row the variable blocks keep their declared order.
    """
    T = trajectory.length
    if not isinstance(depth, int) or depth < 1 or depth > T:
        raise LengthError(f"window depth {depth!r} must be in 1..{T}")
    cols = T - depth + 1
    rows = []
    for shift in range(depth):
        for dim in range(trajectory.width):
            rows.append(
                tuple(trajectory.samples[shift + j][dim] for j in range(cols))
            )
    return RationalMatrix(tuple(rows))


def _integer_rows(matrix: RationalMatrix) -> list[list[int]]:
    # Scaling each row by the lcm of its denominators preserves rank and span.
    out = []
    for row in matrix.entries:
        scale = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * scale) for x in row])
    return out


def rank(matrix: RationalMatrix) -> int:
    """Exact rank by fraction-free (Bareiss) elimination."""
    a = _integer_rows(matrix)
    m = len(a)
    n = len(a[0]) if a else 0
    r = 0
    prev = 1
    for c in range(n):
        pivot_row = next((i for i in range(r, m) if a[i][c] != 0), None)
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == m:
            break
    return r


def determinant(matrix: RationalMatrix) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = matrix.rows
    if n != matrix.cols:
        raise DimensionMismatch(f"determinant needs a square matrix, got {n}x{matrix.cols}")
    if n == 0:
        return Fraction(1)
    a = []
    scale = Fraction(1)
    for row in matrix.entries:
        s = lcm(*(x.denominator for x in row))
        scale *= s
        a.append([int(x * s) for x in row])
    sign = 1
    prev = 1
    for c in range(n - 1):
        pivot_row = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            a[c], a[pivot_row] = a[pivot_row], a[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                a[i][j] = (a[i][j] * a[c][c] - a[i][c] * a[c][j]) // prev
            a[i][c] = 0
        prev = a[c][c]
    return Fraction(sign * a[n - 1][n - 1]) / scale


def in_span(matrix: RationalMatrix, vector: Iterable) -> bool:
    """True iff the vector is an exact rational combination of the columns."""
    v = [_to_fraction(x) for x in vector]
    if len(v) != matrix.rows:
        raise DimensionMismatch(
            f"vector has length {len(v)}, matrix has {matrix.rows} rows"
        )
    # Solve by exact Gaussian elimination on the augmented system.
    aug = [list(row) + [v[i]] for i, row in enumerate(matrix.entries)]
    m = matrix.rows
    n = matrix.cols
    r = 0
    for c in range(n):
        pivot_row = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if pivot_row is None:
            continue
        aug[r], aug[pivot_row] = aug[pivot_row], aug[r]
        pivot = aug[r][c]
        for i in range(m):
            if i == r or aug[i][c] == 0:
                continue
            factor = aug[i][c] / pivot
            for j in range(c, n + 1):
                aug[i][j] -= factor * aug[r][j]
        r += 1
        if r == m:
            break
    # Consistent iff no row reduces to (0 ... 0 | nonzero).
    return all(any(row[j] != 0 for j in range(n)) or row[n] == 0 for row in aug)


def free_rows_check(
    trajectory: RealTrajectory, free_blocks: Iterable[int], depth: int
) -> bool:
    """Full-row-rank test of the chosen blocks' rows inside the Hankel matrix.

    Selects, within every block-row of the depth-``depth`` Hankel matrix, the
    rows belonging to the chosen variable blocks, and checks that this
    submatrix has full row rank.
    """
    blocks = sorted(set(free_blocks))
    offsets = trajectory.block_offsets()
    for b in blocks:
        if not isinstance(b, int) or b < 0 or b >= len(offsets):
            raise UnknownBlock(
                f"block {b!r} not in 0..{len(offsets) - 1}"
            )
    matrix = hankel(trajectory, depth)
    width = trajectory.width
    selected = []
    for shift in range(depth):
        for b in blocks:
            start, stop = offsets[b]
            selected.extend(range(shift * width + start, shift * width + stop))
    sub = matrix.submatrix(selected)
    return rank(sub) == len(selected)


def parse_trajectory(text: str) -> RealTrajectory:
    """Read the plain-text trajectory format.

    First line: block sizes, whitespace-separated.  Each following nonempty
    line: one time step of rational entries (``p/q`` or integers),
    whitespace-separated.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty trajectory file")
    try:
        sizes = tuple(int(tok) for tok in lines[0].split())
    except ValueError as exc:
        raise ParseError(f"bad block-size header {lines[0]!r}: {exc}") from exc
    samples = []
    for ln in lines[1:]:
        samples.append(tuple(_to_fraction(tok) for tok in ln.split()))
    try:
        return RealTrajectory(sizes, tuple(samples))
    except (DimensionMismatch, LengthError) as exc:
        raise ParseError(str(exc)) from exc
