"""Brute-force layer for standard tableaux: exhaustive enumeration, descent
statistics, Robinson-Schensted row insertion and a hook-walk uniform sampler.

Row 1 is the longest row throughout; an entry i is a descent when i + 1 sits
in a row with strictly larger index.
"""

from __future__ import annotations

from bisect import bisect_right
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import CapExceeded
from .partitions import Partition

RNG_NAME = "PCG64"
DEFAULT_ENUM_CAP = 14


class StandardTableau:
    """Bijective filling of a Young diagram by 1..n, strictly increasing along
    rows and columns."""

    __slots__ = ("shape", "entries")

    def __init__(self, entries: Iterable[Sequence[int]]):
        entries = tuple(tuple(int(v) for v in row) for row in entries)
        shape = Partition(len(row) for row in entries)
        n = shape.n
        flat = sorted(v for row in entries for v in row)
        if flat != list(range(1, n + 1)):
            raise ValueError("entries are not a bijection onto 1..n")
        for row in entries:
            if any(row[j] >= row[j + 1] for j in range(len(row) - 1)):
                raise ValueError(f"row {row} is not strictly increasing")
        for i in range(len(entries) - 1):
            below = entries[i + 1]
            if any(entries[i][j] >= below[j] for j in range(len(below))):
                raise ValueError("columns are not strictly increasing")
        self.shape = shape
        self.entries = entries

    def row_of(self, value: int) -> int:
        """1-based index of the row containing `value`."""
        for i, row in enumerate(self.entries, start=1):
            if value in row:
                return i
        raise ValueError(f"{value} is not in the tableau")

    def to_text(self) -> str:
        """Space-separated rows, one per line, longest (bottom) row first."""
        return "\n".join(" ".join(str(v) for v in row) for row in self.entries)

    @classmethod
    def from_text(cls, text: str) -> "StandardTableau":
        rows = [line.split() for line in text.splitlines() if line.strip()]
        return cls([[int(v) for v in row] for row in rows])

    def __eq__(self, other) -> bool:
        return isinstance(other, StandardTableau) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"StandardTableau({list(map(list, self.entries))!r})"


def descent_set(tableau: StandardTableau) -> set[int]:
    """Entries i such that i + 1 lies in a strictly higher row."""
    row_of = {}
    for i, row in enumerate(tableau.entries, start=1):
        for v in row:
            row_of[v] = i
    n = tableau.shape.n
    return {i for i in range(1, n) if row_of[i + 1] > row_of[i]}


def maj(tableau: StandardTableau) -> int:
    """Major index: the sum of the descents."""
    return sum(descent_set(tableau))


def enumerate_standard(
    lam: Partition, cap: int = DEFAULT_ENUM_CAP
) -> Iterator[StandardTableau]:
    """Backtracking enumeration placing 1..n; yields each tableau exactly once."""
    n = lam.n
    if n > cap:
        raise CapExceeded(f"|lambda| = {n} exceeds the enumeration cap {cap}")
    rows = lam.rows
    nrows = len(rows)
    fill = [0] * nrows
    grid = [[0] * r for r in rows]

    def place(k: int) -> Iterator[StandardTableau]:
        if k > n:
            yield StandardTableau([row[:] for row in grid])
            return
        for i in range(nrows):
            if fill[i] < rows[i] and (i == 0 or fill[i - 1] > fill[i]):
                grid[i][fill[i]] = k
                fill[i] += 1
                yield from place(k + 1)
                fill[i] -= 1

    yield from place(1)


def maj_multiset(lam: Partition, cap: int = DEFAULT_ENUM_CAP) -> dict[int, int]:
    """Histogram of maj over all standard tableaux (exhaustive oracle)."""
    n = lam.n
    if n > cap:
        raise CapExceeded(f"|lambda| = {n} exceeds the enumeration cap {cap}")
    rows = lam.rows
    nrows = len(rows)
    fill = [0] * nrows
    row_of = [0] * (n + 1)
    counts: dict[int, int] = {}

    def place(k: int, maj_so_far: int):
        if k > n:
            counts[maj_so_far] = counts.get(maj_so_far, 0) + 1
            return
        for i in range(nrows):
            if fill[i] < rows[i] and (i == 0 or fill[i - 1] > fill[i]):
                row_of[k] = i
                fill[i] += 1
                bump = (k - 1) if k > 1 and i > row_of[k - 1] else 0
                place(k + 1, maj_so_far + bump)
                fill[i] -= 1

    place(1, 0)
    return counts


def perm_descents(images: Sequence[int]) -> set[int]:
    """Descent set of a permutation given as the list of images."""
    return {i for i in range(1, len(images)) if images[i - 1] > images[i]}


def rsk(images: Sequence[int]) -> tuple[StandardTableau, StandardTableau]:
    """Row insertion; returns the insertion and recording tableaux (P, Q)."""
    images = [int(v) for v in images]
    if sorted(images) != list(range(1, len(images) + 1)):
        raise ValueError("input is not a permutation of 1..n")
    p_rows: list[list[int]] = []
    q_rows: list[list[int]] = []
    for pos, value in enumerate(images, start=1):
        x = value
        i = 0
        while True:
            if i == len(p_rows):
                p_rows.append([x])
                q_rows.append([pos])
                break
            row = p_rows[i]
            k = bisect_right(row, x)
            if k == len(row):
                row.append(x)
                q_rows[i].append(pos)
                break
            row[k], x = x, row[k]
            i += 1
    return StandardTableau(p_rows), StandardTableau(q_rows)


class _UniformStream:
    """Buffered 63-bit integer stream drawn from PCG64.

    `below(k)` returns value % k; the modulo bias is below k / 2**63 and is
    negligible against any statistical tolerance used here.
    """

    __slots__ = ("_gen", "_buf", "_pos", "_size")

    def __init__(self, seed: int, size: int = 1 << 16):
        self._gen = np.random.Generator(np.random.PCG64(seed))
        self._size = size
        self._buf = ()
        self._pos = 0

    def below(self, k: int) -> int:
        if self._pos >= len(self._buf):
            self._buf = self._gen.integers(0, 1 << 63, size=self._size).tolist()
            self._pos = 0
        v = self._buf[self._pos]
        self._pos += 1
        return v % k


def _hook_walk_rows(rows: Sequence[int], stream: _UniformStream) -> list[int]:
    """One uniform sample; returns the 0-based row of each value 1..n.

    Values n, n-1, ... are placed by starting at a uniform remaining cell and
    walking to a uniform cell of its hook until a corner is reached.
    """
    rem = list(rows)
    total = sum(rem)
    out = [0] * (total + 1)
    nrows = len(rem)
    for m in range(total, 0, -1):
        t = stream.below(total)
        i = 0
        while t >= rem[i]:
            t -= rem[i]
            i += 1
        j = t
        while True:
            arm = rem[i] - 1 - j
            leg = 0
            k = i + 1
            while k < nrows and rem[k] > j:
                leg += 1
                k += 1
            if arm == 0 and leg == 0:
                break
            t = stream.below(arm + leg)
            if t < arm:
                j += 1 + t
            else:
                i += 1 + (t - arm)
        out[m] = i
        rem[i] -= 1
        total -= 1
    return out


def _entries_from_rows(shape_rows: Sequence[int], row_of: Sequence[int]):
    grid: list[list[int]] = [[] for _ in shape_rows]
    for v in range(1, len(row_of)):
        grid[row_of[v]].append(v)
    return grid


def sample_uniform(lam: Partition, seed: int) -> StandardTableau:
    """Deterministic-for-seed uniform sample from the standard tableaux of lam."""
    if lam.n < 1:
        raise ValueError("cannot sample from the empty partition")
    stream = _UniformStream(seed)
    row_of = _hook_walk_rows(lam.rows, stream)
    return StandardTableau(_entries_from_rows(lam.rows, row_of))


def sample_row_sequences(
    lam: Partition, trials: int, seed: int
) -> Iterator[tuple[int, ...]]:
    """Stream of `trials` hook-walk samples keyed by the row of each value.

    The row sequence determines the tableau uniquely (each row is filled in
    increasing order), so it is a cheap identity for frequency tests.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    stream = _UniformStream(seed)
    rows = lam.rows
    for _ in range(trials):
        yield tuple(_hook_walk_rows(rows, stream)[1:])


def maj_histogram_mc(lam: Partition, trials: int, seed: int) -> dict[int, int]:
    """Empirical maj histogram over `trials` hook-walk samples."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    stream = _UniformStream(seed)
    rows = lam.rows
    counts: dict[int, int] = {}
    for _ in range(trials):
        row_of = _hook_walk_rows(rows, stream)
        total = 0
        for i in range(1, lam.n):
            if row_of[i + 1] > row_of[i]:
                total += i
        counts[total] = counts.get(total, 0) + 1
    return counts
