"""d-dimensional partitions: validation, enumeration and canonical encoding.

A d-partition is a finitely supported map from d-tuples of positive integers
to positive integers, non-increasing along every axis.  Equivalently its
*cells* ``(x_1, ..., x_d, l)`` with ``1 <= l <= pi[x]`` form a finite order
ideal of the positive orthant in dimension d + 1.  Solid partitions are d = 3.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import ResourceLimitError

Coord = tuple[int, ...]
Cell = tuple[int, ...]

DEFAULT_CAP = 2_000_000


def check_monotone(dim: int, entries: Mapping[Coord, int]) -> None:
    """Raise ``ValueError`` unless ``entries`` defines a valid d-partition."""
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    for x, v in entries.items():
        if len(x) != dim:
            raise ValueError(f"index {x} does not have length {dim}")
        if any(c < 1 for c in x):
            raise ValueError(f"index {x} has a non-positive coordinate")
        if v < 0:
            raise ValueError(f"negative entry {v} at {x}")
        if v == 0:
            continue
        for axis in range(dim):
            if x[axis] > 1:
                prev = x[:axis] + (x[axis] - 1,) + x[axis + 1:]
                if entries.get(prev, 0) < v:
                    raise ValueError(f"entry at {x} exceeds entry at {prev}")


@dataclass(frozen=True)
class DPartition:
    dim: int
    entries: tuple[tuple[Coord, int], ...]

    @classmethod
    def from_entries(cls, dim: int, entries: Mapping[Sequence[int], int]) -> DPartition:
        clean = {tuple(int(c) for c in x): int(v) for x, v in entries.items() if v}
        check_monotone(dim, clean)
        return cls(dim, tuple(sorted(clean.items())))

    @classmethod
    def from_cells(cls, dim: int, cells: Iterable[Sequence[int]]) -> DPartition:
        """Build from a (d+1)-dimensional cell list; rejects non-ideals."""
        cellset = {tuple(int(c) for c in cell) for cell in cells}
        counts: dict[Coord, int] = {}
        for cell in cellset:
            if len(cell) != dim + 1:
                raise ValueError(f"cell {cell} does not have length {dim + 1}")
            counts[cell[:-1]] = counts.get(cell[:-1], 0) + 1
        for cell in cellset:
            if cell[-1] < 1 or cell[-1] > counts[cell[:-1]]:
                raise ValueError(f"cells over {cell[:-1]} are not a contiguous column")
        return cls.from_entries(dim, counts)

    @classmethod
    def empty(cls, dim: int = 3) -> DPartition:
        return cls(dim, ())

    def as_dict(self) -> dict[Coord, int]:
        return dict(self.entries)

    def __getitem__(self, x: Coord) -> int:
        return self.as_dict().get(tuple(x), 0)

    @property
    def size(self) -> int:
        return sum(v for _, v in self.entries)

    @property
    def height(self) -> int:
        """Entry at the all-ones index; zero for the empty partition."""
        return self.as_dict().get((1,) * self.dim, 0)

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        body = ", ".join(f"{x}: {v}" for x, v in self.entries)
        return f"DPartition(dim={self.dim}, {{{body}}})"


def cells(pi: DPartition) -> list[Cell]:
    """All cells ``(x..., l)`` with ``1 <= l <= pi[x]``, sorted lexicographically."""
    return sorted(x + (l,) for x, v in pi.entries for l in range(1, v + 1))


def canonical_key(pi: DPartition) -> bytes:
    """Deterministic byte encoding: the dimension and the sorted cell list."""
    payload = [pi.dim, [list(c) for c in cells(pi)]]
    return json.dumps(payload, separators=(",", ":")).encode("ascii")


def key_str(pi: DPartition) -> str:
    return canonical_key(pi).decode("ascii")


def from_key(key: bytes | str) -> DPartition:
    if isinstance(key, bytes):
        key = key.decode("ascii")
    dim, cell_list = json.loads(key)
    return DPartition.from_cells(dim, cell_list)


def to_json(pi: DPartition) -> dict:
    return {"dim": pi.dim, "cells": [list(c) for c in cells(pi)]}


def from_json(obj: Mapping) -> DPartition:
    try:
        dim = int(obj["dim"])
        cell_list = obj["cells"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"partition JSON needs 'dim' and 'cells': {exc}") from None
    return DPartition.from_cells(dim, cell_list)


def _addable(cellset: frozenset[Cell], width: int) -> list[Cell]:
    candidates = {(1,) * width} if not cellset else set()
    for cell in cellset:
        for axis in range(width):
            candidates.add(cell[:axis] + (cell[axis] + 1,) + cell[axis + 1:])
    out = []
    for cand in candidates:
        if cand in cellset:
            continue
        if all(
            cand[axis] == 1 or cand[:axis] + (cand[axis] - 1,) + cand[axis + 1:] in cellset
            for axis in range(width)
        ):
            out.append(cand)
    return out


@lru_cache(maxsize=None)
def _ideals(width: int, size: int, cap: int) -> tuple[frozenset[Cell], ...]:
    if size == 0:
        return (frozenset(),)
    found: set[frozenset[Cell]] = set()
    for smaller in _ideals(width, size - 1, cap):
        for cell in _addable(smaller, width):
            found.add(smaller | {cell})
            if len(found) > cap:
                raise ResourceLimitError(
                    f"more than {cap} partitions of size {size} in dimension {width - 1}"
                )
    return tuple(sorted(found, key=sorted))


def enumerate_partitions(dim: int, size: int, cap: int = DEFAULT_CAP) -> list[DPartition]:
    """All d-partitions of ``size``, each once, ordered by sorted cell list."""
    if dim < 1 or size < 0:
        raise ValueError(f"need dim >= 1 and size >= 0, got ({dim}, {size})")
    return [DPartition.from_cells(dim, ideal) for ideal in _ideals(dim + 1, size, cap)]


def partitions_up_to(dim: int, max_size: int, cap: int = DEFAULT_CAP) -> list[DPartition]:
    out: list[DPartition] = []
    for n in range(max_size + 1):
        out.extend(enumerate_partitions(dim, n, cap))
    return out


def solid_from_monomials(exponents: Iterable[Sequence[int]]) -> DPartition:
    """Solid partition whose character has the given (a, b, c, e) exponents."""
    return DPartition.from_cells(3, [tuple(e + 1 for e in exp) for exp in exponents])
