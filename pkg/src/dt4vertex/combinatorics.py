"""Combinatorial weights of d-partitions via binary-layer decompositions.

A d-partition ``pi`` is written as a sum of indicator functions of
(d-1)-partitions ``xi`` (their binary representations, i.e. finite order
ideals of the positive d-orthant), with multiplicities ``m_xi``.  The weight
is the sum over all such decompositions of ``prod 1 / m_xi!``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import ResourceLimitError
from .partitions import DPartition, cells, key_str

DEFAULT_CAP = 1_000_000

Coord = tuple[int, ...]


def binary_indicator(xi: DPartition, point: Sequence[int]) -> int:
    """1 if the last coordinate of ``point`` is at most ``xi`` at the leading ones."""
    point = tuple(point)
    if len(point) != xi.dim + 1:
        raise ValueError(f"point {point} should have length {xi.dim + 1}")
    return int(point[-1] <= xi[point[:-1]])


@dataclass(frozen=True)
class Decomposition:
    parts: tuple[tuple[DPartition, int], ...]

    @property
    def multiplicities(self) -> dict[str, int]:
        return {key_str(xi): m for xi, m in self.parts}

    def weight(self) -> Fraction:
        out = Fraction(1)
        for _, m in self.parts:
            out /= math.factorial(m)
        return out

    def reconstruct(self) -> dict[Coord, int]:
        total: dict[Coord, int] = {}
        for xi, m in self.parts:
            for cell in cells(xi):
                total[cell] = total.get(cell, 0) + m
        return total


def _sub_ideals(support: list[Coord]) -> list[frozenset[Coord]]:
    """All nonempty order ideals contained in the order ideal ``support``."""
    order = sorted(support)
    dim = len(order[0]) if order else 0
    out: list[frozenset[Coord]] = []

    def preds(x: Coord):
        for a in range(dim):
            if x[a] > 1:
                yield x[:a] + (x[a] - 1,) + x[a + 1:]

    def rec(i: int, chosen: set[Coord]) -> None:
        if i == len(order):
            if chosen:
                out.append(frozenset(chosen))
            return
        x = order[i]
        rec(i + 1, chosen)
        if all(p in chosen for p in preds(x)):
            chosen.add(x)
            rec(i + 1, chosen)
            chosen.remove(x)

    rec(0, set())
    return out


class _Problem:
    def __init__(self, pi: DPartition):
        if pi.dim < 2:
            raise ValueError("decompositions need dimension at least 2")
        self.pi = pi
        entries = pi.as_dict()
        self.support = sorted(entries)
        self.index = {x: n for n, x in enumerate(self.support)}
        self.target = tuple(entries[x] for x in self.support)
        ideals = _sub_ideals(self.support)
        ideals.sort(key=lambda s: (-len(s), sorted(s)))
        self.ideals = ideals
        self.positions = [tuple(sorted(self.index[x] for x in s)) for s in ideals]
        last = [-1] * len(self.support)
        for n, pos in enumerate(self.positions):
            for p in pos:
                last[p] = n
        self.last = last

    def feasible(self, i: int, remaining: tuple[int, ...]) -> bool:
        return all(r == 0 or self.last[p] >= i for p, r in enumerate(remaining))

    def max_mult(self, i: int, remaining: tuple[int, ...]) -> int:
        return min(remaining[p] for p in self.positions[i])

    def subtract(self, i: int, remaining: tuple[int, ...], m: int) -> tuple[int, ...]:
        rem = list(remaining)
        for p in self.positions[i]:
            rem[p] -= m
        return tuple(rem)

    def xi(self, i: int) -> DPartition:
        return DPartition.from_cells(self.pi.dim - 1, self.ideals[i])


def decompositions(pi: DPartition, cap: int = DEFAULT_CAP) -> list[Decomposition]:
    """Every multiplicity assignment reconstructing ``pi``, in a fixed order."""
    if pi.size == 0:
        return [Decomposition(())]
    prob = _Problem(pi)
    out: list[Decomposition] = []
    chosen: list[tuple[int, int]] = []

    def rec(i: int, remaining: tuple[int, ...]) -> None:
        if not any(remaining):
            out.append(Decomposition(tuple((prob.xi(j), m) for j, m in chosen)))
            if len(out) > cap:
                raise ResourceLimitError(f"more than {cap} decompositions of {pi}")
            return
        if i == len(prob.ideals) or not prob.feasible(i, remaining):
            return
        for m in range(prob.max_mult(i, remaining), -1, -1):
            if m:
                chosen.append((i, m))
            rec(i + 1, prob.subtract(i, remaining, m))
            if m:
                chosen.pop()

    rec(0, prob.target)
    return out


@lru_cache(maxsize=None)
def _factorial_inv(m: int) -> Fraction:
    return Fraction(1, math.factorial(m))


@lru_cache(maxsize=4096)
def omega_c(pi: DPartition) -> Fraction:
    """Sum over decompositions of prod 1/m!; memoized on (position, remainder)."""
    if pi.size == 0:
        return Fraction(1)
    prob = _Problem(pi)
    memo: dict[tuple[int, tuple[int, ...]], Fraction] = {}

    def rec(i: int, remaining: tuple[int, ...]) -> Fraction:
        if not any(remaining):
            return Fraction(1)
        if i == len(prob.ideals) or not prob.feasible(i, remaining):
            return Fraction(0)
        key = (i, remaining)
        if key in memo:
            return memo[key]
        total = Fraction(0)
        for m in range(prob.max_mult(i, remaining) + 1):
            total += _factorial_inv(m) * rec(i + 1, prob.subtract(i, remaining, m))
        memo[key] = total
        return total

    return rec(0, prob.target)
