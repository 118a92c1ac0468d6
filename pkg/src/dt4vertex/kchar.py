"""Laurent characters of the 4-torus and of the Calabi-Yau 3-torus."""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Mapping

from .partitions import DPartition, cells

Exp = tuple[int, ...]


class LaurentChar:
    """Finitely supported map from exponent vectors to integer multiplicities.

    Values are immutable; zero multiplicities are never stored.
    """

    __slots__ = ("rank", "_terms")

    def __init__(self, rank: int, terms: Mapping[Exp, int] | Iterable[tuple[Exp, int]] = ()):
        self.rank = rank
        acc: dict[Exp, int] = defaultdict(int)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exp, mult in items:
            exp = tuple(exp)
            if len(exp) != rank:
                raise ValueError(f"exponent {exp} does not have rank {rank}")
            acc[exp] += mult
        self._terms = {e: m for e, m in acc.items() if m}

    @classmethod
    def monomial(cls, exp: Exp, mult: int = 1) -> LaurentChar:
        return cls(len(exp), {tuple(exp): mult})

    @classmethod
    def one(cls, rank: int) -> LaurentChar:
        return cls(rank, {(0,) * rank: 1})

    @property
    def terms(self) -> dict[Exp, int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def mult(self, exp: Exp) -> int:
        return self._terms.get(tuple(exp), 0)

    def mass(self) -> int:
        """Value at t = (1, ..., 1)."""
        return sum(self._terms.values())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def _check(self, other: LaurentChar) -> None:
        if self.rank != other.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other: LaurentChar) -> LaurentChar:
        self._check(other)
        return LaurentChar(self.rank, list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> LaurentChar:
        return LaurentChar(self.rank, {e: -m for e, m in self._terms.items()})

    def __sub__(self, other: LaurentChar) -> LaurentChar:
        return self + (-other)

    def __mul__(self, other: LaurentChar | int) -> LaurentChar:
        if isinstance(other, int):
            return LaurentChar(self.rank, {e: m * other for e, m in self._terms.items()})
        self._check(other)
        acc: dict[Exp, int] = defaultdict(int)
        for e1, m1 in self._terms.items():
            for e2, m2 in other._terms.items():
                acc[tuple(a + b for a, b in zip(e1, e2))] += m1 * m2
        return LaurentChar(self.rank, acc)

    __rmul__ = __mul__

    def shift(self, exp: Exp) -> LaurentChar:
        """Multiply by the monomial ``t^exp``."""
        return LaurentChar(
            self.rank, {tuple(a + b for a, b in zip(e, exp)): m for e, m in self._terms.items()}
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentChar):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.rank, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exp, m in self.items():
            mono = "*".join(
                f"t{i + 1}" if a == 1 else f"t{i + 1}^{a}" for i, a in enumerate(exp) if a
            )
            if not mono:
                parts.append(str(m))
            elif m == 1:
                parts.append(mono)
            elif m == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{m}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list[dict]:
        return [{"exp": list(e), "mult": m} for e, m in self.items()]

    @classmethod
    def from_json(cls, data: list[Mapping]) -> LaurentChar:
        if not data:
            raise ValueError("cannot infer rank of an empty character dump")
        rank = len(data[0]["exp"])
        return cls(rank, [(tuple(d["exp"]), int(d["mult"])) for d in data])


def bar(chi: LaurentChar) -> LaurentChar:
    return LaurentChar(chi.rank, {tuple(-a for a in e): m for e, m in chi.terms.items()})


def char_of_partition(pi: DPartition) -> LaurentChar:
    """Character of O_Z: one monomial t^(cell - 1) per cell of ``pi``."""
    if pi.dim != 3:
        raise ValueError("characters are defined for solid partitions only")
    return LaurentChar(4, [(tuple(c - 1 for c in cell), 1) for cell in cells(pi)])


_TOP = (-1, -1, -1, -1)


def _one_minus_product() -> LaurentChar:
    out = LaurentChar.one(4)
    for i in range(4):
        e = [0, 0, 0, 0]
        e[i] = 1
        out = out * (LaurentChar.one(4) - LaurentChar.monomial(tuple(e)))
    return out


_PROD = _one_minus_product()


def vertex_character(z: LaurentChar) -> LaurentChar:
    """V = Z + bar(Z)/(t1t2t3t4) - Z bar(Z) (1-t1)(1-t2)(1-t3)(1-t4)/(t1t2t3t4)."""
    if z.rank != 4:
        raise ValueError("vertex character needs a rank-4 character")
    zb = bar(z)
    return z + zb.shift(_TOP) - (z * zb * _PROD).shift(_TOP)


def specialize_cy(chi: LaurentChar) -> LaurentChar:
    """Restrict to t1 t2 t3 t4 = 1: (a, b, c, e) -> (a - e, b - e, c - e)."""
    if chi.rank != 4:
        raise ValueError("specialize_cy needs a rank-4 character")
    return LaurentChar(
        3, [((a - e, b - e, c - e), m) for (a, b, c, e), m in chi.terms.items()]
    )


def cy_vertex(pi: DPartition) -> LaurentChar:
    return specialize_cy(vertex_character(char_of_partition(pi)))
