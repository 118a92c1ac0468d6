"""Sparse multivariate polynomials over Q with named variables.

Used as the coefficient ring for the bundle parameters d1..d4 (or d, t, c).
Monomials are sorted tuples of ``(name, power)`` pairs so polynomials in
different variable sets mix freely.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

Monomial = tuple[tuple[str, int], ...]
Scalar = Union[int, Fraction]

ONE_MONO: Monomial = ()


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    acc = dict(a)
    for v, p in b:
        acc[v] = acc.get(v, 0) + p
    return tuple(sorted(acc.items()))


def _mono_degree(m: Monomial) -> int:
    return sum(p for _, p in m)


def _mono_order(m: Monomial):
    return (_mono_degree(m), m)


class Poly:
    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, Scalar] | Iterable[tuple[Monomial, Scalar]] = ()):
        acc: dict[Monomial, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, c in items:
            if c:
                acc[mono] = acc.get(mono, 0) + c
        self._terms = {m: Fraction(c) for m, c in acc.items() if c}

    @classmethod
    def var(cls, name: str) -> Poly:
        return cls({((name, 1),): 1})

    @classmethod
    def const(cls, c: Scalar) -> Poly:
        return cls({ONE_MONO: c})

    @staticmethod
    def lift(x: Poly | Scalar) -> Poly:
        return x if isinstance(x, Poly) else Poly.const(x)

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: _mono_order(kv[0]))

    def variables(self) -> set[str]:
        return {v for m in self._terms for v, _ in m}

    def is_constant(self) -> bool:
        return all(m == ONE_MONO for m in self._terms)

    def constant_value(self) -> Fraction:
        return self._terms.get(ONE_MONO, Fraction(0))

    def degree(self, name: str | None = None) -> int:
        if not self._terms:
            return -1
        if name is None:
            return max(_mono_degree(m) for m in self._terms)
        return max(dict(m).get(name, 0) for m in self._terms)

    def coeff(self, mono: Monomial | Mapping[str, int]) -> Fraction:
        if isinstance(mono, Mapping):
            mono = tuple(sorted((v, p) for v, p in mono.items() if p))
        return self._terms.get(tuple(mono), Fraction(0))

    def univariate_coeffs(self, name: str) -> list[Fraction]:
        """Dense coefficient list in ``name``; all other variables must be absent."""
        if self.variables() - {name}:
            raise ValueError(f"not univariate in {name}: {self}")
        deg = max(self.degree(name), 0)
        out = [Fraction(0)] * (deg + 1)
        for m, c in self._terms.items():
            out[dict(m).get(name, 0)] = c
        return out

    def leading_coeff(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        return self._terms[max(self._terms, key=_mono_order)]

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other):
        if isinstance(other, (int, Rational)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, 0) + c
        return Poly(acc)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Rational)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            if not other:
                return Poly()
            return Poly({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        acc: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                acc[m] = acc.get(m, 0) + c1 * c2
        return Poly(acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return Poly({m: c / other for m, c in self._terms.items()})
        return NotImplemented

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        out, base = Poly.const(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Rational)):
            return self.is_constant() and self.constant_value() == other
        if isinstance(other, Poly):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_constant():
            return hash(self.constant_value())
        return hash(frozenset(self._terms.items()))

    def evaluate(self, values: Mapping[str, Scalar]) -> Poly | Fraction:
        """Substitute the given variables; returns a Fraction when nothing is left."""
        acc: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            rest = []
            for v, p in m:
                if v in values:
                    c = c * Fraction(values[v]) ** p
                else:
                    rest.append((v, p))
            key = tuple(rest)
            acc[key] = acc.get(key, 0) + c
        out = Poly(acc)
        return out.constant_value() if out.is_constant() else out

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in reversed(self.items()):
            mono = "*".join(v if p == 1 else f"{v}^{p}" for v, p in m)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list:
        return [[dict(m), str(c)] for m, c in self.items()]


def simplify(x: Poly | Scalar) -> Poly | Fraction | int:
    """Collapse constant polynomials to plain rationals."""
    if isinstance(x, Poly) and x.is_constant():
        x = x.constant_value()
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def render(x: Poly | Scalar) -> str | list:
    x = simplify(x)
    if isinstance(x, Poly):
        return x.to_json()
    return str(x)
