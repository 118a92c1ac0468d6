"""Truncated power series in q over exact coefficient rings.

Coefficients may be ints, Fractions or :class:`~dt4vertex.polys.Poly`
instances; anything supporting ``+``, ``*`` and division by an integer works.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .errors import BadConstantTerm
from .polys import Poly, render, simplify


class TruncatedSeries:
    """Series known through ``q**order`` inclusive."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable, order: int | None = None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("order must be non-negative")
        coeffs = coeffs[: order + 1] + [0] * (order + 1 - len(coeffs))
        self.order = order
        self.coeffs = [simplify(c) for c in coeffs]

    @classmethod
    def one(cls, order: int) -> TruncatedSeries:
        return cls([1], order)

    @classmethod
    def q(cls, order: int) -> TruncatedSeries:
        return cls([0, 1], order)

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def __len__(self) -> int:
        return self.order + 1

    def truncate(self, order: int) -> TruncatedSeries:
        return TruncatedSeries(self.coeffs, min(order, self.order))

    def __add__(self, other) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries([other], self.order)
        n = min(self.order, other.order)
        return TruncatedSeries([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n)

    __radd__ = __add__

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other) -> TruncatedSeries:
        return self + (-other)

    def __rsub__(self, other) -> TruncatedSeries:
        return (-self) + other

    def __mul__(self, other) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([c * other for c in self.coeffs], self.order)
        n = min(self.order, other.order)
        out = [0] * (n + 1)
        for i in range(n + 1):
            a = self.coeffs[i]
            if not a:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(out, n)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> TruncatedSeries:
        if k < 0:
            raise ValueError("use series_pow_scalar for non-integral or negative powers")
        out = TruncatedSeries.one(self.order)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return all(self.coeffs[i] == other.coeffs[i] for i in range(n + 1))

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.coeffs!r}, order={self.order})"

    def map(self, fn) -> TruncatedSeries:
        return TruncatedSeries([fn(c) for c in self.coeffs], self.order)

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [render(c) for c in self.coeffs]}


def macmahon(order: int, sign: int = 1) -> TruncatedSeries:
    """prod_{n>=1} (1 - (sign*q)^n)^(-n), expanded by repeated geometric division."""
    if order < 0:
        raise ValueError("order must be non-negative")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    a = [1] + [0] * order
    for n in range(1, order + 1):
        step = sign ** n
        for _ in range(n):
            for m in range(n, order + 1):
                a[m] += step * a[m - n]
    return TruncatedSeries(a, order)


def series_log(f: TruncatedSeries) -> TruncatedSeries:
    if f[0] != 1:
        raise BadConstantTerm(f"log needs constant term 1, got {f[0]}")
    n_max = f.order
    out = [0] * (n_max + 1)
    for n in range(1, n_max + 1):
        acc = n * f[n]
        for k in range(1, n):
            if out[k] and f[n - k]:
                acc = acc - k * out[k] * f[n - k]
        out[n] = acc / n if isinstance(acc, Poly) else Fraction(acc, 1) / n
    return TruncatedSeries(out, n_max)


def series_exp(g: TruncatedSeries) -> TruncatedSeries:
    if g[0] != 0:
        raise BadConstantTerm(f"exp needs constant term 0, got {g[0]}")
    n_max = g.order
    out = [1] + [0] * n_max
    for n in range(1, n_max + 1):
        acc = 0
        for k in range(1, n + 1):
            if g[k] and out[n - k]:
                acc = acc + k * g[k] * out[n - k]
        out[n] = acc / n if isinstance(acc, Poly) else Fraction(acc, 1) / n
    return TruncatedSeries(out, n_max)


def series_pow_scalar(f: TruncatedSeries, c) -> TruncatedSeries:
    """f ** c = exp(c * log f) for any ring element or symbol ``c``."""
    if f[0] != 1:
        raise BadConstantTerm(f"power needs constant term 1, got {f[0]}")
    return series_exp(series_log(f) * c)
