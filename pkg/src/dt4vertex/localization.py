"""Factored rational functions in the equivariant parameters.

Values are kept as ``scalar * prod(form ** exp)`` where each form is a linear
form ``c1*l1 + c2*l2 + c3*l3`` (``l4 = -(l1 + l2 + l3)`` already eliminated).
Nothing is ever expanded except inside :func:`evaluate`, so all cancellation
is syntactic and relies on forms being stored in primitive normalized shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    NotConstantError,
    PoleAtSpecialization,
    PoleHitError,
    UnpairableError,
    ZeroAtSpecialization,
    ZeroWeightError,
)
from .kchar import LaurentChar, bar, cy_vertex
from .partitions import DPartition, cells
from .polys import Poly, render, simplify


def _rationals_of(c) -> list[Fraction]:
    if isinstance(c, Poly):
        return list(c.terms.values())
    return [Fraction(c)] if c else []


def _gcd_fractions(values: Iterable[Fraction]) -> Fraction:
    num, den = 0, 1
    for v in values:
        num = math.gcd(num, v.numerator)
        den = den * v.denominator // math.gcd(den, v.denominator)
    return Fraction(num, den)


def _sign_of(c) -> int:
    if isinstance(c, Poly):
        lc = c.leading_coeff()
        return (lc > 0) - (lc < 0)
    return (c > 0) - (c < 0)


def normalize_coeffs(coeffs: Sequence) -> tuple[Fraction, tuple]:
    """Split ``coeffs`` as ``unit * primitive`` with the first nonzero entry positive.

    The unit is the rational content (gcd of every rational coefficient
    appearing, polynomial coefficients included) times a sign.  Polynomial
    content is not extracted.  The zero vector returns unit 0.
    """
    coeffs = [simplify(c) for c in coeffs]
    content = _gcd_fractions(r for c in coeffs for r in _rationals_of(c))
    if content == 0:
        return Fraction(0), tuple(0 for _ in coeffs)
    lead = next(c for c in coeffs if c)
    unit = content * _sign_of(lead)
    return unit, tuple(simplify(c / unit) if isinstance(c, Poly) else simplify(Fraction(c) / unit)
                       for c in coeffs)


@dataclass(frozen=True, order=False)
class LinearForm:
    coeffs: tuple

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def value(self, lam: Sequence, params: Mapping | None = None):
        total = 0
        for c, x in zip(self.coeffs, lam):
            if isinstance(c, Poly) and params:
                c = c.evaluate(params)
            total = total + c * Fraction(x)
        return simplify(total)

    def sort_key(self):
        return tuple((1, repr(c)) if isinstance(c, Poly) else (0, c) for c in self.coeffs)

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            name = f"l{i + 1}"
            if isinstance(c, Poly):
                parts.append(f"({c})*{name}")
            elif c == 1:
                parts.append(name)
            elif c == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{c}*{name}")
        return "+".join(parts).replace("+-", "-") or "0"


def make_form(coeffs: Sequence) -> tuple[Fraction, LinearForm]:
    unit, prim = normalize_coeffs(coeffs)
    return unit, LinearForm(prim)


@dataclass(frozen=True)
class LinearFormFactored:
    scalar: Fraction
    factors: tuple[tuple[LinearForm, int], ...] = field(default=())

    @classmethod
    def build(cls, scalar, factors: Iterable[tuple[LinearForm, int]]) -> LinearFormFactored:
        scalar = Fraction(scalar)
        acc: dict[LinearForm, int] = {}
        for form, e in factors:
            if e:
                acc[form] = acc.get(form, 0) + e
        if scalar == 0:
            return ZERO
        items = tuple(sorted(((f, e) for f, e in acc.items() if e), key=lambda fe: fe[0].sort_key()))
        return cls(scalar, items)

    @classmethod
    def constant(cls, c) -> LinearFormFactored:
        return cls.build(c, ())

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, exp: int = 1) -> LinearFormFactored:
        """The linear form with the given coefficients raised to ``exp``."""
        unit, form = make_form(coeffs)
        if unit == 0:
            if exp < 0:
                raise ZeroDivisionError("zero linear form in a denominator")
            return ZERO if exp > 0 else ONE
        return cls.build(unit ** exp, [(form, exp)])

    def is_zero(self) -> bool:
        return self.scalar == 0

    def degree(self) -> int:
        return sum(e for _, e in self.factors)

    def numerator_factors(self) -> list[tuple[LinearForm, int]]:
        return [(f, e) for f, e in self.factors if e > 0]

    def denominator_factors(self) -> list[tuple[LinearForm, int]]:
        return [(f, -e) for f, e in self.factors if e < 0]

    def __mul__(self, other) -> LinearFormFactored:
        if not isinstance(other, LinearFormFactored):
            other = LinearFormFactored.constant(other)
        if self.is_zero() or other.is_zero():
            return ZERO
        return LinearFormFactored.build(self.scalar * other.scalar, self.factors + other.factors)

    __rmul__ = __mul__

    def inverse(self) -> LinearFormFactored:
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero function")
        return LinearFormFactored.build(1 / self.scalar, [(f, -e) for f, e in self.factors])

    def __truediv__(self, other) -> LinearFormFactored:
        if not isinstance(other, LinearFormFactored):
            other = LinearFormFactored.constant(other)
        return self * other.inverse()

    def __neg__(self) -> LinearFormFactored:
        return LinearFormFactored.build(-self.scalar, self.factors)

    def __pow__(self, n: int) -> LinearFormFactored:
        if self.is_zero():
            if n <= 0:
                raise ZeroDivisionError("non-positive power of zero")
            return ZERO
        return LinearFormFactored.build(self.scalar ** n, [(f, e * n) for f, e in self.factors])

    def __str__(self) -> str:
        if self.is_zero():
            return "0"

        def block(items):
            return "*".join(f"({f})" if e == 1 else f"({f})^{e}" for f, e in items)

        num, den = block(self.numerator_factors()), block(self.denominator_factors())
        out = str(self.scalar)
        if num:
            out += "*" + num
        if den:
            out += " / (" + den + ")"
        return out

    def to_json(self) -> dict:
        return {
            "scalar": str(self.scalar),
            "factors": [
                {"form": [render(c) for c in f.coeffs], "exp": e} for f, e in self.factors
            ],
        }


ZERO = LinearFormFactored(Fraction(0), ())
ONE = LinearFormFactored(Fraction(1), ())


def evaluate(f: LinearFormFactored, lam: Sequence, params: Mapping | None = None):
    """Exact value at ``lam = (l1, l2, l3)``; parameters not assigned stay symbolic."""
    if f.is_zero():
        return Fraction(0)
    num = Fraction(f.scalar)
    for form, e in f.factors:
        v = form.value(lam, params)
        if isinstance(v, Poly):
            if e < 0:
                raise ValueError(f"symbolic form {form} in a denominator; assign its parameters")
            num = num * v ** e
            continue
        if v == 0:
            if e < 0:
                raise PoleHitError(f"denominator factor {form} vanishes at {tuple(lam)}")
            return Fraction(0)
        num = num * Fraction(v) ** e
    return simplify(num) if isinstance(num, Poly) else num


def euler_class(chi: LaurentChar) -> LinearFormFactored:
    """e_T of a rank-3 character: prod over weights (a*l1 + b*l2 + c*l3) ** mult."""
    if chi.rank != 3:
        raise ValueError("Euler classes are taken on the Calabi-Yau torus (rank 3)")
    if chi.mult((0, 0, 0)):
        raise ZeroWeightError(f"character has a torus-fixed part of multiplicity {chi.mult((0, 0, 0))}")
    scalar = Fraction(1)
    factors = []
    for exp, m in chi.items():
        unit, form = make_form(exp)
        scalar *= unit ** m
        factors.append((form, m))
    return LinearFormFactored.build(scalar, factors)


def half_character(v: LaurentChar, reverse: bool = False) -> LaurentChar:
    """One representative from each ``{w, -w}`` pair of a bar-symmetric character.

    The default picks lexicographically positive exponents; ``reverse`` picks
    the negative ones.
    """
    if v.mult((0, 0, 0)):
        raise ZeroWeightError(f"vertex has a torus-fixed part: multiplicity {v.mult((0, 0, 0))}")
    if bar(v) != v:
        raise UnpairableError(f"vertex is not self-dual: {v}")
    zero = (0,) * v.rank
    keep = (lambda e: e < zero) if reverse else (lambda e: e > zero)
    return LaurentChar(v.rank, {e: m for e, m in v.terms.items() if keep(e)})


def vertex_weight(pi: DPartition, reverse: bool = False) -> LinearFormFactored:
    """Canonical square root of (-1)^|pi| e_T(-V_pi): the inverse Euler class of half of V."""
    return euler_class(half_character(cy_vertex(pi), reverse)).inverse()


def symbolic_d() -> tuple[Poly, Poly, Poly, Poly]:
    return tuple(Poly.var(f"d{i}") for i in range(1, 5))


def tautological_factor(pi: DPartition, d: Sequence | None = None) -> LinearFormFactored:
    """e_T(H^0(O_Z (x) L)) for the bundle character ``d``; symbolic d1..d4 by default."""
    if d is None:
        d = symbolic_d()
    d1, d2, d3, d4 = d
    out = ONE
    for i, j, k, l in cells(pi):
        shift = d4 + (l - 1)
        coeffs = [d1 + (i - 1) - shift, d2 + (j - 1) - shift, d3 + (k - 1) - shift]
        out = out * LinearFormFactored.from_coeffs(coeffs)
        if out.is_zero():
            return ZERO
    return out


@dataclass(frozen=True)
class SpecializedLimit:
    """Value of a factored function on the hyperplane l1 + l2 + l3 = 0.

    Equal to ``scalar * prod(p ** e for p, e in d_factors)``.
    """

    scalar: Fraction
    d_factors: tuple[tuple[Poly, int], ...] = ()

    def expand(self) -> Poly:
        out = Poly.const(self.scalar)
        for p, e in self.d_factors:
            if e < 0:
                raise ValueError("negative exponent on a parameter factor")
            out = out * p ** e
        return out

    def to_json(self) -> dict:
        return {
            "scalar": str(self.scalar),
            "d_factors": [{"poly": render(p), "exp": e} for p, e in self.d_factors],
        }


def specialize_limit(f: LinearFormFactored) -> SpecializedLimit:
    """Limit s = l1 + l2 + l3 -> 0, checking it is finite, nonzero and l-independent.

    Each form is rewritten in the basis (l1, l2, s).  Forms proportional to s
    are degenerate and contribute their coefficient and one power of s; the
    net power of s must vanish, and the remaining (l1, l2)-forms must cancel.
    """
    if f.is_zero():
        return SpecializedLimit(Fraction(0))
    scalar = Fraction(f.scalar)
    s_exp = 0
    d_factors: list[tuple[Poly, int]] = []
    residual: dict[LinearForm, int] = {}
    for form, e in f.factors:
        c1, c2, c3 = form.coeffs
        r1, r2 = simplify(c1 - c3), simplify(c2 - c3)
        if not r1 and not r2:
            s_exp += e
            if isinstance(c3, Poly):
                d_factors.append((c3, e))
            else:
                scalar *= Fraction(c3) ** e
            continue
        unit, reduced = make_form((r1, r2))
        scalar *= unit ** e
        residual[reduced] = residual.get(reduced, 0) + e
    if s_exp < 0:
        raise PoleAtSpecialization(f"pole of order {-s_exp} along l1+l2+l3=0")
    if s_exp > 0:
        raise ZeroAtSpecialization(f"zero of order {s_exp} along l1+l2+l3=0")
    leftover = {str(k): e for k, e in residual.items() if e}
    if leftover:
        raise NotConstantError(f"residual dependence on l1, l2: {leftover}")
    return SpecializedLimit(scalar, tuple(d_factors))


def _parse_coeff(c):
    if isinstance(c, list):
        return simplify(Poly([(tuple(sorted((v, int(p)) for v, p in mono.items())), Fraction(val))
                              for mono, val in c]))
    return simplify(Fraction(c))


def factored_from_json(obj: Mapping) -> LinearFormFactored:
    """Inverse of :meth:`LinearFormFactored.to_json`."""
    scalar = Fraction(obj["scalar"])
    if scalar == 0:
        return ZERO
    factors = []
    for item in obj["factors"]:
        factors.append((LinearForm(tuple(_parse_coeff(c) for c in item["form"])), int(item["exp"])))
    return LinearFormFactored.build(scalar, factors)
