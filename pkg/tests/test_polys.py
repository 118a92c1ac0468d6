from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from dt4vertex.polys import Poly, render, simplify

x, y = Poly.var("x"), Poly.var("y")


def test_basic_arithmetic():
    p = (x + 1) * (x - 1)
    assert p == x * x - 1
    assert p.degree() == 2 and p.degree("y") == 0
    assert p.univariate_coeffs("x") == [-1, 0, 1]
    assert (p / 2).coeff({"x": 2}) == Fraction(1, 2)
    assert (x + y) ** 2 == x * x + x * y * 2 + y * y


def test_constants_collapse():
    assert simplify(x - x + 3) == 3
    assert simplify(Poly.const(Fraction(1, 2))) == Fraction(1, 2)
    assert hash(Poly.const(3)) == hash(Fraction(3))
    assert render(Fraction(2, 3)) == "2/3"


def test_evaluate():
    p = x * x * y + 3
    assert p.evaluate({"x": 2, "y": Fraction(1, 4)}) == 4
    assert p.evaluate({"x": 2}) == y * 4 + 3


polys = st.lists(
    st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-5, 5)), max_size=5
).map(lambda ts: sum((x ** a * y ** b * c for a, b, c in ts), Poly.const(0)))


@settings(max_examples=50, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    vals = {"x": Fraction(3, 7), "y": Fraction(-2)}
    assert Poly.lift((a * b).evaluate(vals)) == Poly.lift(a.evaluate(vals)) * Poly.lift(b.evaluate(vals))
