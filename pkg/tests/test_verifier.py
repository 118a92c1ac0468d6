import random
from fractions import Fraction

import pytest

from dt4vertex.combinatorics import omega_c
from dt4vertex.errors import BadChartError, PoleHitError
from dt4vertex.partitions import DPartition, enumerate_partitions, key_str, partitions_up_to
from dt4vertex.polys import Poly
from dt4vertex.series import TruncatedSeries, macmahon, series_pow_scalar
from dt4vertex.verifier import (
    SignAssignment,
    ToricChart,
    affine_lhs,
    golden_partitions,
    build_sign_assignment,
    chart_exponent,
    chart_series,
    falling,
    load_charts,
    macmahon_exponent,
    nekrasov_exponent,
    omega_from_dt4,
    parse_monomials,
    random_point,
    sign_uniqueness,
    toric_series,
    verify_affine,
    verify_counting,
    verify_nekrasov,
    verify_specconj,
)

D = Poly.var("d")


@pytest.fixture(scope="module")
def signs6():
    return build_sign_assignment(6)


def test_single_box_omega(box):
    res = omega_from_dt4(box)
    assert res.omega == 1 and res.value == -D


@pytest.mark.parametrize("index,expected", [(2, Fraction(6)), (7, Fraction(5, 6))])
def test_golden_examples(index, expected):
    z, pi, value = golden_partitions()[index]
    assert value == expected
    assert pi.size == (9 if index == 2 else 14)
    assert omega_from_dt4(pi).omega == expected


def test_golden_table_complete():
    rows = golden_partitions()
    assert [pi.size for _, pi, _ in rows] == list(range(7, 16))
    assert [v for _, _, v in rows] == [Fraction(x) for x in ("3/2", "3", "6", "2", "8", "6", "8/3", "5/6", "5/3")]
    for _, pi, v in rows:
        res = omega_from_dt4(pi)
        assert res.omega == v == omega_c(pi)
        assert res.value == falling(pi.height) * ((-1) ** pi.size * res.sign * v)


def test_height_one_weights_are_one():
    for pi in partitions_up_to(3, 6):
        if pi.height == 1:
            assert omega_from_dt4(pi).omega == 1


def test_columns_up_to_ten():
    def profiles(n, largest):
        if n == 0:
            yield ()
            return
        for first in range(min(n, largest), 0, -1):
            for rest in profiles(n - first, first):
                yield (first,) + rest

    for n in range(1, 11):
        for prof in profiles(n, n):
            pi = DPartition.from_entries(3, {(1, 1, k + 1): v for k, v in enumerate(prof)})
            assert omega_from_dt4(pi).omega == omega_c(pi)


def test_sign_assignment_sizes():
    assert len(build_sign_assignment(0)) == 1
    assert build_sign_assignment(0).sign(DPartition.empty(3)) == 1
    one = build_sign_assignment(1)
    (box,) = enumerate_partitions(3, 1)
    assert omega_from_dt4(box).sign == one.sign(box)


def test_sign_assignment_full(signs6):
    assert len(signs6) == 241
    assert set(signs6.provenance.values()) == {"specialization-derived"}
    again = SignAssignment.from_jsonl(signs6.to_jsonl())
    assert again.signs == signs6.signs


def test_parallel_signs_match(signs6):
    assert build_sign_assignment(4, workers=2).signs == build_sign_assignment(4).signs


def test_sign_file_errors():
    with pytest.raises(ValueError):
        SignAssignment.from_jsonl('{"key": "nope", "sign": 1}\n')
    with pytest.raises(ValueError):
        SignAssignment.from_jsonl("not json\n")
    with pytest.raises(KeyError):
        SignAssignment().sign(DPartition.empty(3))


def test_affine_low_orders():
    for seed in (0, 1, 2):
        assert verify_affine(3, 2, seed).passed


def test_affine_single_box_flip_fails_at_q1():
    signs = build_sign_assignment(2)
    (box,) = enumerate_partitions(3, 1)
    report = verify_affine(2, 1, 0, signs.flipped(box))
    assert not report.passed
    assert min(w["q"] for w in report.witnesses) == 1


def test_affine_is_reproducible():
    a = verify_affine(3, 2, 11).to_json(timing=False)
    b = verify_affine(3, 2, 11).to_json(timing=False)
    assert a == b


def test_affine_numeric_bundle():
    assert verify_affine(4, 1, 5, d=(2, -1, 3, 0)).passed


def test_nekrasov():
    assert verify_nekrasov(1, 3, 0).passed
    assert verify_nekrasov(6, 5, 42).passed


def test_single_box_coefficients(box):
    lam = (Fraction(1), Fraction(2), Fraction(3))
    # the q^1 coefficient of exp(c q) is c itself, here the single-box weight
    assert nekrasov_exponent(lam) == Fraction(3 * 4 * 5, 6 * 6)
    signs = build_sign_assignment(1)
    lhs = affine_lhs(lam, 1, signs, d=(0, 0, 0, -1))
    assert lhs[1] == -macmahon_exponent((0, 0, 0, -1), lam)


def test_nekrasov_flip_fails_at_q4(signs6):
    pi = enumerate_partitions(3, 4)[5]
    report = verify_nekrasov(4, 1, 3, signs6.flipped(pi))
    assert not report.passed
    assert {w["q"] for w in report.witnesses} == {4}


def test_counting():
    assert verify_counting(2).passed
    assert verify_counting(8).passed
    assert verify_counting(8, dim=2).passed
    assert verify_counting(6, use_dt4=True).passed


def test_specconj():
    report = verify_specconj(6)
    assert report.passed, report.witnesses[:3]
    assert report.details["partitions"] == 241


def test_order_guard():
    with pytest.raises(ValueError):
        verify_specconj(7)
    with pytest.raises(ValueError):
        verify_affine(-1, 1)


def test_uniqueness_incremental():
    result = sign_uniqueness(6, "incremental")
    assert result["unique"]
    last = result["orders"][-1]
    assert last["fix_counts"] == [1, 3, 9, 25, 54, 48]
    assert all(o["matches_positivity_rule"] for o in result["orders"])


@pytest.mark.parametrize("order,candidates", [(1, 2), (2, 32)])
def test_uniqueness_brute(order, candidates):
    result = sign_uniqueness(order, "brute", seed=4)
    assert result["candidates"] == candidates
    assert result["passing"] == 1 and result["unique"]
    assert result["matches_positivity_rule"]


def test_random_point_reproducible():
    a = [random_point(random.Random(9)) for _ in range(3)]
    b = [random_point(random.Random(9)) for _ in range(3)]
    assert a == b and all(x != 0 for p in a for x in p)


def test_macmahon_exponent_pole():
    with pytest.raises(PoleHitError):
        macmahon_exponent((0, 0, 0, 1), (Fraction(1), Fraction(-1), Fraction(0)))


def test_toric_trivial_bundle():
    chart = ToricChart.standard()
    assert chart.local_bundle() == (0, 0, 0, 0)
    lam = (Fraction(2), Fraction(3), Fraction(5))
    assert chart_series(chart, lam, 5, build_sign_assignment(5)) == TruncatedSeries.one(5)
    assert chart_exponent(chart, lam) == 0
    assert toric_series([chart], 4, 2, 0).passed


def test_toric_line_bundle(signs6):
    report = toric_series([ToricChart.standard((0, 0, 0, -1))], 6, 2, 0, signs6)
    assert report.passed
    assert report.details["vanishing_checks"] == [{"chart": 0, "violations": []}]


def test_toric_two_charts_multiply(signs6):
    a = ToricChart.standard((0, 0, 0, -1))
    perm = ((0, 1, 0, 0), (0, 0, 1, 0), (1, 0, 0, 0), (0, 0, 0, 1))
    b = ToricChart(perm, (0, 0, 0, -1))
    lam = (Fraction(3, 2), Fraction(-5, 7), Fraction(4))
    prod = chart_series(a, lam, 5, signs6) * chart_series(b, lam, 5, signs6)
    total = chart_exponent(a, lam) + chart_exponent(b, lam)
    assert prod == series_pow_scalar(macmahon(5, -1), total)
    assert toric_series([a, b], 5, 2, 1, signs6).passed


def test_bad_charts():
    with pytest.raises(BadChartError):
        ToricChart(((1, 0, 0, 0), (1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)), (0, 0, 0, 0))
    with pytest.raises(BadChartError):
        ToricChart(((2, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)), (0, 0, 0, 0))
    with pytest.raises(BadChartError):
        load_charts({"charts": [{"tangent": [[1, 0, 0, 0]], "bundle": [0, 0, 0, 0]}]})
    with pytest.raises(BadChartError):
        load_charts({})


def test_chart_json_roundtrip():
    chart = ToricChart.standard((1, 2, 3, 4))
    assert ToricChart.from_json(chart.to_json()) == chart


def test_parse_monomials():
    assert parse_monomials("1+t1+t4^2+t1t2") == [(0, 0, 0, 0), (1, 0, 0, 0), (0, 0, 0, 2), (1, 1, 0, 0)]
    with pytest.raises(ValueError):
        parse_monomials("1+2t1")
