"""Orientation signs and randomized verification of the generating-series identities.

All comparisons are exact.  The equivariant parameters are sampled as random
rationals from a seeded generator, while bundle parameters d1..d4 (or d, t)
stay symbolic, so a mismatch at any sampled point is a definitive failure.
"""

from __future__ import annotations

import itertools
import json
import logging
import math
import random
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from .combinatorics import omega_c
from .errors import BadChartError, PoleHitError, WrongShapeError
from .localization import (
    LinearFormFactored,
    SpecializedLimit,
    evaluate,
    specialize_limit,
    symbolic_d,
    tautological_factor,
    vertex_weight,
)
from .partitions import (
    DPartition,
    enumerate_partitions,
    from_key,
    key_str,
    partitions_up_to,
    solid_from_monomials,
)
from .polys import Poly, render
from .series import TruncatedSeries, macmahon, series_exp, series_pow_scalar

log = logging.getLogger(__name__)

SAFE_ORDER = 6
MAX_RESAMPLES = 20
D = Poly.var("d")
T = Poly.var("t")

WeightFn = Callable[[DPartition], LinearFormFactored]


@lru_cache(maxsize=None)
def canonical_weight(pi: DPartition) -> LinearFormFactored:
    return vertex_weight(pi)


@lru_cache(maxsize=None)
def symbolic_taut(pi: DPartition) -> LinearFormFactored:
    return tautological_factor(pi)


def falling(height: int, var: Poly = D) -> Poly:
    out = Poly.const(1)
    for l in range(1, height + 1):
        out = out * (var - (l - 1))
    return out


@dataclass(frozen=True)
class OmegaResult:
    omega: Fraction
    sign: int
    limit: SpecializedLimit
    value: Poly

    def to_json(self) -> dict:
        return {
            "omega": str(self.omega),
            "sign": self.sign,
            "limit": self.limit.to_json(),
            "value": render(self.value),
        }


def omega_from_dt4(pi: DPartition, weight: WeightFn = canonical_weight) -> OmegaResult:
    """Specialize L_pi(0,0,0,-d) w_pi to l1+l2+l3 = 0 and read off omega and the sign."""
    f = tautological_factor(pi, (0, 0, 0, -D)) * weight(pi)
    limit = specialize_limit(f)
    value = limit.expand()
    shape = falling(pi.height)
    ratio = value.leading_coeff() / shape.leading_coeff() if value else Fraction(0)
    if not value or value != shape * ratio:
        raise WrongShapeError(
            f"limit {value} of {key_str(pi)} is not a multiple of the falling factorial "
            f"of height {pi.height}"
        )
    signed = ratio * (-1) ** pi.size
    sign = 1 if signed > 0 else -1
    return OmegaResult(abs(signed), sign, limit, value)


@dataclass
class SignAssignment:
    signs: dict[str, int] = field(default_factory=dict)
    provenance: dict[str, str] = field(default_factory=dict)

    def sign(self, pi: DPartition) -> int:
        key = key_str(pi)
        try:
            return self.signs[key]
        except KeyError:
            raise KeyError(f"no sign recorded for partition {key}") from None

    def set(self, pi: DPartition | str, sign: int, provenance: str) -> None:
        if sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {sign}")
        key = pi if isinstance(pi, str) else key_str(pi)
        self.signs[key] = sign
        self.provenance[key] = provenance

    def flipped(self, pi: DPartition | str) -> SignAssignment:
        key = pi if isinstance(pi, str) else key_str(pi)
        out = SignAssignment(dict(self.signs), dict(self.provenance))
        out.set(key, -self.signs[key], "user-supplied")
        return out

    def __len__(self) -> int:
        return len(self.signs)

    def to_jsonl(self) -> str:
        lines = []
        for key in sorted(self.signs, key=lambda k: (from_key(k).size, k)):
            rec = {"key": key, "sign": self.signs[key], "provenance": self.provenance.get(key, "")}
            lines.append(json.dumps(rec, separators=(",", ":")))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_jsonl(cls, text: str, provenance: str | None = None) -> SignAssignment:
        out = cls()
        for n, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                key = rec["key"]
                from_key(key)
                sign = int(rec["sign"])
            except (ValueError, KeyError, TypeError) as exc:
                raise ValueError(f"bad sign record on line {n}: {exc}") from None
            out.set(key, sign, provenance or rec.get("provenance", "user-supplied"))
        return out


def _omega_job(pi: DPartition) -> tuple[str, OmegaResult]:
    return key_str(pi), omega_from_dt4(pi)


def build_sign_assignment(max_order: int, workers: int = 1) -> SignAssignment:
    """Signs making every specialized omega positive, for all |pi| <= max_order."""
    if max_order < 0:
        raise ValueError("order must be non-negative")
    parts = partitions_up_to(3, max_order)
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = dict(pool.map(_omega_job, parts, chunksize=8))
    else:
        results = dict(_omega_job(p) for p in parts)
    out = SignAssignment()
    for pi in parts:
        out.set(pi, results[key_str(pi)].sign, "specialization-derived")
    return out


@dataclass
class VerificationReport:
    target: str
    order: int
    trials: int
    seed: int | None
    status: str = "pass"
    witnesses: list = field(default_factory=list)
    elapsed_ms: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def fail(self, witness) -> None:
        self.status = "fail"
        self.witnesses.append(witness)

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "target": self.target,
            "order": self.order,
            "trials": self.trials,
            "seed": self.seed,
            "status": self.status,
            "witnesses": sorted(
                self.witnesses, key=lambda w: (w.get("q", -1), json.dumps(w, sort_keys=True))
            ),
        }
        if self.details:
            out["details"] = self.details
        if timing:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


def _check_order(order: int, unsafe: bool) -> None:
    if order < 0:
        raise ValueError("order must be non-negative")
    if order > SAFE_ORDER and not unsafe:
        raise ValueError(f"order {order} exceeds {SAFE_ORDER}; pass unsafe=True to proceed")


def random_point(rng: random.Random, bound: int = 60, den: int = 17) -> tuple[Fraction, ...]:
    def one() -> Fraction:
        while True:
            num = rng.randint(-bound, bound)
            if num:
                return Fraction(num, rng.randint(1, den))

    return (one(), one(), one())


def lambda4(lam: Sequence[Fraction]) -> Fraction:
    return -(lam[0] + lam[1] + lam[2])


def macmahon_exponent(d: Sequence, lam: Sequence[Fraction]):
    """(d . lambda) * (-e3(lambda)) / e4(lambda) with lambda4 eliminated."""
    l1, l2, l3 = lam
    l4 = lambda4(lam)
    e3 = l1 * l2 * l3 + l1 * l2 * l4 + l1 * l3 * l4 + l2 * l3 * l4
    e4 = l1 * l2 * l3 * l4
    if e4 == 0:
        raise PoleHitError(f"e4 vanishes at {tuple(lam)}")
    pairing = d[0] * l1 + d[1] * l2 + d[2] * l3 + d[3] * l4
    return pairing * (-e3 / e4)


def _sample(rng: random.Random, attempt: Callable[[tuple], object]):
    last = None
    for _ in range(MAX_RESAMPLES + 1):
        lam = random_point(rng)
        try:
            return lam, attempt(lam)
        except PoleHitError as exc:
            last = exc
            log.debug("resampling after pole: %s", exc)
    raise PoleHitError(f"gave up after {MAX_RESAMPLES} resamples: {last}")


def _poly_terms(x) -> dict:
    if isinstance(x, Poly):
        return {m: c for m, c in x.terms.items()}
    return {(): Fraction(x)} if x else {}


def _diff_witnesses(n: int, lhs, rhs, lam) -> list[dict]:
    a, b = _poly_terms(lhs), _poly_terms(rhs)
    out = []
    for mono in sorted(set(a) | set(b)):
        if a.get(mono, 0) != b.get(mono, 0):
            out.append(
                {
                    "q": n,
                    "monomial": dict(mono),
                    "lhs": str(a.get(mono, 0)),
                    "rhs": str(b.get(mono, 0)),
                    "lambda": [str(x) for x in lam],
                }
            )
    return out


def _resolve_signs(signs: SignAssignment | None, order: int, workers: int) -> SignAssignment:
    return signs if signs is not None else build_sign_assignment(order, workers)


def affine_lhs(
    lam: Sequence[Fraction],
    order: int,
    signs: SignAssignment,
    d: Sequence | None = None,
    weight: WeightFn = canonical_weight,
) -> TruncatedSeries:
    """sum_pi eps_pi L_pi(d) w_pi q^|pi| evaluated at ``lam``; symbolic d by default."""
    coeffs: list = [0] * (order + 1)
    for n in range(order + 1):
        for pi in enumerate_partitions(3, n):
            taut = symbolic_taut(pi) if d is None else tautological_factor(pi, d)
            if taut.is_zero():
                continue
            w = evaluate(weight(pi), lam)
            coeffs[n] = coeffs[n] + evaluate(taut, lam) * (w * signs.sign(pi))
    return TruncatedSeries(coeffs, order)


def affine_rhs(lam: Sequence[Fraction], order: int, d: Sequence | None = None) -> TruncatedSeries:
    if d is None:
        d = symbolic_d()
    return series_pow_scalar(macmahon(order, -1), macmahon_exponent(d, lam))


def verify_affine(
    max_order: int,
    trials: int,
    seed: int = 0,
    signs: SignAssignment | None = None,
    d: Sequence | None = None,
    workers: int = 1,
    weight: WeightFn = canonical_weight,
    unsafe: bool = False,
) -> VerificationReport:
    """Check sum eps L w q^|pi| = M(-q)^E at ``trials`` random points, d symbolic."""
    _check_order(max_order, unsafe)
    start = time.perf_counter()
    signs = _resolve_signs(signs, max_order, workers)
    report = VerificationReport("affine", max_order, trials, seed)
    rng = random.Random(seed)
    for _ in range(trials):
        lam, (lhs, rhs) = _sample(
            rng,
            lambda lam: (
                affine_lhs(lam, max_order, signs, d, weight),
                affine_rhs(lam, max_order, d),
            ),
        )
        for n in range(max_order + 1):
            if lhs[n] != rhs[n]:
                for w in _diff_witnesses(n, lhs[n], rhs[n], lam):
                    report.fail(w)
    report.elapsed_ms = (time.perf_counter() - start) * 1e3
    return report


def nekrasov_exponent(lam: Sequence[Fraction]) -> Fraction:
    l1, l2, l3 = lam
    den = l1 * l2 * l3 * (l1 + l2 + l3)
    if den == 0:
        raise PoleHitError(f"Nekrasov exponent has a pole at {tuple(lam)}")
    return (l1 + l2) * (l1 + l3) * (l2 + l3) / den


def verify_nekrasov(
    max_order: int,
    trials: int,
    seed: int = 0,
    signs: SignAssignment | None = None,
    workers: int = 1,
    weight: WeightFn = canonical_weight,
    unsafe: bool = False,
) -> VerificationReport:
    """Check sum eps w q^|pi| = exp(c q) with c the single-box weight formula."""
    _check_order(max_order, unsafe)
    start = time.perf_counter()
    signs = _resolve_signs(signs, max_order, workers)
    report = VerificationReport("nekrasov", max_order, trials, seed)
    rng = random.Random(seed)

    def attempt(lam):
        lhs = [Fraction(0)] * (max_order + 1)
        for n in range(max_order + 1):
            for pi in enumerate_partitions(3, n):
                lhs[n] += signs.sign(pi) * evaluate(weight(pi), lam)
        rhs = series_exp(TruncatedSeries([0, nekrasov_exponent(lam)], max_order))
        return TruncatedSeries(lhs, max_order), rhs

    for _ in range(trials):
        lam, (lhs, rhs) = _sample(rng, attempt)
        for n in range(max_order + 1):
            if lhs[n] != rhs[n]:
                report.fail(
                    {"q": n, "lhs": str(lhs[n]), "rhs": str(rhs[n]), "lambda": [str(x) for x in lam]}
                )
    report.elapsed_ms = (time.perf_counter() - start) * 1e3
    return report


def weighted_count_series(
    dim: int, max_order: int, weight: Callable[[DPartition], Fraction] = omega_c
) -> TruncatedSeries:
    """sum_pi weight(pi) t^height q^|pi| over d-partitions, coefficients in Q[t]."""
    coeffs: list = [0] * (max_order + 1)
    for n in range(max_order + 1):
        for pi in enumerate_partitions(dim, n):
            coeffs[n] = coeffs[n] + weight(pi) * T ** pi.height
    return TruncatedSeries(coeffs, max_order)


def counting_rhs(dim: int, max_order: int) -> TruncatedSeries:
    """exp(t * sum_{n>=1} #{(dim-1)-partitions of n} q^n); exp(t(M(q)-1)) for dim 3."""
    if dim == 3:
        inner = macmahon(max_order) - 1
    elif dim == 1:
        inner = TruncatedSeries([0] + [1] * max_order, max_order)
    else:
        inner = TruncatedSeries(
            [0] + [len(enumerate_partitions(dim - 1, n)) for n in range(1, max_order + 1)],
            max_order,
        )
    return series_exp(inner * T)


def verify_counting(
    max_order: int, use_dt4: bool = False, dim: int = 3, unsafe: bool = False
) -> VerificationReport:
    """Weighted partition count against exp(t * (lower-dimensional count)).

    With ``use_dt4`` the weights come from the DT4 specialization instead of the
    combinatorial definition.
    """
    if use_dt4:
        _check_order(max_order, unsafe)
        if dim != 3:
            raise ValueError("DT4 weights exist for solid partitions only")
    start = time.perf_counter()
    weight = (lambda pi: omega_from_dt4(pi).omega) if use_dt4 else omega_c
    target = "counting-dt4" if use_dt4 else ("counting" if dim == 3 else f"counting-dim{dim}")
    report = VerificationReport(target, max_order, 0, None)
    lhs = weighted_count_series(dim, max_order, weight)
    rhs = counting_rhs(dim, max_order)
    for n in range(max_order + 1):
        if lhs[n] != rhs[n]:
            report.fail({"q": n, "lhs": render(lhs[n]), "rhs": render(rhs[n])})
    report.elapsed_ms = (time.perf_counter() - start) * 1e3
    return report


def verify_specconj(max_order: int, unsafe: bool = False) -> VerificationReport:
    """Properties (a), (b), (c) and omega = omega^c for every |pi| <= max_order."""
    _check_order(max_order, unsafe)
    start = time.perf_counter()
    report = VerificationReport("specconj", max_order, 0, None)
    checked = 0
    for pi in partitions_up_to(3, max_order):
        checked += 1
        try:
            res = omega_from_dt4(pi)
        except Exception as exc:  # every math failure becomes a witness
            report.fail({"key": key_str(pi), "error": type(exc).__name__, "message": str(exc)})
            continue
        oc = omega_c(pi)
        if res.omega != oc:
            report.fail({"key": key_str(pi), "omega": str(res.omega), "omega_c": str(oc)})
    report.details["partitions"] = checked
    report.elapsed_ms = (time.perf_counter() - start) * 1e3
    return report


# sign uniqueness


def _specialized_values(n: int) -> list[tuple[DPartition, Poly]]:
    return [(pi, omega_from_dt4(pi).value) for pi in enumerate_partitions(3, n)] if n else []


def _count_sign_solutions(coefs: list[Fraction], target: Fraction, limit: int = 2_000_000):
    """Number of eps in {+-1}^k with sum eps_i c_i = target, plus one solution."""
    if target and all(coefs) and sum(abs(c) for c in coefs) == abs(target):
        return 1, [1 if (c > 0) == (target > 0) else -1 for c in coefs]
    states: dict[Fraction, tuple[int, tuple[int, ...]]] = {Fraction(0): (1, ())}
    for c in coefs:
        nxt: dict[Fraction, tuple[int, tuple[int, ...]]] = {}
        for s, (cnt, sol) in states.items():
            for e in (1, -1):
                key = s + e * c
                old = nxt.get(key)
                nxt[key] = (cnt + (old[0] if old else 0), old[1] if old else sol + (e,))
        states = nxt
        if len(states) > limit:
            return None, None
    cnt, sol = states.get(target, (0, None))
    return cnt, list(sol) if sol is not None else None


def sign_uniqueness(max_order: int, mode: str = "incremental", seed: int = 0, trials: int = 2) -> dict:
    """Brute force over all sign vectors, or the degree-descending d-coefficient solve."""
    if mode == "brute":
        return _brute_uniqueness(max_order, seed, trials)
    if mode == "incremental":
        return _incremental_uniqueness(max_order)
    raise ValueError(f"unknown mode {mode!r}")


def _incremental_uniqueness(max_order: int) -> dict:
    rhs = series_pow_scalar(macmahon(max_order, -1), D)
    reference = build_sign_assignment(max_order)
    orders = []
    all_unique = True
    for n in range(1, max_order + 1):
        vals = _specialized_values(n)
        fixed: dict[str, int] = {}
        counts = []
        target_poly = Poly.lift(rhs[n])
        unique = True
        for delta in range(n, 0, -1):
            group = [(pi, v) for pi, v in vals if pi.height == delta]
            known = sum(
                (fixed[key_str(pi)] * v.coeff({"d": delta}) for pi, v in vals if pi.height > delta),
                Fraction(0),
            )
            target = target_poly.coeff({"d": delta}) - known
            coefs = [v.coeff({"d": delta}) for _, v in group]
            cnt, sol = _count_sign_solutions(coefs, target)
            counts.append({"degree": delta, "signs": len(group), "solutions": cnt})
            if cnt != 1:
                unique = False
                break
            for (pi, _), e in zip(group, sol):
                fixed[key_str(pi)] = e
        agrees = unique and all(reference.signs[k] == e for k, e in fixed.items())
        all_unique &= unique
        orders.append(
            {
                "order": n,
                "fix_counts": [c["signs"] for c in counts],
                "steps": counts,
                "unique": unique,
                "matches_positivity_rule": agrees,
            }
        )
    return {"mode": "incremental", "order": max_order, "unique": all_unique, "orders": orders}


def _brute_uniqueness(max_order: int, seed: int, trials: int) -> dict:
    if max_order > 3:
        raise ValueError("brute-force mode is limited to order <= 3")
    parts = [pi for pi in partitions_up_to(3, max_order) if pi.size]
    rng = random.Random(seed)
    # exact per-partition contributions and targets at `trials` random (lambda, d) points
    points = []
    for _ in range(max(trials, 1)):
        def attempt(lam):
            dvals = tuple(Fraction(rng.randint(-30, 30), rng.randint(1, 7)) for _ in range(4))
            contrib = [
                evaluate(tautological_factor(pi, dvals), lam) * evaluate(canonical_weight(pi), lam)
                for pi in parts
            ]
            return dvals, contrib, affine_rhs(lam, max_order, dvals)

        lam, (dvals, contrib, rhs) = _sample(rng, attempt)
        points.append((contrib, rhs))
    passing = []
    for eps in itertools.product((1, -1), repeat=len(parts)):
        ok = True
        for contrib, rhs in points:
            sums = [Fraction(0)] * (max_order + 1)
            for pi, e, c in zip(parts, eps, contrib):
                sums[pi.size] += e * c
            if any(sums[n] != rhs[n] for n in range(1, max_order + 1)):
                ok = False
                break
        if ok:
            passing.append(eps)
    reference = build_sign_assignment(max_order)
    ref_vec = tuple(reference.sign(pi) for pi in parts)
    confirmed = []
    for eps in passing:
        sa = SignAssignment()
        sa.set(DPartition.empty(), 1, "brute-forced")
        for pi, e in zip(parts, eps):
            sa.set(pi, e, "brute-forced")
        confirmed.append(verify_affine(max_order, 1, seed, sa).passed)
    return {
        "mode": "brute",
        "order": max_order,
        "candidates": 2 ** len(parts),
        "passing": len(passing),
        "symbolically_confirmed": sum(confirmed),
        "unique": len(passing) == 1,
        "matches_positivity_rule": passing == [ref_vec],
    }


# toric assembly


def _det(m: Sequence[Sequence[int]]) -> int:
    n = len(m)
    if n == 1:
        return m[0][0]
    return sum(
        (-1) ** j * m[0][j] * _det([row[:j] + row[j + 1:] for row in m[1:]]) for j in range(n)
    )


CY_CHARACTER = (1, 1, 1, 1)


@dataclass(frozen=True)
class ToricChart:
    """Tangent characters of the chart coordinates and the bundle character at the fixed point.

    Both are written in the global character basis.
    """

    tangent: tuple[tuple[int, int, int, int], ...]
    bundle: tuple[int, int, int, int]

    def __post_init__(self):
        if len(self.tangent) != 4 or any(len(v) != 4 for v in self.tangent) or len(self.bundle) != 4:
            raise BadChartError("a chart needs four 4-vectors and a 4-vector bundle character")
        if abs(_det([list(v) for v in self.tangent])) != 1:
            raise BadChartError(f"tangent characters {self.tangent} are not a lattice basis")
        total = tuple(sum(v[i] for v in self.tangent) for i in range(4))
        if total != CY_CHARACTER:
            raise BadChartError(f"tangent characters sum to {total}, not {CY_CHARACTER}")

    @classmethod
    def standard(cls, bundle: Sequence[int] = (0, 0, 0, 0)) -> ToricChart:
        eye = tuple(tuple(int(i == j) for j in range(4)) for i in range(4))
        return cls(eye, tuple(bundle))

    @classmethod
    def from_json(cls, obj: Mapping) -> ToricChart:
        try:
            tangent = tuple(tuple(int(x) for x in v) for v in obj["tangent"])
            bundle = tuple(int(x) for x in obj["bundle"])
        except (KeyError, TypeError, ValueError) as exc:
            raise BadChartError(f"malformed chart: {exc}") from None
        return cls(tangent, bundle)

    def to_json(self) -> dict:
        return {"tangent": [list(v) for v in self.tangent], "bundle": list(self.bundle)}

    def local_weights(self, lam: Sequence[Fraction]) -> tuple[Fraction, Fraction, Fraction]:
        full = tuple(lam) + (lambda4(lam),)
        mu = [sum(c * x for c, x in zip(v, full)) for v in self.tangent]
        return tuple(mu[:3])

    def local_bundle(self) -> tuple[int, ...]:
        """Bundle character re-expressed in the chart's coordinate characters."""
        cols = [[self.tangent[j][i] for j in range(4)] for i in range(4)]
        det = _det(cols)
        out = []
        for k in range(4):
            m = [row[:k] + [self.bundle[i]] + row[k + 1:] for i, row in enumerate(cols)]
            out.append(_det(m) // det)
        return tuple(out)


def chart_series(
    chart: ToricChart, lam, order: int, signs: SignAssignment, weight: WeightFn = canonical_weight
) -> TruncatedSeries:
    mu = chart.local_weights(lam)
    return affine_lhs(mu, order, signs, chart.local_bundle(), weight)


def chart_exponent(chart: ToricChart, lam) -> Fraction:
    return macmahon_exponent(chart.local_bundle(), chart.local_weights(lam))


def toric_series(
    charts: Sequence[ToricChart],
    max_order: int,
    trials: int,
    seed: int = 0,
    signs: SignAssignment | None = None,
    workers: int = 1,
    unsafe: bool = False,
) -> VerificationReport:
    """Product of chart vertex series against M(-q) to the summed chart exponents."""
    _check_order(max_order, unsafe)
    if not charts:
        raise BadChartError("at least one chart is required")
    start = time.perf_counter()
    signs = _resolve_signs(signs, max_order, workers)
    report = VerificationReport("toric", max_order, trials, seed)
    rng = random.Random(seed)

    def attempt(lam):
        lhs = TruncatedSeries.one(max_order)
        exponent = Fraction(0)
        for chart in charts:
            lhs = lhs * chart_series(chart, lam, max_order, signs)
            exponent += chart_exponent(chart, lam)
        return lhs, exponent, series_pow_scalar(macmahon(max_order, -1), exponent)

    exponents = []
    for _ in range(trials):
        lam, (lhs, exponent, rhs) = _sample(rng, attempt)
        exponents.append(str(exponent))
        for n in range(max_order + 1):
            if lhs[n] != rhs[n]:
                report.fail(
                    {"q": n, "lhs": str(lhs[n]), "rhs": str(rhs[n]), "lambda": [str(x) for x in lam]}
                )
    vanishing = []
    for idx, chart in enumerate(charts):
        if chart.local_bundle() == (0, 0, 0, -1):
            bad = [
                key_str(pi)
                for pi in partitions_up_to(3, max_order)
                if pi.height >= 2 and not tautological_factor(pi, (0, 0, 0, -1)).is_zero()
            ]
            vanishing.append({"chart": idx, "violations": bad})
            for key in bad:
                report.fail({"chart": idx, "nonvanishing": key})
    report.details = {"exponents": exponents, "vanishing_checks": vanishing}
    report.elapsed_ms = (time.perf_counter() - start) * 1e3
    return report


def load_charts(obj: Mapping) -> list[ToricChart]:
    try:
        raw = obj["charts"]
    except (KeyError, TypeError):
        raise BadChartError("chart file needs a 'charts' list") from None
    return [ToricChart.from_json(c) for c in raw]


def golden_partitions() -> list[tuple[str, DPartition, Fraction]]:
    """The published size 7..15 examples with their absolute weights."""
    rows = [
        ("1+t1+t2+t1t2+t3+t4+t4^2", Fraction(3, 2)),
        ("1+t1+t2+t1t2+t3+t4+t1t4+t4^2", Fraction(3)),
        ("1+t1+t1^2+t2+t1t2+t3+t4+t1t4+t4^2", Fraction(6)),
        ("1+t1+t1^2+t2+t1t2+t2t3+t3+t4+t1t4+t4^2", Fraction(2)),
        ("1+t1+t1^2+t2+t1t2+t2t3+t3+t4+t1t4+t2t4+t4^2", Fraction(8)),
        ("1+t1+t1^2+t2+t1t2+t2t3+t3+t4+t1t4+t2t4+t4^2+t4^3", Fraction(6)),
        ("1+t1+t1^2+t2+t1t2+t2t3+t3+t4+t1t4+t2t4+t4^2+t4^3+t4^4", Fraction(8, 3)),
        ("1+t1+t1^2+t2+t1t2+t2t3+t3+t4+t1t4+t2t4+t4^2+t4^3+t4^4+t4^5", Fraction(5, 6)),
        ("1+t1+t1^2+t2+t2^2+t1t2+t2t3+t3+t4+t1t4+t2t4+t4^2+t4^3+t4^4+t4^5", Fraction(5, 3)),
    ]
    return [(z, solid_from_monomials(parse_monomials(z)), w) for z, w in rows]


def parse_monomials(text: str) -> list[tuple[int, int, int, int]]:
    """Parse ``1+t1+t1t4^2`` into exponent vectors; coefficients must be 1."""
    out = []
    for term in text.replace(" ", "").split("+"):
        exp = [0, 0, 0, 0]
        if term != "1":
            if not re.fullmatch(r"(t[1-4](\^\d+)?)+", term):
                raise ValueError(f"cannot parse monomial {term!r}")
            for var, power in re.findall(r"t([1-4])(?:\^(\d+))?", term):
                exp[int(var) - 1] += int(power or 1)
        out.append(tuple(exp))
    return out
