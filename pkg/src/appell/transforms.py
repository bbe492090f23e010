"""Transformation catalog, reduction formulae and the F4 product-series expansion.

A transformation maps ``(params, point)`` to ``(prefactor, params', point')``
with ``F(params; point) = prefactor * G(params'; point')``.  Maps are written
with plain arithmetic so that :class:`fractions.Fraction` inputs are mapped
exactly; only the prefactor (a real power) is computed in floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .core import (
    DEFAULT_OPTIONS,
    EvaluationOptions,
    EvaluationResult,
    gamma_bracket,
    gauss_2f1,
    real_power,
)
from .errors import ConstraintError, DomainError
from .series import (
    AppellParams,
    Point2,
    as_point,
    bounded_indices,
    check_domain,
    classify_domain,
    eval_appell,
    eval_f1_nested,
)

CONSTRAINT_TOL = 1e-12


class TransformId(str, Enum):
    F1_PFAFF_X = "F1-pfaff-x"
    F1_PFAFF_A = "F1-pfaff-a"
    F1_Y_ANALOG = "F1-y-analog"
    F1_TWO_FACTOR_1 = "F1-two-factor-1"
    F1_TWO_FACTOR_2 = "F1-two-factor-2"
    F2_X = "F2-x"
    F2_Y = "F2-y"
    F2_XY = "F2-xy"
    F1_TO_F3 = "F1-to-F3"


# Source family of each transformation; the catalog order is the search order.
SOURCE_FAMILY = {
    TransformId.F1_PFAFF_X: "F1",
    TransformId.F1_PFAFF_A: "F1",
    TransformId.F1_Y_ANALOG: "F1",
    TransformId.F1_TWO_FACTOR_1: "F1",
    TransformId.F1_TWO_FACTOR_2: "F1",
    TransformId.F2_X: "F2",
    TransformId.F2_Y: "F2",
    TransformId.F2_XY: "F2",
    TransformId.F1_TO_F3: "F1",
}

# (base, exponent) pairs; the prefactor is their product of real powers.
Factors = list[tuple[object, object]]


def _map(tid: TransformId, p: AppellParams, x, y, reading: str):
    if tid is TransformId.F1_PFAFF_X:
        a, b, bp, c = p.values()
        return [(1 - x, -b), (1 - y, -bp)], AppellParams.of("F1", c - a, b, bp, c), (x / (x - 1), y / (y - 1))
    if tid is TransformId.F1_PFAFF_A:
        a, b, bp, c = p.values()
        return [(1 - x, -a)], AppellParams.of("F1", a, c - b - bp, bp, c), (x / (x - 1), (y - x) / (1 - x))
    if tid is TransformId.F1_Y_ANALOG:
        a, b, bp, c = p.values()
        return [(1 - y, -a)], AppellParams.of("F1", a, b, c - b - bp, c), ((x - y) / (1 - y), y / (y - 1))
    if tid is TransformId.F1_TWO_FACTOR_1:
        a, b, bp, c = p.values()
        return ([(1 - x, c - a - b), (1 - y, -bp)], AppellParams.of("F1", c - a, c - b - bp, bp, c),
                (x, (x - y) / (1 - y)))
    if tid is TransformId.F1_TWO_FACTOR_2:
        a, b, bp, c = p.values()
        return ([(1 - x, -b), (1 - y, c - a - bp)], AppellParams.of("F1", c - a, b, c - b - bp, c),
                ((y - x) / (1 - x), y))
    if tid is TransformId.F2_X:
        a, b, bp, c, cp = p.values()
        return [(1 - x, -a)], AppellParams.of("F2", a, c - b, bp, c, cp), (x / (x - 1), y / (1 - x))
    if tid is TransformId.F2_Y:
        a, b, bp, c, cp = p.values()
        return [(1 - y, -a)], AppellParams.of("F2", a, b, cp - bp, c, cp), (x / (1 - y), y / (y - 1))
    if tid is TransformId.F2_XY:
        a, b, bp, c, cp = p.values()
        # second numerator parameter c - b; reading "printed" uses c - a
        first = c - a if reading == "printed" else c - b
        s = x + y - 1
        return [(1 - x - y, -a)], AppellParams.of("F2", a, first, cp - bp, c, cp), (x / s, y / s)
    if tid is TransformId.F1_TO_F3:
        a, b, bp, c = p.values()
        return [(1 - y, -bp)], AppellParams.of("F3", a, c - a, b, bp, c), (x, y / (y - 1))
    raise ValueError(f"unknown transformation {tid!r}")


def _prefactor(factors: Factors) -> float:
    out = 1.0
    for base, exponent in factors:
        if exponent == 0:
            continue
        out *= real_power(base, exponent)
    return out


def _check_point(params: AppellParams, point: Point2) -> None:
    try:
        check_domain(params.as_float(), point.as_float())
    except DomainError as exc:
        raise DomainError(f"mapped point outside the target domain: {exc}") from None


def transform(tid, params: AppellParams, point, reading: str = "corrected",
              require_inside: bool = True) -> tuple[float, AppellParams, Point2]:
    """Return ``(prefactor, new_params, new_point)``; nothing is evaluated.

    ``reading="printed"`` selects the c - a variant of the F2 joint map,
    which does not satisfy the identity and is kept for comparison runs.
    With ``require_inside=False`` a mapped point outside the series domain is
    returned anyway, for evaluation by other means (e.g. an integral).
    """
    tid = TransformId(tid)
    if params.family != SOURCE_FAMILY[tid]:
        raise ValueError(f"{tid.value} applies to {SOURCE_FAMILY[tid]}, got {params.family}")
    p = as_point(point)
    for base in (1 - p.x, 1 - p.y) if tid is not TransformId.F2_XY else (1 - p.x - p.y,):
        if base == 0:
            raise DomainError(f"{tid.value} is singular at this point")
    factors, new_params, (nx, ny) = _map(tid, params, p.x, p.y, reading)
    pref = _prefactor(factors)
    new_point = Point2(nx, ny)
    if require_inside:
        _check_point(new_params, new_point)
    return pref, new_params, new_point


def transformed_value(tid, params: AppellParams, point,
                      opts: EvaluationOptions = DEFAULT_OPTIONS, reading: str = "corrected") -> float:
    pref, new_params, new_point = transform(tid, params, point, reading)
    return pref * eval_appell(new_params, new_point, opts).value


def transforms_for(family: str) -> list[TransformId]:
    return [t for t in TransformId if SOURCE_FAMILY[t] == family]


def domain_margin(params: AppellParams, point: Point2) -> float:
    m_bounded, n_bounded = bounded_indices(params)
    if m_bounded and n_bounded:
        return math.inf
    if m_bounded:
        return 1.0 - abs(point.y)
    if n_bounded:
        return 1.0 - abs(point.x)
    return classify_domain(params.family, point).margin


def eval_auto(params: AppellParams, point, opts: EvaluationOptions = DEFAULT_OPTIONS) -> EvaluationResult:
    """Evaluate directly when the point is admissible, else through the best transformation.

    Among cataloged maps whose mapped point is admissible the largest domain
    margin wins; equal margins keep the earlier catalog entry.
    """
    p = as_point(point).as_float()
    params = params.as_float()
    if domain_margin(params, p) > 0:
        return eval_appell(params, p, opts)
    best = None
    for tid in transforms_for(params.family):
        try:
            pref, new_params, new_point = transform(tid, params, p)
        except (DomainError, ZeroDivisionError):
            continue
        margin = domain_margin(new_params, new_point)
        if best is None or margin > best[0]:
            best = (margin, pref, new_params, new_point)
    if best is None:
        raise DomainError(f"{params.family} at ({p.x}, {p.y}): no admissible transformation")
    _, pref, new_params, new_point = best
    res = eval_appell(new_params, new_point, opts)
    return EvaluationResult(pref * res.value, res.terms_used, abs(pref) * res.error_estimate,
                            res.converged, "transformed")


# -- reductions -------------------------------------------------------------

class ReductionId(str, Enum):
    F1_Y_EQ_X = "F1-y-eq-x"
    F1_C_EQ_B_PLUS_BPRIME = "F1-c-eq-b-plus-bprime"
    F2_C_EQ_B = "F2-c-eq-b"
    F1_Y_EQ_1 = "F1-y-eq-1"
    F3_SPECIAL = "F3-special"
    F2_CPRIME_EQ_A = "F2-cprime-eq-a"
    F2_C_CPRIME_EQ_A = "F2-c-cprime-eq-a"
    F4_PRODUCT = "F4-product"
    F4_TO_F1 = "F4-to-F1"
    F4_CLOSED_FORM = "F4-closed-form"


REDUCTION_FAMILY = {
    ReductionId.F1_Y_EQ_X: "F1",
    ReductionId.F1_C_EQ_B_PLUS_BPRIME: "F1",
    ReductionId.F2_C_EQ_B: "F2",
    ReductionId.F1_Y_EQ_1: "F1",
    ReductionId.F3_SPECIAL: "F3",
    ReductionId.F2_CPRIME_EQ_A: "F2",
    ReductionId.F2_C_CPRIME_EQ_A: "F2",
    ReductionId.F4_PRODUCT: "F4",
    ReductionId.F4_TO_F1: "F4",
    ReductionId.F4_CLOSED_FORM: "F4",
}

# Reductions whose ``point`` argument is a pre-image (x, y) rather than the
# argument of the reduced function.
PREIMAGE_REDUCTIONS = frozenset({
    ReductionId.F3_SPECIAL, ReductionId.F4_PRODUCT, ReductionId.F4_TO_F1, ReductionId.F4_CLOSED_FORM,
})


@dataclass(frozen=True)
class ReducedEvaluation:
    """Value of a reduced form together with the double series it replaces."""

    rid: ReductionId
    value: float
    lhs_params: AppellParams
    lhs_point: Point2
    detail: dict = field(default_factory=dict)

    def direct(self, opts: EvaluationOptions = DEFAULT_OPTIONS) -> float:
        """The double series evaluated at the same instance, for comparison."""
        if self.rid is ReductionId.F1_Y_EQ_1:
            return eval_f1_nested(self.lhs_params, self.lhs_point, opts).value
        return eval_appell(self.lhs_params, self.lhs_point, opts).value


def _close(u: float, v: float) -> bool:
    return abs(float(u) - float(v)) <= CONSTRAINT_TOL * max(1.0, abs(float(u)), abs(float(v)))


def _require(cond: bool, rid: ReductionId, what: str) -> None:
    if not cond:
        raise ConstraintError(f"{rid.value} needs {what}")


def _two_f1(a, b, c, x, opts) -> float:
    return gauss_2f1(a, b, c, x, opts).value


def f4_image(x: float, y: float) -> Point2:
    return Point2(x * (1 - y), y * (1 - x))


def reduce(rid, params: AppellParams, point, opts: EvaluationOptions = DEFAULT_OPTIONS) -> ReducedEvaluation:
    """Evaluate a reduction formula after checking its constraint to 1e-12.

    For the pre-image reductions (F3-special and the F4 forms) ``point`` is
    the pre-image ``(x, y)``; ``lhs_point`` of the result is where the double
    series is to be compared.
    """
    rid = ReductionId(rid)
    if params.family != REDUCTION_FAMILY[rid]:
        raise ValueError(f"{rid.value} applies to {REDUCTION_FAMILY[rid]}, got {params.family}")
    params = params.as_float()
    p = as_point(point).as_float()
    x, y = p.x, p.y
    lhs = p

    if rid is ReductionId.F1_Y_EQ_X:
        a, b, bp, c = params.values()
        _require(_close(x, y), rid, "y = x")
        value = _two_f1(a, b + bp, c, x, opts)
        detail = {"first_form": real_power(1 - x, c - a - b - bp) * _two_f1(c - a, c - b - bp, c, x, opts)}
    elif rid is ReductionId.F1_C_EQ_B_PLUS_BPRIME:
        a, b, bp, c = params.values()
        _require(_close(c, b + bp), rid, "c = b + b'")
        value = real_power(1 - y, -a) * _two_f1(a, b, c, (x - y) / (1 - y), opts)
        z = (y - x) / (1 - x)
        # the x-form is only summable when its own argument is inside the disc
        detail = {"x_form": real_power(1 - x, -a) * _two_f1(a, bp, c, z, opts)} if abs(z) < 1 else {}
    elif rid is ReductionId.F2_C_EQ_B:
        a, b, bp, c, cp = params.values()
        _require(_close(c, b), rid, "c = b")
        value = real_power(1 - x, -a) * _two_f1(a, bp, cp, y / (1 - x), opts)
        detail = {}
    elif rid is ReductionId.F1_Y_EQ_1:
        a, b, bp, c = params.values()
        _require(_close(y, 1.0), rid, "y = 1")
        _require(c - a - bp > 0, rid, "c - a - b' > 0")
        lhs = Point2(x, 1.0)
        value = gamma_bracket([c, c - a - bp], [c - a, c - bp]) * _two_f1(a, b, c - bp, x, opts)
        detail = {}
    elif rid is ReductionId.F3_SPECIAL:
        a, ap, b, bp, c = params.values()
        _require(_close(ap, c - a) and _close(bp, c - b), rid, "a' = c - a and b' = c - b")
        lhs = Point2(x, y / (y - 1))
        value = (real_power(1 - x, -a) * real_power(1 - y, c - b)
                 * _two_f1(a, c - b, c, (y - x) / (1 - x), opts))
        detail = {}
    elif rid is ReductionId.F2_CPRIME_EQ_A:
        a, b, bp, c, cp = params.values()
        _require(_close(cp, a), rid, "c' = a")
        inner = eval_appell(AppellParams.of("F1", b, a - bp, bp, c), (x, x / (1 - y)), opts)
        value = real_power(1 - y, -bp) * inner.value
        detail = {}
    elif rid is ReductionId.F2_C_CPRIME_EQ_A:
        a, b, bp, c, cp = params.values()
        _require(_close(c, a) and _close(cp, a), rid, "c = c' = a")
        z = x * y / ((1 - x) * (1 - y))
        value = real_power(1 - x, -b) * real_power(1 - y, -bp) * _two_f1(b, bp, a, z, opts)
        detail = {}
    else:
        a, b, c, cp = params.values()
        lhs = f4_image(x, y)
        if rid is ReductionId.F4_PRODUCT:
            _require(_close(cp, 1 + a + b - c), rid, "c' = 1 + a + b - c")
            value = _two_f1(a, b, c, x, opts) * _two_f1(a, b, cp, y, opts)
        elif rid is ReductionId.F4_TO_F1:
            _require(_close(cp, b), rid, "c' = b")
            z = x * y / ((1 - x) * (1 - y))
            inner = eval_appell(AppellParams.of("F1", a, 1 + a - c, c - b, c), (z, x / (x - 1)), opts)
            value = real_power(1 - x, -a) * real_power(1 - y, -a) * inner.value
        else:
            _require(_close(c, a) and _close(cp, b), rid, "c = a and c' = b")
            value = real_power(1 - x, 1 - b) * real_power(1 - y, 1 - a) / (1 - x - y)
        detail = {}
    return ReducedEvaluation(rid, value, params, lhs, detail)


# -- F4 as a series of products of two 2F1 ----------------------------------

def burchnall_chaundy(a: float, b: float, c: float, c_prime: float, x: float, y: float,
                      opts: EvaluationOptions = DEFAULT_OPTIONS) -> EvaluationResult:
    """F4(a; b; c, c'; x(1-y), y(1-x)) as an m-sum of products of two 2F1.

    The m-th term carries (1 + a + b - c - c')_m (xy)^m, so the sum is finite
    when that parameter is a nonpositive integer (the product formula is the
    case c' = 1 + a + b - c).
    """
    if not (abs(x) < 1 and abs(y) < 1):
        raise DomainError("both 2F1 factors need |x| < 1 and |y| < 1")
    image = f4_image(x, y)
    if not classify_domain("F4", image).inside:
        raise DomainError("the mapped point lies outside the F4 domain")
    e = 1 + a + b - c - c_prime
    tol = opts.tol
    inner_opts = EvaluationOptions(tol=0.1 * tol, max_terms=opts.max_terms)
    weight = 1.0
    total = 0.0
    inner_err = 0.0
    prev = None
    rho = 0.0
    small = 0
    term = 0.0
    xy = x * y
    for m in range(opts.max_terms):
        if m > 0:
            weight *= (a + m - 1) * (b + m - 1) * (e + m - 1) / (m * (c + m - 1) * (c_prime + m - 1)) * xy
        if weight == 0.0:
            return EvaluationResult(total, m, inner_err, True, "expansion")
        f = gauss_2f1(a + m, b + m, c + m, x, inner_opts)
        g = gauss_2f1(a + m, b + m, c_prime + m, y, inner_opts)
        term = weight * f.value * g.value
        total += term
        inner_err += abs(weight) * (abs(f.value) * g.error_estimate + abs(g.value) * f.error_estimate)
        if prev is not None and prev > 0.0:
            rho = min(abs(term) / prev, 0.99)
        prev = abs(term)
        scale = max(1.0, abs(total))
        small = small + 1 if abs(term) <= tol * scale else 0
        if small >= 3:
            tail = abs(term) / (1.0 - rho)
            if tail <= 0.5 * tol * scale:
                est = tail + inner_err
                return EvaluationResult(total, m + 1, est, est <= tol * scale, "expansion")
    est = abs(term) / (1.0 - rho) + inner_err
    return EvaluationResult(total, opts.max_terms, est, False, "expansion")

