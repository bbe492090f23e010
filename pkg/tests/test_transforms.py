from fractions import Fraction

import pytest

from appell.core import hyp2f1
from appell.errors import BranchError, ConstraintError, DomainError
from appell.integrals import QuadratureSpec, appell_double_integral
from appell.series import F1, F2, F3, F4, AppellParams, Point2, appell, eval_appell
from appell.transforms import (SOURCE_FAMILY, ReductionId, TransformId, burchnall_chaundy, eval_auto, f4_image,
                               reduce, transform, transformed_value)
from conftest import rel

SAMPLE = {
    "F1": (F1(1.1, 0.6, 0.8, 2.0), (0.3, 0.2)),
    "F2": (F2(1.1, 0.5, 0.7, 1.9, 2.3), (0.2, 0.3)),
}


@pytest.mark.parametrize("tid", list(TransformId))
def test_maps_fix_the_origin(tid):
    params = SAMPLE[SOURCE_FAMILY[tid]][0]
    pref, _, pt = transform(tid, params, (0.0, 0.0))
    assert pref == 1.0 and pt == Point2(0.0, 0.0)


@pytest.mark.parametrize("tid", list(TransformId))
def test_transform_contract(tid):
    params, pt = SAMPLE[SOURCE_FAMILY[tid]]
    if tid is TransformId.F2_XY:
        pt = (0.15, 0.2)
    assert rel(transformed_value(tid, params, pt), eval_appell(params, pt).value) < 1e-10


def test_pfaff_x_with_vanishing_bprime_is_pfaff_kummer():
    a, b, c, x = 1.1, 0.6, 2.0, 0.3
    got = transformed_value("F1-pfaff-x", F1(a, b, 0.0, c), (x, 0.2))
    assert rel(got, (1 - x) ** -b * hyp2f1(c - a, b, c, x / (x - 1))) < 1e-12
    assert rel(got, hyp2f1(a, b, c, x)) < 1e-12


def test_f2_xy_example_and_printed_variant():
    # (0.2, 0.3) maps onto the boundary |X| + |Y| = 1 of the F2 domain, so the
    # mapped side is evaluated through the double integral
    params, pt = SAMPLE["F2"]
    want = eval_appell(params, pt).value
    with pytest.raises(DomainError):
        transform("F2-xy", params, pt)
    pref, q, p = transform("F2-xy", params, pt, require_inside=False)
    assert abs(p.x) + abs(p.y) == pytest.approx(1.0)
    tight = QuadratureSpec(tol=1e-12)
    assert rel(pref * appell_double_integral("F2", q, p, tight), want) < 1e-10
    # inside the domain the series gives the same contract
    inner = (0.15, 0.2)
    assert rel(transformed_value("F2-xy", params, inner), eval_appell(params, inner).value) < 1e-10
    pref, q, p = transform("F2-xy", params, inner, reading="printed")
    assert rel(pref * eval_appell(q, p).value, eval_appell(params, inner).value) > 1e-3


def test_f1_to_f3():
    params, pt = SAMPLE["F1"]
    pref, q, p = transform("F1-to-F3", params, pt)
    assert q.family == "F3"
    assert rel(pref * eval_appell(q, p).value, eval_appell(params, pt).value) < 1e-10


def test_pfaff_x_involution_is_exact():
    params = AppellParams.of("F1", Fraction(11, 10), Fraction(3, 5), Fraction(4, 5), Fraction(2))
    pt = Point2(Fraction(3, 10), Fraction(-2, 7))
    _, p1, q1 = transform("F1-pfaff-x", params, pt)
    _, p2, q2 = transform("F1-pfaff-x", p1, q1)
    assert p2.values() == params.values() and q2 == pt


def test_transform_errors():
    with pytest.raises(DomainError):
        transform("F1-pfaff-x", SAMPLE["F1"][0], (0.7, 0.2))
    with pytest.raises(DomainError):
        transform("F1-pfaff-x", SAMPLE["F1"][0], (1.0, 0.2))
    with pytest.raises(BranchError):
        transform("F1-pfaff-x", SAMPLE["F1"][0], (1.5, 0.2), require_inside=False)
    with pytest.raises(ValueError):
        transform("F2-x", SAMPLE["F1"][0], (0.1, 0.1))


def test_auto_strategy_reaches_outside_points():
    params = F1(1.1, 0.6, 0.8, 2.0)
    res = eval_auto(params, (-1.5, -2.0))
    assert res.strategy == "transformed"
    pref, q, p = transform("F1-pfaff-x", params, (-1.5, -2.0))
    assert res.value == pytest.approx(pref * eval_appell(q, p).value, rel=1e-14)
    assert eval_auto(params, (0.3, 0.2)).strategy == "direct"
    with pytest.raises(DomainError):
        eval_auto(F4(1.3, 0.8, 1.9, 1.6), (0.5, 0.5))


# -- reductions -------------------------------------------------------------

def test_y_eq_x_example():
    red = reduce("F1-y-eq-x", F1(1.1, 0.6, 0.8, 2.0), (0.3, 0.3))
    assert red.value == pytest.approx(hyp2f1(1.1, 1.4, 2.0, 0.3), rel=1e-14)
    assert rel(red.value, red.direct()) < 1e-10
    assert rel(red.detail["first_form"], red.value) < 1e-12


def test_y_eq_1_example(oracles):
    params, x, want = oracles["f1_y_eq_1"]
    red = reduce("F1-y-eq-1", F1(*params), (x, 1.0))
    assert rel(red.value, want) < 1e-13
    assert rel(red.direct(), want) < 1e-9


def test_f4_closed_form_example(oracles):
    red = reduce("F4-closed-form", F4(1.2, 0.7, 1.2, 0.7), (0.2, 0.3))
    assert red.lhs_point.x == pytest.approx(0.14) and red.lhs_point.y == pytest.approx(0.24)
    want = next(v for fam, p, pt, v in oracles["appell"] if fam == "F4" and p == [1.2, 0.7, 1.2, 0.7])
    assert rel(red.value, want) < 1e-12 and rel(red.direct(), want) < 1e-12


REDUCTION_CASES = [
    ("F1-c-eq-b-plus-bprime", F1(1.1, 0.6, 0.8, 1.4), (0.3, -0.4)),
    ("F2-c-eq-b", F2(1.1, 0.5, 0.7, 0.5, 2.3), (0.2, 0.3)),
    ("F3-special", F3(1.1, 0.9, 0.6, 1.4, 2.0), (0.3, 0.2)),
    ("F2-cprime-eq-a", F2(1.1, 0.5, 0.7, 1.9, 1.1), (0.2, 0.3)),
    ("F2-c-cprime-eq-a", F2(1.1, 0.5, 0.7, 1.1, 1.1), (0.2, 0.3)),
    ("F4-product", F4(1.3, 0.8, 1.9, 1.2), (0.2, 0.25)),
    ("F4-to-F1", F4(1.3, 0.8, 1.9, 0.8), (0.2, 0.25)),
]


@pytest.mark.parametrize("rid,params,pt", REDUCTION_CASES)
def test_reductions_match_direct(rid, params, pt):
    red = reduce(rid, params, pt)
    assert rel(red.value, red.direct()) < 1e-10


def test_reduction_constraints_are_exact():
    with pytest.raises(ConstraintError):
        reduce("F1-y-eq-x", F1(1.1, 0.6, 0.8, 2.0), (0.3, 0.3 + 1e-9))
    with pytest.raises(ConstraintError):
        reduce("F2-c-eq-b", F2(1.1, 0.5, 0.7, 0.6, 2.3), (0.2, 0.3))
    with pytest.raises(ConstraintError):
        reduce("F1-y-eq-1", F1(1.1, 0.6, 0.8, 1.5), (0.3, 1.0))
    with pytest.raises(ValueError):
        reduce("F4-product", F1(1.1, 0.6, 0.8, 2.0), (0.3, 0.3))
    assert {r.value for r in ReductionId} >= {c[0] for c in REDUCTION_CASES}


# -- Burchnall-Chaundy ---------------------------------------------------------

def test_expansion_at_x_zero():
    res = burchnall_chaundy(1.3, 0.8, 1.9, 1.6, 0.0, 0.25)
    assert res.terms_used <= 2
    assert res.value == pytest.approx(hyp2f1(1.3, 0.8, 1.6, 0.25), rel=1e-14)
    assert rel(res.value, appell("F4", (1.3, 0.8, 1.9, 1.6), 0.0, 0.25)) < 1e-12


def test_expansion_example(oracles):
    res = burchnall_chaundy(1.3, 0.8, 1.9, 1.6, 0.2, 0.25)
    want = next(v for fam, p, pt, v in oracles["appell"] if fam == "F4" and p == [1.3, 0.8, 1.9, 1.6])
    img = f4_image(0.2, 0.25)
    assert img.x == pytest.approx(0.15) and img.y == pytest.approx(0.2)
    assert rel(res.value, want) < 1e-8 and res.converged


def test_product_formula_case():
    a, b, c = 1.3, 0.8, 1.9
    cp = 1 + a + b - c
    res = burchnall_chaundy(a, b, c, cp, 0.2, 0.25)
    assert res.terms_used == 1
    # exact up to the tolerances of the 2F1 factors
    assert rel(res.value, hyp2f1(a, b, c, 0.2) * hyp2f1(a, b, cp, 0.25)) < 1e-12


def test_expansion_domain():
    with pytest.raises(DomainError):
        burchnall_chaundy(1.3, 0.8, 1.9, 1.6, 1.2, 0.1)
