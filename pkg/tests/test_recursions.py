import math

import pytest

from appell.errors import UnsupportedShift
from appell.recursions import (MULTITERM_CASES, PRINTED_SHIFTS, ContiguousRelationId, ShiftSpec,
                               contiguous_residual_f1, contiguous_scale, contiguous_shift_f1,
                               contiguous_terms_f1, multiterm_recursion_eval, multiterm_target,
                               recursion_eval)
from appell.series import F1, F2, F3, F4, appell, eval_appell
from conftest import rel

P1 = F1(1.1, 0.6, 0.8, 2.0)
PT = (0.3, 0.4)

SAMPLES = {
    "F1": (F1(1.1, 0.6, 0.8, 2.3), (0.3, 0.4)),
    "F2": (F2(1.1, 0.5, 0.7, 4.9, 5.3), (0.2, 0.3)),
    "F3": (F3(0.9, 1.2, 0.5, 0.6, 6.8), (0.3, 0.2)),
    "F4": (F4(1.3, 0.8, 6.5, 6.7), (0.05, 0.08)),
}


def test_contiguous_at_origin_is_exact():
    for r in ContiguousRelationId:
        assert contiguous_residual_f1(r, P1, (0, 0)) == 0.0


def test_contiguous_c_at_zero_x():
    assert abs(contiguous_residual_f1("F1-C", P1, (0.0, 0.4))) < 1e-15


@pytest.mark.parametrize("r", list(ContiguousRelationId))
def test_contiguous_residuals(r):
    terms = contiguous_terms_f1(r, P1, PT)
    assert abs(math.fsum(terms)) <= 1e-10 * contiguous_scale(terms)


def test_contiguous_b_with_frozen_values(oracles):
    # the unshifted value against the frozen oracle, then the residual
    want = next(v for fam, p, pt, v in oracles["appell"] if fam == "F1" and tuple(pt) == PT)
    assert rel(eval_appell(P1, PT).value, want) < 1e-13
    terms = contiguous_terms_f1("F1-B", P1, PT)
    assert abs(math.fsum(terms)) <= 1e-10 * contiguous_scale(terms)


def test_shift_spec_validation():
    with pytest.raises(UnsupportedShift):
        ShiftSpec("F3", "b", "up", 1)
    with pytest.raises(ValueError):
        ShiftSpec("F1", "a", "up", 0)
    assert ShiftSpec("F1", "c", "down", 2).target(P1).c == pytest.approx(0.0)


@pytest.mark.parametrize("triple", sorted(PRINTED_SHIFTS))
def test_every_recursion_matches_direct(triple):
    family, par, direction = triple
    params, pt = SAMPLES[family]
    for n in (1, 2, 3):
        shift = ShiftSpec(family, par, direction, n)
        got = recursion_eval(shift, params, pt).value
        assert rel(got, eval_appell(shift.target(params), pt).value) < 1e-9, n


def test_empty_sum_reading_of_a_down_is_wrong():
    shift = ShiftSpec("F1", "a", "down", 1)
    want = eval_appell(shift.target(P1), PT).value
    printed = recursion_eval(shift, P1, PT, reading="printed").value
    # with no terms the printed form returns F1(a) itself
    assert printed == pytest.approx(eval_appell(P1, PT).value, rel=1e-14)
    assert rel(printed, want) > 1e-2
    assert rel(recursion_eval(shift, P1, PT).value, want) < 1e-12


@pytest.mark.parametrize("key", ["a-up", "a-down", "b-up", "b-down", "c-down"])
def test_n1_recursion_reduces_to_contiguous(key):
    par, direction = key.split("-")
    got = recursion_eval(ShiftSpec("F1", par, direction, 1), P1, PT).value
    assert rel(got, contiguous_shift_f1(key, P1, PT)) < 1e-12


def test_f2_b_up_three_steps(oracles):
    params = F2(1.1, 0.5, 0.7, 1.9, 2.3)
    got = recursion_eval(ShiftSpec("F2", "b", "up", 3), params, (0.2, 0.3)).value
    want = next(v for fam, p, pt, v in oracles["appell"] if fam == "F2" and p[1] == 3.5)
    assert rel(got, want) < 1e-9


def test_f2_a_down_readings_disagree():
    params, pt = SAMPLES["F2"]
    shift = ShiftSpec("F2", "a", "down", 3)
    want = eval_appell(shift.target(params), pt).value
    assert rel(recursion_eval(shift, params, pt).value, want) < 1e-10
    for reading in ("printed", "sign-fixed"):
        assert rel(recursion_eval(shift, params, pt, reading=reading).value, want) > 1e-4


def test_up_then_down_round_trip():
    for family, par in [("F1", "a"), ("F1", "b"), ("F2", "b"), ("F3", "a"), ("F4", "a")]:
        params, pt = SAMPLES[family]
        up = ShiftSpec(family, par, "up", 2)
        down = ShiftSpec(family, par, "down", 2)
        shifted = up.target(params)
        back = recursion_eval(down, shifted, pt).value
        assert rel(back, eval_appell(params, pt).value) < 1e-8, (family, par)


@pytest.mark.parametrize("case", MULTITERM_CASES)
def test_multiterm_n0_is_identity(case):
    params = P1 if case.startswith("F1") else SAMPLES["F4"][0]
    pt = PT if case.startswith("F1") else SAMPLES["F4"][1]
    assert multiterm_recursion_eval(case, params, pt, 0).value == eval_appell(params, pt).value


@pytest.mark.parametrize("case", MULTITERM_CASES)
def test_multiterm_matches_direct(case):
    params = P1 if case.startswith("F1") else SAMPLES["F4"][0]
    pt = PT if case.startswith("F1") else SAMPLES["F4"][1]
    for n in (1, 2, 4):
        got = multiterm_recursion_eval(case, params, pt, n).value
        assert rel(got, eval_appell(multiterm_target(case, params, n), pt).value) < 1e-9


def test_multiterm_b_up_agrees_with_single_step():
    a = multiterm_recursion_eval("F1-b-up", P1, PT, 1).value
    b = recursion_eval(ShiftSpec("F1", "b", "up", 1), P1, PT).value
    assert rel(a, b) < 1e-12


def test_f4_c_down_two_steps(oracles):
    params = F4(1.3, 0.8, 2.5, 1.7)
    want = next(v for fam, p, pt, v in oracles["appell"] if fam == "F4" and p[2] == 0.5)
    got = multiterm_recursion_eval("F4-c-down", params, (0.05, 0.08), 2).value
    assert rel(got, want) < 1e-9
    got = recursion_eval(ShiftSpec("F4", "c", "down", 2), params, (0.05, 0.08)).value
    assert rel(got, want) < 1e-9
    assert rel(appell("F4", (1.3, 0.8, 0.5, 1.7), 0.05, 0.08), want) < 1e-12


def test_f4_c_down_printed_reading_fails():
    params, pt = SAMPLES["F4"]
    shift = ShiftSpec("F4", "c", "down", 3)
    want = eval_appell(shift.target(params), pt).value
    assert rel(recursion_eval(shift, params, pt, reading="printed").value, want) > 1e-4
