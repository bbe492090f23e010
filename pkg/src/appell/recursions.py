"""Contiguous relations for F1 and parameter-shift recursions for F1-F4.

Every right-hand side is a finite linear combination of Appell values, each
obtained from :func:`appell.series.eval_appell`.  The recursions serve both
as alternative evaluators for shifted parameter sets and as identity checks.

Several downward recursions are known in two readings.  ``reading="printed"``
reproduces the commonly quoted forms, whose k-sums start at 1;
``reading="corrected"`` (the default) starts them at 0, which is what the
telescoping ``F(p - k) - F(p - k - 1)`` actually produces.  The two readings
coincide for every upward recursion and for the c-down recursions of F1, F2
and F3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Literal

from .core import DEFAULT_OPTIONS, EvaluationOptions, EvaluationResult, pochhammer
from .errors import PoleError, UnsupportedShift
from .series import AppellParams, Point2, as_point, eval_appell

Reading = Literal["corrected", "printed", "sign-fixed"]
READINGS = ("corrected", "printed", "sign-fixed")


class ContiguousRelationId(str, Enum):
    A = "F1-A"
    B = "F1-B"
    C = "F1-C"
    D = "F1-D"


# (family, parameter, direction) triples that have a recursion.
PRINTED_SHIFTS = {
    ("F1", "a", "up"), ("F1", "a", "down"), ("F1", "b", "up"), ("F1", "b", "down"), ("F1", "c", "down"),
    ("F2", "a", "up"), ("F2", "a", "down"), ("F2", "b", "up"), ("F2", "b", "down"), ("F2", "c", "down"),
    ("F3", "a", "up"), ("F3", "a", "down"), ("F3", "c", "down"),
    ("F4", "a", "up"), ("F4", "a", "down"), ("F4", "c", "down"),
}

# Recursions whose printed form differs from the corrected one.
DISPUTED_SHIFTS = {
    ("F1", "a", "down"), ("F1", "b", "down"),
    ("F2", "a", "down"), ("F2", "b", "down"),
    ("F3", "a", "down"), ("F4", "a", "down"), ("F4", "c", "down"),
}

MULTITERM_CASES = ("F1-a-up", "F1-a-down", "F1-b-up", "F1-b-down", "F4-c-down")


@dataclass(frozen=True)
class ShiftSpec:
    family: str
    parameter: str
    direction: str
    n: int

    def __post_init__(self):
        if (self.family, self.parameter, self.direction) not in PRINTED_SHIFTS:
            raise UnsupportedShift(
                f"no recursion for {self.family} {self.parameter}-{self.direction}"
            )
        if int(self.n) != self.n or self.n < 1:
            raise ValueError("shift count n must be a positive integer")

    @property
    def key(self) -> str:
        return f"{self.family}-{self.parameter}-{self.direction}"

    def target(self, params: AppellParams) -> AppellParams:
        """Parameter set whose value the recursion produces."""
        step = self.n if self.direction == "up" else -self.n
        return params.shifted(**{self.parameter: step})


Combination = list[tuple[float, AppellParams]]


def _nonzero(den: float) -> float:
    if den == 0.0:
        raise PoleError("recursion coefficient has a vanishing denominator")
    return den


def _evaluate(combo: Combination, point: Point2, opts: EvaluationOptions) -> EvaluationResult:
    total = 0.0
    err = 0.0
    terms = 0
    converged = True
    for coef, p in combo:
        r = eval_appell(p, point, opts)
        total += coef * r.value
        err += abs(coef) * r.error_estimate
        terms += r.terms_used
        converged = converged and r.converged
    return EvaluationResult(total, terms, err, converged)


# -- contiguous relations ---------------------------------------------------

def contiguous_terms_f1(rel, params: AppellParams, point,
                        opts: EvaluationOptions = DEFAULT_OPTIONS) -> list[float]:
    """Individual summands of one of the four basic F1 contiguous relations."""
    rel = ContiguousRelationId(rel)
    p = as_point(point)
    a, b, bp, c = params.values()
    x, y = p.x, p.y

    def F(**d):
        return eval_appell(params.shifted(**d), p, opts).value

    f0 = F()
    if rel is ContiguousRelationId.A:
        return [(a - b - bp) * f0, -a * F(a=1), b * F(b=1), bp * F(b_prime=1)]
    if rel is ContiguousRelationId.B:
        return [c * f0, -(c - a) * F(c=1), -a * F(a=1, c=1)]
    if rel is ContiguousRelationId.C:
        return [c * f0, c * (x - 1) * F(b=1), -(c - a) * x * F(b=1, c=1)]
    return [c * f0, c * (y - 1) * F(b_prime=1), -(c - a) * y * F(b_prime=1, c=1)]


def contiguous_residual_f1(rel, params: AppellParams, point,
                           opts: EvaluationOptions = DEFAULT_OPTIONS) -> float:
    return math.fsum(contiguous_terms_f1(rel, params, point, opts))


def contiguous_scale(terms: list[float]) -> float:
    return max(abs(t) for t in terms)


def contiguous_shift_f1(key: str, params: AppellParams, point,
                        opts: EvaluationOptions = DEFAULT_OPTIONS) -> float:
    """Value of a unit-shifted F1 obtained by solving one basic contiguous relation.

    ``key`` is one of ``a-up``, ``a-down``, ``b-up``, ``b-down``, ``c-down``.
    """
    p = as_point(point)
    a, b, bp, c = params.values()
    x = p.x

    def F(q: AppellParams, **d):
        return eval_appell(q.shifted(**d), p, opts).value

    if key == "a-up":
        return ((a - b - bp) * F(params) + b * F(params, b=1) + bp * F(params, b_prime=1)) / a
    if key == "a-down":
        q = params.shifted(a=-1)
        return ((a - 1) * F(params) - b * F(q, b=1) - bp * F(q, b_prime=1)) / (a - 1 - b - bp)
    if key == "b-up":
        return ((c - a) * x * F(params, b=1, c=1) - c * F(params)) / (c * (x - 1))
    if key == "b-down":
        q = params.shifted(b=-1)
        return ((c - a) * x * F(q, b=1, c=1) - c * (x - 1) * F(params)) / c
    if key == "c-down":
        q = params.shifted(c=-1)
        return ((c - 1 - a) * F(params) + a * F(q, a=1, c=1)) / (c - 1)
    raise UnsupportedShift(f"no contiguous solution for F1 {key}")


# -- Wang-type recursions ---------------------------------------------------

def recursion_terms(shift: ShiftSpec, params: AppellParams, point,
                    reading: Reading = "corrected") -> Combination:
    """Right-hand side of a recursion as ``[(coefficient, parameters), ...]``."""
    if params.family != shift.family:
        raise ValueError("shift family and parameter family differ")
    if reading not in READINGS:
        raise ValueError(f"unknown reading {reading!r}")
    p = as_point(point)
    x, y = p.x, p.y
    n = int(shift.n)
    fam, par, up = shift.family, shift.parameter, shift.direction == "up"
    a, b, c = params.a, params.b, params.c
    combo: Combination = [(1.0, params)]

    if up:
        ks = range(1, n + 1)
    elif reading == "corrected":
        ks = range(0, n)
    else:
        ks = range(1, n)
    sgn = 1.0 if up else -1.0

    def step(k):
        return k if up else -k

    if par == "a":
        if fam == "F1":
            bp = params.b_prime
            combo += [(sgn * b * x / c, params.shifted(a=step(k), b=1, c=1)) for k in ks]
            combo += [(sgn * bp * y / c, params.shifted(a=step(k), b_prime=1, c=1)) for k in ks]
        elif fam == "F2":
            bp, cp = params.b_prime, params.c_prime
            combo += [(sgn * b * x / c, params.shifted(a=step(k), b=1, c=1)) for k in ks]
            second = step
            if not up and reading == "printed":
                def second(k):
                    return k
            combo += [(sgn * bp * y / cp, params.shifted(a=second(k), b_prime=1, c_prime=1)) for k in ks]
        elif fam == "F3":
            combo += [(sgn * b * x / c, params.shifted(a=step(k), b=1, c=1)) for k in ks]
        else:
            cp = params.c_prime
            combo += [(sgn * b * x / c, params.shifted(a=step(k), b=1, c=1)) for k in ks]
            combo += [(sgn * b * y / cp, params.shifted(a=step(k), b=1, c_prime=1)) for k in ks]
    elif par == "b":
        combo += [(sgn * a * x / c, params.shifted(a=1, b=step(k), c=1)) for k in ks]
    else:
        if fam == "F4":
            if reading == "corrected":
                ks = range(0, n)
            else:
                ks = range(1, n)
            for k in ks:
                coef = a * b * x / _nonzero((c - k) * (c - k - 1))
                combo.append((coef, params.with_values(a=a + 1, b=b + 1, c=c - k + 1)))
        else:
            for k in range(1, n + 1):
                den = _nonzero((c - k) * (c - k + 1))
                if fam == "F1":
                    bp = params.b_prime
                    combo.append((a * b * x / den, params.with_values(a=a + 1, b=b + 1, c=c - k + 2)))
                    combo.append((a * bp * y / den,
                                  params.with_values(a=a + 1, b_prime=bp + 1, c=c - k + 2)))
                elif fam == "F2":
                    combo.append((a * b * x / den, params.with_values(a=a + 1, b=b + 1, c=c - k + 2)))
                else:
                    ap, bp = params.a_prime, params.b_prime
                    combo.append((a * b * x / den, params.with_values(a=a + 1, b=b + 1, c=c - k + 2)))
                    combo.append((ap * bp * y / den,
                                  params.with_values(a_prime=ap + 1, b_prime=bp + 1, c=c - k + 2)))
    return combo


def recursion_eval(shift: ShiftSpec, params: AppellParams, point,
                   opts: EvaluationOptions = DEFAULT_OPTIONS,
                   reading: Reading = "corrected") -> EvaluationResult:
    """Shifted Appell value from the finite recursion sum."""
    p = as_point(point)
    return _evaluate(recursion_terms(shift, params, p, reading), p, opts)


def multiterm_terms(case: str, params: AppellParams, point, n: int) -> Combination:
    if case not in MULTITERM_CASES:
        raise UnsupportedShift(f"no multi-term recursion {case!r}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    p = as_point(point)
    x, y = p.x, p.y
    a, b, c = params.a, params.b, params.c
    combo: Combination = []
    if case in ("F1-a-up", "F1-a-down"):
        bp = params.b_prime
        down = case.endswith("down")
        for i in range(n + 1):
            for k in range(n - i + 1):
                coef = (math.comb(n, i) * math.comb(n - i, k) * pochhammer(b, i) * pochhammer(bp, k)
                        / pochhammer(c, i + k))
                if down:
                    coef *= (-x) ** i * (-y) ** k
                    q = params.with_values(b=b + i, b_prime=bp + k, c=c + i + k)
                else:
                    coef *= x ** i * y ** k
                    q = params.with_values(a=a + i + k, b=b + i, b_prime=bp + k, c=c + i + k)
                combo.append((coef, q))
    elif case in ("F1-b-up", "F1-b-down"):
        down = case.endswith("down")
        for k in range(n + 1):
            coef = math.comb(n, k) * pochhammer(a, k) / pochhammer(c, k) * ((-x) if down else x) ** k
            q = params.with_values(a=a + k, c=c + k) if down else params.with_values(a=a + k, b=b + k, c=c + k)
            combo.append((coef, q))
    else:
        for k in range(n + 1):
            coef = (math.comb(n, k) * pochhammer(a, k) * pochhammer(b, k)
                    / (pochhammer(c, k) * pochhammer(c - n, k)) * x ** k)
            combo.append((coef, params.with_values(a=a + k, b=b + k, c=c + k)))
    fam = case.split("-")[0]
    if params.family != fam:
        raise ValueError(f"{case} needs {fam} parameters")
    return combo


def multiterm_target(case: str, params: AppellParams, n: int) -> AppellParams:
    _, par, direction = case.split("-")
    return params.shifted(**{par: n if direction == "up" else -n})


def multiterm_recursion_eval(case: str, params: AppellParams, point, n: int,
                             opts: EvaluationOptions = DEFAULT_OPTIONS) -> EvaluationResult:
    p = as_point(point)
    return _evaluate(multiterm_terms(case, params, p, n), p, opts)
