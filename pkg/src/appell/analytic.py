"""Coefficient recurrences and PDE residuals of the Appell functions.

The PDE systems are checked with central-difference jets of the series
evaluator.  Stencil evaluations run at a tolerance far below binary64
resolution so the truncation point cannot jump between neighbouring nodes;
what remains is O(h^2) discretisation error plus rounding amplified by 1/h^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .core import EvaluationOptions, pochhammer
from .errors import DomainError, PoleError, SingularPoint
from .series import AppellParams, as_point, classify_domain, eval_appell

# Tight enough that every stencil node sums to full double precision.
STENCIL_OPTIONS = EvaluationOptions(tol=1e-17)

MONGE = "monge"
PRINTED = "printed"


@dataclass(frozen=True)
class MongeJet:
    """Value and first/second partials of z(x, y) at one point."""

    z: float
    p: float
    q: float
    r: float
    s: float
    t: float


def f1_coefficient(params: AppellParams, m: int, n: int) -> float:
    a, b, bp, c = params.values()
    den = pochhammer(c, m + n)
    if den == 0.0:
        raise PoleError("F1 coefficient denominator vanishes")
    return (pochhammer(a, m + n) * pochhammer(b, m) * pochhammer(bp, n)
            / (math.factorial(m) * math.factorial(n) * den))


def coefficient_ratio_check(params: AppellParams, m: int, n: int) -> tuple[float, float]:
    """Residuals of the two F1 coefficient recurrences at index (m, n)."""
    if params.family != "F1":
        raise ValueError("coefficient recurrences are stated for F1")
    if m < 0 or n < 0:
        raise ValueError("indices must be nonnegative")
    a, b, bp, c = params.values()
    s = m + n
    if c + s == 0.0:
        raise PoleError("coefficient ratio has a vanishing denominator")
    A = f1_coefficient(params, m, n)
    ratio_m = (a + s) * (b + m) / ((1 + m) * (c + s))
    ratio_n = (a + s) * (bp + n) / ((1 + n) * (c + s))
    return (abs(f1_coefficient(params, m + 1, n) - ratio_m * A),
            abs(f1_coefficient(params, m, n + 1) - ratio_n * A))


def coefficient_by_path(params: AppellParams, path: str) -> float:
    """Coefficient reached from A_{0,0} = 1 by a word of ``m``/``n`` ratio steps."""
    a, b, bp, c = params.values()
    A = 1.0
    m = n = 0
    for step in path:
        s = m + n
        if step == "m":
            A *= (a + s) * (b + m) / ((1 + m) * (c + s))
            m += 1
        elif step == "n":
            A *= (a + s) * (bp + n) / ((1 + n) * (c + s))
            n += 1
        else:
            raise ValueError(f"bad path step {step!r}")
    return A


def _stencil_function(params: AppellParams, x: float, y: float, h: float, reach: int):
    for i in (-reach, reach):
        for j in (-reach, reach):
            if not classify_domain(params.family, (x + i * h, y + j * h)).inside:
                raise DomainError("finite-difference stencil leaves the convergence domain")

    @lru_cache(maxsize=None)
    def z(i: int, j: int) -> float:
        return eval_appell(params, (x + i * h, y + j * h), STENCIL_OPTIONS).value

    return z


def _jet(z, h: float, k: int) -> tuple[float, ...]:
    # Second-order central differences on the grid of spacing k*h.
    hk = k * h
    z0 = z(0, 0)
    return (
        z0,
        (z(k, 0) - z(-k, 0)) / (2 * hk),
        (z(0, k) - z(0, -k)) / (2 * hk),
        (z(k, 0) - 2 * z0 + z(-k, 0)) / hk ** 2,
        (z(k, k) - z(k, -k) - z(-k, k) + z(-k, -k)) / (4 * hk * hk),
        (z(0, k) - 2 * z0 + z(0, -k)) / hk ** 2,
    )


def monge_jet(params: AppellParams, point, h: float, order: int = 2) -> MongeJet:
    """Finite-difference jet of the series; ``order`` 4 applies one Richardson step."""
    p = as_point(point)
    if not h > 0:
        raise ValueError("step h must be positive")
    if order == 2:
        z = _stencil_function(params, p.x, p.y, h, 1)
        return MongeJet(*_jet(z, h, 1))
    if order == 4:
        z = _stencil_function(params, p.x, p.y, h, 2)
        fine, coarse = _jet(z, h, 1), _jet(z, h, 2)
        return MongeJet(*((4 * f - g) / 3 for f, g in zip(fine, coarse)))
    raise ValueError("order must be 2 or 4")


def pde_terms(family: str, equation_index: int, params: AppellParams, point, h: float = 1e-4,
              reading: str = MONGE, order: int = 4) -> list[float]:
    """Summands of one of the second-order PDEs satisfied by an Appell function.

    ``reading="printed"`` substitutes r = p*q, s = z_xx, t = z_yy for the
    letters, as in a commonly reproduced (garbled) definition of the jet.
    """
    if params.family != family:
        raise ValueError("family and parameter family differ")
    if equation_index not in (1, 2):
        raise ValueError("equation_index must be 1 or 2")
    pt = as_point(point)
    x, y = pt.x, pt.y
    J = monge_jet(params, pt, h, order)
    z, p, q = J.z, J.p, J.q
    if reading == MONGE:
        r, s, t = J.r, J.s, J.t
    elif reading == PRINTED:
        r, s, t = J.p * J.q, J.r, J.t
    else:
        raise ValueError(f"unknown reading {reading!r}")

    if family == "F1":
        a, b, bp, c = params.values()
        if equation_index == 1:
            return [x * (1 - x) * r, y * (1 - x) * s, (c - (a + b + 1) * x) * p, -b * y * q, -a * b * z]
        return [y * (1 - y) * t, x * (1 - y) * s, (c - (a + bp + 1) * y) * q, -bp * x * p, -a * bp * z]
    if family == "F2":
        a, b, bp, c, cp = params.values()
        if equation_index == 1:
            return [x * (1 - x) * r, -x * y * s, (c - (a + b + 1) * x) * p, -b * y * q, -a * b * z]
        return [y * (1 - y) * t, -x * y * s, (cp - (a + bp + 1) * y) * q, -bp * x * p, -a * bp * z]
    if family == "F3":
        a, ap, b, bp, c = params.values()
        if equation_index == 1:
            return [x * (1 - x) * r, y * s, (c - (a + b + 1) * x) * p, -a * b * z]
        return [y * (1 - y) * t, x * s, (c - (ap + bp + 1) * y) * q, -ap * bp * z]
    a, b, c, cp = params.values()
    k = a + b + 1
    if equation_index == 1:
        return [x * (1 - x) * r, -y * y * t, -2 * x * y * s, c * p, -k * x * p, -k * y * q, -a * b * z]
    return [y * (1 - y) * t, -x * x * r, -2 * x * y * s, cp * q, -k * x * p, -k * y * q, -a * b * z]


def pde_residual(family: str, equation_index: int, params: AppellParams, point,
                 h: float = 1e-4, reading: str = MONGE, order: int = 4) -> float:
    return math.fsum(pde_terms(family, equation_index, params, point, h, reading, order))


def term_scale(terms: list[float]) -> float:
    """Largest absolute summand; the reference magnitude for residual checks."""
    return max(abs(v) for v in terms)


def operator_terms_f1(equation_index: int, params: AppellParams, point, h: float = 1e-3,
                      reading: str = MONGE) -> list[float]:
    """The two sides of an F1 equation in theta/phi operator form.

    theta = x d/dx and phi = y d/dy are applied as nested five-point central
    differences of the evaluator, so the composed second-order operators are never
    expanded by hand.  The second equation divides by y; ``reading="printed"``
    divides by x instead.
    """
    if params.family != "F1":
        raise ValueError("operator form is implemented for F1")
    pt = as_point(point)
    x, y = pt.x, pt.y
    if equation_index == 1 and x == 0.0:
        raise SingularPoint("first operator equation divides by x")
    if equation_index == 2 and (y == 0.0 if reading == MONGE else x == 0.0):
        raise SingularPoint("second operator equation divides by the vanishing variable")
    a, b, bp, c = params.values()
    z = _stencil_function(params, x, y, h, 4)

    def theta(f):
        return lambda i, j: (x + i * h) * (
            f(i - 2, j) - 8 * f(i - 1, j) + 8 * f(i + 1, j) - f(i + 2, j)) / (12 * h)

    def phi(f):
        return lambda i, j: (y + j * h) * (
            f(i, j - 2) - 8 * f(i, j - 1) + 8 * f(i, j + 1) - f(i, j + 2)) / (12 * h)

    def plus(*fs_and_coefs):
        def g(i, j):
            return sum(coef * f(i, j) for coef, f in fs_and_coefs)
        return g

    tz, pz = theta(z), phi(z)
    u = plus((1.0, tz), (1.0, pz), (c - 1.0, z))
    if equation_index == 1:
        w = plus((1.0, tz), (b, z))
        left = plus((1.0, theta(w)), (1.0, phi(w)), (a, w))(0, 0)
        right = theta(u)(0, 0) / x
    elif equation_index == 2:
        w = plus((1.0, pz), (bp, z))
        left = plus((1.0, theta(w)), (1.0, phi(w)), (a, w))(0, 0)
        right = phi(u)(0, 0) / (y if reading == MONGE else x)
    else:
        raise ValueError("equation_index must be 1 or 2")
    return [left, -right]


def operator_residual_f1(equation_index: int, params: AppellParams, point, h: float = 1e-3,
                         reading: str = MONGE) -> float:
    return math.fsum(operator_terms_f1(equation_index, params, point, h, reading))
