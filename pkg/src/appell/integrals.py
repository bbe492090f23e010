"""Euler-type integral representations evaluated by adaptive Gauss-Legendre quadrature.

Endpoint singularities of the form u^(alpha-1) (1-u)^(beta-1) with
exponents in (-1, 0) are absorbed by the substitution u = t^(1/alpha) (and
its mirror at u = 1) before any quadrature rule sees them.  Triangular
regions are mapped to the unit square by (u, v) = (s(1-t), st), whose
Jacobian s merges into the s-weight, so every double integral here is a
nested pair of beta-weighted one-dimensional integrals.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable

import numpy as np

from .core import gamma_bracket
from .errors import DomainError, ParameterError, QuadratureFailure
from .series import AppellParams, F1, Point2, as_point, eval_appell

# Strict-inequality margin for the parameter constraints of the representations.
CONSTRAINT_MARGIN = 1e-6


@dataclass(frozen=True)
class QuadratureSpec:
    scheme: str = "adaptive"
    order: int = 64
    endpoint_handling: str = "algebraic-substitution"
    tol: float = 1e-10
    max_panels: int = 4096

    def __post_init__(self):
        if self.scheme not in ("adaptive", "fixed"):
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.order < 8:
            raise ValueError("quadrature order must be at least 8")
        if self.endpoint_handling not in ("none", "algebraic-substitution"):
            raise ValueError(f"unknown endpoint handling {self.endpoint_handling!r}")


DEFAULT_SPEC = QuadratureSpec()


@lru_cache(maxsize=16)
def _gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(order)


def _panel(f, lo: float, hi: float, order: int):
    nodes, weights = _gauss_legendre(order)
    half = 0.5 * (hi - lo)
    t = lo + half * (nodes + 1.0)
    return half * (np.asarray(f(t)) @ weights)


def integrate(f: Callable[[np.ndarray], np.ndarray], lo: float, hi: float,
              spec: QuadratureSpec = DEFAULT_SPEC):
    """Integrate a vectorised ``f`` over ``[lo, hi]``.

    ``f`` maps a 1-D array of nodes to values along its last axis, so vector
    valued integrands (one row per outer node of a nested integral) are
    refined together.  Panels are bisected worst-first until the summed
    coarse-vs-bisected discrepancy is below ``tol * max(1, |I|)``.
    """
    if spec.scheme == "fixed":
        return _panel(f, lo, hi, spec.order)

    def split(a, b):
        mid = 0.5 * (a + b)
        coarse = _panel(f, a, b, spec.order)
        fine = _panel(f, a, mid, spec.order) + _panel(f, mid, b, spec.order)
        err = float(np.max(np.abs(fine - coarse)))
        return err, a, b, fine

    panels = [split(lo, hi)]
    heap = [(-panels[0][0], 0)]
    alive = {0: panels[0]}
    next_id = 1
    while True:
        total_err = math.fsum(p[0] for p in alive.values())
        values = [alive[k][3] for k in sorted(alive, key=lambda k: alive[k][1])]
        total = np.sum(values, axis=0)
        if total_err <= spec.tol * max(1.0, float(np.max(np.abs(total)))):
            return total
        if len(alive) >= spec.max_panels:
            raise QuadratureFailure(
                f"quadrature error {total_err:.3g} above tolerance after {len(alive)} panels"
            )
        _, worst = heapq.heappop(heap)
        _, a, b, _ = alive.pop(worst)
        mid = 0.5 * (a + b)
        for child in (split(a, mid), split(mid, b)):
            alive[next_id] = child
            heapq.heappush(heap, (-child[0], next_id))
            next_id += 1


def beta_integral(g: Callable[[np.ndarray], np.ndarray], alpha: float, beta: float,
                  spec: QuadratureSpec = DEFAULT_SPEC):
    """``int_0^1 u^(alpha-1) (1-u)^(beta-1) g(u) du`` for alpha, beta > 0."""
    if not (alpha > 0 and beta > 0):
        raise ParameterError("beta weight exponents must exceed -1")
    substitute = spec.endpoint_handling == "algebraic-substitution"
    # the two halves share the error budget
    spec = replace(spec, tol=0.5 * spec.tol)

    # left half, u in [0, 1/2]
    if substitute and alpha < 1.0:
        def left(t):
            u = t ** (1.0 / alpha)
            return (1.0 / alpha) * (1.0 - u) ** (beta - 1.0) * g(u)
        left_val = integrate(left, 0.0, 0.5 ** alpha, spec)
    else:
        def left(u):
            return u ** (alpha - 1.0) * (1.0 - u) ** (beta - 1.0) * g(u)
        left_val = integrate(left, 0.0, 0.5, spec)

    # right half in the reflected variable w = 1 - u in [0, 1/2]
    if substitute and beta < 1.0:
        def right(t):
            w = t ** (1.0 / beta)
            return (1.0 / beta) * (1.0 - w) ** (alpha - 1.0) * g(1.0 - w)
        right_val = integrate(right, 0.0, 0.5 ** beta, spec)
    else:
        def right(w):
            return w ** (beta - 1.0) * (1.0 - w) ** (alpha - 1.0) * g(1.0 - w)
        right_val = integrate(right, 0.0, 0.5, spec)
    return left_val + right_val


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ParameterError(message)


def _positive(v: float) -> bool:
    return v > CONSTRAINT_MARGIN


# -- F1 single integral -----------------------------------------------------

def f1_single_integral(params: AppellParams, point, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """F1 from its single Euler integral over u in [0, 1]; needs c > a > 0."""
    if params.family != "F1":
        raise ValueError("single integral is for F1")
    a, b, bp, c = params.values()
    p = as_point(point)
    _require(_positive(a) and _positive(c - a), "single integral needs c > a > 0")
    if not (p.x < 1.0 and p.y < 1.0):
        raise DomainError("single integral needs u*x < 1 and u*y < 1 on [0, 1]")

    def g(u):
        return (1.0 - u * p.x) ** (-b) * (1.0 - u * p.y) ** (-bp)

    return gamma_bracket([c], [a, c - a]) * float(beta_integral(g, a, c - a, spec))


# -- double integrals -------------------------------------------------------

def _nested(outer_alpha, outer_beta, inner_alpha, inner_beta, kernel, spec):
    """``int int`` of the product of two beta weights and ``kernel(s, t)``.

    ``t`` is the outer variable; ``kernel`` must broadcast over a column of
    outer nodes against a row of inner nodes.
    """
    def outer(t):
        t_col = np.asarray(t)[:, None]
        return beta_integral(lambda s: kernel(s[None, :], t_col), inner_alpha, inner_beta, spec)

    return float(beta_integral(outer, outer_alpha, outer_beta, spec))


def integral_constraints(family: str, params: AppellParams) -> list[tuple[str, float]]:
    """Named quantities that must be positive for the double integral to converge."""
    v = params
    if family == "F1":
        return [("b", v.b), ("b'", v.b_prime), ("c-b-b'", v.c - v.b - v.b_prime)]
    if family == "F2":
        return [("b", v.b), ("b'", v.b_prime), ("c-b", v.c - v.b), ("c'-b'", v.c_prime - v.b_prime)]
    if family == "F3":
        return [("b", v.b), ("b'", v.b_prime), ("c-b-b'", v.c - v.b - v.b_prime)]
    return [("a", v.a), ("b", v.b), ("c-a", v.c - v.a), ("c'-b", v.c_prime - v.b)]


def double_integral_point(family: str, point) -> Point2:
    """Argument at which the double integral reproduces the series."""
    p = as_point(point)
    if family == "F4":
        return Point2(p.x * (1.0 - p.y), p.y * (1.0 - p.x))
    return p


def appell_double_integral(family: str, params: AppellParams, point,
                           spec: QuadratureSpec = DEFAULT_SPEC, reading: str = "corrected") -> float:
    """Bracket-normalised double integral equal to the family's series value.

    For F4 the result equals F4 at ``(x(1-y), y(1-x))``.  ``reading="printed"``
    uses the exponent (1-u)^(c-b'-1) in the F2 integrand instead of
    (1-u)^(c-b-1); it has no effect for other families.
    """
    if params.family != family:
        raise ValueError("family and parameter family differ")
    for name, value in integral_constraints(family, params):
        _require(_positive(value), f"{family} double integral needs {name} > 0")
    p = as_point(point)
    x, y = p.x, p.y

    if family in ("F1", "F3"):
        if not (x < 1.0 and y < 1.0):
            raise DomainError("integrand must stay positive on the triangle")
        a, b, bp, c = params.a, params.b, params.b_prime, params.c
        if family == "F1":
            def kernel(s, t):
                return (1.0 - s * ((1.0 - t) * x + t * y)) ** (-a)
        else:
            ap = params.a_prime

            def kernel(s, t):
                return (1.0 - s * (1.0 - t) * x) ** (-a) * (1.0 - s * t * y) ** (-ap)
        # outer t-weight t^(b'-1) (1-t)^(b-1); inner s-weight s^(b+b'-1) (1-s)^(c-b-b'-1)
        raw = _nested(bp, b, b + bp, c - b - bp, kernel, spec)
        return raw * gamma_bracket([c], [b, bp, c - b - bp])

    if family == "F2":
        if not max(x, 0.0) + max(y, 0.0) < 1.0:
            raise DomainError("F2 integrand must stay positive on the square")
        a, b, bp, c, cp = params.values()
        u_beta = c - b if reading != "printed" else c - bp
        _require(_positive(u_beta), "F2 double integral exponent is not integrable")

        def kernel(u, v):
            return (1.0 - u * x - v * y) ** (-a)
        # outer v-weight, inner u-weight
        raw = _nested(bp, cp - bp, b, u_beta, kernel, spec)
        return raw * gamma_bracket([c, cp], [b, bp, c - b, cp - bp])

    if not max(x, 0.0) + max(y, 0.0) < 1.0:
        raise DomainError("F4 integrand must stay positive on the square")
    a, b, c, cp = params.values()
    e = c + cp - a - b - 1.0

    def kernel(u, v):
        ux = 1.0 - u * x
        vy = 1.0 - v * y
        return ux ** (-b) * vy ** (-a) * (1.0 - u * v * x * y / (ux * vy)) ** e
    raw = _nested(b, cp - b, a, c - a, kernel, spec)
    return raw * gamma_bracket([c, cp], [a, b, c - a, cp - b])


# -- elliptic integrals -----------------------------------------------------

@dataclass(frozen=True)
class EllipticArgs:
    phi: float = math.pi / 2
    k: float = 0.0
    n: float = 0.0


def elliptic(kind: str, args: EllipticArgs, spec: QuadratureSpec = DEFAULT_SPEC) -> tuple[float, float]:
    """``(quadrature value, F1-based value)`` for F(phi, k), E(phi, k) or Pi(n, k)."""
    k2 = args.k * args.k
    if kind in ("F", "E"):
        phi = args.phi
        if not abs(phi) < math.pi / 2:
            raise DomainError("incomplete elliptic integrals need |phi| < pi/2")
        s = math.sin(phi)
        if not k2 * s * s < 1.0:
            raise DomainError("need k^2 sin^2(phi) < 1")
        if kind == "F":
            def f(th):
                return 1.0 / np.sqrt(1.0 - k2 * np.sin(th) ** 2)
            params = F1(0.5, 0.5, 0.5, 1.5)
        else:
            def f(th):
                return np.sqrt(1.0 - k2 * np.sin(th) ** 2)
            params = F1(0.5, 0.5, -0.5, 1.5)
        quad = float(integrate(f, 0.0, phi, spec)) if phi != 0 else 0.0
        series = s * eval_appell(params, (s * s, k2 * s * s)).value
        return quad, series
    if kind == "Pi":
        nn = args.n
        if not (nn < 1.0 and k2 < 1.0):
            raise DomainError("complete Pi(n, k) needs n < 1 and k^2 < 1")

        def f(th):
            s2 = np.sin(th) ** 2
            return 1.0 / ((1.0 - nn * s2) * np.sqrt(1.0 - k2 * s2))
        quad = float(integrate(f, 0.0, math.pi / 2, spec))
        series = math.pi / 2 * eval_appell(F1(0.5, 1.0, 0.5, 1.0), (nn, k2)).value
        return quad, series
    raise ValueError(f"unknown elliptic kind {kind!r}")
