"""Direct double-series evaluation of the Appell functions F1, F2, F3, F4."""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from enum import Enum
from fractions import Fraction

from ._engine import accumulate, ratio_blocks
from .core import (
    DEFAULT_OPTIONS,
    EvaluationOptions,
    EvaluationResult,
    gauss_2f1,
    is_nonpositive_integer,
)
from .errors import DomainError

FAMILIES = ("F1", "F2", "F3", "F4")

# Parameter names in the order of each family's signature.
SIGNATURES = {
    "F1": ("a", "b", "b_prime", "c"),
    "F2": ("a", "b", "b_prime", "c", "c_prime"),
    "F3": ("a", "a_prime", "b", "b_prime", "c"),
    "F4": ("a", "b", "c", "c_prime"),
}

_BOUNDARY_TOL = 1e-14


def _number(v):
    return v if isinstance(v, Fraction) else float(v)


@dataclass(frozen=True)
class AppellParams:
    """Family-tagged parameters.  Fields absent from the family's signature stay ``None``.

    Values are stored as floats, except that :class:`fractions.Fraction`
    inputs are kept exact so parameter maps can be checked without rounding.
    """

    family: str
    a: float
    b: float
    c: float
    b_prime: float | None = None
    a_prime: float | None = None
    c_prime: float | None = None

    def __post_init__(self):
        if self.family not in SIGNATURES:
            raise ValueError(f"unknown Appell family {self.family!r}")
        sig = SIGNATURES[self.family]
        for f in fields(self):
            if f.name == "family":
                continue
            present = getattr(self, f.name) is not None
            if present != (f.name in sig):
                state = "missing" if f.name in sig else "not allowed"
                raise ValueError(f"{self.family}: parameter {f.name} is {state}")
            if present:
                object.__setattr__(self, f.name, _number(getattr(self, f.name)))

    @classmethod
    def of(cls, family: str, *values: float) -> "AppellParams":
        """Build from positional values in signature order, e.g. ``of("F1", a, b, b', c)``."""
        sig = SIGNATURES[family]
        if len(values) != len(sig):
            raise ValueError(f"{family} takes {len(sig)} parameters {sig}, got {len(values)}")
        return cls(family=family, **dict(zip(sig, values)))

    def values(self) -> tuple[float, ...]:
        return tuple(getattr(self, name) for name in SIGNATURES[self.family])

    def shifted(self, **deltas: float) -> "AppellParams":
        return replace(self, **{k: getattr(self, k) + v for k, v in deltas.items()})

    def with_values(self, **new: float) -> "AppellParams":
        return replace(self, **new)

    def as_float(self) -> "AppellParams":
        return replace(self, **{k: float(getattr(self, k)) for k in SIGNATURES[self.family]})


def F1(a, b, b_prime, c) -> AppellParams:
    return AppellParams.of("F1", a, b, b_prime, c)


def F2(a, b, b_prime, c, c_prime) -> AppellParams:
    return AppellParams.of("F2", a, b, b_prime, c, c_prime)


def F3(a, a_prime, b, b_prime, c) -> AppellParams:
    return AppellParams.of("F3", a, a_prime, b, b_prime, c)


def F4(a, b, c, c_prime) -> AppellParams:
    return AppellParams.of("F4", a, b, c, c_prime)


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        for v in (self.x, self.y):
            if not math.isfinite(v):
                raise ValueError("point coordinates must be finite")
        object.__setattr__(self, "x", _number(self.x))
        object.__setattr__(self, "y", _number(self.y))

    def as_float(self) -> "Point2":
        return Point2(float(self.x), float(self.y))

    def __iter__(self):
        yield self.x
        yield self.y


def as_point(point) -> Point2:
    return point if isinstance(point, Point2) else Point2(*point)


class Region(str, Enum):
    INSIDE = "Inside"
    BOUNDARY = "Boundary"
    OUTSIDE = "Outside"


@dataclass(frozen=True)
class DomainRegion:
    classification: Region
    margin: float

    @property
    def inside(self) -> bool:
        return self.classification is Region.INSIDE


def domain_functional(family: str, x: float, y: float) -> float:
    ax, ay = abs(x), abs(y)
    if family in ("F1", "F3"):
        return max(ax, ay)
    if family == "F2":
        return ax + ay
    if family == "F4":
        return math.sqrt(ax) + math.sqrt(ay)
    raise ValueError(f"unknown Appell family {family!r}")


def classify_domain(family: str, point) -> DomainRegion:
    p = as_point(point)
    g = domain_functional(family, p.x, p.y)
    margin = 1.0 - g
    if abs(margin) <= _BOUNDARY_TOL:
        return DomainRegion(Region.BOUNDARY, margin)
    return DomainRegion(Region.INSIDE if margin > 0 else Region.OUTSIDE, margin)


def bounded_indices(params: AppellParams) -> tuple[bool, bool]:
    """Which summation indices (m, n) are cut off by a nonpositive-integer numerator."""
    npi = is_nonpositive_integer
    fam = params.family
    if fam == "F1" or fam == "F2":
        both = npi(params.a)
        return both or npi(params.b), both or npi(params.b_prime)
    if fam == "F3":
        return npi(params.a) or npi(params.b), npi(params.a_prime) or npi(params.b_prime)
    both = npi(params.a) or npi(params.b)
    return both, both


def check_domain(params: AppellParams, point: Point2) -> None:
    m_bounded, n_bounded = bounded_indices(params)
    if m_bounded and n_bounded:
        return
    if m_bounded:
        if not abs(point.y) < 1.0:
            raise DomainError(f"{params.family}: terminating in m but |y| >= 1")
        return
    if n_bounded:
        if not abs(point.x) < 1.0:
            raise DomainError(f"{params.family}: terminating in n but |x| >= 1")
        return
    region = classify_domain(params.family, point)
    if not region.inside:
        raise DomainError(
            f"{params.family} at ({point.x}, {point.y}) is {region.classification.value} "
            f"(margin {region.margin:.3g})"
        )


def _ratios(params: AppellParams, x: float, y: float):
    fam = params.family
    a, b, c = params.a, params.b, params.c
    if fam == "F1":
        bp = params.b_prime

        def rm(m, n):
            s = m + n
            return (a + s) * (b + m) * x, (c + s) * (m + 1)

        def rn(m, n):
            s = m + n
            return (a + s) * (bp + n) * y, (c + s) * (n + 1)
    elif fam == "F2":
        bp, cp = params.b_prime, params.c_prime

        def rm(m, n):
            return (a + m + n) * (b + m) * x, (c + m) * (m + 1)

        def rn(m, n):
            return (a + m + n) * (bp + n) * y, (cp + n) * (n + 1)
    elif fam == "F3":
        ap, bp = params.a_prime, params.b_prime

        def rm(m, n):
            return (a + m) * (b + m) * x, (c + m + n) * (m + 1)

        def rn(m, n):
            return (ap + n) * (bp + n) * y, (c + m + n) * (n + 1)
    else:
        cp = params.c_prime

        def rm(m, n):
            s = m + n
            return (a + s) * (b + s) * x, (c + m) * (m + 1)

        def rn(m, n):
            s = m + n
            return (a + s) * (b + s) * y, (cp + n) * (n + 1)
    return rm, rn


def eval_appell(params: AppellParams, point,
                opts: EvaluationOptions = DEFAULT_OPTIONS) -> EvaluationResult:
    """Truncated double series summed along anti-diagonals ``m + n = k``."""
    p = as_point(point).as_float()
    params = params.as_float()
    check_domain(params, p)
    rm, rn = _ratios(params, p.x, p.y)
    return accumulate(ratio_blocks(rm, rn), opts)


def appell(family: str, values, x: float, y: float,
           opts: EvaluationOptions = DEFAULT_OPTIONS) -> float:
    """Value-only shorthand: ``appell("F2", (a, b, b', c, c'), x, y)``."""
    return eval_appell(AppellParams.of(family, *values), Point2(x, y), opts).value


def eval_f1_nested(params: AppellParams, point,
                   opts: EvaluationOptions = DEFAULT_OPTIONS) -> EvaluationResult:
    """F1 as a single sum over m of Pochhammer-weighted 2F1(a+m, b'; c+m; y).

    ``y = 1`` is accepted when ``c - a - b' > 0``: every inner 2F1 is then a
    Gauss sum.
    """
    if params.family != "F1":
        raise ValueError("eval_f1_nested needs F1 parameters")
    p = as_point(point).as_float()
    a, b, bp, c = params.as_float().values()
    x, y = p.x, p.y
    m_bounded = is_nonpositive_integer(a) or is_nonpositive_integer(b)
    if not m_bounded and not abs(x) < 1.0:
        raise DomainError("nested F1 needs |x| < 1")
    if not (abs(y) < 1.0 or (y == 1.0 and c - a - bp > 0)):
        if not (is_nonpositive_integer(a) or is_nonpositive_integer(bp)):
            raise DomainError("nested F1 needs |y| < 1, or y = 1 with c - a - b' > 0")

    tol = opts.tol
    inner_opts = replace(opts, tol=0.1 * tol)
    weight = 1.0
    total = 0.0
    inner_err = 0.0
    small = 0
    prev = None
    rho = 0.0
    term = 0.0
    for m in range(opts.max_terms):
        if m > 0:
            weight *= (a + m - 1) * (b + m - 1) / ((c + m - 1) * m) * x
        if weight == 0.0:
            return EvaluationResult(total, m, inner_err, True)
        inner = gauss_2f1(a + m, bp, c + m, y, inner_opts)
        term = weight * inner.value
        total += term
        inner_err += abs(weight) * inner.error_estimate
        if prev is not None and prev > 0.0:
            rho = min(abs(term) / prev, 0.99)
        prev = abs(term)
        scale = max(1.0, abs(total))
        small = small + 1 if abs(term) <= tol * scale else 0
        if small >= 3:
            tail = abs(term) / (1.0 - rho)
            if tail <= 0.5 * tol * scale:
                est = tail + inner_err
                return EvaluationResult(total, m + 1, est, est <= tol * scale)
    est = abs(term) / (1.0 - rho) + inner_err
    return EvaluationResult(total, opts.max_terms, est, False)
