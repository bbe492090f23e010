"""Scalar building blocks: Pochhammer symbols, gamma brackets and a reference 2F1.

Everything here works in binary64.  Gamma arithmetic is carried out in log
space with explicit sign tracking so that large parameters do not overflow
intermediate products.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Integral

import numpy as np
from scipy import special

from .errors import BranchError, BudgetExceeded, DomainError, PoleError

__all__ = [
    "EvaluationOptions",
    "EvaluationResult",
    "is_nonpositive_integer",
    "pochhammer",
    "poch_table",
    "log_gamma_signed",
    "gamma_bracket",
    "gauss_2f1",
    "hyp2f1",
    "real_power",
]

# Above this shift a product loop is replaced by log-gamma differences.
_PRODUCT_SHIFT_LIMIT = 64
_LOG_MAX = math.log(np.finfo(float).max)


@dataclass(frozen=True)
class EvaluationOptions:
    """Truncation controls shared by the series evaluators.

    ``max_terms`` bounds the anti-diagonal index (or the single-series index
    for 2F1).  ``strategy`` is ``"direct"`` or ``"auto"``; only the
    domain-extension evaluator in :mod:`appell.transforms` looks at it.
    """

    tol: float = 1e-12
    max_terms: int = 10_000
    strategy: str = "direct"
    raise_on_budget: bool = False

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")
        if self.strategy not in ("direct", "auto"):
            raise ValueError(f"unknown strategy {self.strategy!r}")


DEFAULT_OPTIONS = EvaluationOptions()


@dataclass(frozen=True)
class EvaluationResult:
    value: float
    terms_used: int
    error_estimate: float
    converged: bool
    strategy: str = "direct"

    def __float__(self):
        return float(self.value)


def is_nonpositive_integer(v) -> bool:
    v = float(v)
    return v <= 0 and v == math.floor(v)


def _as_int(shift) -> int:
    if isinstance(shift, Integral):
        return int(shift)
    f = float(shift)
    if f != math.floor(f):
        raise TypeError(f"Pochhammer shift must be an integer, got {shift!r}")
    return int(f)


def log_gamma_signed(v: float) -> tuple[float, float]:
    """Return ``(log|Gamma(v)|, sign Gamma(v))``; raises at the poles."""
    if is_nonpositive_integer(v):
        raise PoleError(f"Gamma has a pole at {v}")
    return float(special.gammaln(v)), float(special.gammasgn(v))


def pochhammer(base: float, shift: int) -> float:
    """Shifted factorial ``(base)_shift`` for any integer shift.

    Negative shifts follow ``(a)_{-m} = 1/(a-m)_m``.
    """
    n = _as_int(shift)
    base = float(base)
    if n == 0:
        return 1.0
    if n < 0:
        m = -n
        lo = base - m
        if lo == math.floor(lo) and lo <= 0.0 <= base - 1.0:
            raise PoleError(f"({base})_{n} has a vanishing reflected factor")
        return 1.0 / pochhammer(lo, m)
    if n <= _PRODUCT_SHIFT_LIMIT or is_nonpositive_integer(base):
        if is_nonpositive_integer(base) and -base < n:
            return 0.0
        return math.prod(base + j for j in range(n))
    lg1, s1 = log_gamma_signed(base + n)
    lg0, s0 = log_gamma_signed(base)
    logv = lg1 - lg0
    if logv > _LOG_MAX:
        raise OverflowError(f"({base})_{n} overflows binary64")
    return s1 * s0 * math.exp(logv)


def poch_table(base: float, lo: int, hi: int) -> np.ndarray:
    """``(base)_j`` for ``j = lo..hi`` (inclusive), built by running products.

    Poles in the reflected range come back as ``inf``; callers decide whether
    a pole is actually reached by a nonzero term.
    """
    lo, hi = min(lo, 0), max(hi, 0)
    out = np.empty(hi - lo + 1)
    zero = -lo
    out[zero] = 1.0
    if hi > 0:
        out[zero + 1:] = np.cumprod(base + np.arange(hi))
    if lo < 0:
        with np.errstate(divide="ignore"):
            out[:zero][::-1] = np.cumprod(1.0 / (base - np.arange(1, -lo + 1)))
    return out


def gamma_bracket(num, den) -> float:
    """``prod Gamma(num) / prod Gamma(den)`` evaluated in log space."""
    logv = 0.0
    sign = 1.0
    for v in num:
        lg, s = log_gamma_signed(v)
        logv += lg
        sign *= s
    for v in den:
        lg, s = log_gamma_signed(v)
        logv -= lg
        sign *= s
    if logv > _LOG_MAX:
        raise OverflowError("gamma bracket exceeds binary64 range")
    return sign * math.exp(logv)


def real_power(base: float, exponent: float) -> float:
    """``base**exponent`` restricted to the real branch."""
    base, exponent = float(base), float(exponent)
    if base > 0:
        return base ** exponent
    if exponent == math.floor(exponent):
        return float(base) ** int(exponent)
    raise BranchError(f"({base})**{exponent} has no real value on the principal branch")


def _terminating_degree(*numerators) -> int | None:
    degs = [int(-v) for v in numerators if is_nonpositive_integer(v)]
    return min(degs) if degs else None


def gauss_2f1(a: float, b: float, c: float, x: float,
              opts: EvaluationOptions = DEFAULT_OPTIONS) -> EvaluationResult:
    """Gauss hypergeometric series with a tail estimate.

    Valid for ``|x| < 1``, for ``x = 1`` when ``c - a - b > 0`` (Gauss
    summation) and anywhere when ``a`` or ``b`` is a nonpositive integer.
    """
    a, b, c, x = float(a), float(b), float(c), float(x)
    degree = _terminating_degree(a, b)
    if is_nonpositive_integer(c) and (degree is None or degree > -c):
        raise PoleError(f"2F1 denominator parameter c={c} is a pole")
    if degree is None:
        if x == 1.0:
            if not c - a - b > 0:
                raise DomainError("2F1 at x=1 needs c - a - b > 0")
            if is_nonpositive_integer(c - a) or is_nonpositive_integer(c - b):
                return EvaluationResult(0.0, 1, 0.0, True)
            return EvaluationResult(gamma_bracket([c, c - a - b], [c - a, c - b]), 1, 0.0, True)
        if not abs(x) < 1.0:
            raise DomainError(f"2F1 series diverges at x={x}")
    if x == 0.0:
        return EvaluationResult(1.0, 1, 0.0, True)

    tol = opts.tol
    ax = abs(x)
    total = 1.0
    comp = 0.0
    term = 1.0
    small = 0
    n = 0
    while True:
        if degree is not None and n >= degree:
            return EvaluationResult(total + comp, n + 1, 0.0, True)
        if n + 1 >= opts.max_terms:
            break
        ratio = (a + n) * (b + n) / ((c + n) * (n + 1.0))
        nxt = term * ratio * x
        n += 1
        # Neumaier-compensated accumulation
        t = total + nxt
        if abs(total) >= abs(nxt):
            comp += (total - t) + nxt
        else:
            comp += (nxt - t) + total
        total = t
        term = nxt
        if term == 0.0:
            return EvaluationResult(total + comp, n + 1, 0.0, True)
        scale = max(1.0, abs(total + comp))
        if abs(term) <= tol * scale:
            small += 1
        else:
            small = 0
        if small >= 3:
            rho = min(max(abs(ratio) * ax, ax), 0.99)
            nxt_ratio = abs((a + n) * (b + n) / ((c + n) * (n + 1.0))) * ax
            est = abs(term) * nxt_ratio / (1.0 - rho)
            if est <= tol * scale:
                return EvaluationResult(total + comp, n + 1, est, True)
    rho = min(ax, 0.99)
    est = abs(term) / (1.0 - rho)
    res = EvaluationResult(total + comp, n + 1, est, False)
    if opts.raise_on_budget:
        raise BudgetExceeded("2F1 summation exceeded its term budget", res)
    return res


def hyp2f1(a, b, c, x, opts: EvaluationOptions = DEFAULT_OPTIONS) -> float:
    """Value-only shorthand for :func:`gauss_2f1`."""
    return gauss_2f1(a, b, c, x, opts).value
