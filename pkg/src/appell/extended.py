"""Horn G1/H3/H7, Kampe de Feriet series, and Lauricella series in n variables."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.special import gammaln

from ._accel import accelerated_sum
from ._engine import _apply_ratio, accumulate, direct_blocks, ratio_blocks
from .core import (
    DEFAULT_OPTIONS,
    EvaluationOptions,
    EvaluationResult,
    gamma_bracket,
    gauss_2f1,
    is_nonpositive_integer,
)
from .errors import BudgetExceeded, ConstraintError, DimensionError, DomainError, ParameterError, PoleError
from .integrals import CONSTRAINT_MARGIN, DEFAULT_SPEC, QuadratureSpec, beta_integral
from .series import Point2, as_point

# Implementation bound for the Horn series: no convergence regions are
# claimed, the direct engine is simply not used beyond this box.
HORN_BOX = 0.2

HORN_SIGNATURES = {
    "G1": ("a", "b", "b_prime"),
    "H3": ("a", "b", "c"),
    "H7": ("a", "b", "b_prime", "c"),
}


@dataclass(frozen=True)
class HornParams:
    which: str
    values: tuple[float, ...]

    def __post_init__(self):
        if self.which not in HORN_SIGNATURES:
            raise ValueError(f"unknown Horn function {self.which!r}")
        sig = HORN_SIGNATURES[self.which]
        if len(self.values) != len(sig):
            raise ValueError(f"{self.which} takes parameters {sig}")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))


def _log_factorials(n: np.ndarray) -> np.ndarray:
    return gammaln(np.asarray(n, dtype=float) + 1.0)


@dataclass(frozen=True)
class _LogPoch:
    """``(base)_j`` for ``j = lo..hi`` as log-magnitude and sign, with zero/pole masks.

    Indexed by ``j - lo``.  Working in logs keeps high-order terms finite
    where running products would overflow long before the terms are small.
    """

    lo: int
    log: np.ndarray
    sign: np.ndarray
    zero: np.ndarray
    pole: np.ndarray

    def at(self, j: np.ndarray):
        i = np.asarray(j) - self.lo
        return self.log[i], self.sign[i], self.zero[i], self.pole[i]


def _log_poch(base: float, lo: int, hi: int) -> _LogPoch:
    lo, hi = min(lo, 0), max(hi, 0)
    size = hi - lo + 1
    log = np.zeros(size)
    sign = np.ones(size)
    zero = np.zeros(size, dtype=bool)
    pole = np.zeros(size, dtype=bool)
    z = -lo
    if hi > 0:
        f = base + np.arange(hi)
        hit = f == 0.0
        with np.errstate(divide="ignore"):
            lf = np.where(hit, 0.0, np.log(np.abs(f)))
        log[z + 1:] = np.cumsum(lf)
        sign[z + 1:] = np.cumprod(np.where(f < 0, -1.0, 1.0))
        zero[z + 1:] = np.cumsum(hit) > 0
    if lo < 0:
        f = base - np.arange(1, -lo + 1)
        hit = f == 0.0
        with np.errstate(divide="ignore"):
            lf = np.where(hit, 0.0, np.log(np.abs(f)))
        log[:z][::-1] = -np.cumsum(lf)
        sign[:z][::-1] = np.cumprod(np.where(f < 0, -1.0, 1.0))
        pole[:z][::-1] = np.cumsum(hit) > 0
    return _LogPoch(lo, log, sign, zero, pole)


def _combine(numerators: list, denominators: list, log_factorials: np.ndarray,
             x: float, y: float, m: np.ndarray, n: np.ndarray) -> np.ndarray:
    """Assemble terms from ``_LogPoch.at`` factors with termination-before-pole semantics."""
    size = len(m)
    log = -log_factorials.copy()
    sign = np.ones(size)
    zero = np.zeros(size, dtype=bool)
    pole = np.zeros(size, dtype=bool)
    for lg, sg, zr, pl in numerators:
        log += lg
        sign *= sg
        zero |= zr
        pole |= pl
    for lg, sg, zr, pl in denominators:
        log -= lg
        sign *= sg
        pole |= zr
        zero |= pl
    for v, k in ((x, m), (y, n)):
        if v == 0.0:
            zero |= k > 0
        else:
            log += k * math.log(abs(v))
            if v < 0:
                sign *= np.where(k % 2 == 1, -1.0, 1.0)
    if (pole & ~zero).any():
        raise PoleError("Horn term meets a Pochhammer pole")
    with np.errstate(over="ignore", invalid="ignore"):
        out = sign * np.exp(log)
    out[zero] = 0.0
    return out


def _horn_terms(hp: HornParams, x: float, y: float):
    v = hp.values
    which = hp.which

    def term(m: np.ndarray, n: np.ndarray) -> np.ndarray:
        k = int(m[0] + n[0])
        m = m.astype(int)
        n = n.astype(int)
        lf = _log_factorials(m) + _log_factorials(n)
        if which == "G1":
            a, b, bp = v
            ta, tb, tbp = _log_poch(a, 0, k), _log_poch(b, -k, k), _log_poch(bp, -k, k)
            return _combine([ta.at(m + n), tb.at(n - m), tbp.at(m - n)], [], lf, x, y, m, n)
        if which == "H3":
            a, b, c = v
            ta, tb, tc = _log_poch(a, 0, 2 * k), _log_poch(b, 0, k), _log_poch(c, 0, k)
            return _combine([ta.at(2 * m + n), tb.at(n)], [tc.at(m + n)], lf, x, y, m, n)
        a, b, bp, c = v
        ta, tb, tbp, tc = _log_poch(a, -k, 2 * k), _log_poch(b, 0, k), _log_poch(bp, 0, k), _log_poch(c, 0, k)
        return _combine([ta.at(2 * m - n), tb.at(n), tbp.at(n)], [tc.at(m)], lf, x, y, m, n)

    return term


def eval_horn(hp: HornParams, point, opts: EvaluationOptions = DEFAULT_OPTIONS) -> EvaluationResult:
    """Direct anti-diagonal summation of G1, H3 or H7 on ``max(|x|, |y|) <= 0.2``."""
    p = as_point(point).as_float()
    if max(abs(p.x), abs(p.y)) > HORN_BOX:
        raise DomainError(f"{hp.which} is only evaluated for max(|x|, |y|) <= {HORN_BOX}")
    return accumulate(direct_blocks(_horn_terms(hp, p.x, p.y)), opts)


# -- Kampe de Feriet --------------------------------------------------------

@dataclass(frozen=True)
class KdFSpec:
    """Shape F^{p:q}_{r:s}: p coupled and q paired numerator parameters over r and s."""

    coupled_num: tuple[float, ...] = ()
    paired_num: tuple[tuple[float, float], ...] = ()
    coupled_den: tuple[float, ...] = ()
    paired_den: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coupled_num", tuple(float(v) for v in self.coupled_num))
        object.__setattr__(self, "coupled_den", tuple(float(v) for v in self.coupled_den))
        for name in ("paired_num", "paired_den"):
            pairs = tuple((float(u), float(w)) for u, w in getattr(self, name))
            object.__setattr__(self, name, pairs)

    @property
    def shape(self) -> tuple[int, int, int, int]:
        return len(self.coupled_num), len(self.paired_num), len(self.coupled_den), len(self.paired_den)


def _kdf_bounded(spec: KdFSpec) -> tuple[bool, bool]:
    npi = is_nonpositive_integer
    both = any(npi(v) for v in spec.coupled_num)
    return (both or any(npi(u) for u, _ in spec.paired_num),
            both or any(npi(w) for _, w in spec.paired_num))


def kdf_region_ok(spec: KdFSpec, x: float, y: float) -> bool:
    """Convergence heuristic for the double series.

    With p + q < r + s + 1 the series is entire.  With equality the region is
    |x|^(1/(p-r)) + |y|^(1/(p-r)) < 1 when p > r, else max(|x|, |y|) < 1.
    """
    p, q, r, s = spec.shape
    m_bounded, n_bounded = _kdf_bounded(spec)
    if m_bounded and n_bounded:
        return True
    if p + q < r + s + 1:
        return True
    if p + q > r + s + 1:
        return False
    if m_bounded:
        return abs(y) < 1.0
    if n_bounded:
        return abs(x) < 1.0
    if p > r:
        e = 1.0 / (p - r)
        return abs(x) ** e + abs(y) ** e < 1.0
    return max(abs(x), abs(y)) < 1.0


def _kdf_ratios(spec: KdFSpec, x: float, y: float):
    A = np.array(spec.coupled_num)
    C = np.array(spec.coupled_den)
    B = np.array([u for u, _ in spec.paired_num])
    Bp = np.array([w for _, w in spec.paired_num])
    D = np.array([u for u, _ in spec.paired_den])
    Dp = np.array([w for _, w in spec.paired_den])

    def prod(vals: np.ndarray, shift: np.ndarray) -> np.ndarray:
        if vals.size == 0:
            return np.ones_like(shift)
        return np.prod(vals[:, None] + shift[None, :], axis=0)

    def rm(m, n):
        s = m + n
        return prod(A, s) * prod(B, m) * x, prod(C, s) * prod(D, m) * (m + 1)

    def rn(m, n):
        s = m + n
        return prod(A, s) * prod(Bp, n) * y, prod(C, s) * prod(Dp, n) * (n + 1)

    return rm, rn


UNIT_TERMS = 40        # terms per Levin-accelerated sum (fallback path)
UNIT_OUTER = 8192      # outer terms summed before extrapolation
UNIT_SWITCH = 16       # inner sums below this m are extrapolated, above it summed directly
UNIT_INNER_TERMS = 600
UNIT_RICHARDSON = 4    # correction terms in the outer tail model


def _hyper_terms(num: Sequence[float], den: Sequence[float], count: int) -> np.ndarray:
    """Leading terms of sum_n prod (num)_n / (prod (den)_n n!), stopping at a zero term."""
    out = [1.0]
    t = 1.0
    for n in range(count - 1):
        numer = math.prod(v + n for v in num)
        denom = math.prod(v + n for v in den) * (n + 1)
        if numer == 0.0:
            out.append(0.0)
            break
        if denom == 0.0:
            raise PoleError("series denominator vanishes on a nonzero term")
        t *= numer / denom
        out.append(t)
    return np.array(out)


def _unit_parts(spec: KdFSpec):
    A, C = list(spec.coupled_num), list(spec.coupled_den)
    B = [u for u, _ in spec.paired_num]
    Bp = [w for _, w in spec.paired_num]
    D = [u for u, _ in spec.paired_den]
    Dp = [w for _, w in spec.paired_den]
    return A, B, Bp, C, D, Dp


def _kdf_unit_levin(spec: KdFSpec, count: int = UNIT_TERMS) -> EvaluationResult:
    A, B, Bp, C, D, Dp = _unit_parts(spec)
    weights = _hyper_terms(A + B, C + D, count)
    outer = np.zeros(len(weights))
    inner_err = 0.0
    for m, w in enumerate(weights):
        if w == 0.0:
            break
        inner = _hyper_terms([v + m for v in A] + Bp, [v + m for v in C] + Dp, count)
        val, err = accelerated_sum(inner)
        outer[m] = w * val
        inner_err += abs(w) * err
    value, err = accelerated_sum(outer)
    return EvaluationResult(value, count * count, err + inner_err, True, "accelerated")


def _ratio_terms(num: Sequence[float], den: Sequence[float], count: int) -> np.ndarray:
    """Vectorised ``_hyper_terms``; zero after a vanishing numerator."""
    n = np.arange(count - 1, dtype=float)
    r = np.ones(count - 1)
    d = n + 1.0
    for v in num:
        r = r * (v + n)
    for v in den:
        d = d * (v + n)
    hit = np.cumsum(r == 0.0) > 0
    if ((d == 0.0) & ~hit).any():
        raise PoleError("series denominator vanishes on a nonzero term")
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.cumprod(np.where(hit, 0.0, r / d))
    return np.concatenate([[1.0], np.where(hit, 0.0, t)])


def _tail_extrapolate(terms: np.ndarray, sigma: float, order: int = UNIT_RICHARDSON) -> tuple[float, float]:
    """Sum of a series whose terms behave like n^(-sigma-1) (c0 + c1/n + ...).

    Partial sums at N/16, ..., N are fitted to S + sum_k A_k N^(-sigma-k);
    the error estimate compares fits of two consecutive orders.  A series
    with a zero term is finite and summed exactly.
    """
    zero = np.flatnonzero(terms == 0.0)
    if zero.size:
        head = terms[:zero[0]]
        return math.fsum(head), _rounding(head)
    partial = np.cumsum(terms)
    N = len(terms) - 1
    nodes = [N // 2 ** j for j in range(order, -1, -1)]

    def fit(pts, k):
        rows = [[1.0] + [float(q) ** (-sigma - i) for i in range(k)] for q in pts]
        return float(np.linalg.solve(np.array(rows), partial[pts])[0])

    value = fit(nodes, order)
    return value, abs(value - fit(nodes[1:], order - 1)) + _rounding(terms)


def _rounding(terms: np.ndarray) -> float:
    # random-walk bound for accumulated rounding in the terms and their sum
    return float(np.finfo(float).eps * math.sqrt(len(terms)) * np.sum(np.abs(terms)))


def _inner_direct(A, Bp, C, Dp, m: np.ndarray, nterms: int) -> tuple[np.ndarray, np.ndarray]:
    """Direct inner sums for a block of outer indices; returns values and last-term sizes."""
    n = np.arange(nterms - 1)[None, :]
    mm = m[:, None].astype(float)
    r = np.ones((len(m), nterms - 1))
    den = np.ones_like(r)
    for v in A:
        r = r * (v + mm + n)
    for v in Bp:
        r = r * (v + n)
    for v in C:
        den = den * (v + mm + n)
    for v in Dp:
        den = den * (v + n)
    hit = np.cumsum(r == 0.0, axis=1) > 0
    if ((den == 0.0) & ~hit).any():
        raise PoleError("series denominator vanishes on a nonzero term")
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.cumprod(np.where(hit, 0.0, r / (den * (n + 1))), axis=1)
    t[hit] = 0.0
    return 1.0 + t.sum(axis=1), np.abs(t[:, -1])


def eval_kdf_unit(spec: KdFSpec, outer_terms: int = UNIT_OUTER) -> EvaluationResult:
    """The series at (1, 1) as an outer m-sum of inner n-sums.

    Uses (a)_{m+n} = (a)_m (a+m)_n, so the inner sum at fixed m is a
    generalized hypergeometric series at unit argument.  Sequence
    transformations applied to the first few dozen outer terms are
    unreliable here: the inner sums have a 1/m expansion with rapidly
    growing coefficients, so the asymptotic regime only starts at large m.
    Instead both sums are taken to several thousand terms and their tails
    removed by Richardson extrapolation in the known exponents (the
    parametric excesses).  Inner sums for large m converge fast and are
    summed directly.

    Balanced shapes with fewer coupled numerator than denominator
    parameters take this path; anything else falls back to Levin
    acceleration of both sums (strategy ``"accelerated"``).
    """
    A, B, Bp, C, D, Dp = _unit_parts(spec)
    balanced = len(A) + len(B) == len(C) + len(D) + 1 and len(A) + len(Bp) == len(C) + len(Dp) + 1
    if not balanced or len(A) >= len(C):
        return _kdf_unit_levin(spec)
    sigma = sum(C) + sum(D) - sum(A) - sum(B)
    excess = sum(C) + sum(Dp) - sum(A) - sum(Bp)
    if not (sigma > 0 and excess > 0):
        raise DomainError("the unit-argument series needs positive parametric excess in both indices")

    M = outer_terms
    w = _ratio_terms(A + B, C + D, M + 1)
    nonzero = np.flatnonzero(w != 0.0)
    last = int(nonzero[-1])

    inner = np.zeros(M + 1)
    inner_err = np.zeros(M + 1)
    # the inner excess grows by len(C) - len(A) >= 1 per outer step
    step = len(C) - len(A)
    for k in range(min(UNIT_SWITCH, last + 1)):
        terms = _ratio_terms([v + k for v in A] + Bp, [v + k for v in C] + Dp, UNIT_OUTER + 1)
        inner[k], inner_err[k] = _tail_extrapolate(terms, excess + step * k)
    for lo in range(UNIT_SWITCH, last + 1, 1024):
        block = m_block = np.arange(lo, min(lo + 1024, last + 1))
        vals, tail = _inner_direct(A, Bp, C, Dp, m_block, UNIT_INNER_TERMS)
        inner[block] = vals
        inner_err[block] = tail * UNIT_INNER_TERMS / (excess + step * block)
    t = w * inner
    err_inner = float(np.sum(np.abs(w) * inner_err))
    if last < M:
        head = t[:last + 1]
        return EvaluationResult(math.fsum(head), last + 1, err_inner + _rounding(head), True, "direct")
    value, err = _tail_extrapolate(t, sigma)
    return EvaluationResult(value, M + 1, err + err_inner, True, "extrapolated")


def eval_kdf(spec: KdFSpec, point, opts: EvaluationOptions = DEFAULT_OPTIONS) -> EvaluationResult:
    p = as_point(point).as_float()
    if p.x == 1.0 and p.y == 1.0:
        return eval_kdf_unit(spec)
    if not kdf_region_ok(spec, p.x, p.y):
        raise DomainError(f"F^{spec.shape} series is not convergent at ({p.x}, {p.y}) by the region heuristic")
    rm, rn = _kdf_ratios(spec, p.x, p.y)
    return accumulate(ratio_blocks(rm, rn), opts)


def kdf_embedding(family: str, values: Sequence[float]) -> KdFSpec:
    """The KdF spec reproducing an Appell family term by term."""
    if family == "F1":
        a, b, bp, c = values
        return KdFSpec((a,), ((b, bp),), (c,), ())
    if family == "F2":
        a, b, bp, c, cp = values
        return KdFSpec((a,), ((b, bp),), (), ((c, cp),))
    if family == "F3":
        a, ap, b, bp, c = values
        return KdFSpec((), ((a, ap), (b, bp)), (c,), ())
    if family == "F4":
        a, b, c, cp = values
        return KdFSpec((a, b), (), (), ((c, cp),))
    raise ValueError(f"unknown Appell family {family!r}")


# -- unit-argument summations -----------------------------------------------

SUMMATIONS = ("karlsson", "pitre_vdj_1", "pitre_vdj_2")


def summation_spec(fid: str, a: float, b: float, c: float, d: float, e: float) -> KdFSpec:
    """F^{0:3}_{1:1} series at (1, 1) whose sum the named formula gives."""
    third = {"karlsson": -c, "pitre_vdj_1": d - c, "pitre_vdj_2": e - c - 1}
    if fid not in third:
        raise ValueError(f"unknown summation {fid!r}")
    return KdFSpec((), ((a, d - a), (b, d - b), (c, third[fid])), (d,), ((e, d + e - a - b - c),))


def _negative_integer(v: float) -> int | None:
    r = round(v)
    if r < 0 and abs(v - r) <= 1e-12:
        return int(r)
    return None


def summation_constraints(fid: str, a, b, c, d, e) -> dict[str, bool]:
    checks = {"d+e-a-b-c > 0": d + e - a - b - c > 0}
    if fid == "karlsson":
        checks["e > 0"] = e > 0
    elif fid == "pitre_vdj_1":
        checks["e-d > 0"] = e - d > 0
    elif fid == "pitre_vdj_2":
        checks["d-a or d-b a negative integer"] = (
            _negative_integer(d - a) is not None or _negative_integer(d - b) is not None)
    else:
        raise ValueError(f"unknown summation {fid!r}")
    return checks


def kdf_summation(fid: str, a: float, b: float, c: float, d: float, e: float) -> float:
    """Closed-form gamma-bracket value of a unit-argument F^{0:3}_{1:1} summation."""
    failed = [k for k, ok in summation_constraints(fid, a, b, c, d, e).items() if not ok]
    if failed:
        raise ConstraintError(f"{fid} needs " + ", ".join(failed))
    s = d + e - a - b - c
    if fid == "karlsson":
        return gamma_bracket([e, s], [e - c, e + d - a - b])
    if fid == "pitre_vdj_1":
        return gamma_bracket([e, s, e - d], [e - a, e - b, e - c])
    return gamma_bracket([1 - a, 1 - b, e, e - d, s], [1 - d, e - a, e - b, e - c, 1 + d - a - b])


def pitre_vdj_2_finite(a: float, b: float, c: float, d: float, e: float) -> float:
    """Exact evaluation of the pitre_vdj_2 series when d - a = -N (or d - b = -N).

    The n-sum stops at N.  Writing (a)_m / (d)_m = (d+m)_N / (d)_N, each
    term becomes (b)_m (c)_m / ((e)_m m!) times a degree-N polynomial in m;
    in the falling-factorial basis every piece is a Gauss sum
    sum_m (b)_m (c)_m / ((e)_m m!) m^(j) = (b)_j (c)_j / (e)_j 2F1(b+j, c+j; e+j; 1).
    """
    N = _negative_integer(d - a)
    if N is None:
        if _negative_integer(d - b) is None:
            raise ConstraintError("pitre_vdj_2 needs d-a or d-b a negative integer")
        a, b = b, a
        N = _negative_integer(d - a)
    N = -N
    s = d + e - a - b - c
    if not s > 0:
        raise ConstraintError("pitre_vdj_2 needs d+e-a-b-c > 0")
    # inner coefficients of the n-sum, without the (d+m)_n denominator
    coef = [1.0]
    for n in range(N):
        coef.append(coef[-1] * (d - a + n) * (d - b + n) * (e - c - 1 + n) / ((s + n) * (n + 1)))
    dN = math.prod(d + i for i in range(N))

    def poly(m: int) -> float:
        # sum_n coef_n (d+m)_N / (d+m)_n = sum_n coef_n (d+m+n)_{N-n}
        return math.fsum(cn * math.prod(d + m + n + i for i in range(N - n))
                         for n, cn in enumerate(coef)) / dN

    values = [poly(m) for m in range(N + 1)]
    # Newton forward differences give the falling-factorial coefficients
    diffs = []
    row = values
    for _ in range(N + 1):
        diffs.append(row[0])
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    total = []
    for j, dj in enumerate(diffs):
        lead = math.prod((b + i) * (c + i) / (e + i) for i in range(j)) / math.factorial(j)
        gauss = gauss_2f1(b + j, c + j, e + j, 1.0).value
        total.append(dj * lead * gauss)
    return math.fsum(total)


# -- Lauricella -------------------------------------------------------------

LAURICELLA_MAX_N = 8
LAURICELLA_MAX_DEGREE = 4000
LAURICELLA_MAX_BLOCK = 2_000_000

# Which of (a, b, c) are per-variable vectors in each family.
LAURICELLA_VECTORS = {
    "FA": (False, True, True),
    "FB": (True, True, False),
    "FC": (False, False, True),
    "FD": (False, True, False),
}


@dataclass(frozen=True)
class LauricellaParams:
    which: str
    a: float | tuple[float, ...]
    b: float | tuple[float, ...]
    c: float | tuple[float, ...]
    x: tuple[float, ...] = field(default=())

    def __post_init__(self):
        if self.which not in LAURICELLA_VECTORS:
            raise ValueError(f"unknown Lauricella family {self.which!r}")
        x = tuple(float(v) for v in self.x)
        n = len(x)
        if n < 1:
            raise DimensionError("at least one variable is required")
        object.__setattr__(self, "x", x)
        for name, vec in zip("abc", LAURICELLA_VECTORS[self.which]):
            v = getattr(self, name)
            if vec:
                v = tuple(float(t) for t in v)
                if len(v) != n:
                    raise DimensionError(f"{self.which}: {name} needs {n} entries")
            else:
                if isinstance(v, (tuple, list, np.ndarray)):
                    raise ValueError(f"{self.which}: {name} is a scalar")
                v = float(v)
            object.__setattr__(self, name, v)

    @property
    def n(self) -> int:
        return len(self.x)

    def vector(self, name: str) -> np.ndarray:
        v = getattr(self, name)
        return np.array(v) if isinstance(v, tuple) else np.full(self.n, v)


def lauricella_bounded(lp: LauricellaParams) -> np.ndarray:
    npi = np.vectorize(is_nonpositive_integer, otypes=[bool])
    if lp.which == "FA" or lp.which == "FD":
        return np.full(lp.n, is_nonpositive_integer(lp.a)) | npi(lp.vector("b"))
    if lp.which == "FB":
        return npi(lp.vector("a")) | npi(lp.vector("b"))
    return np.full(lp.n, is_nonpositive_integer(lp.a) or is_nonpositive_integer(lp.b))


def lauricella_margin(which: str, x: np.ndarray) -> float:
    ax = np.abs(np.asarray(x, dtype=float))
    if ax.size == 0:
        return math.inf
    if which == "FA":
        return 1.0 - float(ax.sum())
    if which == "FC":
        return 1.0 - float(np.sqrt(ax).sum())
    return 1.0 - float(ax.max())


def _lauricella_blocks(lp: LauricellaParams, max_block: int):
    n = lp.n
    x = np.array(lp.x)
    A, B, Cv = lp.vector("a"), lp.vector("b"), lp.vector("c")
    which = lp.which
    comps = np.zeros((1, n), dtype=np.int64)
    last = np.zeros(1, dtype=np.int64)
    terms = np.ones(1)
    k = 0
    yield 1.0, 1.0, False
    while True:
        s = float(k)
        new_c, new_l, new_t = [], [], []
        for j in range(n):
            sel = last <= j
            if not sel.any():
                continue
            par = comps[sel]
            mj = par[:, j].astype(float)
            if which == "FA":
                num = (A[j] + s) * (B[j] + mj) * x[j]
                den = (Cv[j] + mj) * (mj + 1)
            elif which == "FB":
                num = (A[j] + mj) * (B[j] + mj) * x[j]
                den = (Cv[j] + s) * (mj + 1)
            elif which == "FC":
                num = np.full(len(mj), (A[j] + s) * (B[j] + s) * x[j])
                den = (Cv[j] + mj) * (mj + 1)
            else:
                num = np.full(len(mj), (A[j] + s) * x[j]) * (B[j] + mj)
                den = (Cv[j] + s) * (mj + 1)
            t = _apply_ratio(terms[sel], np.asarray(num, dtype=float), np.asarray(den, dtype=float))
            child = par.copy()
            child[:, j] += 1
            new_c.append(child)
            new_l.append(np.full(len(child), j))
            new_t.append(t)
        k += 1
        if not new_t:
            yield 0.0, 0.0, True
            return
        terms = np.concatenate(new_t)
        keep = terms != 0.0
        comps = np.concatenate(new_c)[keep]
        last = np.concatenate(new_l)[keep]
        terms = terms[keep]
        if len(terms) > max_block:
            raise BudgetExceeded(f"degree-{k} block has {len(terms)} terms, above the block cap")
        if len(terms) == 0:
            yield 0.0, 0.0, True
            return
        yield float(np.sum(terms)), float(np.sum(np.abs(terms))), False


def eval_lauricella(lp: LauricellaParams, opts: EvaluationOptions = DEFAULT_OPTIONS,
                    max_n: int = LAURICELLA_MAX_N, max_degree: int = LAURICELLA_MAX_DEGREE,
                    max_block: int = LAURICELLA_MAX_BLOCK) -> EvaluationResult:
    """Multi-sum by total degree; each composition's term comes from its parent by one ratio.

    A composition of degree k is generated from the composition obtained by
    removing one unit from its last nonzero slot, so each appears exactly once.
    """
    if lp.n > max_n:
        raise DimensionError(f"{lp.n} variables exceed the cap of {max_n}")
    bounded = lauricella_bounded(lp)
    if not bounded.all():
        free = np.array(lp.x)[~bounded]
        if not lauricella_margin(lp.which, free) > 0:
            raise DomainError(f"{lp.which} arguments lie outside the convergence domain")
    capped = EvaluationOptions(tol=opts.tol, max_terms=min(opts.max_terms, max_degree + 1),
                               strategy=opts.strategy, raise_on_budget=opts.raise_on_budget)
    return accumulate(_lauricella_blocks(lp, max_block), capped)


def fd_integral(lp: LauricellaParams, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """F_D from its single Euler integral; needs c > a > 0 and every x_i < 1."""
    if lp.which != "FD":
        raise ValueError("fd_integral needs FD parameters")
    a, c = lp.a, lp.c
    if not (a > CONSTRAINT_MARGIN and c - a > CONSTRAINT_MARGIN):
        raise ParameterError("F_D integral needs c > a > 0")
    x = np.array(lp.x)
    if not np.all(x < 1.0):
        raise DomainError("F_D integral needs u*x_i < 1 on [0, 1]")
    b = lp.vector("b")

    def g(u):
        u = np.asarray(u)
        return np.prod((1.0 - np.multiply.outer(u, x)) ** (-b), axis=-1)

    return gamma_bracket([c], [a, c - a]) * float(beta_integral(g, a, c - a, spec))


def lauricella_appell(lp: LauricellaParams) -> tuple[str, tuple[float, ...], Point2]:
    """The Appell function an n = 2 Lauricella series coincides with."""
    if lp.n != 2:
        raise DimensionError("the Appell correspondence is for two variables")
    x = Point2(*lp.x)
    if lp.which == "FA":
        return "F2", (lp.a, lp.b[0], lp.b[1], lp.c[0], lp.c[1]), x
    if lp.which == "FB":
        return "F3", (lp.a[0], lp.a[1], lp.b[0], lp.b[1], lp.c), x
    if lp.which == "FC":
        return "F4", (lp.a, lp.b, lp.c[0], lp.c[1]), x
    return "F1", (lp.a, lp.b[0], lp.b[1], lp.c), x
