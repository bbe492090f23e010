"""Anti-diagonal accumulation of double (and multiple) hypergeometric series.

A block generator yields, for k = 0, 1, 2, ..., the terms whose index total
is k.  :func:`accumulate` applies the stopping rule: three consecutive blocks
whose absolute mass is below ``tol * max(1, |partial|)`` and a geometric tail
estimate ``|block| / (1 - rho)`` under the same bound, where ``rho`` is the
last observed block ratio clamped to ``[0, 0.99]``.
"""

from __future__ import annotations

import math
from typing import Callable, Iterator

import numpy as np

from .core import EvaluationOptions, EvaluationResult
from .errors import BudgetExceeded, PoleError

RatioFn = Callable[[np.ndarray, np.ndarray], tuple[np.ndarray, np.ndarray]]

# (block sum, block absolute mass, exhausted-after-this-block)
Block = tuple[float, float, bool]

_RHO_MAX = 0.99

# Terms and running sums are carried in extended precision where the
# platform has it (x87 80-bit on x86-64); ill-conditioned alternating sums
# lose correspondingly fewer digits.  Elsewhere this is plain binary64.
WIDE = np.longdouble
_SMALL_BLOCKS = 3


def accumulate(blocks: Iterator[Block], opts: EvaluationOptions,
               strategy: str = "direct") -> EvaluationResult:
    tol = opts.tol
    total = WIDE(0.0)
    comp = WIDE(0.0)
    prev_mass = None
    rho = 0.0
    small = 0
    mass = 0.0
    used = 0
    for k, (bsum, bmass, exhausted) in enumerate(blocks):
        if k >= opts.max_terms:
            break
        if exhausted and bmass == 0.0 and k > 0:
            return EvaluationResult(float(total + comp), used, 0.0, True, strategy)
        used = k + 1
        t = total + bsum
        if abs(total) >= abs(bsum):
            comp += (total - t) + bsum
        else:
            comp += (bsum - t) + total
        total = t
        mass = bmass
        if exhausted:
            return EvaluationResult(float(total + comp), used, 0.0, True, strategy)
        if prev_mass is not None and prev_mass > 0.0:
            rho = min(max(bmass / prev_mass, 0.0), _RHO_MAX)
        prev_mass = bmass
        scale = max(1.0, abs(float(total + comp)))
        small = small + 1 if bmass <= tol * scale else 0
        if small >= _SMALL_BLOCKS:
            est = bmass / (1.0 - rho)
            if est <= tol * scale:
                return EvaluationResult(float(total + comp), used, est, True, strategy)
    est = mass / (1.0 - rho) if rho < 1.0 else math.inf
    res = EvaluationResult(float(total + comp), used, est, False, strategy)
    if opts.raise_on_budget:
        raise BudgetExceeded("series exceeded its index budget", res)
    return res


def _apply_ratio(terms: np.ndarray, num: np.ndarray, den: np.ndarray) -> np.ndarray:
    """Multiply ``terms`` by ``num/den``.

    A vanishing numerator terminates the series before any coincident
    denominator pole is examined; a pole met by a nonzero term is an error.
    """
    pole = den == 0.0
    if pole.any():
        live = pole & (num != 0.0) & (terms != 0.0)
        if live.any():
            raise PoleError("series denominator vanishes on a nonzero term")
        den = np.where(pole, 1.0, den)
        num = np.where(pole, 0.0, num)
    return terms * (num / den)


def ratio_blocks(ratio_m: RatioFn, ratio_n: RatioFn) -> Iterator[Block]:
    """Blocks of a double series given its two term ratios.

    ``ratio_m(m, n)`` returns ``(num, den)`` with ``T(m+1, n) = T(m, n) * num / den``
    and similarly for ``ratio_n``.  Each new block is built from the previous
    one with one ratio update per term; the first row seeds the ``m = k``
    entry.  Zero terms stay zero, which is exact for Pochhammer factors with
    nonnegative shifts.
    """
    cur = np.ones(1, dtype=WIDE)
    k = 0
    yield WIDE(1.0), 1.0, False
    while True:
        m = np.arange(k + 1, dtype=WIDE)
        n = k - m
        num, den = ratio_n(m, n)
        nxt = np.empty(k + 2, dtype=WIDE)
        nxt[:k + 1] = _apply_ratio(cur, num, den)
        num, den = ratio_m(m[-1:], n[-1:])
        nxt[k + 1:] = _apply_ratio(cur[-1:], num, den)
        cur = nxt
        k += 1
        if not cur.any():
            yield 0.0, 0.0, True
            return
        yield np.sum(cur), float(np.sum(np.abs(cur))), False


def direct_blocks(term_fn: Callable[[np.ndarray, np.ndarray], np.ndarray]) -> Iterator[Block]:
    """Blocks computed from an explicit term formula ``term_fn(m, n)``."""
    k = 0
    while True:
        m = np.arange(k + 1)
        terms = term_fn(m, k - m)
        yield float(np.sum(terms)), float(np.sum(np.abs(terms))), False
        k += 1
