"""Levin u-transform for slowly (logarithmically) convergent series."""

from __future__ import annotations

import math

import numpy as np
from scipy.special import comb

# Highest transformation order tried; beyond ~30 the alternating binomial
# weights cancel catastrophically in binary64.
MAX_ORDER = 36


def levin_u(partial_sums: np.ndarray, terms: np.ndarray, beta: float = 1.0) -> np.ndarray:
    """Levin u estimates ``L_k`` for k = 1 .. len-1, all anchored at the first partial sum.

    Remainder estimates are ``(beta + j) * terms[j]``; every term must be nonzero.
    """
    s = np.asarray(partial_sums, dtype=float)
    a = np.asarray(terms, dtype=float)
    out = np.empty(len(s) - 1)
    for k in range(1, len(s)):
        j = np.arange(k + 1)
        w = (beta + j) * a[:k + 1]
        c = (-1.0) ** j * comb(k, j) * ((beta + j) / (beta + k)) ** (k - 1)
        out[k - 1] = np.sum(c * s[:k + 1] / w) / np.sum(c / w)
    return out


def accelerated_sum(terms, tol: float = 1e-15) -> tuple[float, float]:
    """Sum a series from its leading terms, returning ``(value, error_estimate)``.

    A finite series (a zero term) is summed exactly and a series whose raw
    tail is already negligible is summed directly.  Otherwise the Levin u
    estimate whose difference from its predecessor is smallest is returned;
    if the transformation breaks down the raw partial sum is returned with
    ``N * |last term|``, a tail bound for terms decaying like 1/n^(1+s),
    as the error estimate.
    """
    a = np.asarray(terms, dtype=float)
    zero = np.flatnonzero(a == 0.0)
    if zero.size:
        return math.fsum(a[:zero[0]]), 0.0
    s = np.cumsum(a)
    total = float(s[-1])
    tail = len(a) * abs(float(a[-1]))
    if np.all(np.abs(a[-3:]) <= tol * max(1.0, abs(total))):
        return math.fsum(a), float(np.max(np.abs(a[-3:])))
    n = min(len(a), MAX_ORDER + 1)
    with np.errstate(all="ignore"):
        est = levin_u(s[:n], a[:n])
    diffs = np.abs(np.diff(est))
    ok = np.isfinite(diffs)
    ok[:2] = False
    if not ok.any():
        return total, tail
    k = int(np.argmin(np.where(ok, diffs, np.inf)))
    value, err = float(est[k + 1]), float(diffs[k])
    if not math.isfinite(value) or err > tail:
        return total, tail
    return value, err
