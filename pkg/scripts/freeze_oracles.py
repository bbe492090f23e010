"""Freeze high-precision reference values used by the test suite.

Every value is computed with mpmath at 40 significant digits, independently
of the package (mpmath's own Appell/elliptic routines, explicit double sums,
tanh-sinh quadrature).  Run from the repository root:

    python3 scripts/freeze_oracles.py
"""

from __future__ import annotations

import itertools
import json
from pathlib import Path

import mpmath as mp

mp.mp.dps = 40
OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "oracles.json"


def double_sum(term, N=120):
    return mp.fsum(term(m, n) for m in range(N) for n in range(N))


def rf(a, k):
    return mp.rf(a, k)


def horn(which, v, x, y):
    x, y = mp.mpf(x), mp.mpf(y)
    if which == "G1":
        a, b, bp = v
        t = lambda m, n: rf(a, m + n) * rf(b, n - m) * rf(bp, m - n) * x**m * y**n / (mp.factorial(m) * mp.factorial(n))
    elif which == "H3":
        a, b, c = v
        t = lambda m, n: rf(a, 2 * m + n) * rf(b, n) / rf(c, m + n) * x**m * y**n / (mp.factorial(m) * mp.factorial(n))
    else:
        a, b, bp, c = v
        t = lambda m, n: rf(a, 2 * m - n) * rf(b, n) * rf(bp, n) / rf(c, m) * x**m * y**n / (mp.factorial(m) * mp.factorial(n))
    return double_sum(t, 90)


def fd_quad(a, b, c, x):
    f = lambda t: t ** (a - 1) * (1 - t) ** (c - a - 1) * mp.fprod((1 - xi * t) ** (-bi) for bi, xi in zip(b, x))
    return mp.gamma(c) / (mp.gamma(a) * mp.gamma(c - a)) * mp.quad(f, [0, 0.5, 1])


def f(v):
    return float(v)


def f32_unit(A, B, C, D, E, tol=mp.mpf(10) ** -30):
    """3F2(A, B, C; D, E; 1) after the Thomae transform with the largest new excess."""
    for v in (A, B, C):
        if v <= 0 and v == int(v):
            return mp.hyper([A, B, C], [D, E], 1)
    best = None
    for a, b, c in itertools.permutations((A, B, C)):
        for d, e in ((D, E), (E, D)):
            if best is None or d - a > best[0]:
                best = (d - a, a, b, c, d, e)
    _, a, b, c, d, e = best
    S = d + e - a - b - c
    pref = mp.gamma(d) * mp.gamma(S) / (mp.gamma(d - a) * mp.gamma(S + a))
    A2, B2, C2, D2, E2 = a, e - b, e - c, e, S + a
    t = total = mp.mpf(1)
    n = 0
    while True:
        t *= (A2 + n) * (B2 + n) * (C2 + n) / ((D2 + n) * (E2 + n) * (n + 1))
        total += t
        n += 1
        if t == 0 or (n > 10 and abs(t) < tol * abs(total)):
            break
    # remaining tail of a series with terms ~ n^(-excess-1)
    return pref * (total + t * n / (D2 + E2 - A2 - B2 - C2))


def unit_series(third, a, b, c, d, e, M=600):
    """F^{0:3}_{1:1} at (1, 1) as an outer sum of Thomae-summed inner 3F2.

    Parameters are chosen with a large outer excess so the m-sum truncated at M
    is accurate to double precision without any acceleration.
    """
    s = d + e - a - b - c
    w = mp.mpf(1)
    total = mp.mpf(0)
    for m in range(M):
        if w == 0:
            break
        if third == 0:
            inner = mp.mpf(1)
        else:
            inner = f32_unit(d - a, d - b, third, d + m, s)
        total += w * inner
        w *= (a + m) * (b + m) * (c + m) / ((d + m) * (e + m) * (m + 1))
    return total


def main():
    o = {}
    o["gamma_bracket_1.2_1.1_0.7_1.6"] = f(mp.gamma(1.2) * mp.gamma(1.1) / (mp.gamma(0.7) * mp.gamma(1.6)))
    o["hyp2f1"] = [
        [a, b, c, x, f(mp.hyp2f1(a, b, c, x))]
        for a, b, c, x in [(1, 1, 2, 0.5), (0.5, 0.5, 2, 1.0), (1.5, 0.7, 2.3, -0.8), (-3, 0.7, 2.3, 0.9),
                           (0.3, 0.4, 1.9, 0.95), (2.5, -1.5, 0.7, 0.6), (0.8, 1.3, -2.5, 0.3)]
    ]
    appell = [
        ("F1", (1.1, 0.6, 0.8, 2.0), (0.3, 0.4)),
        ("F1", (1.1, 0.6, 0.8, 2.0), (0.9, -0.9)),
        ("F1", (2.2, 1.4, 0.9, 0.35), (-0.6, 0.7)),
        ("F2", (1.1, 0.5, 0.7, 1.9, 2.3), (0.2, 0.3)),
        ("F2", (1.1, 3.5, 0.7, 1.9, 2.3), (0.2, 0.3)),
        ("F2", (0.8, 1.7, 0.4, 0.6, 2.9), (-0.35, 0.4)),
        ("F3", (0.9, 1.2, 0.5, 0.6, 2.8), (0.3, 0.2)),
        # strongly cancelling: c far below zero at negative arguments
        ("F3", (1.6623232058515416, 2.7536178379916785, 0.21675900504148235, 2.585151685312371,
                1.4378688661139505 - 5), (-0.7926251828360602, -0.7796772253452375)),
        ("F4", (1.2, 0.7, 1.2, 0.7), (0.14, 0.24)),
        ("F4", (1.3, 0.8, 0.5, 1.7), (0.05, 0.08)),
        ("F4", (1.3, 0.8, 1.9, 1.6), (0.15, 0.2)),
    ]
    funcs = {"F1": mp.appellf1, "F2": mp.appellf2, "F3": mp.appellf3, "F4": mp.appellf4}
    o["appell"] = [[fam, list(p), list(pt), f(funcs[fam](*p, *pt))] for fam, p, pt in appell]
    a, b, bp, c = 0.4, 0.5, 0.3, 2.0
    x = 0.3
    o["f1_y_eq_1"] = [[a, b, bp, c], x, f(mp.gamma(c) * mp.gamma(c - a - bp) / (mp.gamma(c - a) * mp.gamma(c - bp))
                                          * mp.hyp2f1(a, b, c - bp, x))]
    o["horn"] = [
        ["G1", [0.9, 0.4, 0.6], [0.1, 0.15], f(horn("G1", (0.9, 0.4, 0.6), 0.1, 0.15))],
        ["H3", [1.0, 0.5, 2.0], [0.1, 0.1], f(horn("H3", (1.0, 0.5, 2.0), 0.1, 0.1))],
        ["H7", [0.7, 1.3, 0.4, 1.8], [0.12, 0.05], f(horn("H7", (0.7, 1.3, 0.4, 1.8), 0.12, 0.05))],
    ]
    o["elliptic"] = {
        "F_0.7_0.6": f(mp.ellipf(0.7, 0.36)),
        "E_0.7_0.6": f(mp.ellipe(0.7, 0.36)),
        "Pi_0.3_0.6": f(mp.ellippi(0.3, 0.36)),
        "Pi_-0.8_0.9": f(mp.ellippi(-0.8, 0.81)),
    }
    o["fd"] = [[1.1, [0.4, 0.5, 0.6], 2.2, [0.2, 0.25, 0.3], f(fd_quad(1.1, (0.4, 0.5, 0.6), 2.2, (0.2, 0.25, 0.3)))]]
    a, b, c, d, e = 0.3, 0.4, 0.5, 1.1, 1.2
    s = d + e - a - b - c
    o["karlsson"] = [[a, b, c, d, e], f(mp.gamma(e) * mp.gamma(s) / (mp.gamma(e - c) * mp.gamma(e + d - a - b)))]
    o["unit_series"] = []
    for fid, args in [("karlsson", (0.3, 0.4, 0.5, 2.5, 4.0)), ("pitre_vdj_1", (0.3, 0.4, 0.5, 1.5, 5.0)),
                      ("pitre_vdj_2", (1.7, 0.4, 0.5, 0.7, 8.0))]:
        a, b, c, d, e = (mp.mpf(v) for v in args)
        third = {"karlsson": -c, "pitre_vdj_1": d - c, "pitre_vdj_2": e - c - 1}[fid]
        o["unit_series"].append([fid, list(args), f(unit_series(third, a, b, c, d, e))])
    OUT.write_text(json.dumps(o) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
