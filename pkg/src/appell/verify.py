"""Seeded identity suites and machine-readable verification reports.

Every identity draws its inputs from a generator seeded by hashing the
suite name, identity id and master seed, so a report depends only on the
configuration.  Identities tagged with a non-default ``reading`` evaluate a
known-faulty variant of a formula; they appear only in strict runs, are
marked ``diagnostic`` and never affect the exit status.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from typing import Callable

import numpy as np

from . import analytic, extended, integrals, recursions, transforms
from .core import gauss_2f1
from .errors import AppellError, DomainError
from .series import SIGNATURES, AppellParams, Point2, eval_appell

REPORT_VERSION = "1.0"
SEED_ENV = "APPELL_SEED"
DEFAULT_SEED = 20240917
PARAM_RANGE = (0.1, 3.0)
ARG_SCALE = 0.8
F4_PREIMAGE = 0.45
# Draws whose inputs fall outside a domain are redrawn this many times.
MAX_REDRAWS = 200

Inputs = dict
Drawer = Callable[[np.random.Generator], Inputs]
Residual = Callable[[Inputs], float]


@dataclass(frozen=True)
class Identity:
    identity_id: str
    suite: str
    tolerance: float
    draw: Drawer
    residual: Residual
    reading: str = "corrected"

    @property
    def diagnostic(self) -> bool:
        return self.reading != "corrected"


@dataclass
class IdentityReport:
    identity_id: str
    suite: str
    draws: int
    tolerance: float
    max_rel_residual: float
    mean_rel_residual: float
    failures: int
    worst_case_inputs: Inputs
    reading: str = "corrected"
    diagnostic: bool = False
    errors: int = 0

    @property
    def passed(self) -> bool:
        return self.failures == 0


@dataclass(frozen=True)
class VerificationRunConfig:
    suites: tuple[str, ...] = ()
    draws_per_identity: int = 10
    seed: int = DEFAULT_SEED
    tolerance_overrides: dict = field(default_factory=dict)
    output_format: str = "json"
    strict_paper: bool = False
    jobs: int = 1

    def __post_init__(self):
        suites = tuple(self.suites) or SUITE_NAMES
        object.__setattr__(self, "suites", suites)
        unknown = [s for s in suites if s not in SUITE_NAMES]
        if unknown:
            raise ValueError(f"unknown suites: {', '.join(unknown)}")
        if self.draws_per_identity < 1:
            raise ValueError("draws_per_identity must be at least 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.output_format not in ("json", "csv"):
            raise ValueError("output_format must be json or csv")
        for s in self.tolerance_overrides:
            if s not in SUITE_NAMES:
                raise ValueError(f"tolerance override for unknown suite {s!r}")


def derive_seed(master: int, suite: str, identity_id: str) -> int:
    digest = hashlib.sha256(f"{suite}\x00{identity_id}\x00{master}".encode()).digest()
    return int.from_bytes(digest[:8], "little")


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    return int(raw) if raw else DEFAULT_SEED


# -- sampling helpers -------------------------------------------------------

def _u(rng, lo=PARAM_RANGE[0], hi=PARAM_RANGE[1]) -> float:
    return float(rng.uniform(lo, hi))


def _params(rng, family: str) -> list[float]:
    return [_u(rng) for _ in SIGNATURES[family]]


def _point(rng, family: str) -> list[float]:
    """Uniform point in the family's convergence box scaled by 0.8.

    F4 points are images (x(1-y), y(1-x)) of pre-images in [0, 0.45]^2.
    """
    while True:
        if family == "F4":
            x, y = _u(rng, 0.0, F4_PREIMAGE), _u(rng, 0.0, F4_PREIMAGE)
            img = transforms.f4_image(x, y)
            return [img.x, img.y]
        x, y = _u(rng, -ARG_SCALE, ARG_SCALE), _u(rng, -ARG_SCALE, ARG_SCALE)
        if family == "F2" and abs(x) + abs(y) > ARG_SCALE:
            continue
        return [x, y]


def _ap(inp: Inputs) -> AppellParams:
    return AppellParams.of(inp["family"], *inp["params"])


def _rel(value: float, reference: float) -> float:
    return abs(value - reference) / max(1.0, abs(reference))


def _away_from_poles(c: float, margin: float = 0.05) -> bool:
    frac = c - math.floor(c)
    return margin <= frac <= 1.0 - margin


def _appell_draw(family: str, check: Callable[[list, list], bool] | None = None) -> Drawer:
    def draw(rng):
        while True:
            params, point = _params(rng, family), _point(rng, family)
            if check is None or check(params, point):
                return {"family": family, "params": params, "point": point}
    return draw


# -- contiguous -------------------------------------------------------------

def _contiguous(rel) -> Residual:
    def residual(inp):
        terms = recursions.contiguous_terms_f1(rel, _ap(inp), inp["point"])
        return abs(math.fsum(terms)) / recursions.contiguous_scale(terms)
    return residual


def _contiguous_suite() -> list[Identity]:
    return [Identity(r.value, "contiguous", 1e-10, _appell_draw("F1"), _contiguous(r))
            for r in recursions.ContiguousRelationId]


# -- recursions -------------------------------------------------------------

SHIFT_COUNTS = (1, 2, 3, 4, 5)


def _recursion(family, par, direction, reading) -> Residual:
    def residual(inp):
        params = _ap(inp)
        worst = 0.0
        for n in SHIFT_COUNTS:
            shift = recursions.ShiftSpec(family, par, direction, n)
            got = recursions.recursion_eval(shift, params, inp["point"], reading=reading).value
            want = eval_appell(shift.target(params), inp["point"]).value
            worst = max(worst, _rel(got, want))
        return worst
    return residual


def _multiterm(case) -> Residual:
    def residual(inp):
        params = _ap(inp)
        worst = 0.0
        for n in range(0, 6):
            got = recursions.multiterm_recursion_eval(case, params, inp["point"], n).value
            want = eval_appell(recursions.multiterm_target(case, params, n), inp["point"]).value
            worst = max(worst, _rel(got, want))
        return worst
    return residual


def _n1_contiguous(par, direction) -> Residual:
    def residual(inp):
        params = _ap(inp)
        shift = recursions.ShiftSpec("F1", par, direction, 1)
        got = recursions.recursion_eval(shift, params, inp["point"]).value
        want = recursions.contiguous_shift_f1(f"{par}-{direction}", params, inp["point"])
        return _rel(got, want)
    return residual


def _c_safe(family: str) -> Callable[[list, list], bool]:
    idx = SIGNATURES[family].index("c")
    return lambda params, point: _away_from_poles(params[idx])


def _recursion_suite() -> list[Identity]:
    out = []
    for family, par, direction in sorted(recursions.PRINTED_SHIFTS):
        key = f"{family}-{par}-{direction}"
        draw = _appell_draw(family, _c_safe(family))
        out.append(Identity(key, "recursions", 1e-8, draw, _recursion(family, par, direction, "corrected")))
        if (family, par, direction) in recursions.DISPUTED_SHIFTS:
            out.append(Identity(f"{key}:printed", "recursions", 1e-8, draw,
                                _recursion(family, par, direction, "printed"), reading="printed"))
        if key == "F2-a-down":
            out.append(Identity(f"{key}:sign-fixed", "recursions", 1e-8, draw,
                                _recursion(family, par, direction, "sign-fixed"), reading="sign-fixed"))
    for case in recursions.MULTITERM_CASES:
        fam = case.split("-")[0]
        out.append(Identity(f"multiterm-{case}", "recursions", 1e-8, _appell_draw(fam, _c_safe(fam)),
                            _multiterm(case)))
    for par, direction in (("a", "up"), ("a", "down"), ("b", "up"), ("b", "down"), ("c", "down")):
        out.append(Identity(f"F1-{par}-{direction}-n1-vs-contiguous", "recursions", 1e-10,
                            _appell_draw("F1", _c_safe("F1")), _n1_contiguous(par, direction)))
    return out


# -- PDE --------------------------------------------------------------------

PDE_STEP = 1e-4


def _pde(family, eq, reading) -> Residual:
    def residual(inp):
        terms = analytic.pde_terms(family, eq, _ap(inp), inp["point"], PDE_STEP, reading)
        return abs(math.fsum(terms)) / analytic.term_scale(terms)
    return residual


def _operator(eq, reading) -> Residual:
    def residual(inp):
        terms = analytic.operator_terms_f1(eq, _ap(inp), inp["point"], reading=reading)
        return abs(math.fsum(terms)) / analytic.term_scale(terms)
    return residual


def _off_axes(params, point) -> bool:
    return min(abs(point[0]), abs(point[1])) >= 0.05


def _pde_suite() -> list[Identity]:
    out = []
    for family in ("F1", "F2", "F3", "F4"):
        for eq in (1, 2):
            draw = _appell_draw(family)
            out.append(Identity(f"{family}-pde-{eq}", "pde", 1e-5, draw, _pde(family, eq, "monge")))
            out.append(Identity(f"{family}-pde-{eq}:printed", "pde", 1e-5, draw,
                                _pde(family, eq, "printed"), reading="printed"))
    draw = _appell_draw("F1", _off_axes)
    for eq in (1, 2):
        out.append(Identity(f"F1-operator-{eq}", "pde", 1e-5, draw, _operator(eq, "monge")))
    out.append(Identity("F1-operator-2:printed", "pde", 1e-5, draw, _operator(2, "printed"),
                        reading="printed"))
    return out


# -- transforms -------------------------------------------------------------

MAPPED_MARGIN = 0.05


def _transform_draw(tid) -> Drawer:
    family = transforms.SOURCE_FAMILY[tid]

    def draw(rng):
        for _ in range(100 * MAX_REDRAWS):
            params, point = _params(rng, family), _point(rng, family)
            try:
                _, new_params, new_point = transforms.transform(tid, AppellParams.of(family, *params), point)
            except DomainError:
                continue
            if transforms.domain_margin(new_params, new_point) >= MAPPED_MARGIN:
                return {"family": family, "params": params, "point": point}
        raise DomainError(f"no admissible draw for {tid.value}")
    return draw


def _transform(tid, reading) -> Residual:
    def residual(inp):
        params = _ap(inp)
        want = eval_appell(params, inp["point"]).value
        pref, new_params, new_point = transforms.transform(tid, params, inp["point"], reading,
                                                           require_inside=False)
        return _rel(pref * eval_appell(new_params, new_point).value, want)
    return residual


def _involution(inp) -> float:
    """Double Pfaff map in exact rational arithmetic; the residual is 0 exactly."""
    exact = AppellParams.of("F1", *[Fraction(v) for v in inp["params"]])
    pt = Point2(Fraction(inp["point"][0]), Fraction(inp["point"][1]))
    _, p1, q1 = transforms.transform("F1-pfaff-x", exact, pt, require_inside=False)
    _, p2, q2 = transforms.transform("F1-pfaff-x", p1, q1, require_inside=False)
    diffs = [abs(u - v) for u, v in zip(p2.values(), exact.values())]
    diffs += [abs(q2.x - pt.x), abs(q2.y - pt.y)]
    return float(max(diffs))


def _transforms_suite() -> list[Identity]:
    out = []
    for tid in transforms.TransformId:
        out.append(Identity(tid.value, "transforms", 1e-10, _transform_draw(tid), _transform(tid, "corrected")))
        if tid is transforms.TransformId.F2_XY:
            out.append(Identity(f"{tid.value}:printed", "transforms", 1e-10, _transform_draw(tid),
                                _transform(tid, "printed"), reading="printed"))
    out.append(Identity("F1-pfaff-x-involution", "transforms", 0.0, _appell_draw("F1"), _involution))
    return out


# -- reductions -------------------------------------------------------------

def _reduction_draw(rid) -> Drawer:
    R = transforms.ReductionId

    def draw(rng):
        u = lambda lo=PARAM_RANGE[0], hi=PARAM_RANGE[1]: _u(rng, lo, hi)  # noqa: E731
        s = ARG_SCALE
        if rid is R.F1_Y_EQ_X:
            x = u(-s, s)
            return {"family": "F1", "params": _params(rng, "F1"), "point": [x, x]}
        if rid is R.F1_C_EQ_B_PLUS_BPRIME:
            a, b, bp = u(), u(), u()
            return {"family": "F1", "params": [a, b, bp, b + bp], "point": _point(rng, "F1")}
        if rid is R.F2_C_EQ_B:
            a, b, bp, cp = u(), u(), u(), u()
            return {"family": "F2", "params": [a, b, bp, b, cp], "point": _point(rng, "F2")}
        if rid is R.F1_Y_EQ_1:
            while True:
                a, b, bp, c = _params(rng, "F1")
                if c - a - bp > 0.1:
                    return {"family": "F1", "params": [a, b, bp, c], "point": [u(-s, s), 1.0]}
        if rid is R.F3_SPECIAL:
            a, b, c = u(), u(), u()
            return {"family": "F3", "params": [a, c - a, b, c - b, c], "point": [u(-s, s), u(-s, 0.5)]}
        if rid is R.F2_CPRIME_EQ_A:
            a, b, bp, c = u(), u(), u(), u()
            return {"family": "F2", "params": [a, b, bp, c, a], "point": _point(rng, "F2")}
        if rid is R.F2_C_CPRIME_EQ_A:
            a, b, bp = u(), u(), u()
            return {"family": "F2", "params": [a, b, bp, a, a], "point": _point(rng, "F2")}
        a, b, c = u(), u(), u()
        pre = [u(0.0, F4_PREIMAGE), u(0.0, F4_PREIMAGE)]
        if rid is R.F4_PRODUCT:
            return {"family": "F4", "params": [a, b, c, 1 + a + b - c], "point": pre}
        if rid is R.F4_TO_F1:
            return {"family": "F4", "params": [a, b, c, b], "point": pre}
        return {"family": "F4", "params": [a, b, a, b], "point": pre}
    return draw


def _reduction(rid) -> Residual:
    def residual(inp):
        red = transforms.reduce(rid, _ap(inp), inp["point"])
        return _rel(red.value, red.direct())
    return residual


def _reductions_suite() -> list[Identity]:
    out = []
    for rid in transforms.ReductionId:
        tol = 1e-10 if rid is transforms.ReductionId.F1_Y_EQ_X else 1e-9
        out.append(Identity(rid.value, "reductions", tol, _reduction_draw(rid), _reduction(rid)))
    return out


# -- integrals --------------------------------------------------------------

def _picard_draw(rng):
    while True:
        a, b, bp, c = _params(rng, "F1")
        if a >= 0.3 and c - a >= 0.3:
            return {"family": "F1", "params": [a, b, bp, c], "point": _point(rng, "F1")}


def _picard(inp) -> float:
    params = _ap(inp)
    return _rel(integrals.f1_single_integral(params, inp["point"]), eval_appell(params, inp["point"]).value)


def _double_draw(family, reading="corrected") -> Drawer:
    def draw(rng):
        while True:
            params = AppellParams.of(family, *_params(rng, family))
            ok = all(v > 1e-3 for _, v in integrals.integral_constraints(family, params))
            if family == "F2" and reading == "printed":
                ok = ok and params.c - params.b_prime > 1e-3
            if not ok:
                continue
            if family == "F4":
                pt = [_u(rng, 0.0, F4_PREIMAGE), _u(rng, 0.0, F4_PREIMAGE)]
            else:
                pt = _point(rng, family)
            return {"family": family, "params": list(params.values()), "point": pt}
    return draw


def _double(family, reading) -> Residual:
    def residual(inp):
        params = _ap(inp)
        got = integrals.appell_double_integral(family, params, inp["point"], reading=reading)
        want = eval_appell(params, integrals.double_integral_point(family, inp["point"])).value
        return _rel(got, want)
    return residual


def _elliptic_draw(kind) -> Drawer:
    def draw(rng):
        if kind == "Pi":
            return {"kind": kind, "n": _u(rng, -ARG_SCALE, ARG_SCALE), "k": _u(rng, 0.0, 0.9)}
        return {"kind": kind, "phi": _u(rng, 0.1, 1.4), "k": _u(rng, 0.0, 0.9)}
    return draw


def _elliptic(inp) -> float:
    args = integrals.EllipticArgs(phi=inp.get("phi", math.pi / 2), k=inp["k"], n=inp.get("n", 0.0))
    quad, series = integrals.elliptic(inp["kind"], args)
    return abs(quad - series)


def _integrals_suite() -> list[Identity]:
    out = [Identity("F1-single-integral", "integrals", 1e-8, _picard_draw, _picard)]
    for family in ("F1", "F2", "F3", "F4"):
        out.append(Identity(f"{family}-double-integral", "integrals", 1e-7, _double_draw(family),
                            _double(family, "corrected")))
        if family == "F2":
            out.append(Identity("F2-double-integral:printed", "integrals", 1e-7,
                                _double_draw(family, "printed"), _double(family, "printed"),
                                reading="printed"))
    for kind in ("F", "E", "Pi"):
        out.append(Identity(f"elliptic-{kind}", "integrals", 1e-8, _elliptic_draw(kind), _elliptic))
    return out


# -- Burchnall-Chaundy ------------------------------------------------------

def _bc_draw(product: bool) -> Drawer:
    def draw(rng):
        while True:
            a, b, c, cp = _params(rng, "F4")
            if product:
                cp = 1 + a + b - c
                if cp < PARAM_RANGE[0]:
                    continue
            pre = [_u(rng, 0.0, F4_PREIMAGE), _u(rng, 0.0, F4_PREIMAGE)]
            return {"family": "F4", "params": [a, b, c, cp], "point": pre}
    return draw


def _bc(inp) -> float:
    a, b, c, cp = inp["params"]
    x, y = inp["point"]
    got = transforms.burchnall_chaundy(a, b, c, cp, x, y).value
    want = eval_appell(_ap(inp), transforms.f4_image(x, y)).value
    return _rel(got, want)


def _bc_suite() -> list[Identity]:
    return [
        Identity("F4-expansion", "burchnall-chaundy", 1e-8, _bc_draw(False), _bc),
        Identity("F4-product-case", "burchnall-chaundy", 1e-10, _bc_draw(True), _bc),
    ]


# -- Kampe de Feriet --------------------------------------------------------

SUMMATION_MARGIN = 0.5


def _summation_draw(fid) -> Drawer:
    def draw(rng):
        while True:
            a, b, c, d, e = (_u(rng) for _ in range(5))
            if fid == "pitre_vdj_2":
                d = a - int(rng.integers(1, 3))
            s = d + e - a - b - c
            if s < SUMMATION_MARGIN:
                continue
            if fid == "karlsson" and e < SUMMATION_MARGIN:
                continue
            if fid == "pitre_vdj_1" and e - d < SUMMATION_MARGIN:
                continue
            return {"fid": fid, "args": [a, b, c, d, e]}
    return draw


def _summation(inp) -> float:
    args = inp["args"]
    closed = extended.kdf_summation(inp["fid"], *args)
    if inp["fid"] == "pitre_vdj_2":
        got = extended.pitre_vdj_2_finite(*args)
    else:
        got = extended.eval_kdf(extended.summation_spec(inp["fid"], *args), (1.0, 1.0)).value
    return _rel(got, closed)


def _embedding(family) -> Residual:
    def residual(inp):
        spec = extended.kdf_embedding(family, inp["params"])
        return _rel(extended.eval_kdf(spec, inp["point"]).value, eval_appell(_ap(inp), inp["point"]).value)
    return residual


def _kdf_suite() -> list[Identity]:
    out = [Identity(f"{fid}-unit-sum", "kdf-summations", 1e-6 if fid != "pitre_vdj_2" else 1e-10,
                    _summation_draw(fid), _summation) for fid in extended.SUMMATIONS]
    for family in ("F1", "F2", "F3", "F4"):
        out.append(Identity(f"KdF-embeds-{family}", "kdf-summations", 1e-11, _appell_draw(family),
                            _embedding(family)))
    return out


# -- Horn -------------------------------------------------------------------

def _horn_slice_draw(rng):
    return {"params": [_u(rng) for _ in range(3)], "t": _u(rng, -extended.HORN_BOX, extended.HORN_BOX)}


def _h3_slice(axis) -> Residual:
    def residual(inp):
        a, b, c = inp["params"]
        t = inp["t"]
        hp = extended.HornParams("H3", (a, b, c))
        if axis == "m0":
            got = extended.eval_horn(hp, (0.0, t)).value
            want = gauss_2f1(a, b, c, t).value
        else:
            got = extended.eval_horn(hp, (t, 0.0)).value
            want = gauss_2f1(a / 2, (a + 1) / 2, c, 4 * t).value
        return _rel(got, want)
    return residual


def _horn_suite() -> list[Identity]:
    return [Identity(f"H3-{axis}-slice", "horn", 1e-11, _horn_slice_draw, _h3_slice(axis))
            for axis in ("m0", "n0")]


# -- Lauricella -------------------------------------------------------------

def _lauricella_point(rng, which: str, n: int) -> list[float]:
    while True:
        x = [_u(rng, -ARG_SCALE, ARG_SCALE) for _ in range(n)]
        if extended.lauricella_margin(which, np.array(x)) >= 1.0 - ARG_SCALE:
            return x


def _lauricella_draw(which: str, n: int) -> Drawer:
    vec = extended.LAURICELLA_VECTORS[which]

    def draw(rng):
        vals = [[_u(rng) for _ in range(n)] if v else _u(rng) for v in vec]
        return {"which": which, "a": vals[0], "b": vals[1], "c": vals[2], "x": _lauricella_point(rng, which, n)}
    return draw


def _lp(inp) -> extended.LauricellaParams:
    conv = lambda v: tuple(v) if isinstance(v, list) else v  # noqa: E731
    return extended.LauricellaParams(inp["which"], conv(inp["a"]), conv(inp["b"]), conv(inp["c"]), tuple(inp["x"]))


def _degeneration(inp) -> float:
    lp = _lp(inp)
    family, values, point = extended.lauricella_appell(lp)
    return _rel(extended.eval_lauricella(lp).value, eval_appell(AppellParams.of(family, *values), point).value)


def _fd_equal_draw(rng):
    x = _u(rng, -ARG_SCALE, ARG_SCALE)
    return {"which": "FD", "a": _u(rng), "b": [_u(rng) for _ in range(3)], "c": _u(rng), "x": [x, x, x]}


def _fd_equal(inp) -> float:
    lp = _lp(inp)
    return _rel(extended.eval_lauricella(lp).value, gauss_2f1(lp.a, sum(lp.b), lp.c, lp.x[0]).value)


def _fd_integral_draw(rng):
    while True:
        inp = _lauricella_draw("FD", 3)(rng)
        if inp["a"] >= 0.3 and inp["c"] - inp["a"] >= 0.3:
            return inp


def _fd_integral(inp) -> float:
    lp = _lp(inp)
    return _rel(extended.fd_integral(lp), extended.eval_lauricella(lp).value)


def _lauricella_suite() -> list[Identity]:
    out = [Identity(f"{w}-n2-degeneration", "lauricella-degenerations", 1e-12, _lauricella_draw(w, 2),
                    _degeneration) for w in ("FA", "FB", "FC", "FD")]
    out.append(Identity("FD-equal-arguments", "lauricella-degenerations", 1e-10, _fd_equal_draw, _fd_equal))
    out.append(Identity("FD-single-integral", "lauricella-degenerations", 1e-8, _fd_integral_draw, _fd_integral))
    return out


_BUILDERS = {
    "contiguous": _contiguous_suite,
    "recursions": _recursion_suite,
    "pde": _pde_suite,
    "transforms": _transforms_suite,
    "reductions": _reductions_suite,
    "integrals": _integrals_suite,
    "burchnall-chaundy": _bc_suite,
    "kdf-summations": _kdf_suite,
    "lauricella-degenerations": _lauricella_suite,
    "horn": _horn_suite,
}
SUITE_NAMES = tuple(_BUILDERS)


def suite_identities(suite: str, strict_paper: bool = False) -> list[Identity]:
    ids = _BUILDERS[suite]()
    return [i for i in ids if strict_paper or not i.diagnostic]


def _jsonable(v):
    if isinstance(v, dict):
        return {k: _jsonable(w) for k, w in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(w) for w in v]
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    return v


def run_identity(identity: Identity, draws: int, master_seed: int,
                 tolerance: float | None = None) -> IdentityReport:
    tol = identity.tolerance if tolerance is None else tolerance
    rng = np.random.default_rng(derive_seed(master_seed, identity.suite, identity.identity_id))
    residuals = []
    worst_inputs: Inputs = {}
    worst = -1.0
    errors = 0
    for _ in range(draws):
        for attempt in range(MAX_REDRAWS):
            inputs = _jsonable(identity.draw(rng))
            try:
                r = float(identity.residual(inputs))
            except DomainError:
                if attempt + 1 < MAX_REDRAWS:
                    continue
                r = math.inf
                errors += 1
            except (AppellError, ArithmeticError, ValueError):
                r = math.inf
                errors += 1
            break
        if not math.isfinite(r):
            r = math.inf
        residuals.append(r)
        if r > worst:
            worst, worst_inputs = r, inputs
    failures = sum(1 for r in residuals if not r <= tol)
    finite = [r for r in residuals if math.isfinite(r)]
    return IdentityReport(
        identity_id=identity.identity_id,
        suite=identity.suite,
        draws=draws,
        tolerance=tol,
        max_rel_residual=max(residuals),
        mean_rel_residual=math.fsum(finite) / len(finite) if finite else math.inf,
        failures=failures,
        worst_case_inputs=worst_inputs,
        reading=identity.reading,
        diagnostic=identity.diagnostic,
        errors=errors,
    )


def _task(args) -> IdentityReport:
    suite, identity_id, strict, draws, seed, tol = args
    ident = next(i for i in suite_identities(suite, strict) if i.identity_id == identity_id)
    return run_identity(ident, draws, seed, tol)


def run_verification(config: VerificationRunConfig) -> list[IdentityReport]:
    tasks = []
    for suite in config.suites:
        tol = config.tolerance_overrides.get(suite)
        for ident in suite_identities(suite, config.strict_paper):
            tasks.append((suite, ident.identity_id, config.strict_paper, config.draws_per_identity,
                          config.seed, tol))
    if config.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            return list(pool.map(_task, tasks))
    return [_task(t) for t in tasks]


def exit_status(reports: list[IdentityReport]) -> int:
    return 0 if all(r.passed for r in reports if not r.diagnostic) else 1


def build_report(config: VerificationRunConfig, reports: list[IdentityReport],
                 timestamp: str | None = None) -> dict:
    return {
        "version": REPORT_VERSION,
        "seed": config.seed,
        "timestamp": timestamp or datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "draws_per_identity": config.draws_per_identity,
        "strict_paper": config.strict_paper,
        "suites": [asdict(r) for r in reports],
    }


CSV_FIELDS = ("suite", "identity_id", "reading", "diagnostic", "draws", "tolerance", "max_rel_residual",
              "mean_rel_residual", "failures", "errors", "worst_case_inputs")


def render_report(report: dict, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=False) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("# version", report["version"], "seed", report["seed"], "timestamp", report["timestamp"]))
    writer.writerow(CSV_FIELDS)
    for row in report["suites"]:
        writer.writerow([json.dumps(row[k]) if k == "worst_case_inputs" else repr(row[k]) if
                         isinstance(row[k], float) else row[k] for k in CSV_FIELDS])
    return buf.getvalue()


def strip_timestamp(text: str, fmt: str = "json") -> str:
    """Report text with the timestamp removed, for determinism comparisons."""
    if fmt == "json":
        data = json.loads(text)
        data.pop("timestamp", None)
        return json.dumps(data, sort_keys=True)
    lines = text.splitlines()
    head = next(csv.reader([lines[0]]))
    if "timestamp" in head:
        i = head.index("timestamp")
        head = head[:i] + head[i + 2:]
    return "\n".join([",".join(head)] + lines[1:])
