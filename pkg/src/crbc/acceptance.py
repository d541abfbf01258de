"""Acceptance criteria, runnable from pytest or ``crbc verify``.

Every criterion is a zero-argument function returning ``(passed, detail)``.
Random draws use fixed seeds so a run is reproducible.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np

from crbc import dmc as d
from crbc import gaussian as g
from crbc.frontier import SweepConfig, trace_family

#: Channel used by the text-stated anchors.
ANCHOR = {"P": 8.0, "a": 100.0, "N1": 1.0, "N2": 2.0}
#: Channel of the jamming-threshold check (user 1 weaker).
WEAK_RELAY = {"P": 8.0, "N1": 2.0, "N2": 1.0}

REL = 1e-12
DOMINANCE = 1e-9


@dataclass(frozen=True)
class Criterion:
    number: int
    name: str
    tags: tuple[str, ...]
    check: Callable[[], tuple[bool, str]]


@dataclass(frozen=True)
class Result:
    criterion: Criterion
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.criterion.number:2d}. {self.criterion.name}: {self.detail} ({self.seconds:.3f}s)"


def _per_call_seconds(fn: Callable[[], object], repeat: int = 200) -> float:
    fn()
    best = math.inf
    for _ in range(5):
        t0 = time.perf_counter()
        for _ in range(repeat):
            fn()
        best = min(best, (time.perf_counter() - t0) / repeat)
    return best


def _close(x: float, y: float) -> bool:
    return math.isclose(x, y, rel_tol=REL, abs_tol=REL)


def _anchor_params() -> g.GaussianCrbcParams:
    return g.GaussianCrbcParams(**ANCHOR)


# --------------------------------------------------------------------------


def wiretap_anchor() -> tuple[bool, str]:
    P, N1, N2 = ANCHOR["P"], ANCHOR["N1"], ANCHOR["N2"]
    v = g.wiretap_secrecy(P, N1, N2)
    t = _per_call_seconds(lambda: g.wiretap_secrecy(P, N1, N2))
    ok = abs(v - 0.424) <= 0.005 and t < 1e-3
    return ok, f"{v:.6f} bits (target 0.424 +- 0.005), {t * 1e6:.1f} us/call"


def pure_relay_anchor() -> tuple[bool, str]:
    p = _anchor_params()
    v = g.prop1_rates(0.0, None, p)
    t = _per_call_seconds(lambda: g.prop1_rates(0.0, None, p))
    ok = v.feasible and abs(v.re2 - 0.251) <= 0.005 and v.re1 == 0 and t < 1e-3
    return ok, f"re2 = {v.re2:.6f} bits (target 0.251 +- 0.005), {t * 1e6:.1f} us/call"


def full_jamming_anchor() -> tuple[bool, str]:
    p = _anchor_params()
    v = g.prop3_rates(1.0, 0.0, None, p)
    t = _per_call_seconds(lambda: g.prop3_rates(1.0, 0.0, None, p))
    ok = abs(v.re1 - 1.578) <= 0.01 and t < 1e-3
    return ok, f"re1 = {v.re1:.6f} bits (target 1.578 +- 0.01), {t * 1e6:.1f} us/call"


def limit_identity() -> tuple[bool, str]:
    rng = np.random.default_rng(4)
    worst = 0.0
    for P, N1, N2 in 10 ** rng.uniform(-2, 2, size=(100, 3)):
        c = g.corollary1_limit(P, N1, N2)
        s = g.gaussian_sato_bound(P, N1, N2)
        worst = max(worst, abs(c - s) / max(abs(c), 1e-300))
    v = g.corollary1_limit(ANCHOR["P"], ANCHOR["N1"], ANCHOR["N2"])
    ok = worst <= REL and abs(v - 0.26526) <= 1e-4
    return ok, f"max rel diff {worst:.2e} over 100 draws; limit(8,1,2) = {v:.6f}"


def convergence() -> tuple[bool, str]:
    P, N1, N2 = ANCHOR["P"], ANCHOR["N1"], ANCHOR["N2"]
    lim = g.corollary1_limit(P, N1, N2)
    alpha = np.linspace(0, 1, 101)
    best = []
    for a in (10.0, 1e2, 1e4, 1e6):
        nc = g.prop1_min_nc_arrays(alpha, P, a, N1, N2)
        best.append(float(np.max(g.prop1_arrays(alpha, nc, P, a, N1, N2)[1])))
    gap = lim - best[-1]
    mono = all(x <= y for x, y in zip(best, best[1:]))
    ok = 0 <= gap <= 0.002 and mono and all(b <= lim for b in best)
    return ok, f"max re2 at a=1e6 is {best[-1]:.6f}, limit {lim:.6f}, gap {gap:.2e}; nondecreasing in a: {mono}"


def _random_gaussian(rng: np.random.Generator) -> g.GaussianCrbcParams:
    P, N1, N2 = 10 ** rng.uniform(-1, 1.5, size=3)
    return g.GaussianCrbcParams(P=P, a=10 ** rng.uniform(-1, 3), N1=N1, N2=N2)


def _pairs_close(x: g.EquivocationPair, y: g.EquivocationPair) -> bool:
    if x.feasible != y.feasible or (x.re2 is None) != (y.re2 is None):
        return False
    return _close(x.re1, y.re1) and (x.re2 is None or _close(x.re2, y.re2))


def reductions() -> tuple[bool, str]:
    rng = np.random.default_rng(6)
    fails = []
    for i in range(1000):
        p = _random_gaussian(rng)
        al, be, ga = rng.uniform(0, 1), rng.uniform(0.05, 1), rng.uniform(-2, 2)
        nc = float(rng.uniform(0, 5))
        if not _pairs_close(g.prop2_rates(al, 0.0, nc, p), g.prop1_rates(al, nc, p)):
            fails.append(("prop2(gamma=0) vs prop1", i))
        if not _pairs_close(g.prop4_rates(al, 1.0, ga, nc, p), g.prop2_rates(al, ga, nc, p)):
            fails.append(("prop4(beta=1) vs prop2", i))
        if not _pairs_close(g.prop4_rates(al, be, 0.0, nc, p), g.prop3_rates(al, be, nc, p)):
            fails.append(("prop4(gamma=0) vs prop3", i))
        ch = d.random_dmc(rng)
        f1 = d.random_factored(rng, 1, ch)
        e1 = d.eval_theorem1(ch, f1)
        e4 = d.eval_theorem4(ch, d.theorem4_from_theorem1(f1))
        fields = ("r1", "r2", "r_sum", "re1_raw", "re2_raw")
        if not all(_close(getattr(e1, k), getattr(e4, k)) for k in fields) or not _close(e1.slacks[0], e4.slacks[0]):
            fails.append(("theorem4(U=X1) vs theorem1", i))
    return not fails, f"{4 * 1000 - len(fails)}/4000 identities hold" + (f"; first failure {fails[0]}" if fails else "")


def monotone_in_nc() -> tuple[bool, str]:
    rng = np.random.default_rng(7)
    bad = []
    checked = 0
    for scheme in ("prop1", "prop2", "prop3", "prop4"):
        draws = 0
        while draws < 100:
            p = _random_gaussian(rng)
            al, be, ga = rng.uniform(0, 0.95), rng.uniform(0.1, 1), rng.uniform(-2, 2)
            if scheme == "prop1":
                lo = g.prop1_min_nc_arrays(al, p.P, p.a, p.N1, p.N2)
            elif scheme == "prop2":
                lo = g.prop2_min_nc_arrays(al, ga, p.P, p.a, p.N1, p.N2)[3]
            elif scheme == "prop3":
                lo = g.prop3_min_nc_arrays(al, be, p.P, p.a, p.N1, p.N2)
            else:
                lo = g.prop4_min_nc_arrays(al, be, ga, p.P, p.a, p.N1, p.N2)[3]
            lo = float(lo)
            if not math.isfinite(lo):
                continue
            draws += 1
            nc = np.linspace(lo, lo + 10.0, 50)
            args = (p.P, p.a, p.N1, p.N2)
            if scheme == "prop1":
                re2 = g.prop1_arrays(al, nc, *args, clamp=False)[1]
            elif scheme == "prop2":
                re2 = g.prop2_arrays(al, ga, nc, *args, clamp=False)[1]
            elif scheme == "prop3":
                re2 = g.prop3_arrays(al, be, nc, *args, clamp=False)[1]
            else:
                re2 = g.prop4_arrays(al, be, ga, nc, *args, clamp=False)[1]
            checked += 1
            if not np.all(np.diff(re2) < 0):
                bad.append((scheme, draws))
    return not bad, f"{checked - len(bad)}/{checked} nc sweeps strictly decreasing" + (f"; first failure {bad[0]}" if bad else "")


def degraded_zero() -> tuple[bool, str]:
    rng = np.random.default_rng(8)
    worst_max, worst_raw = -math.inf, -math.inf
    for _ in range(50):
        ch = d.random_degraded_dmc(rng)
        v, _ = d.maximize_theorem3(ch, resolution=32)
        worst_max = max(worst_max, v)
        for _ in range(5):
            worst_raw = max(worst_raw, d.eval_theorem1(ch, d.random_factored(rng, 1, ch)).re2_raw)
    ok = worst_max <= 1e-9 and worst_raw <= 1e-9
    return ok, f"largest Sato bound {worst_max:.2e}, largest unclamped Re2 {worst_raw:.2e} over 50 channels"


def _relay_off_factored(px: np.ndarray, px1: np.ndarray) -> d.FactoredJoint:
    """V2 = X, V1 and the compressed observation constant."""
    nx = px.size
    return d.FactoredJoint(
        1,
        {
            "pv1v2": px[None, :],
            "px_given_v": np.eye(nx)[None, :, :],
            "px1": px1,
            "pyhat": np.ones((px1.size, 1, 2, 1)),
        },
    )


def reverse_degraded_capacity() -> tuple[bool, str]:
    rng = np.random.default_rng(9)
    worst = 0.0
    for _ in range(20):
        ch = d.random_reverse_degraded_dmc(rng)
        px, px1 = rng.dirichlet([1, 1]), rng.dirichlet([1, 1])
        ach = d.eval_theorem1(ch, _relay_off_factored(px, px1)).re2_raw
        outer = d.eval_theorem3(ch, np.outer(px, px1))
        worst = max(worst, abs(ach - outer))
    return worst <= 1e-9, f"max |achievable - outer| = {worst:.2e} over 20 channels"


def outer_dominance() -> tuple[bool, str]:
    P, N1, N2 = ANCHOR["P"], ANCHOR["N1"], ANCHOR["N2"]
    sato = g.gaussian_sato_bound(P, N1, N2)
    worst = -math.inf
    n_pts = 0
    for scheme in ("prop1", "prop2"):
        cfg = SweepConfig(scheme=scheme)
        fam = trace_family(cfg, g.GaussianCrbcParams(P=P, a=1.0, N1=N1, N2=N2), [1.0, 10.0, 100.0, 1000.0])
        for pts in fam.values():
            n_pts += len(pts)
            worst = max(worst, max(pt.re2 for pt in pts) - sato)
    rng = np.random.default_rng(10)
    dmc_bad = 0
    for _ in range(30):
        ch = d.random_dmc(rng)
        f = d.random_factored(rng, 1, ch)
        ach = d.eval_theorem1(ch, f).re2
        outer, _ = d.maximize_theorem3(ch, resolution=16, seeds=[d.input_marginal(f)])
        dmc_bad += ach > outer + DOMINANCE
    ok = worst <= DOMINANCE and dmc_bad == 0
    return ok, (
        f"{n_pts} Gaussian frontier points, max re2 - Sato = {worst:.3e}; "
        f"{30 - dmc_bad}/30 DMC instances below the seeded Sato maximum"
    )


def jamming_threshold_check() -> tuple[bool, str]:
    P, N1, N2 = WEAK_RELAY["P"], WEAK_RELAY["N1"], WEAK_RELAY["N2"]
    thr = g.jamming_threshold(P, N1, N2)
    step = 0.005
    a_vals = [thr + k * step for k in range(-10, 11)]
    wrong = []
    for a in a_vals:
        re1 = g.prop3_rates(1.0, 0.0, None, g.GaussianCrbcParams(P=P, a=a, N1=N1, N2=N2)).re1
        if (re1 > 0) != (a > thr):
            wrong.append(a)
    return not wrong and thr == 0.125, f"threshold {thr}; {len(a_vals) - len(wrong)}/{len(a_vals)} grid values agree"


CRITERIA: tuple[Criterion, ...] = (
    Criterion(1, "wiretap anchor", ("gaussian", "anchor"), wiretap_anchor),
    Criterion(2, "pure-relay anchor", ("gaussian", "anchor"), pure_relay_anchor),
    Criterion(3, "full-jamming anchor", ("gaussian", "anchor"), full_jamming_anchor),
    Criterion(4, "limit identity", ("gaussian",), limit_identity),
    Criterion(5, "convergence to the a -> infinity limit", ("gaussian",), convergence),
    Criterion(6, "reduction suite", ("gaussian", "dmc"), reductions),
    Criterion(7, "re2 decreasing in compression noise", ("gaussian",), monotone_in_nc),
    Criterion(8, "degraded channels give zero Re2", ("dmc",), degraded_zero),
    Criterion(9, "reverse-degraded capacity", ("dmc",), reverse_degraded_capacity),
    Criterion(10, "outer-bound dominance", ("gaussian", "dmc", "frontier"), outer_dominance),
    Criterion(11, "jamming threshold", ("gaussian", "anchor"), jamming_threshold_check),
)

#: Wall-clock limits for whole criteria.
TIME_LIMITS = {5: 5.0, 6: 10.0}


def run_criterion(c: Criterion) -> Result:
    t0 = time.perf_counter()
    try:
        ok, detail = c.check()
    except Exception as e:  # report, do not abort the table
        ok, detail = False, f"raised {type(e).__name__}: {e}"
    dt = time.perf_counter() - t0
    limit = TIME_LIMITS.get(c.number)
    if limit is not None and dt >= limit:
        ok, detail = False, f"{detail}; took {dt:.2f}s, limit {limit}s"
    return Result(c, bool(ok), detail, dt)


def select(tag: Optional[str] = None) -> list[Criterion]:
    if not tag:
        return list(CRITERIA)
    return [c for c in CRITERIA if tag in c.tags or tag == str(c.number)]


def run(tag: Optional[str] = None, echo: Optional[Callable[[str], None]] = None) -> list[Result]:
    results = []
    for c in select(tag):
        r = run_criterion(c)
        if echo:
            echo(r.line())
        results.append(r)
    return results


def summary(results: Iterable[Result]) -> str:
    results = list(results)
    n_ok = sum(r.passed for r in results)
    return f"{n_ok}/{len(results)} acceptance criteria passed"
