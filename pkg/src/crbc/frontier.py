"""Parameter sweeps and Pareto frontiers of Gaussian equivocation regions."""
from __future__ import annotations

import dataclasses
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from crbc import gaussian as g
from crbc.gaussian import (
    EquivocationPair,
    GaussianCrbcParams,
    InvalidParameterError,
    SchemeParams,
    TwoSidedGaussianParams,
)

SCHEMES = ("prop1", "prop2", "prop3", "prop4", "prop5")
#: Dominance tolerance when filtering frontiers.
DOMINANCE_EPS = 1e-9

# free parameters per scheme, in sweep (lexicographic) order
AXES = {
    "prop1": ("alpha",),
    "prop2": ("alpha", "gamma"),
    "prop3": ("alpha", "beta"),
    "prop4": ("alpha", "beta", "gamma"),
    "prop5": ("alpha", "beta1", "beta2"),
}

AValue = Union[float, tuple]


@dataclass(frozen=True)
class SweepConfig:
    """Grid and refinement settings.

    ``nc`` is ``"min"`` (use each point's compression floor) or a fixed value.
    ``beta_points`` applies to ``beta`` and to both ``beta1``/``beta2``.
    """

    scheme: str = "prop1"
    alpha_points: int = 101
    beta_points: int = 51
    gamma_points: int = 81
    gamma_range: tuple[float, float] = (-2.0, 2.0)
    nc: Union[str, float] = "min"
    a_values: tuple = ()
    refine_passes: int = 20
    workers: Optional[int] = None
    printed: bool = True  # prop5 formula variant

    def __post_init__(self) -> None:
        if self.scheme not in SCHEMES:
            raise InvalidParameterError(f"unknown scheme {self.scheme!r}; choose from {SCHEMES}")
        for name in ("alpha_points", "beta_points", "gamma_points"):
            if getattr(self, name) < 2:
                raise InvalidParameterError(f"{name} must be >= 2")
        lo, hi = self.gamma_range
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise InvalidParameterError(f"gamma range must be finite with lo < hi, got {self.gamma_range}")
        if self.nc != "min" and not (isinstance(self.nc, (int, float)) and self.nc >= 0):
            raise InvalidParameterError(f"nc policy must be 'min' or a value >= 0, got {self.nc!r}")
        if self.refine_passes < 0:
            raise InvalidParameterError("refine_passes must be >= 0")

    def axis_values(self, name: str) -> np.ndarray:
        if name == "alpha":
            return np.linspace(0.0, 1.0, self.alpha_points)
        if name in ("beta", "beta1", "beta2"):
            return np.linspace(0.0, 1.0, self.beta_points)
        return np.linspace(*self.gamma_range, self.gamma_points)

    def bounds(self, name: str) -> tuple[float, float]:
        return tuple(self.gamma_range) if name == "gamma" else (0.0, 1.0)  # type: ignore[return-value]


@dataclass(frozen=True)
class FrontierPoint:
    re1: float
    re2: float
    params: SchemeParams = field(compare=False)
    a: AValue = field(default=math.nan, compare=False)


def resolve_workers(workers: Optional[int] = None) -> int:
    if workers:
        return max(1, int(workers))
    env = os.environ.get("CRBC_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _check_params(scheme: str, params) -> None:
    if scheme == "prop5":
        if not isinstance(params, TwoSidedGaussianParams):
            raise InvalidParameterError("prop5 needs TwoSidedGaussianParams")
    elif not isinstance(params, GaussianCrbcParams):
        raise InvalidParameterError(f"{scheme} needs GaussianCrbcParams")


def evaluate_arrays(scheme: str, params, values: dict, nc="min", printed: bool = True):
    """Vectorised evaluation of one scheme at broadcastable parameter arrays.

    Returns ``(re1, re2, feasible, nc_used)``; for ``prop5`` ``nc_used`` is a pair.
    """
    _check_params(scheme, params)
    al = np.asarray(values["alpha"], float)
    ab = 1 - al
    p = params
    if scheme == "prop5":
        b1 = np.asarray(values["beta1"], float)
        b2 = np.asarray(values["beta2"], float)
        q1, q2 = g.prop5_min_ncs_arrays(al, b1, b2, p.P, p.a1, p.a2, p.N1, p.N2)
        if nc == "min":
            n1, n2 = q1[3], q2[3]
            feas = np.isfinite(n1) & np.isfinite(n2)
        else:
            n1 = np.full(q1[3].shape, float(nc))
            n2 = np.full(q2[3].shape, float(nc))
            feas = (n1 >= q1[3]) & (n2 >= q2[3])
        re1, re2 = g.prop5_arrays(al, b1, b2, n1, n2, p.P, p.a1, p.a2, p.N1, p.N2, printed)
        return re1, re2, feas, (n1, n2)

    if scheme == "prop1":
        nc_min = g.prop1_min_nc_arrays(al, p.P, p.a, p.N1, p.N2)
    elif scheme == "prop2":
        nc_min = g.prop2_min_nc_arrays(al, values["gamma"], p.P, p.a, p.N1, p.N2)[3]
    elif scheme == "prop3":
        nc_min = g.prop3_min_nc_arrays(al, values["beta"], p.P, p.a, p.N1, p.N2)
    else:
        nc_min = g.prop4_min_nc_arrays(al, values["beta"], values["gamma"], p.P, p.a, p.N1, p.N2)[3]
    nc_min = np.broadcast_to(nc_min, np.broadcast(al, nc_min).shape)
    if nc == "min":
        used = nc_min
        feas = np.isfinite(nc_min) | (ab == 0)
    else:
        used = np.full(nc_min.shape, float(nc))
        feas = (used >= nc_min) | (ab == 0)
    if scheme == "prop1":
        re1, re2 = g.prop1_arrays(al, used, p.P, p.a, p.N1, p.N2)
    elif scheme == "prop2":
        re1, re2 = g.prop2_arrays(al, values["gamma"], used, p.P, p.a, p.N1, p.N2)
    elif scheme == "prop3":
        re1, re2 = g.prop3_arrays(al, values["beta"], used, p.P, p.a, p.N1, p.N2)
    else:
        re1, re2 = g.prop4_arrays(al, values["beta"], values["gamma"], used, p.P, p.a, p.N1, p.N2)
    return re1, re2, feas, used


def _grid(config: SweepConfig) -> tuple[tuple[str, ...], list[np.ndarray]]:
    names = AXES[config.scheme]
    mesh = np.meshgrid(*(config.axis_values(n) for n in names), indexing="ij")
    return names, [m.ravel() for m in mesh]


def _grid_eval(config: SweepConfig, params):
    """Evaluate the full grid; chunks over rows are merged in grid order."""
    names, cols = _grid(config)
    n = cols[0].size
    workers = resolve_workers(config.workers)
    edges = np.linspace(0, n, min(workers, n) + 1).astype(int)

    def run(lo_hi):
        lo, hi = lo_hi
        vals = {k: c[lo:hi] for k, c in zip(names, cols)}
        re1, re2, feas, used = evaluate_arrays(config.scheme, params, vals, config.nc, config.printed)
        shape = (hi - lo,)
        if isinstance(used, tuple):
            used = tuple(np.broadcast_to(u, shape) for u in used)
        else:
            used = np.broadcast_to(used, shape)
        return (np.broadcast_to(re1, shape), np.broadcast_to(re2, shape), np.broadcast_to(feas, shape), used)

    spans = list(zip(edges[:-1], edges[1:]))
    if len(spans) > 1:
        with ThreadPoolExecutor(len(spans)) as ex:
            parts = list(ex.map(run, spans))
    else:
        parts = [run(s) for s in spans]
    re1 = np.concatenate([q[0] for q in parts])
    re2 = np.concatenate([q[1] for q in parts])
    feas = np.concatenate([q[2] for q in parts])
    if config.scheme == "prop5":
        used = (np.concatenate([q[3][0] for q in parts]), np.concatenate([q[3][1] for q in parts]))
    else:
        used = np.concatenate([q[3] for q in parts])
    return names, cols, re1, re2, feas, used


def _scheme_params(scheme: str, names, vals, used) -> SchemeParams:
    kw = {k: float(v) for k, v in zip(names, vals)}
    if scheme == "prop5":
        kw["nc1"], kw["nc2"] = float(used[0]), float(used[1])
    else:
        kw["nc"] = float(used)
    return SchemeParams(**kw)


def sweep(config: SweepConfig, params) -> list[tuple[SchemeParams, EquivocationPair]]:
    """Evaluate the scheme on its grid in lexicographic parameter order.

    Points without a feasible compression noise are dropped.
    """
    names, cols, re1, re2, feas, used = _grid_eval(config, params)
    out = []
    for i in np.flatnonzero(feas):
        u = (used[0][i], used[1][i]) if config.scheme == "prop5" else used[i]
        sp = _scheme_params(config.scheme, names, [c[i] for c in cols], u)
        out.append((sp, EquivocationPair(float(re1[i]), float(re2[i]), True)))
    return out


def _pareto_order(re1: np.ndarray, re2: np.ndarray, keys: Sequence[np.ndarray], eps: float) -> np.ndarray:
    """Indices of non-dominated points, sorted by ``re1`` ascending."""
    if re1.size == 0:
        return np.zeros(0, dtype=int)
    order = np.lexsort(tuple(reversed(keys)) + (-re2, -re1)) if keys else np.lexsort((-re2, -re1))
    r2 = re2[order]
    prev = np.concatenate([[-np.inf], np.maximum.accumulate(r2)[:-1]])
    keep = order[r2 > prev + eps]
    return keep[::-1]


def pareto_filter(points: Iterable, eps: float = DOMINANCE_EPS) -> list:
    """Non-dominated subset of ``points``, sorted by ``re1`` ascending.

    Accepts :class:`FrontierPoint` objects or ``(re1, re2)`` pairs. Among points
    with equal rates the larger ``re2`` and then the lexicographically smallest
    parameters win.
    """
    pts = list(points)
    if not pts:
        return []
    if isinstance(pts[0], FrontierPoint):
        re1 = np.array([p.re1 for p in pts])
        re2 = np.array([p.re2 for p in pts])
        keys = np.array([p.params.as_tuple() for p in pts]).T
        idx = _pareto_order(re1, re2, list(keys), eps)
    else:
        arr = np.asarray(pts, dtype=float).reshape(len(pts), 2)
        idx = _pareto_order(arr[:, 0], arr[:, 1], [], eps)
    return [pts[i] for i in idx]


def _refine_point(config: SweepConfig, params, names, x0: np.ndarray, r0: tuple[float, float]):
    """Coordinate ascent that only accepts moves improving the point in the Pareto order."""
    x = x0.astype(float).copy()
    r1, r2 = r0
    lo = np.array([config.bounds(n)[0] for n in names])
    hi = np.array([config.bounds(n)[1] for n in names])
    step = np.array([(h - l) / (len(config.axis_values(n)) - 1) for n, l, h in zip(names, lo, hi)])
    for _ in range(config.refine_passes):
        cands = []
        for d in range(len(names)):
            for sgn in (1.0, -1.0):
                y = x.copy()
                y[d] = min(hi[d], max(lo[d], y[d] + sgn * step[d]))
                if y[d] != x[d]:
                    cands.append(y)
        if cands:
            c = np.array(cands)
            vals = {n: c[:, k] for k, n in enumerate(names)}
            e1, e2, feas, used = evaluate_arrays(config.scheme, params, vals, config.nc, config.printed)
            e1 = np.broadcast_to(e1, (len(c),))
            e2 = np.broadcast_to(e2, (len(c),))
            gain = np.where(feas & (e1 >= r1) & (e2 >= r2), (e1 - r1) + (e2 - r2), -1.0)
            b = int(np.argmax(gain))
            if gain[b] > 1e-12:
                x, r1, r2 = c[b], float(e1[b]), float(e2[b])
                continue  # keep the step while it pays off
        step = step * 0.5
    return x, (r1, r2)


def frontier(config: SweepConfig, params, a_value: AValue = math.nan) -> list[FrontierPoint]:
    """Grid sweep, Pareto filter, then per-point refinement and a final filter."""
    names, cols, re1, re2, feas, used = _grid_eval(config, params)
    idx = np.flatnonzero(feas)
    sub_cols = [c[idx] for c in cols]
    keep = _pareto_order(re1[idx], re2[idx], sub_cols, DOMINANCE_EPS)
    pts = []
    for k in keep:
        i = idx[k]
        u = (used[0][i], used[1][i]) if config.scheme == "prop5" else used[i]
        vals = np.array([c[i] for c in cols])
        sp = _scheme_params(config.scheme, names, vals, u)
        pts.append(FrontierPoint(float(re1[i]), float(re2[i]), sp, a_value))
    if config.refine_passes:
        refined = []
        for pt in pts:
            x0 = np.array([getattr(pt.params, n) for n in names])
            x, (r1, r2) = _refine_point(config, params, names, x0, (pt.re1, pt.re2))
            if (r1, r2) != (pt.re1, pt.re2):
                vals = {n: x[k] for k, n in enumerate(names)}
                *_, u = evaluate_arrays(config.scheme, params, vals, config.nc, config.printed)
                u = (float(u[0]), float(u[1])) if config.scheme == "prop5" else float(u)
                refined.append(FrontierPoint(r1, r2, _scheme_params(config.scheme, names, x, u), a_value))
        pts = pareto_filter(pts + refined)
    return pts


def _with_a(params, a: AValue):
    if isinstance(params, TwoSidedGaussianParams):
        a1, a2 = a if isinstance(a, tuple) else (a, a)
        return dataclasses.replace(params, a1=a1, a2=a2)
    return dataclasses.replace(params, a=a)


def trace_family(config: SweepConfig, params, a_list: Sequence[AValue]) -> dict:
    """One refined frontier per relay power ratio in ``a_list``.

    For ``prop5`` each entry is an ``(a1, a2)`` pair (a scalar sets both).
    """
    _check_params(config.scheme, params)
    out = {}
    for a in a_list:
        if isinstance(a, tuple):
            if any(not v > 0 for v in a):
                raise InvalidParameterError(f"a-values must be positive, got {a}")
        elif not a > 0:
            raise InvalidParameterError(f"a-values must be positive, got {a}")
        out[a] = frontier(config, _with_a(params, a), a)
    return out
