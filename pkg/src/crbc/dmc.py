"""Discrete memoryless cooperative relay broadcast channels.

Evaluates the achievable bounds of the compress-and-forward scheme (``theorem 1``),
its jamming variant (``theorem 4``) and the two-sided scheme (``theorem 5``) for
explicit factored input distributions, the auxiliary-variable outer bound
(``theorem 2``) at a supplied auxiliary joint, and the Sato-type outer bound
``max_{p(x,x1)} I(X; Y2 | X1, Y1)`` (``theorem 3``).

Tensor axis conventions:

* one-sided channel ``W[x, x1, y1, y2] = p(y1, y2 | x, x1)``
* two-sided channel ``W[x, x1, x2, y1, y2] = p(y1, y2 | x, x1, x2)``
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Sequence

import numpy as np

from crbc.info import NORM_TOL, InvalidDistributionError, Joint, validate_conditional, validate_distribution

#: Largest dense joint tensor the evaluators will build.
DEFAULT_CELL_CAP = 10**7
#: Markov-chain and degradedness tolerance.
MARKOV_TOL = 1e-9

FACTOR_AXES: dict[int, dict[str, tuple[str, ...]]] = {
    1: {
        "pv1v2": ("V1", "V2"),
        "px_given_v": ("V1", "V2", "X"),
        "px1": ("X1",),
        "pyhat": ("X1", "V1", "Y1", "Yh1"),
    },
    2: {"paux": ("U", "V1", "V2", "X", "X1")},
    3: {"pxx1": ("X", "X1")},
    4: {
        "pv1v2": ("V1", "V2"),
        "px_given_v": ("V1", "V2", "X"),
        "pu": ("U",),
        "px1_given_u": ("U", "X1"),
        "pyhat": ("U", "V1", "Y1", "Yh1"),
    },
    5: {
        "pv1v2": ("V1", "V2"),
        "px_given_v": ("V1", "V2", "X"),
        "pu1x1": ("U1", "X1"),
        "pyhat1": ("U1", "Y1", "Yh1"),
        "pu2x2": ("U2", "X2"),
        "pyhat2": ("U2", "Y2", "Yh2"),
    },
}

# number of leading (conditioning) axes per factor; 0 means a joint pmf
_GIVEN = {
    "pv1v2": 0,
    "px_given_v": 2,
    "px1": 0,
    "pyhat": 3,
    "pu": 0,
    "px1_given_u": 1,
    "pu1x1": 0,
    "pyhat1": 2,
    "pu2x2": 0,
    "pyhat2": 2,
    "paux": 0,
    "pxx1": 0,
}


class SizeCapError(ValueError):
    """The dense joint tensor would exceed the configured cell cap."""


class MarkovViolationError(ValueError):
    """An auxiliary joint violates the required Markov chain."""


class NotReverseDegradedError(ValueError):
    """The channel does not satisfy ``X -> (X1, Y2) -> Y1``."""


@dataclass(frozen=True, eq=False)
class DmcSpec:
    """Transition tensor of a one-sided or two-sided channel."""

    W: np.ndarray

    def __post_init__(self) -> None:
        W = np.asarray(self.W, dtype=float)
        if W.ndim not in (4, 5):
            raise ValueError(f"transition tensor must be 4-d or 5-d, got {W.ndim}-d")
        n_in = W.ndim - 2
        W = validate_conditional(W, n_in, name="channel")
        W.setflags(write=False)
        object.__setattr__(self, "W", W)

    @property
    def two_sided(self) -> bool:
        return self.W.ndim == 5

    @property
    def sizes(self) -> dict[str, int]:
        keys = ("X", "X1", "X2", "Y1", "Y2") if self.two_sided else ("X", "X1", "Y1", "Y2")
        return dict(zip(keys, self.W.shape))


@dataclass(frozen=True, eq=False)
class FactoredJoint:
    """Factor tables for one theorem's input factorisation.

    ``factors`` maps the fixed factor names of :data:`FACTOR_AXES` to tables whose
    axes follow the listed variable order, conditioning variables first.
    """

    theorem: int
    factors: Mapping[str, np.ndarray]
    cell_cap: int = DEFAULT_CELL_CAP

    def __post_init__(self) -> None:
        if self.theorem not in FACTOR_AXES:
            raise ValueError(f"unknown theorem {self.theorem}")
        expected = FACTOR_AXES[self.theorem]
        got = set(self.factors)
        if got != set(expected):
            raise InvalidDistributionError(
                f"theorem {self.theorem} needs factors {sorted(expected)}, got {sorted(got)}"
            )
        clean = {}
        sizes: dict[str, int] = {}
        for name, axes in expected.items():
            t = np.asarray(self.factors[name], dtype=float)
            if t.ndim != len(axes):
                raise InvalidDistributionError(f"{name}: expected {len(axes)} axes {axes}, got {t.ndim}")
            for ax, n in zip(axes, t.shape):
                if sizes.setdefault(ax, n) != n:
                    raise InvalidDistributionError(f"{name}: alphabet {ax} has size {n}, elsewhere {sizes[ax]}")
            given = _GIVEN[name]
            clean[name] = validate_distribution(t) if given == 0 else validate_conditional(t, given, name=name)
        object.__setattr__(self, "factors", clean)
        object.__setattr__(self, "_sizes", sizes)

    @property
    def sizes(self) -> dict[str, int]:
        return dict(self._sizes)  # type: ignore[attr-defined]


@dataclass(frozen=True)
class RegionEvaluation:
    """Bounds of an achievable region at one input distribution, in bits.

    ``re1_raw``/``re2_raw`` are the equivocation expressions before the
    positivity operator. ``slacks`` holds left-hand minus right-hand side of
    each compression constraint; a constraint holds when its slack is <= 1e-9.
    """

    r1: float
    r2: float
    r_sum: float
    re1_raw: float
    re2_raw: float
    slacks: tuple[float, ...]

    @property
    def re1(self) -> float:
        return min(self.r1, max(0.0, self.re1_raw))

    @property
    def re2(self) -> float:
        return min(self.r2, max(0.0, self.re2_raw))

    @property
    def constraint_satisfied(self) -> tuple[bool, ...]:
        return tuple(s <= NORM_TOL for s in self.slacks)

    @property
    def feasible(self) -> bool:
        return all(self.constraint_satisfied)


@dataclass(frozen=True)
class OuterPoint:
    """Auxiliary-variable outer-bound quantities at one auxiliary joint."""

    re1_tilde: float
    re2_tilde: float
    re1_bar: float
    re2_bar: float
    r1: float
    r2: float

    @property
    def re1(self) -> float:
        return min(self.re1_tilde, self.re1_bar, self.r1)

    @property
    def re2(self) -> float:
        return min(self.re2_tilde, self.re2_bar, self.r2)


# --------------------------------------------------------------------------
# joint construction


def _check_cap(shape: Sequence[int], cap: int) -> None:
    cells = math.prod(shape)
    if cells > cap:
        raise SizeCapError(f"joint tensor has {cells} cells, cap is {cap}")


def _match(dmc: DmcSpec, fj: FactoredJoint, keys: Sequence[str]) -> None:
    for k in keys:
        n = fj.sizes.get(k)
        if n is not None and n != dmc.sizes[k]:
            raise InvalidDistributionError(f"alphabet {k}: distribution has {n} symbols, channel has {dmc.sizes[k]}")


def joint_theorem1(dmc: DmcSpec, fj: FactoredJoint) -> Joint:
    """``p(v1,v2) p(x|v1,v2) p(x1) p(yh1|x1,v1,y1) p(y1,y2|x,x1)``."""
    if fj.theorem != 1 or dmc.two_sided:
        raise ValueError("theorem 1 needs a one-sided channel and theorem-1 factors")
    _match(dmc, fj, ("X", "X1", "Y1"))
    f = fj.factors
    s = fj.sizes
    shape = (s["V1"], s["V2"], s["X"], s["X1"], dmc.sizes["Y1"], dmc.sizes["Y2"], s["Yh1"])
    _check_cap(shape, fj.cell_cap)
    p = np.einsum(
        "ab,abx,c,xcyz,cayh->abxcyzh",
        f["pv1v2"], f["px_given_v"], f["px1"], dmc.W, f["pyhat"], optimize=True,
    )
    return Joint(p, ("V1", "V2", "X", "X1", "Y1", "Y2", "Yh1"))


def joint_theorem4(dmc: DmcSpec, fj: FactoredJoint) -> Joint:
    """``p(v1,v2) p(x|v1,v2) p(u) p(x1|u) p(yh1|u,v1,y1) p(y1,y2|x,x1)``."""
    if fj.theorem != 4 or dmc.two_sided:
        raise ValueError("theorem 4 needs a one-sided channel and theorem-4 factors")
    _match(dmc, fj, ("X", "X1", "Y1"))
    f = fj.factors
    s = fj.sizes
    shape = (s["V1"], s["V2"], s["X"], s["U"], s["X1"], dmc.sizes["Y1"], dmc.sizes["Y2"], s["Yh1"])
    _check_cap(shape, fj.cell_cap)
    p = np.einsum(
        "ab,abx,u,uc,xcyz,uayh->abxucyzh",
        f["pv1v2"], f["px_given_v"], f["pu"], f["px1_given_u"], dmc.W, f["pyhat"], optimize=True,
    )
    return Joint(p, ("V1", "V2", "X", "U", "X1", "Y1", "Y2", "Yh1"))


def joint_theorem5(dmc: DmcSpec, fj: FactoredJoint) -> Joint:
    """``p(v1,v2) p(x|v1,v2) p(u1,x1) p(yh1|u1,y1) p(u2,x2) p(yh2|u2,y2) p(y1,y2|x,x1,x2)``."""
    if fj.theorem != 5 or not dmc.two_sided:
        raise ValueError("theorem 5 needs a two-sided channel and theorem-5 factors")
    _match(dmc, fj, ("X", "X1", "X2", "Y1", "Y2"))
    f = fj.factors
    s = fj.sizes
    shape = (
        s["V1"], s["V2"], s["X"], s["U1"], s["X1"], s["U2"], s["X2"],
        dmc.sizes["Y1"], dmc.sizes["Y2"], s["Yh1"], s["Yh2"],
    )
    _check_cap(shape, fj.cell_cap)
    p = np.einsum(
        "ab,abx,ce,cyg,df,dzh,xefyz->abxcedfyzgh",
        f["pv1v2"], f["px_given_v"], f["pu1x1"], f["pyhat1"], f["pu2x2"], f["pyhat2"], dmc.W,
        optimize=True,
    )
    return Joint(p, ("V1", "V2", "X", "U1", "X1", "U2", "X2", "Y1", "Y2", "Yh1", "Yh2"))


# --------------------------------------------------------------------------
# achievable regions


def eval_theorem1(dmc: DmcSpec, factored: FactoredJoint) -> RegionEvaluation:
    """Compress-and-forward region bounds and the relay-link constraint slack."""
    j = joint_theorem1(dmc, factored)
    r1 = j.mi("V1", "Y1", "X1")
    r2 = j.mi("V2", ("Y2", "Yh1"), "X1")
    bin_ = j.mi("V1", "V2")
    return RegionEvaluation(
        r1=r1,
        r2=r2,
        r_sum=r1 + r2 - bin_,
        re1_raw=r1 - j.mi("V1", ("Y2", "Yh1"), ("V2", "X1")) - bin_,
        re2_raw=r2 - j.mi("V2", "Y1", ("V1", "X1")) - bin_,
        slacks=(j.mi("Yh1", "Y1", ("X1", "V1")) - j.mi(("Yh1", "X1"), "Y2"),),
    )


def eval_theorem4(dmc: DmcSpec, factored_u: FactoredJoint) -> RegionEvaluation:
    """Jam-and-relay region bounds; ``U`` is the help signal inside ``X1``."""
    j = joint_theorem4(dmc, factored_u)
    r1 = j.mi("V1", "Y1", "X1")
    r2 = j.mi("V2", ("Y2", "Yh1"), "U")
    bin_ = j.mi("V1", "V2")
    return RegionEvaluation(
        r1=r1,
        r2=r2,
        r_sum=r1 + r2 - bin_,
        re1_raw=r1 - j.mi("V1", ("Y2", "Yh1"), ("V2", "U")) - bin_,
        re2_raw=r2 - j.mi("V2", "Y1", ("V1", "X1")) - bin_,
        slacks=(j.mi("Yh1", "Y1", ("X1", "V1", "U")) - j.mi(("Yh1", "U"), "Y2"),),
    )


def eval_theorem5(dmc2: DmcSpec, factored2: FactoredJoint) -> RegionEvaluation:
    """Two-sided cooperation bounds with both compression-constraint slacks."""
    j = joint_theorem5(dmc2, factored2)
    r1 = j.mi("V1", ("Y1", "Yh2"), ("X1", "U2"))
    r2 = j.mi("V2", ("Y2", "Yh1"), ("X2", "U1"))
    bin_ = j.mi("V1", "V2")
    return RegionEvaluation(
        r1=r1,
        r2=r2,
        r_sum=r1 + r2 - bin_,
        re1_raw=r1 - j.mi("V1", ("Y2", "Yh1"), ("V2", "X2", "U1")) - bin_,
        re2_raw=r2 - j.mi("V2", ("Y1", "Yh2"), ("V1", "X1", "U2")) - bin_,
        slacks=(
            j.mi("Yh1", "Y1", ("U1", "X1", "U2")) - j.mi(("Yh1", "U1"), "Y2", "X2"),
            j.mi("Yh2", "Y2", ("U2", "X2", "U1")) - j.mi(("Yh2", "U2"), "Y1", "X1"),
        ),
    )


def theorem4_from_theorem1(factored: FactoredJoint) -> FactoredJoint:
    """Theorem-4 factors with ``U = X1`` (deterministic identity ``p(x1|u)``)."""
    f = factored.factors
    n = f["px1"].shape[0]
    return FactoredJoint(
        4,
        {
            "pv1v2": f["pv1v2"],
            "px_given_v": f["px_given_v"],
            "pu": f["px1"],
            "px1_given_u": np.eye(n),
            "pyhat": f["pyhat"],
        },
        factored.cell_cap,
    )


# --------------------------------------------------------------------------
# outer bounds


def _markov_check(aux: np.ndarray, tol: float = MARKOV_TOL) -> None:
    """``U`` independent of ``(X, X1)`` given ``(V1, V2)`` for ``aux[u, v1, v2, x, x1]``."""
    p_uv = aux.sum(axis=(3, 4))
    p_v = aux.sum(axis=(0, 3, 4))
    with np.errstate(divide="ignore", invalid="ignore"):
        cond_uv = aux / p_uv[..., None, None]
        cond_v = aux.sum(axis=0) / p_v[..., None, None]
    worst, where = 0.0, None
    for u, v1, v2 in zip(*np.nonzero(p_uv > 1e-15)):
        tv = 0.5 * np.abs(cond_uv[u, v1, v2] - cond_v[v1, v2]).sum()
        if tv > worst:
            worst, where = tv, (int(u), int(v1), int(v2))
    if worst > tol:
        raise MarkovViolationError(
            f"U -> (V1,V2) -> (X,X1) fails: total variation {worst:.3g} at (u,v1,v2)={where}"
        )


def eval_theorem2_point(dmc: DmcSpec, aux_joint) -> OuterPoint:
    """Outer-bound quantities for one auxiliary joint ``aux_joint[u, v1, v2, x, x1]``.

    The outputs follow from the channel. The joint must make ``U`` conditionally
    independent of ``(X, X1)`` given ``(V1, V2)``.
    """
    if dmc.two_sided:
        raise ValueError("the auxiliary outer bound is for the one-sided channel")
    aux = validate_distribution(aux_joint)
    if aux.ndim != 5 or aux.shape[3:] != dmc.W.shape[:2]:
        raise InvalidDistributionError(
            f"aux joint must have shape (U, V1, V2, {dmc.W.shape[0]}, {dmc.W.shape[1]}), got {aux.shape}"
        )
    _markov_check(aux)
    _check_cap(aux.shape + dmc.W.shape[2:], DEFAULT_CELL_CAP)
    p = np.einsum("uabxc,xcyz->uabxcyz", aux, dmc.W)
    j = Joint(p, ("U", "V1", "V2", "X", "X1", "Y1", "Y2"))
    return OuterPoint(
        re1_tilde=j.mi("V1", "Y1", "U") - j.mi("V1", "Y2", "U"),
        re2_tilde=j.mi("V2", "Y2", "U") - j.mi("V2", "Y1", "U"),
        re1_bar=j.mi("V1", "Y1", "V2") - j.mi("V1", "Y2", "V2"),
        re2_bar=j.mi("V2", "Y2", "V1") - j.mi("V2", "Y1", "V1"),
        r1=j.mi("V1", "Y1", "X1"),
        r2=j.mi("V2", "Y2"),
    )


def _xlogx(p):
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(p > 1e-15, p * np.log2(np.where(p > 1e-15, p, 1.0)), 0.0)


def theorem3_batch(W: np.ndarray, pxx1: np.ndarray) -> np.ndarray:
    """``I(X; Y2 | X1, Y1)`` for a batch of input pmfs ``pxx1[b, x, x1]``."""
    q = pxx1[:, :, :, None, None] * W[None]  # b x c y z
    h_all = -_xlogx(q).sum(axis=(1, 2, 3, 4))
    h_xcy = -_xlogx(q.sum(axis=4)).sum(axis=(1, 2, 3))
    h_cyz = -_xlogx(q.sum(axis=1)).sum(axis=(1, 2, 3))
    h_cy = -_xlogx(q.sum(axis=(1, 4))).sum(axis=(1, 2))
    return h_xcy + h_cyz - h_all - h_cy


def eval_theorem3(dmc: DmcSpec, p_xx1) -> float:
    """``I(X; Y2 | X1, Y1)`` under the input pmf ``p_xx1[x, x1]``."""
    if dmc.two_sided:
        raise ValueError("the Sato-type bound is for the one-sided channel")
    p = validate_distribution(p_xx1)
    if p.shape != dmc.W.shape[:2]:
        raise InvalidDistributionError(f"input pmf must have shape {dmc.W.shape[:2]}, got {p.shape}")
    return max(0.0, float(theorem3_batch(dmc.W, p[None])[0]))


def simplex_grid_blocks(k: int, n: int, block: int = 1 << 16) -> Iterator[np.ndarray]:
    """All compositions of ``n`` into ``k`` non-negative parts, lexicographic, in blocks."""

    def rec(k: int, n: int) -> np.ndarray:
        if k == 1:
            return np.array([[n]], dtype=np.int64)
        if k == 2:
            i = np.arange(n + 1, dtype=np.int64)
            return np.column_stack([i, n - i])
        parts = []
        for i in range(n + 1):
            sub = rec(k - 1, n - i)
            parts.append(np.column_stack([np.full(len(sub), i, np.int64), sub]))
        return np.concatenate(parts)

    if k <= 0 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    if k <= 3:
        g = rec(k, n)
        for s in range(0, len(g), block):
            yield g[s : s + block]
        return
    buf: list[np.ndarray] = []
    size = 0
    for head in _prefixes(k - 3, n):
        tail = rec(3, n - int(head.sum()))
        buf.append(np.column_stack([np.broadcast_to(head, (len(tail), len(head))), tail]))
        size += len(tail)
        if size >= block:
            yield np.concatenate(buf)
            buf, size = [], 0
    if buf:
        yield np.concatenate(buf)


def _prefixes(m: int, n: int) -> Iterator[np.ndarray]:
    # lexicographic m-tuples of non-negative ints with sum <= n
    if m == 0:
        yield np.zeros(0, np.int64)
        return
    for i in range(n + 1):
        for rest in _prefixes(m - 1, n - i):
            yield np.concatenate([[i], rest]).astype(np.int64)


def _refine(W: np.ndarray, p: np.ndarray, value: float, step: float, halvings: int = 30) -> tuple[float, np.ndarray]:
    """Pairwise mass-transfer coordinate ascent on the flattened input pmf."""
    shape = p.shape
    x = p.ravel().copy()
    k = x.size
    pairs = [(i, j) for i in range(k) for j in range(k) if i != j]
    for _ in range(halvings):
        improved = True
        while improved:
            improved = False
            cands = []
            for i, j in pairs:
                d = min(step, x[i])
                if d <= 0:
                    continue
                y = x.copy()
                y[i] -= d
                y[j] += d
                cands.append(y)
            if not cands:
                break
            vals = theorem3_batch(W, np.array(cands).reshape((-1,) + shape))
            b = int(np.argmax(vals))
            if vals[b] > value + 1e-15:
                value, x = float(vals[b]), cands[b]
                improved = True
        step *= 0.5
    return value, x.reshape(shape)


def maximize_theorem3(
    dmc: DmcSpec,
    resolution: int = 64,
    seeds: Sequence[np.ndarray] = (),
    refine: bool = True,
    workers: Optional[int] = None,
) -> tuple[float, np.ndarray]:
    """Grid search plus coordinate refinement of ``max_{p(x,x1)} I(X; Y2 | X1, Y1)``.

    The grid is every pmf with entries in multiples of ``1/resolution``. The best
    grid point, and any ``seeds``, are refined by moving probability mass between
    pairs of cells with a halving step. The returned value is attained by the
    returned pmf, so it is a certified lower bound on the true maximum.

    Ties are broken towards the lexicographically smallest grid point, so the
    result does not depend on ``workers``.
    """
    if dmc.two_sided:
        raise ValueError("the Sato-type bound is for the one-sided channel")
    if resolution < 1:
        raise ValueError("resolution must be >= 1")
    W = dmc.W
    shape = W.shape[:2]
    k = shape[0] * shape[1]

    def scan(block: np.ndarray) -> tuple[float, np.ndarray]:
        vals = theorem3_batch(W, (block / resolution).reshape((-1,) + shape))
        b = int(np.argmax(vals))
        return float(vals[b]), block[b]

    blocks = simplex_grid_blocks(k, resolution)
    if workers and workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(workers) as ex:
            results = list(ex.map(scan, blocks))
    else:
        results = [scan(b) for b in blocks]
    # blocks arrive in lexicographic order; strict '>' keeps the first maximiser
    best_val, best_pt = -math.inf, None
    for v, pt in results:
        if v > best_val:
            best_val, best_pt = v, pt
    starts = [(best_val, (best_pt / resolution).reshape(shape))]
    for s in seeds:
        s = validate_distribution(s).reshape(shape)
        starts.append((float(theorem3_batch(W, s[None])[0]), s))
    if refine:
        starts = [_refine(W, p, v, 1.0 / resolution) for v, p in starts]
    best = max(range(len(starts)), key=lambda i: (starts[i][0], -i))
    v, p = starts[best]
    return max(0.0, v), p


# --------------------------------------------------------------------------
# degradedness


def _conditional_constant_in_x(W: np.ndarray, tol: float) -> bool:
    """Is ``p(z | x, x1, y) = W[x,x1,y,z] / sum_z W`` free of ``x`` wherever defined?"""
    marg = W.sum(axis=3)  # x, x1, y
    with np.errstate(divide="ignore", invalid="ignore"):
        cond = W / marg[..., None]
    for c in range(W.shape[1]):
        for y in range(W.shape[2]):
            rows = cond[marg[:, c, y] > 1e-15, c, y]
            if len(rows) > 1 and np.max(np.abs(rows - rows[0])) > tol:
                return False
    return True


def is_degraded(dmc: DmcSpec, tol: float = MARKOV_TOL) -> bool:
    """``X -> (X1, Y1) -> Y2``: user 2's output is a degraded version of user 1's."""
    return _conditional_constant_in_x(dmc.W, tol)


def is_reverse_degraded(dmc: DmcSpec, tol: float = MARKOV_TOL) -> bool:
    """``X -> (X1, Y2) -> Y1``."""
    return _conditional_constant_in_x(np.swapaxes(dmc.W, 2, 3), tol)


def secrecy_capacity_reverse_degraded(dmc: DmcSpec, p_xx1) -> float:
    """``I(X;Y2|X1) - I(X;Y1|X1)`` at ``p_xx1``; equals ``I(X;Y2|X1,Y1)`` on such channels.

    Raises:
        NotReverseDegradedError: if the channel is not reverse degraded.
        AssertionError: if the two forms disagree by more than 1e-9.
    """
    if dmc.two_sided or not is_reverse_degraded(dmc):
        raise NotReverseDegradedError("channel does not satisfy X -> (X1, Y2) -> Y1")
    p = validate_distribution(p_xx1)
    j = Joint(np.einsum("xc,xcyz->xcyz", p, dmc.W), ("X", "X1", "Y1", "Y2"))
    diff = j.mi("X", "Y2", "X1") - j.mi("X", "Y1", "X1")
    sato = j.mi("X", "Y2", ("X1", "Y1"))
    assert abs(diff - sato) <= 1e-9, f"forms disagree: {diff} vs {sato}"
    return diff


# --------------------------------------------------------------------------
# random constructions


def _random_pmf(rng: np.random.Generator, shape, concentration: float = 1.0) -> np.ndarray:
    shape = tuple(shape)
    return rng.dirichlet(np.full(int(np.prod(shape)), concentration)).reshape(shape)


def _random_cond(rng: np.random.Generator, given, n, concentration: float = 1.0) -> np.ndarray:
    given = tuple(given)
    return rng.dirichlet(np.full(n, concentration), size=given or None).reshape(given + (n,))


def random_dmc(rng: np.random.Generator, nx=2, nx1=2, ny1=2, ny2=2) -> DmcSpec:
    w = _random_cond(rng, (nx, nx1), ny1 * ny2).reshape(nx, nx1, ny1, ny2)
    return DmcSpec(w)


def random_dmc2(rng: np.random.Generator, nx=2, nx1=2, nx2=2, ny1=2, ny2=2) -> DmcSpec:
    w = _random_cond(rng, (nx, nx1, nx2), ny1 * ny2).reshape(nx, nx1, nx2, ny1, ny2)
    return DmcSpec(w)


def random_degraded_dmc(rng: np.random.Generator, nx=2, nx1=2, ny1=2, ny2=2) -> DmcSpec:
    """``p(y1|x,x1) p(y2|x1,y1)``."""
    py1 = _random_cond(rng, (nx, nx1), ny1)
    py2 = _random_cond(rng, (nx1, ny1), ny2)
    return DmcSpec(np.einsum("xcy,cyz->xcyz", py1, py2))


def random_reverse_degraded_dmc(rng: np.random.Generator, nx=2, nx1=2, ny1=2, ny2=2) -> DmcSpec:
    """``p(y2|x,x1) p(y1|x1,y2)``."""
    py2 = _random_cond(rng, (nx, nx1), ny2)
    py1 = _random_cond(rng, (nx1, ny2), ny1)
    return DmcSpec(np.einsum("xcz,czy->xcyz", py2, py1))


def random_factored(
    rng: np.random.Generator,
    theorem: int,
    dmc: DmcSpec,
    aux: Optional[Mapping[str, int]] = None,
) -> FactoredJoint:
    """A random valid factored input for ``theorem`` (1, 4 or 5) matching ``dmc``.

    ``aux`` overrides the auxiliary alphabet sizes (default 2 each).
    """
    sz = dict(dmc.sizes)
    sz.update({k: 2 for k in ("V1", "V2", "U", "U1", "U2", "Yh1", "Yh2")})
    sz.update(aux or {})
    f: dict[str, np.ndarray] = {
        "pv1v2": _random_pmf(rng, (sz["V1"], sz["V2"])),
        "px_given_v": _random_cond(rng, (sz["V1"], sz["V2"]), sz["X"]),
    }
    if theorem == 1:
        f["px1"] = _random_pmf(rng, (sz["X1"],))
        f["pyhat"] = _random_cond(rng, (sz["X1"], sz["V1"], sz["Y1"]), sz["Yh1"])
    elif theorem == 4:
        f["pu"] = _random_pmf(rng, (sz["U"],))
        f["px1_given_u"] = _random_cond(rng, (sz["U"],), sz["X1"])
        f["pyhat"] = _random_cond(rng, (sz["U"], sz["V1"], sz["Y1"]), sz["Yh1"])
    elif theorem == 5:
        f["pu1x1"] = _random_pmf(rng, (sz["U1"], sz["X1"]))
        f["pyhat1"] = _random_cond(rng, (sz["U1"], sz["Y1"]), sz["Yh1"])
        f["pu2x2"] = _random_pmf(rng, (sz["U2"], sz["X2"]))
        f["pyhat2"] = _random_cond(rng, (sz["U2"], sz["Y2"]), sz["Yh2"])
    else:
        raise ValueError("random_factored supports theorems 1, 4 and 5")
    return FactoredJoint(theorem, f)


def random_aux_joint(rng: np.random.Generator, dmc: DmcSpec, nu=2, nv1=2, nv2=2) -> np.ndarray:
    """``p(v1,v2) p(u|v1,v2) p(x,x1|v1,v2)``: satisfies the outer-bound Markov chain."""
    nx, nx1 = dmc.W.shape[:2]
    pv = _random_pmf(rng, (nv1, nv2))
    pu = _random_cond(rng, (nv1, nv2), nu)
    pxx1 = _random_cond(rng, (nv1, nv2), nx * nx1).reshape(nv1, nv2, nx, nx1)
    return np.einsum("ab,abu,abxc->uabxc", pv, pu, pxx1)


def input_marginal(factored: FactoredJoint) -> np.ndarray:
    """``p(x, x1)`` induced by a theorem-1 or theorem-4 factored input."""
    f = factored.factors
    px = np.einsum("ab,abx->x", f["pv1v2"], f["px_given_v"])
    if factored.theorem == 1:
        px1 = f["px1"]
    elif factored.theorem == 4:
        px1 = f["pu"] @ f["px1_given_u"]
    else:
        raise ValueError("input_marginal supports theorems 1 and 4")
    return np.outer(px, px1)
