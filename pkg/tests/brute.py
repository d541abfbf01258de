"""Loop-based reference computations over explicit joint tables.

Joints are dicts mapping outcome tuples to probabilities, built with
``itertools`` loops; only the fine-grid maximum is vectorised.
"""
import itertools
import math
from collections import defaultdict

import numpy as np


def entropy(joint, names, var_order):
    idx = [var_order.index(n) for n in names]
    marg = defaultdict(float)
    for cell, p in joint.items():
        marg[tuple(cell[i] for i in idx)] += p
    return -sum(p * math.log2(p) for p in marg.values() if p > 0)


def mi(joint, order, a, b, c=()):
    a, b, c = list(a), list(b), list(c)
    h = lambda names: entropy(joint, sorted(set(names)), order) if names else 0.0  # noqa: E731
    return h(a + c) + h(b + c) - h(a + b + c) - h(c)


def _rng(n):
    return range(n)


def joint_theorem1(W, f):
    """Dict joint over (V1, V2, X, X1, Y1, Y2, Yh1) by nested loops."""
    pv, pxv, px1, pyh = f["pv1v2"], f["px_given_v"], f["px1"], f["pyhat"]
    nv1, nv2, nx = pxv.shape
    nx1 = px1.shape[0]
    ny1, ny2 = W.shape[2], W.shape[3]
    nyh = pyh.shape[3]
    out = {}
    for v1, v2, x, x1, y1, y2, yh in itertools.product(
        _rng(nv1), _rng(nv2), _rng(nx), _rng(nx1), _rng(ny1), _rng(ny2), _rng(nyh)
    ):
        p = float(pv[v1, v2] * pxv[v1, v2, x] * px1[x1] * W[x, x1, y1, y2] * pyh[x1, v1, y1, yh])
        if p > 0:
            out[(v1, v2, x, x1, y1, y2, yh)] = p
    return out, ["V1", "V2", "X", "X1", "Y1", "Y2", "Yh1"]


def theorem1_bounds(W, f):
    j, o = joint_theorem1(W, f)
    r1 = mi(j, o, ["V1"], ["Y1"], ["X1"])
    r2 = mi(j, o, ["V2"], ["Y2", "Yh1"], ["X1"])
    b = mi(j, o, ["V1"], ["V2"])
    return {
        "r1": r1,
        "r2": r2,
        "r_sum": r1 + r2 - b,
        "re1_raw": r1 - mi(j, o, ["V1"], ["Y2", "Yh1"], ["V2", "X1"]) - b,
        "re2_raw": r2 - mi(j, o, ["V2"], ["Y1"], ["V1", "X1"]) - b,
        "slack": mi(j, o, ["Yh1"], ["Y1"], ["X1", "V1"]) - mi(j, o, ["Yh1", "X1"], ["Y2"]),
    }


def theorem2_point(W, aux):
    """Outer-bound quantities from ``aux[u, v1, v2, x, x1]`` by loops."""
    nu, nv1, nv2, nx, nx1 = aux.shape
    ny1, ny2 = W.shape[2], W.shape[3]
    j = {}
    for u, v1, v2, x, x1, y1, y2 in itertools.product(
        _rng(nu), _rng(nv1), _rng(nv2), _rng(nx), _rng(nx1), _rng(ny1), _rng(ny2)
    ):
        p = float(aux[u, v1, v2, x, x1] * W[x, x1, y1, y2])
        if p > 0:
            j[(u, v1, v2, x, x1, y1, y2)] = p
    o = ["U", "V1", "V2", "X", "X1", "Y1", "Y2"]
    return {
        "re1_tilde": mi(j, o, ["V1"], ["Y1"], ["U"]) - mi(j, o, ["V1"], ["Y2"], ["U"]),
        "re2_tilde": mi(j, o, ["V2"], ["Y2"], ["U"]) - mi(j, o, ["V2"], ["Y1"], ["U"]),
        "re1_bar": mi(j, o, ["V1"], ["Y1"], ["V2"]) - mi(j, o, ["V1"], ["Y2"], ["V2"]),
        "re2_bar": mi(j, o, ["V2"], ["Y2"], ["V1"]) - mi(j, o, ["V2"], ["Y1"], ["V1"]),
        "r1": mi(j, o, ["V1"], ["Y1"], ["X1"]),
        "r2": mi(j, o, ["V2"], ["Y2"]),
    }


def sato_value(W, pxx1):
    """``I(X; Y2 | X1, Y1)`` by loops."""
    nx, nx1, ny1, ny2 = W.shape
    j = {}
    for x, x1, y1, y2 in itertools.product(_rng(nx), _rng(nx1), _rng(ny1), _rng(ny2)):
        p = float(pxx1[x, x1] * W[x, x1, y1, y2])
        if p > 0:
            j[(x, x1, y1, y2)] = p
    return mi(j, ["X", "X1", "Y1", "Y2"], ["X"], ["Y2"], ["X1", "Y1"])


def fine_grid_max(W, n):
    """Maximum of ``H(Y2|X1,Y1) - H(Y2|X,X1,Y1)`` over every 2x2 input pmf on the 1/n grid.

    Vectorised over the grid (the loop version is too slow at n = 256) but
    written in the conditional-entropy form, separately from the package.
    """
    i, j, k = np.meshgrid(np.arange(n + 1), np.arange(n + 1), np.arange(n + 1), indexing="ij")
    ok = i + j + k <= n
    P = np.stack([i[ok], j[ok], k[ok], n - i[ok] - j[ok] - k[ok]], axis=1).reshape(-1, 2, 2) / n
    # q[b, x, x1, y1, y2]
    q = P[:, :, :, None, None] * W[None]

    def cond_h(joint):
        """H(Y2 | given) where the last axis of ``joint`` is Y2."""
        tot = joint.sum(axis=-1, keepdims=True)
        with np.errstate(divide="ignore", invalid="ignore"):
            t = np.where(joint > 0, joint * np.log2(np.where(joint > 0, joint / tot, 1.0)), 0.0)
        return -t.reshape(t.shape[0], -1).sum(axis=1)

    h_given_all = cond_h(q)
    h_given_x1y1 = cond_h(q.sum(axis=1))
    return float(np.max(h_given_x1y1 - h_given_all))
