"""Shannon information measures on dense, labelled probability tensors."""
from __future__ import annotations

from typing import Iterable, Sequence, Union

import numpy as np

#: Probabilities at or below this are structural zeros.
PRECISION = 1e-15
#: Normalisation tolerance for distributions and conditional rows.
NORM_TOL = 1e-9

Names = Union[str, Sequence[str]]


class InvalidDistributionError(ValueError):
    """A tensor is not a valid (conditional) probability distribution."""


def _xlogx(p):
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(p > PRECISION, p * np.log2(np.where(p > PRECISION, p, 1.0)), 0.0)


def validate_distribution(p, tol: float = NORM_TOL) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if not np.all(np.isfinite(p)):
        raise InvalidDistributionError("distribution has non-finite entries")
    if np.any(p < -PRECISION):
        raise InvalidDistributionError(f"negative probability {p.min():.3g}")
    total = p.sum()
    if abs(total - 1.0) > tol:
        raise InvalidDistributionError(f"probabilities sum to {total:.12g}, not 1")
    return np.clip(p, 0.0, None)


def validate_conditional(table, n_given: int, tol: float = NORM_TOL, name: str = "table") -> np.ndarray:
    """Check that ``table`` summed over its trailing axes gives ones.

    The first ``n_given`` axes index the conditioning variables.
    """
    t = np.asarray(table, dtype=float)
    if not np.all(np.isfinite(t)):
        raise InvalidDistributionError(f"{name}: non-finite entries")
    if np.any(t < -PRECISION):
        raise InvalidDistributionError(f"{name}: negative entry {t.min():.3g}")
    sums = t.reshape(t.shape[:n_given] + (-1,)).sum(axis=-1)
    bad = np.abs(sums - 1.0) > tol
    if np.any(bad):
        idx = tuple(int(i) for i in np.argwhere(bad)[0])
        raise InvalidDistributionError(f"{name}: row {idx} sums to {sums[idx]:.12g}, not 1")
    return np.clip(t, 0.0, None)


def entropy(dist) -> float:
    """Shannon entropy in bits of a probability tensor (all axes jointly)."""
    p = validate_distribution(dist)
    return float(-_xlogx(p).sum())


def _tuple(names: Names) -> tuple[str, ...]:
    if isinstance(names, str):
        return (names,)
    return tuple(names)


class Joint:
    """A joint pmf whose axes carry variable names.

    >>> j = Joint(np.full((2, 2), 0.25), ("A", "B"))
    >>> j.mi("A", "B")
    0.0
    """

    __slots__ = ("p", "names", "_axis", "_hcache")

    def __init__(self, p, names: Iterable[str], validate: bool = True):
        names = tuple(names)
        p = np.asarray(p, dtype=float)
        if p.ndim != len(names):
            raise ValueError(f"{p.ndim}-d tensor with {len(names)} names")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.p = validate_distribution(p) if validate else p
        self.names = names
        self._axis = {n: i for i, n in enumerate(names)}
        self._hcache: dict[frozenset, float] = {}

    def marginal(self, names: Names) -> np.ndarray:
        """Marginal over ``names`` with axes in the order given."""
        keep = _tuple(names)
        axes = [self._axis[n] for n in keep]
        drop = tuple(i for i in range(self.p.ndim) if i not in axes)
        m = self.p.sum(axis=drop)
        order = sorted(axes)
        return np.moveaxis(m, [order.index(a) for a in axes], range(len(axes)))

    def entropy(self, names: Names) -> float:
        key = frozenset(_tuple(names))
        if not key:
            return 0.0
        h = self._hcache.get(key)
        if h is None:
            unknown = key - set(self.names)
            if unknown:
                raise KeyError(f"unknown variables {sorted(unknown)}")
            h = float(-_xlogx(self.marginal(sorted(key))).sum())
            self._hcache[key] = h
        return h

    def mi(self, a: Names, b: Names, given: Names = ()) -> float:
        """``I(A; B | C)`` in bits."""
        A, B, C = set(_tuple(a)), set(_tuple(b)), set(_tuple(given))
        B -= C
        A -= C
        if not A or not B:
            return 0.0
        return self.entropy(A | C) + self.entropy(B | C) - self.entropy(A | B | C) - self.entropy(C)


def cond_mutual_info(joint, a: Sequence[int], b: Sequence[int], c: Sequence[int] = ()) -> float:
    """``I(A; B | C)`` in bits for a plain tensor; ``a``, ``b``, ``c`` are axis indices."""
    p = np.asarray(joint, dtype=float)
    names = [f"_{i}" for i in range(p.ndim)]
    j = Joint(p, names)
    pick = lambda axes: [names[i] for i in axes]  # noqa: E731
    return j.mi(pick(a), pick(b), pick(c))
