"""Closed-form equivocation rates for the Gaussian cooperative relay broadcast channel.

Single-sided channel::

    Y1 = X + Z1,            Z1 ~ N(0, N1),  E[X^2]  <= P
    Y2 = X + X1 + Z2,       Z2 ~ N(0, N2),  E[X1^2] <= a P

Two-sided channel (``prop5``)::

    Y1 = X + X2 + Z1,       E[X2^2] <= a2 P
    Y2 = X + X1 + Z2,       E[X1^2] <= a1 P

Five schemes are covered:

``prop1``  independent inputs, compress-and-forward relaying
``prop2``  dirty-paper coding for user 1 (coefficient ``gamma``)
``prop3``  independent inputs, relay splits power into help (``beta``) and jamming
``prop4``  dirty-paper coding plus jamming and relaying
``prop5``  two-sided cooperation, each user jams and relays

Every rate is in bits per channel use and is passed through the positivity
operator ``max(0, .)``.

Each scheme has a vectorised ``*_arrays`` core that broadcasts over numpy
arrays (used by :mod:`crbc.frontier`) and a scalar wrapper that validates its
inputs and returns an :class:`EquivocationPair`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

__all__ = [
    "InvalidParameterError",
    "InfeasibleCompressionError",
    "GaussianCrbcParams",
    "TwoSidedGaussianParams",
    "SchemeParams",
    "EquivocationPair",
    "QuadraticNcBound",
    "wiretap_secrecy",
    "prop1_min_nc",
    "prop1_rates",
    "prop2_min_nc",
    "prop2_rates",
    "prop3_min_nc",
    "prop3_rates",
    "prop4_min_nc",
    "prop4_rates",
    "prop5_min_ncs",
    "prop5_rates",
    "corollary1_limit",
    "gaussian_sato_bound",
    "sato_objective",
    "jamming_threshold",
]

#: Below this value the leading quadratic coefficient is treated as zero.
THETA_TOL = 1e-12


class InvalidParameterError(ValueError):
    """A channel or scheme parameter is outside its domain."""


class InfeasibleCompressionError(ValueError):
    """No finite compression noise satisfies the relay-link constraint."""


def _check_positive(**kw: float) -> None:
    for name, v in kw.items():
        if not (isinstance(v, (int, float, np.floating, np.integer)) and math.isfinite(v) and v > 0):
            raise InvalidParameterError(f"{name} must be a finite positive number, got {v!r}")


def _check_nonneg(**kw: float) -> None:
    for name, v in kw.items():
        if not (isinstance(v, (int, float, np.floating, np.integer)) and math.isfinite(v) and v >= 0):
            raise InvalidParameterError(f"{name} must be a finite non-negative number, got {v!r}")


def _check_unit(**kw: float) -> None:
    for name, v in kw.items():
        if not (isinstance(v, (int, float, np.floating, np.integer)) and 0.0 <= v <= 1.0):
            raise InvalidParameterError(f"{name} must lie in [0, 1], got {v!r}")


@dataclass(frozen=True)
class GaussianCrbcParams:
    """Single-sided channel: power ``P``, relay power ratio ``a``, noises ``N1``, ``N2``."""

    P: float
    a: float
    N1: float
    N2: float

    def __post_init__(self) -> None:
        _check_positive(P=self.P, N1=self.N1, N2=self.N2)
        _check_nonneg(a=self.a)


@dataclass(frozen=True)
class TwoSidedGaussianParams:
    """Two-sided channel with per-user relay power ratios ``a1`` and ``a2``."""

    P: float
    a1: float
    a2: float
    N1: float
    N2: float

    def __post_init__(self) -> None:
        _check_positive(P=self.P, N1=self.N1, N2=self.N2)
        _check_nonneg(a1=self.a1, a2=self.a2)


@dataclass(frozen=True)
class SchemeParams:
    """Free parameters of one scheme evaluation.

    Fields a scheme does not use stay ``None``. ``nc``/``nc1``/``nc2`` hold
    the compression noise actually used (``math.inf`` means no compression).
    """

    alpha: float
    beta: Optional[float] = None
    gamma: Optional[float] = None
    beta1: Optional[float] = None
    beta2: Optional[float] = None
    nc: Optional[float] = None
    nc1: Optional[float] = None
    nc2: Optional[float] = None

    def __post_init__(self) -> None:
        _check_unit(alpha=self.alpha)
        for name in ("beta", "beta1", "beta2"):
            v = getattr(self, name)
            if v is not None:
                _check_unit(**{name: v})
        if self.gamma is not None and not math.isfinite(self.gamma):
            raise InvalidParameterError(f"gamma must be finite, got {self.gamma!r}")
        for name in ("nc", "nc1", "nc2"):
            v = getattr(self, name)
            if v is not None and not v >= 0:
                raise InvalidParameterError(f"{name} must be >= 0, got {v!r}")

    def as_tuple(self) -> tuple:
        """Sort key; ``None`` fields sort first."""
        return tuple(
            (-math.inf if v is None else v)
            for v in (self.alpha, self.beta, self.gamma, self.beta1, self.beta2)
        )


@dataclass(frozen=True)
class EquivocationPair:
    """Achievable ``(re1, re2)`` in bits per channel use.

    ``re2`` is ``None`` when no finite compression noise is feasible and user 2
    actually carries a message; ``re1`` never depends on the relay link in the
    single-sided schemes and is always reported.
    """

    re1: float
    re2: Optional[float]
    feasible: bool


@dataclass(frozen=True)
class QuadraticNcBound:
    """Compression-noise floor from ``theta*nc**2 + eta*nc - omega >= 0``.

    ``theta``, ``eta`` and ``omega`` are the coefficients as displayed for the
    scheme. ``nc_min`` is ``math.inf`` when no finite noise is feasible.
    """

    theta: float
    eta: float
    omega: float
    nc_min: float

    @property
    def feasible(self) -> bool:
        return math.isfinite(self.nc_min)


def _half_log2(x):
    return 0.5 * np.log2(x)


def _clamp(x):
    # the *_arrays cores take clamp=False to expose the raw expressions
    return np.maximum(x, 0.0)


def _quadratic_root(theta, eta, omega):
    """Larger root of ``theta x^2 + eta x - omega``, clamped at 0, vectorised.

    ``theta <= THETA_TOL`` falls back to the linear constraint ``eta x >= omega``;
    an unsatisfiable linear constraint yields ``inf``.
    """
    theta, eta, omega = np.broadcast_arrays(
        np.asarray(theta, float), np.asarray(eta, float), np.asarray(omega, float)
    )
    out = np.empty(theta.shape)
    quad = theta > THETA_TOL
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        disc = eta * eta + 4.0 * theta * omega
        sq = np.sqrt(np.maximum(disc, 0.0))
        # cancellation-free form of (-eta + sq) / (2 theta) for eta >= 0
        root = np.where(eta >= 0, 2.0 * omega / (eta + sq), (-eta + sq) / (2.0 * theta))
        root = np.where(disc < 0, 0.0, root)  # f > 0 everywhere
        root = np.where((eta >= 0) & (eta + sq == 0), 0.0, root)
        lin = np.where(
            eta > 0, omega / eta, np.where(omega <= 0, 0.0, np.inf)
        )
    out[...] = np.where(quad, root, lin)
    return np.maximum(out, 0.0)


def _as_float(x):
    x = np.asarray(x, dtype=float)
    return float(x) if x.ndim == 0 else x


# --------------------------------------------------------------------------
# wiretap baseline and limits


def wiretap_secrecy(P: float, N1: float, N2: float) -> float:
    """Secrecy capacity of the Gaussian wiretap channel with user 2 eavesdropping."""
    _check_positive(P=P, N1=N1, N2=N2)
    return max(0.0, 0.5 * math.log2(1 + P / N1) - 0.5 * math.log2(1 + P / N2))


def corollary1_limit(P: float, N1: float, N2: float) -> float:
    """Largest user-2 equivocation rate as the relay power ratio grows without bound."""
    _check_positive(P=P, N1=N1, N2=N2)
    # log(1 + P/N1 + P/N2) - log(1 + P/N1) folded into one log1p to avoid cancellation
    return 0.5 * math.log1p((P / N2) / (1 + P / N1)) / math.log(2)


def sato_objective(alpha, P: float, N1: float, N2: float):
    """``1/2 log2(((1-alpha)^2 P + alpha^2 N1 + N2) / N2)``: the Sato-type bound for a given
    linear estimator coefficient ``alpha`` of ``X + Z2`` from ``Y1``."""
    alpha = np.asarray(alpha, dtype=float)
    return _as_float(0.5 * np.log1p(((1 - alpha) ** 2 * P + alpha**2 * N1) / N2) / np.log(2))


def gaussian_sato_bound(P: float, N1: float, N2: float) -> float:
    """Sato-type outer bound on user 2's equivocation rate.

    Minimising :func:`sato_objective` over ``alpha`` (optimum ``P/(P+N1)``)
    gives ``1/2 log2(1 + P N1 / (N2 (P + N1)))``. ``P = 0`` is accepted and
    returns 0.
    """
    _check_positive(N1=N1, N2=N2)
    _check_nonneg(P=P)
    if P == 0:
        return 0.0
    return sato_objective(P / (P + N1), P, N1, N2)


def jamming_threshold(P: float, N1: float, N2: float) -> float:
    """Smallest relay power ratio giving user 1 positive secrecy by full jamming."""
    _check_positive(P=P, N1=N1, N2=N2)
    return max(0.0, (N1 - N2) / P)


# --------------------------------------------------------------------------
# vectorised cores


def prop1_min_nc_arrays(alpha, P, a, N1, N2):
    ab = 1 - alpha
    num = N2 * (ab * P + N1) + P * (alpha * ab * P + N1)
    with np.errstate(divide="ignore", over="ignore"):
        return np.where(a > 0, num / np.where(a > 0, a * P, 1.0), np.inf)


def prop1_arrays(alpha, nc, P, a, N1, N2, clamp=True):
    alpha = np.asarray(alpha, float)
    ab = 1 - alpha
    re1 = _half_log2(1 + alpha * P / (ab * P + N1)) - _half_log2(1 + alpha * P / N2)
    re2 = _half_log2(1 + ab * P * (1 / (alpha * P + N2) + 1 / (N1 + nc))) - _half_log2(
        1 + ab * P / N1
    )
    return (_clamp(re1), _clamp(re2)) if clamp else (re1, re2)


def prop3_min_nc_arrays(alpha, beta, P, a, N1, N2):
    ab = 1 - alpha
    jam = a * (1 - beta) * P
    num = ab * P * (alpha * P + N2 + jam) + N1 * (P + N2 + jam)
    den = a * beta * P
    with np.errstate(divide="ignore", over="ignore"):
        return np.where(den > 0, num / np.where(den > 0, den, 1.0), np.inf)


def prop3_arrays(alpha, beta, nc, P, a, N1, N2, clamp=True):
    alpha = np.asarray(alpha, float)
    ab = 1 - alpha
    jam = a * (1 - np.asarray(beta, float)) * P
    re1 = _half_log2(1 + alpha * P / (ab * P + N1)) - _half_log2(1 + alpha * P / (jam + N2))
    re2 = _half_log2(1 + ab * P * (1 / (N1 + nc) + 1 / (alpha * P + N2 + jam))) - _half_log2(
        1 + ab * P / N1
    )
    return (_clamp(re1), _clamp(re2)) if clamp else (re1, re2)


def _dpc_terms(alpha, gamma, P, N1):
    """Shared dirty-paper quantities.

    Returns ``(s, r, first_ratio, binning)`` where ``s = alpha + gamma^2 (1-alpha)``,
    ``r = alpha (1-alpha) (gamma-1)^2 P / s`` (the ``gamma = 0`` limit ``(1-alpha) P``
    is used where ``s`` vanishes), ``first_ratio`` is user 1's SINR term and
    ``binning = I(V1;V2)`` in bits.
    """
    alpha = np.asarray(alpha, float)
    gamma = np.asarray(gamma, float)
    ab = 1 - alpha
    s = alpha + gamma**2 * ab
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        r = np.where(s > 0, alpha * ab * (gamma - 1) ** 2 * P / s, ab * P)
        num1 = (ab * gamma + alpha) ** 2 * P
        den1 = s * N1 + (gamma - 1) ** 2 * alpha * ab * P
        first = np.where(den1 > 0, num1 / den1, 0.0)
        ratio_bin = np.where(alpha > 0, gamma**2 * ab / alpha, np.where(gamma == 0, 0.0, np.inf))
    return s, r, first, _half_log2(1 + ratio_bin)


def _dpc_quadratic(alpha, gamma, P, N1, help_power, eaves_noise):
    """Coefficients for the DPC compression constraint.

    ``help_power`` is ``a P`` (prop2) or ``a beta P`` (prop4); ``eaves_noise`` is
    ``N2`` or ``N2 + a (1-beta) P``. Returns the displayed coefficients and the
    feasible floor, solved on coefficients divided by ``s`` so that the
    ``alpha = gamma = 0`` corner keeps its ``gamma = 0`` limit.
    """
    alpha = np.asarray(alpha, float)
    gamma = np.asarray(gamma, float)
    ab = 1 - alpha
    s, r, _, _ = _dpc_terms(alpha, gamma, P, N1)
    g1 = (1 - gamma) ** 2
    hr = help_power / P  # a or a*beta
    theta_n = hr * P
    eta_n = P * (hr * N1 + g1 * ab * P * (hr + ab)) - (P + eaves_noise) * (N1 + r)
    big = (P + eaves_noise) * (g1 * ab * P + N1) - g1 * ab**2 * P**2
    omega_n = big * (N1 + r)
    nc_min = _quadratic_root(theta_n * np.ones_like(s), eta_n, omega_n)
    return s * theta_n, s * eta_n, s * omega_n, nc_min


def prop2_min_nc_arrays(alpha, gamma, P, a, N1, N2):
    return _dpc_quadratic(alpha, gamma, P, N1, a * P, N2)


def prop2_arrays(alpha, gamma, nc, P, a, N1, N2, clamp=True):
    alpha = np.asarray(alpha, float)
    ab = 1 - alpha
    _, r, first, binning = _dpc_terms(alpha, gamma, P, N1)
    g1 = (1 - np.asarray(gamma, float)) ** 2
    re1 = _half_log2(1 + first) - _half_log2(1 + alpha * P / N2) - binning
    re2 = (
        _half_log2(1 + ab * P / (alpha * P + N2) + ab * g1 * P / (N1 + nc))
        - _half_log2(1 + r / N1)
        - binning
    )
    return (_clamp(re1), _clamp(re2)) if clamp else (re1, re2)


def prop4_min_nc_arrays(alpha, beta, gamma, P, a, N1, N2):
    beta = np.asarray(beta, float)
    return _dpc_quadratic(alpha, gamma, P, N1, a * beta * P, N2 + a * (1 - beta) * P)


def prop4_arrays(alpha, beta, gamma, nc, P, a, N1, N2, clamp=True):
    alpha = np.asarray(alpha, float)
    ab = 1 - alpha
    jam = a * (1 - np.asarray(beta, float)) * P
    _, r, first, binning = _dpc_terms(alpha, gamma, P, N1)
    g1 = (1 - np.asarray(gamma, float)) ** 2
    re1 = _half_log2(1 + first) - _half_log2(1 + alpha * P / (jam + N2)) - binning
    re2 = (
        _half_log2(1 + ab * P / (alpha * P + jam + N2) + ab * g1 * P / (N1 + nc))
        - _half_log2(1 + r / N1)
        - binning
    )
    return (_clamp(re1), _clamp(re2)) if clamp else (re1, re2)


def prop5_min_ncs_arrays(alpha, beta1, beta2, P, a1, a2, N1, N2):
    beta1 = np.asarray(beta1, float)
    beta2 = np.asarray(beta2, float)
    jam1 = a1 * (1 - beta1) * P  # user 1 jamming user 2
    jam2 = a2 * (1 - beta2) * P
    a11 = a1 * beta1 * P
    b11 = P * (P + a1 * beta1 * (P + N1)) - (P + N1 + jam2) * (P + N2 + jam1)
    c11 = (P + N1 + jam2) * (P * N1 + (P + N1) * (N2 + jam1))
    a22 = a2 * beta2 * P
    b22 = P * (P + a2 * beta2 * (P + N2)) - (P + N1 + jam2) * (P + N2 + jam1)
    c22 = (P + N2 + jam1) * (P * N2 + (P + N2) * (N1 + jam2))
    shape = np.broadcast(np.asarray(alpha), beta1, beta2).shape
    a11, b11, c11, a22, b22, c22 = (np.broadcast_to(v, shape) for v in (a11, b11, c11, a22, b22, c22))
    return (a11, b11, c11, _quadratic_root(a11, b11, c11)), (a22, b22, c22, _quadratic_root(a22, b22, c22))


def prop5_arrays(alpha, beta1, beta2, nc1, nc2, P, a1, a2, N1, N2, printed=True, clamp=True):
    """Two-sided rates; ``clamp=False`` skips the positivity operator.

    With ``printed=True`` user 2's expression keeps the displayed ``N2 + a1 b1 P + N2 + Nc1``
    numerator and the ``alpha P`` factor of its leakage term; ``printed=False``
    uses the forms obtained by swapping user indices in user 1's expression.
    """
    alpha = np.asarray(alpha, float)
    ab = 1 - alpha
    A1 = N2 + a1 * (1 - np.asarray(beta1, float)) * P  # user 2's noise plus user 1's jamming
    A2 = N1 + a2 * (1 - np.asarray(beta2, float)) * P
    inv_b2 = 1 / (N2 + nc2)
    inv_b1 = 1 / (N1 + nc1)
    # user 1: two looks (Y1, Yhat2) at V1 with common interference V2
    k1 = 1 + A2 * inv_b2  # (A2 + N2 + Nc2) / (N2 + Nc2)
    sinr1 = alpha * P * k1 / (ab * P * k1 + A2)
    re1 = _half_log2(1 + sinr1) - _half_log2(1 + alpha * P * (1 / A1 + inv_b1))
    if printed:
        k2_num = 1 + (A1 + N2 - N1) * inv_b1  # (N2 + a1 b1 P + N2 + Nc1) / (N1 + Nc1)
        k2_den = 1 + A1 * inv_b1
        sinr2 = ab * P * k2_num / (alpha * P * k2_den + A1)
        leak2 = alpha * P
    else:
        k2 = 1 + A1 * inv_b1
        sinr2 = ab * P * k2 / (alpha * P * k2 + A1)
        leak2 = ab * P
    re2 = _half_log2(1 + sinr2) - _half_log2(1 + leak2 * (1 / A2 + inv_b2))
    return (_clamp(re1), _clamp(re2)) if clamp else (re1, re2)


# --------------------------------------------------------------------------
# scalar API


def _resolve(nc, nc_min, alpha_bar):
    """Pick the compression noise and feasibility flag for a scalar evaluation.

    Returns ``(nc_used, feasible, re2_available)``.
    """
    if nc is None:
        if math.isfinite(nc_min):
            return nc_min, True, True
        # no finite floor: only harmless when user 2 has nothing to send
        return math.inf, alpha_bar == 0, alpha_bar == 0
    if not nc >= 0:
        raise InvalidParameterError(f"nc must be >= 0, got {nc!r}")
    ok = alpha_bar == 0 or nc >= nc_min - 1e-12 * max(1.0, abs(nc_min))
    return nc, ok, True


def _pair(re1, re2, feasible, available):
    return EquivocationPair(float(re1), float(re2) if available else None, bool(feasible))


def prop1_min_nc(alpha: float, params: GaussianCrbcParams) -> float:
    """Smallest compression noise the relay link supports under independent inputs.

    Raises:
        InfeasibleCompressionError: if ``params.a == 0``.
    """
    _check_unit(alpha=alpha)
    if params.a == 0:
        raise InfeasibleCompressionError("relay power ratio a = 0 leaves no cooperative link")
    return float(prop1_min_nc_arrays(alpha, params.P, params.a, params.N1, params.N2))


def prop1_rates(alpha: float, nc: Optional[float], params: GaussianCrbcParams) -> EquivocationPair:
    """Independent-input scheme. ``nc=None`` uses the feasible floor."""
    _check_unit(alpha=alpha)
    p = params
    nc_min = float(prop1_min_nc_arrays(alpha, p.P, p.a, p.N1, p.N2))
    nc_used, feasible, avail = _resolve(nc, nc_min, 1 - alpha)
    re1, re2 = prop1_arrays(alpha, nc_used, p.P, p.a, p.N1, p.N2)
    return _pair(re1, re2, feasible, avail)


def prop2_min_nc(alpha: float, gamma: float, params: GaussianCrbcParams) -> QuadraticNcBound:
    _check_unit(alpha=alpha)
    p = params
    th, eta, om, nc_min = prop2_min_nc_arrays(alpha, gamma, p.P, p.a, p.N1, p.N2)
    return QuadraticNcBound(float(th), float(eta), float(om), float(nc_min))


def prop2_rates(
    alpha: float, gamma: float, nc: Optional[float], params: GaussianCrbcParams
) -> EquivocationPair:
    """Dirty-paper scheme for user 1 with coefficient ``gamma``."""
    _check_unit(alpha=alpha)
    p = params
    nc_min = prop2_min_nc(alpha, gamma, p).nc_min
    nc_used, feasible, avail = _resolve(nc, nc_min, 1 - alpha)
    re1, re2 = prop2_arrays(alpha, gamma, nc_used, p.P, p.a, p.N1, p.N2)
    return _pair(re1, re2, feasible, avail)


def prop3_min_nc(alpha: float, beta: float, params: GaussianCrbcParams) -> float:
    """Compression floor of the jam-and-relay scheme.

    Raises:
        InfeasibleCompressionError: if no power is left for help (``a*beta == 0``).
    """
    _check_unit(alpha=alpha, beta=beta)
    if params.a * beta == 0:
        raise InfeasibleCompressionError("no relay power devoted to help (a*beta = 0)")
    p = params
    return float(prop3_min_nc_arrays(alpha, beta, p.P, p.a, p.N1, p.N2))


def prop3_rates(
    alpha: float, beta: float, nc: Optional[float], params: GaussianCrbcParams
) -> EquivocationPair:
    """Jam-and-relay with independent inputs; ``beta`` is the fraction of relay power that helps.

    ``beta = 1`` is pure relaying and ``beta = 0`` pure jamming.
    """
    _check_unit(alpha=alpha, beta=beta)
    p = params
    nc_min = float(prop3_min_nc_arrays(alpha, beta, p.P, p.a, p.N1, p.N2))
    nc_used, feasible, avail = _resolve(nc, nc_min, 1 - alpha)
    re1, re2 = prop3_arrays(alpha, beta, nc_used, p.P, p.a, p.N1, p.N2)
    return _pair(re1, re2, feasible, avail)


def prop4_min_nc(alpha: float, beta: float, gamma: float, params: GaussianCrbcParams) -> QuadraticNcBound:
    _check_unit(alpha=alpha, beta=beta)
    p = params
    th, eta, om, nc_min = prop4_min_nc_arrays(alpha, beta, gamma, p.P, p.a, p.N1, p.N2)
    return QuadraticNcBound(float(th), float(eta), float(om), float(nc_min))


def prop4_rates(
    alpha: float, beta: float, gamma: float, nc: Optional[float], params: GaussianCrbcParams
) -> EquivocationPair:
    """Dirty-paper coding combined with jamming and relaying."""
    _check_unit(alpha=alpha, beta=beta)
    p = params
    nc_min = prop4_min_nc(alpha, beta, gamma, p).nc_min
    nc_used, feasible, avail = _resolve(nc, nc_min, 1 - alpha)
    re1, re2 = prop4_arrays(alpha, beta, gamma, nc_used, p.P, p.a, p.N1, p.N2)
    return _pair(re1, re2, feasible, avail)


def prop5_min_ncs(
    alpha: float, beta1: float, beta2: float, params2: TwoSidedGaussianParams
) -> tuple[QuadraticNcBound, QuadraticNcBound]:
    """Compression floors for both relay links of the two-sided scheme."""
    _check_unit(alpha=alpha, beta1=beta1, beta2=beta2)
    p = params2
    q1, q2 = prop5_min_ncs_arrays(alpha, beta1, beta2, p.P, p.a1, p.a2, p.N1, p.N2)
    return tuple(QuadraticNcBound(*(float(v) for v in q)) for q in (q1, q2))  # type: ignore[return-value]


def prop5_rates(
    alpha: float,
    beta1: float,
    beta2: float,
    nc1: Optional[float],
    nc2: Optional[float],
    params2: TwoSidedGaussianParams,
    *,
    printed: bool = True,
) -> EquivocationPair:
    """Two-sided jam-and-relay scheme.

    Both rates depend on both links, so an infinite floor is evaluated in the
    no-compression limit and flagged infeasible rather than dropped.
    """
    _check_unit(alpha=alpha, beta1=beta1, beta2=beta2)
    p = params2
    q1, q2 = prop5_min_ncs(alpha, beta1, beta2, p)
    feasible = True
    used = []
    for nc, q in ((nc1, q1), (nc2, q2)):
        if nc is None:
            used.append(q.nc_min)
            feasible &= q.feasible
        else:
            if not nc >= 0:
                raise InvalidParameterError(f"compression noise must be >= 0, got {nc!r}")
            used.append(nc)
            feasible &= nc >= q.nc_min - 1e-12 * max(1.0, abs(q.nc_min))
    re1, re2 = prop5_arrays(alpha, beta1, beta2, used[0], used[1], p.P, p.a1, p.a2, p.N1, p.N2, printed)
    return EquivocationPair(float(re1), float(re2), bool(feasible))
