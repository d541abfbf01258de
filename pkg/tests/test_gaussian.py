import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from crbc import gaussian as g
from crbc.gaussian import (
    GaussianCrbcParams,
    InfeasibleCompressionError,
    InvalidParameterError,
    TwoSidedGaussianParams,
)

ANCHOR = GaussianCrbcParams(P=8, a=100, N1=1, N2=2)

# frozen from tests/oracle.py (50-digit mpmath)
PROP1_HALF_NCMIN = 0.0425
PROP1_HALF_RE2 = 0.069223384984572170085905337792956365399556242720079168
PROP2_NCMIN = 0.025708255319833058626350717410223201381665477155262
PROP2_RE2 = 0.11507961194880266184751732822158293926823217185587047
PROP4_NCMIN = 5.8344878847980170788092019448144248885422827309794
PROP4_RE1 = 0.46352085183477721699512328973660157424800039222225091
PROP5_NCMIN = 0.0325
LIMIT_8_1_2 = 0.26525735834938989874466738318053085805440379320304


def close(x, y, rel=1e-9, abs_=1e-12):
    return math.isclose(float(x), float(y), rel_tol=rel, abs_tol=abs_)


positive = st.floats(0.05, 50.0)
unit = st.floats(0.0, 1.0)


def params_strategy():
    return st.builds(GaussianCrbcParams, P=positive, a=st.floats(0.05, 500.0), N1=positive, N2=positive)


# --------------------------------------------------------------------------
# closed forms


class TestClosedForms:
    def test_wiretap_anchor(self):
        assert g.wiretap_secrecy(8, 1, 2) == pytest.approx(0.424, abs=0.005)
        assert close(g.wiretap_secrecy(8, 1, 2), oracle.wiretap(8, 1, 2))

    @pytest.mark.parametrize("N1,N2", [(2, 2), (2, 1)])
    def test_wiretap_zero_when_eavesdropper_not_weaker(self, N1, N2):
        assert g.wiretap_secrecy(8, N1, N2) == 0.0

    def test_limit_value(self):
        assert close(g.corollary1_limit(8, 1, 2), LIMIT_8_1_2, rel=1e-14)
        assert g.corollary1_limit(8, 1, 2) == pytest.approx(0.26526, abs=1e-4)

    def test_limit_vanishes(self):
        assert g.corollary1_limit(1e-9, 1, 2) < 1e-9
        assert g.corollary1_limit(8, 1, 1e9) < 1e-8

    def test_sato_matches_numeric_minimisation(self):
        for P, N1, N2 in [(8, 1, 2), (0.3, 4, 0.2), (50, 0.1, 7)]:
            assert close(g.gaussian_sato_bound(P, N1, N2), oracle.sato_by_search(P, N1, N2), rel=1e-13)

    def test_sato_zero_power(self):
        assert g.gaussian_sato_bound(0, 1, 2) == 0.0

    def test_sato_grid_argmin(self):
        P, N1, N2 = 8, 1, 2
        grid = np.linspace(0, 1, 2001)
        vals = g.sato_objective(grid, P, N1, N2)
        assert abs(grid[np.argmin(vals)] - P / (P + N1)) <= 1 / 2000
        assert vals.min() >= g.gaussian_sato_bound(P, N1, N2) - 1e-15

    @given(positive, positive, positive)
    def test_limit_equals_sato(self, P, N1, N2):
        assert close(g.corollary1_limit(P, N1, N2), g.gaussian_sato_bound(P, N1, N2), rel=1e-12)

    @pytest.mark.parametrize("args,expected", [((8, 2, 1), 0.125), ((8, 1, 2), 0.0), ((8, 2, 2), 0.0)])
    def test_jamming_threshold(self, args, expected):
        assert g.jamming_threshold(*args) == expected

    @pytest.mark.parametrize("fn", [g.wiretap_secrecy, g.corollary1_limit, g.jamming_threshold])
    def test_rejects_bad_noise(self, fn):
        with pytest.raises(InvalidParameterError):
            fn(8, -1, 2)


# --------------------------------------------------------------------------
# independent inputs


class TestProp1:
    def test_min_nc_examples(self):
        assert g.prop1_min_nc(0, ANCHOR) == pytest.approx((2 * 9 + 8 * 1) / 800, rel=1e-15)
        assert g.prop1_min_nc(1, ANCHOR) == pytest.approx((2 * 1 + 8 * 1) / 800, rel=1e-15)

    def test_zero_relay_power_is_infeasible(self):
        with pytest.raises(InfeasibleCompressionError):
            g.prop1_min_nc(0, GaussianCrbcParams(P=8, a=0, N1=1, N2=2))

    def test_pure_relay_anchor(self):
        r = g.prop1_rates(0, 0.0325, ANCHOR)
        assert r.re1 == 0 and r.feasible
        assert r.re2 == pytest.approx(0.2511, abs=5e-4)

    def test_user1_only(self):
        r = g.prop1_rates(1, 0.5, ANCHOR)
        assert close(r.re1, g.wiretap_secrecy(8, 1, 2), rel=1e-13) and r.re2 == 0

    def test_half_split_against_oracle(self):
        assert close(g.prop1_min_nc(0.5, ANCHOR), PROP1_HALF_NCMIN, rel=1e-14)
        r = g.prop1_rates(0.5, None, ANCHOR)
        assert r.re1 == 0
        assert close(r.re2, PROP1_HALF_RE2, rel=1e-12)

    def test_below_floor_flagged(self):
        assert not g.prop1_rates(0.5, 0.01, ANCHOR).feasible

    @settings(max_examples=200)
    @given(params_strategy(), unit, st.floats(0, 20))
    def test_matches_oracle(self, p, alpha, extra):
        nc = g.prop1_min_nc(alpha, p) + extra
        re1, re2 = g.prop1_arrays(alpha, nc, p.P, p.a, p.N1, p.N2, clamp=False)
        o1, o2, onc = oracle.prop1(alpha, nc, p.P, p.a, p.N1, p.N2)
        assert close(re1, o1, abs_=1e-12) and close(re2, o2, abs_=1e-12)
        assert close(g.prop1_min_nc(alpha, p), onc, rel=1e-13)


# --------------------------------------------------------------------------
# dirty-paper coding


class TestProp2:
    def test_gamma_zero_reduces_to_prop1(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            alpha, nc = rng.uniform(0, 1), rng.uniform(0, 3)
            x, y = g.prop2_rates(alpha, 0, nc, ANCHOR), g.prop1_rates(alpha, nc, ANCHOR)
            assert close(x.re1, y.re1, rel=1e-12) and close(x.re2, y.re2, rel=1e-12)

    def test_gamma_zero_floor_equals_prop1_floor(self):
        for alpha in np.linspace(0, 1, 41):
            for p in (ANCHOR, GaussianCrbcParams(P=0.5, a=2, N1=3, N2=0.4)):
                q = g.prop2_min_nc(alpha, 0, p)
                assert close(q.nc_min, g.prop1_min_nc(alpha, p), rel=1e-10, abs_=1e-14)

    def test_alpha_one_gamma_zero(self):
        q = g.prop2_min_nc(1, 0, ANCHOR)
        assert q.feasible and q.nc_min >= 0
        assert g.prop2_rates(1, 0, None, ANCHOR).re2 == 0

    def test_zero_relay_power_degenerates(self):
        q = g.prop2_min_nc(0.5, 0.3, GaussianCrbcParams(P=8, a=0, N1=1, N2=2))
        assert q.theta == 0
        assert not q.feasible

    def test_against_oracle(self):
        q = g.prop2_min_nc(0.5, 0.3, ANCHOR)
        assert close(q.nc_min, PROP2_NCMIN, rel=1e-12)
        r = g.prop2_rates(0.5, 0.3, None, ANCHOR)
        assert r.re1 == 0
        assert close(r.re2, PROP2_RE2, rel=1e-12)

    @settings(max_examples=200)
    @given(params_strategy(), st.floats(0.01, 1.0), st.floats(-2, 2), st.floats(0, 20))
    def test_matches_oracle(self, p, alpha, gamma, extra):
        q = g.prop2_min_nc(alpha, gamma, p)
        o1, o2, onc = oracle.prop2(alpha, gamma, 0, p.P, p.a, p.N1, p.N2)
        assert close(q.nc_min, onc, rel=1e-8, abs_=1e-9 * (1 + float(onc)))
        nc = q.nc_min + extra
        re1, re2 = g.prop2_arrays(alpha, gamma, nc, p.P, p.a, p.N1, p.N2, clamp=False)
        o1, o2, _ = oracle.prop2(alpha, gamma, nc, p.P, p.a, p.N1, p.N2)
        assert close(re1, o1, abs_=1e-11) and close(re2, o2, abs_=1e-11)

    @settings(max_examples=200)
    @given(params_strategy(), st.floats(0.0, 0.99, allow_subnormal=False), st.floats(-2, 2))
    def test_floor_satisfies_printed_quadratic(self, p, alpha, gamma):
        q = g.prop2_min_nc(alpha, gamma, p)
        if q.nc_min > 0:
            val = q.theta * q.nc_min**2 + q.eta * q.nc_min - q.omega
            scale = q.theta * q.nc_min**2 + abs(q.eta) * q.nc_min + abs(q.omega)
            assert abs(val) <= 1e-9 * scale


# --------------------------------------------------------------------------
# jamming


class TestProp3:
    def test_full_jamming_anchor(self):
        r = g.prop3_rates(1, 0, None, ANCHOR)
        assert r.re1 == pytest.approx(1.578, abs=0.01)
        assert r.re2 == 0 and r.feasible

    def test_beta_one_is_prop1(self):
        for alpha in np.linspace(0, 1, 21):
            x, y = g.prop3_rates(alpha, 1, 0.7, ANCHOR), g.prop1_rates(alpha, 0.7, ANCHOR)
            assert close(x.re1, y.re1, rel=1e-13) and close(x.re2, y.re2, rel=1e-13)
            assert close(g.prop3_min_nc(alpha, 1, ANCHOR), g.prop1_min_nc(alpha, ANCHOR), rel=1e-13)

    def test_no_message_for_user1(self):
        assert g.prop3_rates(0, 0.4, None, ANCHOR).re1 == 0

    def test_no_help_power_raises(self):
        with pytest.raises(InfeasibleCompressionError):
            g.prop3_min_nc(0.5, 0, ANCHOR)

    def test_pure_jamming_with_user2_message_has_no_re2(self):
        r = g.prop3_rates(0.5, 0, None, ANCHOR)
        assert r.re2 is None and not r.feasible

    def test_threshold(self):
        for a, positive_rate in [(0.12, False), (0.125, False), (0.13, True)]:
            r = g.prop3_rates(1, 0, None, GaussianCrbcParams(P=8, a=a, N1=2, N2=1))
            assert (r.re1 > 0) is positive_rate

    @settings(max_examples=200)
    @given(params_strategy(), unit, st.floats(0.01, 1.0), st.floats(0, 20))
    def test_matches_oracle(self, p, alpha, beta, extra):
        nc = g.prop3_min_nc(alpha, beta, p) + extra
        re1, re2 = g.prop3_arrays(alpha, beta, nc, p.P, p.a, p.N1, p.N2, clamp=False)
        o1, o2, onc = oracle.prop3(alpha, beta, nc, p.P, p.a, p.N1, p.N2)
        assert close(re1, o1, abs_=1e-12) and close(re2, o2, abs_=1e-12)
        assert close(g.prop3_min_nc(alpha, beta, p), onc, rel=1e-13)


class TestProp4:
    def test_reductions(self):
        rng = np.random.default_rng(1)
        for _ in range(200):
            alpha, beta, gamma, nc = rng.uniform(0, 1), rng.uniform(0.05, 1), rng.uniform(-2, 2), rng.uniform(0, 3)
            a = g.prop4_rates(alpha, 1, gamma, nc, ANCHOR)
            b = g.prop2_rates(alpha, gamma, nc, ANCHOR)
            assert close(a.re1, b.re1, rel=1e-12) and close(a.re2, b.re2, rel=1e-12)
            c = g.prop4_rates(alpha, beta, 0, nc, ANCHOR)
            d = g.prop3_rates(alpha, beta, nc, ANCHOR)
            assert close(c.re1, d.re1, rel=1e-12) and close(c.re2, d.re2, rel=1e-12)

    def test_gamma_zero_floor_is_prop3_floor(self):
        for alpha in np.linspace(0, 1, 11):
            for beta in (0.2, 0.7, 1.0):
                q = g.prop4_min_nc(alpha, beta, 0, ANCHOR)
                assert close(q.nc_min, g.prop3_min_nc(alpha, beta, ANCHOR), rel=1e-10)

    def test_against_oracle(self):
        p = GaussianCrbcParams(P=8, a=4, N1=2, N2=1)
        q = g.prop4_min_nc(0.6, 0.5, 0.2, p)
        assert close(q.nc_min, PROP4_NCMIN, rel=1e-12)
        r = g.prop4_rates(0.6, 0.5, 0.2, None, p)
        assert close(r.re1, PROP4_RE1, rel=1e-12)
        assert r.re2 == 0

    @settings(max_examples=200)
    @given(params_strategy(), st.floats(0.01, 1.0), st.floats(0.01, 1.0), st.floats(-2, 2), st.floats(0, 20))
    def test_matches_oracle(self, p, alpha, beta, gamma, extra):
        q = g.prop4_min_nc(alpha, beta, gamma, p)
        *_, onc = oracle.prop4(alpha, beta, gamma, 0, p.P, p.a, p.N1, p.N2)
        assert close(q.nc_min, onc, rel=1e-8, abs_=1e-9 * (1 + float(onc)))
        nc = q.nc_min + extra
        re1, re2 = g.prop4_arrays(alpha, beta, gamma, nc, p.P, p.a, p.N1, p.N2, clamp=False)
        o1, o2, _ = oracle.prop4(alpha, beta, gamma, nc, p.P, p.a, p.N1, p.N2)
        assert close(re1, o1, abs_=1e-11) and close(re2, o2, abs_=1e-11)


class TestProp5:
    P2 = TwoSidedGaussianParams(P=8, a1=100, a2=100, N1=1, N2=2)

    def test_against_oracle(self):
        q1, q2 = g.prop5_min_ncs(0.5, 1, 1, self.P2)
        assert close(q1.nc_min, PROP5_NCMIN, rel=1e-13) and close(q2.nc_min, PROP5_NCMIN, rel=1e-13)
        r = g.prop5_rates(0.5, 1, 1, None, None, self.P2)
        assert r.feasible and r.re1 == 0 and r.re2 == 0

    def test_alpha_one_user2_clamps(self):
        r = g.prop5_rates(1, 0.5, 0.5, None, None, self.P2)
        assert r.re2 == 0

    def test_no_relay_power(self):
        q1, q2 = g.prop5_min_ncs(0.5, 0.5, 0.5, TwoSidedGaussianParams(P=8, a1=0, a2=0, N1=1, N2=2))
        assert not q1.feasible and not q2.feasible
        assert not g.prop5_rates(0.5, 0.5, 0.5, None, None, TwoSidedGaussianParams(P=8, a1=0, a2=0, N1=1, N2=2)).feasible

    @settings(max_examples=200)
    @given(
        st.builds(TwoSidedGaussianParams, P=positive, a1=st.floats(0.05, 500), a2=st.floats(0.05, 500), N1=positive, N2=positive),
        unit, st.floats(0.01, 1), st.floats(0.01, 1), st.floats(0, 10), st.floats(0, 10),
    )
    def test_matches_printed_oracle(self, p, alpha, b1, b2, e1, e2):
        q1, q2 = g.prop5_min_ncs(alpha, b1, b2, p)
        *_, o1, o2 = oracle.prop5(alpha, b1, b2, 0, 0, p.P, p.a1, p.a2, p.N1, p.N2)
        assert close(q1.nc_min, o1, rel=1e-8, abs_=1e-9 * (1 + float(o1)))
        assert close(q2.nc_min, o2, rel=1e-8, abs_=1e-9 * (1 + float(o2)))
        n1, n2 = q1.nc_min + e1, q2.nc_min + e2
        re1, re2 = g.prop5_arrays(alpha, b1, b2, n1, n2, p.P, p.a1, p.a2, p.N1, p.N2, clamp=False)
        r1, r2, *_ = oracle.prop5(alpha, b1, b2, n1, n2, p.P, p.a1, p.a2, p.N1, p.N2)
        assert close(re1, r1, abs_=1e-11) and close(re2, r2, abs_=1e-11)

    def test_corrected_form_is_symmetric(self):
        # swapping the users (noises, relay powers, split) swaps the rates
        p = TwoSidedGaussianParams(P=5, a1=3, a2=7, N1=1.5, N2=0.7)
        q = TwoSidedGaussianParams(P=5, a1=7, a2=3, N1=0.7, N2=1.5)
        x = g.prop5_arrays(0.3, 0.4, 0.8, 0.5, 1.2, p.P, p.a1, p.a2, p.N1, p.N2, printed=False, clamp=False)
        y = g.prop5_arrays(0.7, 0.8, 0.4, 1.2, 0.5, q.P, q.a1, q.a2, q.N1, q.N2, printed=False, clamp=False)
        assert close(x[0], y[1], rel=1e-12) and close(x[1], y[0], rel=1e-12)


# --------------------------------------------------------------------------
# shared invariants


class TestInvariants:
    @settings(max_examples=150)
    @given(params_strategy(), unit, st.floats(0, 1), st.floats(-3, 3))
    def test_rates_finite_and_nonnegative(self, p, alpha, beta, gamma):
        for r in (
            g.prop1_rates(alpha, None, p),
            g.prop2_rates(alpha, gamma, None, p),
            g.prop3_rates(alpha, beta, None, p),
            g.prop4_rates(alpha, beta, gamma, None, p),
        ):
            assert math.isfinite(r.re1) and r.re1 >= 0
            assert r.re2 is None or (math.isfinite(r.re2) and r.re2 >= 0)

    @settings(max_examples=150)
    @given(params_strategy(), st.floats(0.01, 0.95), st.floats(-2, 2).filter(lambda x: abs(x - 1) > 1e-3))
    def test_re2_decreasing_in_nc(self, p, alpha, gamma):
        # gamma = 1 leaves the compressed observation without user-2 signal: re2 is flat in nc
        lo = g.prop2_min_nc(alpha, gamma, p).nc_min
        nc = np.linspace(lo, lo + 10, 50)
        re2 = g.prop2_arrays(alpha, gamma, nc, p.P, p.a, p.N1, p.N2, clamp=False)[1]
        assert np.all(np.diff(re2) < 0)

    @settings(max_examples=150)
    @given(params_strategy(), unit, st.floats(-2, 2))
    def test_prop2_below_sato(self, p, alpha, gamma):
        r = g.prop2_rates(alpha, gamma, None, p)
        if r.re2 is not None:
            assert r.re2 <= g.gaussian_sato_bound(p.P, p.N1, p.N2) + 1e-9

    def test_re2_flat_in_nc_at_unit_gamma(self):
        re2 = g.prop2_arrays(0.4, 1.0, np.array([0.1, 1.0, 10.0]), 8, 100, 1, 2, clamp=False)[1]
        assert np.ptp(re2) == 0

    def test_vectorised_matches_scalar(self):
        alpha = np.linspace(0, 1, 11)
        nc = g.prop1_min_nc_arrays(alpha, 8, 100, 1, 2)
        re1, re2 = g.prop1_arrays(alpha, nc, 8, 100, 1, 2)
        for i, al in enumerate(alpha):
            r = g.prop1_rates(float(al), None, ANCHOR)
            assert r.re1 == re1[i] and r.re2 == re2[i]


@pytest.mark.parametrize(
    "kwargs",
    [dict(P=0, a=1, N1=1, N2=1), dict(P=1, a=-1, N1=1, N2=1), dict(P=1, a=1, N1=0, N2=1), dict(P=1, a=1, N1=1, N2=float("nan"))],
)
def test_params_validation(kwargs):
    with pytest.raises(InvalidParameterError):
        GaussianCrbcParams(**kwargs)


def test_alpha_out_of_range():
    with pytest.raises(InvalidParameterError):
        g.prop1_rates(1.5, None, ANCHOR)
