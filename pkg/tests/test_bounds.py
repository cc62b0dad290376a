import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bb84z import bounds
from bb84z.bounds import BoundParams


def h2_nats_ref(x):
    return -x * math.log(x) - (1 - x) * math.log1p(-x)


def params(**kw):
    base = dict(n=1000, n_z=1000, n_x=1000, p_az=0.05, p_ax=0.05, eps_sec=0.05, eps_rel=0.05, R=0.1)
    base.update(kw)
    return BoundParams(**base)


class TestH2:
    def test_endpoints(self):
        assert bounds.h2(0.0) == 0.0 and bounds.h2(1.0) == 0.0
        assert bounds.h2(0.5) == 1.0

    def test_reference_value(self):
        assert bounds.h2(0.1512) == pytest.approx(0.6129, abs=1e-4)
        assert bounds.h2(0.1512) == pytest.approx(h2_nats_ref(0.1512) / math.log(2), abs=1e-14)

    def test_threshold_identity(self):
        # 0.1512 = 2 * 0.0756, so the two entropies nearly fill one bit
        assert bounds.h2(0.1512) + bounds.h2(0.0756) == pytest.approx(1.0, abs=1e-3)

    def test_domain(self):
        with pytest.raises(ValueError):
            bounds.h2(1.01)

    @given(st.floats(0.0, 1.0))
    def test_symmetric(self, x):
        assert bounds.h2(x) == pytest.approx(bounds.h2(1.0 - x), abs=1e-12)

    @given(st.floats(0.0, 1.0), st.floats(0.0, 1.0), st.floats(0.0, 1.0))
    def test_concave(self, a, b, t):
        mid = t * a + (1 - t) * b
        assert bounds.h2(mid) >= t * bounds.h2(a) + (1 - t) * bounds.h2(b) - 1e-12


class TestClosedForms:
    @pytest.mark.parametrize("m,tail,expected", [(1, 0.0, 0.0), (1, 0.5, math.sqrt(2)), (3, 0.25, 3.0)])
    def test_prop1(self, m, tail, expected):
        assert bounds.prop1_bound(m, tail) == pytest.approx(expected, abs=1e-15)

    def test_security_example(self):
        got = bounds.security_exponent_bound(params())
        assert got == pytest.approx(200 * math.exp(-0.625), rel=1e-12)
        assert got == pytest.approx(107.05, abs=0.01)

    def test_security_small_eps(self):
        assert bounds.security_exponent_bound(params(eps_sec=1e-12)) == pytest.approx(200, rel=1e-9)

    def test_reliability_example(self):
        assert bounds.reliability_bound(params()) == pytest.approx(math.exp(-1.25), rel=1e-12)
        assert bounds.reliability_bound(params()) == pytest.approx(0.2865, abs=1e-4)

    def test_reliability_decreases_with_n(self):
        values = [bounds.reliability_bound(params(n=n, n_z=n)) for n in (10, 100, 1000)]
        assert values == sorted(values, reverse=True)

    def test_reliability_small_eps(self):
        assert bounds.reliability_bound(params(eps_rel=1e-12)) == pytest.approx(1.0)

    def test_delta(self):
        assert params(p_ax=0.1, eps_sec=0.02).delta == pytest.approx(0.24)

    @pytest.mark.parametrize("kw", [dict(n=0), dict(p_az=0.5), dict(eps_sec=0.0), dict(R=0.0), dict(p_ax=0.46, eps_sec=0.05)])
    def test_invalid_params(self, kw):
        with pytest.raises(ValueError):
            params(**kw)


class TestKeyRate:
    def test_noiseless(self):
        assert bounds.secret_rate(0.0, 0.0) == 1.0

    def test_at_threshold(self):
        assert bounds.secret_rate(0.0756, 0.0756) == pytest.approx(0.0, abs=1e-3)

    def test_above_threshold(self):
        assert bounds.secret_rate(0.10, 0.10) < 0

    def test_finite_size_penalty(self):
        p = params(n=10**6, n_z=10**6, n_x=10**6, p_az=0.02, p_ax=0.02, eps_sec=0.001, eps_rel=0.001)
        assert 0 < bounds.key_rate(p) < bounds.secret_rate(0.02, 0.02)

    @pytest.mark.parametrize("p_az", [0.0, 0.03, 0.0756, 0.2, 0.4])
    def test_zero_on_curve_positive_below(self, p_az):
        p_ax = bounds.max_p_ax(p_az)
        assert bounds.secret_rate(p_az, p_ax) == pytest.approx(0.0, abs=1e-6)
        if p_ax > 0.001:
            assert bounds.secret_rate(p_az, p_ax - 0.001) > 0


class TestCurve:
    def test_end_points(self):
        assert bounds.max_p_ax(0.0) == pytest.approx(0.25, abs=1e-6)
        assert bounds.max_p_ax(0.5) == pytest.approx(0.0, abs=1e-6)
        assert bounds.max_p_az(0.0) == pytest.approx(0.5, abs=1e-6)

    def test_symmetric_point(self):
        p = bounds.symmetric_threshold()
        assert 0.0755 < p < 0.0757
        assert bounds.h2(2 * p) + bounds.h2(p) == pytest.approx(1.0, abs=1e-8)
        assert bounds.max_p_ax(p) == pytest.approx(p, abs=1e-8)
        assert bounds.max_p_ax(0.0756) == pytest.approx(0.0756, abs=5e-4)

    def test_monotone(self):
        column = [x for _, x in bounds.threshold_curve(bounds.default_grid())]
        assert all(a >= b for a, b in zip(column, column[1:]))

    def test_inverse_pairs(self):
        for z in (0.01, 0.1, 0.3):
            assert bounds.max_p_az(bounds.max_p_ax(z)) == pytest.approx(z, abs=1e-6)

    def test_finite_size_curve_lies_below(self):
        grid = bounds.default_grid(11)
        asym = bounds.threshold_curve(grid)
        finite = bounds.threshold_curve(grid, eps_sec=0.01, eps_rel=0.01, inv_n=0.001)
        assert all(f[1] <= a[1] for f, a in zip(finite, asym))

    def test_csv(self):
        text = bounds.curve_csv(bounds.threshold_curve([0.0, 0.25]))
        lines = text.splitlines()
        assert lines[0] == "p_az,p_ax_max"
        assert lines[1] == "0.000000000,0.250000000"

    def test_clamp(self):
        assert bounds.clamp(107.0) == 1.0 and bounds.clamp(-0.1) == 0.0
