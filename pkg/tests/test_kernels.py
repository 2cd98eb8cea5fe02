"""Numeric kernels: compiled/pure parity and oracle agreement.

The package ships the same nine kernels twice (Cython extension and pure
Python). Parity here means bit-identical floats, not approximate agreement,
so the scoring pipeline gives one answer regardless of which implementation
the import picked.
"""

import math
import struct

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ecodrive.kernels import _pure

try:
    from ecodrive.kernels import _core
except ImportError:
    _core = None

needs_core = pytest.mark.skipif(
    _core is None, reason="compiled kernels not built"
)

finite = st.floats(allow_nan=False, allow_infinity=False, width=64)
speeds = st.lists(st.floats(0, 60, allow_nan=False), min_size=2, max_size=60)


def bits(x):
    return struct.pack("<d", float(x))


def bits_list(xs):
    return [bits(x) for x in xs]


@st.composite
def sigmoid_args(draw):
    a4 = draw(st.floats(0.5, 5))
    a2 = draw(st.floats(0, 0.3))
    a1 = draw(st.floats(0.01, (1 - a2) * a4))
    a3 = draw(st.floats(0.001, 10))
    x0 = draw(st.floats(-1000, 1000))
    x = draw(st.floats(-1e6, 1e6))
    return x, a1, a2, a3, a4, x0


@needs_core
class TestParity:
    """Every kernel must return bit-identical results from both builds."""

    @given(sigmoid_args())
    @settings(max_examples=300, deadline=None)
    def test_sigmoid(self, args):
        assert bits(_pure.sigmoid(*args)) == bits(_core.sigmoid(*args))

    @given(st.lists(st.floats(0, 9000, allow_nan=False), max_size=80))
    @settings(max_examples=200, deadline=None)
    def test_population_variance(self, values):
        assert bits(_pure.population_variance(values)) == bits(
            _core.population_variance(values)
        )

    @given(st.lists(st.floats(-50, 50, allow_nan=False), min_size=1, max_size=60),
           st.floats(0, 100, allow_nan=False))
    @settings(max_examples=200, deadline=None)
    def test_percentile(self, values, q):
        assert bits(_pure.percentile(values, q)) == bits(_core.percentile(values, q))

    @given(
        st.lists(st.floats(0, 10, allow_nan=False), max_size=40),
        st.lists(st.floats(0.1, 9.9, allow_nan=False), min_size=1, max_size=5,
                 unique=True).map(sorted),
        st.data(),
    )
    @settings(max_examples=200, deadline=None)
    def test_histogram_mean_weight(self, values, edges, data):
        weights = data.draw(
            st.lists(st.floats(0, 1, allow_nan=False),
                     min_size=len(edges) + 1, max_size=len(edges) + 1)
        )
        assert bits(_pure.histogram_mean_weight(values, edges, weights)) == bits(
            _core.histogram_mean_weight(values, edges, weights)
        )

    @given(speeds, st.data())
    @settings(max_examples=200, deadline=None)
    def test_braking_event_peaks(self, v, data):
        brake = data.draw(
            st.lists(st.integers(0, 1), min_size=len(v), max_size=len(v))
        )
        p1, d1 = _pure.braking_event_peaks(v, brake, 1.0)
        p2, d2 = _core.braking_event_peaks(v, brake, 1.0)
        assert bits_list(p1) == bits_list(p2)
        assert bits_list(d1) == bits_list(d2)

    @given(st.lists(st.floats(-8, 8, allow_nan=False), max_size=60),
           st.floats(0.5, 5, allow_nan=False))
    @settings(max_examples=200, deadline=None)
    def test_event_runs(self, accels, threshold):
        assert _pure.event_runs_at_or_above(accels, threshold) == \
            _core.event_runs_at_or_above(accels, threshold)

    @given(st.lists(st.floats(800, 5000, allow_nan=False), min_size=2, max_size=60),
           st.data())
    @settings(max_examples=200, deadline=None)
    def test_shift_up_indices(self, rpm, data):
        v = data.draw(
            st.lists(st.floats(0, 50, allow_nan=False),
                     min_size=len(rpm), max_size=len(rpm))
        )
        assert _pure.shift_up_indices(rpm, v, 1.0, 500.0, 1) == \
            _core.shift_up_indices(rpm, v, 1.0, 500.0, 1)

    @given(st.lists(st.floats(800, 5000, allow_nan=False), min_size=2, max_size=60),
           st.data())
    @settings(max_examples=200, deadline=None)
    def test_high_rpm_unshifted(self, rpm, data):
        v = data.draw(
            st.lists(st.floats(0, 50, allow_nan=False),
                     min_size=len(rpm), max_size=len(rpm))
        )
        shifts = _pure.shift_up_indices(rpm, v, 1.0, 500.0, 1)
        assert bits(
            _pure.high_rpm_unshifted_seconds(rpm, v, 1.0, 2500.0, shifts, 3)
        ) == bits(
            _core.high_rpm_unshifted_seconds(rpm, v, 1.0, 2500.0, shifts, 3)
        )

    @given(st.integers(2, 50), st.data())
    @settings(max_examples=150, deadline=None)
    def test_lateral_accels(self, n, data):
        lat = data.draw(st.lists(st.floats(44.99, 45.01), min_size=n, max_size=n))
        lon = data.draw(st.lists(st.floats(6.99, 7.01), min_size=n, max_size=n))
        v = data.draw(st.lists(st.floats(0, 50), min_size=n, max_size=n))
        assert bits_list(_pure.lateral_accels(lat, lon, v, 1.0)) == \
            bits_list(_core.lateral_accels(lat, lon, v, 1.0))


class TestVarianceOracle:
    @given(st.lists(st.floats(0, 9000, allow_nan=False), min_size=1, max_size=100))
    @settings(max_examples=200, deadline=None)
    def test_matches_two_pass_fsum(self, values):
        mean = math.fsum(values) / len(values)
        expected = math.fsum((v - mean) ** 2 for v in values) / len(values)
        got = _pure.population_variance(values)
        assert math.isclose(got, expected, rel_tol=1e-9, abs_tol=1e-9)

    def test_empty_is_zero(self):
        assert _pure.population_variance([]) == 0.0

    def test_alternating_rpm(self):
        values = [1500.0, 2500.0] * 15
        assert _pure.population_variance(values) == 250000.0


class TestPercentileOracle:
    @given(st.lists(st.floats(-100, 100, allow_nan=False), min_size=1, max_size=80),
           st.floats(0, 100, allow_nan=False))
    @settings(max_examples=200, deadline=None)
    def test_matches_numpy_linear(self, values, q):
        expected = float(np.percentile(np.array(values, dtype=float), q))
        got = _pure.percentile(values, q)
        assert math.isclose(got, expected, rel_tol=1e-9, abs_tol=1e-9)

    def test_single_value(self):
        assert _pure.percentile([7.0], 95.0) == 7.0


class TestHistogramOracle:
    def test_spec_arithmetic(self):
        got = _pure.histogram_mean_weight(
            [1.0, 3.0, 5.0], [2.0, 4.0], [0.0, 0.5, 1.0]
        )
        assert got == pytest.approx(0.5, abs=1e-12)

    def test_edge_values_go_right(self):
        # value == edge belongs to the bin at or above that edge
        assert _pure.histogram_mean_weight([2.0], [2.0], [0.0, 1.0]) == 1.0

    @given(
        st.lists(st.floats(0, 10, allow_nan=False), max_size=60),
        st.lists(st.floats(0.5, 9.5, allow_nan=False), min_size=1, max_size=4,
                 unique=True).map(sorted),
        st.data(),
    )
    @settings(max_examples=200, deadline=None)
    def test_matches_bin_walk(self, values, edges, data):
        weights = data.draw(
            st.lists(st.floats(0, 1, allow_nan=False),
                     min_size=len(edges) + 1, max_size=len(edges) + 1)
        )
        if not values:
            assert _pure.histogram_mean_weight(values, edges, weights) == 0.0
            return
        total = 0.0
        for v in values:
            b = 0
            for e in edges:
                if v >= e:
                    b += 1
            total += weights[b]
        assert _pure.histogram_mean_weight(values, edges, weights) == \
            pytest.approx(total / len(values), rel=1e-12)


class TestSigmoidKernel:
    @given(sigmoid_args(), sigmoid_args())
    @settings(max_examples=200, deadline=None)
    def test_strictly_decreasing(self, a, b):
        x1, a1, a2, a3, a4, x0 = a
        x2 = b[0]
        if x1 == x2:
            return
        lo, hi = min(x1, x2), max(x1, x2)
        y_lo = _pure.sigmoid(lo, a1, a2, a3, a4, x0)
        y_hi = _pure.sigmoid(hi, a1, a2, a3, a4, x0)
        assert y_lo >= y_hi

    @given(sigmoid_args())
    @settings(max_examples=300, deadline=None)
    def test_bounded(self, args):
        x, a1, a2, a3, a4, x0 = args
        y = _pure.sigmoid(x, a1, a2, a3, a4, x0)
        assert a2 <= y <= a2 + a1 / a4 + 1e-15
        assert math.isfinite(y)

    def test_extreme_arguments_do_not_fault(self):
        hi = _pure.sigmoid(1e6, 1, 0, 1, 1, 0)
        lo = _pure.sigmoid(-1e6, 1, 0, 1, 1, 0)
        assert hi == pytest.approx(0.0, abs=1e-12)
        assert lo == pytest.approx(1.0, abs=1e-12)


class TestBrakingEvents:
    def test_brake_channel_runs(self):
        v = [20.0, 18.0, 15.0, 15.0, 13.0, 13.0]
        brake = [1, 1, 0, 1, 0, 0]
        peaks, durations = _pure.braking_event_peaks(v, brake, 1.0)
        assert len(peaks) == 2
        assert peaks[0] == pytest.approx(3.0)   # worst step of the first run
        assert durations[0] == pytest.approx(2.0)
        assert peaks[1] == pytest.approx(2.0)
        assert durations[1] == pytest.approx(1.0)

    def test_all_zero_brake_falls_back_to_decreasing_speed(self):
        v = [20.0, 18.0, 16.0, 16.0, 14.0]
        peaks, durations = _pure.braking_event_peaks(v, [0] * 5, 1.0)
        assert len(peaks) == 2
        assert peaks[0] == pytest.approx(2.0)
        assert durations[0] == pytest.approx(2.0)

    def test_no_events(self):
        peaks, durations = _pure.braking_event_peaks(
            [10.0, 11.0, 12.0], [0, 0, 0], 1.0
        )
        assert peaks == [] and durations == []

    def test_braking_while_accelerating_clamps_peak_to_zero(self):
        peaks, _ = _pure.braking_event_peaks([10.0, 12.0], [1, 1], 1.0)
        assert peaks == [0.0]


class TestShiftDetection:
    def test_simple_shift(self):
        rpm = [2000.0, 2600.0, 1700.0, 1800.0]
        v = [10.0, 12.0, 12.0, 13.0]
        assert _pure.shift_up_indices(rpm, v, 1.0, 500.0, 1) == [2]

    def test_drop_while_slowing_is_not_a_shift(self):
        rpm = [2600.0, 1700.0]
        v = [12.0, 8.0]
        assert _pure.shift_up_indices(rpm, v, 1.0, 500.0, 1) == []

    def test_high_rpm_time_counts_unshifted_seconds(self):
        rpm = [3000.0, 3100.0, 3200.0, 3300.0]
        v = [10.0, 11.0, 12.0, 13.0]
        t = _pure.high_rpm_unshifted_seconds(rpm, v, 1.0, 2500.0, [], 3)
        assert t == pytest.approx(3.0)

    def test_upcoming_shift_excuses_high_rpm(self):
        rpm = [3000.0, 3100.0, 2400.0, 2500.0]
        v = [10.0, 11.0, 11.0, 12.0]
        shifts = _pure.shift_up_indices(rpm, v, 1.0, 500.0, 1)
        assert shifts == [2]
        t = _pure.high_rpm_unshifted_seconds(rpm, v, 1.0, 2500.0, shifts, 3)
        assert t == 0.0


class TestLateralAccels:
    def test_straight_line_is_zero(self):
        lat = [45.0, 45.0001, 45.0002, 45.0003]
        lon = [7.0] * 4
        out = _pure.lateral_accels(lat, lon, [10.0] * 4, 1.0)
        assert all(a == pytest.approx(0.0, abs=1e-9) for a in out)

    def test_circular_arc_matches_v_squared_over_r(self):
        # ~500 m radius circle driven at 15 m/s: lateral accel = v^2/R
        radius, v, n = 500.0, 15.0, 20
        omega = v / radius
        lat0, lon0 = 45.0, 7.0
        m_per_deg_lat = math.pi / 180.0 * 6371000.0
        m_per_deg_lon = m_per_deg_lat * math.cos(math.radians(lat0))
        lats, lons = [], []
        for i in range(n):
            a = omega * i
            lats.append(lat0 + radius * math.sin(a) / m_per_deg_lat)
            lons.append(lon0 + radius * (1 - math.cos(a)) / m_per_deg_lon)
        out = _pure.lateral_accels(lats, lons, [v] * n, 1.0)
        expected = v * v / radius
        for a in out[2:-2]:
            assert a == pytest.approx(expected, rel=0.05)
