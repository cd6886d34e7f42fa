"""Rate-model unit and property tests."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uplink_noma import (
    ChannelGains,
    DimensionError,
    PowerAllocation,
    TransmitSnr,
    ValidationError,
    noma_rates,
    noma_sum_rate,
    oma_rates,
)

SNR10 = TransmitSnr(10.0)


def _unchecked_allocation(values) -> PowerAllocation:
    """Build an allocation without validation, for degenerate identity tests."""
    alloc = object.__new__(PowerAllocation)
    object.__setattr__(alloc, "alphas", np.asarray(values, dtype=float))
    return alloc


class TestNomaRates:
    def test_two_user_reference_point(self):
        gains = ChannelGains(np.array([0.3, 2.0]))
        alloc = PowerAllocation(np.array([1.0 / 3.0, 2.0 / 3.0]))
        rates = noma_rates(gains, alloc, SNR10)
        # closed form: R1 = log2(2), R2 = log2(23/3)
        assert rates == pytest.approx([1.0, 2.9385994553358567], rel=1e-12)

    def test_weakest_user_sees_no_interference(self):
        gains = ChannelGains(np.array([0.5, 1.0, 4.0]))
        alloc = PowerAllocation(np.array([0.2, 0.3, 0.5]))
        rates = noma_rates(gains, alloc, SNR10)
        assert rates[0] == pytest.approx(np.log2(1.0 + 10.0 * 0.2 * 0.5), rel=1e-12)

    def test_equal_gains_equal_split_symmetry(self):
        g = 1.7
        gains = ChannelGains(np.array([g, g]))
        alloc = PowerAllocation(np.array([0.5, 0.5]))
        rates = noma_rates(gains, alloc, SNR10)
        assert rates[0] == pytest.approx(np.log2(1.0 + 10.0 * g / 2.0), rel=1e-12)
        # the strong user decodes first, against the weak user's full signal
        expected_r2 = np.log2(1.0 + (5.0 * g) / (1.0 + 5.0 * g))
        assert rates[1] == pytest.approx(expected_r2, rel=1e-12)

    def test_length_mismatch_raises(self):
        gains = ChannelGains(np.array([0.3, 2.0]))
        alloc = PowerAllocation(np.array([0.2, 0.3, 0.5]))
        with pytest.raises(DimensionError):
            noma_rates(gains, alloc, SNR10)
        with pytest.raises(DimensionError):
            noma_sum_rate(gains, alloc, SNR10)


class TestOmaRates:
    def test_two_user_reference_point(self):
        gains = ChannelGains(np.array([0.3, 2.0]))
        assert oma_rates(gains, SNR10) == pytest.approx(
            [1.0, 2.1961587113893801], rel=1e-12
        )

    def test_half_log_at_two_users(self):
        gains = ChannelGains(np.array([0.5, 2.0]))
        assert oma_rates(gains, SNR10) == pytest.approx(
            [1.2924812503605781, 2.1961587113893801], rel=1e-12
        )

    def test_share_shrinks_with_group_size(self):
        g3 = ChannelGains(np.array([0.5, 1.0, 2.0]))
        rates = oma_rates(g3, SNR10)
        assert rates[1] == pytest.approx(np.log2(11.0) / 3.0, rel=1e-12)


class TestNomaSumRate:
    def test_reference_point(self):
        gains = ChannelGains(np.array([0.3, 2.0]))
        alloc = PowerAllocation(np.array([1.0 / 3.0, 2.0 / 3.0]))
        assert noma_sum_rate(gains, alloc, SNR10) == pytest.approx(
            3.9385994553358567, rel=1e-12
        )

    def test_single_user_reduction(self):
        # degenerate [1, 0] collapses the sum rate to the weak user alone
        gains = ChannelGains(np.array([0.3, 2.0]))
        alloc = _unchecked_allocation([1.0, 0.0])
        assert noma_sum_rate(gains, alloc, SNR10) == pytest.approx(
            np.log2(1.0 + 10.0 * 0.3), rel=1e-12
        )

    def test_increasing_in_strong_share_when_gains_differ(self):
        gains = ChannelGains(np.array([0.3, 2.0]))
        grid = np.linspace(0.05, 0.95, 31)
        sums = [
            noma_sum_rate(gains, PowerAllocation(np.array([1.0 - a2, a2])), SNR10)
            for a2 in grid
        ]
        assert np.all(np.diff(sums) > 0.0)

    def test_flat_in_strong_share_when_gains_equal(self):
        gains = ChannelGains(np.array([1.3, 1.3]))
        grid = np.linspace(0.05, 0.95, 31)
        sums = [
            noma_sum_rate(gains, PowerAllocation(np.array([1.0 - a2, a2])), SNR10)
            for a2 in grid
        ]
        assert np.allclose(sums, sums[0], rtol=1e-12)


@st.composite
def rate_problems(draw):
    m = draw(st.integers(min_value=2, max_value=8))
    gains = sorted(
        draw(
            st.lists(
                st.floats(min_value=1e-3, max_value=1e2),
                min_size=m,
                max_size=m,
            )
        )
    )
    weights = draw(
        st.lists(
            st.floats(min_value=0.05, max_value=1.0),
            min_size=m,
            max_size=m,
        )
    )
    alphas = np.asarray(weights) / np.sum(weights)
    rho = draw(st.floats(min_value=1e-2, max_value=1e4))
    return ChannelGains(np.asarray(gains)), PowerAllocation(alphas), TransmitSnr(rho)


class TestTelescoping:
    @given(rate_problems())
    @settings(max_examples=150, deadline=None)
    def test_rates_sum_to_sum_rate(self, problem):
        gains, alloc, snr = problem
        total = noma_sum_rate(gains, alloc, snr)
        stacked = float(np.sum(noma_rates(gains, alloc, snr)))
        assert abs(total - stacked) <= 1e-9 * max(abs(total), 1e-12)

    @given(rate_problems())
    @settings(max_examples=60, deadline=None)
    def test_rates_nonnegative(self, problem):
        gains, alloc, snr = problem
        assert np.all(noma_rates(gains, alloc, snr) >= 0.0)
        assert np.all(oma_rates(gains, snr) >= 0.0)


class TestValidation:
    def test_snr_must_be_positive_finite(self):
        for bad in (0.0, -1.0, float("inf"), float("nan")):
            with pytest.raises(ValidationError):
                TransmitSnr(bad)

    def test_snr_from_db(self):
        assert TransmitSnr.from_db(10.0).rho == pytest.approx(10.0, rel=1e-15)
        assert TransmitSnr.from_db(-10.0).rho == pytest.approx(0.1, rel=1e-15)
        assert TransmitSnr.from_db(0.0).rho == 1.0

    def test_gains_must_be_sorted_ascending(self):
        with pytest.raises(ValidationError):
            ChannelGains(np.array([2.0, 0.3]))

    def test_gains_must_be_positive(self):
        with pytest.raises(ValidationError):
            ChannelGains(np.array([0.0, 1.0]))
        with pytest.raises(ValidationError):
            ChannelGains(np.array([-0.5, 1.0]))

    def test_gains_need_at_least_two_users(self):
        with pytest.raises(ValidationError):
            ChannelGains(np.array([1.0]))

    def test_equal_gains_are_accepted(self):
        gains = ChannelGains(np.array([1.0, 1.0, 1.0]))
        assert gains.m == 3

    def test_gains_are_immutable(self):
        gains = ChannelGains(np.array([0.3, 2.0]))
        with pytest.raises(ValueError):
            gains.gains[0] = 9.0

    def test_alphas_must_be_interior(self):
        with pytest.raises(ValidationError):
            PowerAllocation(np.array([0.0, 1.0]))
        with pytest.raises(ValidationError):
            PowerAllocation(np.array([-0.1, 1.1]))

    def test_alphas_must_sum_to_one(self):
        with pytest.raises(ValidationError):
            PowerAllocation(np.array([0.5, 0.5 + 3e-12]))
        # within tolerance is fine
        PowerAllocation(np.array([0.5, 0.5 + 5e-13]))
