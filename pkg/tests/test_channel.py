import math

import numpy as np
import pytest

from ldpclab import ChannelParams, EPS_PROB, awgn_transmit, modulate_bpsk, posteriors


class TestModulation:
    def test_mapping(self):
        assert modulate_bpsk(np.array([0, 1, 0])).tolist() == [1.0, -1.0, 1.0]

    def test_all_zero(self):
        assert (modulate_bpsk(np.zeros(8, dtype=np.uint8)) == 1.0).all()

    def test_sign_demap_involution_at_zero_noise(self):
        rng = np.random.default_rng(0)
        bits = rng.integers(0, 2, size=64)
        params = ChannelParams(ebn0_db=400.0, rate=0.5)
        received = awgn_transmit(modulate_bpsk(bits), params, rng)
        assert ((received < 0).astype(int) == bits).all()

    def test_rejects_non_binary(self):
        with pytest.raises(ValueError):
            modulate_bpsk(np.array([0, 2]))


class TestChannelParams:
    def test_known_value(self):
        # rate 1/2 at 0 dB: 1 / (2 * 0.5 * 1) = 1
        assert ChannelParams(ebn0_db=0.0, rate=0.5).sigma2 == 1.0

    def test_positive(self):
        assert ChannelParams(ebn0_db=-10.0, rate=0.9).sigma2 > 0

    def test_rate_bounds(self):
        with pytest.raises(ValueError):
            ChannelParams(ebn0_db=0.0, rate=0.0)
        with pytest.raises(ValueError):
            ChannelParams(ebn0_db=0.0, rate=1.5)

    def test_doubling_rate_halves_sigma2_exactly(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            ebn0 = float(rng.uniform(-5, 12))
            rate = float(rng.uniform(0.05, 0.5))
            assert ChannelParams(ebn0, 2 * rate).sigma2 == ChannelParams(ebn0, rate).sigma2 / 2


class TestAwgn:
    def test_zero_noise_limit_returns_symbols_exactly(self):
        params = ChannelParams(ebn0_db=400.0, rate=0.5)
        s = modulate_bpsk(np.array([0, 1, 1, 0]))
        r = awgn_transmit(s, params, np.random.default_rng(3))
        assert (r == s).all()

    def test_same_seed_same_vector(self):
        params = ChannelParams(ebn0_db=2.0, rate=0.5)
        s = np.ones(100)
        a = awgn_transmit(s, params, np.random.default_rng(11))
        b = awgn_transmit(s, params, np.random.default_rng(11))
        assert (a == b).all()

    def test_noise_mean_within_clt_bound(self):
        # sample mean of 10^6 centered draws stays within 4 standard errors
        params = ChannelParams(ebn0_db=3.0, rate=0.5)
        n = 10**6
        z = awgn_transmit(np.zeros(n), params, np.random.default_rng(123))
        assert abs(z.mean()) < 4.0 * math.sqrt(params.sigma2 / n)


class TestPosteriors:
    def test_zero_sample_is_half(self):
        params = ChannelParams(ebn0_db=1.0, rate=0.5)
        assert posteriors(np.array([0.0]), params)[0] == 0.5

    def test_strong_positive_sample_clamps_low(self):
        # positive samples evidence bit 0
        params = ChannelParams(ebn0_db=20.0, rate=0.5)
        assert posteriors(np.array([50.0]), params)[0] == EPS_PROB

    def test_strong_negative_sample_clamps_high(self):
        params = ChannelParams(ebn0_db=20.0, rate=0.5)
        assert posteriors(np.array([-50.0]), params)[0] == 1.0 - EPS_PROB

    def test_algebraic_inversion(self):
        # sigma2 = 1 and r = -ln(3)/2 invert to P = 0.75
        params = ChannelParams(ebn0_db=0.0, rate=0.5)
        p = posteriors(np.array([-math.log(3.0) / 2.0]), params)[0]
        assert p == pytest.approx(0.75, abs=1e-12)

    def test_sign_symmetry(self):
        params = ChannelParams(ebn0_db=4.0, rate=0.5)
        r = np.random.default_rng(8).normal(0, 2, size=200)
        assert np.allclose(posteriors(-r, params), 1.0 - posteriors(r, params), atol=1e-9)

    def test_monotone_decreasing_in_r(self):
        params = ChannelParams(ebn0_db=2.0, rate=0.5)
        r = np.linspace(-5, 5, 101)
        p = posteriors(r, params)
        assert (np.diff(p) < 0).all()

    def test_rejects_non_finite(self):
        params = ChannelParams(ebn0_db=2.0, rate=0.5)
        with pytest.raises(ValueError):
            posteriors(np.array([np.inf]), params)
