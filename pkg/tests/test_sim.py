import math

import numpy as np
import pytest

from ldpclab import (
    BerRecord,
    ChannelParams,
    CsvFormatError,
    SimConfig,
    SparseParityCheck,
    awgn_transmit,
    emit_csv,
    modulate_bpsk,
    parse_csv,
    run_ber_point,
    run_sweep,
    save_alist,
)
from ldpclab.sim import CSV_HEADER, _frame_rng, _round6


@pytest.fixture
def code20_path(tmp_path, code_20_1_2):
    path = tmp_path / "code20.alist"
    path.write_text(save_alist(code_20_1_2))
    return path


def small_cfg(code_path, **kw):
    defaults = dict(
        code_path=code_path,
        ebn0_start=2.0,
        ebn0_step=2.0,
        ebn0_stop=4.0,
        min_frame_errors=20,
        max_frames=2048,
        master_seed=7,
    )
    defaults.update(kw)
    return SimConfig(**defaults)


class TestConfig:
    def test_grid(self, code20_path):
        cfg = small_cfg(code20_path, ebn0_start=0.0, ebn0_step=2.0, ebn0_stop=6.0)
        assert cfg.ebn0_grid == (0.0, 2.0, 4.0, 6.0)

    def test_single_point_grid(self, code20_path):
        cfg = small_cfg(code20_path, ebn0_start=3.0, ebn0_stop=3.0)
        assert cfg.ebn0_grid == (3.0,)

    def test_validation(self, code20_path):
        with pytest.raises(ValueError):
            small_cfg(code20_path, decoders=())
        with pytest.raises(ValueError):
            small_cfg(code20_path, decoders=("spa", "huh"))
        with pytest.raises(ValueError):
            small_cfg(code20_path, codeword_mode="fancy")
        with pytest.raises(ValueError):
            small_cfg(code20_path, ebn0_start=4.0, ebn0_stop=2.0)
        with pytest.raises(ValueError):
            small_cfg(code20_path, ebn0_step=0.0)
        with pytest.raises(ValueError):
            small_cfg(code20_path, min_frame_errors=0)


class TestRunPoint:
    def test_zero_noise_limit(self, code20_path):
        cfg = small_cfg(code20_path, min_frame_errors=1, max_frames=100)
        spa = run_ber_point(cfg, 300.0, "spa")
        mlpd = run_ber_point(cfg, 300.0, "mlpd")
        for rec in (spa, mlpd):
            assert rec.frames == 100
            assert rec.ber == 0.0 and rec.fer == 0.0
        assert spa.avg_iterations == 1.0  # decision after the first iteration
        assert mlpd.avg_iterations == 0.0  # no training steps needed

    def test_worker_count_does_not_change_results(self, code20_path, code_20_1_2):
        cfg = small_cfg(code20_path, ebn0_start=3.0, ebn0_stop=3.0, min_frame_errors=50)
        serial = run_ber_point(cfg, 3.0, "spa", workers=1, code=code_20_1_2)
        parallel = run_ber_point(cfg, 3.0, "spa", workers=3, code=code_20_1_2)
        assert serial == parallel

    def test_different_seeds_differ(self, code20_path):
        a = run_ber_point(small_cfg(code20_path, master_seed=1), 2.0, "spa")
        b = run_ber_point(small_cfg(code20_path, master_seed=2), 2.0, "spa")
        assert a.bit_errors != b.bit_errors

    def test_decoders_draw_independent_streams(self):
        assert _frame_rng(0, "spa", 2.0, 5).integers(0, 1 << 30) != _frame_rng(
            0, "mlpd", 2.0, 5
        ).integers(0, 1 << 30)

    def test_unknown_decoder(self, code20_path):
        with pytest.raises(ValueError):
            run_ber_point(small_cfg(code20_path), 2.0, "viterbi")

    def test_random_codeword_mode(self, code20_path):
        cfg = small_cfg(code20_path, codeword_mode="random", min_frame_errors=10)
        rec = run_ber_point(cfg, 2.0, "spa")
        assert rec.frame_errors >= 10

    def test_rank_deficient_random_mode_falls_back(self, tmp_path):
        H = SparseParityCheck(4, [[0, 1], [0, 1], [2, 3]])
        path = tmp_path / "deficient.alist"
        path.write_text(save_alist(H))
        cfg = SimConfig(
            code_path=path,
            ebn0_start=2.0,
            ebn0_stop=2.0,
            min_frame_errors=1,
            max_frames=32,
            codeword_mode="random",
        )
        with pytest.warns(UserWarning, match="rank"):
            rec = run_ber_point(cfg, 2.0, "spa")
        assert rec.frames == 32 or rec.frame_errors >= 1

    def test_allzero_and_random_mode_statistically_equal(self, code20_path):
        # same true BER under decoder/channel symmetry: 95% binomial
        # intervals on the two estimates must overlap
        kw = dict(ebn0_start=4.0, ebn0_stop=4.0, min_frame_errors=60)
        rec_zero = run_ber_point(small_cfg(code20_path, **kw), 4.0, "spa")
        rec_rand = run_ber_point(
            small_cfg(code20_path, codeword_mode="random", **kw), 4.0, "spa"
        )

        def interval(rec, n_bits):
            p = rec.ber
            half = 1.96 * math.sqrt(p * (1 - p) / (rec.frames * n_bits))
            return p - half, p + half

        lo_z, hi_z = interval(rec_zero, 20)
        lo_r, hi_r = interval(rec_rand, 20)
        assert lo_z <= hi_r and lo_r <= hi_z


class TestSweep:
    def test_grid_major_record_order(self, code20_path):
        cfg = small_cfg(
            code20_path,
            ebn0_start=0.0,
            ebn0_step=2.0,
            ebn0_stop=6.0,
            min_frame_errors=1,
            max_frames=64,
        )
        records = run_sweep(cfg)
        assert len(records) == 8
        assert [(r.ebn0_db, r.decoder) for r in records] == [
            (e, d) for e in (0.0, 2.0, 4.0, 6.0) for d in ("spa", "mlpd")
        ]

    def test_spa_ber_monotone_in_ebn0(self, code20_path):
        cfg = small_cfg(
            code20_path,
            ebn0_start=2.0,
            ebn0_step=2.0,
            ebn0_stop=6.0,
            min_frame_errors=30,
            max_frames=4096,
            decoders=("spa",),
        )
        records = run_sweep(cfg)
        bers = [r.ber for r in records]
        sigmas = [
            math.sqrt(max(r.ber * (1 - r.ber), 1e-12) / (r.frames * 20)) for r in records
        ]
        for k in range(len(bers) - 1):
            assert bers[k] - bers[k + 1] > 3.0 * math.hypot(sigmas[k], sigmas[k + 1])


class TestCsv:
    def test_round_trip_identity(self, code20_path):
        cfg = small_cfg(code20_path, min_frame_errors=5, max_frames=256)
        records = run_sweep(cfg)
        assert parse_csv(emit_csv(records)) == records

    def test_round_trip_synthetic_values(self):
        records = [
            BerRecord.from_counts(1.2345678, "spa", 12345, 678, 91, 23456, 20),
            BerRecord.from_counts(-3.0, "mlpd", 7, 0, 0, 0, 20),
        ]
        assert parse_csv(emit_csv(records)) == records

    def test_schema(self):
        rec = BerRecord.from_counts(4.0, "spa", 100, 10, 5, 150, 20)
        text = emit_csv([rec])
        lines = text.splitlines()
        assert lines[0].startswith("#")
        assert lines[1] == CSV_HEADER
        assert lines[2] == "4,spa,100,10,5,0.005,0.05,1.5"

    def test_six_significant_digits(self):
        rec = BerRecord.from_counts(0.0, "spa", 81, 1, 1, 123456789, 7)
        assert rec.ber == _round6(1 / (81 * 7))
        assert rec.avg_iterations == _round6(123456789 / 81)

    def test_rejects_bad_header(self):
        with pytest.raises(CsvFormatError):
            parse_csv("ebn0,stuff\n1,2\n")

    def test_rejects_bad_row(self):
        good = emit_csv([BerRecord.from_counts(4.0, "spa", 100, 10, 5, 150, 20)])
        with pytest.raises(CsvFormatError):
            parse_csv(good + "not,a,row\n")


class TestChannelCalibration:
    def test_uncoded_hard_decision_error_rate(self):
        # raw sign decisions at sigma2 = 1 err with probability Q(1); a
        # 3-sigma binomial band around the Gaussian tail value must contain
        # the estimate
        params = ChannelParams(ebn0_db=0.0, rate=0.5)
        assert params.sigma2 == 1.0
        n_bits = 10**5 * 20
        rng = np.random.default_rng(2024)
        received = awgn_transmit(modulate_bpsk(np.zeros(n_bits, dtype=np.uint8)), params, rng)
        p_hat = float((received < 0).mean())
        q1 = 0.5 * math.erfc(1.0 / math.sqrt(2.0))
        assert abs(p_hat - q1) < 3.0 * math.sqrt(q1 * (1 - q1) / n_bits)
