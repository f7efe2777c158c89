import math

import numpy as np
import pytest

from crancov.analytic import CoverageQuery, coverage_full_csi
from crancov.errors import ConfigurationError
from crancov.model import (NetworkConfig, UserType, calibrate_noise,
                           density_from_spacing, type_probabilities)
from crancov.simulator import (DISC, MODE_DIAGONAL, MODE_FULL_LQ, MODE_NOCLOUD,
                               MODE_PCSI, SQUARE, SimulationPlan,
                               dump_samples_csv, empirical_coverage,
                               lq_decompose, run_samples, sample_ppp)

LAM200 = density_from_spacing(200.0)
S200 = calibrate_noise(200.0, 10.0)


def make_plan(realizations=2000, seed=7, mode=MODE_DIAGONAL, area=1.0,
              shape=DISC, csi_limit="full", trunc=1500.0):
    cfg = NetworkConfig(bs_density=LAM200, pathloss_alpha=4.0,
                        noise_power=S200,
                        cluster_radius=math.sqrt(area * 1e6 / math.pi),
                        csi_limit=csi_limit)
    return SimulationPlan(config=cfg, realizations=realizations, seed=seed,
                          cluster_shape=shape, precoder_mode=mode,
                          interference_truncation=trunc)


class TestPointProcess:
    def test_count_moments(self):
        rng = np.random.default_rng(11)
        window = 2000.0
        mean = LAM200 * math.pi * window ** 2
        counts = [sample_ppp(LAM200, window, rng).shape[0] for _ in range(300)]
        avg = float(np.mean(counts))
        # Poisson: variance equals the mean
        assert abs(avg - mean) < 4.0 * math.sqrt(mean / 300.0)
        assert np.var(counts) == pytest.approx(mean, rel=0.25)

    def test_points_inside_window(self):
        rng = np.random.default_rng(3)
        pts = sample_ppp(LAM200, 1500.0, rng)
        assert float(np.hypot(pts[:, 0], pts[:, 1]).max()) <= 1500.0


class TestLqDecomposition:
    def test_reconstruction_and_unitarity(self):
        rng = np.random.default_rng(21)
        for n in (2, 5, 12):
            H = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            L, Q = lq_decompose(H)
            assert np.max(np.abs(H - L @ Q)) < 1e-10
            assert np.max(np.abs(Q @ Q.conj().T - np.eye(n))) < 1e-10
            # lower triangular up to rounding
            assert np.max(np.abs(np.triu(L, 1))) < 1e-10

    def test_determinant_identity(self):
        rng = np.random.default_rng(22)
        H = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        L, _ = lq_decompose(H)
        assert abs(np.linalg.det(H)) == pytest.approx(
            float(np.prod(np.abs(np.diag(L)))), rel=1e-10)


class TestReproducibility:
    def test_same_seed_bit_exact(self):
        ths = [1.0, 10.0]
        a = empirical_coverage(make_plan(realizations=1200, seed=5), ths)
        b = empirical_coverage(make_plan(realizations=1200, seed=5), ths)
        assert a.coverage == b.coverage
        assert a.meta["samples"] == b.meta["samples"]

    def test_different_seed_differs(self):
        ths = [10.0]
        a = empirical_coverage(make_plan(realizations=1200, seed=5), ths)
        b = empirical_coverage(make_plan(realizations=1200, seed=6), ths)
        assert a.coverage != b.coverage

    def test_dump_samples_header(self, tmp_path):
        plan = make_plan(realizations=1000, mode=MODE_NOCLOUD)
        out = tmp_path / "samples.csv"
        dump_samples_csv(plan, out)
        lines = out.read_text().splitlines()
        assert lines[0].startswith(f"# seed={plan.seed}")
        assert lines[1] == "realization,user_type,mode,sinr_linear"
        assert len(lines) > 900


class TestStatisticalChecks:
    def test_type_tallies_match_closed_form(self):
        plan = make_plan(realizations=4000, mode=MODE_NOCLOUD)
        _, tallies, empty = run_samples(plan)
        n = plan.realizations - empty
        p1, p2 = type_probabilities(plan.config.bs_density,
                                    plan.config.cluster_radius)
        for p, t in ((p1, UserType.TYPE_I), (p2, UserType.TYPE_II)):
            se = math.sqrt(p * (1.0 - p) / n)
            assert abs(tallies[t] / n - p) < 4.0 * se

    def test_truncation_radius_control(self):
        # folding the tail mean back in makes the truncation radius irrelevant
        ths = [1.0, 10.0]
        near = empirical_coverage(make_plan(realizations=1500, trunc=800.0), ths)
        far = empirical_coverage(make_plan(realizations=1500, trunc=2000.0), ths)
        for a, b in zip(near.coverage, far.coverage):
            assert abs(a - b) < 0.012

    def test_disc_covers_more_than_square(self):
        ths = [10.0]
        disc = empirical_coverage(make_plan(realizations=3000, area=0.5), ths)
        square = empirical_coverage(make_plan(realizations=3000, area=0.5,
                                              shape=SQUARE), ths)
        assert disc.coverage[0] > square.coverage[0]

    def test_full_lq_tracks_analytic(self):
        plan = make_plan(realizations=1200, mode=MODE_FULL_LQ)
        mc = empirical_coverage(plan, [1.0, 10.0])
        ana = coverage_full_csi(CoverageQuery(config=plan.config,
                                              thresholds_db=(1.0, 10.0)))
        for a, b in zip(mc.coverage, ana.coverage):
            assert abs(a - b) < 0.03

    def test_pcsi_mode_tracks_feedback_ordering(self):
        ths = [1.0, 10.0]
        low = empirical_coverage(make_plan(realizations=1500, mode=MODE_PCSI,
                                           area=0.63, csi_limit=2), ths)
        high = empirical_coverage(make_plan(realizations=1500, mode=MODE_PCSI,
                                            area=0.63, csi_limit=8), ths)
        for a, b in zip(low.coverage, high.coverage):
            assert a < b


class TestValidation:
    def test_realization_floor(self):
        with pytest.raises(ConfigurationError):
            empirical_coverage(make_plan(realizations=100), [10.0])

    def test_pcsi_mode_needs_integer_limit(self):
        with pytest.raises(ConfigurationError):
            make_plan(mode=MODE_PCSI)

    def test_unknown_mode_rejected(self):
        with pytest.raises(ConfigurationError):
            make_plan(mode="beamforming")
