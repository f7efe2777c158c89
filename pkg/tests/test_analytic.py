import math

import numpy as np
import pytest

from crancov.analytic import (CoverageQuery, chord_length, coverage_full_csi,
                              coverage_ideal, coverage_linear, coverage_nocloud,
                              coverage_pcsi, coverage_type1_full,
                              coverage_type1_pcsi, coverage_type2_full,
                              coverage_type2_pcsi, coverage_type3_pcsi,
                              rate_cdf, rate_profile, wedge_angle)
from crancov.curves import (ANALYTIC_FULL, ANALYTIC_IDEAL, ANALYTIC_NOCLOUD,
                            ANALYTIC_PCSI)
from crancov.errors import ConfigurationError, DomainError
from crancov.model import NetworkConfig, calibrate_noise, density_from_spacing

LAM200 = density_from_spacing(200.0)
S200 = calibrate_noise(200.0, 10.0)
THS = tuple(float(t) for t in range(-5, 20, 3))


def make_config(spacing=200.0, area=1.0, csi_limit="full", noise=S200):
    return NetworkConfig(bs_density=density_from_spacing(spacing),
                         pathloss_alpha=4.0, noise_power=noise,
                         cluster_radius=math.sqrt(area * 1e6 / math.pi),
                         csi_limit=csi_limit)


class TestGeometryHelpers:
    def test_chord_endpoints(self):
        R, r_u = 100.0, 40.0
        assert chord_length(0.0, r_u, R) == pytest.approx(R - r_u, abs=1e-12)
        assert chord_length(math.pi, r_u, R) == pytest.approx(R + r_u, abs=1e-12)
        assert chord_length(0.3, 0.0, R) == pytest.approx(R, abs=1e-12)

    def test_wedge_angle_limits(self):
        R, r_u = 100.0, 40.0
        assert wedge_angle(R - r_u, r_u, R) == pytest.approx(0.0, abs=1e-9)
        assert wedge_angle(R + r_u, r_u, R) == pytest.approx(math.pi, abs=1e-9)
        mid = wedge_angle(R, r_u, R)
        assert 0.0 < mid < math.pi

    def test_domain_checks(self):
        with pytest.raises(DomainError):
            chord_length(0.0, 200.0, 100.0)
        with pytest.raises(DomainError):
            wedge_angle(10.0, 40.0, 100.0)


class TestFullCsiCurve:
    def test_zero_threshold_is_certain_coverage(self):
        cfg = make_config()
        assert coverage_linear(cfg, [0.0], ANALYTIC_FULL)[0] == pytest.approx(
            1.0, abs=1e-6)

    def test_monotone_in_threshold(self):
        curve = coverage_full_csi(CoverageQuery(config=make_config(),
                                                thresholds_db=THS))
        assert all(b < a for a, b in zip(curve.coverage, curve.coverage[1:]))

    def test_monotone_in_cluster_radius(self):
        small = coverage_full_csi(CoverageQuery(config=make_config(area=0.5),
                                                thresholds_db=THS))
        big = coverage_full_csi(CoverageQuery(config=make_config(area=2.0),
                                              thresholds_db=THS))
        assert all(b > s for s, b in zip(small.coverage, big.coverage))

    def test_angular_resolution_converged(self):
        cfg = make_config()
        a = coverage_full_csi(CoverageQuery(config=cfg, thresholds_db=THS,
                                            angular_segments=128))
        b = coverage_full_csi(CoverageQuery(config=cfg, thresholds_db=THS,
                                            angular_segments=256))
        assert max(abs(x - y) for x, y in zip(a.coverage, b.coverage)) < 5e-4

    def test_denser_network_covers_better(self):
        d200 = coverage_full_csi(CoverageQuery(config=make_config(200.0, 1.0),
                                               thresholds_db=THS))
        d400 = coverage_full_csi(CoverageQuery(
            config=make_config(400.0, 1.0), thresholds_db=THS))
        assert all(a > b for a, b in zip(d200.coverage, d400.coverage))

    def test_conditional_types_join_continuously(self):
        cfg = make_config()
        R = cfg.cluster_radius
        r_u = 0.4 * R
        for T in (0.3, 1.0, 10.0):
            a = coverage_type1_full(T, r_u, R - r_u, cfg)
            b = coverage_type2_full(T, r_u, R - r_u, cfg)
            # the two conditional kernels use different boundary profiles,
            # so the seam agrees only to the approximation's accuracy
            assert a == pytest.approx(b, abs=0.05)


class TestBaselines:
    def test_dominance_chain(self):
        cfg = make_config()
        noc = coverage_nocloud(cfg, list(THS)).coverage
        mid = coverage_full_csi(CoverageQuery(config=cfg,
                                              thresholds_db=THS)).coverage
        ide = coverage_ideal(cfg, list(THS)).coverage
        for a, b, c in zip(noc, mid, ide):
            assert a <= b + 1e-9
            assert b <= c + 1e-9

    def test_nocloud_density_invariance(self):
        # with the noise calibrated at the spacing, the curve is scale-free
        a = coverage_nocloud(make_config(200.0, 1.0,
                                         noise=calibrate_noise(200.0, 10.0)),
                             list(THS)).coverage
        b = coverage_nocloud(make_config(400.0, 4.0,
                                         noise=calibrate_noise(400.0, 10.0)),
                             list(THS)).coverage
        assert max(abs(x - y) for x, y in zip(a, b)) < 1e-9

    def test_ideal_improves_with_density(self):
        a = coverage_ideal(make_config(200.0, 1.0), list(THS)).coverage
        b = coverage_ideal(make_config(400.0, 1.0), list(THS)).coverage
        assert all(x > y for x, y in zip(a, b))


class TestPcsiCurve:
    def test_suture_type1_type2(self):
        cfg = make_config(csi_limit=4)
        R = cfg.cluster_radius
        r_u, r_b = 0.3 * R, 0.2 * R
        r_l = R - r_u
        for T in (0.5, 3.0):
            a = coverage_type1_pcsi(T, r_u, r_b, r_l, cfg)
            b = coverage_type2_pcsi(T, r_u, r_b, r_l, cfg)
            assert a == pytest.approx(b, abs=1e-6)

    def test_suture_type2_type3(self):
        cfg = make_config(csi_limit=4)
        R = cfg.cluster_radius
        r_u = 0.3 * R
        r_b = R - r_u  # seam between the interior and straddling void disc
        r_l = R - 0.1 * r_u
        for T in (0.5, 3.0):
            a = coverage_type2_pcsi(T, r_u, r_b, r_l, cfg)
            b = coverage_type3_pcsi(T, r_u, r_b, r_l, cfg)
            assert a == pytest.approx(b, abs=1e-6)

    def test_monotone_in_feedback(self):
        curves = [coverage_pcsi(CoverageQuery(config=make_config(area=0.63,
                                                                 csi_limit=L),
                                              thresholds_db=THS)).coverage
                  for L in (2, 4, 8)]
        for lo, hi in zip(curves, curves[1:]):
            assert all(a < b for a, b in zip(lo, hi))

    def test_pcsi_below_full_csi(self):
        pcsi = coverage_pcsi(CoverageQuery(config=make_config(csi_limit=8),
                                           thresholds_db=THS)).coverage
        full = coverage_full_csi(CoverageQuery(config=make_config(),
                                               thresholds_db=THS)).coverage
        assert all(a <= b + 1e-6 for a, b in zip(pcsi, full))

    def test_requires_integer_limit(self):
        with pytest.raises(ConfigurationError):
            coverage_pcsi(CoverageQuery(config=make_config(), thresholds_db=THS))


class TestRate:
    def test_rate_cdf_at_zero(self):
        assert rate_cdf(make_config(), 0.0, ANALYTIC_FULL) == 0.0

    def test_rate_cdf_monotone(self):
        cfg = make_config()
        vals = [rate_cdf(cfg, t, ANALYTIC_NOCLOUD) for t in (0.5, 1.0, 2.0, 4.0)]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_profile_ordering(self):
        prof = rate_profile(make_config(400.0, 1.0), ANALYTIC_FULL)
        assert 0.0 < prof.p5 < prof.p10 < prof.p50
        assert prof.mean > prof.p50 * 0.5

    def test_ideal_profile_beats_nocloud(self):
        cfg = make_config()
        ide = rate_profile(cfg, ANALYTIC_IDEAL)
        noc = rate_profile(cfg, ANALYTIC_NOCLOUD)
        assert ide.mean > noc.mean
        assert ide.p5 > noc.p5

    def test_unknown_method_rejected(self):
        with pytest.raises(ConfigurationError):
            coverage_linear(make_config(), [1.0], "analytic-unknown")
        with pytest.raises(DomainError):
            rate_cdf(make_config(), -1.0)
