import math

import numpy as np
import pytest

from crancov.errors import DomainError
from crancov.model import NetworkConfig, calibrate_noise, density_from_spacing
from crancov.scaling import (ScalingQuery, boundary_coverage, delta_integral,
                             eta, mean_cluster_size, optimal_radius,
                             verify_scaling)

LAM200 = density_from_spacing(200.0)
R1 = math.sqrt(1e6 / math.pi)


def make_query(epsilon, delta=1.0, threshold=1.0, spacing=200.0, noise=None):
    lam = density_from_spacing(spacing)
    sigma2 = calibrate_noise(spacing, 10.0) if noise is None else noise
    cfg = NetworkConfig(bs_density=lam, pathloss_alpha=4.0,
                        noise_power=sigma2, cluster_radius=R1)
    return ScalingQuery(epsilon=epsilon, delta=delta, threshold=threshold,
                        config=cfg)


class TestDeltaIntegral:
    def test_boundary_user_closed_form(self):
        # from the boundary of the unit disc (delta = 1 means the center),
        # the exterior pathloss integral at alpha = 4 collapses to pi
        assert delta_integral(1.0, 4.0) == pytest.approx(math.pi, abs=1e-9)

    def test_frozen_oracle_values(self):
        # frozen against an adaptive-quadrature oracle of the 2-d integral
        assert delta_integral(0.5, 4.0) == pytest.approx(5.585053606381853,
                                                         rel=1e-9)
        assert delta_integral(0.1, 4.0) == pytest.approx(87.024727, rel=1e-5)

    def test_monte_carlo_cross_check(self):
        rng = np.random.default_rng(12345)
        n = 2_000_000
        r_max = 60.0
        # sample radii with density proportional to 1/r^3 on (1, r_max)
        u = rng.random(n)
        inv2 = 1.0 - (1.0 - r_max ** -2) * u
        r = inv2 ** -0.5
        # importance weight: (area element r dr dtheta) / sampling density
        w = 0.5 * (1.0 - r_max ** -2) * r ** 4
        theta = 2.0 * math.pi * rng.random(n)
        a = 0.5  # interior point for delta = 0.5
        d2 = r * r + a * a - 2.0 * r * a * np.cos(theta)
        est = float(np.mean(w * 2.0 * math.pi * d2 ** -2))
        se = float(np.std(w * 2.0 * math.pi * d2 ** -2) / math.sqrt(n))
        assert abs(est - delta_integral(0.5, 4.0)) < 4.0 * se

    def test_diverges_as_delta_shrinks(self):
        vals = [delta_integral(d, 4.0) for d in (0.5, 0.2, 0.1, 0.05)]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_domain_checks(self):
        with pytest.raises(DomainError):
            delta_integral(0.0, 4.0)
        with pytest.raises(DomainError):
            delta_integral(0.5, 2.0)


class TestEta:
    def test_noiseless_closed_form(self):
        # with no noise tilt, eta is E[r^alpha] = 2 / (pi * lambda)^2 at alpha=4
        cfg = NetworkConfig(bs_density=LAM200, pathloss_alpha=4.0,
                            noise_power=0.0, cluster_radius=R1)
        assert eta(0.0, cfg) == pytest.approx(2.0 / (math.pi * LAM200) ** 2,
                                              rel=1e-6)

    def test_noise_tilt_shrinks_eta(self):
        cfg = NetworkConfig(bs_density=LAM200, pathloss_alpha=4.0,
                            noise_power=calibrate_noise(200.0, 10.0),
                            cluster_radius=R1)
        assert eta(5.0, cfg) < eta(0.0, cfg)


class TestScalingLaw:
    def test_radius_scales_with_epsilon_power(self):
        # R* is proportional to epsilon^(-1/(alpha-2)) = epsilon^(-1/2)
        r1 = optimal_radius(make_query(0.2, noise=0.0))
        r2 = optimal_radius(make_query(0.05, noise=0.0))
        assert r2 / r1 == pytest.approx(2.0, abs=1e-10)

    def test_mean_cluster_size_density_invariant(self):
        # noiseless, the required BS count depends only on (epsilon, delta, T)
        a = mean_cluster_size(make_query(0.1, spacing=200.0, noise=0.0))
        b = mean_cluster_size(make_query(0.1, spacing=400.0, noise=0.0))
        assert a == pytest.approx(b, rel=1e-9)

    def test_pre_asymptotic_radius_is_smaller(self):
        q = make_query(0.2, noise=0.0)
        assert optimal_radius(q, asymptotic=False) < optimal_radius(q)

    def test_boundary_coverage_increases_with_radius(self):
        q = make_query(0.1, noise=0.0)
        r = optimal_radius(q)
        assert boundary_coverage(2.0 * r, q) > boundary_coverage(0.5 * r, q)

    def test_verify_scaling_converges(self):
        ratios = []
        for eps in (0.2, 0.1, 0.05, 0.02):
            _, _, ratio = verify_scaling(make_query(eps, noise=0.0))
            ratios.append(ratio)
        assert all(b > a for a, b in zip(ratios, ratios[1:]))
        # golden frozen from the numeric boundary-coverage root before wiring
        assert ratios[-1] == pytest.approx(0.97050, abs=5e-4)
        assert abs(ratios[-1] - 1.0) < 0.1

    def test_query_validation(self):
        with pytest.raises(DomainError):
            make_query(0.0)
        with pytest.raises(DomainError):
            make_query(0.1, delta=1.5)
