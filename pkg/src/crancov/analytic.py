"""Closed-form coverage and rate machinery for the clustered network.

Coverage of the typical user is a lower bound assembled from per-type
conditional probabilities:

* full CSI    — type I (tagged-BS void disc inside the cluster) and type II
  (void disc straddling the boundary); type III mass is dropped and reported.
* partial CSI — types I/II/III keyed on the L-th fed-back distance r_l;
  type IV/V mass is dropped and reported.
* baselines   — the no-cooperation network (interference beyond the tagged
  BS) and the ideal cloud (no interference at all).

All interference factors reduce to angular integrals of the per-radian
exponent lam * s * d^(2-alpha) * Lambda(s * d^-alpha) / (alpha - 2) where
s = T * r_b^alpha and d is the exclusion distance along that direction.
Three exclusion profiles appear:

* type-I full CSI excludes an inflated disc of radius sqrt(R^2 + r_u^2)
  about the cluster center, so d(phi) = sqrt(r_u^2 cos^2 phi + R^2)
  - r_u cos phi;
* chord-limited sectors use the first-order boundary profile
  d(phi) = R - r_u cos phi;
* wedge sectors use a constant radius (r_b or r_l).

These profiles, and the choice of which factor covers which angular range,
were calibrated against the reference coverage dataset; chord_length exposes
the exact chord for geometric work. phi is measured from the outward radial
direction at the user, so every profile is minimal at phi = 0 and symmetric
in +-phi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .curves import (ANALYTIC_FULL, ANALYTIC_IDEAL, ANALYTIC_NOCLOUD,
                     ANALYTIC_PCSI, CoverageCurve, RateProfile)
from .errors import ConfigurationError, DomainError, NumericError
from .model import (FULL_CSI, NetworkConfig, pdf_lth_given_rb,
                    type_probabilities)
from .numerics import (find_root, gauss_legendre, interference_kernel,
                       panel_nodes)

_COVERAGE_FLOOR = 1e-6  # rate-domain tail cutoff
_GL4 = gauss_legendre(4)
_GL48 = gauss_legendre(48)

# log-log interpolation table of the Lambda kernel, cached per alpha; the
# table is built from interference_kernel and is accurate to ~2e-6 relative,
# far inside every tolerance the curve integrals carry
_KERNEL_TABLES: dict = {}
_TABLE_LO, _TABLE_HI, _TABLE_N = 1e-14, 1e16, 8001


def _kernel_table(alpha: float):
    key = round(alpha, 12)
    if key not in _KERNEL_TABLES:
        x = np.logspace(math.log10(_TABLE_LO), math.log10(_TABLE_HI), _TABLE_N)
        _KERNEL_TABLES[key] = (np.log(x), np.log(interference_kernel(x, alpha)))
    return _KERNEL_TABLES[key]


def _kernel(x, alpha: float):
    lx, ly = _kernel_table(alpha)
    x = np.asarray(x, dtype=float)
    return np.exp(np.interp(np.log(np.clip(x, _TABLE_LO, _TABLE_HI)), lx, ly))


def _per_radian(s, d, lam: float, alpha: float):
    """Interference exponent per radian for exclusion distance d."""
    s = np.asarray(s, dtype=float)
    d = np.asarray(d, dtype=float)
    return lam * s * d ** (2.0 - alpha) * _kernel(s * d ** (-alpha), alpha) / (alpha - 2.0)


# ---------------------------------------------------------------------------
# geometry


def chord_length(phi, r_u: float, R: float):
    """Exact distance from a user at radius r_u to the cluster boundary.

    phi is measured from the outward radial direction at the user.
    """
    if r_u < 0.0 or r_u > R:
        raise DomainError("r_u must lie in [0, R]")
    c = np.cos(np.asarray(phi, dtype=float))
    return np.sqrt(np.maximum(c * c * r_u * r_u - r_u * r_u + R * R, 0.0)) - c * r_u


def _profile_inflated(phi, r_u: float, R: float):
    """Distance to the circle of radius sqrt(R^2 + r_u^2) about the center."""
    c = np.cos(np.asarray(phi, dtype=float))
    return np.sqrt(c * c * r_u * r_u + R * R) - c * r_u


def _profile_linear(phi, r_u: float, R: float):
    """First-order boundary profile R - r_u*cos(phi)."""
    return R - r_u * np.cos(np.asarray(phi, dtype=float))


def wedge_angle(r_x: float, r_u: float, R: float) -> float:
    """Half-angle of the sector in which a disc of radius r_x around the
    user pokes outside the cluster disc."""
    if not r_u > 0.0:
        raise DomainError("r_u must be positive")
    if r_x < R - r_u - 1e-9 * R or r_x > R + r_u + 1e-9 * R:
        raise DomainError("r_x must lie in [R - r_u, R + r_u]")
    arg = (r_x * r_x + r_u * r_u - R * R) / (2.0 * r_x * r_u)
    return math.pi - math.acos(min(1.0, max(-1.0, arg)))


def _wedge_vec(r_x, r_u: float, R: float):
    """Vectorized wedge_angle with the same clamping, no domain checks."""
    r_x = np.asarray(r_x, dtype=float)
    arg = np.clip((r_x * r_x + r_u * r_u - R * R) / (2.0 * r_x * r_u), -1.0, 1.0)
    return math.pi - np.arccos(arg)


# ---------------------------------------------------------------------------
# queries


@dataclass(frozen=True)
class CoverageQuery:
    """One analytic coverage request: scenario plus numeric knobs."""

    config: NetworkConfig
    thresholds_db: tuple
    angular_segments: int = 128
    radial_panels: int = 16

    def __post_init__(self):
        object.__setattr__(self, "thresholds_db", tuple(self.thresholds_db))
        if not self.thresholds_db:
            raise ConfigurationError("thresholds_db must be nonempty")
        if any(b <= a for a, b in zip(self.thresholds_db, self.thresholds_db[1:])):
            raise ConfigurationError("thresholds_db must be strictly ascending")
        if self.angular_segments < 8:
            raise ConfigurationError("angular_segments must be >= 8")
        if self.radial_panels < 2:
            raise ConfigurationError("radial_panels must be >= 2")

    @property
    def thresholds_linear(self) -> np.ndarray:
        return 10.0 ** (np.asarray(self.thresholds_db, dtype=float) / 10.0)


def db_to_linear(db) -> np.ndarray:
    return 10.0 ** (np.asarray(db, dtype=float) / 10.0)


# ---------------------------------------------------------------------------
# full-CSI per-type conditionals


def coverage_type1_full(T: float, r_u: float, r_b: float,
                        config: NetworkConfig, M: int = 128) -> float:
    """Conditional coverage when the void disc sits inside the cluster.

    The angular integral over the inflated-disc profile is evaluated by an
    M-segment midpoint sum.
    """
    if r_u + r_b > config.cluster_radius + 1e-9 * config.cluster_radius:
        raise DomainError("type-I requires r_u + r_b <= R")
    lam, alpha = config.bs_density, config.pathloss_alpha
    s = T * r_b ** alpha
    phis = 2.0 * math.pi * (np.arange(M) + 0.5) / M
    d = _profile_inflated(phis, r_u, config.cluster_radius)
    expo = (2.0 * math.pi / M) * float(np.sum(_per_radian(s, d, lam, alpha)))
    return math.exp(-s * config.noise_power / config.tx_power - expo)


def coverage_type2_full(T: float, r_u: float, r_b: float,
                        config: NetworkConfig, M: int = 128) -> float:
    """Conditional coverage when the void disc straddles the boundary.

    Interference resumes at r_b over the wedge |phi| < Theta and at the
    boundary profile over the complementary range (Theta, 2*pi - Theta).
    """
    R = config.cluster_radius
    if not (R - r_u - 1e-9 * R <= r_b <= R + r_u + 1e-9 * R):
        raise DomainError("type-II requires R - r_u <= r_b <= R + r_u")
    lam, alpha = config.bs_density, config.pathloss_alpha
    s = T * r_b ** alpha
    theta = wedge_angle(min(max(r_b, R - r_u), R + r_u), r_u, R)
    expo = 2.0 * theta * float(_per_radian(s, r_b, lam, alpha))
    ph, wph = panel_nodes(theta, math.pi, _GL48, 1)
    d = _profile_linear(ph, r_u, R)
    expo += 2.0 * float(np.dot(wph, _per_radian(s, d, lam, alpha)))
    return math.exp(-s * config.noise_power / config.tx_power - expo)


def _full_csi_vector(Ts: np.ndarray, config: NetworkConfig,
                     M: int = 128, radial_panels: int = 16) -> np.ndarray:
    """Lower-bound coverage with full CSI, vectorized over thresholds."""
    lam, alpha = config.bs_density, config.pathloss_alpha
    R = config.cluster_radius
    sigma2 = config.noise_power / config.tx_power
    phis = 2.0 * math.pi * (np.arange(M) + 0.5) / M
    xi, wxi = panel_nodes(0.0, 1.0, _GL48, 1)
    ru_panels = max(2, 3 * radial_panels // 4)
    ru_n, ru_w = panel_nodes(0.0, R, _GL4, ru_panels)
    total = np.zeros_like(Ts)
    for r_u, w_u in zip(ru_n, ru_w):
        d1 = _profile_inflated(phis, r_u, R)
        rb, wb = panel_nodes(0.0, R - r_u, _GL4, radial_panels)
        s = Ts[None, :] * rb[:, None] ** alpha              # (rb, T)
        expo = (2.0 * math.pi / M) * np.sum(
            _per_radian(s[:, :, None], d1[None, None, :], lam, alpha), axis=2)
        p1 = np.exp(-s * sigma2 - expo)
        f1 = 2.0 * math.pi * lam * rb * np.exp(-math.pi * lam * rb * rb)
        inner = (wb * f1) @ p1

        rb2, wb2 = panel_nodes(R - r_u, R + r_u, _GL4, radial_panels)
        s2 = Ts[None, :] * rb2[:, None] ** alpha
        theta = _wedge_vec(rb2, r_u, R)                     # (rb,)
        wedge = 2.0 * theta[:, None] * _per_radian(s2, rb2[:, None], lam, alpha)
        ph = theta[:, None] + (math.pi - theta[:, None]) * xi[None, :]
        wph = (math.pi - theta[:, None]) * wxi[None, :]     # (rb, phi)
        d2 = _profile_linear(ph, r_u, R)
        chord_part = 2.0 * np.sum(
            wph[:, :, None] * _per_radian(s2[:, None, :], d2[:, :, None], lam, alpha),
            axis=1)
        p2 = np.exp(-s2 * sigma2 - wedge - chord_part)
        f2 = 2.0 * math.pi * lam * rb2 * np.exp(-math.pi * lam * rb2 * rb2)
        inner += (wb2 * f2) @ p2
        total += w_u * (2.0 * r_u / (R * R)) * inner
    return total


def coverage_full_csi(query: CoverageQuery) -> CoverageCurve:
    cfg = query.config
    cov = _full_csi_vector(query.thresholds_linear, cfg,
                           M=query.angular_segments,
                           radial_panels=query.radial_panels)
    p1, p2 = type_probabilities(cfg.bs_density, cfg.cluster_radius)
    meta = {"dropped_type_mass": max(0.0, 1.0 - p1 - p2)}
    return CoverageCurve(thresholds_db=list(query.thresholds_db),
                         coverage=np.clip(cov, 0.0, 1.0).tolist(),
                         method=ANALYTIC_FULL, config_digest=cfg.digest(),
                         ci_halfwidth=[0.0] * len(query.thresholds_db),
                         meta=meta)


# ---------------------------------------------------------------------------
# baselines


def _radial_tail(lam: float) -> float:
    """Radius beyond which the nearest-distance pdf mass is < 1e-17."""
    return math.sqrt(40.0 / (math.pi * lam))


def _ideal_vector(Ts: np.ndarray, config: NetworkConfig,
                  radial_panels: int = 64) -> np.ndarray:
    lam, alpha = config.bs_density, config.pathloss_alpha
    sigma2 = config.noise_power / config.tx_power
    r, w = panel_nodes(0.0, _radial_tail(lam), _GL4, radial_panels)
    f = 2.0 * math.pi * lam * r * np.exp(-math.pi * lam * r * r)
    expo = Ts[None, :] * sigma2 * r[:, None] ** alpha
    return (w * f) @ np.exp(-expo)


def coverage_ideal(config: NetworkConfig, thresholds_db) -> CoverageCurve:
    """Noise-limited coverage of a fully cooperating network."""
    thresholds_db = list(thresholds_db)
    cov = _ideal_vector(db_to_linear(thresholds_db), config)
    return CoverageCurve(thresholds_db=thresholds_db,
                         coverage=np.clip(cov, 0.0, 1.0).tolist(),
                         method=ANALYTIC_IDEAL, config_digest=config.digest(),
                         ci_halfwidth=[0.0] * len(thresholds_db))


def _nocloud_vector(Ts: np.ndarray, config: NetworkConfig,
                    radial_panels: int = 64) -> np.ndarray:
    lam, alpha = config.bs_density, config.pathloss_alpha
    sigma2 = config.noise_power / config.tx_power
    r, w = panel_nodes(0.0, _radial_tail(lam), _GL4, radial_panels)
    f = 2.0 * math.pi * lam * r * np.exp(-math.pi * lam * r * r)
    s = Ts[None, :] * r[:, None] ** alpha
    expo = s * sigma2 + 2.0 * math.pi * _per_radian(s, r[:, None], lam, alpha)
    return (w * f) @ np.exp(-expo)


def coverage_nocloud(config: NetworkConfig, thresholds_db) -> CoverageCurve:
    """Nearest-BS association with interference from every other BS."""
    thresholds_db = list(thresholds_db)
    cov = _nocloud_vector(db_to_linear(thresholds_db), config)
    return CoverageCurve(thresholds_db=thresholds_db,
                         coverage=np.clip(cov, 0.0, 1.0).tolist(),
                         method=ANALYTIC_NOCLOUD, config_digest=config.digest(),
                         ci_halfwidth=[0.0] * len(thresholds_db))


# ---------------------------------------------------------------------------
# partial-CSI per-type conditionals

def _pcsi_order(L: int) -> int:
    """Order of the exclusion-radius distribution beyond the tagged BS.

    The tagged BS counts among the L fed-back channels, so r_l is the
    (L-1)-th neighbor distance beyond r_b (floored at 1 for L = 1).
    """
    return max(L - 1, 1)


def coverage_type1_pcsi(T: float, r_u: float, r_b: float, r_l: float,
                        config: NetworkConfig) -> float:
    """All L fed-back BSs inside the cluster; interference beyond r_l."""
    if r_l < r_b:
        raise DomainError("r_l must be >= r_b")
    lam, alpha = config.bs_density, config.pathloss_alpha
    s = T * r_b ** alpha
    expo = 2.0 * math.pi * float(_per_radian(s, r_l, lam, alpha))
    return math.exp(-s * config.noise_power / config.tx_power - expo)


def coverage_type2_pcsi(T: float, r_u: float, r_b: float, r_l: float,
                        config: NetworkConfig, M: int = 128) -> float:
    """Fed-back disc straddles the boundary; tagged void disc inside.

    Interference resumes at the boundary profile over |phi| < Theta (the
    out-of-cluster BSs inside the fed-back disc are not cancelled) and at
    r_l over the remaining 2*(pi - Theta).
    """
    R = config.cluster_radius
    if r_l < r_b:
        raise DomainError("r_l must be >= r_b")
    lam, alpha = config.bs_density, config.pathloss_alpha
    s = T * r_b ** alpha
    theta = wedge_angle(min(max(r_l, R - r_u), R + r_u), r_u, R)
    ph, wph = panel_nodes(0.0, theta, _GL48, 1)
    d = _profile_linear(ph, r_u, R)
    expo = 2.0 * float(np.dot(wph, _per_radian(s, d, lam, alpha)))
    expo += 2.0 * (math.pi - theta) * float(_per_radian(s, r_l, lam, alpha))
    return math.exp(-s * config.noise_power / config.tx_power - expo)


def coverage_type3_pcsi(T: float, r_u: float, r_b: float, r_l: float,
                        config: NetworkConfig, M: int = 128) -> float:
    """Both the tagged void disc and the fed-back disc straddle the boundary."""
    R = config.cluster_radius
    if r_l < r_b:
        raise DomainError("r_l must be >= r_b")
    lam, alpha = config.bs_density, config.pathloss_alpha
    s = T * r_b ** alpha
    th1 = wedge_angle(min(max(r_b, R - r_u), R + r_u), r_u, R)
    th2 = wedge_angle(min(max(r_l, R - r_u), R + r_u), r_u, R)
    th2 = max(th2, th1)
    expo = 2.0 * th1 * float(_per_radian(s, r_b, lam, alpha))
    if th2 > th1:
        ph, wph = panel_nodes(th1, th2, _GL48, 1)
        d = _profile_linear(ph, r_u, R)
        expo += 2.0 * float(np.dot(wph, _per_radian(s, d, lam, alpha)))
    expo += 2.0 * (math.pi - th2) * float(_per_radian(s, r_l, lam, alpha))
    return math.exp(-s * config.noise_power / config.tx_power - expo)


def _pcsi_vector(Ts: np.ndarray, config: NetworkConfig,
                 nu: int = 36, nb: int = 40, nl: int = 28,
                 nph: int = 24) -> np.ndarray:
    """Lower-bound coverage with partial CSI, vectorized over thresholds."""
    if config.csi_limit == FULL_CSI:
        raise ConfigurationError("partial-CSI coverage needs an integer csi_limit")
    lam, alpha = config.bs_density, config.pathloss_alpha
    R = config.cluster_radius
    sigma2 = config.noise_power / config.tx_power
    order = _pcsi_order(config.csi_limit)
    glph = gauss_legendre(nph)
    xi, wxi = panel_nodes(0.0, 1.0, glph, 1)
    ru_n, ru_w = panel_nodes(0.0, R, _GL4, max(2, nu // 4))
    total = np.zeros_like(Ts)
    for r_u, w_u in zip(ru_n, ru_w):
        f_u = 2.0 * r_u / (R * R)
        acc = np.zeros_like(Ts)
        if R - r_u > 0.0:
            rb, wb = panel_nodes(0.0, R - r_u, _GL4, max(2, nb // 4))
            fb = 2.0 * math.pi * lam * rb * np.exp(-math.pi * lam * rb * rb)
            for j in range(rb.size):
                s = Ts * rb[j] ** alpha
                noise = np.exp(-s * sigma2)
                # type I: fed-back disc inside the cluster
                rl, wl = panel_nodes(rb[j], R - r_u, _GL4, max(2, nl // 4))
                fl = pdf_lth_given_rb(rl, rb[j], order, lam)
                e1 = np.exp(-2.0 * math.pi
                            * _per_radian(s[None, :], rl[:, None], lam, alpha))
                acc += wb[j] * fb[j] * noise * ((wl * fl) @ e1)
                # type II: fed-back disc straddles the boundary
                rl2, wl2 = panel_nodes(R - r_u, R + r_u, _GL4, max(2, nl // 4))
                fl2 = pdf_lth_given_rb(rl2, rb[j], order, lam)
                th = _wedge_vec(rl2, r_u, R)                # (rl,)
                ph = th[:, None] * xi[None, :]
                wph = th[:, None] * wxi[None, :]
                d = _profile_linear(ph, r_u, R)             # (rl, phi)
                chord = 2.0 * np.sum(
                    wph[:, :, None]
                    * _per_radian(s[None, None, :], d[:, :, None], lam, alpha),
                    axis=1)
                e2 = np.exp(-chord - 2.0 * (math.pi - th)[:, None]
                            * _per_radian(s[None, :], rl2[:, None], lam, alpha))
                acc += wb[j] * fb[j] * noise * ((wl2 * fl2) @ e2)
        # type III: tagged void disc straddles the boundary
        rb3, wb3 = panel_nodes(max(R - r_u, 0.0), R + r_u, _GL4, max(2, nb // 4))
        fb3 = 2.0 * math.pi * lam * rb3 * np.exp(-math.pi * lam * rb3 * rb3)
        th1 = _wedge_vec(rb3, r_u, R)
        for j in range(rb3.size):
            if rb3[j] >= R + r_u:
                continue
            s = Ts * rb3[j] ** alpha
            noise = np.exp(-s * sigma2)
            rl3, wl3 = panel_nodes(rb3[j], R + r_u, _GL4, max(2, nl // 4))
            fl3 = pdf_lth_given_rb(rl3, rb3[j], order, lam)
            th2 = _wedge_vec(rl3, r_u, R)
            span = np.maximum(th2 - th1[j], 0.0)
            ph = th1[j] + span[:, None] * xi[None, :]
            wph = span[:, None] * wxi[None, :]
            d = _profile_linear(ph, r_u, R)
            chord = 2.0 * np.sum(
                wph[:, :, None]
                * _per_radian(s[None, None, :], d[:, :, None], lam, alpha),
                axis=1)
            e3 = np.exp(-chord
                        - 2.0 * th1[j]
                        * _per_radian(s[None, :],
                                      np.full((rl3.size, 1), rb3[j]), lam, alpha)
                        - 2.0 * (math.pi - th2)[:, None]
                        * _per_radian(s[None, :], rl3[:, None], lam, alpha))
            acc += wb3[j] * fb3[j] * noise * ((wl3 * fl3) @ e3)
        total += w_u * f_u * acc
    return total


def coverage_pcsi(query: CoverageQuery) -> CoverageCurve:
    cfg = query.config
    cov = _pcsi_vector(query.thresholds_linear, cfg)
    return CoverageCurve(thresholds_db=list(query.thresholds_db),
                         coverage=np.clip(cov, 0.0, 1.0).tolist(),
                         method=ANALYTIC_PCSI, config_digest=cfg.digest(),
                         ci_halfwidth=[0.0] * len(query.thresholds_db))


# ---------------------------------------------------------------------------
# rate machinery

_METHOD_DISPATCH = {
    ANALYTIC_FULL: lambda Ts, cfg: _full_csi_vector(Ts, cfg),
    ANALYTIC_PCSI: lambda Ts, cfg: _pcsi_vector(Ts, cfg),
    ANALYTIC_IDEAL: lambda Ts, cfg: _ideal_vector(Ts, cfg),
    ANALYTIC_NOCLOUD: lambda Ts, cfg: _nocloud_vector(Ts, cfg),
}


def coverage_linear(config: NetworkConfig, thresholds_linear, method: str):
    """Coverage at linear thresholds, dispatched on the analytic method."""
    if method not in _METHOD_DISPATCH:
        raise ConfigurationError(f"unknown analytic method {method!r}")
    Ts = np.atleast_1d(np.asarray(thresholds_linear, dtype=float))
    if np.any(Ts < 0.0):
        raise DomainError("thresholds must be >= 0")
    return _METHOD_DISPATCH[method](Ts, config)


def rate_cdf(config: NetworkConfig, t: float, method: str = ANALYTIC_FULL) -> float:
    """P(rate < t) = 1 - coverage at threshold 2^t - 1, re-evaluated exactly."""
    if t < 0.0:
        raise DomainError("rate must be >= 0")
    if t == 0.0:
        return 0.0
    return float(1.0 - coverage_linear(config, [2.0 ** t - 1.0], method)[0])


def _rate_tail(config: NetworkConfig, method: str) -> float:
    """Smallest integer t where rate-domain coverage drops below the floor."""
    for t in range(2, 64, 2):
        if coverage_linear(config, [2.0 ** t - 1.0], method)[0] < _COVERAGE_FLOOR:
            return float(t)
    raise NumericError("rate-domain coverage does not decay")


def rate_profile(config: NetworkConfig, method: str = ANALYTIC_FULL) -> RateProfile:
    """Percentile and mean rates implied by an analytic coverage model."""
    t_max = _rate_tail(config, method)
    # mean = integral of the rate-domain coverage; one vectorized call
    tg, wg = panel_nodes(0.0, t_max, gauss_legendre(8), 16)
    cov = coverage_linear(config, 2.0 ** tg - 1.0, method)
    mean = float(np.dot(wg, cov))

    def percentile(level: float) -> float:
        f = lambda t: rate_cdf(config, t, method) - level
        hi = t_max
        lo = 1e-9
        return find_root(f, lo, hi, tol=1e-6)

    p5 = percentile(0.05)
    p10 = percentile(0.10)
    p50 = percentile(0.50)
    return RateProfile(p5=p5, p10=p10, p50=p50, mean=mean)
