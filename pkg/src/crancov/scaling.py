"""Cluster-radius scaling law: how large must a cluster be so that a user
at normalized interior offset delta loses at most a fraction epsilon of the
ideal-cloud coverage.

The law reads R*(epsilon, delta) = (lam * T * Delta(delta) * eta(T) /
epsilon)^(1/(alpha-2)) where Delta(delta) integrates the pathloss over the
exterior of the unit disc seen from (1-delta, 0) and eta(T) is the tilted
mean of r^alpha under the nearest-BS distance. verify_scaling checks the
asymptotics against a direct numeric model of the boundary user.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericError
from .model import NetworkConfig, pdf_nearest_bs
from .numerics import find_root, gauss_legendre, panel_nodes

_GL8 = gauss_legendre(8)


@dataclass(frozen=True)
class ScalingQuery:
    epsilon: float
    delta: float
    threshold: float
    config: NetworkConfig

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise DomainError("epsilon must lie in (0, 1)")
        if not 0.0 < self.delta <= 1.0:
            raise DomainError("delta must lie in (0, 1]")
        if self.threshold < 0.0:
            raise DomainError("threshold must be >= 0")


def _panels_toward(a: float, b: float, uniform: int, refine: int,
                   scale: float, at_start: bool):
    """Panel edges on [a, b], geometrically refined toward one endpoint.

    Edge offsets from the refined endpoint grow geometrically from ~scale
    out to the full width; a uniform split of [a, b] is merged in so the
    coarse side keeps resolution.
    """
    width = b - a
    depth = min(max(scale, 1e-12), 0.5 * width)
    offsets = depth * (width / depth) ** (np.arange(refine + 1) / refine)
    if at_start:
        edges = np.concatenate([[a], a + offsets])
    else:
        edges = np.concatenate([b - offsets[::-1], [b]])
    edges = np.clip(edges, a, b)
    coarse = np.linspace(a, b, uniform + 1)
    return np.unique(np.concatenate([edges, coarse]))


def _nodes_from_edges(edges, rule):
    lo = edges[:-1][:, None]
    hi = edges[1:][:, None]
    x = 0.5 * (lo + hi) + 0.5 * (hi - lo) * rule.nodes[None, :]
    w = 0.5 * (hi - lo) * rule.weights[None, :]
    return x.ravel(), w.ravel()


def _exterior_grid(delta: float, uniform: int = 12, refine: int = 24):
    """Quadrature grid for integrals over the exterior of the unit disc.

    Uses the inversion r = 1/v so the domain becomes v in (0, 1], theta in
    [0, pi] (doubled by symmetry). The integrand of interest is singular
    (or nearly so) at the corner (v=1, theta=0) facing the offset user, so
    both axes are geometrically refined there when delta is small.
    """
    scale = max(min(delta, 0.25), 1e-6)
    if delta < 0.2:
        v_edges = _panels_toward(0.0, 1.0, uniform, refine, scale / 8.0, at_start=False)
        t_edges = _panels_toward(0.0, math.pi, uniform, refine, scale / 8.0, at_start=True)
    else:
        v_edges = np.linspace(0.0, 1.0, uniform + 1)
        t_edges = np.linspace(0.0, math.pi, uniform + 1)
    v, wv = _nodes_from_edges(v_edges, _GL8)
    t, wt = _nodes_from_edges(t_edges, _GL8)
    return v, wv, t, wt


def delta_integral(delta: float, alpha: float) -> float:
    """Pathloss integral over the exterior of the unit disc seen from the
    interior point (1 - delta, 0); diverges as delta -> 0."""
    if not 0.0 < delta <= 1.0:
        raise DomainError("delta must lie in (0, 1]")
    if not alpha > 2.0:
        raise DomainError("alpha must exceed 2")
    a = 1.0 - delta
    v, wv, t, wt = _exterior_grid(delta)
    # dz = r dr dtheta with r = 1/v gives v^(alpha-3) * q^(-alpha/2),
    # q = 1 + a^2 v^2 - 2 a v cos(theta)
    q = 1.0 + (a * v[:, None]) ** 2 - 2.0 * a * v[:, None] * np.cos(t)[None, :]
    integrand = v[:, None] ** (alpha - 3.0) * q ** (-alpha / 2.0)
    return 2.0 * float(wv @ integrand @ wt)


def eta(threshold: float, config: NetworkConfig) -> float:
    """Tilted mean of r^alpha under the nearest-BS distance distribution."""
    if threshold < 0.0:
        raise DomainError("threshold must be >= 0")
    lam, alpha = config.bs_density, config.pathloss_alpha
    sigma2 = config.noise_power / config.tx_power
    r, w = panel_nodes(0.0, math.sqrt(40.0 / (math.pi * lam)), _GL8, 48)
    f = pdf_nearest_bs(r, lam) * np.exp(-threshold * sigma2 * r ** alpha)
    den = float(np.dot(w, f))
    num = float(np.dot(w, f * r ** alpha))
    if den <= 0.0:
        raise NumericError("eta denominator vanished")
    return num / den


def optimal_radius(query: ScalingQuery, asymptotic: bool = True) -> float:
    """Cluster radius meeting the epsilon coverage penalty.

    asymptotic=True uses the penalty epsilon directly; otherwise the
    pre-asymptotic form with ln(1/(1-epsilon)).
    """
    cfg = query.config
    lam, alpha = cfg.bs_density, cfg.pathloss_alpha
    pen = query.epsilon if asymptotic else math.log(1.0 / (1.0 - query.epsilon))
    d = delta_integral(query.delta, alpha)
    e = eta(query.threshold, cfg)
    return (lam * query.threshold * d * e / pen) ** (1.0 / (alpha - 2.0))


def mean_cluster_size(query: ScalingQuery, asymptotic: bool = True) -> float:
    """Average number of BSs in the cluster of radius R*(epsilon, delta)."""
    r_star = optimal_radius(query, asymptotic=asymptotic)
    return query.config.bs_density * math.pi * r_star ** 2


def _ideal_coverage(threshold: float, config: NetworkConfig) -> float:
    lam, alpha = config.bs_density, config.pathloss_alpha
    sigma2 = config.noise_power / config.tx_power
    r, w = panel_nodes(0.0, math.sqrt(40.0 / (math.pi * lam)), _GL8, 48)
    f = pdf_nearest_bs(r, lam)
    return float(np.dot(w, f * np.exp(-threshold * sigma2 * r ** alpha)))


def boundary_coverage(R: float, query: ScalingQuery) -> float:
    """Coverage of a user at (1-delta)*R with nearest-BS association and
    interference from every BS outside the cluster disc (exact Laplace
    transform, averaged over the nearest distance)."""
    if R <= 0.0:
        raise DomainError("R must be positive")
    cfg = query.config
    lam, alpha = cfg.bs_density, cfg.pathloss_alpha
    sigma2 = cfg.noise_power / cfg.tx_power
    T = query.threshold
    a = 1.0 - query.delta
    v, wv, t, wt = _exterior_grid(query.delta)
    q = 1.0 + (a * v[:, None]) ** 2 - 2.0 * a * v[:, None] * np.cos(t)[None, :]
    qa = q ** (alpha / 2.0)
    va = v ** alpha
    v3 = v ** (alpha - 3.0)

    r, wr = panel_nodes(0.0, math.sqrt(40.0 / (math.pi * lam)), _GL8, 48)
    f = pdf_nearest_bs(r, lam) * np.exp(-T * sigma2 * r ** alpha)
    # kappa = R^alpha / (T r^alpha); integrand v^(alpha-3)/(v^alpha + kappa*q^(alpha/2))
    kappa = R ** alpha / (T * np.maximum(r, 1e-12) ** alpha)
    g = np.empty_like(r)
    for i, k in enumerate(kappa):
        integrand = v3[:, None] / (va[:, None] + k * qa)
        g[i] = 2.0 * float(wv @ integrand @ wt)
    t1 = np.exp(-lam * R * R * g)
    return float(np.dot(wr, f * t1))


def verify_scaling(query: ScalingQuery) -> tuple:
    """Root-find the radius whose boundary-user coverage hits the epsilon
    penalty and compare it against the closed-form scaling prediction.

    Returns (R_numeric, R_formula, ratio).
    """
    target = (1.0 - query.epsilon) * _ideal_coverage(query.threshold, query.config)
    r_formula = optimal_radius(query, asymptotic=True)

    def gap(R):
        return boundary_coverage(R, query) - target

    lo, hi = r_formula / 8.0, r_formula * 8.0
    for _ in range(40):
        if gap(lo) < 0.0:
            break
        lo /= 2.0
    for _ in range(40):
        if gap(hi) > 0.0:
            break
        hi *= 2.0
    r_numeric = find_root(gap, lo, hi, tol=1e-9)
    return r_numeric, r_formula, r_numeric / r_formula
