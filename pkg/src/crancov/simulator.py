"""Monte Carlo ground truth for the clustered network.

A realization drops a Poisson field of BSs on a sampling window, schedules
one user per cluster BS (uniform in its Voronoi cell) and scores the
post-precoding SINR of every scheduled user; the no-cloud baseline instead
scores a single typical user placed uniformly in the reference region.
Out-of-window interference is not ignored: the mean of the truncated
shot-noise tail is added deterministically (its standard deviation is orders
of magnitude below the noise floor for the default window), so results are
insensitive to the truncation radius.

Reproducibility: realization k uses the substream SeedSequence(seed,
spawn_key=(k,)). Aggregation is a pure reduction over per-realization
samples, so results do not depend on evaluation order or worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.spatial import cKDTree

from .errors import ConfigurationError, DomainError, StatisticalError
from .model import (NetworkConfig, UserType, FULL_CSI, DistanceSample,
                    classify_user)
from .curves import CoverageCurve, RateProfile

DISC = "disc"
SQUARE = "square"
MODE_FULL_LQ = "full-lq"
MODE_DIAGONAL = "diagonal-approx"
MODE_PCSI = "pcsi-exclusion"
MODE_NOCLOUD = "no-cloud"
_MODES = (MODE_FULL_LQ, MODE_DIAGONAL, MODE_PCSI, MODE_NOCLOUD)


@dataclass(frozen=True)
class SimulationPlan:
    config: NetworkConfig
    realizations: int
    seed: int = 0
    cluster_shape: str = DISC
    precoder_mode: str = MODE_DIAGONAL
    window_radius: float | None = None
    interference_truncation: float | None = None
    random_encoding_order: bool = False

    def __post_init__(self):
        if self.realizations < 1:
            raise ConfigurationError("realizations must be >= 1")
        if self.cluster_shape not in (DISC, SQUARE):
            raise ConfigurationError(f"unknown cluster shape {self.cluster_shape!r}")
        if self.precoder_mode not in _MODES:
            raise ConfigurationError(f"unknown precoder mode {self.precoder_mode!r}")
        if self.precoder_mode == MODE_PCSI and self.config.csi_limit == FULL_CSI:
            raise ConfigurationError("pcsi-exclusion mode needs an integer csi_limit")

    @property
    def truncation_radius(self) -> float:
        """Sampling radius around the user beyond which the tail is folded in
        as its mean. Default keeps the sampled-tail mean at 20% of the noise
        floor (the folded-in remainder makes the estimate truncation-free)."""
        if self.interference_truncation is not None:
            return self.interference_truncation
        cfg = self.config
        lam, alpha = cfg.bs_density, cfg.pathloss_alpha
        sigma2 = max(cfg.noise_power, 1e-300)
        rho = (2.0 * math.pi * lam / ((alpha - 2.0) * 0.2 * sigma2)) ** (1.0 / (alpha - 2.0))
        return max(rho, 6.0 / math.sqrt(math.pi * lam))

    @property
    def window(self) -> float:
        if self.window_radius is not None:
            return self.window_radius
        spacing = 2.0 / math.sqrt(math.pi * self.config.bs_density)
        return self.config.cluster_radius + self.truncation_radius + 5.0 * spacing

    def tail_mean(self) -> float:
        """Expected interference power from beyond the truncation radius."""
        lam, alpha = self.config.bs_density, self.config.pathloss_alpha
        rho = self.truncation_radius
        return 2.0 * math.pi * lam * rho ** (2.0 - alpha) / (alpha - 2.0)

    def digest(self) -> str:
        import hashlib
        key = (f"{self.config.digest()}|{self.realizations}|{self.seed}|"
               f"{self.cluster_shape}|{self.precoder_mode}|{self.window:.6e}|"
               f"{self.truncation_radius:.6e}|{self.random_encoding_order}")
        return hashlib.sha256(key.encode()).hexdigest()[:12]


@dataclass
class ClusterRealization:
    bs_points: np.ndarray              # (n, 2)
    cluster_members: np.ndarray        # indices into bs_points
    typical_user: np.ndarray           # (2,)
    tagged_bs: int
    user_type: UserType
    r_u: float
    r_b: float
    r_l: float | None = None
    scheduled_users: np.ndarray | None = None  # (m, 2), aligned with cluster_members
    empty_cluster: bool = False


@dataclass(frozen=True)
class SinrSample:
    sinr: float
    user_type: UserType
    mode: str
    excluded: bool


def sample_ppp(bs_density: float, window_radius: float, rng) -> np.ndarray:
    """Poisson point process on a disc, uniform given the count."""
    if bs_density <= 0.0 or window_radius < 0.0:
        raise DomainError("density must be positive and window nonnegative")
    n = rng.poisson(bs_density * math.pi * window_radius**2)
    r = window_radius * np.sqrt(rng.random(n))
    th = 2.0 * math.pi * rng.random(n)
    return np.column_stack([r * np.cos(th), r * np.sin(th)])


def _in_cluster(points: np.ndarray, plan: SimulationPlan) -> np.ndarray:
    R = plan.config.cluster_radius
    if plan.cluster_shape == DISC:
        return np.einsum("ij,ij->i", points, points) <= R * R
    half = 0.5 * math.sqrt(math.pi) * R  # square of equal area
    return (np.abs(points[:, 0]) <= half) & (np.abs(points[:, 1]) <= half)


def _drop_user(plan: SimulationPlan, rng) -> np.ndarray:
    R = plan.config.cluster_radius
    if plan.cluster_shape == DISC:
        r = R * math.sqrt(rng.random())
        th = 2.0 * math.pi * rng.random()
        return np.array([r * math.cos(th), r * math.sin(th)])
    half = 0.5 * math.sqrt(math.pi) * R
    return rng.uniform(-half, half, size=2)


def _voronoi_user(bs_index: int, points: np.ndarray, tree: cKDTree,
                  spacing: float, rng) -> np.ndarray:
    """Uniform point in the Voronoi cell of one BS, by rejection sampling."""
    center = points[bs_index]
    radius = 1.5 * spacing
    for _ in range(8):
        k = 64
        r = radius * np.sqrt(rng.random(k))
        th = 2.0 * math.pi * rng.random(k)
        cand = center + np.column_stack([r * np.cos(th), r * np.sin(th)])
        _, owner = tree.query(cand)
        hit = np.nonzero(owner == bs_index)[0]
        if hit.size:
            return cand[hit[0]]
        radius *= 2.0
    # degenerate cell (window-edge BS): park the user on top of the BS
    return center + rng.normal(scale=spacing / 100.0, size=2)


def build_realization(plan: SimulationPlan, rng) -> ClusterRealization:
    cfg = plan.config
    pts = sample_ppp(cfg.bs_density, plan.window, rng)
    user = _drop_user(plan, rng)
    members = np.nonzero(_in_cluster(pts, plan))[0]
    if pts.shape[0] == 0:
        return ClusterRealization(pts, members, user, -1, UserType.TYPE_III,
                                  float(np.hypot(*user)), math.inf, empty_cluster=True)
    d_all = np.hypot(pts[:, 0] - user[0], pts[:, 1] - user[1])
    tagged = int(np.argmin(d_all))
    r_u = float(np.hypot(*user))
    r_b = float(d_all[tagged])
    R = cfg.cluster_radius

    r_l = None
    if cfg.csi_limit != FULL_CSI:
        L = cfg.csi_limit
        d_members = np.sort(d_all[members])
        r_l = float(d_members[L - 1]) if d_members.size >= L else math.inf

    # classification is purely geometric in (r_u, r_b, r_l); whether the
    # tagged BS falls inside the cluster polygon does not enter, matching
    # the analytic expectation regions
    sample = DistanceSample(r_u=r_u, r_b=r_b,
                            r_l=max(r_l, r_b) if r_l is not None else None)
    utype = classify_user(sample, R, partial_csi=cfg.csi_limit != FULL_CSI)

    scheduled = None
    if plan.precoder_mode != MODE_NOCLOUD and members.size:
        spacing = 2.0 / math.sqrt(math.pi * cfg.bs_density)
        tree = cKDTree(pts)
        scheduled = np.empty((members.size, 2))
        for i, b in enumerate(members):
            scheduled[i] = _voronoi_user(int(b), pts, tree, spacing, rng)
    return ClusterRealization(pts, members, user, tagged, utype, r_u, r_b,
                              r_l=r_l, scheduled_users=scheduled)


def lq_decompose(H: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """LQ factorization H = L Q via Householder reflections on H^H.

    Householder QR of A = H^H gives A = Q0 R, hence H = R^H Q0^H with R^H
    lower triangular and Q0^H unitary.
    """
    H = np.asarray(H, dtype=complex)
    if H.ndim != 2 or H.shape[0] != H.shape[1] or H.shape[0] == 0:
        raise DomainError("lq_decompose expects a nonempty square matrix")
    m = H.shape[0]
    A = H.conj().T.copy()
    Q0 = np.eye(m, dtype=complex)
    for k in range(m - 1):
        x = A[k:, k]
        nx = np.linalg.norm(x)
        if nx == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x.copy()
        v[0] += phase * nx
        v /= np.linalg.norm(v)
        A[k:, k:] -= 2.0 * np.outer(v, v.conj() @ A[k:, k:])
        Q0[:, k:] -= 2.0 * np.outer(Q0[:, k:] @ v, v.conj())
    L = A.conj().T
    Q = Q0.conj().T
    # zero the numerically-dead upper triangle
    L[np.triu_indices(m, 1)] = 0.0
    return L, Q


def _channel_matrix(real: ClusterRealization, cfg: NetworkConfig, rng,
                    random_order: bool):
    """Cluster channel matrix and the typical user's row index.

    Rows are (user, tagged BS) pairs ordered by the user's distance from the
    cluster center; the typical user replaces the scheduled user of its own
    tagged BS so the matrix stays square.
    """
    pts = real.bs_points[real.cluster_members]
    users = real.scheduled_users.copy()
    tagged_local = int(np.nonzero(real.cluster_members == real.tagged_bs)[0][0])
    users[tagged_local] = real.typical_user
    if random_order:
        order = rng.permutation(len(users))
    else:
        order = np.argsort(np.hypot(users[:, 0], users[:, 1]), kind="stable")
    users = users[order]
    pts = pts[order]
    row = int(np.nonzero(order == tagged_local)[0][0])
    d = np.hypot(users[:, None, 0] - pts[None, :, 0],
                 users[:, None, 1] - pts[None, :, 1])
    d = np.maximum(d, 1e-9)
    m = len(users)
    fades = (rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))) / math.sqrt(2.0)
    H = fades * d ** (-cfg.pathloss_alpha / 2.0)
    return H, row


def zf_dpc_sinr(real: ClusterRealization, plan: SimulationPlan, rng) -> SinrSample:
    """One post-precoding SINR sample for the typical user."""
    cfg = plan.config
    mode = plan.precoder_mode
    if real.empty_cluster:
        return SinrSample(0.0, real.user_type, mode, excluded=True)
    alpha = cfg.pathloss_alpha
    if mode == MODE_NOCLOUD:
        excluded = False
    elif mode == MODE_PCSI:
        # types I-III carry coverage under partial CSI; IV/V are dropped
        excluded = real.user_type in (UserType.TYPE_IV, UserType.TYPE_V)
    else:
        excluded = real.user_type in (UserType.TYPE_III, UserType.TYPE_V)
    if excluded:
        # excluded types carry no coverage; they still count in the totals
        return SinrSample(0.0, real.user_type, mode, excluded=True)

    # interferer set
    user = real.typical_user
    d_all = np.hypot(real.bs_points[:, 0] - user[0], real.bs_points[:, 1] - user[1])
    if mode == MODE_PCSI:
        L = cfg.csi_limit
        order = real.cluster_members[np.argsort(d_all[real.cluster_members])]
        cancelled = set(order[:L].tolist())
        mask = np.ones(real.bs_points.shape[0], dtype=bool)
        mask[list(cancelled)] = False
    elif mode == MODE_NOCLOUD:
        mask = np.ones(real.bs_points.shape[0], dtype=bool)
        mask[real.tagged_bs] = False
    else:
        mask = ~_in_cluster(real.bs_points, plan)
        # the serving BS never interferes, even when it sits outside the
        # cluster polygon (boundary users associated across the edge)
        mask[real.tagged_bs] = False
    mask &= d_all <= plan.truncation_radius
    d_int = d_all[mask]
    # out-of-cluster transmissions stay unit power through their own unitary
    # precoders, so fresh unit-mean exponential fades are the right marginal
    g = rng.exponential(size=d_int.size)
    interference = float(np.sum(g * d_int ** (-alpha))) + plan.tail_mean()

    if mode == MODE_FULL_LQ and (real.cluster_members == real.tagged_bs).any():
        H, row = _channel_matrix(real, cfg, rng, plan.random_encoding_order)
        Lmat, _ = lq_decompose(H)
        diag = abs(Lmat[row, row])
        if not np.isfinite(diag) or diag == 0.0:
            return SinrSample(0.0, real.user_type, mode, excluded=True)
        signal = diag**2
    else:
        # covers the diagonal modes and the boundary corner case where the
        # serving BS sits just outside the cluster polygon: it then transmits
        # to the user alone and no joint cluster matrix applies
        h2 = rng.exponential()
        signal = h2 * real.r_b ** (-alpha)
    sinr = cfg.tx_power * signal / (cfg.noise_power + cfg.tx_power * interference)
    return SinrSample(float(sinr), real.user_type, mode, excluded)


def population_sinr_samples(real: ClusterRealization, plan: SimulationPlan,
                            rng) -> list[SinrSample]:
    """Post-precoding SINR of every scheduled user in the cluster.

    One cooperating cluster serves one user per member BS, so a single
    realization yields a full population of SINR samples. This is the
    estimator the cluster-mode coverage figures are built from: sampling the
    scheduled users (one per Voronoi cell) rather than a single area-uniform
    observer removes the area bias toward large cells.

    Encoding order for the full LQ precoder is by ascending own-BS distance
    (the strongest effective channel is encoded first, the greedy ZF-DPC
    rule), which keeps every row's projection loss small.
    """
    cfg = plan.config
    mode = plan.precoder_mode
    if mode == MODE_NOCLOUD:
        raise ConfigurationError("population sampling needs a cluster mode")
    if real.empty_cluster or real.cluster_members.size == 0:
        return []
    pts = real.bs_points
    bs = pts[real.cluster_members]
    users = real.scheduled_users
    m = users.shape[0]
    alpha = cfg.pathloss_alpha
    R = cfg.cluster_radius
    rho = plan.truncation_radius
    r_own = np.hypot(users[:, 0] - bs[:, 0], users[:, 1] - bs[:, 1])
    r_own = np.maximum(r_own, 1e-9)
    r_ctr = np.hypot(users[:, 0], users[:, 1])

    if mode == MODE_FULL_LQ:
        if plan.random_encoding_order:
            order = rng.permutation(m)
        else:
            order = np.argsort(r_own, kind="stable")
        d = np.hypot(users[order][:, None, 0] - bs[order][None, :, 0],
                     users[order][:, None, 1] - bs[order][None, :, 1])
        d = np.maximum(d, 1e-9)
        fades = (rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))) / math.sqrt(2.0)
        H = fades * d ** (-alpha / 2.0)
        Lmat, _ = lq_decompose(H)
        diag2 = np.empty(m)
        diag2[order] = np.abs(np.diag(Lmat)) ** 2

    # distances from every scheduled user to every BS, shared across modes
    du = np.hypot(users[:, None, 0] - pts[None, :, 0],
                  users[:, None, 1] - pts[None, :, 1])
    du = np.maximum(du, 1e-9)
    out_mask = ~_in_cluster(pts, plan)

    samples: list[SinrSample] = []
    for i in range(m):
        sample = DistanceSample(r_u=float(r_ctr[i]), r_b=float(r_own[i]))
        if mode == MODE_PCSI:
            L = cfg.csi_limit
            dm = du[i][real.cluster_members]
            idx = np.argsort(dm)
            r_l = float(dm[idx[L - 1]]) if m >= L else math.inf
            sample = DistanceSample(r_u=sample.r_u, r_b=sample.r_b,
                                    r_l=max(r_l, sample.r_b))
            utype = classify_user(sample, R, partial_csi=True)
            if utype in (UserType.TYPE_IV, UserType.TYPE_V):
                samples.append(SinrSample(0.0, utype, mode, excluded=True))
                continue
            mask = np.ones(pts.shape[0], dtype=bool)
            mask[real.cluster_members[idx[:L]]] = False
        else:
            utype = classify_user(sample, R)
            mask = out_mask
        keep = mask & (du[i] <= rho)
        g = rng.exponential(size=int(keep.sum()))
        interference = float(np.sum(g * du[i][keep] ** (-alpha))) + plan.tail_mean()
        if mode == MODE_FULL_LQ:
            signal = diag2[i]
            if not np.isfinite(signal) or signal == 0.0:
                samples.append(SinrSample(0.0, utype, mode, excluded=True))
                continue
        else:
            signal = rng.exponential() * r_own[i] ** (-alpha)
        sinr = cfg.tx_power * signal / (cfg.noise_power + cfg.tx_power * interference)
        samples.append(SinrSample(float(sinr), utype, mode, excluded=False))
    return samples


def _substream(seed: int, index: int):
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def run_samples(plan: SimulationPlan):
    """All SINR samples plus user-type tallies for a plan.

    Cluster modes score the whole scheduled population of each realization;
    the no-cloud baseline scores the single typical user. The tallies always
    track the typical user's geometric type.
    """
    samples = []
    tallies = {t: 0 for t in UserType}
    empty = 0
    population = plan.precoder_mode != MODE_NOCLOUD
    for k in range(plan.realizations):
        rng = _substream(plan.seed, k)
        real = build_realization(plan, rng)
        if real.empty_cluster or (population and real.cluster_members.size == 0):
            empty += 1
            continue
        tallies[real.user_type] += 1
        if population:
            samples.extend(population_sinr_samples(real, plan, rng))
        else:
            samples.append(zf_dpc_sinr(real, plan, rng))
    return samples, tallies, empty


def empirical_coverage(plan: SimulationPlan, thresholds_db) -> CoverageCurve:
    if plan.realizations < 1000:
        raise ConfigurationError("empirical coverage needs >= 1000 realizations")
    samples, tallies, empty = run_samples(plan)
    # excluded user types carry zero coverage but stay in the denominator,
    # matching the total-probability decomposition of the analytic curves
    sinrs = np.array([0.0 if s.excluded else s.sinr for s in samples])
    n = sinrs.size
    if n == 0:
        raise StatisticalError("all realizations produced empty point sets")
    thresholds_db = list(thresholds_db)
    cov, half = [], []
    for db in thresholds_db:
        T = 10.0 ** (db / 10.0)
        p = float(np.mean(sinrs > T))
        cov.append(p)
        half.append(1.96 * math.sqrt(max(p * (1.0 - p), 1e-12) / n))
    meta = {"samples": n, "empty_clusters": empty,
            "excluded": sum(1 for s in samples if s.excluded),
            "type_tallies": {t.value: c for t, c in tallies.items()}}
    return CoverageCurve(thresholds_db=thresholds_db, coverage=cov,
                         method=f"monte-carlo-{plan.precoder_mode}",
                         config_digest=plan.digest(), ci_halfwidth=half, meta=meta)


def empirical_rate_profile(plan: SimulationPlan) -> RateProfile:
    if plan.realizations < 10_000:
        raise ConfigurationError("empirical rate profile needs >= 1e4 realizations")
    samples, _, _ = run_samples(plan)
    sinrs = np.array([0.0 if s.excluded else s.sinr for s in samples])
    if sinrs.size == 0:
        raise StatisticalError("all realizations produced empty point sets")
    rates = np.log2(1.0 + sinrs)
    p5, p10, p50 = np.percentile(rates, [5.0, 10.0, 50.0])
    return RateProfile(p5=float(p5), p10=float(p10), p50=float(p50),
                       mean=float(np.mean(rates)))


def dump_samples_csv(plan: SimulationPlan, path) -> None:
    """Raw sample dump: realization,user_type,mode,sinr_linear."""
    samples, _, _ = run_samples(plan)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# seed={plan.seed} plan={plan.digest()}\n")
        fh.write("realization,user_type,mode,sinr_linear\n")
        for k, s in enumerate(samples):
            fh.write(f"{k},{s.user_type.value},{s.mode},{s.sinr:.9e}\n")
