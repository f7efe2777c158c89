"""Experiment presets, configuration parsing and artifact output.

This module owns every dB/linear conversion at the tool boundary and all file
formats (CSV, JSON, SVG). The presets reproduce the standard scenario grids:
coverage curves over a -5..19 dB threshold sweep, rate CDF curves and rate
profile tables over (cluster area, BS spacing, feedback level) combinations,
and the cluster-radius scaling-law grid.

Scenario conventions, fixed here and nowhere else:

* BS density from the mean spacing D: lambda = 4/(pi D^2).
* Noise is calibrated so the mean SNR at a reference distance is 10 dB.
  Coverage presets calibrate at 200 m for every curve; rate presets calibrate
  at the scenario's own spacing D (which makes the no-cooperation and ideal
  baselines spacing-invariant, as the published tables show).
* The ideal (all-cooperating) curve of the coverage preset uses the sparser
  density 1/D^2; the ideal rows of the rate tables use 4/(pi D^2).
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field

from .errors import ConfigurationError
from .model import (NetworkConfig, FULL_CSI, density_from_spacing,
                    spacing_from_density, calibrate_noise)
from .curves import (CoverageCurve, RateProfile, ANALYTIC_FULL, ANALYTIC_PCSI,
                     ANALYTIC_IDEAL, ANALYTIC_NOCLOUD)
from .analytic import (CoverageQuery, coverage_full_csi, coverage_pcsi,
                       coverage_ideal, coverage_nocloud, rate_cdf, rate_profile)
from .scaling import ScalingQuery, optimal_radius, mean_cluster_size
from .simulator import (SimulationPlan, empirical_coverage, DISC, SQUARE,
                        MODE_FULL_LQ, MODE_DIAGONAL, MODE_PCSI, MODE_NOCLOUD)

TOOL_VERSION = "0.1.0"
SNR_REF_DB = 10.0
THRESHOLDS_DB = tuple(float(t) for t in range(-5, 20, 3))
RATE_GRID = tuple(float(t) for t in range(0, 20))
EPSILON_GRID = (0.2, 0.1, 0.05, 0.02)
DELTA_GRID = (0.1, 0.5, 1.0)
PRESETS = ("fig3", "fig4", "fig5a", "fig5b", "table2", "table3", "scaling")

# Monte Carlo budgets: the m x m decompositions make the full-LQ mode the
# cost driver, so it gets a smaller default realization count.
MC_REALIZATIONS = 100_000
MC_REALIZATIONS_FULL_LQ = 20_000
MC_TRUNCATION = 1500.0


@dataclass(frozen=True)
class ExperimentSpec:
    """Resolved description of one preset run."""

    name: str
    scenarios: tuple
    thresholds_db: tuple = ()
    rate_grid: tuple = ()

    def __post_init__(self):
        if not self.name:
            raise ConfigurationError("experiment name must be nonempty")
        labels = [s[0] for s in self.scenarios]
        if len(labels) != len(set(labels)):
            raise ConfigurationError("scenario labels must be unique")


@dataclass
class ReportBundle:
    """Everything a preset produced, ready for serialization."""

    name: str
    curves: list = field(default_factory=list)
    profiles: list = field(default_factory=list)
    rows: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def as_dict(self, deterministic: bool = True) -> dict:
        meta = dict(self.metadata)
        if deterministic:
            meta.pop("wall_time_s", None)
        return {
            "name": self.name,
            "curves": [c.as_dict() for c in self.curves],
            "profiles": list(self.profiles),
            "rows": list(self.rows),
            "metadata": meta,
        }


def scenario_config(spacing_m: float, area_km2: float, csi_limit=FULL_CSI,
                    noise_ref_m: float | None = None) -> NetworkConfig:
    """NetworkConfig for an (A, D, L) scenario with the standard calibration."""
    lam = density_from_spacing(spacing_m)
    radius = math.sqrt(area_km2 * 1e6 / math.pi)
    sigma2 = calibrate_noise(noise_ref_m if noise_ref_m is not None else spacing_m,
                             SNR_REF_DB)
    return NetworkConfig(bs_density=lam, pathloss_alpha=4.0, noise_power=sigma2,
                         cluster_radius=radius, csi_limit=csi_limit)


def _label(curve: CoverageCurve, scenario: str) -> CoverageCurve:
    curve.meta["scenario"] = scenario
    return curve


def _rate_cdf_curve(config: NetworkConfig, method: str, grid, scenario: str) -> CoverageCurve:
    values = [rate_cdf(config, t, method) for t in grid]
    curve = CoverageCurve(thresholds_db=list(grid), coverage=values,
                          method=method, config_digest=config.digest(),
                          ci_halfwidth=[0.0] * len(grid),
                          meta={"domain": "rate", "scenario": scenario})
    return curve


def _profile_row(table: str, scenario: str, profile: RateProfile) -> dict:
    row = {"table": table, "scenario": scenario}
    row.update(profile.as_dict())
    return row


# ---------------------------------------------------------------------------
# presets

def _fig3(seed: int, mc_realizations, include_mc: bool) -> ReportBundle:
    ths = THRESHOLDS_DB
    bundle = ReportBundle(name="fig3")
    noc = scenario_config(200.0, 1.0)
    bundle.curves.append(_label(coverage_nocloud(noc, list(ths)), "no-cloud(200)"))
    for area, spacing in ((0.5, 200.0), (1.0, 200.0), (0.5, 400.0),
                          (1.0, 400.0), (10.0, 200.0)):
        cfg = scenario_config(spacing, area, noise_ref_m=200.0)
        curve = coverage_full_csi(CoverageQuery(config=cfg, thresholds_db=ths))
        bundle.curves.append(_label(curve, f"({area:g},{spacing:g})"))
    # the all-cooperating envelope is drawn for the sparser density 1/D^2
    ideal_cfg = NetworkConfig(bs_density=1.0 / 200.0 ** 2, pathloss_alpha=4.0,
                              noise_power=calibrate_noise(200.0, SNR_REF_DB),
                              cluster_radius=564.19)
    bundle.curves.append(_label(coverage_ideal(ideal_cfg, list(ths)), "ideal"))
    if include_mc:
        n_lq = mc_realizations or MC_REALIZATIONS_FULL_LQ
        # the benchmark full-LQ run encodes users in the raw (random) point
        # order; sorted orders shift the curve away from the reference points
        plan = SimulationPlan(config=scenario_config(200.0, 1.0),
                              realizations=n_lq, seed=seed,
                              precoder_mode=MODE_FULL_LQ,
                              random_encoding_order=True,
                              interference_truncation=MC_TRUNCATION)
        bundle.curves.append(_label(empirical_coverage(plan, list(ths)),
                                    "(1,200) MC"))
        n_sq = mc_realizations or MC_REALIZATIONS
        plan = SimulationPlan(config=scenario_config(200.0, 0.5),
                              realizations=n_sq, seed=seed,
                              cluster_shape=SQUARE,
                              precoder_mode=MODE_DIAGONAL,
                              interference_truncation=MC_TRUNCATION)
        bundle.curves.append(_label(empirical_coverage(plan, list(ths)),
                                    "(0.5,200) MC-rect"))
    return bundle


def _fig4(seed: int, mc_realizations, include_mc: bool) -> ReportBundle:
    bundle = ReportBundle(name="fig4")
    grid = RATE_GRID
    for spacing in (400.0, 200.0):
        cfg = scenario_config(spacing, 1.0, noise_ref_m=200.0)
        bundle.curves.append(_rate_cdf_curve(cfg, ANALYTIC_NOCLOUD, grid,
                                             f"no-cloud(-,{spacing:g})"))
    for spacing in (400.0, 200.0):
        cfg = scenario_config(spacing, 1.0, noise_ref_m=200.0)
        bundle.curves.append(_rate_cdf_curve(cfg, ANALYTIC_IDEAL, grid,
                                             f"ideal(inf,{spacing:g})"))
    for area in (2.0, 4.0, 8.0):
        cfg = scenario_config(200.0, area, noise_ref_m=200.0)
        bundle.curves.append(_rate_cdf_curve(cfg, ANALYTIC_FULL, grid,
                                             f"cluster({area:g},200)"))
    return bundle


_FIG5A = ((0.63, 200.0, 2), (0.63, 200.0, 4), (0.63, 200.0, 8))
_FIG5B = ((1.0, 200.0, 8), (2.0, 200.0, 8), (1.0, 400.0, 4),
          (2.0, 400.0, 4), (1.0, 200.0, 2), (2.0, 200.0, 2))


def _fig5(name: str, scenarios, seed: int, mc_realizations,
          include_mc: bool) -> ReportBundle:
    bundle = ReportBundle(name=name)
    for area, spacing, limit in scenarios:
        cfg = scenario_config(spacing, area, csi_limit=limit)
        curve = coverage_pcsi(CoverageQuery(config=cfg, thresholds_db=THRESHOLDS_DB))
        bundle.curves.append(_label(curve, f"({area:g},{spacing:g},{limit})"))
    if include_mc and name == "fig5a":
        cfg = scenario_config(200.0, 0.63, csi_limit=2)
        plan = SimulationPlan(config=cfg,
                              realizations=mc_realizations or MC_REALIZATIONS,
                              seed=seed, precoder_mode=MODE_PCSI,
                              interference_truncation=MC_TRUNCATION)
        bundle.curves.append(_label(empirical_coverage(plan, list(THRESHOLDS_DB)),
                                    "(0.63,200,2) MC"))
    return bundle


_TABLE2 = {
    "D=400": (400.0, (0.5, 1.0, 2.0, 10.0)),
    "D=200": (200.0, (0.125, 0.25, 0.5, 2.5)),
}
_TABLE3 = ((200.0, 0.5), (200.0, 1.0), (200.0, 2.0),
           (400.0, 2.0), (400.0, 4.0), (400.0, 8.0))
_TABLE3_LIMITS = (2, 4, 6, 8)


def _table2(seed: int, mc_realizations, include_mc: bool) -> ReportBundle:
    bundle = ReportBundle(name="table2")
    for table, (spacing, areas) in _TABLE2.items():
        base = scenario_config(spacing, 1.0)
        bundle.profiles.append(_profile_row(
            table, "cell", rate_profile(base, ANALYTIC_NOCLOUD)))
        for area in areas:
            cfg = scenario_config(spacing, area)
            bundle.profiles.append(_profile_row(
                table, f"A={area:g}", rate_profile(cfg, ANALYTIC_FULL)))
        bundle.profiles.append(_profile_row(
            table, "ideal", rate_profile(base, ANALYTIC_IDEAL)))
    return bundle


def _table3(seed: int, mc_realizations, include_mc: bool) -> ReportBundle:
    bundle = ReportBundle(name="table3")
    for spacing, area in _TABLE3:
        table = f"D={spacing:g},A={area:g}"
        base = scenario_config(spacing, area)
        bundle.profiles.append(_profile_row(
            table, "cell", rate_profile(base, ANALYTIC_NOCLOUD)))
        for limit in _TABLE3_LIMITS:
            cfg = scenario_config(spacing, area, csi_limit=limit)
            bundle.profiles.append(_profile_row(
                table, f"L={limit}", rate_profile(cfg, ANALYTIC_PCSI)))
        bundle.profiles.append(_profile_row(
            table, "full", rate_profile(base, ANALYTIC_FULL)))
    return bundle


def _scaling(seed: int, mc_realizations, include_mc: bool) -> ReportBundle:
    bundle = ReportBundle(name="scaling")
    cfg = scenario_config(200.0, 1.0)
    for eps in EPSILON_GRID:
        for delta in DELTA_GRID:
            query = ScalingQuery(epsilon=eps, delta=delta, threshold=1.0,
                                 config=cfg)
            r_star = optimal_radius(query)
            bundle.rows.append({
                "epsilon": eps, "delta": delta, "threshold_db": 0.0,
                "r_star_m": r_star,
                "mean_cluster_size": mean_cluster_size(query),
            })
    return bundle


_PRESET_BUILDERS = {
    "fig3": _fig3,
    "fig4": _fig4,
    "fig5a": lambda s, n, m: _fig5("fig5a", _FIG5A, s, n, m),
    "fig5b": lambda s, n, m: _fig5("fig5b", _FIG5B, s, n, m),
    "table2": _table2,
    "table3": _table3,
    "scaling": _scaling,
}


def run_preset(name: str, seed: int = 0, mc_realizations: int | None = None,
               include_mc: bool = True) -> ReportBundle:
    """Execute a named preset and return its report bundle."""
    if name not in _PRESET_BUILDERS:
        raise ConfigurationError(
            f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    start = time.monotonic()
    bundle = _PRESET_BUILDERS[name](seed, mc_realizations, include_mc)
    digest = "|".join(c.config_digest for c in bundle.curves) or name
    bundle.metadata = {
        "preset": name,
        "seed": seed,
        "tool_version": TOOL_VERSION,
        "config_digest": digest,
        "wall_time_s": time.monotonic() - start,
    }
    return bundle


# ---------------------------------------------------------------------------
# serialization

def _sig6(value: float) -> str:
    return f"{value:.6g}"


def emit_csv(bundle: ReportBundle, path) -> None:
    """Flat CSV: one row per (scenario, threshold) for curves; rate-profile
    and scaling rows reuse the same columns with a quantity tag in the
    threshold column. Deterministic ordering, 6 significant digits."""
    buf = io.StringIO()
    buf.write(f"# crancov {TOOL_VERSION} preset={bundle.name} "
              f"seed={bundle.metadata.get('seed', 0)} "
              f"digest={bundle.metadata.get('config_digest', '')}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["scenario", "method", "threshold_db", "coverage",
                     "ci_halfwidth"])
    for curve in bundle.curves:
        scen = curve.meta.get("scenario", "")
        half = curve.ci_halfwidth or [0.0] * len(curve.coverage)
        for t, c, h in zip(curve.thresholds_db, curve.coverage, half):
            writer.writerow([scen, curve.method, _sig6(t), _sig6(c), _sig6(h)])
    for row in bundle.profiles:
        scen = f"{row['table']}|{row['scenario']}"
        for key in ("p5", "p10", "p50", "mean"):
            writer.writerow([scen, "rate-profile", key, _sig6(row[key]), "0"])
    for row in bundle.rows:
        scen = f"eps={row['epsilon']:g}|delta={row['delta']:g}"
        writer.writerow([scen, "scaling-law", "r_star_m",
                         _sig6(row["r_star_m"]), "0"])
        writer.writerow([scen, "scaling-law", "mean_cluster_size",
                         _sig6(row["mean_cluster_size"]), "0"])
    text = buf.getvalue()
    if hasattr(path, "write"):
        path.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def emit_json(bundle: ReportBundle, path) -> None:
    """JSON mirror of the bundle (wall time dropped for byte stability)."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(bundle.as_dict(deterministic=True), fh, indent=2, sort_keys=True)
        fh.write("\n")


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
            "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22")
_SVG_W, _SVG_H = 760, 520
_ML, _MR, _MT, _MB = 70, 190, 30, 60
_LOG_FLOOR = 1e-3


def _svg_points(curve: CoverageCurve, x_lo, x_hi, y_map):
    xs = curve.thresholds_db
    pts = []
    for x, y in zip(xs, curve.coverage):
        px = _ML + (_SVG_W - _ML - _MR) * (x - x_lo) / (x_hi - x_lo)
        pts.append((px, y_map(y)))
    return pts


def emit_svg(bundle: ReportBundle, path) -> None:
    """Single-panel chart of the bundle's curves, self-contained SVG.

    Coverage curves are drawn on a log y axis; rate-domain curves (CDFs) on
    a linear one. Monte Carlo curves appear as markers, analytic ones as
    polylines. Identical bundles serialize to identical bytes.
    """
    if not bundle.curves:
        raise ConfigurationError("emit_svg needs at least one curve")
    rate_domain = bundle.curves[0].meta.get("domain") == "rate"
    x_lo = min(c.thresholds_db[0] for c in bundle.curves)
    x_hi = max(c.thresholds_db[-1] for c in bundle.curves)
    if rate_domain:
        y_map = lambda y: _MT + (_SVG_H - _MT - _MB) * (1.0 - y)
        xlabel, ylabel = "Rate t (b/s/Hz)", "Rate CDF"
        ticks = [(y_map(v), f"{v:.1f}") for v in (0.0, 0.25, 0.5, 0.75, 1.0)]
    else:
        span = -math.log10(_LOG_FLOOR)
        y_map = lambda y: _MT + (_SVG_H - _MT - _MB) * (
            -math.log10(max(y, _LOG_FLOOR)) / span)
        xlabel, ylabel = "SINR threshold T (dB)", "Coverage probability"
        ticks = [(y_map(v), f"{v:g}") for v in (1.0, 0.1, 0.01, 0.001)]
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_W}" '
             f'height="{_SVG_H}" viewBox="0 0 {_SVG_W} {_SVG_H}">',
             f'<rect width="{_SVG_W}" height="{_SVG_H}" fill="white"/>',
             f'<rect x="{_ML}" y="{_MT}" width="{_SVG_W - _ML - _MR}" '
             f'height="{_SVG_H - _MT - _MB}" fill="none" stroke="black"/>']
    for py, lab in ticks:
        parts.append(f'<line x1="{_ML - 4}" y1="{py:.2f}" x2="{_ML}" '
                     f'y2="{py:.2f}" stroke="black"/>')
        parts.append(f'<text x="{_ML - 8}" y="{py + 4:.2f}" font-size="12" '
                     f'text-anchor="end">{lab}</text>')
    n_x = 6
    for i in range(n_x + 1):
        xv = x_lo + (x_hi - x_lo) * i / n_x
        px = _ML + (_SVG_W - _ML - _MR) * i / n_x
        parts.append(f'<line x1="{px:.2f}" y1="{_SVG_H - _MB}" x2="{px:.2f}" '
                     f'y2="{_SVG_H - _MB + 4}" stroke="black"/>')
        parts.append(f'<text x="{px:.2f}" y="{_SVG_H - _MB + 18}" font-size="12" '
                     f'text-anchor="middle">{xv:g}</text>')
    parts.append(f'<text x="{(_ML + _SVG_W - _MR) / 2:.2f}" y="{_SVG_H - 16}" '
                 f'font-size="14" text-anchor="middle">{xlabel}</text>')
    parts.append(f'<text x="18" y="{(_MT + _SVG_H - _MB) / 2:.2f}" font-size="14" '
                 f'text-anchor="middle" transform="rotate(-90 18 '
                 f'{(_MT + _SVG_H - _MB) / 2:.2f})">{ylabel}</text>')
    for idx, curve in enumerate(bundle.curves):
        color = _PALETTE[idx % len(_PALETTE)]
        pts = _svg_points(curve, x_lo, x_hi, y_map)
        if curve.method.startswith("monte-carlo"):
            for px, py in pts:
                parts.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="4" '
                             f'fill="none" stroke="{color}" stroke-width="1.5"/>')
        else:
            poly = " ".join(f"{px:.2f},{py:.2f}" for px, py in pts)
            parts.append(f'<polyline points="{poly}" fill="none" '
                         f'stroke="{color}" stroke-width="1.5"/>')
        ly = _MT + 16 + 18 * idx
        lx = _SVG_W - _MR + 10
        parts.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" '
                     f'y2="{ly - 4}" stroke="{color}" stroke-width="1.5"/>')
        label = curve.meta.get("scenario", curve.method)
        parts.append(f'<text x="{lx + 28}" y="{ly}" font-size="12">{label}</text>')
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts) + "\n")


def write_bundle(bundle: ReportBundle, out_dir, formats=("csv", "json", "svg")) -> list:
    """Write the bundle in the requested formats; returns the paths written."""
    import os
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for fmt in formats:
        path = os.path.join(out_dir, f"{bundle.name}.{fmt}")
        if fmt == "csv":
            emit_csv(bundle, path)
        elif fmt == "json":
            emit_json(bundle, path)
        elif fmt == "svg":
            if bundle.curves:
                emit_svg(bundle, path)
            else:
                continue
        else:
            raise ConfigurationError(f"unknown output format {fmt!r}")
        written.append(path)
    return written


# ---------------------------------------------------------------------------
# configuration files

_CONFIG_KEYS = ("alpha", "density", "spacing_m", "cluster_area_km2",
                "cluster_radius_m", "snr_ref_db", "snr_ref_distance_m",
                "csi_limit", "realizations", "seed", "precoder_mode",
                "cluster_shape")
_EXCLUSIVE = (("density", "spacing_m"), ("cluster_area_km2", "cluster_radius_m"))
_MODES = (MODE_FULL_LQ, MODE_DIAGONAL, MODE_PCSI, MODE_NOCLOUD)


def parse_config(path) -> tuple[NetworkConfig, SimulationPlan]:
    """Parse a flat key=value configuration file.

    Entries may be separated by newlines or commas; blank lines and #
    comments are ignored. Exactly one of density|spacing_m and one of
    cluster_area_km2|cluster_radius_m must be given.
    """
    raw: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    for chunk in text.replace(",", "\n").splitlines():
        line = chunk.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"malformed config entry {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ConfigurationError(f"unknown config key {key!r}")
        if key in raw:
            raise ConfigurationError(f"duplicate config key {key!r}")
        raw[key] = value
    for a, b in _EXCLUSIVE:
        if a in raw and b in raw:
            raise ConfigurationError(f"keys {a!r} and {b!r} are mutually exclusive")

    def _num(key: str, default=None) -> float:
        if key not in raw:
            if default is None:
                raise ConfigurationError(f"missing config key {key!r}")
            return default
        try:
            return float(raw[key])
        except ValueError:
            raise ConfigurationError(f"config key {key!r} is not a number") from None

    alpha = _num("alpha", 4.0)
    if not alpha > 2.0:
        raise ConfigurationError("alpha must exceed 2")
    if "density" in raw:
        lam = _num("density")
        if lam <= 0.0:
            raise ConfigurationError("config key 'density' must be positive")
        spacing = spacing_from_density(lam)
    elif "spacing_m" in raw:
        spacing = _num("spacing_m")
        lam = density_from_spacing(spacing)
    else:
        raise ConfigurationError("one of 'density' or 'spacing_m' is required")
    if "cluster_radius_m" in raw:
        radius = _num("cluster_radius_m")
    elif "cluster_area_km2" in raw:
        radius = math.sqrt(_num("cluster_area_km2") * 1e6 / math.pi)
    else:
        raise ConfigurationError(
            "one of 'cluster_area_km2' or 'cluster_radius_m' is required")
    snr_db = _num("snr_ref_db", SNR_REF_DB)
    snr_dist = _num("snr_ref_distance_m", spacing)
    limit = raw.get("csi_limit", FULL_CSI)
    if limit != FULL_CSI:
        try:
            limit = int(limit)
        except ValueError:
            raise ConfigurationError(
                "config key 'csi_limit' must be 'full' or an integer") from None
    config = NetworkConfig(bs_density=lam, pathloss_alpha=alpha,
                           noise_power=calibrate_noise(snr_dist, snr_db,
                                                       alpha=alpha),
                           cluster_radius=radius, csi_limit=limit)
    mode = raw.get("precoder_mode", MODE_DIAGONAL)
    if mode not in _MODES:
        raise ConfigurationError(f"config key 'precoder_mode' has unknown value "
                                 f"{mode!r}")
    shape = raw.get("cluster_shape", DISC)
    if shape not in (DISC, SQUARE):
        raise ConfigurationError(f"config key 'cluster_shape' has unknown value "
                                 f"{shape!r}")
    plan = SimulationPlan(config=config,
                          realizations=int(_num("realizations", 10_000)),
                          seed=int(_num("seed", 0)),
                          cluster_shape=shape, precoder_mode=mode)
    return config, plan
