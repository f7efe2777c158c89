"""Result containers shared by the analytic and Monte Carlo paths."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError

ANALYTIC_FULL = "analytic-full-csi"
ANALYTIC_PCSI = "analytic-pcsi"
ANALYTIC_IDEAL = "analytic-ideal"
ANALYTIC_NOCLOUD = "analytic-nocloud"


@dataclass(frozen=True)
class CoverageCurve:
    """Coverage probability as a function of the SINR threshold.

    thresholds_db   grid in dB, ascending
    coverage        probabilities in [0, 1], one per threshold
    method          analytic-* or monte-carlo-* tag
    config_digest   opaque identifier of the generating configuration
    ci_halfwidth    95% binomial half-widths (Monte Carlo only, else zeros)
    meta            free-form diagnostics (sample counts, dropped type mass)
    """

    thresholds_db: list
    coverage: list
    method: str
    config_digest: str
    ci_halfwidth: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.thresholds_db) != len(self.coverage):
            raise DomainError("thresholds and coverage must have equal length")
        if any(t2 <= t1 for t1, t2 in zip(self.thresholds_db, self.thresholds_db[1:])):
            raise DomainError("thresholds must be strictly ascending")
        if any(not (-1e-9 <= c <= 1.0 + 1e-9) for c in self.coverage):
            raise DomainError("coverage values must lie in [0, 1]")

    def as_dict(self) -> dict:
        return {
            "thresholds_db": list(self.thresholds_db),
            "coverage": list(self.coverage),
            "method": self.method,
            "config_digest": self.config_digest,
            "ci_halfwidth": list(self.ci_halfwidth),
            "meta": dict(self.meta),
        }


@dataclass(frozen=True)
class RateProfile:
    """5%/10%/50% percentile rates and the mean rate, in bits/s/Hz."""

    p5: float
    p10: float
    p50: float
    mean: float

    def __post_init__(self):
        if not (0.0 <= self.p5 <= self.p10 <= self.p50):
            raise DomainError("percentiles must satisfy 0 <= p5 <= p10 <= p50")
        if self.mean < 0.0:
            raise DomainError("mean rate must be nonnegative")

    def as_dict(self) -> dict:
        return {"p5": self.p5, "p10": self.p10, "p50": self.p50, "mean": self.mean}
