"""Coverage and rate analysis for geographically clustered cloud radio networks."""

from .errors import (CrancovError, ConfigurationError, DomainError,
                     NumericError, StatisticalError)
from .model import (NetworkConfig, DistanceSample, UserType, FULL_CSI,
                    density_from_spacing, spacing_from_density,
                    calibrate_noise, classify_user, type_probabilities)
from .curves import (CoverageCurve, RateProfile, ANALYTIC_FULL, ANALYTIC_PCSI,
                     ANALYTIC_IDEAL, ANALYTIC_NOCLOUD)
from .analytic import (CoverageQuery, coverage_full_csi, coverage_pcsi,
                       coverage_ideal, coverage_nocloud, coverage_linear,
                       rate_cdf, rate_profile)
from .scaling import (ScalingQuery, delta_integral, eta, optimal_radius,
                      mean_cluster_size, verify_scaling)
from .simulator import (SimulationPlan, empirical_coverage,
                        empirical_rate_profile, dump_samples_csv)
from .harness import (ExperimentSpec, ReportBundle, run_preset, write_bundle,
                      emit_csv, emit_json, emit_svg, parse_config, PRESETS)

__version__ = "0.1.0"
