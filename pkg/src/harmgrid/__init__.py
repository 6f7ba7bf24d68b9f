"""Spectral realizations of spherical means, fractional powers of the
Laplacian, and variable-exponent norms on periodic grids."""

__version__ = "0.1.0"

from .errors import (
    GammaPoleError,
    InstabilityError,
    MultiplierEvaluationError,
    PreconditionError,
)
from .grid import (
    GridFunction,
    apply_radial_multiplier,
    dirichlet_energy,
    frequency_lattice,
    gaussian_bump,
    l2_norm,
    max_norm,
    plane_wave,
    random_band_limited,
    read_grid_file,
    riemann_sum,
    write_grid_file,
)
from .mellin import (
    MellinTable,
    MultiplierSpec,
    QuadratureResult,
    a_alpha_closed,
    a_alpha_quadrature,
    build_mellin_table,
    decay_exponent_fit,
    f_alpha,
    f_star,
    integrability_report,
    mellin_reconstruct,
    write_mellin_table,
)
from .operators import (
    MaximalResult,
    gaussian_part,
    hardy_littlewood_maximal,
    imaginary_power,
    riesz_potential,
    smoothing_maximal,
    spherical_maximal,
    spherical_mean,
    star_part,
)
from .varlp import (
    ExponentTransform,
    HypothesisReport,
    LogHolderConstants,
    VariableExponent,
    check_bound_hypotheses,
    constant_exponent,
    dual_exponent,
    exponent_transform,
    log_holder_constants,
    luxemburg_norm,
    modular,
    read_exponent_file,
    sine_exponent,
    step_exponent,
    write_exponent_file,
)
from .wave import (
    WaveConfig,
    a_priori_ratio,
    config_for,
    darboux_solution,
    default_t_grid,
    fd_stability_bound,
    small_time_limit_error,
    wave_energy,
    wave_fd_oracle,
    wave_propagate,
    wave_velocity,
    write_wave_trace,
)
