"""Exact desk-scale analysis of bit-flip noise on the Boolean cube."""

from .entcurve import (
    binary_entropy,
    binary_entropy_inv,
    noise_param,
    CurvePoint,
    curve_point,
    sample_curve,
    min_increase_delta,
    alpha_opt_of_beta,
    alpha_hypercontractive,
    alpha_fourier_asymptotic,
    max_increase_line,
    convexity_report,
)
from .cube import (
    MAX_DIM,
    CubeSet,
    hamming_ball,
    ball_size,
    neighborhood,
    interior,
    set_distance,
    product_measure,
    product_weights,
    uniform_log_density,
)
from .fourier import (
    Spectrum,
    wht,
    inverse_wht,
    noise_multipliers,
    apply_noise_operator,
    nazarov_certificate,
    hyper_check,
)
from .noise import (
    NoiseSpec,
    trial_stream,
    kernel_prob,
    sample_noise,
    hit_probabilities,
    threshold_set,
    coupling_gap,
)
from .shannon import (
    ProbVector,
    entropy,
    pushforward_noise,
    tensor_bound_check,
    one_letter_scatter,
    markov_conditional_check,
)
from .concentration import (
    BoundedDiffSpec,
    BoundedDifferenceError,
    hoeffding_lemma_check,
    doob_martingale,
    azuma_mcdiarmid_check,
    blowing_up_check,
    blowup_corollary_check,
)
from .harness import (
    FamilySpec,
    make_family,
    default_families,
    weak_bound_trial,
    strong_bound_trial,
    exhaustive_worst_case,
    threshold_profile,
)

__version__ = "0.1.0"
