"""Independence numbers of random Cayley sum graphs on Z_n, with the additive-combinatorics tools around them."""

from .bounds import BoundParams, BoundReport, bound_report, expected_alpha_gnp
from .cayley import CayleyGraph, MisResult, brute_force_alpha, independence_number, is_independent
from .errors import CayleyFPError, ParameterError, RefusalError
from .fingerprint import (
    FingerprintReport,
    find_fingerprint,
    fingerprint_pipeline,
    greedy_translate_selection,
    phase_one,
    phase_two,
    robust_subset,
)
from .freiman import (
    RobustnessParams,
    additive_quadruples,
    are_freiman_isomorphic,
    freiman_dimension,
    freiman_dimension_oracle,
    is_freiman_robust,
)
from .gap import Gap, gap_contains, gap_elements, log_count_gaps, normalize_pow2
from .harness import ExperimentConfig, TrialRecord, run_experiment
from .primes import is_prime
from .rng import split_seed
from .zn import (
    DoublingLabel,
    ZnSet,
    classify_doubling,
    doubling_sigma,
    restricted_sumset,
    sample_p_random,
    sumset,
)

__version__ = "0.1.0"
