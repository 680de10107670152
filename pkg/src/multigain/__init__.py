"""Runtime analysis of elitist evolutionary algorithms through multiple gains.

The package bundles benchmark problems (OneMax, knapsack, MAX-SAT), the
(1+1) and (1+lambda) EAs, trace instrumentation, closed-form bounds on the
expected first hitting time, exact Markov-chain oracles for small
instances and the replication campaigns that compare them.
"""

from .algorithms import Acceptance, EaConfig, RunTrace, run, run_one_plus_lambda, run_one_plus_one
from .bounds import (
    KnapsackBoundParams,
    MaxSatBoundParams,
    Regime,
    average_case_bound,
    harmonic,
    knapsack_efht1,
    knapsack_klow,
    knapsack_regime,
    maxsat_efht1,
    maxsat_klow,
    onemax_efht1,
    onemax_klow,
    theorem2_bound,
    worst_case_bound,
)
from .core import RngStream, TargetSpace, bitstring, derive_stream, flip_bits, target_space_stats
from .dimacs import parse_dimacs, read_dimacs, serialize_dimacs, write_dimacs
from .errors import *  # noqa: F401,F403
from .experiments import (
    ExperimentReport,
    ExperimentSpec,
    Family,
    ResultRow,
    check_criteria,
    pearson,
    run_experiment,
    write_csv,
    write_figure,
    write_summary,
)
from .instrumentation import (
    empirical_multiple_gain,
    estimate_alpha,
    estimate_khat,
    first_hitting_time,
    gain_sequence,
    longest_zero_gain_run,
)
from .oracle import (
    knapsack_exact_efht,
    maxsat_c_exact_efht,
    maxsat_c_level_counts,
    onemax_exact_efht,
    onemax_exact_gain,
)
from .problems import (
    CnfFormula,
    KnapsackInstance,
    MinimizedView,
    OneMaxProblem,
    enumerate_target_space,
    make_knapsack_b,
    make_maxsat_c,
)

__version__ = "0.1.0"
