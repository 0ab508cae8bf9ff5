"""Aperiodic ambiguity functions over delay-Doppler low-ambiguity zones.

Exact AF computation and peak statistics (afcore), sharp lower bounds on the
achievable peak with weight-vector machinery (bounds), Chu sequence sets that
approach those bounds (chu), brute-force verification oracles (oracle), and
deterministic experiment sweeps (repro) behind the ``aflaz`` CLI.
"""

from .afcore import (
    AfSurface,
    LazSpec,
    Sequence,
    SequenceSet,
    ThetaReport,
    af_surface,
    aperiodic_af,
    doppler_row,
    theta_report,
)
from .bounds import (
    BoundParams,
    BoundReport,
    DopplerWeight,
    WeightVector,
    benchmark_ye2022,
    best_bound,
    corollary_closed_forms,
    corollary4_simplified,
    dopt_search,
    jd_quadform,
    l_quadform,
    optimal_doppler_weights,
    remark6_optimality_check,
    theorem1_bounds,
    theorem2_bounds,
    weights_A,
    weights_B,
    weights_C,
)
from .chu import (
    AAF_LIMIT_COEFFICIENT,
    ChuAsymptote,
    ChuSpec,
    NotApplicableError,
    chu_aaf_closed_form,
    chu_sequence,
    chu_sequence_set,
    order_optimal_laz,
    theorem3_laz,
    theorem3_ratio,
    theorem4_caf_bound,
    vdc_sum_bound,
)
from .oracle import (
    SearchResult,
    WeightedMatrixU,
    af_expansion,
    build_U,
    exhaustive_search,
    exhaustive_search_all_laz,
    frobenius_pair,
    lemma3_check,
    lemma4_check,
)
from .seqio import read_sequence_csv, write_sequence_csv

__version__ = "0.1.0"
