"""Exact q-series and partition verification toolkit.

Truncated integer power series on a half-exponent grid, constrained
partition enumeration with chain weights, a staged partition bijection,
Bailey pair machinery, bounded polynomial analogues, and a catalog of
runnable checks tying them together.
"""

from .series import (
    FactorSpec,
    TruncSeries,
    at_order,
    collapse_zw,
    inv_poch_finite,
    inv_poch_infinite,
    jacobi_check,
    jacobi_sides,
    jacobi_theta,
    lift,
    monomial,
    one,
    poch_finite,
    poch_infinite,
    poch_product,
    poly_mul,
    poly_sum,
    q_coefficients,
    reciprocal,
    scale_exponents,
    series_diff,
    shift_exponents,
    truncate,
    zero,
    zw_slice,
)
from .partitions import (
    Chain,
    Partition,
    ResidueFamilyConfig,
    chains,
    count_g,
    count_gg,
    count_p,
    count_q,
    count_residue_family,
    count_thm1_side,
    count_thm2_sides,
    enumerate_members,
    enumerate_partitions,
    interp_config,
    is_gollnitz_gordon,
    membership_and_weight,
    stat_s,
    stat_t,
    weighted_count,
)
from .bijection import (
    MarkedPartition,
    SplitPair,
    TriplePartition,
    euler_add,
    euler_subtract,
    ferrers_graph,
    ferrers_merge,
    ferrers_split,
    identify,
    redistribute,
    redistribute_inverse,
    split_pairs,
    trace_pipeline,
    triple_inverse,
    triple_map,
    triple_partitions,
)
from .bailey import (
    BaileyPair,
    finite_identity_4_7,
    iterate_closed,
    lhs_4_7,
    rhs_4_7,
    seed_E4,
    step,
    verify_pair,
)
from .trinomials import (
    identity_4_15,
    identity_4_20,
    lhs_4_15,
    lhs_4_20,
    limit_4_9,
    limit_4_10,
    limit_4_17,
    limit_4_18,
    poly_equal,
    q_binomial,
    rhs_4_15,
    rhs_4_20,
    t_ab,
    t_warnaar,
    u_of,
    u_tilde,
)
from .registry import (
    CheckSpec,
    Corruption,
    UnknownCheckError,
    VerificationReport,
    check_double_series,
    check_hierarchy,
    check_reduction,
    check_single_series,
    check_theorems,
    registry_ids,
    run_all,
    run_check,
    spec_for,
)

__version__ = "0.1.0"
