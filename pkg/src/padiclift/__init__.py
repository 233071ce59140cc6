"""Exponential and logarithm maps on elliptic curves over Z/p^k, the
discrete-log lifting method built on them, and Cantor arithmetic on
hyperelliptic Jacobians showing where the method stops working.
"""

from .arith import (
    INFINITY,
    TruncatedPAdic,
    is_prime,
    padic_div,
    padic_valuation,
    reduce_mod,
    sqrt_all_mod,
)
from .curve import (
    GeneralWeierstrass,
    PointModPk,
    PointTransform,
    ProjPointQ,
    ShortWeierstrass,
    ec_add,
    ec_neg,
    ec_scalar_mul,
    enumerate_points_mod_pk,
    fp_group_order,
    fp_point_order,
    good_reduction,
    is_anomalous,
    qmod_k,
    to_short,
)
from .ecdlp import (
    AttackParams,
    AttackRow,
    AttackTranscript,
    attack_step,
    generalized_demo,
    residual_dlp_fp,
    run_attack,
    transcript_to_tsv,
)
from .hec import (
    HyperellipticCurve,
    MumfordDivisor,
    cantor_add,
    cantor_scalar_mul,
    complete_square,
    divisor_reduce_mod,
    hec_good_reduction,
    mumford_valid,
    noncommutativity_witness,
    opposite,
)
from .logmap import LogResult, log_initial, log_lift, log_map, naive_inv
from .poly import QQ, GcdCommuteReport, Poly, Zmod, discriminant, ext_gcd, gcd_commute_check, poly_gcd
from .wpseries import WpCoefficients, exp_map, series_cutoff, wp_coeffs, wp_eval, wp_prime_eval

__version__ = "0.1.0"
