"""Large-sieve statistics for sparse exponential sequences modulo primes."""

__version__ = "0.1.0"

from .arith import (  # noqa: E402
    Factorization,
    Modulus,
    OrderRecord,
    OrderUndefinedError,
    factorize,
    is_prime,
    mult_order,
    omega,
    pow_mod,
    tau,
)
from .digits import DigitPattern, M_p, Q_p_bound, count_divisible, enumerate_members, omega_product  # noqa: E402
from .equidist import UnitPointSet, discrepancy_exact, erdos_turan_bound, sequence_A  # noqa: E402
from .expsums import (  # noqa: E402
    AdmissiblePair,
    SparseSequence,
    WeightSequence,
    admissible_scan,
    exceptional_count,
    pair_count_V,
    residue_profile,
    sigma_eval,
    sigma_max,
    subgroup_sum_max,
)
from .primes import OrderDatabase, PrimePartition, build_order_db, filter_E_Delta, sieve_primes  # noqa: E402
from .stats import compute_V, large_sieve_lhs, thm1_bound, thm2_bound  # noqa: E402

__all__ = [
    "admissible_scan",
    "AdmissiblePair",
    "build_order_db",
    "compute_V",
    "count_divisible",
    "DigitPattern",
    "discrepancy_exact",
    "enumerate_members",
    "erdos_turan_bound",
    "exceptional_count",
    "Factorization",
    "factorize",
    "filter_E_Delta",
    "is_prime",
    "large_sieve_lhs",
    "M_p",
    "Modulus",
    "mult_order",
    "omega",
    "omega_product",
    "OrderDatabase",
    "OrderRecord",
    "OrderUndefinedError",
    "pair_count_V",
    "pow_mod",
    "PrimePartition",
    "Q_p_bound",
    "residue_profile",
    "sequence_A",
    "sieve_primes",
    "sigma_eval",
    "sigma_max",
    "SparseSequence",
    "subgroup_sum_max",
    "tau",
    "thm1_bound",
    "thm2_bound",
    "UnitPointSet",
    "WeightSequence",
]
