from skeptic.hindsight.structures import MleResult, BoundReport
from skeptic.hindsight.process import (
    mle,
    regret_ratio,
    log_capital_at,
    drift_ratio,
    quadratic_ratio,
    find_separation,
    small_mle_bound,
    laplace_discrepancy,
    laplace_log_capital,
)

__all__ = [
    "MleResult",
    "BoundReport",
    "mle",
    "regret_ratio",
    "log_capital_at",
    "drift_ratio",
    "quadratic_ratio",
    "find_separation",
    "small_mle_bound",
    "laplace_discrepancy",
    "laplace_log_capital",
]
