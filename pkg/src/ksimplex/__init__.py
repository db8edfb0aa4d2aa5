"""Exact counting of repeated multinomial coefficients and Pascal k-simplex censuses."""

__version__ = "0.1.0"

from .arith import SortedParts, canonicalize, compositions, factorial, multinomial, solve_largest_part, sorted_prefixes
from .counter import BudgetExceeded, CountReport, bound_profile, count_exact, order_classes, sum_via_counts, sum_via_simplex
from .census import census_run, merge, scan_high_multiplicity

__all__ = [
    "SortedParts", "canonicalize", "compositions", "factorial", "multinomial",
    "solve_largest_part", "sorted_prefixes", "BudgetExceeded", "CountReport",
    "bound_profile", "count_exact", "order_classes", "sum_via_counts",
    "sum_via_simplex", "census_run", "merge", "scan_high_multiplicity",
]
