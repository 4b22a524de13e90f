from .guards import get_guard_stats, guard_invariant, reset_guard_stats
from .validation import parse_d_range, validate_budget, validate_modulus, validate_positive, validate_skips
