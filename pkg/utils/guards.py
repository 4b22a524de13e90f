"""
Guards for per-invariant computations
A failing invariant becomes an error claim so the remaining invariants still run
"""

import functools
import logging
import time
from collections import defaultdict
from typing import Callable, Tuple, Type

from core.errors import BudgetExceededError, CongruenceKitError
from views.report import ERROR, INCONCLUSIVE, Claim

logger = logging.getLogger(__name__)

# Wall time and call counts per guarded function (logged, never reported)
guard_timings = defaultdict(float)
guard_calls = defaultdict(int)
guard_errors = defaultdict(int)


def guard_invariant(inconclusive_on: Tuple[Type[CongruenceKitError], ...] = ()):
    """
    Decorator for functions ``f(claim_id, ...) -> Claim``.

    Args:
        inconclusive_on: error types that mean "this invariant does not apply" and
            turn into an inconclusive claim instead of an error
    """
    def decorator(func: Callable[..., Claim]) -> Callable[..., Claim]:
        @functools.wraps(func)
        def wrapper(claim_id: str, *args, **kwargs) -> Claim:
            name = func.__name__
            started = time.perf_counter()
            guard_calls[name] += 1
            try:
                return func(claim_id, *args, **kwargs)
            except inconclusive_on as e:
                logger.info(f"{claim_id}: not applicable ({e})")
                return Claim(claim_id, INCONCLUSIVE, {"reason": str(e)}, str(e))
            except BudgetExceededError as e:
                guard_errors[name] += 1
                logger.warning(f"⚠️ {claim_id}: {e}")
                return Claim(claim_id, ERROR, {
                    "error": "budget-exceeded",
                    "message": str(e),
                    "order": e.order,
                    "budget": e.budget,
                }, str(e))
            except CongruenceKitError as e:
                guard_errors[name] += 1
                logger.error(f"❌ {claim_id}: {e}")
                return Claim(claim_id, ERROR, {"error": type(e).__name__, "message": str(e)}, str(e))
            finally:
                guard_timings[name] += time.perf_counter() - started

        return wrapper
    return decorator


def get_guard_stats() -> dict:
    """Per-function call counts, error counts and total seconds."""
    return {
        name: {
            'calls': guard_calls[name],
            'errors': guard_errors[name],
            'seconds': round(guard_timings[name], 3),
        }
        for name in sorted(guard_calls)
    }


def reset_guard_stats():
    guard_timings.clear()
    guard_calls.clear()
    guard_errors.clear()
