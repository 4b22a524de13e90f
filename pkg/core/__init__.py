"""Exact invariants of closed oriented 3-manifolds under weak d-congruence."""
