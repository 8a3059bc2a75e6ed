"""
Poisson shot-budget planning.

With N shots over L equally likely addresses, the appearance count of one
address is Poisson with mean lambda = N / L. The planner inverts the lower
cumulative distribution to find the smallest shots-per-address lambda that
keeps the probability of seeing fewer than m_min appearances of an address
below the accepted failure rate, and applies a first-order union bound to
go from a per-address to a per-circuit failure probability.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import stats


@dataclass(frozen=True)
class ShotPlan:
    addresses: int
    m_min: int
    f_circ: float
    shots_per_address: float
    total_shots: int

    def to_dict(self) -> dict:
        return {
            "addresses": self.addresses,
            "m_min": self.m_min,
            "f_circ": self.f_circ,
            "shots_per_address": self.shots_per_address,
            "total_shots": self.total_shots,
        }


def poisson_cdf(x: int, lam: float) -> float:
    """P(X <= x) for X ~ Poisson(lam)."""
    if lam <= 0:
        raise ValueError("lambda must be positive")
    if x < 0:
        raise ValueError("x must be non-negative")
    return float(stats.poisson.cdf(x, lam))


def lambda_for(f_addr: float, m_min: int, tol: float = 1e-6) -> float:
    """Smallest lambda with P(m_min - 1, lambda) <= f_addr, by bisection."""
    if not 0.0 < f_addr < 1.0:
        raise ValueError("f_addr must be in (0, 1)")
    if m_min < 1:
        raise ValueError("m_min must be >= 1")
    if m_min == 1:
        return -math.log(f_addr)
    lo, hi = 1e-9, float(m_min)
    while poisson_cdf(m_min - 1, hi) > f_addr:
        hi *= 2.0
    while hi - lo > tol:
        mid = (lo + hi) / 2.0
        if poisson_cdf(m_min - 1, mid) <= f_addr:
            hi = mid
        else:
            lo = mid
    return hi


def shots_for_circuit(addresses: int, m_min: int, f_circ: float) -> ShotPlan:
    """Shot plan for a whole circuit: per-address budget is f_circ / L."""
    if addresses < 1:
        raise ValueError("need at least one address")
    f_addr = f_circ / addresses
    if not 0.0 < f_addr < 1.0:
        raise ValueError("f_circ / addresses must be in (0, 1)")
    lam = lambda_for(f_addr, m_min)
    return ShotPlan(addresses, m_min, f_circ, lam, math.ceil(lam * addresses))
