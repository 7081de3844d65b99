"""Odd zeta values from the two neighbouring even values.

rho(s) = 1/eta(s) - 1 roughly halves from each integer argument to the next,
so rho(2n)/2 and 2 rho(2n+2) bracket rho(2n+1).  The estimator takes their
geometric mean, sqrt(rho(2n) rho(2n+2)), and maps it back to zeta(2n+1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .numerics import PrecisionContext, ZetaError
from .zeta_core import (
    check_argument,
    eta_from_zeta,
    rho,
    real_argument,
    rho_from_zeta,
    zeta_even,
    zeta_from_rho,
    zeta_reference,
)

__all__ = [
    "ConsistencyError",
    "OddEstimate",
    "Lemma1Check",
    "reference_digits",
    "recurrence_ratio",
    "zeta_bounds",
    "zeta_odd_geomean",
    "asymptotic_zeta",
    "lemma1_check",
    "sfree_density",
    "sfree_count_estimate",
]


class ConsistencyError(ZetaError):
    """An inequality that must hold by construction was violated."""


def reference_digits(n: int) -> int:
    """Digits needed to measure the estimator error at 2n+1 (error ~ 10^(-0.95n))."""
    return max(40, n + 30)


@dataclass(frozen=True)
class OddEstimate:
    n: int
    zeta_l: object
    zeta_r: object
    zeta_gm: object
    reference: object
    abs_error: object

    @property
    def argument(self) -> int:
        return 2 * self.n + 1

    @property
    def signed_error(self):
        return self.zeta_gm - self.reference


def _even_rhos(n: int, ctx: PrecisionContext):
    r_lo = rho_from_zeta(2 * n, zeta_even(n, ctx).value)
    r_hi = rho_from_zeta(2 * n + 2, zeta_even(n + 1, ctx).value)
    return r_lo, r_hi


def recurrence_ratio(n: int, ctx: PrecisionContext):
    """rho(2n+1) / rho(2n), with the odd value from the reference evaluator."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return rho(2 * n + 1, ctx) / rho(2 * n, ctx)


def zeta_bounds(n: int, ctx: PrecisionContext):
    """(zeta_l, zeta_r): zeta(2n+1) rebuilt from rho(2n)/2 and from 2 rho(2n+2).

    The gap between the bounds shrinks like 9^-n, so the work runs at
    max(ctx.digits, n + 30) digits and the results live in that context.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    ctx = ctx.with_digits(max(ctx.digits, reference_digits(n)))
    r_lo, r_hi = _even_rhos(n, ctx)
    zl = zeta_from_rho(2 * n + 1, r_lo / 2)
    zr = zeta_from_rho(2 * n + 1, 2 * r_hi)
    if not zl > zr > 1:
        raise ConsistencyError(f"bound chain zeta_l > zeta_r > 1 violated at n={n}")
    return zl, zr


def zeta_odd_geomean(n: int, ctx: PrecisionContext, with_reference: bool = True) -> OddEstimate:
    """Geometric-mean estimate of zeta(2n+1).

    Runs at max(ctx.digits, 40, n + 30) digits so the reference comparison
    resolves the error.  With ``with_reference=False`` the reference and
    error fields are None.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    digits = max(ctx.digits, reference_digits(n)) if with_reference else ctx.digits
    work = ctx.with_digits(digits)
    mp = work.mp
    r_lo, r_hi = _even_rhos(n, work)
    s = 2 * n + 1
    zl = zeta_from_rho(s, r_lo / 2)
    zr = zeta_from_rho(s, 2 * r_hi)
    zgm = zeta_from_rho(s, mp.sqrt(r_lo * r_hi))
    if not zl > zgm > zr > 1:
        raise ConsistencyError(f"zeta_l > zeta_gm > zeta_r > 1 violated at n={n}")
    if not with_reference:
        return OddEstimate(n, zl, zr, zgm, None, None)
    ref = zeta_reference(s, work).value
    return OddEstimate(n, zl, zr, zgm, ref, abs(zgm - ref))


def asymptotic_zeta(s, ctx: PrecisionContext):
    """zeta(s) from 1/zeta(s) ~ (2^(s-1)-1)/2^(2s-3) (2/zeta(2) - 1) + (2^(s-1)-1)/2^(s-1)."""
    mp = ctx.mp
    if s == math.inf or s == mp.inf:
        return mp.one
    s = real_argument(check_argument(s), mp)
    zeta2 = mp.pi ** 2 / 6
    p = mp.mpf(2) ** (s - 1)
    inv = (p - 1) / mp.mpf(2) ** (2 * s - 3) * (2 / zeta2 - 1) + (p - 1) / p
    return 1 / inv


@dataclass(frozen=True)
class Lemma1Check:
    n: int
    lhs1: object  # 4/eta(2n+2) - 1/eta(2n), claimed > 3
    holds1: bool
    lhs2: object  # eta(2n), claimed > rhs2
    rhs2: object
    holds2: bool

    @property
    def margin1(self):
        return self.lhs1 - 3

    @property
    def margin2(self):
        return self.lhs2 - self.rhs2


def lemma1_check(n: int, ctx: PrecisionContext) -> Lemma1Check:
    """Evaluate 4/eta(2n+2) - 1/eta(2n) > 3 and eta(2n) > (2^(2n-1)-2)/(2^(2n-1)-1)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    mp = ctx.mp
    eta_lo = eta_from_zeta(2 * n, zeta_even(n, ctx).value)
    eta_hi = eta_from_zeta(2 * n + 2, zeta_even(n + 1, ctx).value)
    lhs1 = 4 / eta_hi - 1 / eta_lo
    q = mp.mpf(2) ** (2 * n - 1)
    rhs2 = (q - 2) / (q - 1)
    return Lemma1Check(n, lhs1, bool(lhs1 > 3), eta_lo, rhs2, bool(eta_lo > rhs2))


def sfree_density(s, ctx: PrecisionContext):
    """Asymptotic density of s-free integers, 1/zeta(s), via :func:`asymptotic_zeta`."""
    return 1 / asymptotic_zeta(s, ctx)


def sfree_count_estimate(x: int, s, ctx: PrecisionContext):
    """Estimated number of s-free integers in [1, x]."""
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    return x * sfree_density(s, ctx)
