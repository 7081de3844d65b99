"""Even zeta values, the eta and rho transforms, the Euler-Maclaurin
reference evaluator and the fractional-part sums.

The supported real domain is s >= 2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Tuple

from .bernoulli import bernoulli_number
from .numerics import PrecisionContext, ZetaError, mp_context, to_real

__all__ = [
    "Method",
    "ZetaValue",
    "ParameterSearchError",
    "EXACT_THRESHOLD",
    "check_argument",
    "real_argument",
    "zeta_even",
    "eta_factor",
    "eta_from_zeta",
    "zeta_from_eta",
    "rho",
    "rho_from_zeta",
    "zeta_from_rho",
    "zeta_reference",
    "zeta_best",
    "fractional_sums",
]

EXACT_THRESHOLD = 512
MAX_TERMS = 10**7


class Method(str, Enum):
    EXACT_EVEN = "exact-even"
    REFERENCE = "reference"
    GEOMEAN = "geomean"
    BOUNDS_L = "bounds-l"
    BOUNDS_R = "bounds-r"
    ASYMPTOTIC = "asymptotic"
    INTEGRAL = "integral"
    SERIES = "series"


class ParameterSearchError(ZetaError):
    pass


@dataclass(frozen=True)
class ZetaValue:
    argument: object
    value: object
    method: Method
    digits: int

    def __float__(self):
        return float(self.value)


def check_argument(s):
    """Normalize ``s`` (decimal strings become exact Fractions) and check s >= 2."""
    if isinstance(s, str):
        s = Fraction(s.strip())
    if not s >= 2:
        raise ValueError(f"s must be >= 2 (supported domain), got {s}")
    return s


def _is_integer(s) -> bool:
    if isinstance(s, int):
        return True
    if isinstance(s, Fraction):
        return s.denominator == 1
    try:
        return float(s).is_integer() and s == int(s)
    except (OverflowError, ValueError):
        return False


def zeta_even(n: int, ctx: PrecisionContext, exact_threshold: int = EXACT_THRESHOLD) -> ZetaValue:
    """zeta(2n) from B_2n, or by direct summation when n > ``exact_threshold``."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    mp = ctx.mp
    if n <= exact_threshold:
        b = abs(bernoulli_number(2 * n))
        value = (2 * mp.pi) ** (2 * n) * to_real(b, ctx) / (2 * mp.factorial(2 * n))
    else:
        value = _direct_sum(2 * n, ctx)
    return ZetaValue(2 * n, value, Method.EXACT_EVEN, ctx.digits)


def _direct_sum(s, ctx: PrecisionContext):
    # only used where 2^-s is already far below the working precision
    mp = ctx.mp
    tol = mp.mpf(10) ** (-ctx.dps - 2)
    total = mp.one
    k = 2
    while True:
        term = mp.mpf(k) ** (-s)
        total += term
        if term < tol:
            return total
        k += 1
        if k > MAX_TERMS:
            raise ParameterSearchError(f"direct sum for s={s} did not converge")


def real_argument(s, mp):
    if isinstance(s, Fraction):
        return mp.mpf(s.numerator) / s.denominator
    return mp.mpf(s)


def eta_factor(s, mp):
    """1 - 2^(1-s) as a value of ``mp``."""
    if s == mp.inf or s == math.inf:
        return mp.one
    return 1 - mp.mpf(2) ** (1 - real_argument(s, mp))


def eta_from_zeta(s, zeta):
    """eta(s) = (1 - 2^(1-s)) zeta(s), in the context of ``zeta``."""
    if not s > 1:
        raise ValueError(f"eta/zeta relation needs s > 1, got {s}")
    mp = zeta.context
    return eta_factor(s, mp) * zeta


def zeta_from_eta(s, eta):
    if not s > 1:
        raise ValueError(f"eta/zeta relation needs s > 1, got {s}")
    return eta / eta_factor(s, eta.context)


def rho_from_zeta(s, zeta):
    """rho(s) = 1/eta(s) - 1."""
    return 1 / eta_from_zeta(s, zeta) - 1


def zeta_from_rho(s, r):
    """Inverse of :func:`rho_from_zeta`: zeta = 1 / ((1 + rho)(1 - 2^(1-s)))."""
    if not s > 1:
        raise ValueError(f"eta/zeta relation needs s > 1, got {s}")
    return 1 / ((1 + r) * eta_factor(s, r.context))


def zeta_best(s, ctx: PrecisionContext) -> ZetaValue:
    """Exact value at even integers, reference evaluation elsewhere."""
    s = check_argument(s)
    if _is_integer(s) and int(s) % 2 == 0:
        return zeta_even(int(s) // 2, ctx)
    return zeta_reference(s, ctx)


def rho(s, ctx: PrecisionContext):
    """rho(s) = 1/eta(s) - 1 using the best available zeta(s)."""
    s = check_argument(s)
    mp = ctx.mp
    if s == math.inf or s == mp.inf:
        return mp.zero
    # rho(s) ~ 2^(1-s) cancels in 1/eta - 1; widen so it keeps full relative precision
    work = ctx.widened(int(float(s) * math.log10(2)) + 2)
    return mp.mpf(rho_from_zeta(s, zeta_best(s, work).value))


# ---------------------------------------------------------------------------
# Euler-Maclaurin reference
# ---------------------------------------------------------------------------


def _em_log10_term(s: float, j: int, k: int) -> float:
    """log10 of |B_2j|/(2j)! * (s)_(2j-1) * K^(-s-2j+1), using |B_2j| ~ 2(2j)!/(2 pi)^(2j)."""
    return (
        math.log10(2)
        - 2 * j * math.log10(2 * math.pi)
        + (math.lgamma(s + 2 * j - 1) - math.lgamma(s)) / math.log(10)
        - (s + 2 * j - 1) * math.log10(k)
    )


def _em_parameters(s: float, target: float, max_j: int = 400) -> Tuple[int, int]:
    """Smallest power-of-two K (and matching J) whose first omitted term is below 10^target."""
    k = 2
    while k <= MAX_TERMS:
        for j in range(1, max_j + 1):
            lt = _em_log10_term(s, j, k)
            if lt < target:
                return k, j - 1
            if j > 1 and lt > _em_log10_term(s, j - 1, k):
                break  # asymptotic series has started to diverge
        k *= 2
    raise ParameterSearchError(
        f"no Euler-Maclaurin parameters with K <= {MAX_TERMS} reach 1e{target:.0f} at s={s}"
    )


def zeta_reference(s, ctx: PrecisionContext) -> ZetaValue:
    """Euler-Maclaurin evaluation of zeta(s) for real s >= 2.

    zeta(s) = sum_{k<K} k^-s + K^(1-s)/(s-1) + K^-s/2
              + sum_{j=1}^{J} B_2j/(2j)! (s)(s+1)...(s+2j-2) K^(-s-2j+1)

    K and J are chosen so the first omitted correction is below 10^-(digits+5).
    The choice is checked against the exact first omitted term.
    """
    s = check_argument(s)
    target = -(ctx.digits + 5)
    sf = float(s)
    k, j_max = _em_parameters(sf, target)
    # roundoff of the K-term sum grows like K ulps
    work = mp_context(ctx.dps + len(str(k)) + 2)
    sw = real_argument(s, work)
    K = work.mpf(k)
    head = work.fsum(work.mpf(i) ** (-sw) for i in range(1, k))
    k_pow = K ** (-sw)
    total = head + K * k_pow / (sw - 1) + k_pow / 2
    rising = sw  # (s)(s+1)...(s+2j-2)
    kpow = k_pow / K  # K^(-s-1)
    inv_k2 = 1 / (K * K)
    corrections = []
    for j in range(1, j_max + 2):
        b = bernoulli_number(2 * j)
        term = work.mpf(b.numerator) / b.denominator / work.factorial(2 * j) * rising * kpow
        corrections.append(term)
        rising *= (sw + 2 * j - 1) * (sw + 2 * j)
        kpow *= inv_k2
    omitted = corrections.pop()
    tol = work.mpf(10) ** target
    if abs(omitted) >= tol * 10:
        raise ParameterSearchError(
            f"Euler-Maclaurin check failed at s={s}: first omitted term {work.nstr(omitted, 3)}"
        )
    total += work.fsum(corrections)
    return ZetaValue(s, ctx.mp.mpf(total), Method.REFERENCE, ctx.digits)


def fractional_sums(max_n: int, ctx: PrecisionContext):
    """Partial sums of frac(zeta(n)) = zeta(n) - 1 for 2 <= n <= max_n.

    Returns (all, even, odd).
    """
    if max_n < 2:
        raise ValueError(f"max_n must be >= 2, got {max_n}")
    mp = ctx.mp
    even = mp.fsum(zeta_even(n // 2, ctx).value - 1 for n in range(2, max_n + 1, 2))
    odd = mp.fsum(zeta_reference(n, ctx).value - 1 for n in range(3, max_n + 1, 2))
    return even + odd, even, odd
