"""Competitor evaluators: Gauss-Hermite quadrature of the ratio integral and
the rapidly convergent even-zeta series for zeta(2n+1)."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Tuple

from .numerics import PrecisionContext, ZetaError
from .zeta_core import Method, ZetaValue, check_argument, real_argument, zeta_even

__all__ = [
    "RootFindingError",
    "MissingOddValuesError",
    "HermiteRule",
    "SeriesState",
    "hermite_rule",
    "hermite_weight_literal",
    "zeta_integral_method",
    "zeta_series_method",
    "series_sweep",
    "series_error_bound",
    "series_error_asymptote",
]


class RootFindingError(ZetaError):
    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


class MissingOddValuesError(ZetaError, ValueError):
    pass


@dataclass(frozen=True)
class HermiteRule:
    order: int
    nodes: Tuple
    weights: Tuple

    def apply(self, f):
        """sum_k w_k f(x_k), approximating the integral of f(x) exp(-x^2) over R."""
        mp = self.nodes[0].context
        return mp.fsum(w * f(x) for x, w in zip(self.nodes, self.weights))


def _hermite_pair(n: int, x):
    """(H_n(x), H_{n-1}(x)) for the physicists' Hermite polynomials."""
    h_prev, h = x * 0, x * 0 + 1
    for k in range(n):
        h_prev, h = h, 2 * x * h - 2 * k * h_prev
    return h, h_prev


def hermite_rule(N: int, ctx: PrecisionContext) -> HermiteRule:
    """N-point Gauss-Hermite rule.

    Positive zeros of H_N are isolated by sign changes on a uniform grid over
    [0, sqrt(2N+1)] and polished by safeguarded Newton iteration; negative
    zeros follow by symmetry.  Weights use 2^(N-1) N! sqrt(pi) / (N H_{N-1}(x))^2.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    work = ctx.widened(10 + N // 4)
    mp = work.mp
    tol = mp.mpf(10) ** (-ctx.dps - 2)
    half = N // 2
    upper = mp.sqrt(2 * N + 1)
    steps = 20 * N
    grid = [upper * i / steps for i in range(1, steps + 1)]
    brackets = []
    lo = grid[0] / 2 if N % 2 else mp.zero  # skip the exact zero at the origin for odd N
    f_lo = _hermite_pair(N, lo)[0]
    for hi in grid:
        f_hi = _hermite_pair(N, hi)[0]
        if f_lo * f_hi < 0:
            brackets.append((lo, hi))
        lo, f_lo = hi, f_hi
    if len(brackets) != half:
        raise RootFindingError(
            f"found {len(brackets)} sign changes of H_{N}, expected {half}", len(brackets)
        )

    positive = []
    for index, (a, b) in enumerate(brackets):
        fa = _hermite_pair(N, a)[0]
        x = (a + b) / 2
        for _ in range(200):
            h, h_prev = _hermite_pair(N, x)
            if h == 0:
                break
            if (h < 0) == (fa < 0):
                a, fa = x, h
            else:
                b = x
            step = h / (2 * N * h_prev)
            if abs(step) <= tol * abs(x):
                x -= step
                break
            candidate = x - step
            x = candidate if a < candidate < b else (a + b) / 2
        else:
            raise RootFindingError(f"Newton polishing of node {index} of H_{N} did not converge", index)
        positive.append(x)

    nodes = [-x for x in reversed(positive)] + ([mp.zero] if N % 2 else []) + positive
    scale = mp.mpf(2) ** (N - 1) * mp.factorial(N) * mp.sqrt(mp.pi) / (N * N)
    weights = [scale / _hermite_pair(N - 1, x)[0] ** 2 for x in nodes]
    out = ctx.mp
    return HermiteRule(N, tuple(out.mpf(x) for x in nodes), tuple(out.mpf(w) for w in weights))


def hermite_weight_literal(N: int, x):
    """-2^(N+1) N! sqrt(pi) / (H_N'(x) H_{N+1}(x)), with H_N' = 2N H_{N-1}."""
    mp = x.context
    h_next, h = _hermite_pair(N + 1, x)
    h_prev = _hermite_pair(N - 1, x)[0]
    return -(mp.mpf(2) ** (N + 1)) * mp.factorial(N) * mp.sqrt(mp.pi) / (2 * N * h_prev * h_next)


def zeta_integral_method(s, N: int, ctx: PrecisionContext, rule: HermiteRule = None) -> ZetaValue:
    """zeta(s) as the ratio of Gauss-Hermite sums of |x|^(2s-1)/(1 - e^-x^2) and |x|^(2s-1).

    A node at x = 0 contributes 0 to both sums.
    """
    s = check_argument(s)
    rule = rule or hermite_rule(N, ctx)
    mp = ctx.mp
    sv = real_argument(s, mp)
    num = []
    den = []
    for x, w in zip(rule.nodes, rule.weights):
        if x == 0:
            continue
        p = abs(x) ** (2 * sv - 1)
        den.append(w * p)
        num.append(w * p / -mp.expm1(-x * x))
    return ZetaValue(s, mp.fsum(num) / mp.fsum(den), Method.INTEGRAL, ctx.digits)


@dataclass
class SeriesState:
    """Odd zeta values produced so far by :func:`zeta_series_method`.

    ``known_odd[m]`` holds zeta(2m+1).  Not thread-safe: give each thread its
    own state.
    """

    terms: int = 25
    known_odd: Dict[int, object] = field(default_factory=dict)

    def copy(self) -> "SeriesState":
        return SeriesState(self.terms, dict(self.known_odd))


def zeta_series_method(n: int, N2: int, ctx: PrecisionContext, state: SeriesState) -> ZetaValue:
    """zeta(2n+1) from the series in zeta(2k), truncated after k = N2.

    (-1)^(n-1) (2 pi)^2n / ((2n)! [2^2n (2n-3) - 2n + 1]) *
      [ sum_{m=1}^{n-1} (-1)^m C(2n-1, 2m-2) (2m)! (2^2m - 1) / (2 pi)^2m zeta(2m+1)
        + 2 sum_{k=0}^{N2} zeta(2k) / ((2k+2n-1)(k+n)(2k+2n+1) 2^2k) ]

    with zeta(0) = -1/2.  Needs zeta(2m+1) for all m < n in ``state``; the
    result is stored there.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    missing = [m for m in range(1, n) if m not in state.known_odd]
    if missing:
        raise MissingOddValuesError(f"zeta(2m+1) needed for m = {missing} before n = {n}")
    mp = ctx.mp
    two_pi = 2 * mp.pi
    finite = mp.fsum(
        (-1) ** m
        * math.comb(2 * n - 1, 2 * m - 2)
        * mp.factorial(2 * m)
        * (4**m - 1)
        / two_pi ** (2 * m)
        * mp.mpf(state.known_odd[m])
        for m in range(1, n)
    )
    tail = []
    for k in range(N2 + 1):
        z = mp.mpf(-0.5) if k == 0 else zeta_even(k, ctx).value
        tail.append(z / ((2 * k + 2 * n - 1) * (k + n) * (2 * k + 2 * n + 1) * mp.mpf(4) ** k))
    prefactor = (-1) ** (n - 1) * two_pi ** (2 * n) / (
        mp.factorial(2 * n) * (4**n * (2 * n - 3) - 2 * n + 1)
    )
    value = prefactor * (finite + 2 * mp.fsum(tail))
    state.known_odd[n] = value
    return ZetaValue(2 * n + 1, value, Method.SERIES, ctx.digits)


def series_sweep(n_max: int, N2: int, ctx: PrecisionContext, state: SeriesState = None):
    """Run the series method for n = 1..n_max in order; returns {n: ZetaValue}."""
    state = state if state is not None else SeriesState(N2)
    out = {}
    for n in range(1, n_max + 1):
        if n in state.known_odd:
            out[n] = ZetaValue(2 * n + 1, ctx.mp.mpf(state.known_odd[n]), Method.SERIES, ctx.digits)
        else:
            out[n] = zeta_series_method(n, N2, ctx, state)
    return out


def series_error_bound(N: int, ctx: PrecisionContext = None):
    """(4 pi^2 / 45) / ((2N+3)(N+2)(2N+5)(4^N - 1/2)), the closed-form truncation bound for n = 1."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    mp = (ctx or PrecisionContext(30)).mp
    return 4 * mp.pi ** 2 / 45 / ((2 * N + 3) * (N + 2) * (2 * N + 5) * (mp.mpf(4) ** N - mp.mpf(1) / 2))


def series_error_asymptote(N: int, ctx: PrecisionContext = None):
    """Large-N estimate of lg|R_N|: -2 lg2 (N+1) - 3 lg N."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    mp = (ctx or PrecisionContext(30)).mp
    return -2 * mp.log10(2) * (N + 1) - 3 * mp.log10(N)
