"""Foundation layer: precision contexts, exact rationals, quadrature on [0, 1]
and least-squares line fitting.

Real numbers are mpmath ``mpf`` values.  Every :class:`PrecisionContext` owns
a private :class:`mpmath.MPContext`, so a value produced under a context
remembers it through ``x.context`` and no code here touches the global
``mpmath.mp`` precision.
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, ROUND_HALF_EVEN
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence, Tuple

import mpmath
from mpmath import libmp

__all__ = [
    "ZetaError",
    "QuadratureError",
    "DegenerateInputError",
    "PrecisionContext",
    "BigReal",
    "Rational",
    "FitResult",
    "mp_context",
    "to_real",
    "to_context",
    "context_of",
    "parse_real",
    "format_sci",
    "format_fixed",
    "format_rational",
    "parse_rational",
    "integrate_01",
    "fit_line",
    "decimal_exponent",
    "lg",
]

Rational = Fraction
BigReal = mpmath.mpf  # concrete values are instances of a per-context mpf subclass


class ZetaError(Exception):
    """Base class for failures raised by this package."""


class QuadratureError(ZetaError):
    def __init__(self, message: str, estimates: Tuple[object, object]):
        super().__init__(message)
        self.estimates = estimates


class DegenerateInputError(ZetaError, ValueError):
    pass


@lru_cache(maxsize=None)
def mp_context(dps: int) -> mpmath.ctx_mp.MPContext:
    """Shared, never-mutated mpmath context working at ``dps`` decimal digits."""
    ctx = mpmath.MPContext()
    ctx.dps = dps
    return ctx


@dataclass(frozen=True)
class PrecisionContext:
    """Requested decimal digits plus internal guard digits."""

    digits: int
    guard: int = 10

    def __post_init__(self):
        if self.digits < 1:
            raise ValueError(f"digits must be positive, got {self.digits}")
        if self.guard < 0:
            raise ValueError(f"guard must be non-negative, got {self.guard}")

    @property
    def dps(self) -> int:
        return self.digits + self.guard

    @property
    def mp(self) -> mpmath.ctx_mp.MPContext:
        return mp_context(self.dps)

    @property
    def eps(self):
        """10^-digits as a value of this context."""
        return self.mp.mpf(10) ** (-self.digits)

    def with_digits(self, digits: int) -> "PrecisionContext":
        return PrecisionContext(digits, self.guard)

    def widened(self, extra: int) -> "PrecisionContext":
        """Same requested digits, ``extra`` more guard digits."""
        return PrecisionContext(self.digits, self.guard + extra)

    def real(self, x):
        return to_real(x, self)


def to_real(x, ctx: PrecisionContext):
    """Convert an int, Fraction, str, float or mpf to a value of ``ctx``."""
    mp = ctx.mp
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    if isinstance(x, str):
        return parse_real(x, ctx)
    return mp.mpf(x)


def to_context(x, ctx: PrecisionContext):
    """Explicit conversion point between contexts (rounds to ``ctx``)."""
    return ctx.mp.mpf(x)


def context_of(x) -> Optional[mpmath.ctx_mp.MPContext]:
    return getattr(x, "context", None)


def parse_real(text: str, ctx: PrecisionContext):
    return ctx.mp.mpf(text.strip())


def format_sci(x, sig: int = 3) -> str:
    """Scientific notation ``d.ddd...e±k`` with exactly ``sig`` significant digits."""
    if sig < 1:
        raise ValueError("sig must be >= 1")
    v = x._mpf_ if hasattr(x, "_mpf_") else mpmath.mpf(x)._mpf_
    if v == libmp.fzero:
        return "0." + "0" * max(sig - 1, 1) + "e+0"
    if v in (libmp.finf, libmp.fninf, libmp.fnan):
        return libmp.to_str(v, sig)
    sign, digits, exponent = libmp.to_digits_exp(v, sig + 5)
    d = Decimal(sign + "0." + digits).scaleb(int(exponent) + 1)  # exponent may be an mpz
    q = d.quantize(Decimal(1).scaleb(d.adjusted() - sig + 1), rounding=ROUND_HALF_EVEN)
    t = q.as_tuple()
    ds = "".join(map(str, t.digits))[:sig].ljust(sig, "0")
    exp10 = q.adjusted()
    mant = ds[0] + ("." + ds[1:] if sig > 1 else ".0")
    return f"{'-' if t.sign else ''}{mant}e{exp10:+d}"


def format_fixed(x, decimals: int = 12) -> str:
    """Fixed-point decimal string rounded half-even to ``decimals`` places."""
    v = x._mpf_ if hasattr(x, "_mpf_") else mpmath.mpf(x)._mpf_
    if v == libmp.fzero:
        return f"{Decimal(0):.{decimals}f}"
    mag = int(libmp.to_digits_exp(v, 3)[2])
    sign, digits, exponent = libmp.to_digits_exp(v, max(mag + decimals + 6, 6))
    d = Decimal(sign + "0." + digits).scaleb(int(exponent) + 1)
    return f"{d.quantize(Decimal(1).scaleb(-decimals), rounding=ROUND_HALF_EVEN):.{decimals}f}"


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


# ---------------------------------------------------------------------------
# Clenshaw-Curtis quadrature on [0, 1]
# ---------------------------------------------------------------------------


@lru_cache(maxsize=64)
def _cc_rule(n: int, dps: int):
    """Nodes and weights of the (n+1)-point Clenshaw-Curtis rule mapped to [0, 1]."""
    mp = mp_context(dps)
    # cos(j*pi/n) for j in [0, 2n), indexed modulo 2n
    cosines = [mp.cospi(mp.mpf(j) / n) for j in range(2 * n)]
    nodes = [(1 - cosines[k]) / 2 for k in range(n + 1)]
    half = n // 2
    coef = [mp.mpf(0)] + [
        (mp.mpf(1 if j == half else 2)) / (4 * j * j - 1) for j in range(1, half + 1)
    ]
    weights = []
    for k in range(n + 1):
        acc = mp.mpf(1)
        for j in range(1, half + 1):
            acc -= coef[j] * cosines[(2 * j * k) % (2 * n)]
        c = 1 if k in (0, n) else 2
        weights.append(acc * c / (2 * n))
    return nodes, weights


def integrate_01(
    f: Callable,
    ctx: PrecisionContext,
    endpoints: Optional[Tuple[object, object]] = None,
    min_level: int = 4,
    max_level: int = 10,
):
    """Integrate ``f`` over [0, 1] to an absolute error of about 10^-digits.

    ``f`` receives values of ``ctx.mp`` and must return values of the same
    context.  Integrands that are 0/0 at an endpoint need ``endpoints`` =
    (f(0+), f(1-)); otherwise ``f`` is evaluated at 0 and 1 directly.

    Nested Clenshaw-Curtis rules with 2^level intervals are doubled until two
    successive estimates agree to 10^-(digits+2).  Raises
    :class:`QuadratureError` with the last two estimates if that does not
    happen by ``max_level``.
    """
    mp = ctx.mp
    tol = mp.mpf(10) ** (-(ctx.digits + 2))
    if endpoints is None:
        f0, f1 = f(mp.zero), f(mp.one)
    else:
        f0, f1 = mp.mpf(endpoints[0]), mp.mpf(endpoints[1])

    n = 2 ** min_level
    nodes, _ = _cc_rule(n, ctx.dps)
    values = [f0] + [f(x) for x in nodes[1:-1]] + [f1]
    previous = None
    level = min_level
    while True:
        _, weights = _cc_rule(n, ctx.dps)
        estimate = mp.fsum(w * v for w, v in zip(weights, values))
        if previous is not None and abs(estimate - previous) <= tol:
            return estimate
        if level >= max_level:
            raise QuadratureError(
                f"no convergence after {n} intervals: "
                f"|I_{n} - I_{n // 2}| = {mp.nstr(abs(estimate - previous), 5)}",
                (previous, estimate),
            )
        previous = estimate
        level += 1
        n *= 2
        fine_nodes, _ = _cc_rule(n, ctx.dps)
        refined = [None] * (n + 1)
        refined[0::2] = values
        for k in range(1, n, 2):
            refined[k] = f(fine_nodes[k])
        values = refined


# ---------------------------------------------------------------------------
# least squares
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FitResult:
    slope: object
    intercept: object
    max_abs_residual: object

    def __iter__(self):
        return iter((self.slope, self.intercept, self.max_abs_residual))


def fit_line(points: Iterable[Sequence], ctx: Optional[PrecisionContext] = None) -> FitResult:
    """Ordinary least-squares line y = slope*x + intercept through ``points``."""
    pts = list(points)
    if ctx is None:
        mp = next((c for p in pts for c in map(context_of, p) if c is not None), None)
        if mp is None:
            mp = mp_context(40)
    else:
        mp = ctx.mp

    def conv(v):
        if isinstance(v, Fraction):
            return mp.mpf(v.numerator) / v.denominator
        return mp.mpf(v)

    xs = [conv(p[0]) for p in pts]
    ys = [conv(p[1]) for p in pts]
    if len(pts) < 2 or len(set(xs)) < 2:
        raise DegenerateInputError("fit_line needs at least two distinct abscissae")
    m = len(xs)
    xbar = mp.fsum(xs) / m
    ybar = mp.fsum(ys) / m
    sxx = mp.fsum((x - xbar) ** 2 for x in xs)
    sxy = mp.fsum((x - xbar) * (y - ybar) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = ybar - slope * xbar
    resid = max(abs(y - (slope * x + intercept)) for x, y in zip(xs, ys))
    return FitResult(slope, intercept, resid)


def decimal_exponent(x) -> int:
    """floor(log10|x|) for nonzero ``x``, computed from the digit expansion."""
    v = x._mpf_ if hasattr(x, "_mpf_") else mpmath.mpf(x)._mpf_
    if v == libmp.fzero:
        raise ValueError("decimal_exponent of zero")
    return int(libmp.to_digits_exp(v, 20)[2])


def lg(x):
    """Base-10 logarithm in the context of ``x``; -inf for zero."""
    mp = context_of(x) or mpmath.mp
    if x == 0:
        return mp.ninf
    return mp.log10(abs(x))

