"""Exact Bernoulli numbers and polynomials, reduced Bernoulli numbers and the
auxiliary integrals of B_2n(t)cos(m pi t) and B_2n+1(t)sin(m pi t).

Convention: B_1 = -1/2, i.e. the generating function t e^{tx} / (e^t - 1).
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import List, Sequence, Tuple

import gmpy2

from .numerics import PrecisionContext, integrate_01, to_real

__all__ = [
    "BernoulliCache",
    "BernoulliPolynomial",
    "PiMultiple",
    "bernoulli_number",
    "bernoulli_polynomial",
    "rbn_plus",
    "rbn_minus",
    "aux_integral_cos",
    "aux_integral_sin",
]


class BernoulliCache:
    """Growable table of exact Bernoulli numbers, table[k] = B_k.

    Extension runs the recurrence sum_{k=0}^{n} C(n+1, k) B_k = 0 under a lock;
    readers only ever see a fully extended prefix.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._table: List[Fraction] = [Fraction(1), Fraction(-1, 2)]
        # B_k scaled to the running common denominator, for the fast integer sum
        self._denominator = 2

    def __len__(self):
        return len(self._table)

    def __getitem__(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError(f"Bernoulli index must be >= 0, got {n}")
        if n >= len(self._table):
            self.extend_to(n)
        return self._table[n]

    def extend_to(self, n: int) -> None:
        with self._lock:
            table = self._table
            d = self._denominator
            for m in range(len(table), n + 1):
                if m % 2:
                    table.append(Fraction(0))
                    continue
                s = gmpy2.mpz(0)
                for k in range(0, m, 2):
                    b = table[k]
                    s += gmpy2.comb(m + 1, k) * b.numerator * (d // b.denominator)
                s += (m + 1) * -(d // 2)  # the B_1 term
                b = Fraction(-int(s), d * (m + 1))
                table.append(b)
                d = gmpy2.lcm(d, b.denominator)
            self._denominator = int(d)

    def snapshot(self) -> Tuple[Fraction, ...]:
        return tuple(self._table)


_CACHE = BernoulliCache()


def bernoulli_number(n: int) -> Fraction:
    """Exact B_n (B_1 = -1/2)."""
    return _CACHE[n]


def _real_coefficients(coefficients: Sequence[Fraction], mp) -> list:
    return [mp.mpf(c.numerator) / c.denominator for c in coefficients]


def _horner(coefficients: Sequence, x):
    acc = x * 0
    for c in coefficients:
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class BernoulliPolynomial:
    """B_n(x) = sum_j C(n, j) B_j x^(n-j); ``coefficients[j]`` multiplies x^(n-j)."""

    degree: int
    coefficients: Tuple[Fraction, ...]

    def __call__(self, x):
        # Horner from the leading coefficient down
        if isinstance(x, (int, Fraction)):
            acc = Fraction(0)
            for c in self.coefficients:
                acc = acc * x + c
            return acc
        return _horner(_real_coefficients(self.coefficients, x.context), x)

    def evaluate(self, x, ctx: PrecisionContext):
        return self(to_real(x, ctx))

    def derivative(self) -> "BernoulliPolynomial":
        n = self.degree
        if n == 0:
            return BernoulliPolynomial(0, (Fraction(0),))
        return BernoulliPolynomial(
            n - 1, tuple(c * (n - j) for j, c in enumerate(self.coefficients[:-1]))
        )

    def __str__(self):
        n = self.degree
        terms = []
        for j, c in enumerate(self.coefficients):
            if c == 0:
                continue
            p = n - j
            mono = "" if p == 0 else ("x" if p == 1 else f"x^{p}")
            terms.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(terms) or "0"


def bernoulli_polynomial(n: int) -> BernoulliPolynomial:
    if n < 0:
        raise ValueError(f"degree must be >= 0, got {n}")
    return BernoulliPolynomial(
        n, tuple(comb(n, j) * bernoulli_number(j) for j in range(n + 1))
    )


def rbn_plus(n: int) -> Fraction:
    """(-1)^(n+1) B_2n, which is positive for every n >= 1."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return (-1) ** (n + 1) * bernoulli_number(2 * n)


def rbn_minus(n: int, ctx: PrecisionContext):
    """(-1)^(n+1) * integral over [0, 1] of B_2n+1(x) cot(pi x) dx, by quadrature."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    mp = ctx.mp
    coefficients = _real_coefficients(bernoulli_polynomial(2 * n + 1).coefficients, mp)
    sign = (-1) ** (n + 1)
    # B_2n+1(x) ~ (2n+1) B_2n x near 0 and is odd about 1/2, cot(pi x) ~ 1/(pi x)
    limit = sign * to_real((2 * n + 1) * bernoulli_number(2 * n), ctx) / mp.pi

    def integrand(x):
        return sign * _horner(coefficients, x) * mp.cot(mp.pi * x)

    return integrate_01(integrand, ctx, endpoints=(limit, limit))


@dataclass(frozen=True)
class PiMultiple:
    """Exact value ``coefficient * pi**power``."""

    coefficient: Fraction
    power: int

    def __mul__(self, other: "PiMultiple") -> "PiMultiple":
        if isinstance(other, PiMultiple):
            if self.coefficient == 0 or other.coefficient == 0:
                return PiMultiple(Fraction(0), 0)
            return PiMultiple(self.coefficient * other.coefficient, self.power + other.power)
        return NotImplemented

    def to_real(self, ctx: PrecisionContext):
        return to_real(self.coefficient, ctx) * ctx.mp.pi ** self.power

    def __str__(self):
        return f"({self.coefficient})*pi^{self.power}"


_ZERO = PiMultiple(Fraction(0), 0)


def _aux_closed_form(k: int, n: int, m: int) -> PiMultiple:
    # (-1)^(n+1) k! / (m pi)^k for even m, 0 for odd m
    if n < 1 or m < 1:
        raise ValueError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    if m % 2:
        return _ZERO
    return PiMultiple(Fraction((-1) ** (n + 1) * factorial(k), m**k), -k)


def aux_integral_cos(n: int, m: int) -> PiMultiple:
    """Integral over [0, 1] of B_2n(t) cos(m pi t) dt, exactly."""
    return _aux_closed_form(2 * n, n, m)


def aux_integral_sin(n: int, m: int) -> PiMultiple:
    """Integral over [0, 1] of B_2n+1(t) sin(m pi t) dt, exactly."""
    return _aux_closed_form(2 * n + 1, n, m)


def aux_recursion_factor(k: int, m: int) -> PiMultiple:
    """Factor -k(k-1)/(m pi)^2 linking consecutive auxiliary integrals of degree k-2 and k."""
    return PiMultiple(Fraction(-k * (k - 1), m * m), -2)
