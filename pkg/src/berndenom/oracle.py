"""Exact rational Bernoulli polynomials and power-sum polynomials.

This is the independent ground-truth path: coefficients are exact
fractions.Fraction values, denominators are read off the reduced
coefficients, and nothing is shared with the product-formula modules
this module cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm, perm

__all__ = [
    "RationalPolynomial",
    "bernoulli_numbers",
    "bernoulli_polynomial",
    "denominator_of",
    "derivative",
    "drop_constant_term",
    "sum_of_powers_polynomial",
]


@dataclass(frozen=True)
class RationalPolynomial:
    """Polynomial with exact rational coefficients, ascending powers.

    Trailing zero coefficients are stripped on construction; the zero
    polynomial is a single zero coefficient.
    """

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if not coeffs:
            coeffs = (Fraction(0),)
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def zero(cls) -> "RationalPolynomial":
        return cls((Fraction(0),))

    @classmethod
    def constant(cls, c) -> "RationalPolynomial":
        return cls((Fraction(c),))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return self.coefficients == (Fraction(0),)

    def __call__(self, x) -> Fraction:
        result = Fraction(0)
        for c in reversed(self.coefficients):
            result = result * x + c
        return result

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        summed = list(a)
        for i, c in enumerate(b):
            summed[i] += c
        return RationalPolynomial(tuple(summed))

    def __neg__(self) -> "RationalPolynomial":
        return RationalPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "RationalPolynomial":
        if isinstance(other, RationalPolynomial):
            out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
            for i, a in enumerate(self.coefficients):
                if a:
                    for j, b in enumerate(other.coefficients):
                        out[i + j] += a * b
            return RationalPolynomial(tuple(out))
        factor = Fraction(other)
        return RationalPolynomial(tuple(c * factor for c in self.coefficients))

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "RationalPolynomial":
        return self * (Fraction(1) / Fraction(scalar))

    def substitute_affine(self, shift, scale) -> "RationalPolynomial":
        """Coefficients of P(shift + scale * x), by Horner over polynomials."""
        linear = RationalPolynomial((Fraction(shift), Fraction(scale)))
        result = RationalPolynomial.zero()
        for c in reversed(self.coefficients):
            result = result * linear + RationalPolynomial.constant(c)
        return result


_BERNOULLI: list[Fraction] = [Fraction(1)]


def bernoulli_numbers(n: int) -> list[Fraction]:
    """B_0..B_n as exact fractions, under the B_1 = -1/2 convention.

    Solved from the recurrence sum(C(m+1, k) * B_k, k=0..m) = 0 with no
    parity shortcuts, so vanishing odd values come out of the arithmetic
    rather than being asserted.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    while len(_BERNOULLI) <= n:
        m = len(_BERNOULLI)
        acc = Fraction(0)
        for k, b in enumerate(_BERNOULLI):
            if b:
                acc += comb(m + 1, k) * b
        _BERNOULLI.append(-acc / (m + 1))
    return _BERNOULLI[: n + 1].copy()


def bernoulli_polynomial(n: int) -> RationalPolynomial:
    """B_n(x) = sum of C(n, k) * B_{n-k} * x^k; monic of degree n."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    numbers = bernoulli_numbers(n)
    return RationalPolynomial(
        tuple(comb(n, k) * numbers[n - k] for k in range(n + 1))
    )


def derivative(poly: RationalPolynomial, k: int = 1) -> RationalPolynomial:
    """k-fold formal derivative."""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    if k == 0:
        return poly
    coeffs = poly.coefficients
    if k >= len(coeffs):
        return RationalPolynomial.zero()
    return RationalPolynomial(
        tuple(coeffs[i + k] * perm(i + k, k) for i in range(len(coeffs) - k))
    )


def drop_constant_term(poly: RationalPolynomial) -> RationalPolynomial:
    """The polynomial with its constant coefficient zeroed."""
    return RationalPolynomial((Fraction(0),) + poly.coefficients[1:])


def sum_of_powers_polynomial(n: int) -> RationalPolynomial:
    """Polynomial S_n with S_n(m) = 0^n + 1^n + ... + (m-1)^n for integer m >= 0.

    Computed as (B_{n+1}(x) - B_{n+1}) / (n + 1); the constant term of
    B_{n+1}(x) is exactly B_{n+1}, so the subtraction just clears it.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    shifted = drop_constant_term(bernoulli_polynomial(n + 1))
    return shifted / (n + 1)


def denominator_of(poly: RationalPolynomial) -> int:
    """Least common multiple of the reduced coefficient denominators."""
    return lcm(*(c.denominator for c in poly.coefficients))
