from fractions import Fraction

import pytest

from berndenom import oracle
from berndenom.oracle import (
    RationalPolynomial,
    bernoulli_numbers,
    bernoulli_polynomial,
    denominator_of,
    derivative,
    drop_constant_term,
    sum_of_powers_polynomial,
)

F = Fraction


def akiyama_tanigawa(n):
    # independent algorithm for B_0..B_n; yields B_1 = +1/2, flip the sign
    row = [F(0)] * (n + 1)
    out = []
    for m in range(n + 1):
        row[m] = F(1, m + 1)
        for j in range(m, 0, -1):
            row[j - 1] = j * (row[j - 1] - row[j])
        out.append(row[0])
    if n >= 1:
        out[1] = -out[1]
    return out


class TestBernoulliNumbers:
    def test_first_values(self):
        b = bernoulli_numbers(6)
        assert b == [F(1), F(-1, 2), F(1, 6), F(0), F(-1, 30), F(0), F(1, 42)]

    def test_odd_values_vanish(self):
        b = bernoulli_numbers(99)
        assert all(b[n] == 0 for n in range(3, 100, 2))

    def test_denominator_of_b4(self):
        assert bernoulli_numbers(4)[4].denominator == 30

    def test_against_akiyama_tanigawa(self):
        assert bernoulli_numbers(60) == akiyama_tanigawa(60)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            bernoulli_numbers(-1)


class TestRationalPolynomial:
    def test_normalization(self):
        p = RationalPolynomial((F(1), F(2), F(0), F(0)))
        assert p.coefficients == (F(1), F(2))
        assert p.degree == 1
        zero = RationalPolynomial((F(0), F(0)))
        assert zero.is_zero and zero.degree == 0

    def test_arithmetic(self):
        p = RationalPolynomial((F(1), F(2)))
        q = RationalPolynomial((F(0), F(-2), F(3)))
        assert (p + q).coefficients == (F(1), F(0), F(3))
        assert (p - p).is_zero
        assert (p * q).coefficients == (F(0), F(-2), F(-1), F(6))
        assert (2 * p).coefficients == (F(2), F(4))
        assert (p / 2).coefficients == (F(1, 2), F(1))

    def test_evaluation_by_horner(self):
        p = RationalPolynomial((F(1), F(0), F(1)))  # 1 + x^2
        assert p(3) == 10
        assert p(F(1, 2)) == F(5, 4)

    def test_affine_substitution(self):
        p = RationalPolynomial((F(0), F(0), F(1)))  # x^2
        assert p.substitute_affine(1, -1).coefficients == (F(1), F(-2), F(1))


class TestBernoulliPolynomial:
    def test_small_cases(self):
        assert bernoulli_polynomial(1).coefficients == (F(-1, 2), F(1))
        assert bernoulli_polynomial(2).coefficients == (F(1, 6), F(-1), F(1))

    def test_monic_of_degree_n(self):
        for n in range(0, 51):
            p = bernoulli_polynomial(n)
            assert p.degree == n
            assert p.coefficients[-1] == 1

    def test_constant_term_is_bernoulli_number(self):
        numbers = bernoulli_numbers(30)
        for n in range(0, 31):
            assert bernoulli_polynomial(n).coefficients[0] == numbers[n]

    def test_reflection(self):
        for n in range(0, 51):
            p = bernoulli_polynomial(n)
            sign = 1 if n % 2 == 0 else -1
            assert p.substitute_affine(1, -1) == sign * p


class TestDerivative:
    def test_derivative_lowers_to_scaled_predecessor(self):
        assert derivative(bernoulli_polynomial(4)) == 4 * bernoulli_polynomial(3)
        for n in range(1, 30):
            assert derivative(bernoulli_polynomial(n)) == n * bernoulli_polynomial(n - 1)

    def test_zeroth_is_identity(self):
        p = bernoulli_polynomial(7)
        assert derivative(p, 0) is p

    def test_overdifferentiation_vanishes(self):
        assert derivative(bernoulli_polynomial(2), 3).is_zero

    def test_rejects_negative_order(self):
        with pytest.raises(ValueError):
            derivative(bernoulli_polynomial(2), -1)


class TestSumOfPowers:
    def test_small_cases(self):
        assert sum_of_powers_polynomial(0).coefficients == (F(0), F(1))
        s1 = sum_of_powers_polynomial(1)
        assert s1.coefficients == (F(0), F(-1, 2), F(1, 2))
        assert denominator_of(s1) == 2

    def test_direct_power_sums(self):
        for n in range(0, 11):
            poly = sum_of_powers_polynomial(n)
            for m in range(0, 21):
                assert poly(m) == sum(nu**n for nu in range(m))

    def test_s2_at_4(self):
        assert sum_of_powers_polynomial(2)(4) == 14

    def test_zero_constant_term(self):
        for n in range(0, 40):
            assert sum_of_powers_polynomial(n).coefficients[0] == 0


class TestDenominatorOf:
    def test_examples(self):
        assert denominator_of(RationalPolynomial((F(-1, 2), F(1)))) == 2
        assert denominator_of(RationalPolynomial((F(3), F(7), F(1)))) == 1
        assert denominator_of(RationalPolynomial((F(0),))) == 1

    def test_centered_bernoulli_denominators(self):
        expected = [1, 1, 2, 1, 6, 2, 6, 3, 10, 2]
        got = [
            denominator_of(drop_constant_term(bernoulli_polynomial(n)))
            for n in range(1, 11)
        ]
        assert got == expected
