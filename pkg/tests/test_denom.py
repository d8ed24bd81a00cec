import math

import pytest

from berndenom import oracle
from berndenom.arith import SieveSizeError, is_prime, radical, sieve
from berndenom.denom import (
    db,
    db_k,
    dd,
    dd_split_divisibility,
    dd_split_sqrt,
    dn,
    ds,
    omega_dd_plus,
    profile,
    qualifying_primes,
)

# reference values for n = 1..10 (ds starts at n = 0)
DD_FIRST = [1, 1, 2, 1, 6, 2, 6, 3, 10, 2]
DN_FIRST = [2, 6, 1, 30, 1, 42, 1, 30, 1, 66]
DB_FIRST = [2, 6, 2, 30, 6, 42, 6, 30, 10, 66]
DS_FIRST = [1, 2, 6, 4, 30, 12, 42, 24, 90, 20]

INTEGRAL_DERIVATIVE_SET = (1, 2, 4, 6, 10, 12, 28, 30, 36, 60)


class TestDD:
    def test_first_ten(self):
        assert [dd(n).value for n in range(1, 11)] == DD_FIRST

    def test_n_twelve(self):
        assert dd(12).value == 2

    def test_odd_exactly_at_powers_of_two(self, sieve_20k):
        for n in range(1, 4097):
            odd = dd(n, sieve_20k).value % 2 == 1
            assert odd == (n & (n - 1) == 0)

    def test_matches_oracle_for_small_n(self, sieve_20k):
        for n in range(1, 41):
            expected = oracle.denominator_of(
                oracle.drop_constant_term(oracle.bernoulli_polynomial(n))
            )
            assert dd(n, sieve_20k).value == expected

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            dd(0)

    def test_insufficient_sieve(self):
        with pytest.raises(SieveSizeError):
            dd(1000, sieve(5))


class TestSplits:
    def test_sqrt_split_examples(self):
        assert tuple(part.value for part in dd_split_sqrt(7)) == (2, 3)
        assert tuple(part.value for part in dd_split_sqrt(9)) == (2, 5)
        assert tuple(part.value for part in dd_split_sqrt(4)) == (1, 1)

    def test_divisibility_split_examples(self):
        assert tuple(p.value for p in dd_split_divisibility(3)) == (1, 2, 3)
        assert tuple(p.value for p in dd_split_divisibility(12)) == (2, 1, 3)
        assert tuple(p.value for p in dd_split_divisibility(7)) == (1, 6, 7)

    def test_splits_recombine(self, sieve_20k):
        for n in range(1, 801):
            whole = dd(n, sieve_20k)
            below, above = dd_split_sqrt(n, sieve_20k)
            shared, coprime, complement = dd_split_divisibility(n, sieve_20k)
            assert (below * above).value == whole.value
            assert (shared * coprime).value == whole.value
            assert (shared * complement).value == radical(n).value


class TestDN:
    def test_first_ten(self):
        assert [dn(n).value for n in range(1, 11)] == DN_FIRST

    def test_examples(self):
        assert dn(4).value == 30
        assert dn(9).value == 1
        assert dn(1).value == 2

    def test_matches_bernoulli_number_denominators(self):
        numbers = oracle.bernoulli_numbers(60)
        for n in range(1, 61):
            assert dn(n).value == numbers[n].denominator


class TestDB:
    def test_first_ten(self):
        assert [db(n).value for n in range(1, 11)] == DB_FIRST

    def test_boundary_cases(self):
        assert db(0).value == 1
        assert db(9).value == 10

    def test_equivalent_forms(self, sieve_20k):
        for n in range(1, 801):
            value = db(n, sieve_20k).value
            whole_next = dd(n + 1, sieve_20k)
            _, _, complement_next = dd_split_divisibility(n + 1, sieve_20k)
            kernel_next = radical(n + 1)
            assert value == whole_next.value * complement_next.value
            assert value == whole_next.lcm(kernel_next).value
            assert value == dd(n, sieve_20k).lcm(dn(n)).value

    def test_matches_oracle_for_small_n(self, sieve_20k):
        for n in range(0, 41):
            expected = oracle.denominator_of(oracle.bernoulli_polynomial(n))
            assert db(n, sieve_20k).value == expected


class TestDS:
    def test_first_ten(self):
        assert [ds(n) for n in range(0, 10)] == DS_FIRST
        assert ds(3) == 4

    def test_kernel_of_ds_is_db(self, sieve_20k):
        for n in range(1, 301):
            assert radical(ds(n, sieve_20k)).value == db(n, sieve_20k).value

    def test_matches_oracle_for_small_n(self):
        for n in range(0, 41):
            expected = oracle.denominator_of(oracle.sum_of_powers_polynomial(n))
            assert ds(n) == expected


class TestDBK:
    def test_examples(self):
        assert db_k(8, 2).value == 3
        assert db_k(2, 3).value == 1
        assert db_k(5, 5).value == 1

    def test_first_derivative_is_coprime_part(self, sieve_20k):
        ones = []
        for n in range(1, 301):
            _, coprime, _ = dd_split_divisibility(n, sieve_20k)
            value = db_k(n, 1, sieve_20k)
            assert value.value == coprime.value
            if value.is_one:
                ones.append(n)
        assert tuple(ones) == INTEGRAL_DERIVATIVE_SET

    def test_all_three_forms_agree(self, sieve_20k):
        from berndenom.arith import falling_factorial

        for n in range(1, 41):
            for k in range(1, 41):
                value = db_k(n, k, sieve_20k).value
                if n <= k:
                    assert value == 1
                    continue
                db_prev = db(n - k, sieve_20k).value
                assert value == db_prev // math.gcd(db_prev, falling_factorial(n, k))
                ff = falling_factorial(n, k)
                explicit = math.prod(
                    p for p in qualifying_primes(n - k + 1, sieve_20k) if ff % p
                )
                assert value == explicit

    def test_small_primes_never_divide(self, sieve_20k):
        for n in range(1, 51):
            for k in range(1, 51):
                assert all(p > k for p in db_k(n, k, sieve_20k).primes)

    def test_matches_oracle_derivatives(self, sieve_20k):
        for n in range(1, 31):
            poly = oracle.bernoulli_polynomial(n)
            for k in range(1, 5):
                expected = oracle.denominator_of(oracle.derivative(poly, k))
                assert db_k(n, k, sieve_20k).value == expected

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            db_k(0, 1)
        with pytest.raises(ValueError):
            db_k(1, 0)


class TestOmegaPlus:
    def test_examples(self):
        assert omega_dd_plus(7) == 1
        assert omega_dd_plus(4) == 0
        assert omega_dd_plus(9) == 1

    def test_counts_the_sqrt_split(self, sieve_20k):
        for n in range(1, 2001):
            _, above = dd_split_sqrt(n, sieve_20k)
            assert omega_dd_plus(n, sieve_20k) == above.omega


class TestProfile:
    def test_n5_fields(self):
        prof = profile(5)
        assert prof.dd.value == 6
        assert prof.dd_minus.value == 2
        assert prof.dd_plus.value == 3
        assert prof.dd_shared.value == 1
        assert prof.dd_coprime.value == 6
        assert prof.dd_complement.value == 5
        assert prof.dn.value == 1
        assert prof.db.value == 6
        assert prof.ds == 12
        assert prof.rad_n.value == 5
        assert prof.rad_n1.value == 6
        assert prof.omega_plus == 1

    def test_n8_is_in_rad_set(self):
        prof = profile(8)
        assert prof.dd.value == 3
        assert prof.rad_n1.value == 3
        assert prof.dd.value == prof.rad_n1.value

    def test_n1(self):
        prof = profile(1)
        assert prof.dd.value == 1
        assert prof.dn.value == 2
        assert prof.db.value == 2
        assert prof.omega_plus == 0

    def test_validate_holds_over_range(self, sieve_20k):
        for n in range(1, 301):
            profile(n, sieve_20k)  # validate() runs inside

    def test_validate_rejects_tampering(self):
        import dataclasses

        broken = dataclasses.replace(profile(5), omega_plus=2)
        with pytest.raises(ValueError):
            broken.validate()


def test_derivative_one_members_have_prime_successor(sieve_20k):
    for n in INTEGRAL_DERIVATIVE_SET:
        assert db_k(n, 1, sieve_20k).is_one
        assert is_prime(n + 1)
