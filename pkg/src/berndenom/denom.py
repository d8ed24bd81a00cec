"""Denominator families of Bernoulli polynomials, computed purely from prime
and digit-sum conditions; no rational arithmetic appears on this path.

The central object is the squarefree product over primes p whose base-p digit
sum of n reaches p. Splitting that product by the size of p relative to
sqrt(n), or by whether p divides n, yields every family below:

* ``dd(n)``   denominator of B_n(x) - B_n            (cf. OEIS A195441)
* ``dn(n)``   denominator of the number B_n           (cf. OEIS A027642)
* ``db(n)``   denominator of B_n(x)                   (cf. OEIS A144845)
* ``ds(n)``   denominator of the power-sum polynomial (cf. OEIS A064538)
* ``db_k(n, k)``  denominator of the k-th derivative of B_n(x)

All values except ds are squarefree and carried as SquarefreeProduct.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .arith import (
    PrimeSieve,
    SieveSizeError,
    SquarefreeProduct,
    digit_sum,
    falling_factorial,
    floor_condition,
    is_prime,
    lambda_prime_bound,
    radical,
    shared_sieve,
)

__all__ = [
    "DenomProfile",
    "db",
    "db_k",
    "dd",
    "dd_split_divisibility",
    "dd_split_sqrt",
    "dn",
    "ds",
    "omega_dd_plus",
    "profile",
    "qualifying_primes",
]


def _needed_sieve(n: int, sieve: PrimeSieve | None) -> PrimeSieve:
    bound = lambda_prime_bound(n)
    if sieve is None:
        return shared_sieve(max(bound, 2))
    if sieve.limit < bound:
        raise SieveSizeError(
            f"sieve holds primes up to {sieve.limit}, but n={n} needs primes up to {bound}"
        )
    return sieve


def qualifying_primes(n: int, sieve: PrimeSieve | None = None) -> tuple[int, ...]:
    """Ascending primes p with digit_sum(n, p) >= p.

    Only p <= lambda_prime_bound(n) can qualify. Above sqrt(n) the base-p
    expansion has two digits, so the test reduces to n//p + n%p >= p.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    sv = _needed_sieve(n, sieve)
    out = []
    for p in sv.primes_in(2, lambda_prime_bound(n)):
        if p * p > n:
            if n // p + n % p >= p:
                out.append(p)
        elif digit_sum(n, p) >= p:
            out.append(p)
    return tuple(out)


def dd(n: int, sieve: PrimeSieve | None = None) -> SquarefreeProduct:
    """Denominator of B_n(x) - B_n: the full digit-sum prime product."""
    return SquarefreeProduct.from_known_primes(qualifying_primes(n, sieve))


def dd_split_sqrt(
    n: int, sieve: PrimeSieve | None = None
) -> tuple[SquarefreeProduct, SquarefreeProduct]:
    """Split dd(n) into the sub-products below and above sqrt(n).

    A prime exactly equal to sqrt(n) never qualifies (its digit sum is 1),
    so the two parts multiply back to dd(n).
    """
    below = []
    above = []
    for p in qualifying_primes(n, sieve):
        (above if p * p > n else below).append(p)
    return (
        SquarefreeProduct.from_known_primes(below),
        SquarefreeProduct.from_known_primes(above),
    )


def dd_split_divisibility(
    n: int, sieve: PrimeSieve | None = None
) -> tuple[SquarefreeProduct, SquarefreeProduct, SquarefreeProduct]:
    """Split by divisibility: (shared, coprime, complement).

    shared holds qualifying primes dividing n, coprime the qualifying primes
    not dividing n, and complement the primes of n that fail the digit test;
    shared * complement is the squarefree kernel of n.
    """
    shared = []
    coprime = []
    for p in qualifying_primes(n, sieve):
        (shared if n % p == 0 else coprime).append(p)
    shared_set = set(shared)
    complement = tuple(p for p in radical(n).primes if p not in shared_set)
    return (
        SquarefreeProduct.from_known_primes(shared),
        SquarefreeProduct.from_known_primes(coprime),
        SquarefreeProduct.from_known_primes(complement),
    )


def _divisors(n: int) -> list[int]:
    small = []
    large = []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def dn(n: int) -> SquarefreeProduct:
    """Denominator of the Bernoulli number B_n.

    Even n follows von Staudt-Clausen: the product of primes p with p-1
    dividing n. B_1 = -1/2 gives dn(1) = 2, and B_n = 0 for odd n >= 3
    makes those denominators 1.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n == 1:
        return SquarefreeProduct((2,), 2)
    if n % 2:
        return SquarefreeProduct.one()
    ps = sorted(d + 1 for d in _divisors(n) if is_prime(d + 1))
    return SquarefreeProduct.from_known_primes(ps)


def db(n: int, sieve: PrimeSieve | None = None) -> SquarefreeProduct:
    """Denominator of B_n(x), via the coprime part and kernel at index n+1."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n == 0:
        return SquarefreeProduct.one()
    _, coprime, _ = dd_split_divisibility(n + 1, sieve)
    return coprime * radical(n + 1)


def ds(n: int, sieve: PrimeSieve | None = None) -> int:
    """Denominator of the power-sum polynomial: (n+1) * dd(n+1), not squarefree."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return (n + 1) * dd(n + 1, sieve).value


def db_k(n: int, k: int, sieve: PrimeSieve | None = None) -> SquarefreeProduct:
    """Denominator of the k-th derivative of B_n(x).

    For n <= k the derivative is constant or zero, hence integral. Otherwise
    it equals (n)_k * B_{n-k}(x) up to lower derivatives, and the surviving
    denominator is the part of the coprime product at n-k+1 whose primes do
    not divide the falling factorial (n)_{k-1}.
    """
    if n < 1 or k < 1:
        raise ValueError(f"n and k must be positive, got ({n}, {k})")
    if n <= k:
        return SquarefreeProduct.one()
    _, coprime, _ = dd_split_divisibility(n - k + 1, sieve)
    ff = falling_factorial(n, k - 1)
    return SquarefreeProduct.from_known_primes(p for p in coprime.primes if ff % p)


def omega_dd_plus(n: int, sieve: PrimeSieve | None = None) -> int:
    """Number of primes above sqrt(n) in dd(n), counted by the floor test."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    sv = _needed_sieve(n, sieve)
    count = 0
    for p in sv.primes_in(max(isqrt(n), 2), lambda_prime_bound(n)):
        # p*p == n passes the floor test spuriously; rule it out first.
        if p * p > n and floor_condition(n, p):
            count += 1
    return count


@dataclass(frozen=True)
class DenomProfile:
    """Every denominator quantity attached to one index n."""

    n: int
    dd: SquarefreeProduct
    dd_minus: SquarefreeProduct
    dd_plus: SquarefreeProduct
    dd_shared: SquarefreeProduct
    dd_coprime: SquarefreeProduct
    dd_complement: SquarefreeProduct
    dn: SquarefreeProduct
    db: SquarefreeProduct
    ds: int
    rad_n: SquarefreeProduct
    rad_n1: SquarefreeProduct
    omega_plus: int

    def validate(self) -> None:
        """Check the decomposition identities tying the fields together."""
        ok = (
            self.dd.value == self.dd_minus.value * self.dd_plus.value
            and self.dd.value == self.dd_shared.value * self.dd_coprime.value
            and self.rad_n.value == self.dd_shared.value * self.dd_complement.value
            and self.omega_plus == self.dd_plus.omega
            and self.omega_plus * self.omega_plus < self.n
            and self.db.value == self.dd.lcm(self.dn).value
        )
        if not ok:
            raise ValueError(f"inconsistent denominator profile at n={self.n}")


def profile(n: int, sieve: PrimeSieve | None = None) -> DenomProfile:
    """Assemble the full denominator profile for one index, validated."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    qual = qualifying_primes(n, sieve)
    minus = [p for p in qual if p * p < n]
    plus = [p for p in qual if p * p > n]
    shared = [p for p in qual if n % p == 0]
    coprime = [p for p in qual if n % p]
    rad_n = radical(n)
    shared_set = set(shared)
    complement = [p for p in rad_n.primes if p not in shared_set]

    qual_next = qualifying_primes(n + 1, sieve)
    coprime_next = SquarefreeProduct.from_known_primes(
        p for p in qual_next if (n + 1) % p
    )
    rad_n1 = radical(n + 1)

    prof = DenomProfile(
        n=n,
        dd=SquarefreeProduct.from_known_primes(qual),
        dd_minus=SquarefreeProduct.from_known_primes(minus),
        dd_plus=SquarefreeProduct.from_known_primes(plus),
        dd_shared=SquarefreeProduct.from_known_primes(shared),
        dd_coprime=SquarefreeProduct.from_known_primes(coprime),
        dd_complement=SquarefreeProduct.from_known_primes(complement),
        dn=dn(n),
        db=coprime_next * rad_n1,
        ds=(n + 1) * SquarefreeProduct.from_known_primes(qual_next).value,
        rad_n=rad_n,
        rad_n1=rad_n1,
        omega_plus=len(plus),
    )
    prof.validate()
    return prof
