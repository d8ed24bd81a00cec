"""Invariant suites cross-checking the product-formula modules against
independent routes: the rational-polynomial oracle, divisibility and parity
facts, and vectorized digit-sum recomputation.

Each family scans its index range in order and reports the first
counterexample. A fault hook can flip the verdict of one (family, index)
pair so that callers can exercise their failure paths honestly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from . import denom, oracle, scanner
from .arith import PrimeSieve, is_prime, shared_sieve

__all__ = ["FAMILIES", "FamilyResult", "run_verification"]

FAMILIES = (
    "decomposition",
    "triple-product",
    "dd-odd-iff-power-of-two",
    "composite-radical-divides",
    "odd-index-lcm",
    "plus-divides-coprime",
    "rad-of-power-sum-denom",
    "db-even",
    "coprime-parity",
    "coprime-one-implies-prime",
    "derivative-small-primes",
    "set-nesting",
    "floor-digit-equivalence",
    "lambda-prime-bound",
    "oracle-equivalence",
    "oracle-reflection",
    "oracle-power-sums",
)


@dataclass(frozen=True)
class FamilyResult:
    family: str
    passed: bool
    checked: int
    witness: int | None


@dataclass
class _Tables:
    """Per-index prime supports for every n up to limit + 1."""

    limit: int
    qualifying: list[tuple[int, ...]]
    minus: list[tuple[int, ...]]
    plus: list[tuple[int, ...]]
    shared: list[tuple[int, ...]]
    coprime: list[tuple[int, ...]]
    complement: list[tuple[int, ...]]
    rad_primes: list[tuple[int, ...]]
    rad: list[int]
    dd: list[int]
    dn: list[int]
    db: list[int]


def _prod(primes: Iterable[int]) -> int:
    return math.prod(primes)


def _build_tables(limit: int, sieve: PrimeSieve) -> _Tables:
    top = limit + 1
    rad_lists: list[list[int]] = [[] for _ in range(top + 1)]
    for p in sieve.primes_in(2, top):
        for m in range(p, top + 1, p):
            rad_lists[m].append(p)

    qualifying = [()] * (top + 1)
    minus = [()] * (top + 1)
    plus = [()] * (top + 1)
    shared = [()] * (top + 1)
    coprime = [()] * (top + 1)
    complement = [()] * (top + 1)
    rad_primes = [()] * (top + 1)
    rad = [1] * (top + 1)
    dd = [1] * (top + 1)
    dn = [1] * (top + 1)
    db = [1] * (top + 1)

    for n in range(1, top + 1):
        qual = denom.qualifying_primes(n, sieve)
        qualifying[n] = qual
        minus[n] = tuple(p for p in qual if p * p < n)
        plus[n] = tuple(p for p in qual if p * p > n)
        shared[n] = tuple(p for p in qual if n % p == 0)
        coprime[n] = tuple(p for p in qual if n % p)
        rp = tuple(rad_lists[n])
        rad_primes[n] = rp
        shared_set = set(shared[n])
        complement[n] = tuple(p for p in rp if p not in shared_set)
        rad[n] = _prod(rp)
        dd[n] = _prod(qual)
        if n <= limit:
            dn[n] = denom.dn(n).value
    for n in range(1, limit + 1):
        db[n] = _prod(coprime[n + 1]) * rad[n + 1]
    return _Tables(
        limit=limit,
        qualifying=qualifying,
        minus=minus,
        plus=plus,
        shared=shared,
        coprime=coprime,
        complement=complement,
        rad_primes=rad_primes,
        rad=rad,
        dd=dd,
        dn=dn,
        db=db,
    )


def _scan_indices(
    family: str,
    indices: Iterable[int],
    predicate: Callable[[int], bool],
    fault: tuple[str, int] | None,
) -> FamilyResult:
    checked = 0
    for n in indices:
        checked += 1
        ok = predicate(n)
        if fault is not None and fault == (family, n):
            ok = not ok
        if not ok:
            return FamilyResult(family, False, checked, n)
    return FamilyResult(family, True, checked, None)


def _check_decomposition(t: _Tables, n: int) -> bool:
    qual = set(t.qualifying[n])
    split_sqrt = set(t.minus[n]) | set(t.plus[n])
    split_div = set(t.shared[n]) | set(t.coprime[n])
    return (
        qual == split_sqrt
        and not (set(t.minus[n]) & set(t.plus[n]))
        and qual == split_div
        and not (set(t.shared[n]) & set(t.coprime[n]))
        and t.rad[n] == _prod(t.shared[n]) * _prod(t.complement[n])
    )


def _check_triple_product(t: _Tables, n: int) -> bool:
    m = n + 1
    triple = _prod(t.coprime[m]) * _prod(t.shared[m]) * _prod(t.complement[m])
    via_kernel = _prod(t.coprime[m]) * t.rad[m]
    via_complement = t.dd[m] * _prod(t.complement[m])
    via_lcm = t.dd[m] * t.rad[m] // math.gcd(t.dd[m], t.rad[m])
    via_dn = t.dd[n] * t.dn[n] // math.gcd(t.dd[n], t.dn[n])
    return t.db[n] == triple == via_kernel == via_complement == via_lcm == via_dn


def _check_floor_equivalence(p: int, limit: int) -> bool:
    hi = min(p * p - 1, limit)
    if hi < p:
        return True
    n = np.arange(p, hi + 1, dtype=np.int64)
    digit_heavy = (n // p + n % p) >= p
    floor_gap = (n - 1) // (p - 1) > n // p
    return bool(np.array_equal(digit_heavy, floor_gap))


def _check_lambda_bound(p: int, limit: int) -> bool:
    lo = 2 * p - 1
    if lo > limit:
        return True
    n = np.arange(lo, limit + 1, dtype=np.int64)
    if p * p > limit:
        s = n // p + n % p
    else:
        s = np.zeros_like(n)
        m = n.copy()
        while m.any():
            s += m % p
            m //= p
    bound = np.where(n % 2 == 1, (n + 1) // 2, (n + 1) // 3)
    return not bool(np.any((s >= p) & (p > bound)))


def _check_oracle_equivalence(n: int, sieve: PrimeSieve) -> bool:
    poly = oracle.bernoulli_polynomial(n)
    if oracle.denominator_of(poly) != denom.db(n, sieve).value:
        return False
    if oracle.denominator_of(oracle.drop_constant_term(poly)) != denom.dd(n, sieve).value:
        return False
    if oracle.bernoulli_numbers(n)[n].denominator != denom.dn(n).value:
        return False
    if oracle.denominator_of(oracle.sum_of_powers_polynomial(n)) != denom.ds(n, sieve):
        return False
    for k in (1, 2, 3):
        derived = oracle.derivative(poly, k)
        if oracle.denominator_of(derived) != denom.db_k(n, k, sieve).value:
            return False
    return True


def _check_power_sums(n: int) -> bool:
    poly = oracle.sum_of_powers_polynomial(n)
    total = 0
    for m in range(21):
        if poly(m) != total:
            return False
        total += m**n
    return True


def run_verification(
    limit: int = 1000,
    oracle_limit: int = 100,
    sieve: PrimeSieve | None = None,
    families: Sequence[str] | None = None,
    fault: tuple[str, int] | None = None,
) -> list[FamilyResult]:
    """Run the invariant families and return one result per family.

    limit bounds the product-formula checks; oracle_limit bounds the rational
    cross-checks (kept separate because those grow quadratically). families
    selects a subset by name, and fault=(family, n) flips one verdict.
    """
    if limit < 1:
        raise ValueError(f"limit must be positive, got {limit}")
    if oracle_limit < 1:
        raise ValueError(f"oracle limit must be positive, got {oracle_limit}")
    selected = tuple(families) if families is not None else FAMILIES
    for name in selected:
        if name not in FAMILIES:
            raise ValueError(f"unknown verification family {name!r}")
    if fault is not None and fault[0] not in FAMILIES:
        raise ValueError(f"unknown verification family {fault[0]!r}")

    sv = shared_sieve(max(limit + 2, 1 << 10)) if sieve is None else sieve
    needs_tables = any(
        name in selected
        for name in (
            "decomposition",
            "triple-product",
            "dd-odd-iff-power-of-two",
            "composite-radical-divides",
            "odd-index-lcm",
            "plus-divides-coprime",
            "rad-of-power-sum-denom",
            "db-even",
            "coprime-parity",
            "coprime-one-implies-prime",
        )
    )
    t = _build_tables(limit, sv) if needs_tables else None

    nesting_limit = min(limit, 1000)
    set_members: dict[int, set[int]] = {}

    def members_of(k: int) -> set[int]:
        if k not in set_members:
            set_members[k] = set(scanner.find_sets(k, nesting_limit, sv).members)
        return set(set_members[k])

    results = []
    for name in selected:
        if name == "decomposition":
            res = _scan_indices(name, range(1, limit + 1), lambda n: _check_decomposition(t, n), fault)
        elif name == "triple-product":
            res = _scan_indices(name, range(1, limit + 1), lambda n: _check_triple_product(t, n), fault)
        elif name == "dd-odd-iff-power-of-two":
            res = _scan_indices(
                name,
                range(1, limit + 1),
                lambda n: (t.dd[n] % 2 == 1) == (n & (n - 1) == 0),
                fault,
            )
        elif name == "composite-radical-divides":
            def composite_ok(n: int) -> bool:
                if is_prime(n + 1):
                    return True
                kernel = set(t.rad_primes[n + 1])
                return kernel <= set(t.qualifying[n]) and kernel <= set(t.coprime[n])

            res = _scan_indices(name, range(1, limit + 1), composite_ok, fault)
        elif name == "odd-index-lcm":
            def odd_lcm_ok(n: int) -> bool:
                if n % 2 == 0 or n < 3:
                    return True
                lcm_next = t.dd[n + 1] * t.rad[n + 1] // math.gcd(t.dd[n + 1], t.rad[n + 1])
                return t.dd[n] == lcm_next

            res = _scan_indices(name, range(1, limit + 1), odd_lcm_ok, fault)
        elif name == "plus-divides-coprime":
            res = _scan_indices(
                name,
                range(1, limit + 1),
                lambda n: set(t.plus[n]) <= set(t.coprime[n]),
                fault,
            )
        elif name == "rad-of-power-sum-denom":
            def rad_ds_ok(n: int) -> bool:
                support = set(t.rad_primes[n + 1]) | set(t.qualifying[n + 1])
                db_support = set(t.coprime[n + 1]) | set(t.rad_primes[n + 1])
                return support == db_support

            res = _scan_indices(name, range(1, limit + 1), rad_ds_ok, fault)
        elif name == "db-even":
            res = _scan_indices(name, range(1, limit + 1), lambda n: t.db[n] % 2 == 0, fault)
        elif name == "coprime-parity":
            def parity_ok(n: int) -> bool:
                even_part = 2 in t.coprime[n]
                if n == 1:
                    return t.coprime[n] == ()
                if n % 2 == 0:
                    return not even_part
                return even_part

            res = _scan_indices(name, range(1, limit + 1), parity_ok, fault)
        elif name == "coprime-one-implies-prime":
            res = _scan_indices(
                name,
                range(1, limit + 1),
                lambda n: bool(t.coprime[n]) or is_prime(n + 1),
                fault,
            )
        elif name == "derivative-small-primes":
            def small_prime_ok(n: int) -> bool:
                for k in range(1, 51):
                    value = denom.db_k(n, k, sv)
                    if any(p <= k for p in value.primes):
                        return False
                return True

            res = _scan_indices(name, range(1, 51), small_prime_ok, fault)
        elif name == "set-nesting":
            res = _scan_indices(name, (1, 2), lambda k: members_of(k) <= members_of(k + 1), fault)
        elif name == "floor-digit-equivalence":
            bound = min(limit, 10**4)
            res = _scan_indices(
                name,
                sv.primes_in(2, bound),
                lambda p: _check_floor_equivalence(p, bound),
                fault,
            )
        elif name == "lambda-prime-bound":
            res = _scan_indices(
                name,
                sv.primes_in(2, limit),
                lambda p: _check_lambda_bound(p, limit),
                fault,
            )
        elif name == "oracle-equivalence":
            res = _scan_indices(
                name,
                range(1, oracle_limit + 1),
                lambda n: _check_oracle_equivalence(n, sv),
                fault,
            )
        elif name == "oracle-reflection":
            def reflection_ok(n: int) -> bool:
                poly = oracle.bernoulli_polynomial(n)
                reflected = poly.substitute_affine(1, -1)
                sign = 1 if n % 2 == 0 else -1
                return reflected == sign * poly

            res = _scan_indices(name, range(0, min(oracle_limit, 50) + 1), reflection_ok, fault)
        else:  # oracle-power-sums
            res = _scan_indices(name, range(0, 11), _check_power_sums, fault)
        results.append(res)
    return results
