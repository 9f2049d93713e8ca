"""Elementary multiplicative number theory on machine-scale integers.

Everything here is exact and deterministic.  Inputs are capped at 128 bits,
which is far beyond the sizes this library meets in practice (the largest
interesting constant is 12 decimal digits) but keeps the factoring strategy
honest: trial division by primes below 10**6 followed by Brent's variant of
Pollard rho with a fixed iteration schedule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache, reduce

from .errors import DomainError

INPUT_BIT_CAP = 128

_TRIAL_LIMIT = 10**6

# Strong-pseudoprime bases: the first 13 primes are a proven witness set below
# 3.3 * 10**24 (Sorenson & Webster); the extra primes cover the remaining
# admissible range deterministically with no known counterexample.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41,
             43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101)


def _check_positive(n: int, what: str = "argument") -> None:
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"{what} must be a positive integer, got {n!r}")
    if n.bit_length() > INPUT_BIT_CAP:
        raise DomainError(f"{what} exceeds the {INPUT_BIT_CAP}-bit cap")


@dataclass(frozen=True)
class Factorization:
    """A positive integer together with its canonical prime factorization.

    ``factors`` is a tuple of (prime, exponent) pairs with strictly
    increasing primes and exponents >= 1; their product equals ``value``.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        prod = 1
        prev = 1
        for p, k in self.factors:
            if k < 1:
                raise DomainError(f"exponent {k} < 1 in factorization")
            if p <= prev:
                raise DomainError("primes must be strictly increasing")
            if not is_prime(p):
                raise DomainError(f"{p} is not prime")
            prev = p
            prod *= p**k
        if prod != self.value:
            raise DomainError(
                f"factor product {prod} does not equal value {self.value}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test for n below 2**128."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    sieve = bytearray([1]) * _TRIAL_LIMIT
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(_TRIAL_LIMIT) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
    return tuple(i for i in range(_TRIAL_LIMIT) if sieve[i])


def _brent_rho(n: int) -> int:
    """Find a nontrivial factor of an odd composite n with no small factors.

    Brent's cycle-finding variant of Pollard rho.  The constant schedule
    (c = 1, 2, 3, ...) makes the search deterministic.
    """
    if is_prime(n):
        return n
    for c in range(1, 1000):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to factor {n}")  # pragma: no cover


@lru_cache(maxsize=65536)
def factorize(n: int) -> Factorization:
    """Canonical prime factorization of a positive integer."""
    _check_positive(n, "factorize() argument")
    remaining = n
    counts: dict[int, int] = {}
    for p in _small_primes():
        if p * p > remaining:
            break
        while remaining % p == 0:
            counts[p] = counts.get(p, 0) + 1
            remaining //= p
    stack = [remaining] if remaining > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            counts[m] = counts.get(m, 0) + 1
            continue
        g = _brent_rho(m)
        stack.extend((g, m // g))
    factors = tuple(sorted(counts.items()))
    return Factorization(value=n, factors=factors)


def mobius(n: int) -> int:
    """Moebius function: 0 on non-squarefree n, else (-1)**(number of primes)."""
    _check_positive(n, "mobius() argument")
    fact = factorize(n)
    if any(k > 1 for _, k in fact.factors):
        return 0
    return -1 if len(fact.factors) % 2 else 1


def core_and_cocore(d: int) -> tuple[int, int]:
    """Largest squarefree factor of d and the complementary factor d/core."""
    _check_positive(d, "core_and_cocore() argument")
    core = reduce(lambda acc, p: acc * p, factorize(d).primes, 1)
    return core, d // core


def divisors(n: int) -> list[int]:
    """All positive divisors of n in ascending order."""
    _check_positive(n, "divisors() argument")
    divs = [1]
    for p, k in factorize(n).factors:
        divs = [d * p**i for d in divs for i in range(k + 1)]
    return sorted(divs)


def squarefree_divisors(n: int) -> list[tuple[int, int]]:
    """Pairs (e, mobius(e)) over the squarefree divisors e of n, ascending."""
    _check_positive(n, "squarefree_divisors() argument")
    pairs = [(1, 1)]
    for p in factorize(n).primes:
        pairs += [(e * p, -mu) for e, mu in pairs]
    return sorted(pairs)


def euler_phi(n: int) -> int:
    """Order of the multiplicative group of integers modulo n."""
    _check_positive(n, "euler_phi() argument")
    value = n
    for p in factorize(n).primes:
        value = value // p * (p - 1)
    return value
