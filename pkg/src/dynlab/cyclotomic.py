"""Cyclotomic polynomials and exhaustive cyclotomic-factor scans.

The scan peels x and every cyclotomic factor (with multiplicity) off a
rational polynomial and certifies that the remaining cofactor has no
further such factors.  Candidate indices k are bounded through the totient:
any cyclotomic factor of a degree-D polynomial has phi(k) <= D, and
phi(k) >= sqrt(k/2) caps k at 2*D**2.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .errors import DomainError
from .numtheory import divisors, euler_phi
from .polycore import QQ, Polynomial

_cache_lock = threading.Lock()
_cyclo_cache: dict[int, Polynomial] = {}

_totient_sieve: list[int] = [0, 1]


def cyclotomic_poly(n: int) -> Polynomial:
    """The monic minimal polynomial over Q of a primitive nth root of unity.

    Computed by exact division of x**n - 1 by the product of the lower
    cyclotomics, and memoized (the cache is lock-protected; readers never
    observe partially built entries).
    """
    if n < 1:
        raise DomainError("cyclotomic index must be >= 1")
    with _cache_lock:
        cached = _cyclo_cache.get(n)
    if cached is not None:
        return cached
    num = Polynomial.monomial(QQ, n) - 1
    den = Polynomial.one(QQ)
    for m in divisors(n):
        if m < n:
            den = den * cyclotomic_poly(m)
    result = num.div_exact(den)
    with _cache_lock:
        _cyclo_cache[n] = result
    return result


def xn1_divides(p: Polynomial, n: int) -> bool:
    """Does x**n - 1 divide p?  Exponent folding, no long division."""
    if n < 1:
        raise DomainError("xn1_divides needs n >= 1")
    if p.ring is not QQ:
        raise DomainError("xn1_divides expects a rational polynomial")
    folded = [QQ.zero] * n
    for k, c in enumerate(p.coeffs):
        folded[k % n] += c
    return all(not c for c in folded)


def _totients_up_to(limit: int) -> list[int]:
    """Grow-and-cache totient sieve; returns the sieve array (index = k)."""
    global _totient_sieve
    with _cache_lock:
        if len(_totient_sieve) > limit:
            return _totient_sieve
        size = max(limit + 1, 2 * len(_totient_sieve))
        sieve = list(range(size))
        for i in range(2, size):
            if sieve[i] == i:  # i prime
                for j in range(i, size, i):
                    sieve[j] -= sieve[j] // i
        _totient_sieve = sieve
        return sieve


def cyclotomic_candidates(max_phi: int) -> list[int]:
    """All k with phi(k) <= max_phi, ascending (k <= 2*max_phi**2)."""
    if max_phi < 1:
        return []
    bound = 2 * max_phi * max_phi
    if max_phi <= 1024:
        sieve = _totients_up_to(bound)
        return [k for k in range(1, bound + 1) if sieve[k] <= max_phi]
    return [k for k in range(1, bound + 1) if euler_phi(k) <= max_phi]


@dataclass(frozen=True)
class CycloFactorReport:
    """Outcome of a full cyclotomic-factor scan.

    input = x**x_multiplicity * prod of Phi_n**mult * cofactor holds exactly,
    and the cofactor is divisible by neither x nor any further cyclotomic.
    """

    input_degree: int
    x_multiplicity: int
    cyclo_indices: tuple[tuple[int, int], ...]
    cofactor_degree: int
    cofactor: Polynomial

    def to_json_dict(self) -> dict:
        return {
            "x_multiplicity": self.x_multiplicity,
            "cyclotomic": [{"n": n, "mult": m} for n, m in self.cyclo_indices],
            "cofactor_degree": self.cofactor_degree,
            "cofactor_coeffs": [QQ.format(c) for c in self.cofactor.coeffs],
        }


def cyclo_factor_scan(p: Polynomial) -> CycloFactorReport:
    """Extract the full x and cyclotomic content of a rational polynomial."""
    if p.ring is not QQ:
        raise DomainError("cyclo_factor_scan expects a rational polynomial")
    if p.is_zero:
        raise DomainError("cyclo_factor_scan of the zero polynomial")
    input_degree = p.degree
    x_mult = p.x_valuation
    cofactor = Polynomial(QQ, p.coeffs[x_mult:])
    found: list[tuple[int, int]] = []
    for k in cyclotomic_candidates(cofactor.degree):
        if cofactor.degree == 0:
            break
        if euler_phi(k) > cofactor.degree:
            continue
        phi_k = cyclotomic_poly(k)
        mult = 0
        quot, rem = divmod(cofactor, phi_k)
        while rem.is_zero:
            mult += 1
            cofactor = quot
            if cofactor.degree < phi_k.degree:
                break
            quot, rem = divmod(cofactor, phi_k)
        if mult:
            found.append((k, mult))
    return CycloFactorReport(
        input_degree=input_degree,
        x_multiplicity=x_mult,
        cyclo_indices=tuple(found),
        cofactor_degree=cofactor.degree,
        cofactor=cofactor,
    )
