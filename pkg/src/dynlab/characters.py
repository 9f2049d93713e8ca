"""Dirichlet characters, hyperplane covers, and divisibility certificates.

A character of modulus n is an exponent vector against a fixed cyclic
decomposition of the unit group mod n; its values are tracked as exact
rational angles (numerators against the group exponent), never floats.

``covers(d, n)`` decides divisibility of the degree-d necklace polynomial by
x**n - 1 through hyperplane covers: a character is *satisfied* when some
prime p | d with p coprime to n has chi(p) = 1.  When d is divisible by
squares of primes dividing n, the bracket sum does not live in the unit
group alone; its non-unit residue classes split into strata indexed by
gcd-with-n, each isomorphic to a unit group of a divisor modulus.  A
character with no witness prime is then still satisfied if it kills every
stratum sum it applies to (an exact root-of-unity cancellation, checked by
reduction modulo a cyclotomic polynomial).  For d coprime to n the strata
collapse to the single class [1] and the criterion is the plain hyperplane
cover over the usable primes.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping

from .errors import DomainError, ResourceLimitError
from .cyclotomic import cyclotomic_poly
from .necklace import fast_xn1_divides
from .numtheory import euler_phi, factorize, squarefree_divisors
from .polycore import QQ, Polynomial

PHI_CAP = 10**6


@dataclass(frozen=True)
class UnitGroup:
    """Cyclic decomposition of the units mod n with a full dlog table.

    Generator orders are prime powers; their product is phi(n).  ``dlog``
    maps every unit residue to its exponent vector over the generators.
    """

    modulus: int
    generators: tuple[tuple[int, int], ...]
    dlog: Mapping[int, tuple[int, ...]]
    exponent: int

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(o for _, o in self.generators)

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    def units(self) -> tuple[int, ...]:
        return tuple(self.dlog.keys())

    def dlog_of(self, q: int) -> tuple[int, ...]:
        r = q % self.modulus
        try:
            return self.dlog[r]
        except KeyError:
            raise DomainError(f"{q} is not a unit mod {self.modulus}") from None


@dataclass(frozen=True)
class Character:
    """Exponent vector against the generator decomposition of a UnitGroup."""

    group: UnitGroup
    exponents: tuple[int, ...]

    def __post_init__(self):
        orders = self.group.orders
        if len(self.exponents) != len(orders) or any(
                not 0 <= e < o for e, o in zip(self.exponents, orders)):
            raise DomainError("character exponents out of range")

    def angle(self, q: int) -> Fraction:
        """chi(q) as an exact angle in [0, 1): chi(q) = e^(2*pi*i*angle)."""
        group = self.group
        num = self._angle_numerator(group.dlog_of(q))
        return Fraction(num, group.exponent)

    def _angle_numerator(self, dlog_vec: tuple[int, ...]) -> int:
        group = self.group
        L = group.exponent
        total = 0
        for e, x, o in zip(self.exponents, dlog_vec, group.orders):
            total += e * x * (L // o)
        return total % L

    def value_is_one(self, q: int) -> bool:
        return self._angle_numerator(self.group.dlog_of(q)) == 0

    def is_trivial(self) -> bool:
        return all(e == 0 for e in self.exponents)


def char_value_is_one(chi: Character, q: int) -> bool:
    """Membership of chi in the hyperplane of q: chi(q) = 1."""
    return chi.value_is_one(q)


def _primitive_root_mod_p(p: int) -> int:
    if p == 2:
        return 1
    phi = p - 1
    prime_parts = factorize(phi).primes
    g = 2
    while True:
        if all(pow(g, phi // r, p) != 1 for r in prime_parts):
            return g
        g += 1


def _primitive_root_mod_pk(p: int, k: int) -> int:
    g = _primitive_root_mod_p(p)
    if k == 1:
        return g
    if pow(g, p - 1, p * p) == 1:
        g += p
    return g


@lru_cache(maxsize=None)
def unit_group(n: int) -> UnitGroup:
    """Structure of the unit group mod n as prime-power cyclic factors.

    Odd prime powers contribute a primitive root, split into prime-power
    pieces; 2**k with k >= 3 contributes -1 and 5.  The dlog table is built
    by brute-force enumeration, which is why phi(n) is capped.
    """
    if n < 1:
        raise DomainError("modulus must be >= 1")
    phi = euler_phi(n)
    if phi > PHI_CAP:
        raise ResourceLimitError(
            f"phi({n}) = {phi} exceeds the dlog enumeration cap {PHI_CAP}")
    if n <= 2:
        unit = 0 if n == 1 else 1
        return UnitGroup(modulus=n, generators=(), dlog={unit: ()}, exponent=1)
    gens: list[tuple[int, int]] = []
    for p, k in factorize(n).factors:
        q = p**k
        rest = n // q
        inv = pow(rest, -1, q) if q > 1 else 0

        def lift(residue: int) -> int:
            # CRT: residue mod q, 1 mod n/q
            return (1 + rest * ((residue - 1) * inv % q)) % n

        if p == 2:
            if k == 2:
                gens.append((lift(3), 2))
            elif k >= 3:
                gens.append((lift(q - 1), 2))
                gens.append((lift(5), 2**(k - 2)))
        else:
            g = _primitive_root_mod_pk(p, k)
            order = (p - 1) * p**(k - 1)
            for r, a in factorize(order).factors:
                piece = r**a
                gens.append((lift(pow(g, order // piece, q)), piece))
    exponent = math.lcm(*(o for _, o in gens)) if gens else 1
    residues = [1]
    vectors = [tuple([0] * len(gens))]
    for idx, (g, order) in enumerate(gens):
        powers = [1]
        for _ in range(order - 1):
            powers.append(powers[-1] * g % n)
        new_residues = []
        new_vectors = []
        for r, v in zip(residues, vectors):
            for j, gp in enumerate(powers):
                new_residues.append(r * gp % n)
                vec = list(v)
                vec[idx] = j
                new_vectors.append(tuple(vec))
        residues, vectors = new_residues, new_vectors
    table = dict(zip(residues, vectors))
    if len(table) != phi:  # pragma: no cover - structural self-check
        raise AssertionError(f"unit group mod {n}: enumerated {len(table)} "
                             f"of {phi} residues")
    return UnitGroup(modulus=n, generators=tuple(gens), dlog=table,
                     exponent=exponent)


def characters(group: UnitGroup) -> Iterator[Character]:
    """All phi(n) characters, in lexicographic exponent order."""
    for exps in itertools.product(*(range(o) for o in group.orders)):
        yield Character(group, exps)


@dataclass(frozen=True)
class CoverCertificate:
    """Re-checkable record of a hyperplane-cover decision.

    One witness entry per character: a prime p with chi(p) = 1, or None.
    A character without a witness is harmless exactly when it annihilates
    every stratum sum applying to it; the first character that does not is
    recorded as ``failing_character``.
    """

    d: int
    n: int
    usable_primes: tuple[int, ...]
    covered: bool
    witnesses: tuple[tuple[tuple[int, ...], int | None], ...]
    failing_character: tuple[int, ...] | None

    def to_json_dict(self) -> dict:
        return {
            "d": str(self.d),
            "n": self.n,
            "usable_primes": list(self.usable_primes),
            "covered": self.covered,
            "witnesses": [{"chi": list(chi), "p": p}
                          for chi, p in self.witnesses],
            "failing_character": (None if self.failing_character is None
                                  else list(self.failing_character)),
        }


def _strata_sums(d: int, n: int) -> dict[int, dict[int, int]]:
    """Bracket sums of the n-entangled part of d, split by gcd strata.

    The factor D of d supported on primes dividing n contributes the sum of
    mu(e) * [D/e] over squarefree e | D.  Each index class [D/e mod n] has
    gcd g with n and identifies with the unit (D/e)/g of the modulus n/g;
    the map returned here sends g to the accumulated integer combination on
    those units (zero coefficients and empty strata dropped).
    """
    D = 1
    for p, k in factorize(d).factors:
        if n % p == 0:
            D *= p**k
    sums: dict[int, dict[int, int]] = {}
    for e, mu in squarefree_divisors(D):
        val = D // e
        g = math.gcd(val, n)
        w = (val // g) % (n // g)
        bucket = sums.setdefault(g, {})
        bucket[w] = bucket.get(w, 0) + mu
    for g in list(sums):
        sums[g] = {w: c for w, c in sums[g].items() if c}
        if not sums[g]:
            del sums[g]
    return sums


def _lift_unit(w: int, m: int, n: int) -> int:
    """Some unit mod n congruent to the unit w mod m (m divides n)."""
    if m == 1:
        return 1 % n
    for t in range(n // m):
        u = w + t * m
        if math.gcd(u, n) == 1:
            return u % n
    raise AssertionError(f"no unit lift of {w} from mod {m} to mod {n}")


def _char_kills_sum(chi: Character, entries: dict[int, int],
                    m: int) -> bool:
    """Exact test of sum(coeff * chi(lift(w))) = 0 over the stratum entries.

    The values are roots of unity of order dividing the group exponent L;
    the sum is reduced as an integer polynomial modulo the Lth cyclotomic.
    """
    group = chi.group
    L = group.exponent
    acc = [0] * L
    for w, coeff in entries.items():
        u = _lift_unit(w, m, group.modulus)
        acc[chi._angle_numerator(group.dlog_of(u))] += coeff
    poly = Polynomial(QQ, acc)
    if poly.is_zero:
        return True
    return (poly % cyclotomic_poly(L)).is_zero


def covers(d: int, n: int) -> CoverCertificate:
    """Decide x**n - 1 | M_d by hyperplane covers in the character group.

    The ``covered`` verdict always matches ``fast_xn1_divides(d, n)``; the
    certificate carries one witness (or None) per character and is
    independently re-checkable.
    """
    if d < 1 or n < 1:
        raise DomainError("covers needs d, n >= 1")
    fact = factorize(d)
    usable = tuple(p for p in fact.primes if n % p != 0)
    group = unit_group(n)
    strata = _strata_sums(d, n)
    # kernel of reduction U_n -> U_m per stratum, for factor-through tests
    kernels = {}
    for g in strata:
        m = n // g
        kernels[g] = tuple(u for u in group.dlog if u % m == 1 % m)
    usable_dlogs = [(p, group.dlog_of(p)) for p in usable]
    witnesses: list[tuple[tuple[int, ...], int | None]] = []
    failing: tuple[int, ...] | None = None
    for chi in characters(group):
        witness = None
        for p, vec in usable_dlogs:
            if chi._angle_numerator(vec) == 0:
                witness = p
                break
        witnesses.append((chi.exponents, witness))
        if witness is not None or failing is not None:
            continue
        for g, entries in strata.items():
            m = n // g
            if any(chi._angle_numerator(group.dlog_of(u)) != 0
                   for u in kernels[g]):
                continue  # chi does not factor through modulus m
            if not _char_kills_sum(chi, entries, m):
                failing = chi.exponents
                break
    return CoverCertificate(
        d=d, n=n, usable_primes=usable, covered=failing is None,
        witnesses=tuple(witnesses), failing_character=failing)


def hyperplane_forms(d: int, n: int) -> list[tuple[int, tuple[int, ...]]]:
    """The linear form cutting out each usable prime's hyperplane.

    Pairs (p, coefficients): a character with exponent vector e lies in the
    hyperplane of p exactly when sum(e_i * c_i / order_i) is an integer.
    The coefficients are the dlog of p over the group generators, which is
    the line-arrangement data behind a cover certificate (rendering is up
    to the caller).
    """
    group = unit_group(n)
    return [(p, group.dlog_of(p))
            for p in factorize(d).primes if n % p != 0]


def equivalence_sweep(d_max: int, n_max: int) -> list[tuple[int, int]]:
    """Every (d, n) on the grid where the cover and necklace criteria differ.

    Both directions of the equivalence say this is empty; the sweep is the
    executable form of that claim.
    """
    if d_max < 1 or n_max < 1:
        raise DomainError("sweep bounds must be >= 1")
    disagreements = []
    for d in range(1, d_max + 1):
        for n in range(1, n_max + 1):
            if covers(d, n).covered != fast_xn1_divides(d, n):
                disagreements.append((d, n))
    return disagreements
