"""Shared independent oracles for the test suite.

These deliberately avoid the library's own fast paths: the dense fold
oracle works on raw integer coefficient lists, and the Sylvester oracle
computes resultants as determinants.
"""

from fractions import Fraction

from dynlab.numtheory import squarefree_divisors


def dense_necklace_int_coeffs(d: int) -> list[int]:
    """Coefficients of d * M_d as a plain integer list, ascending."""
    coeffs = [0] * (d + 1)
    for e, mu in squarefree_divisors(d):
        coeffs[d // e] += mu
    return coeffs


def dense_fold_divisible(coeffs: list[int], n: int) -> bool:
    """Remainder of an integer polynomial modulo x**n - 1 is zero?

    Honest dense fold over every coefficient, no divisor-structure
    shortcuts: the slow side of the fast/slow agreement checks.
    """
    folded = [0] * n
    for k, c in enumerate(coeffs):
        folded[k % n] += c
    return all(v == 0 for v in folded)


def sylvester_resultant(p, q) -> Fraction:
    """Resultant as the Sylvester determinant, by fraction Gaussian elimination."""
    m, n = p.degree, q.degree
    size = m + n
    if size == 0:
        return Fraction(1)
    pc = [Fraction(c) for c in reversed(p.coeffs)]
    qc = [Fraction(c) for c in reversed(q.coeffs)]
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + pc + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + qc + [Fraction(0)] * (size - n - 1 - i))
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if rows[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, size):
            if rows[r][col]:
                factor = rows[r][col] * inv
                rows[r] = [rc - factor * cc
                           for rc, cc in zip(rows[r], rows[col])]
    return det
