"""Exact dense univariate polynomial arithmetic over pluggable coefficient rings.

Polynomials in ``x`` are coefficient sequences in ascending degree with a
nonzero leading coefficient (the zero polynomial is the empty sequence).
Three coefficient rings are supported:

* ``QQ`` -- the rationals, elements are ``fractions.Fraction``;
* ``PrimeField(p)`` -- integers modulo a prime, elements are ints in [0, p);
* ``QA`` -- rational-coefficient polynomials in a single parameter ``a``,
  elements are tuples of ``Fraction`` in ascending degree with no trailing
  zeros.  This is the ring Q[a], not the fraction field Q(a): divisions that
  would need fraction-field coefficients raise ``ExactDivisionError``.

All arithmetic is exact; floating point appears nowhere.  Exact division
failures carry the offending remainder because a nonzero remainder is
usually the interesting mathematical outcome, not an error condition.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError, ExactDivisionError


# ---------------------------------------------------------------------------
# arithmetic on Q[a] elements (tuples of Fraction, ascending, no trailing 0)

def _qa_strip(cs: list[Fraction]) -> tuple[Fraction, ...]:
    n = len(cs)
    while n and not cs[n - 1]:
        n -= 1
    return tuple(cs[:n])


def _qa_add(u: tuple, v: tuple) -> tuple:
    if len(u) < len(v):
        u, v = v, u
    out = list(u)
    for i, c in enumerate(v):
        out[i] += c
    return _qa_strip(out)


def _qa_neg(u: tuple) -> tuple:
    return tuple(-c for c in u)


def _qa_sub(u: tuple, v: tuple) -> tuple:
    return _qa_add(u, _qa_neg(v))


def _qa_mul(u: tuple, v: tuple) -> tuple:
    if not u or not v:
        return ()
    out = [Fraction(0)] * (len(u) + len(v) - 1)
    for i, ui in enumerate(u):
        if not ui:
            continue
        for j, vj in enumerate(v):
            out[i + j] += ui * vj
    return _qa_strip(out)


def _qa_divmod(u: tuple, v: tuple) -> tuple[tuple, tuple]:
    """Division in Q[a]; always exact stepwise since Q is a field."""
    if not v:
        raise ZeroDivisionError("division by the zero element of Q[a]")
    rem = list(u)
    dv = len(v) - 1
    lead = v[-1]
    quot = [Fraction(0)] * max(len(u) - dv, 0)
    while len(rem) - 1 >= dv and any(rem):
        while rem and not rem[-1]:
            rem.pop()
        if len(rem) - 1 < dv:
            break
        c = rem[-1] / lead
        k = len(rem) - 1 - dv
        quot[k] = c
        for i, vi in enumerate(v):
            rem[k + i] -= c * vi
        rem.pop()
    return _qa_strip(quot), _qa_strip(rem)


def _qa_exact_div(u: tuple, v: tuple) -> tuple:
    q, r = _qa_divmod(u, v)
    if r:
        raise ExactDivisionError("inexact coefficient division in Q[a]")
    return q


def _qa_eval(u: tuple, value: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(u):
        acc = acc * value + c
    return acc


# ---------------------------------------------------------------------------
# coefficient rings

class CoefficientRing:
    """Protocol-style base for the three supported coefficient rings."""

    characteristic: int = 0
    is_field: bool = False
    tag: str = "?"

    def coerce(self, value):
        raise NotImplementedError

    def add(self, u, v):
        raise NotImplementedError

    def sub(self, u, v):
        raise NotImplementedError

    def mul(self, u, v):
        raise NotImplementedError

    def neg(self, u):
        raise NotImplementedError

    def is_zero(self, u) -> bool:
        raise NotImplementedError

    def exact_div(self, u, v):
        raise NotImplementedError

    def format(self, u) -> str:
        raise NotImplementedError


class Rationals(CoefficientRing):
    is_field = True
    tag = "Q"

    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, value) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        raise DomainError(f"cannot interpret {value!r} as a rational")

    def add(self, u, v):
        return u + v

    def sub(self, u, v):
        return u - v

    def mul(self, u, v):
        return u * v

    def neg(self, u):
        return -u

    def is_zero(self, u) -> bool:
        return not u

    def exact_div(self, u, v):
        return u / v

    def format(self, u) -> str:
        return str(u)

    def __repr__(self) -> str:
        return "QQ"


class PrimeField(CoefficientRing):
    is_field = True
    tag = "Fp"

    def __init__(self, p: int):
        from .numtheory import is_prime

        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p

    def coerce(self, value) -> int:
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise DomainError(
                    f"denominator of {value} is not invertible mod {self.p}")
            return value.numerator * pow(den, -1, self.p) % self.p
        if isinstance(value, str):
            return self.coerce(Fraction(value))
        raise DomainError(f"cannot interpret {value!r} mod {self.p}")

    def add(self, u, v):
        return (u + v) % self.p

    def sub(self, u, v):
        return (u - v) % self.p

    def mul(self, u, v):
        return u * v % self.p

    def neg(self, u):
        return -u % self.p

    def is_zero(self, u) -> bool:
        return u % self.p == 0

    def exact_div(self, u, v):
        return u * pow(v, -1, self.p) % self.p

    def format(self, u) -> str:
        return str(u % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


class ParamRing(CoefficientRing):
    """Q[a]: polynomials in the parameter ``a`` with rational coefficients."""

    is_field = False
    tag = "Qa"

    zero = ()
    one = (Fraction(1),)

    #: the generator ``a`` as a ring element
    param = (Fraction(0), Fraction(1))

    def coerce(self, value) -> tuple:
        if isinstance(value, tuple):
            return _qa_strip([Fraction(c) for c in value])
        if isinstance(value, (int, Fraction)):
            c = Fraction(value)
            return (c,) if c else ()
        if isinstance(value, str):
            return _parse_qa_coefficient(value)
        raise DomainError(f"cannot interpret {value!r} as an element of Q[a]")

    def add(self, u, v):
        return _qa_add(u, v)

    def sub(self, u, v):
        return _qa_sub(u, v)

    def mul(self, u, v):
        return _qa_mul(u, v)

    def neg(self, u):
        return _qa_neg(u)

    def is_zero(self, u) -> bool:
        return not u

    def exact_div(self, u, v):
        return _qa_exact_div(u, v)

    def format(self, u) -> str:
        return _format_terms(u, "a", lambda c: str(c), parenthesize=False)

    def __repr__(self) -> str:
        return "QA"


QQ = Rationals()
QA = ParamRing()


# ---------------------------------------------------------------------------
# polynomials

class Polynomial:
    """Immutable dense univariate polynomial in ``x`` over a coefficient ring."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: CoefficientRing, coeffs: Iterable = ()):
        object.__setattr__(self, "ring", ring)
        cs = [ring.coerce(c) for c in coeffs]
        n = len(cs)
        while n and ring.is_zero(cs[n - 1]):
            n -= 1
        object.__setattr__(self, "coeffs", tuple(cs[:n]))

    def __setattr__(self, *_):
        raise AttributeError("Polynomial instances are immutable")

    # -- construction helpers

    @classmethod
    def zero(cls, ring: CoefficientRing) -> "Polynomial":
        return cls(ring, ())

    @classmethod
    def one(cls, ring: CoefficientRing) -> "Polynomial":
        return cls(ring, (1,))

    @classmethod
    def x(cls, ring: CoefficientRing) -> "Polynomial":
        return cls(ring, (0, 1))

    @classmethod
    def constant(cls, ring: CoefficientRing, c) -> "Polynomial":
        return cls(ring, (c,))

    @classmethod
    def monomial(cls, ring: CoefficientRing, degree: int, c=1) -> "Polynomial":
        return cls(ring, [0] * degree + [c])

    # -- structure

    @property
    def degree(self) -> int:
        """Degree, with the convention deg 0 = -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        if not self.coeffs:
            raise DomainError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int):
        """Coefficient of x**k (zero beyond the degree)."""
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.ring.coerce(0)

    @property
    def x_valuation(self) -> int:
        """Multiplicity of the root x = 0; raises on the zero polynomial."""
        if not self.coeffs:
            raise DomainError("the zero polynomial has no x-adic valuation")
        for i, c in enumerate(self.coeffs):
            if not self.ring.is_zero(c):
                return i
        raise AssertionError("unnormalized polynomial")  # pragma: no cover

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.ring.coerce(1)

    def _require_same_ring(self, other: "Polynomial") -> None:
        if self.ring != other.ring:
            raise DomainError(
                f"ring mismatch: {self.ring!r} vs {other.ring!r}")

    # -- ring operations

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def __add__(self, other):
        other = self._coerce_operand(other)
        ring = self.ring
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = ring.add(out[i], c)
        return _raw(ring, _strip(ring, out))

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        ring = self.ring
        return _raw(ring, tuple(ring.neg(c) for c in self.coeffs))

    def __sub__(self, other):
        return self.__add__(-self._coerce_operand(other))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        other = self._coerce_operand(other)
        return _raw(self.ring, _mul_coeffs(self.ring, self.coeffs, other.coeffs))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise DomainError("polynomial exponent must be a nonnegative int")
        result = Polynomial.one(self.ring)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        ring = self.ring
        c = ring.coerce(c)
        return _raw(ring, _strip(ring, [ring.mul(c, u) for u in self.coeffs]))

    def _coerce_operand(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._require_same_ring(other)
            return other
        return Polynomial.constant(self.ring, other)

    # -- evaluation and composition

    def evaluate(self, value):
        """Exact Horner evaluation at a ring element."""
        ring = self.ring
        v = ring.coerce(value)
        acc = ring.coerce(0)
        for c in reversed(self.coeffs):
            acc = ring.add(ring.mul(acc, v), c)
        return acc

    def compose(self, inner: "Polynomial") -> "Polynomial":
        """self(inner(x)), exact."""
        inner = self._coerce_operand(inner)
        acc = Polynomial.zero(self.ring)
        for c in reversed(self.coeffs):
            acc = acc * inner + Polynomial.constant(self.ring, c)
        return acc

    def iterate(self, k: int) -> "Polynomial":
        """k-fold self-composition; the 0th iterate is x."""
        if not isinstance(k, int) or k < 0:
            raise DomainError("iteration count must be a nonnegative int")
        acc = Polynomial.x(self.ring)
        for _ in range(k):
            acc = self.compose(acc)
        return acc

    def derivative(self) -> "Polynomial":
        ring = self.ring
        out = [ring.mul(ring.coerce(i), c)
               for i, c in enumerate(self.coeffs) if i > 0]
        return _raw(ring, _strip(ring, out))

    def specialize(self, value) -> "Polynomial":
        """Substitute a rational value for the parameter a (Q[a] -> Q)."""
        if self.ring is not QA:
            raise DomainError("specialize() applies to ParamRing polynomials")
        v = Fraction(value)
        return Polynomial(QQ, [_qa_eval(c, v) for c in self.coeffs])

    def lift_to_param_ring(self) -> "Polynomial":
        if self.ring is QA:
            return self
        if self.ring is not QQ:
            raise DomainError("only rational polynomials lift to Q[a]")
        return Polynomial(QA, [(c,) if c else () for c in self.coeffs])

    # -- division

    def __divmod__(self, den: "Polynomial"):
        den = self._coerce_operand(den)
        if den.is_zero:
            raise DomainError("polynomial division by zero")
        ring = self.ring
        if ring is QQ:
            q, r = _divmod_q(self.coeffs, den.coeffs)
        else:
            q, r = _divmod_generic(ring, self.coeffs, den.coeffs)
        return _raw(ring, q), _raw(ring, r)

    def __mod__(self, den: "Polynomial"):
        return divmod(self, den)[1]

    def __floordiv__(self, den: "Polynomial"):
        return divmod(self, den)[0]

    def div_exact(self, den: "Polynomial") -> "Polynomial":
        """Exact quotient; a nonzero remainder raises ExactDivisionError.

        The raised error carries the remainder: callers use it as a
        witness of non-divisibility.
        """
        quot, rem = divmod(self, den)
        if not rem.is_zero:
            raise ExactDivisionError(
                f"nonzero remainder of degree {rem.degree}", remainder=rem)
        return quot

    def divides(self, other: "Polynomial") -> bool:
        return (other % self).is_zero

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        ring = self.ring
        if not ring.is_field:
            raise DomainError("monic() requires field coefficients")
        inv_lc = ring.exact_div(ring.coerce(1), self.lc)
        return self.scale(inv_lc)

    # -- presentation

    def to_text(self) -> str:
        return _format_terms(self.coeffs, "x", self.ring.format,
                             parenthesize=self.ring is QA,
                             is_zero=self.ring.is_zero)

    def __repr__(self):
        return f"<{self.to_text()} over {self.ring!r}>"

    def to_json_dict(self) -> dict:
        out: dict = {"ring": self.ring.tag}
        if isinstance(self.ring, PrimeField):
            out["p"] = self.ring.p
        out["coeffs"] = [self.ring.format(c) for c in self.coeffs]
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "Polynomial":
        tag = data.get("ring")
        if tag == "Q":
            ring: CoefficientRing = QQ
        elif tag == "Qa":
            ring = QA
        elif tag == "Fp":
            ring = PrimeField(int(data["p"]))
        else:
            raise DomainError(f"unknown ring tag {tag!r}")
        return cls(ring, [ring.coerce(c) for c in data.get("coeffs", [])])


def _raw(ring: CoefficientRing, coeffs: tuple) -> Polynomial:
    """Wrap already-canonical coefficients without re-coercing them."""
    poly = Polynomial.__new__(Polynomial)
    object.__setattr__(poly, "ring", ring)
    object.__setattr__(poly, "coeffs", tuple(coeffs))
    return poly


def _strip(ring: CoefficientRing, cs: list) -> tuple:
    n = len(cs)
    while n and ring.is_zero(cs[n - 1]):
        n -= 1
    return tuple(cs[:n])


# ---------------------------------------------------------------------------
# multiplication kernels

def _mul_coeffs(ring: CoefficientRing, a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    if ring is QQ:
        return _mul_coeffs_q(a, b)
    if isinstance(ring, PrimeField):
        return _mul_coeffs_fp(a, b, ring.p)
    out = [ring.coerce(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ring.is_zero(ai):
            continue
        for j, bj in enumerate(b):
            out[i + j] = ring.add(out[i + j], ring.mul(ai, bj))
    return _strip(ring, out)


def _mul_coeffs_q(a: tuple, b: tuple) -> tuple:
    # Clear denominators once so the convolution runs on plain ints.
    da = math.lcm(*(c.denominator for c in a))
    db = math.lcm(*(c.denominator for c in b))
    ia = [int(c * da) for c in a]
    ib = [int(c * db) for c in b]
    out = [0] * (len(a) + len(b) - 1)
    if len(ia) < len(ib):
        ia, ib = ib, ia
    for j, bj in enumerate(ib):
        if not bj:
            continue
        for i, ai in enumerate(ia):
            if ai:
                out[i + j] += ai * bj
    den = da * db
    if den == 1:
        cs = [Fraction(c) for c in out]
    else:
        cs = [Fraction(c, den) for c in out]
    while cs and not cs[-1]:
        cs.pop()
    return tuple(cs)


def _mul_coeffs_fp(a: tuple, b: tuple, p: int) -> tuple:
    out = [0] * (len(a) + len(b) - 1)
    if len(a) < len(b):
        a, b = b, a
    for j, bj in enumerate(b):
        if not bj:
            continue
        for i, ai in enumerate(a):
            if ai:
                out[i + j] += ai * bj
    cs = [c % p for c in out]
    while cs and not cs[-1]:
        cs.pop()
    return tuple(cs)


# ---------------------------------------------------------------------------
# division kernels

def _divmod_q(num: tuple, den: tuple) -> tuple[tuple, tuple]:
    # Integer fast path: monic divisor with integer coefficients keeps the
    # whole computation in Z.
    if (den[-1] == 1
            and all(c.denominator == 1 for c in den)
            and all(c.denominator == 1 for c in num)):
        rem = [int(c) for c in num]
        d = [int(c) for c in den]
        dd = len(d) - 1
        if len(rem) - 1 < dd:
            return (), tuple(num)
        quot = [0] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c:
                quot[k - dd] = c
                for i in range(dd + 1):
                    rem[k - dd + i] -= c * d[i]
        q = [Fraction(c) for c in quot]
        r = [Fraction(c) for c in rem[:dd]]
        while q and not q[-1]:
            q.pop()
        while r and not r[-1]:
            r.pop()
        return tuple(q), tuple(r)
    return _divmod_generic(QQ, num, den)


def _divmod_generic(ring: CoefficientRing, num: tuple,
                    den: tuple) -> tuple[tuple, tuple]:
    dd = len(den) - 1
    lead = den[-1]
    rem = list(num)
    if len(rem) - 1 < dd:
        return (), tuple(num)
    quot = [ring.coerce(0)] * (len(rem) - dd)
    for k in range(len(rem) - 1, dd - 1, -1):
        c = rem[k]
        if ring.is_zero(c):
            continue
        try:
            c = ring.exact_div(c, lead)
        except ExactDivisionError as exc:
            raise ExactDivisionError(
                "leading-coefficient division is not exact in "
                f"{ring!r}; the quotient leaves the ring") from exc
        quot[k - dd] = c
        for i in range(dd + 1):
            rem[k - dd + i] = ring.sub(rem[k - dd + i], ring.mul(c, den[i]))
    return _strip(ring, quot), _strip(ring, rem[:dd])


def euclidean(p: Polynomial, q: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Quotient and remainder with deg(remainder) < deg(q)."""
    return divmod(p, q)


def div_exact(num: Polynomial, den: Polynomial) -> Polynomial:
    return num.div_exact(den)


# ---------------------------------------------------------------------------
# contents, primitive parts, gcd

def _q_clear_content(coeffs: Sequence[Fraction]) -> tuple[list[int], Fraction]:
    """Write a rational coefficient list as scalar * primitive-int list."""
    den = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    g = math.gcd(*ints)
    if g == 0:
        return [], Fraction(0)
    ints = [c // g for c in ints]
    return ints, Fraction(g, den)


def _int_content(cs: Sequence[int]) -> int:
    return math.gcd(*cs) if cs else 0


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer coefficient lists (ascending)."""
    da, db = len(a) - 1, len(b) - 1
    lcb = b[-1]
    rem = list(a)
    n = da - db + 1
    while len(rem) - 1 >= db:
        lcr = rem[-1]
        shift = len(rem) - 1 - db
        rem = [lcb * c for c in rem[:-1]]
        for i in range(db):
            rem[shift + i] -= lcr * b[i]
        while rem and not rem[-1]:
            rem.pop()
        n -= 1
        if not rem:
            break
    if n > 0 and rem:
        f = lcb**n
        rem = [f * c for c in rem]
    return rem


def _int_gcd_primitive(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd of primitive integer polynomials via primitive PRS."""
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _int_prem(a, b)
        if r:
            g = _int_content(r)
            r = [c // g for c in r]
        a, b = b, r
    g = _int_content(a)
    return [c // g for c in a] if g else a


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Greatest common divisor.

    Monic over a field; over Q[a] the result is primitive with a positive
    leading rational, computed by a primitive-part pseudo-remainder sequence.
    """
    if p.ring != q.ring:
        raise DomainError("gcd of polynomials over different rings")
    ring = p.ring
    if p.is_zero:
        return q.monic() if ring.is_field else _qa_normalize_primitive(q)
    if q.is_zero:
        return p.monic() if ring.is_field else _qa_normalize_primitive(p)
    if ring is QQ:
        a, _ = _q_clear_content(p.coeffs)
        b, _ = _q_clear_content(q.coeffs)
        g = _int_gcd_primitive(a, b)
        return Polynomial(QQ, g).monic()
    if isinstance(ring, PrimeField):
        a, b = p, q
        while not b.is_zero:
            a, b = b, a % b
        return a.monic()
    if ring is QA:
        return _qa_poly_gcd(p, q)
    raise DomainError(f"gcd unsupported over {ring!r}")  # pragma: no cover


def _qa_content(poly: Polynomial) -> Polynomial:
    """Content of a Q[a][x] polynomial: gcd in Q[a] of its coefficients."""
    content = Polynomial.zero(QQ)
    for c in poly.coeffs:
        content = poly_gcd(content, Polynomial(QQ, c))
        if content.degree == 0:
            break
    return content


def _qa_normalize_primitive(poly: Polynomial) -> Polynomial:
    """Canonical primitive form: integer-primitive, positive leading rational."""
    if poly.is_zero:
        return poly
    content = _qa_content(poly)
    cs = [_qa_exact_div(c, tuple(content.coeffs)) for c in poly.coeffs]
    flat = [f for c in cs for f in c]
    den = math.lcm(*(f.denominator for f in flat))
    num = math.gcd(*(int(f * den) for f in flat))
    scale = Fraction(den, num)
    if cs[-1][-1] < 0:
        scale = -scale
    return Polynomial(QA, [tuple(f * scale for f in c) for c in cs])


def _qa_poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    a = _qa_normalize_primitive(p)
    b = _qa_normalize_primitive(q)
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero:
        r = _prs_prem(a.coeffs, b.coeffs, _QA_DOM)
        if r:
            r_poly = _qa_normalize_primitive(_raw(QA, tuple(r)))
        else:
            r_poly = Polynomial.zero(QA)
        a, b = b, r_poly
    return _qa_normalize_primitive(a)


def derivative(p: Polynomial) -> Polynomial:
    return p.derivative()


_SQUAREFREE_PRIMES = (2147483647, 2147483629, 2147483587, 2147483579, 2147483563)


def is_squarefree(p: Polynomial) -> bool:
    """True when p has no repeated factor.

    Requires field coefficients.  In characteristic p a vanishing derivative
    of a nonconstant polynomial reports False (the polynomial is inseparable).
    Over Q a modular gcd certificate decides the common squarefree case
    quickly; the exact primitive-PRS gcd settles anything inconclusive.
    """
    if not p.ring.is_field:
        raise DomainError("is_squarefree() requires field coefficients")
    if p.is_zero:
        return False
    if p.degree <= 1:
        return True
    dp = p.derivative()
    if dp.is_zero:
        return False
    if isinstance(p.ring, PrimeField):
        return poly_gcd(p, dp).degree == 0
    ints, _ = _q_clear_content(p.coeffs)
    dints = [i * c for i, c in enumerate(ints) if i > 0]
    for prime in _SQUAREFREE_PRIMES:
        if ints[-1] % prime == 0 or dints[-1] % prime == 0:
            continue
        fp = PrimeField(prime)
        a = Polynomial(fp, [c % prime for c in ints])
        b = Polynomial(fp, [c % prime for c in dints])
        if poly_gcd(a, b).degree == 0:
            return True
    return poly_gcd(p, dp).degree == 0


# ---------------------------------------------------------------------------
# resultants via a fraction-free subresultant remainder sequence

class _IntDom:
    one = 1

    @staticmethod
    def is_zero(c):
        return c == 0

    @staticmethod
    def mul(u, v):
        return u * v

    @staticmethod
    def sub(u, v):
        return u - v

    @staticmethod
    def neg(u):
        return -u

    @staticmethod
    def pow(u, k):
        return u**k

    @staticmethod
    def exact_div(u, v):
        q, r = divmod(u, v)
        if r:
            raise ArithmeticError("inexact integer division in PRS")
        return q


class _FpDom:
    def __init__(self, p: int):
        self.p = p
        self.one = 1 % p

    def is_zero(self, c):
        return c % self.p == 0

    def mul(self, u, v):
        return u * v % self.p

    def sub(self, u, v):
        return (u - v) % self.p

    def neg(self, u):
        return -u % self.p

    def pow(self, u, k):
        return pow(u, k, self.p)

    def exact_div(self, u, v):
        return u * pow(v, -1, self.p) % self.p


class _QaDomType:
    one = (Fraction(1),)

    @staticmethod
    def is_zero(c):
        return not c

    @staticmethod
    def mul(u, v):
        return _qa_mul(u, v)

    @staticmethod
    def sub(u, v):
        return _qa_sub(u, v)

    @staticmethod
    def neg(u):
        return _qa_neg(u)

    @staticmethod
    def pow(u, k):
        out = (Fraction(1),)
        for _ in range(k):
            out = _qa_mul(out, u)
        return out

    @staticmethod
    def exact_div(u, v):
        return _qa_exact_div(u, v)


_QA_DOM = _QaDomType()


def _prs_prem(a: Sequence, b: Sequence, dom) -> list:
    """Pseudo-remainder lc(b)^(da-db+1) * a mod b over a domain adapter."""
    da, db = len(a) - 1, len(b) - 1
    lcb = b[-1]
    rem = list(a)
    n = da - db + 1
    while len(rem) - 1 >= db:
        lcr = rem[-1]
        shift = len(rem) - 1 - db
        rem = [dom.mul(lcb, c) for c in rem[:-1]]
        for i in range(db):
            rem[shift + i] = dom.sub(rem[shift + i], dom.mul(lcr, b[i]))
        while rem and dom.is_zero(rem[-1]):
            rem.pop()
        n -= 1
        if not rem:
            break
    if n > 0 and rem:
        f = dom.pow(lcb, n)
        rem = [dom.mul(f, c) for c in rem]
    return rem


def _prs_resultant(a: list, b: list, dom):
    """Resultant by the subresultant PRS (fraction-free bookkeeping).

    Follows the classical sub-resultant algorithm: divisions by g*h**delta
    are exact over any integral domain, and the final correction yields the
    true resultant including sign.
    """
    sign = 1
    if len(a) < len(b):
        if (len(a) - 1) * (len(b) - 1) % 2 == 1:
            sign = -sign
        a, b = b, a
    if len(a) == 1:
        return dom.one  # two nonzero constants
    if len(b) == 1:
        return _apply_sign(dom, dom.pow(b[0], len(a) - 1), sign)
    g = h = dom.one
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            sign = -sign
        rem = _prs_prem(a, b, dom)
        if not rem:
            return None  # shared factor: resultant is zero
        divisor = dom.mul(g, dom.pow(h, delta))
        a = b
        b = [dom.exact_div(c, divisor) for c in rem]
        g = a[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = dom.exact_div(dom.pow(g, delta), dom.pow(h, delta - 1))
        if len(b) == 1:
            break
    da = len(a) - 1
    final = dom.exact_div(dom.pow(b[0], da), dom.pow(h, da - 1))
    return _apply_sign(dom, final, sign)


def _apply_sign(dom, value, sign: int):
    return dom.neg(value) if sign < 0 else value


def resultant(p: Polynomial, q: Polynomial):
    """Res(p, q) = lc(p)**deg(q) * prod q(root) over the roots of p.

    Computed by a fraction-free subresultant remainder sequence; returns a
    coefficient-ring element (zero exactly when p and q share a factor).
    """
    if p.ring != q.ring:
        raise DomainError("resultant of polynomials over different rings")
    if p.is_zero or q.is_zero:
        raise DomainError("resultant of the zero polynomial is undefined")
    ring = p.ring
    if ring is QQ:
        pa, sp = _q_clear_content(p.coeffs)
        qa, sq = _q_clear_content(q.coeffs)
        core = _prs_resultant(pa, qa, _IntDom)
        if core is None:
            return Fraction(0)
        return sp**q.degree * sq**p.degree * core
    if isinstance(ring, PrimeField):
        core = _prs_resultant(list(p.coeffs), list(q.coeffs), _FpDom(ring.p))
        return 0 if core is None else core
    if ring is QA:
        core = _prs_resultant(list(p.coeffs), list(q.coeffs), _QA_DOM)
        return () if core is None else core
    raise DomainError(f"resultant unsupported over {ring!r}")  # pragma: no cover


# ---------------------------------------------------------------------------
# text format: expressions over x, a, integer and p/q literals, + - * ^ ( )

_TOKEN_RE = re.compile(r"\s*(\d+|[xa()+\-*^/])")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise DomainError(f"unexpected character at {text[pos:]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


class _Parser:
    """Recursive-descent parser producing a polynomial over Q[a]."""

    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise DomainError("unexpected end of polynomial expression")
        self.pos += 1
        return tok

    def parse(self) -> Polynomial:
        poly = self.expr()
        if self.peek() is not None:
            raise DomainError(f"trailing tokens at {self.tokens[self.pos:]!r}")
        return poly

    def expr(self) -> Polynomial:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.next() == "-":
                sign = -sign
        acc = self.term().scale(sign)
        while self.peek() in ("+", "-"):
            op = self.next()
            sign = 1 if op == "+" else -1
            while self.peek() in ("+", "-"):
                if self.next() == "-":
                    sign = -sign
            acc = acc + self.term().scale(sign)
        return acc

    def term(self) -> Polynomial:
        acc = self.power()
        while self.peek() == "*":
            self.next()
            acc = acc * self.power()
        return acc

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek() == "^":
            self.next()
            tok = self.next()
            if not tok.isdigit():
                raise DomainError("exponent must be a nonnegative integer")
            return base**int(tok)
        return base

    def atom(self) -> Polynomial:
        tok = self.next()
        if tok == "(":
            inner = self.expr()
            if self.next() != ")":
                raise DomainError("unbalanced parentheses")
            return inner
        if tok == "x":
            return Polynomial.x(QA)
        if tok == "a":
            return Polynomial.constant(QA, QA.param)
        if tok == "-":
            return -self.atom()
        if tok == "+":
            return self.atom()
        if tok.isdigit():
            value = Fraction(int(tok))
            if self.peek() == "/":
                self.next()
                den = self.next()
                if not den.isdigit() or int(den) == 0:
                    raise DomainError("rational literal needs a positive "
                                      "integer denominator")
                value = Fraction(int(tok), int(den))
            return Polynomial.constant(QA, value)
        raise DomainError(f"unexpected token {tok!r}")


def parse_polynomial(text: str, ring: CoefficientRing | None = None) -> Polynomial:
    """Parse the expression grammar over x, a, integers, p/q, + - * ^ ( ).

    With no explicit ring the result lives over Q, or over Q[a] when the
    parameter actually occurs.
    """
    poly_qa = _Parser(_tokenize(text)).parse()
    uses_param = any(len(c) > 1 for c in poly_qa.coeffs)
    if ring is None:
        ring = QA if uses_param else QQ
    if ring is QA:
        return poly_qa
    if uses_param:
        raise DomainError(f"polynomial {text!r} involves the parameter a "
                          f"but was requested over {ring!r}")
    consts = [c[0] if c else Fraction(0) for c in poly_qa.coeffs]
    return Polynomial(ring, consts)


def _parse_qa_coefficient(text: str) -> tuple:
    poly = _Parser(_tokenize(text)).parse()
    if poly.degree > 0:
        raise DomainError("coefficient strings may use only the parameter a")
    return poly.coeffs[0] if poly.coeffs else ()


def _format_terms(coeffs: Sequence, var: str, fmt, parenthesize: bool,
                  is_zero=lambda c: not c) -> str:
    if not coeffs or all(is_zero(c) for c in coeffs):
        return "0"
    parts: list[str] = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if is_zero(c):
            continue
        body = fmt(c)
        sign = "+"
        if " " in body:
            # multi-term coefficient (Q[a]): parenthesize, never fold the sign
            body = f"({body})"
        elif body.startswith("-"):
            sign, body = "-", body[1:]
        if k > 0:
            xpow = var if k == 1 else f"{var}^{k}"
            body = xpow if body == "1" else f"{body}*{xpow}"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)
