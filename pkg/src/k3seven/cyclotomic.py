"""Exact arithmetic in cyclotomic fields Q(zeta_n), plus the small number
theory toolkit (totient, Moebius, divisors, Ramanujan sums) used everywhere
else in the package.

An element of Q(zeta_n) is stored densely in the power basis
1, zeta, ..., zeta^(phi(n)-1) with Fraction coefficients, reduced modulo the
n-th cyclotomic polynomial.  Reduction is canonical, so equality is
coefficientwise and hashing is safe.  The orders used by the classifier are
at most 42, hence phi(n) <= 12 and density costs nothing.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class FieldError(ValueError):
    """Raised for invalid field operations (zero inversion, mixed orders)."""


# ---------------------------------------------------------------------------
# number theory utilities


@functools.lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    """Positive divisors of n in increasing order.

    >>> divisors(14)
    (1, 2, 7, 14)
    """
    if n < 1:
        raise ValueError("n must be positive")
    return tuple(d for d in range(1, n + 1) if n % d == 0)


@functools.lru_cache(maxsize=None)
def totient(n: int) -> int:
    """Euler's phi.

    >>> [totient(n) for n in (1, 7, 14, 21, 28, 42)]
    [1, 6, 6, 12, 12, 12]
    """
    if n < 1:
        raise ValueError("n must be positive")
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


@functools.lru_cache(maxsize=None)
def moebius(n: int) -> int:
    """Moebius mu(n): (-1)^k on squarefree n with k prime factors, else 0."""
    if n < 1:
        raise ValueError("n must be positive")
    result, m = 1, n
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def ramanujan_sum(d: int, m: int) -> int:
    """Sum of zeta^m over all primitive d-th roots of unity zeta.

    Computed by the closed form mu(d/g) * phi(d) / phi(d/g) with
    g = gcd(d, m), where m = 0 mod d counts as g = d.

    >>> ramanujan_sum(7, 14), ramanujan_sum(7, 1), ramanujan_sum(14, 7)
    (6, -1, -6)
    """
    if d < 1:
        raise ValueError("d must be positive")
    g = gcd(d, m % d) if m % d != 0 else d
    q = d // g
    num = moebius(q) * totient(d)
    den = totient(q)
    assert num % den == 0
    return num // den


# ---------------------------------------------------------------------------
# integer polynomials, just enough for the cyclotomic tower


def _poly_divmod(num: tuple[Fraction, ...], den: tuple[Fraction, ...]):
    """Quotient and remainder of dense coefficient tuples (constant first)."""
    num_l = list(num)
    q = [Fraction(0)] * max(len(num_l) - len(den) + 1, 1)
    d = len(den) - 1
    lead = den[-1]
    while len(num_l) >= len(den) and any(c != 0 for c in num_l):
        while num_l and num_l[-1] == 0:
            num_l.pop()
        if len(num_l) < len(den):
            break
        shift = len(num_l) - len(den)
        coef = num_l[-1] / lead
        q[shift] = coef
        for i in range(d + 1):
            num_l[shift + i] -= coef * den[i]
        num_l.pop()
    while num_l and num_l[-1] == 0:
        num_l.pop()
    return tuple(q), tuple(num_l)


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Dense integer coefficients (constant first) of the n-th cyclotomic
    polynomial, computed by dividing x^n - 1 by the lower ones.

    >>> cyclotomic_polynomial(2)
    (1, 1)
    >>> cyclotomic_polynomial(7)
    (1, 1, 1, 1, 1, 1, 1)
    >>> cyclotomic_polynomial(14)
    (1, -1, 1, -1, 1, -1, 1)
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return (-1, 1)
    poly: tuple[Fraction, ...] = tuple(
        Fraction(c) for c in [-1] + [0] * (n - 1) + [1]
    )
    for d in divisors(n)[:-1]:
        phi_d = tuple(Fraction(c) for c in cyclotomic_polynomial(d))
        poly, rem = _poly_divmod(poly, phi_d)
        assert not rem, "cyclotomic division must be exact"
    coeffs = tuple(int(c) for c in poly)
    assert len(coeffs) == totient(n) + 1
    return coeffs


# ---------------------------------------------------------------------------
# field elements


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} to an exact rational")


@dataclass(frozen=True)
class CyclotomicNumber:
    """An element of Q(zeta_n) in the canonical power basis mod Phi_n.

    `coeffs` always has length phi(n); two equal field elements have
    identical coefficient tuples.

    >>> z = CyclotomicNumber.root(7, 1)
    >>> z * z**6 == CyclotomicNumber.one(7)
    True
    """

    order: int
    coeffs: tuple[Fraction, ...]

    # -- constructors ------------------------------------------------------

    @staticmethod
    def _reduce(order: int, raw: list[Fraction]) -> tuple[Fraction, ...]:
        phi = totient(order)
        modulus = tuple(Fraction(c) for c in cyclotomic_polynomial(order))
        if len(raw) >= len(modulus):
            _, raw_t = _poly_divmod(tuple(raw), modulus)
            raw = list(raw_t)
        raw += [Fraction(0)] * (phi - len(raw))
        return tuple(raw[:phi])

    @classmethod
    def from_coeffs(cls, order: int, raw) -> "CyclotomicNumber":
        return cls(order, cls._reduce(order, [_as_fraction(c) for c in raw]))

    @classmethod
    def zero(cls, order: int) -> "CyclotomicNumber":
        return cls.from_coeffs(order, [])

    @classmethod
    def one(cls, order: int) -> "CyclotomicNumber":
        return cls.from_coeffs(order, [1])

    @classmethod
    def rational(cls, order: int, value) -> "CyclotomicNumber":
        return cls.from_coeffs(order, [_as_fraction(value)])

    @classmethod
    def root(cls, order: int, power: int = 1) -> "CyclotomicNumber":
        """zeta_order^power, reduced."""
        power %= order
        return cls.from_coeffs(order, [0] * power + [1])

    # -- ring / field structure --------------------------------------------

    def _check(self, other: "CyclotomicNumber") -> None:
        if self.order != other.order:
            raise FieldError(
                f"mixed cyclotomic orders {self.order} and {other.order}"
            )

    def __add__(self, other):
        other = self._coerce(other)
        self._check(other)
        return CyclotomicNumber(
            self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other):
        other = self._coerce(other)
        self._check(other)
        return CyclotomicNumber(
            self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self):
        return CyclotomicNumber(self.order, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        self._check(other)
        raw = [Fraction(0)] * (2 * len(self.coeffs))
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b != 0:
                    raw[i + j] += a * b
        return CyclotomicNumber(self.order, self._reduce(self.order, raw))

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._coerce(other) - self

    def _coerce(self, other):
        if isinstance(other, CyclotomicNumber):
            return other
        return CyclotomicNumber.rational(self.order, other)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CyclotomicNumber.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "CyclotomicNumber":
        """Inverse via extended gcd of the representative with Phi_n."""
        if self.is_zero():
            raise FieldError("division by zero in a cyclotomic field")
        modulus = tuple(Fraction(c) for c in cyclotomic_polynomial(self.order))
        # extended Euclid over Q[x]: r0 = modulus, r1 = self
        r0, r1 = modulus, self.coeffs
        s0, s1 = (Fraction(0),), (Fraction(1),)

        def trim(p):
            p = list(p)
            while p and p[-1] == 0:
                p.pop()
            return tuple(p)

        def sub_scaled(p, q, factor, shift):
            p = list(p) + [Fraction(0)] * max(0, len(q) + shift - len(p))
            for i, c in enumerate(q):
                p[i + shift] -= factor * c
            return trim(p)

        r1, s1 = trim(r1), trim(s1)
        while True:
            r1_t = trim(r1)
            if not r1_t:
                raise FieldError("element not invertible (unexpected)")
            if len(r1_t) == 1:
                inv_c = 1 / r1_t[0]
                coeffs = tuple(c * inv_c for c in s1)
                return CyclotomicNumber.from_coeffs(self.order, coeffs)
            q, rem = _poly_divmod(r0, r1_t)
            # s_new = s0 - q * s1
            s_new = s0
            for shift, factor in enumerate(q):
                if factor != 0:
                    s_new = sub_scaled(s_new, s1, factor, shift)
            r0, r1 = r1_t, trim(rem)
            s0, s1 = s1, s_new

    # -- predicates and conversions ----------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise FieldError(f"{self} is not rational")
        return self.coeffs[0]

    def is_root_of_unity(self) -> bool:
        return self.root_of_unity_order() is not None

    def root_of_unity_order(self) -> int | None:
        """Multiplicative order if self is a root of unity, else None.

        The roots of unity in Q(zeta_n) form mu_m with m = n for even n and
        m = 2n for odd n, so only divisors of that m need checking.
        """
        if self.is_zero():
            return None
        m = self.order if self.order % 2 == 0 else 2 * self.order
        one = CyclotomicNumber.one(self.order)
        power = one
        for k in range(1, m + 1):
            power = power * self
            if power == one:
                return k
        return None

    def to_complex(self) -> complex:
        import cmath

        zeta = cmath.exp(2j * cmath.pi / self.order)
        return sum(float(c) * zeta**i for i, c in enumerate(self.coeffs))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*z")
            else:
                terms.append(f"{c}*z^{i}")
        body = " + ".join(terms) if terms else "0"
        return f"Cyc({self.order}: {body})"


def zeta(order: int, power: int = 1) -> CyclotomicNumber:
    """Shorthand for CyclotomicNumber.root."""
    return CyclotomicNumber.root(order, power)


def ramanujan_sum_bruteforce(d: int, m: int) -> int:
    """Ramanujan sum evaluated literally in Q(zeta_d); used as the oracle
    for the closed form."""
    total = CyclotomicNumber.zero(d)
    for k in range(d):
        if gcd(k, d) == 1 or d == 1:
            total = total + zeta(d, (k * m) % d)
    value = total.as_rational()
    assert value.denominator == 1
    return int(value)
