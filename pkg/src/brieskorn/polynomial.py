"""
Dense univariate polynomials with exact integer coefficients.

A polynomial is stored as a tuple of Python ints, constant term first, so
``1 - 2t + t^3`` is ``(1, -2, 0, 1)``. Trailing zeros are stripped on
construction; the zero polynomial has no coefficients and degree -1.

Characteristic polynomials of Brieskorn-Pham monodromies reach degree in
the tens of thousands with coefficients thousands of bits wide, so large
products go through Kronecker substitution: both factors are packed into
one big integer each and multiplied there.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvariantViolation


def _strip(coeffs: Iterable[int]) -> tuple[int, ...]:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True, init=False)
class IntegerPolynomial:
    """
    A polynomial in ``t`` with integer coefficients.

    >>> IntegerPolynomial([1, -1, 1])
    IntegerPolynomial('t^2 - t + 1')
    >>> IntegerPolynomial([1, -1, 1]).degree
    2
    """
    coefficients: tuple[int, ...]

    def __init__(self, coefficients: Iterable[int] = ()):
        coeffs = []
        for c in coefficients:
            if isinstance(c, bool) or int(c) != c:
                raise TypeError(f"non-integer coefficient {c!r}")
            coeffs.append(int(c))
        object.__setattr__(self, "coefficients", _strip(coeffs))

    @classmethod
    def constant(cls, c: int) -> IntegerPolynomial:
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> IntegerPolynomial:
        if degree < 0:
            raise ValueError("negative degree")
        return cls([0] * degree + [coeff])

    @classmethod
    def binomial(cls, e: int) -> IntegerPolynomial:
        """The polynomial ``t^e - 1``."""
        if e < 1:
            raise ValueError("binomial exponent must be positive")
        return cls([-1] + [0] * (e - 1) + [1])

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def is_monic(self) -> bool:
        return bool(self.coefficients) and self.coefficients[-1] == 1

    def leading_coefficient(self) -> int:
        return self.coefficients[-1] if self.coefficients else 0

    def __call__(self, x):
        """Evaluate by Horner's rule. Works for ints, Fractions, polynomials."""
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    evaluate = __call__

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntegerPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return IntegerPolynomial(-c for c in self.coefficients)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return IntegerPolynomial()
        if min(len(a), len(b)) > KRONECKER_THRESHOLD:
            return IntegerPolynomial(kronecker_mul(a, b))
        return IntegerPolynomial(schoolbook_mul(a, b))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = IntegerPolynomial([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def divmod_monic(self, divisor: IntegerPolynomial):
        """Long division by a monic polynomial; returns ``(quotient, remainder)``."""
        if not divisor.is_monic():
            raise ValueError("divisor must be monic")
        rem = list(self.coefficients)
        d = divisor.degree
        if len(rem) - 1 < d:
            return IntegerPolynomial(), self
        quot = [0] * (len(rem) - d)
        dc = divisor.coefficients
        for i in range(len(rem) - 1, d - 1, -1):
            q = rem[i]
            if q:
                quot[i - d] = q
                for j in range(d + 1):
                    rem[i - d + j] -= q * dc[j]
        return IntegerPolynomial(quot), IntegerPolynomial(rem[:d])

    def exact_div(self, divisor: IntegerPolynomial) -> IntegerPolynomial:
        """Division that must leave no remainder."""
        q, r = self.divmod_monic(divisor)
        if not r.is_zero():
            raise ArithmeticError(f"{divisor} does not divide {self}")
        return q

    def __floordiv__(self, other):
        return self.divmod_monic(_coerce(other))[0]

    def __mod__(self, other):
        return self.divmod_monic(_coerce(other))[1]

    def times_binomial(self, e: int, power: int = 1) -> IntegerPolynomial:
        """Multiply by ``(t^e - 1)**power`` in O(power * degree) steps."""
        coeffs = list(self.coefficients)
        for _ in range(power):
            out = [0] * (len(coeffs) + e)
            for i, c in enumerate(coeffs):
                out[i + e] += c
                out[i] -= c
            coeffs = out
        return IntegerPolynomial(coeffs)

    def div_binomial(self, e: int, power: int = 1) -> IntegerPolynomial:
        """Exact division by ``(t^e - 1)**power``; raises if it does not divide."""
        if self.is_zero():
            return self
        coeffs = list(self.coefficients)
        for _ in range(power):
            n = len(coeffs) - 1
            if n < e:
                raise ArithmeticError(f"t^{e} - 1 does not divide {self}")
            # q(t)(t^e - 1) = p(t): q_{k} = p_{k+e} + q_{k+e}, top down
            q = [0] * (n - e + 1)
            for k in range(n - e, -1, -1):
                q[k] = coeffs[k + e] + (q[k + e] if k + e <= n - e else 0)
            for k in range(e):
                if coeffs[k] != -(q[k] if k < len(q) else 0):
                    raise ArithmeticError(f"t^{e} - 1 does not divide {self}")
            coeffs = q
        return IntegerPolynomial(coeffs)

    def substitute_power(self, p: int) -> IntegerPolynomial:
        """Return ``P(t^p)``."""
        if p < 1:
            raise ValueError("power must be positive")
        if not self.coefficients:
            return self
        out = [0] * (self.degree * p + 1)
        for i, c in enumerate(self.coefficients):
            out[i * p] = c
        return IntegerPolynomial(out)

    def reciprocal(self) -> IntegerPolynomial:
        """``t^deg * P(1/t)``."""
        return IntegerPolynomial(reversed(self.coefficients))

    def is_palindromic(self) -> bool:
        return self.coefficients == self.coefficients[::-1]

    def __repr__(self):
        return f"IntegerPolynomial({str(self)!r})"

    def __str__(self):
        return format_polynomial(self.coefficients)


KRONECKER_THRESHOLD = 48

try:
    from gmpy2 import mpz as _mpz

    def _bigmul(x: int, y: int):
        # CPython stops at Karatsuba; GMP switches to FFT for huge operands
        if x.bit_length() > 1 << 16 and y.bit_length() > 1 << 16:
            return _mpz(x) * _mpz(y)
        return x * y
except ImportError:  # pragma: no cover
    def _bigmul(x: int, y: int):
        return x * y


def schoolbook_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    # iterate over the sparser factor on the outside
    if sum(1 for c in a if c) > sum(1 for c in b if c):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return out


def _pack(coeffs: Sequence[int], width: int) -> int:
    """``sum c_i 2^(8 width i)`` for signed ``c_i`` with ``|c_i| < 2^(8 width)``."""
    pos = b"".join(max(c, 0).to_bytes(width, "little") for c in coeffs)
    neg = b"".join(max(-c, 0).to_bytes(width, "little") for c in coeffs)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def kronecker_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """
    Multiply integer polynomials by packing them into single big integers.

    Every product coefficient is bounded by ``min(len) * max|a| * max|b|``;
    slots are wide enough to hold that with a sign bit, and a constant
    offset of half a slot per coefficient keeps every packed digit
    non-negative so the result unpacks without borrows.
    """
    n = len(a) + len(b) - 1
    ma, mb = max(map(abs, a)), max(map(abs, b))
    if not ma or not mb:
        return [0] * n
    bound = min(len(a), len(b)) * ma * mb
    width = (bound.bit_length() + 2 + 7) // 8
    half = 1 << (8 * width - 1)
    x = int(_bigmul(_pack(a, width), _pack(b, width)))
    x += int.from_bytes(half.to_bytes(width, "little") * n, "little")
    raw = x.to_bytes(width * n, "little")
    return [int.from_bytes(raw[i * width:(i + 1) * width], "little") - half
            for i in range(n)]


def _coerce(x):
    if isinstance(x, IntegerPolynomial):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return IntegerPolynomial([x])
    return NotImplemented


def format_polynomial(coeffs: Sequence[int], var: str = "t") -> str:
    """Human-readable rendering, highest degree first.

    >>> format_polynomial([1, -1, 1])
    't^2 - t + 1'
    >>> format_polynomial([])
    '0'
    """
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for positive integers")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def euler_phi(n: int) -> int:
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@functools.lru_cache(maxsize=None)
def cyclotomic(n: int) -> IntegerPolynomial:
    """
    The n-th cyclotomic polynomial, from ``prod_{d | n} (t^d - 1)^mu(n/d)``.

    >>> cyclotomic(6)
    IntegerPolynomial('t^2 - t + 1')
    """
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    exponents = {d: mobius(n // d) for d in divisors(n)}
    return binomial_product(exponents)


def binomial_product(exponents: dict[int, int]) -> IntegerPolynomial:
    """
    Evaluate ``prod_e (t^e - 1)^{r_e}`` for integer (possibly negative) ``r_e``.

    The result must be a polynomial; every positive factor is multiplied in
    before any division so intermediate values stay polynomial.
    """
    poly = IntegerPolynomial([1])
    for e in sorted(exponents):
        r = exponents[e]
        if r > 0:
            poly = poly.times_binomial(e, r)
    for e in sorted(exponents, reverse=True):
        r = exponents[e]
        if r < 0:
            try:
                poly = poly.div_binomial(e, -r)
            except ArithmeticError as exc:
                raise InvariantViolation(
                    f"binomial product {exponents} is not a polynomial") from exc
    return poly


def cyclotomic_product(multiplicities: dict[int, int]) -> IntegerPolynomial:
    """``prod_d Phi_d(t)^{m_d}`` for non-negative multiplicities."""
    poly = IntegerPolynomial([1])
    for d in sorted(multiplicities):
        m = multiplicities[d]
        if m < 0:
            raise ValueError("cyclotomic multiplicities must be non-negative")
        if m:
            poly = poly * cyclotomic(d) ** m
    return poly
