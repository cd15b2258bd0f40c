"""Fixed-precision p-adic integers.

A :class:`PadicInt` is an element of Z/p^K Z viewed as the first K base-p
digits of a p-adic integer.  The residue is stored as a Python int; the digit
vector is derived on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, total_ordering

from vdput.errors import (
    DomainMismatch,
    InvalidPrecision,
    InvalidPrime,
    PrecisionExceeded,
    TableTooLarge,
)

# Upper bound on p**K for anything that materialises a full table.
TABLE_SIZE_LIMIT = 2**20


@lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def check_domain(p: int, K: int) -> None:
    """Raise unless p is prime and K >= 1."""
    if not isinstance(p, int) or not is_prime(p):
        raise InvalidPrime(f"p={p!r} is not prime")
    if not isinstance(K, int) or K < 1:
        raise InvalidPrecision(f"precision K={K!r} must be a positive integer")


def check_table_size(p: int, K: int, limit: int | None = None) -> int:
    """Return p**K, raising TableTooLarge if it exceeds ``limit``."""
    limit = TABLE_SIZE_LIMIT if limit is None else limit
    size = p**K
    if size > limit:
        raise TableTooLarge(f"p^K = {p}^{K} = {size} exceeds table limit {limit}")
    return size


@total_ordering
@dataclass(frozen=True)
class Valuation:
    """p-adic valuation at precision K.

    ``exponent`` is None when every stored digit is zero; such a value sorts
    above every finite exponent.
    """

    exponent: int | None
    K: int

    @property
    def at_least_k(self) -> bool:
        return self.exponent is None

    def norm(self, p: int) -> float:
        """|x|_p, with 0.0 for the all-zero case."""
        return 0.0 if self.exponent is None else float(p) ** (-self.exponent)

    def _key(self) -> float:
        return float("inf") if self.exponent is None else self.exponent

    def __lt__(self, other: Valuation) -> bool:
        if not isinstance(other, Valuation):
            return NotImplemented
        return self._key() < other._key()

    def __str__(self) -> str:
        return f">={self.K}" if self.exponent is None else str(self.exponent)


@dataclass(frozen=True)
class PadicInt:
    p: int
    K: int
    value: int

    def __post_init__(self):
        check_domain(self.p, self.K)
        if not 0 <= self.value < self.p**self.K:
            raise ValueError(f"value {self.value} outside [0, {self.p}^{self.K})")

    @property
    def modulus(self) -> int:
        return self.p**self.K

    @property
    def digits(self) -> tuple[int, ...]:
        out = []
        n = self.value
        for _ in range(self.K):
            n, d = divmod(n, self.p)
            out.append(d)
        return tuple(out)

    @classmethod
    def from_digits(cls, digits, p: int) -> PadicInt:
        digits = tuple(digits)
        check_domain(p, len(digits))
        if any(not 0 <= d < p for d in digits):
            raise ValueError(f"digits {digits} not all in [0, {p})")
        return cls(p, len(digits), sum(d * p**k for k, d in enumerate(digits)))

    def _coerce(self, other) -> PadicInt:
        if isinstance(other, int):
            return PadicInt(self.p, self.K, other % self.modulus)
        if not isinstance(other, PadicInt):
            return NotImplemented
        if other.p != self.p or other.K != self.K:
            raise DomainMismatch(
                f"operands live in Z/{self.p}^{self.K} and Z/{other.p}^{other.K}"
            )
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PadicInt(self.p, self.K, (self.value + other.value) % self.modulus)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PadicInt(self.p, self.K, (self.value - other.value) % self.modulus)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PadicInt(self.p, self.K, (self.value * other.value) % self.modulus)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self) -> PadicInt:
        return PadicInt(self.p, self.K, -self.value % self.modulus)

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"PadicInt(p={self.p}, K={self.K}, digits={list(self.digits)})"


def from_integer(n: int, p: int, K: int) -> PadicInt:
    """Reduce a nonnegative integer to K base-p digits."""
    check_domain(p, K)
    if n < 0:
        raise ValueError(f"from_integer expects n >= 0, got {n}")
    return PadicInt(p, K, n % p**K)


def int_valuation(n: int, p: int, K: int) -> int | None:
    """Valuation of the residue n mod p^K, or None if it vanishes."""
    n %= p**K
    if n == 0:
        return None
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(x: PadicInt) -> Valuation:
    return Valuation(int_valuation(x.value, x.p, x.K), x.K)


def digit(x: PadicInt, k: int) -> int:
    """The k-th base-p digit of x."""
    if not 0 <= k < x.K:
        raise PrecisionExceeded(f"digit index {k} outside precision K={x.K}")
    return x.value // x.p**k % x.p


def add(a: PadicInt, b: PadicInt) -> PadicInt:
    return a + b


def sub(a: PadicInt, b: PadicInt) -> PadicInt:
    return a - b


def mul(a: PadicInt, b: PadicInt) -> PadicInt:
    return a * b
