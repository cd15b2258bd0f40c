"""Van der Put basis on Z/p^K Z.

Indices m in [0, p^K) label the balls of the basis: chi(m, .) is the indicator
of x = m mod p^n, where n = n(m) is the number of base-p digits of m (and
n(0) = 1).  A function table and its coefficient table determine each other::

    B_m = f(m)                             for m < p
    B_m = f(m) - f(m - lead(m) p^(n-1))    for m >= p

Compatible functions are exactly those whose B_m are divisible by
p^scale(m), scale(m) = floor(log_p m) (0 for m < p); the quotients b_m are
the normalized coefficients used by the measure-preservation criterion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from vdput.errors import DomainMismatch, PrecisionExceeded
from vdput.padic import PadicInt, check_domain, check_table_size, int_valuation


def ball_level(m: int, p: int) -> int:
    """n(m): 1 for m = 0, else the number of base-p digits of m."""
    n = 1
    bound = p
    while m >= bound:
        bound *= p
        n += 1
    return n


def scale(m: int, p: int) -> int:
    """floor(log_p m) for m >= 1; 0 for m = 0."""
    return ball_level(m, p) - 1


def parent(m: int, p: int) -> int:
    """m with its leading base-p digit removed (m >= p)."""
    top = p ** scale(m, p)
    return m % top


def _check_size(p: int, K: int, n: int, what: str) -> None:
    check_domain(p, K)
    size = check_table_size(p, K)
    if n != size:
        raise ValueError(f"{what} must have exactly {p}^{K} = {size} entries, got {n}")


@dataclass(frozen=True)
class FunctionTable:
    """Values of f mod p^K on the representatives 0..p^K - 1.

    ``values[x]`` is the residue of f(x) as a plain int; :meth:`entry`
    wraps it as a :class:`PadicInt`.
    """

    p: int
    K: int
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        _check_size(self.p, self.K, len(self.values), "FunctionTable")
        mod = self.p**self.K
        for x, v in enumerate(self.values):
            if not 0 <= v < mod:
                raise ValueError(f"value f({x}) = {v} outside [0, {mod})")

    @classmethod
    def from_callable(cls, p: int, K: int, fn: Callable[[int], int]) -> FunctionTable:
        check_domain(p, K)
        mod = p**K
        return cls(p, K, tuple(fn(x) % mod for x in range(check_table_size(p, K))))

    @property
    def modulus(self) -> int:
        return self.p**self.K

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, x: int) -> int:
        return self.values[x]

    def entry(self, x: int) -> PadicInt:
        return PadicInt(self.p, self.K, self.values[x])


@dataclass(frozen=True)
class VdpSeries:
    """Truncated van der Put coefficients B_0..B_{p^K-1}, each mod p^K.

    Only the low ``meaningful_digits(m)`` digits of b_m = B_m / p^scale(m)
    carry information; the rest are forced to zero by the precision cap.
    """

    p: int
    K: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        _check_size(self.p, self.K, len(self.coeffs), "VdpSeries")
        mod = self.p**self.K
        for m, c in enumerate(self.coeffs):
            if not 0 <= c < mod:
                raise ValueError(f"coefficient B_{m} = {c} outside [0, {mod})")

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, m: int) -> int:
        return self.coeffs[m]

    def entry(self, m: int) -> PadicInt:
        return PadicInt(self.p, self.K, self.coeffs[m])

    def scale(self, m: int) -> int:
        return scale(m, self.p)

    def meaningful_digits(self, m: int) -> int:
        return self.K - scale(m, self.p)


@dataclass(frozen=True)
class CompatibilityWitness:
    """Least index m whose B_m has valuation below scale(m)."""

    m: int
    valuation: int
    scale: int


def chi(m: int, x: PadicInt) -> int:
    p = x.p
    if not 0 <= m < p**x.K:
        raise PrecisionExceeded(f"ball index {m} outside [0, {p}^{x.K})")
    q = p  # p^n(m)
    while m >= q:
        q *= p
    return int(x.value % q == m)


def chain(x: int, p: int, K: int) -> list[int]:
    """Indices m with chi(m, x) = 1, in increasing order.

    These are the prefixes x mod p^j (j = 1..K) that have exactly j digits;
    the j = 1 prefix is always included, and it is 0 when p | x.
    """
    out = []
    q = 1
    for j in range(1, K + 1):
        q *= p
        m = x % q
        if j == 1 or m >= q // p:
            out.append(m)
    return out


def coefficients(f: FunctionTable) -> VdpSeries:
    p, mod, v = f.p, f.modulus, f.values
    coeffs = list(v[:p])
    top = p
    for m in range(p, len(v)):
        if m == top * p:
            top = m
        coeffs.append((v[m] - v[m % top]) % mod)
    return VdpSeries(f.p, f.K, tuple(coeffs))


def to_table(s: VdpSeries) -> FunctionTable:
    """Sum the series at every representative (inverse of :func:`coefficients`)."""
    p, mod, c = s.p, s.p**s.K, s.coeffs
    values = list(c[:p])
    top = p
    for m in range(p, len(c)):
        if m == top * p:
            top = m
        values.append((values[m % top] + c[m]) % mod)
    return FunctionTable(s.p, s.K, tuple(values))


def evaluate(s: VdpSeries, x: PadicInt) -> PadicInt:
    """f(x) = sum of B_m chi(m, x), summed along the prefix chain of x."""
    if x.p != s.p or x.K != s.K:
        raise DomainMismatch(
            f"series over Z/{s.p}^{s.K} evaluated at a point of Z/{x.p}^{x.K}"
        )
    total = sum(s.coeffs[m] for m in chain(x.value, s.p, s.K))
    return PadicInt(s.p, s.K, total % x.modulus)


def evaluate_direct(s: VdpSeries, x: PadicInt) -> PadicInt:
    """Same as :func:`evaluate` but sums over every basis index (slow)."""
    total = sum(b * chi(m, x) for m, b in enumerate(s.coeffs))
    return PadicInt(s.p, s.K, total % x.modulus)


def normalize(s: VdpSeries) -> tuple[int, ...] | CompatibilityWitness:
    """Divide each B_m by p^scale(m).

    Returns the tuple of normalized coefficients b_m (as residues; b_m is
    meaningful mod p^(K - scale(m))), or the least failing index as a
    :class:`CompatibilityWitness` if the series is not 1-Lipschitz.
    """
    p, K = s.p, s.K
    out = list(s.coeffs[:p])
    k, pk, nxt = 1, p, p * p
    for m in range(p, len(s.coeffs)):
        if m == nxt:
            k, pk, nxt = k + 1, nxt, nxt * p
        B = s.coeffs[m]
        if B % pk:
            return CompatibilityWitness(m, int_valuation(B, p, K), k)
        out.append(B // pk)
    return tuple(out)
