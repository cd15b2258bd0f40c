"""Generators of measure-preserving compatible functions.

The additive representation writes every compatible measure-preserving f as
``xi + p*h`` where h is any compatible function and xi is the series with

    B_i           = G(i)            for i in 0..p-1
    B_{m + i p^k} = g_m(i) * p^k    for k >= 1, m < p^k, i in 1..p-1

for a permutation G of {0..p-1} and permutations g_m of {1..p-1}.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd

from vdput.analysis import Verdict, check_compatible, check_measure_preserving
from vdput.errors import DomainMismatch, InvalidExponent, InvalidSubstitution, NotAUnit, NotCompatible
from vdput.padic import PadicInt, check_domain, check_table_size
from vdput.vdp import FunctionTable, VdpSeries, coefficients, normalize, scale, to_table


def _is_perm(seq, values) -> bool:
    return sorted(seq) == list(values)


@dataclass(frozen=True)
class SubstitutionFamily:
    """Substitution data (G, {g_m}) for precision K.

    ``G[i]`` is G(i).  ``g[k - 1][m][i - 1]`` is g_m(i) at level k, for
    k = 1..K-1, m < p^k and i = 1..p-1.
    """

    p: int
    K: int
    G: tuple[int, ...]
    g: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        check_domain(self.p, self.K)
        p = self.p
        object.__setattr__(self, "G", tuple(self.G))
        object.__setattr__(
            self, "g", tuple(tuple(tuple(perm) for perm in level) for level in self.g)
        )
        if not _is_perm(self.G, range(p)):
            raise InvalidSubstitution(f"G={self.G} is not a permutation of 0..{p - 1}")
        if len(self.g) != self.K - 1:
            raise InvalidSubstitution(f"need {self.K - 1} levels of g_m, got {len(self.g)}")
        for k, level in enumerate(self.g, start=1):
            if len(level) != p**k:
                raise InvalidSubstitution(f"level {k} needs {p**k} permutations, got {len(level)}")
            for m, perm in enumerate(level):
                if not _is_perm(perm, range(1, p)):
                    raise InvalidSubstitution(
                        f"g_{m} at level {k} = {perm} is not a permutation of 1..{p - 1}"
                    )

    @classmethod
    def per_level(cls, p: int, K: int, G, h) -> SubstitutionFamily:
        """Family with g_m = h[k - 1] for every base m at level k."""
        check_domain(p, K)
        h = [tuple(perm) for perm in h]
        if len(h) != K - 1:
            raise InvalidSubstitution(f"need {K - 1} per-level permutations, got {len(h)}")
        return cls(p, K, tuple(G), tuple((h[k - 1],) * p**k for k in range(1, K)))

    @classmethod
    def identity(cls, p: int, K: int) -> SubstitutionFamily:
        return cls.per_level(p, K, range(p), [tuple(range(1, p))] * (K - 1))

    def g_m(self, k: int, m: int, i: int) -> int:
        return self.g[k - 1][m][i - 1]


def build_xi(S: SubstitutionFamily) -> VdpSeries:
    p, K = S.p, S.K
    mod = p**K
    coeffs = [0] * check_table_size(p, K)
    coeffs[:p] = S.G
    for k in range(1, K):
        pk = p**k
        for m, perm in enumerate(S.g[k - 1]):
            for i, gi in enumerate(perm, start=1):
                coeffs[m + i * pk] = gi * pk % mod
    return VdpSeries(p, K, tuple(coeffs))


def _require_compatible(h: FunctionTable, name: str) -> None:
    v = check_compatible(h)
    if not v.outcome:
        raise NotCompatible(f"{name} is not compatible (witness m={v.witness.index})", v.witness.index)


def build_additive_mp(S: SubstitutionFamily, h: FunctionTable) -> FunctionTable:
    """Table of xi_S + p*h mod p^K."""
    if (h.p, h.K) != (S.p, S.K):
        raise DomainMismatch(f"h over Z/{h.p}^{h.K}, family over Z/{S.p}^{S.K}")
    _require_compatible(h, "h")
    xi = to_table(build_xi(S)).values
    p, mod = S.p, S.p**S.K
    return FunctionTable(p, S.K, tuple((a + p * b) % mod for a, b in zip(xi, h.values)))


def decompose_additive(f: FunctionTable) -> tuple[SubstitutionFamily, FunctionTable] | Verdict:
    """Split a measure-preserving f into (S, h) with f = xi_S + p*h.

    Each b_m is split as (b_m mod p) + p*bt_m using the lift of the residue in
    0..p-1.  The remainder h is returned reduced mod p^(K-1), the part of h that
    f determines; with this convention ``build_additive_mp`` inverts this
    function.  Returns the failing :class:`Verdict` if f is not
    measure-preserving at precision K.
    """
    verdict = check_measure_preserving(f)
    if not verdict.outcome:
        return verdict
    p, K = f.p, f.K
    b = normalize(coefficients(f))
    G = tuple(x % p for x in b[:p])
    g = tuple(
        tuple(tuple(b[m + i * p**k] % p for i in range(1, p)) for m in range(p**k))
        for k in range(1, K)
    )
    S = SubstitutionFamily(p, K, G, g)
    head = p ** (K - 1)
    h_coeffs = tuple(
        p ** scale(m, p) * ((bm - bm % p) // p) % head for m, bm in enumerate(b)
    )
    h = to_table(VdpSeries(p, K, h_coeffs))
    h = FunctionTable(p, K, tuple(v % head for v in h.values))
    return S, h


def power_substitution(p: int, s: int) -> tuple[int, ...]:
    """i -> i^s mod p on 1..p-1, which permutes the units iff gcd(s, p-1) = 1."""
    if gcd(s, p - 1) != 1:
        raise InvalidExponent(f"gcd({s}, {p - 1}) != 1; i^s does not permute 1..{p - 1}")
    return tuple(pow(i, s, p) for i in range(1, p))


def pseudo_constant(p: int, K: int) -> FunctionTable:
    """h(x) = sum_k x_k p^(2k), digits pushed past precision K dropped."""

    def h(x: int) -> int:
        total, k = 0, 0
        while x:
            x, d = divmod(x, p)
            total += d * p ** (2 * k)
            k += 1
        return total

    return FunctionTable.from_callable(p, K, h)


def example_section41(p: int, s: int, K: int) -> FunctionTable:
    """G(x_0) = p-1-x_0, g_m = (i -> i^s mod p) at every level, h pseudo-constant.

    So f(x) = (p-1-x_0) + sum_{k>=1} p^k (x_k^s mod p) + p * sum_k x_k p^(2k) mod p^K.
    """
    check_domain(p, K)
    unit_power = power_substitution(p, s)
    S = SubstitutionFamily.per_level(p, K, [p - 1 - x for x in range(p)], [unit_power] * (K - 1))
    return build_additive_mp(S, pseudo_constant(p, K))


def build_affine_mp(d: PadicInt, c: PadicInt, g: FunctionTable) -> FunctionTable:
    """x -> d + c*x + p*g(x) mod p^K, for a unit c and compatible g."""
    p, K = g.p, g.K
    for name, a in (("d", d), ("c", c)):
        if (a.p, a.K) != (p, K):
            raise DomainMismatch(f"{name} lives in Z/{a.p}^{a.K}, g in Z/{p}^{K}")
    if c.value % p == 0:
        raise NotAUnit(f"c = {c.value} is divisible by p = {p}")
    _require_compatible(g, "g")
    mod = p**K
    return FunctionTable(
        p, K, tuple((d.value + c.value * x + p * gx) % mod for x, gx in enumerate(g.values))
    )


def random_compatible(p: int, K: int, seed) -> FunctionTable:
    """Compatible table with each b_m uniform in [0, p^(K - scale(m)))."""
    check_domain(p, K)
    n = check_table_size(p, K)
    rng = random.Random(seed)
    coeffs = list(rng.randrange(p**K) for _ in range(p))
    for k in range(1, K):
        pk = p**k
        span = p ** (K - k)
        coeffs.extend(pk * rng.randrange(span) for _ in range(pk * (p - 1)))
    return to_table(VdpSeries(p, K, tuple(coeffs)))


def random_substitution_family(p: int, K: int, seed) -> SubstitutionFamily:
    check_domain(p, K)
    check_table_size(p, K)
    rng = random.Random(seed)

    def shuffled(values) -> tuple[int, ...]:
        out = list(values)
        rng.shuffle(out)
        return tuple(out)

    G = shuffled(range(p))
    g = tuple(tuple(shuffled(range(1, p)) for _ in range(p**k)) for k in range(1, K))
    return SubstitutionFamily(p, K, G, g)
