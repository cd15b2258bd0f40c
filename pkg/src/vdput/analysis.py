"""Decision procedures for compatibility and Haar-measure preservation.

Two independent routes decide measure preservation of a compatible table at
precision K:

* the coefficient criterion (:func:`check_measure_preserving`): the first p
  normalized coefficients are a complete residue system mod p, and for every
  level 1 <= k < K and base m < p^k the residues of b_{m + i p^k}
  (i = 1..p-1) are exactly the nonzero residues mod p;
* the permutation oracle (:func:`oracle_measure_preserving`): x -> f(x) mod p^k
  is a permutation of Z/p^k Z for every k = 1..K.

A positive verdict is a statement about the precision-K truncation only.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from vdput.errors import InvalidThreshold, NotCompatible, PrecisionExceeded, WrongPrime
from vdput.padic import int_valuation
from vdput.vdp import CompatibilityWitness, FunctionTable, coefficients, normalize, scale

REPRESENTATIVE_ONLY = "REPRESENTATIVE_ONLY"


class Condition(str, Enum):
    COMPAT = "COMPAT"
    MP_COND1 = "MP_COND1"
    MP_COND2 = "MP_COND2"
    BIJ_MOD_PK = "BIJ_MOD_PK"


@dataclass(frozen=True)
class Witness:
    """Location of a violation. Which fields are set depends on the condition.

    COMPAT: ``index`` (and ``residues`` = (valuation, required scale)).
    MP_COND1: ``pair`` (i, j) with b_i = b_j mod p, ``residues`` = b_0..b_{p-1} mod p.
    MP_COND2: ``level`` k, ``base`` m, ``residues`` = b_{m+i p^k} mod p for i = 1..p-1.
    BIJ_MOD_PK: ``level`` k and colliding ``pair`` (x, y).
    """

    index: int | None = None
    level: int | None = None
    base: int | None = None
    pair: tuple[int, int] | None = None
    residues: tuple[int, ...] | None = None


@dataclass(frozen=True)
class Verdict:
    outcome: bool
    condition: Condition | None = None
    witness: Witness | None = None
    precision: int | None = None
    qualifier: str | None = None

    def __bool__(self) -> bool:
        return self.outcome


@dataclass(frozen=True)
class BranchMap:
    """h -> b_{base + h p^k} mod p on {0..p-1}, with h = 0 sent to 0."""

    base: int
    level: int
    map: tuple[int, ...]

    def is_nonzero_permutation(self) -> bool:
        return sorted(self.map[1:]) == list(range(1, len(self.map)))


def _passed(K: int, qualifier: str | None = None) -> Verdict:
    return Verdict(True, precision=K, qualifier=qualifier)


def _compat_failure(w: CompatibilityWitness, K: int) -> Verdict:
    return Verdict(
        False,
        Condition.COMPAT,
        Witness(index=w.m, residues=(w.valuation, w.scale)),
        precision=K,
    )


def check_compatible(f: FunctionTable) -> Verdict:
    b = normalize(coefficients(f))
    if isinstance(b, CompatibilityWitness):
        return _compat_failure(b, f.K)
    return _passed(f.K)


def branch_digit_map(b, base: int, k: int, p: int) -> BranchMap:
    """Branch map of the normalized coefficients ``b`` (length p^K) at (base, level k)."""
    K = scale(len(b) - 1, p) + 1
    if not 1 <= k < K:
        raise PrecisionExceeded(f"level k={k} outside [1, {K})")
    pk = p**k
    if not 0 <= base < pk:
        raise PrecisionExceeded(f"base point {base} outside [0, {pk})")
    return BranchMap(base, k, (0,) + tuple(b[base + h * pk] % p for h in range(1, p)))


def _first_cond1(b, p: int) -> Witness | None:
    seen: dict[int, int] = {}
    for i in range(p):
        r = b[i] % p
        if r in seen:
            return Witness(pair=(seen[r], i), residues=tuple(x % p for x in b[:p]))
        seen[r] = i
    return None


def _first_cond2(b, p: int, K: int, k_from: int = 1) -> Witness | None:
    nonzero = list(range(1, p))
    for k in range(k_from, K):
        pk = p**k
        for m in range(pk):
            res = [b[m + i * pk] % p for i in range(1, p)]
            if sorted(res) != nonzero:
                return Witness(level=k, base=m, residues=tuple(res))
    return None


def check_measure_preserving(f: FunctionTable) -> Verdict:
    b = normalize(coefficients(f))
    if isinstance(b, CompatibilityWitness):
        return _compat_failure(b, f.K)
    w = _first_cond1(b, f.p)
    if w is not None:
        return Verdict(False, Condition.MP_COND1, w, precision=f.K)
    w = _first_cond2(b, f.p, f.K)
    if w is not None:
        return Verdict(False, Condition.MP_COND2, w, precision=f.K)
    return _passed(f.K)


def check_measure_preserving_local(f: FunctionTable, N: int) -> Verdict:
    """Criterion for functions that are 1-Lipschitz from level N upward.

    Requires p^scale(m) | B_m only for m >= p^N, bijectivity of f mod p^N
    (checked by enumeration), and the nonzero-residue condition on every level
    k = N..K-1.  Below level N the coefficients are unconstrained.
    """
    p, K = f.p, f.K
    if not isinstance(N, int) or not 1 <= N < K:
        raise InvalidThreshold(f"threshold N={N!r} must satisfy 1 <= N < K={K}")
    B = coefficients(f).coeffs
    b = list(B)
    k, pk = N, p**N
    for m in range(p**N, len(B)):
        if m == pk * p:
            k, pk = k + 1, pk * p
        if B[m] % pk:
            return _compat_failure(
                CompatibilityWitness(m, int_valuation(B[m], p, K), k), K
            )
        b[m] = B[m] // pk
    low = oracle_bijective_mod(f, N)
    if not low.outcome:
        return Verdict(False, Condition.BIJ_MOD_PK, low.witness, precision=K)
    w = _first_cond2(b, p, K, k_from=N)
    if w is not None:
        return Verdict(False, Condition.MP_COND2, w, precision=K)
    return _passed(K)


def check_mp_p2(f: FunctionTable) -> Verdict:
    """Dyadic criterion: b_0 + b_1 odd and b_m odd for every m >= 2.

    Works directly on the values with bit arithmetic; shares no code with
    :func:`check_measure_preserving` so the two can cross-check each other.
    """
    if f.p != 2:
        raise WrongPrime(f"check_mp_p2 needs p = 2, got p = {f.p}")
    v, K = f.values, f.K
    mask = (1 << K) - 1
    odd_failure = None
    for m in range(2, len(v)):
        s = m.bit_length() - 1
        B = (v[m] - v[m ^ (1 << s)]) & mask
        low = B & ((1 << s) - 1)
        if low:
            val = (low & -low).bit_length() - 1
            return Verdict(
                False, Condition.COMPAT, Witness(index=m, residues=(val, s)), precision=K
            )
        if odd_failure is None and not (B >> s) & 1:
            odd_failure = Witness(level=s, base=m ^ (1 << s), residues=(0,))
    if not (v[0] + v[1]) & 1:
        return Verdict(
            False,
            Condition.MP_COND1,
            Witness(pair=(0, 1), residues=(v[0] & 1, v[1] & 1)),
            precision=K,
        )
    if odd_failure is not None:
        return Verdict(False, Condition.MP_COND2, odd_failure, precision=K)
    return _passed(K)


def _well_defined_mod(f: FunctionTable, k: int) -> bool:
    q = f.p**k
    v = f.values
    return all((v[x] - v[x % q]) % q == 0 for x in range(q, len(v)))


def oracle_bijective_mod(f: FunctionTable, k: int) -> Verdict:
    """Enumerate x < p^k and test that f(x) mod p^k hits every residue once.

    If f mod p^k is not a function of x mod p^k (f not compatible at level k)
    the verdict only describes the representatives and carries the
    REPRESENTATIVE_ONLY qualifier.
    """
    if not 1 <= k <= f.K:
        raise PrecisionExceeded(f"level k={k} outside [1, {f.K}]")
    q = f.p**k
    qualifier = None if _well_defined_mod(f, k) else REPRESENTATIVE_ONLY
    seen: dict[int, int] = {}
    for x in range(q):
        r = f.values[x] % q
        if r in seen:
            return Verdict(
                False,
                Condition.BIJ_MOD_PK,
                Witness(level=k, pair=(seen[r], x)),
                precision=f.K,
                qualifier=qualifier,
            )
        seen[r] = x
    return _passed(f.K, qualifier)


def oracle_measure_preserving(f: FunctionTable) -> Verdict:
    compat = check_compatible(f)
    if not compat.outcome:
        raise NotCompatible(
            "oracle_measure_preserving requires a compatible function",
            compat.witness.index,
        )
    for k in range(1, f.K + 1):
        v = oracle_bijective_mod(f, k)
        if not v.outcome:
            return v
    return _passed(f.K)
