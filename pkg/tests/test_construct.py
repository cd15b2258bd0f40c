import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_lipschitz, brute_measure_preserving
from vdput.analysis import Condition, check_measure_preserving, oracle_measure_preserving
from vdput.construct import (
    SubstitutionFamily,
    build_additive_mp,
    build_affine_mp,
    build_xi,
    decompose_additive,
    example_section41,
    power_substitution,
    pseudo_constant,
    random_compatible,
    random_substitution_family,
)
from vdput.errors import (
    DomainMismatch,
    InvalidExponent,
    InvalidSubstitution,
    NotAUnit,
    NotCompatible,
)
from vdput.padic import PadicInt, digit, from_integer
from vdput.vdp import FunctionTable, chi, normalize, coefficients, scale, to_table

families = st.sampled_from([(2, 4), (3, 3), (5, 2), (7, 2)]).flatmap(
    lambda pk: st.integers(0, 2**32).map(lambda seed: random_substitution_family(*pk, seed))
)


def digits_of(x, p, K):
    return [x // p**k % p for k in range(K)]


def zero(p, K):
    return FunctionTable(p, K, (0,) * p**K)


class TestSubstitutionFamily:
    def test_rejects_bad_G(self):
        with pytest.raises(InvalidSubstitution):
            SubstitutionFamily.per_level(3, 2, (0, 0, 1), [(1, 2)])

    def test_rejects_zero_in_g(self):
        with pytest.raises(InvalidSubstitution):
            SubstitutionFamily.per_level(3, 2, (0, 1, 2), [(0, 2)])

    def test_rejects_wrong_level_count(self):
        with pytest.raises(InvalidSubstitution):
            SubstitutionFamily(3, 3, (0, 1, 2), (((1, 2),) * 3,))

    def test_p2_is_forced(self):
        S = random_substitution_family(2, 4, 0)
        assert all(perm == (1,) for level in S.g for perm in level)

    def test_dense_storage(self):
        S = random_substitution_family(3, 4, 0)
        assert [len(level) for level in S.g] == [3, 9, 27]


class TestXi:
    def test_identity_family_gives_identity(self):
        xi = to_table(build_xi(SubstitutionFamily.identity(3, 2)))
        assert xi.values == tuple(range(9))

    def test_p2_swap(self):
        S = SubstitutionFamily.per_level(2, 3, (1, 0), [(1,), (1,)])
        xi = to_table(build_xi(S))
        assert xi.values == tuple(x ^ 1 for x in range(8))
        assert brute_measure_preserving(xi)

    @given(families)
    def test_always_measure_preserving(self, S):
        xi = to_table(build_xi(S))
        assert check_measure_preserving(xi).outcome
        assert brute_measure_preserving(xi)

    @given(families)
    def test_coefficient_layout(self, S):
        s = build_xi(S)
        p, K = S.p, S.K
        assert s.coeffs[:p] == S.G
        for k in range(1, K):
            for m in range(p**k):
                for i in range(1, p):
                    assert s.coeffs[m + i * p**k] == S.g_m(k, m, i) * p**k % p**K


class TestAdditive:
    def test_zero_free_part(self):
        S = random_substitution_family(3, 3, 1)
        assert build_additive_mp(S, zero(3, 3)) == to_table(build_xi(S))

    def test_identity_plus_p_identity(self):
        h = FunctionTable.from_callable(3, 2, lambda x: x)
        f = build_additive_mp(SubstitutionFamily.identity(3, 2), h)
        assert f.values == tuple(4 * x % 9 for x in range(9))
        assert brute_measure_preserving(f)

    def test_rejects_incompatible_h(self):
        h = FunctionTable(2, 3, (0, 1, 1, 3, 4, 5, 6, 7))
        with pytest.raises(NotCompatible):
            build_additive_mp(random_substitution_family(2, 3, 0), h)

    def test_rejects_domain_mismatch(self):
        with pytest.raises(DomainMismatch):
            build_additive_mp(random_substitution_family(2, 3, 0), zero(2, 4))

    @settings(max_examples=200)
    @given(families, st.integers(0, 2**32))
    def test_soundness(self, S, seed):
        f = build_additive_mp(S, random_compatible(S.p, S.K, seed))
        assert check_measure_preserving(f).outcome
        assert brute_measure_preserving(f)

    def test_completeness_p2_k2(self):
        all_tables = (FunctionTable(2, 2, v) for v in itertools.product(range(4), repeat=4))
        mp = {f.values for f in all_tables if brute_lipschitz(f) and brute_measure_preserving(f)}
        compatible_h = [
            FunctionTable(2, 2, v)
            for v in itertools.product(range(4), repeat=4)
            if brute_lipschitz(FunctionTable(2, 2, v))
        ]
        families_2 = [SubstitutionFamily.per_level(2, 2, G, [(1,)]) for G in ((0, 1), (1, 0))]
        built = {build_additive_mp(S, h).values for S in families_2 for h in compatible_h}
        assert len(mp) == 8
        assert built == mp


class TestDecompose:
    def test_identity(self):
        S, h = decompose_additive(FunctionTable.from_callable(3, 2, lambda x: x))
        assert S == SubstitutionFamily.identity(3, 2)
        assert h == zero(3, 2)

    def test_not_measure_preserving(self):
        v = decompose_additive(FunctionTable.from_callable(2, 3, lambda x: 2 * x))
        assert v.condition is Condition.MP_COND1

    @given(families, st.integers(0, 2**32))
    def test_build_after_decompose(self, S, seed):
        f = build_additive_mp(S, random_compatible(S.p, S.K, seed))
        S2, h2 = decompose_additive(f)
        assert build_additive_mp(S2, h2) == f

    @given(families, st.integers(0, 2**32))
    def test_decompose_after_build_with_canonical_h(self, S, seed):
        head = S.p ** (S.K - 1)
        h = random_compatible(S.p, S.K, seed)
        h = FunctionTable(S.p, S.K, tuple(v % head for v in h.values))
        assert decompose_additive(build_additive_mp(S, h)) == (S, h)

    @given(families, st.integers(0, 2**32))
    def test_remainder_is_quotient(self, S, seed):
        f = build_additive_mp(S, random_compatible(S.p, S.K, seed))
        S2, h2 = decompose_additive(f)
        xi = to_table(build_xi(S2)).values
        mod = f.modulus
        assert h2.values == tuple((a - b) % mod // S.p for a, b in zip(f.values, xi))


class TestExample41:
    @staticmethod
    def direct(p, s, K):
        """Digit formula (p-1-x_0) + sum p^k (x_k^s mod p) + p sum x_k p^(2k)."""

        def f(x):
            d = digits_of(x, p, K)
            xi = (p - 1 - d[0]) + sum(p**k * (pow(d[k], s, p) if d[k] else 0) for k in range(1, K))
            h = sum(d[k] * p ** (2 * k) for k in range(K))
            return xi + p * h

        return FunctionTable.from_callable(p, K, f)

    @pytest.mark.parametrize("p, s, K", [(3, 1, 3), (2, 1, 5), (5, 3, 2), (5, 3, 3), (7, 5, 2)])
    def test_matches_digit_formula(self, p, s, K):
        f = example_section41(p, s, K)
        assert f == self.direct(p, s, K)
        assert check_measure_preserving(f).outcome
        assert brute_measure_preserving(f)

    def test_leading_terms_collapse(self):
        # G(x_0) + p x_0 = (p-1)(1 + x_0), the constant part of the closed form.
        p, K = 5, 3
        f = example_section41(p, 3, K)
        for x0 in range(p):
            assert f[x0] % p**2 == (p - 1) * (1 + x0) % p**2

    def test_cubes_mod_5(self):
        assert power_substitution(5, 3) == (1, 3, 2, 4)

    def test_p2_is_degenerate(self):
        assert power_substitution(2, 1) == (1,)
        f = example_section41(2, 1, 1)
        assert f.values == (1, 0)

    @pytest.mark.parametrize("p, s", [(5, 2), (7, 3), (3, 2)])
    def test_bad_exponent(self, p, s):
        with pytest.raises(InvalidExponent):
            example_section41(p, s, 2)

    def test_pseudo_constant(self):
        h = pseudo_constant(3, 4)
        assert h[1 + 2 * 3] == 1 + 2 * 9
        assert h[3**3] == 0
        assert brute_lipschitz(h)


def test_indicator_identity_small():
    # Full sweep lives in the acceptance suite.
    for p, K in [(2, 4), (3, 3), (5, 2)]:
        for k in range(1, K):
            for i in range(1, p):
                for x in range(p**K):
                    pt = PadicInt(p, K, x)
                    total = sum(chi(m + i * p**k, pt) for m in range(p**k))
                    assert total == int(digit(pt, k) == i)


class TestAffine:
    def test_identity(self):
        f = build_affine_mp(from_integer(0, 3, 2), from_integer(1, 3, 2), zero(3, 2))
        assert f.values == tuple(range(9))

    def test_shift(self):
        f = build_affine_mp(from_integer(2, 2, 4), from_integer(1, 2, 4), zero(2, 4))
        assert f == FunctionTable.from_callable(2, 4, lambda x: x + 2)
        assert brute_measure_preserving(f)

    def test_with_square(self):
        g = FunctionTable.from_callable(3, 3, lambda x: x * x)
        f = build_affine_mp(from_integer(1, 3, 3), from_integer(4, 3, 3), g)
        assert brute_measure_preserving(f)
        assert check_measure_preserving(f).outcome

    def test_non_unit(self):
        with pytest.raises(NotAUnit):
            build_affine_mp(from_integer(1, 3, 2), from_integer(6, 3, 2), zero(3, 2))

    def test_incompatible_g(self):
        g = FunctionTable(2, 2, (0, 1, 3, 2))
        with pytest.raises(NotCompatible):
            build_affine_mp(from_integer(0, 2, 2), from_integer(1, 2, 2), g)


class TestRandom:
    def test_deterministic(self):
        assert random_compatible(3, 3, 42) == random_compatible(3, 3, 42)
        assert random_substitution_family(5, 3, 42) == random_substitution_family(5, 3, 42)
        assert random_compatible(3, 3, 42) != random_compatible(3, 3, 43)

    @given(st.sampled_from([(2, 5), (3, 3), (5, 2)]), st.integers(0, 2**32))
    def test_normalized_ranges(self, pk, seed):
        p, K = pk
        b = normalize(coefficients(random_compatible(p, K, seed)))
        assert all(0 <= bm < p ** (K - scale(m, p)) for m, bm in enumerate(b))
