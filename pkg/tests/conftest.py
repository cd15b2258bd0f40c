import itertools

import pytest
from hypothesis import strategies as st

from vdput.construct import random_compatible
from vdput.vdp import FunctionTable

DESK_DOMAINS = [(2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)]


def brute_lipschitz(f: FunctionTable) -> bool:
    """|f(x) - f(y)|_p <= |x - y|_p for every pair of representatives."""
    p, K = f.p, f.K
    mod = p**K

    def v(n):
        n %= mod
        if n == 0:
            return K
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        return k

    n = len(f)
    return all(
        v(f[x] - f[y]) >= v(x - y) for x, y in itertools.combinations(range(n), 2)
    )


def brute_permutation_mod(f: FunctionTable, k: int) -> bool:
    q = f.p**k
    return len({f[x] % q for x in range(q)}) == q


def brute_measure_preserving(f: FunctionTable) -> bool:
    return all(brute_permutation_mod(f, k) for k in range(1, f.K + 1))


@st.composite
def domains(draw, choices=DESK_DOMAINS):
    return draw(st.sampled_from(choices))


@st.composite
def arbitrary_tables(draw, choices=DESK_DOMAINS):
    p, K = draw(domains(choices))
    mod = p**K
    values = draw(st.lists(st.integers(0, mod - 1), min_size=mod, max_size=mod))
    return FunctionTable(p, K, tuple(values))


@st.composite
def compatible_tables(draw, choices=DESK_DOMAINS):
    p, K = draw(domains(choices))
    return random_compatible(p, K, draw(st.integers(0, 2**32)))


@pytest.fixture
def identity8():
    return FunctionTable.from_callable(2, 3, lambda x: x)
