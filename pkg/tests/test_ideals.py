import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cgsieve import ideals as I
from cgsieve.errors import ZeroIdeal
from cgsieve.factorbase import build_factor_base, primes_above
from cgsieve.lattice import babai_reduce, gram_schmidt, is_lll_reduced, lll, norm2
from cgsieve.numfield import element_norm, make_field, mul_mod

FIELDS = [[5, 0, 1], [6, 1, 1], [-1, -1, 0, 1], [2, 0, 0, 0, 1], [-3, 1, 0, 0, 0, 1]]


def random_ideal(rng, f, gens=2, H=9):
    while True:
        xs = [tuple(rng.randint(-H, H) for _ in range(f.n)) for _ in range(gens)]
        if any(any(x) for x in xs):
            return I.ideal_from_generators(f, xs)


def test_ideal_examples(f5):
    u = I.ideal_from_generators(f5, [(1, 0)])
    assert u.basis == ((1, 0), (0, 1)) and u.norm == 1
    a = I.ideal_from_generators(f5, [(2, 0), (1, 1)])
    assert a.basis == ((2, 0), (1, 1)) and a.norm == 2
    t = I.ideal_from_generators(f5, [(0, 1)])
    assert t.basis == ((5, 0), (0, 1)) and t.norm == 5
    with pytest.raises(ZeroIdeal):
        I.ideal_from_generators(f5, [(0, 0)])


def test_ideal_from_hnf_roundtrip(f5):
    a = I.ideal_from_generators(f5, [(2, 0), (1, 1)])
    assert I.ideal_from_hnf(f5, a.basis) == a
    assert I.is_ideal_lattice(f5, a)


@pytest.mark.parametrize("T", FIELDS)
def test_principal_norm_and_closure(T):
    f = make_field(T)
    rng = random.Random(len(T))
    for _ in range(40):
        x = tuple(rng.randint(-9, 9) for _ in range(f.n))
        if not any(x):
            continue
        a = I.ideal_from_generators(f, [x])
        assert a.norm == element_norm(f, x)
        assert I.is_ideal_lattice(f, a)
        assert I.contains(a, x)


@pytest.mark.parametrize("T", FIELDS)
def test_multiply_matches_generators(T):
    f = make_field(T)
    rng = random.Random(7)
    for _ in range(20):
        xs = [tuple(rng.randint(-5, 5) for _ in range(f.n)) for _ in range(2)]
        ys = [tuple(rng.randint(-5, 5) for _ in range(f.n)) for _ in range(2)]
        if not any(map(any, xs)) or not any(map(any, ys)):
            continue
        a, b = I.ideal_from_generators(f, xs), I.ideal_from_generators(f, ys)
        prod = I.ideal_from_generators(f, [mul_mod(f, x, y) for x in xs for y in ys])
        assert I.multiply(f, a, b) == prod == I.multiply(f, b, a)
        assert prod.norm == a.norm * b.norm


def test_prime_ideal_product_is_p(cubic):
    for p in (2, 3, 5, 7, 11, 23):
        prod = I.unit_ideal(cubic)
        for q in primes_above(cubic, p):
            Q = I.prime_ideal_hnf(cubic, q)
            assert Q.norm == q.norm
            prod = I.multiply(cubic, prod, I.power(cubic, Q, q.e))
        assert prod == I.ideal_from_generators(cubic, [(p, 0, 0)])


def test_randomize_product_example(f5):
    a = I.ideal_from_generators(f5, [(2, 0), (1, 1)])
    q3 = I.ideal_from_generators(f5, [(3, 0), (1, 1)])
    b = I.multiply(f5, a, q3)
    assert b.norm == 6
    oracle = I.ideal_from_generators(f5, [mul_mod(f5, x, y) for x in [(2, 0), (1, 1)] for y in [(3, 0), (1, 1)]])
    assert b == oracle


def test_reduce_ideal_examples(f5):
    a = I.ideal_from_generators(f5, [(2, 0), (1, 1)])
    x0, b = I.reduce_ideal(f5, a)
    assert norm2(x0) == 2 and x0 in {(1, 1), (-1, -1), (1, -1), (-1, 1)}
    assert b.norm == 3
    x0, b = I.reduce_ideal(f5, I.unit_ideal(f5))
    assert x0 in {(1, 0), (-1, 0)} and b.norm == 1


@pytest.mark.parametrize("T", FIELDS)
def test_reduce_contract_and_bookkeeping(T):
    f = make_field(T)
    rng = random.Random(100 + len(T))
    for _ in range(40):
        a = random_ideal(rng, f)
        x0, b = I.reduce_ideal(f, a)
        assert I.lll_contract_holds(f, a, x0)
        assert I.cofactor_norm_holds(f, a, x0, b)
        assert I.multiply(f, a, b) == I.ideal_from_generators(f, [x0])


def test_reduce_principal_small(f5):
    rng = random.Random(1)
    n, H = f5.n, f5.height
    for _ in range(100):
        x = (rng.randint(-9, 9), rng.randint(-9, 9))
        if not any(x):
            continue
        a = I.ideal_from_generators(f5, [x])
        x0, b = I.reduce_ideal(f5, a)
        bound = (n + 1) ** n * H**n * 2 ** Fraction(n * (n - 1), 4)
        assert b.norm <= bound


@pytest.mark.parametrize("T", FIELDS[:3])
def test_factor_ideal_roundtrip(T):
    f = make_field(T)
    fb = build_factor_base(f, 50)
    rng = random.Random(3)
    for _ in range(30):
        a = random_ideal(rng, f, gens=1)
        fac = I.factor_ideal(f, a)
        assert fac is not None
        prod = I.unit_ideal(f)
        for q, e in fac.items():
            prod = I.multiply(f, prod, I.power(f, I.prime_ideal_hnf(f, q), e))
        assert prod == a
        v = I.factor_over_base(f, fb, a)
        if v is not None:
            assert I.ideal_of_vector(f, fb, v) == a


def test_colon_principal_divides(cubic):
    rng = random.Random(4)
    for _ in range(30):
        a = random_ideal(rng, cubic)
        x = a.basis[rng.randrange(3)]
        b = I.colon_principal(cubic, x, a)
        assert I.multiply(cubic, a, b) == I.ideal_from_generators(cubic, [x])


# ------------------------------------------------------------------ LLL


def _brute_shortest(basis, R=4):
    best = None
    for c in itertools.product(range(-R, R + 1), repeat=len(basis)):
        if any(c):
            v = [sum(ci * b[j] for ci, b in zip(c, basis)) for j in range(len(basis[0]))]
            if best is None or norm2(v) < best:
                best = norm2(v)
    return best


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-30, 30), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_lll_properties(B):
    from oracles import int_det

    d = int_det(B)
    if d == 0:
        return
    R = lll(B)
    assert abs(int_det(R)) == abs(d)
    assert is_lll_reduced(R)
    n = len(B)
    # first vector within 2^((n-1)/2) of any lattice vector's length
    assert norm2(R[0]) ** n <= 2 ** (n * (n - 1) // 2) * d**2


def test_lll_first_vector_near_shortest():
    rng = random.Random(2)
    for _ in range(40):
        B = [[rng.randint(-20, 20) for _ in range(3)] for _ in range(3)]
        from oracles import int_det

        if int_det(B) == 0:
            continue
        R = lll(B)
        assert norm2(R[0]) <= 4 * _brute_shortest(R, R=3)


def test_gram_schmidt_orthogonal():
    B = [[3, 1, 2], [1, 4, 1], [0, 2, 5]]
    Bs, mu = gram_schmidt(B)
    for i in range(3):
        for j in range(i):
            assert sum(a * b for a, b in zip(Bs[i], Bs[j])) == 0


def test_babai_stays_in_coset():
    B = lll([[7, 1, 0], [2, 9, 1], [1, 1, 11]])
    x = [100, -57, 33]
    y = babai_reduce(B, x)
    diff = [a - b for a, b in zip(x, y)]
    from oracles import in_row_lattice

    assert in_row_lattice(B, diff)
    assert norm2(y) <= norm2(x)
