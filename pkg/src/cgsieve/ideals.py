"""
Ideals of Z[theta] as lattices in the coefficient embedding.

An ideal is stored by its lower-triangular HNF basis: row i has its last
nonzero entry on the diagonal, diagonal entries are positive and each
entry below a pivot lies in [0, pivot).  Two ideals are equal exactly when
their bases are equal.
"""

from dataclasses import dataclass

from .arith import factorize, smooth_part
from .errors import ZeroIdeal
from .factorbase import element_valuation, is_excluded, primes_above
from .lattice import lll, norm2
from .linalg import hnf
from .numfield import element_norm, exact_quotient, mul_mod, mult_matrix, signed_norm


def lower_hnf(rows):
    """Lower-triangular HNF (see module docstring) of the span of ``rows``."""
    rev = [list(reversed(r)) for r in rows if any(r)]
    if not rev:
        return []
    H = hnf(rev)
    return [list(reversed(r)) for r in reversed(H)]


@dataclass(frozen=True)
class IdealHNF:
    basis: tuple
    norm: int

    @property
    def n(self):
        return len(self.basis)

    def is_unit(self):
        return self.norm == 1

    def to_json(self):
        return {"hnf": [list(r) for r in self.basis], "norm": str(self.norm)}


def _from_rows(rows, n):
    B = lower_hnf(rows)
    if len(B) != n:
        raise ZeroIdeal("generators do not span a full-rank ideal")
    norm = 1
    for i in range(n):
        norm *= B[i][i]
    return IdealHNF(basis=tuple(tuple(r) for r in B), norm=norm)


def ideal_from_generators(field, gens):
    gens = [field.element(g) for g in gens]
    gens = [g for g in gens if any(g)]
    if not gens:
        raise ZeroIdeal("all generators are zero")
    rows = []
    for g in gens:
        rows.extend(mult_matrix(field, g))
    return _from_rows(rows, field.n)


def unit_ideal(field):
    return ideal_from_generators(field, [field.one])


def ideal_from_hnf(field, matrix):
    """Ideal whose Z-basis rows are given; the lattice is closed up under theta."""
    rows = []
    for r in matrix:
        rows.extend(mult_matrix(field, field.element(r)))
    return _from_rows(rows, field.n)


def is_ideal_lattice(field, a):
    """True when the lattice is closed under multiplication by theta."""
    return all(contains(a, mul_mod(field, r, field.theta)) for r in a.basis)


def prime_ideal_hnf(field, q):
    """HNF of (p, g(theta))."""
    p = (q.p,) + (0,) * (field.n - 1)
    return ideal_from_generators(field, [p, field.element(q.g)])


def multiply(field, a, b):
    rows = []
    for x in a.basis:
        for y in b.basis:
            rows.append(list(mul_mod(field, x, y)))
    # the product contains N(a) N(b) Z^n, which keeps the HNF entries small
    m = a.norm * b.norm
    for i in range(field.n):
        rows.append([m if j == i else 0 for j in range(field.n)])
    return _from_rows(rows, field.n)


def power(field, a, e):
    if e < 0:
        raise ValueError("negative ideal power")
    result = unit_ideal(field)
    base = a
    while e:
        if e & 1:
            result = multiply(field, result, base)
        e >>= 1
        if e:
            base = multiply(field, base, base)
    return result


def contains(a, x):
    """Membership of the element x in the lattice of a."""
    x = list(x)
    n = a.n
    for i in range(n - 1, -1, -1):
        row = a.basis[i]
        q, r = divmod(x[i], row[i])
        if r:
            return False
        if q:
            x = [u - q * v for u, v in zip(x, row)]
    return not any(x)


def is_subset(a, b):
    """a contained in b."""
    return all(contains(b, r) for r in a.basis)


def colon_principal(field, x0, a):
    """
    The integral ideal b with <x0> = a * b, for x0 in a.

    b = {z : z * a in <x0>}; membership of z * g in <x0> is tested as
    z * g * x' = 0 mod N(x0) with x' = N(x0) / x0 in Z[theta].
    """
    n = field.n
    N = element_norm(field, x0)
    if N == 1:
        return unit_ideal(field)
    xprime = _norm_cofactor(field, x0)
    cols = []
    for g in a.basis:
        c = mul_mod(field, g, xprime)
        M = mult_matrix(field, c)
        for j in range(n):
            cols.append([M[i][j] for i in range(n)])
    m = len(cols)
    # rows [C_z | I_n] and [N * I_m | 0]; kernel mod N in the last n columns
    rows = []
    for i in range(n):
        rows.append([cols[j][i] % N for j in range(m)] + [1 if k == i else 0 for k in range(n)])
    for j in range(m):
        rows.append([N if k == j else 0 for k in range(m)] + [0] * n)
    H = hnf(rows)
    sol = [r[m:] for r in H if not any(r[:m])]
    return _from_rows(sol, n)


def _norm_cofactor(field, x):
    """N(x)/x as an element of Z[theta] (signed norm)."""
    s = signed_norm(field, x)
    q = exact_quotient(field, (s,) + (0,) * (field.n - 1), x)
    if q is None:
        raise ArithmeticError("norm cofactor is not integral")
    return q


def reduce_ideal(field, a, delta=None):
    """
    LLL-reduce the coefficient lattice of a and return (x0, b) where x0 is
    the shortest reduced vector and <x0> = a * b.
    """
    basis = [list(r) for r in a.basis]
    red = lll(basis) if delta is None else lll(basis, delta)
    x0 = tuple(min(red, key=norm2))
    b = colon_principal(field, x0, a)
    return x0, b


def lll_contract_holds(field, a, x0):
    """||x0||^(2n) <= 2^(n(n-1)/2) * N(a)^2, evaluated exactly."""
    n = field.n
    return norm2(x0) ** n <= 2 ** (n * (n - 1) // 2) * a.norm**2


def cofactor_norm_holds(field, a, x0, b):
    """N(b) <= (n+1)^n H^n 2^(n(n-1)/4) N(a), squared to stay in integers."""
    n = field.n
    lhs = b.norm**4
    rhs = ((n + 1) ** n * field.height**n) ** 4 * 2 ** (n * (n - 1)) * a.norm**4
    return lhs <= rhs and b.norm * a.norm == element_norm(field, x0)


# ---------------------------------------------------------- valuations


def ideal_valuation(field, a, q):
    """v_q(a) = min over a Z-basis of the element valuations."""
    return min(element_valuation(field, q, r) for r in a.basis if any(r))


def factor_over_base(field, fb, a):
    """
    Exponent vector of a over fb, or None when a is not fb-smooth (its norm
    has a prime factor above B, touches an excluded prime, or part of it
    lies on prime ideals outside the base).
    """
    vec = [0] * len(fb.ideals)
    if a.norm == 1:
        return vec
    factors, rest = smooth_part(a.norm, fb.bound)
    if rest != 1:
        return None
    for p, vp in factors.items():
        if p in fb.excluded_primes:
            return None
        total = 0
        for i in fb.above(p):
            q = fb.ideals[i]
            v = ideal_valuation(field, a, q)
            vec[i] = v
            total += v * q.f
        if total != vp:
            return None
    return vec


def factor_ideal(field, a, budget=1 << 18):
    """
    Full prime-ideal factorization of a as {PrimeIdeal: exponent}, or None
    if the norm cannot be factored or touches a prime of index obstruction.
    """
    out = {}
    if a.norm == 1:
        return out
    facs, rest = factorize(a.norm, rho_iter=budget)
    if rest != 1:
        return None
    for p, vp in facs.items():
        if is_excluded(field, p):
            return None
        total = 0
        for q in primes_above(field, p):
            v = ideal_valuation(field, a, q)
            if v:
                out[q] = v
                total += v * q.f
        if total != vp:
            return None
    return out


def ideal_of_vector(field, fb, vec):
    """Product of base ideals with nonnegative exponents."""
    result = unit_ideal(field)
    for q, e in zip(fb.ideals, vec):
        if e < 0:
            raise ValueError("negative exponent")
        if e:
            result = multiply(field, result, power(field, prime_ideal_hnf(field, q), e))
    return result

