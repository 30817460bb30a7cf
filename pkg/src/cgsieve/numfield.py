"""
Arithmetic in the order Z[theta] of K = Q(theta), theta a root of a monic T.

Elements are tuples of n integers (a_0, ..., a_{n-1}) standing for
sum a_i theta^i.  Norms are computed as resultants.
"""

import json
import logging
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from sympy import Poly, symbols

from . import poly
from .arith import ceil_sqrt, factorize, primes_up_to
from .errors import DegreeTooSmall, InputError, NotMonic, Reducible, ZeroElement, ZeroPolynomial

log = logging.getLogger(__name__)


# ------------------------------------------------------------ resultants


def _resultant_standard(a, b):
    # Collins/Brown subresultant PRS (Cohen, Alg. 3.3.7); lc(a)^deg b * prod b(alpha)
    da, db = poly.degree(a), poly.degree(b)
    s = 1
    if da < db:
        a, b = b, a
        da, db = db, da
        if da % 2 and db % 2:
            s = -s
    if db == 0:
        return s * b[0] ** da
    ca, cb = poly.content(a), poly.content(b)
    a = poly.exact_div_scalar(a, ca) if ca != 1 else list(a)
    b = poly.exact_div_scalar(b, cb) if cb != 1 else list(b)
    t = ca**db * cb**da
    g = h = 1
    while True:
        delta = poly.degree(a) - poly.degree(b)
        if poly.degree(a) % 2 and poly.degree(b) % 2:
            s = -s
        r = poly.pseudo_rem(a, b)
        a = b
        if not r:
            return 0
        b = poly.exact_div_scalar(r, g * h**delta)
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = g**delta // h ** (delta - 1)
        if poly.degree(b) == 0:
            break
    da = poly.degree(a)
    hh = b[0] ** da
    if da >= 1:
        hh = hh // h ** (da - 1)
    else:
        hh = hh * h
    return s * t * hh


def resultant(a, b):
    """
    Res(A, B) = lc(B)^deg(A) * prod of A over the roots of B.

    With monic B = T this is exactly the signed field norm of A(theta).
    """
    a, b = poly.strip(a), poly.strip(b)
    if not a or not b:
        raise ZeroPolynomial("resultant of the zero polynomial")
    sign = -1 if (poly.degree(a) * poly.degree(b)) % 2 else 1
    return sign * _resultant_standard(a, b)


def bareiss_det(m):
    """Fraction-free determinant of a square integer matrix."""
    m = [list(r) for r in m]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def sylvester_matrix(a, b):
    da, db = poly.degree(a), poly.degree(b)
    size = da + db
    rows = []
    ra = list(reversed(a))
    rb = list(reversed(b))
    for i in range(db):
        rows.append([0] * i + ra + [0] * (size - da - 1 - i))
    for i in range(da):
        rows.append([0] * i + rb + [0] * (size - db - 1 - i))
    return rows


def sylvester_resultant(a, b):
    """Resultant via the Sylvester determinant, same sign convention as resultant()."""
    a, b = poly.strip(a), poly.strip(b)
    if not a or not b:
        raise ZeroPolynomial("resultant of the zero polynomial")
    sign = -1 if (poly.degree(a) * poly.degree(b)) % 2 else 1
    return sign * bareiss_det(sylvester_matrix(a, b))


# ------------------------------------------------------- irreducibility


def _subset_sums(degs):
    sums = {0}
    for d in degs:
        sums |= {s + d for s in sums}
    return sums


def is_irreducible(t, nprimes=40):
    """
    Irreducibility of a primitive integer polynomial over Q.

    Degree patterns modulo several primes are tried first; if they do not
    certify, sympy's factorization decides.
    """
    t = poly.strip(t)
    n = poly.degree(t)
    if n <= 0:
        return False
    if n == 1:
        return poly.content(t) == 1
    if t[0] == 0 or poly.evaluate(t, 1) == 0 or poly.evaluate(t, -1) == 0:
        return False
    disc = resultant(t, poly.derivative(t))
    if disc == 0:
        return False
    possible = set(range(n + 1))
    used = 0
    for p in primes_up_to(2000):
        if t[-1] % p == 0 or disc % p == 0:
            continue
        degs = poly.fp_degree_pattern(t, p)
        possible &= _subset_sums(degs)
        used += 1
        if possible <= {0, n}:
            return True
        if used >= nprimes:
            break
    x = symbols("x")
    return bool(Poly(list(reversed(t)), x).is_irreducible)


# --------------------------------------------------------- Dedekind test


def dedekind_defect(t, p):
    """
    Degree of U = gcd(F, G, H) mod p from Dedekind's criterion.

    Zero means Z[theta] is p-maximal; otherwise the index of Z[theta] in
    the p-maximal overorder is p^deg U.
    """
    facs = poly.fp_factor(t, p)
    g = [1]
    for gi, _ in facs:
        g = poly.fp_mul(g, gi, p)
    tbar = poly.fp(t, p)
    h = poly.fp_divmod(tbar, g, p)[0]
    # g*h = t mod p, so the lifted difference is divisible by p
    f = poly.exact_div_scalar(poly.sub(poly.mul(g, h), t), p)
    u = poly.fp_gcd(poly.fp(f, p), g, p)
    u = poly.fp_gcd(u, h, p)
    return poly.degree(u)


# --------------------------------------------------------------- fields


@dataclass(frozen=True)
class NumberField:
    T: tuple
    n: int
    height: int
    disc_T: int
    abs_disc: int
    disc_is_upper_bound: bool
    label: str = ""
    nonmaximal_primes: tuple = dc_field(default=(), compare=False)

    @property
    def one(self):
        return (1,) + (0,) * (self.n - 1)

    @property
    def theta(self):
        return (0, 1) + (0,) * (self.n - 2)

    def element(self, coeffs):
        c = list(coeffs)
        if len(c) > self.n:
            c = poly.rem_monic(poly.strip(c), list(self.T))
        return tuple(c) + (0,) * (self.n - len(c))

    def to_json(self):
        return {"T": list(self.T), "label": self.label}


def _abs_disc(t, disc, budget):
    facs, rest = factorize(disc, rho_iter=budget)
    absd = abs(disc)
    upper = rest != 1
    bad = []
    for p, e in facs.items():
        if e < 2:
            continue
        d = dedekind_defect(t, p)
        if d:
            bad.append(p)
            absd //= p ** (2 * d)
            upper = True
    return absd, upper, tuple(bad)


def make_field(T, label="", factor_budget=1 << 18):
    t = poly.strip([int(c) for c in T])
    if poly.degree(t) < 2:
        raise DegreeTooSmall(f"degree {poly.degree(t)} < 2")
    if t[-1] != 1:
        raise NotMonic(f"leading coefficient {t[-1]} != 1")
    n = poly.degree(t)
    disc = resultant(t, poly.derivative(t))
    if (n * (n - 1) // 2) % 2:
        disc = -disc
    if disc == 0 or not is_irreducible(t):
        raise Reducible(f"T = {t} is reducible over Q")
    absd, upper, bad = _abs_disc(t, disc, factor_budget)
    if absd < 3:
        absd = 3
    return NumberField(
        T=tuple(t),
        n=n,
        height=max(abs(c) for c in t),
        disc_T=disc,
        abs_disc=absd,
        disc_is_upper_bound=upper,
        label=label,
        nonmaximal_primes=bad,
    )


def load_field(path):
    try:
        with open(path) as f:
            data = json.load(f)
        T = data["T"]
        if not isinstance(T, list) or not all(isinstance(c, int) for c in T):
            raise InputError("'T' must be a list of integers")
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot read field file {path}: {exc}") from exc
    return make_field(T, label=str(data.get("label", "")))


# ------------------------------------------------------------- elements


def _check_nonzero(x):
    if not any(x):
        raise ZeroElement("zero element")


def signed_norm(field, x):
    _check_nonzero(x)
    return resultant(poly.strip(x), list(field.T))


def element_norm(field, x):
    """Absolute norm |Res(A, T)|, i.e. the norm of the principal ideal <x>."""
    return abs(signed_norm(field, x))


def norm_bound(field, t, S):
    """ceil( sqrt(t+1)^n sqrt(n+1)^t H(T)^t S^n ), evaluated exactly."""
    n = field.n
    return ceil_sqrt((t + 1) ** n * (n + 1) ** t * field.height ** (2 * t) * S ** (2 * n))


def mul_mod(field, x, y):
    return field.element(poly.rem_monic(poly.mul(poly.strip(x), poly.strip(y)), list(field.T)))


def pow_mod(field, x, e):
    result = field.one
    base = tuple(x)
    while e:
        if e & 1:
            result = mul_mod(field, result, base)
        e >>= 1
        if e:
            base = mul_mod(field, base, base)
    return result


def mult_matrix(field, x):
    """Rows are the coefficient vectors of x * theta^i, i < n."""
    rows = []
    cur = field.element(x)
    for _ in range(field.n):
        rows.append(list(cur))
        cur = mul_mod(field, cur, field.theta)
    return rows


def exact_quotient(field, x, y):
    """x / y as an element of Z[theta] when the quotient is integral, else None."""
    _check_nonzero(y)
    m = [[Fraction(v) for v in row] for row in mult_matrix(field, y)]
    n = field.n
    # solve z * M = x over Q
    aug = [[m[j][i] for j in range(n)] + [Fraction(x[i])] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                k = aug[r][col]
                aug[r] = [a - k * b for a, b in zip(aug[r], aug[col])]
    z = [aug[i][n] for i in range(n)]
    if any(v.denominator != 1 for v in z):
        return None
    return tuple(int(v) for v in z)


def height(x):
    return max((abs(c) for c in x), default=0)
