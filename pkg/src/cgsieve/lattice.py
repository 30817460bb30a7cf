"""LLL reduction in exact integer arithmetic and nearest-plane size reduction."""

from fractions import Fraction


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _round_div(a, b):
    # nearest integer to a/b for b > 0
    return (2 * a + b) // (2 * b)


def lll(basis, delta=Fraction(99, 100)):
    """
    LLL-reduce linearly independent integer row vectors.

    This is the integral variant (de Weger; Cohen, Alg. 2.6.7): the
    Gram-Schmidt data is kept as the integers d_i and lambda_{i,j}, so no
    rationals appear.  Returns a new list of rows.
    """
    b = [None] + [list(r) for r in basis]
    n = len(basis)
    if n <= 1:
        return [list(r) for r in basis]
    num, den = delta.numerator, delta.denominator
    d = [0] * (n + 1)
    d[0] = 1
    lam = [[0] * (n + 1) for _ in range(n + 1)]
    d[1] = _dot(b[1], b[1])
    if d[1] == 0:
        raise ValueError("dependent vectors passed to LLL")
    k, kmax = 2, 1

    def red(k, l):
        if 2 * abs(lam[k][l]) > d[l]:
            q = _round_div(lam[k][l], d[l])
            b[k] = [x - q * y for x, y in zip(b[k], b[l])]
            lam[k][l] -= q * d[l]
            for i in range(1, l):
                lam[k][i] -= q * lam[l][i]

    def swap(k):
        b[k], b[k - 1] = b[k - 1], b[k]
        for j in range(1, k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        la = lam[k][k - 1]
        B = (d[k - 2] * d[k] + la * la) // d[k - 1]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k] * lam[i][k - 1] - la * t) // d[k - 1]
            lam[i][k - 1] = (B * t + la * lam[i][k]) // d[k]
        d[k - 1] = B

    while k <= n:
        if k > kmax:
            kmax = k
            for j in range(1, k + 1):
                u = _dot(b[k], b[j])
                for i in range(1, j):
                    u = (d[i] * u - lam[k][i] * lam[j][i]) // d[i - 1]
                if j < k:
                    lam[k][j] = u
                else:
                    if u == 0:
                        raise ValueError("dependent vectors passed to LLL")
                    d[k] = u
        red(k, k - 1)
        # Lovasz: d_k d_{k-2} >= delta d_{k-1}^2 - lam^2
        if den * d[k] * d[k - 2] < num * d[k - 1] ** 2 - den * lam[k][k - 1] ** 2:
            swap(k)
            k = max(2, k - 1)
        else:
            for l in range(k - 2, 0, -1):
                red(k, l)
            k += 1
    return b[1:]


def gram_schmidt(basis):
    """Rational Gram-Schmidt vectors and coefficients mu[i][j]."""
    bstar = []
    mu = []
    for i, v in enumerate(basis):
        w = [Fraction(x) for x in v]
        row = []
        for j in range(i):
            bb = _dot(bstar[j], bstar[j])
            m = _dot(v, bstar[j]) / bb
            row.append(m)
            w = [x - m * y for x, y in zip(w, bstar[j])]
        bstar.append(w)
        mu.append(row)
    return bstar, mu


def is_lll_reduced(basis, delta=Fraction(99, 100)):
    bstar, mu = gram_schmidt(basis)
    for i in range(len(basis)):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    for k in range(1, len(basis)):
        lhs = _dot(bstar[k], bstar[k])
        rhs = (delta - mu[k][k - 1] ** 2) * _dot(bstar[k - 1], bstar[k - 1])
        if lhs < rhs:
            return False
    return True


def babai_reduce(basis, x):
    """Subtract lattice vectors from x by nearest-plane rounding."""
    bstar, _ = gram_schmidt(basis)
    x = list(x)
    for i in range(len(basis) - 1, -1, -1):
        bb = _dot(bstar[i], bstar[i])
        c = _dot(x, bstar[i]) / bb
        q = (2 * c.numerator + c.denominator) // (2 * c.denominator)
        if q:
            x = [a - q * b for a, b in zip(x, basis[i])]
    return x


def norm2(v):
    return _dot(v, v)
