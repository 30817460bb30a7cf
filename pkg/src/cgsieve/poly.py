"""
Dense univariate polynomials as little-endian coefficient lists.

Integer polynomials are plain lists of ints with no trailing zeros; the
zero polynomial is the empty list.  The ``fp_*`` helpers work over Z/pZ
with coefficients kept in [0, p).
"""

import random
from math import gcd


def strip(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a):
    return len(a) - 1 if a else -1


def lc(a):
    return a[-1] if a else 0


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return strip(out)


def sub(a, b):
    return add(a, [-c for c in b])


def scale(a, k):
    return strip([k * c for c in a])


def mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return strip(out)


def content(a):
    g = 0
    for c in a:
        g = gcd(g, c)
    return g


def derivative(a):
    return strip([i * a[i] for i in range(1, len(a))])


def evaluate(a, x):
    r = 0
    for c in reversed(a):
        r = r * x + c
    return r


def evaluate_mod(a, x, m):
    r = 0
    for c in reversed(a):
        r = (r * x + c) % m
    return r


def rem_monic(a, t):
    """Remainder of ``a`` modulo the monic polynomial ``t``."""
    n = len(t) - 1
    a = list(a)
    for i in range(len(a) - 1, n - 1, -1):
        c = a[i]
        if c:
            base = i - n
            for j in range(n):
                a[base + j] -= c * t[j]
            a[i] = 0
    return strip(a[:n]) if len(a) > n else strip(a)


def pseudo_rem(a, b):
    """prem(a, b) = lc(b)^(deg a - deg b + 1) * a mod b, computed over Z."""
    db = degree(b)
    r = list(a)
    lb = b[-1]
    e = degree(a) - db + 1
    while r and degree(r) >= db:
        c = r[-1]
        shift = degree(r) - db
        r = [lb * x for x in r]
        for j, y in enumerate(b):
            r[shift + j] -= c * y
        r = strip(r)
        e -= 1
    if e > 0:
        r = [x * lb**e for x in r]
    return strip(r)


def exact_div_scalar(a, k):
    out = []
    for c in a:
        q, rr = divmod(c, k)
        if rr:
            raise ArithmeticError("inexact scalar division")
        out.append(q)
    return out


def divmod_z(a, b):
    """Division over Z with a divisor of leading coefficient +-1 or exact quotients."""
    a = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    db = degree(b)
    lb = b[-1]
    while a and degree(a) >= db:
        c, rr = divmod(a[-1], lb)
        if rr:
            raise ArithmeticError("inexact polynomial division")
        shift = degree(a) - db
        q[shift] = c
        for j, y in enumerate(b):
            a[shift + j] -= c * y
        a = strip(a)
    return strip(q), a


# ---------------------------------------------------------------- Z/pZ


def fp(a, p):
    return strip([c % p for c in a])


def fp_add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return strip(out)


def fp_sub(a, b, p):
    return fp_add(a, [(-c) % p for c in b], p)


def fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return strip([c % p for c in out])


def fp_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    q = [0] * max(0, len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % p
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return strip(q), strip(a[:db])


def fp_rem(a, b, p):
    return fp_divmod(a, b, p)[1]


def fp_monic(a, p):
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def fp_gcd(a, b, p):
    a, b = fp(a, p), fp(b, p)
    while b:
        a, b = b, fp_rem(a, b, p)
    return fp_monic(a, p)


def fp_powmod(base, e, mod, p):
    result = [1]
    base = fp_rem(base, mod, p)
    while e:
        if e & 1:
            result = fp_rem(fp_mul(result, base, p), mod, p)
        e >>= 1
        if e:
            base = fp_rem(fp_mul(base, base, p), mod, p)
    return result


def fp_derivative(a, p):
    return strip([(i * a[i]) % p for i in range(1, len(a))])


def _pth_root(a, p):
    return strip([a[i] for i in range(0, len(a), p)])


def fp_squarefree(f, p):
    """Squarefree decomposition of a monic f: list of (g, multiplicity)."""
    out = []
    df = fp_derivative(f, p)
    if not df:
        for g, m in fp_squarefree(_pth_root(f, p), p):
            out.append((g, m * p))
        return out
    c = fp_gcd(f, df, p)
    w = fp_divmod(f, c, p)[0]
    i = 1
    while degree(w) > 0:
        y = fp_gcd(w, c, p)
        z = fp_divmod(w, y, p)[0]
        if degree(z) > 0:
            out.append((fp_monic(z, p), i))
        i += 1
        w = y
        c = fp_divmod(c, y, p)[0]
    if degree(c) > 0:
        for g, m in fp_squarefree(_pth_root(c, p), p):
            out.append((g, m * p))
    return out


def fp_distinct_degree(f, p):
    """Distinct-degree factorization of a squarefree monic f."""
    out = []
    h = [0, 1]
    x = [0, 1]
    i = 1
    while degree(f) >= 2 * i:
        h = fp_powmod(h, p, f, p)
        g = fp_gcd(f, fp_sub(h, x, p), p)
        if degree(g) > 0:
            out.append((g, i))
            f = fp_divmod(f, g, p)[0]
            h = fp_rem(h, f, p)
        i += 1
    if degree(f) > 0:
        out.append((f, degree(f)))
    return out


def fp_equal_degree(f, d, p, rng):
    """Split a product of distinct degree-d irreducibles (Cantor-Zassenhaus)."""
    n = degree(f)
    if n == d:
        return [f]
    while True:
        a = strip([rng.randrange(p) for _ in range(n)])
        if degree(a) < 1:
            continue
        if p == 2:
            # absolute trace F_{2^d} -> F_2
            t = list(a)
            acc = list(a)
            for _ in range(d - 1):
                acc = fp_rem(fp_mul(acc, acc, p), f, p)
                t = fp_add(t, acc, p)
            b = t
        else:
            b = fp_sub(fp_powmod(a, (p**d - 1) // 2, f, p), [1], p)
        g = fp_gcd(f, b, p)
        if 0 < degree(g) < n:
            h = fp_divmod(f, g, p)[0]
            return fp_equal_degree(g, d, p, rng) + fp_equal_degree(fp_monic(h, p), d, p, rng)


def fp_factor(f, p):
    """
    Complete factorization of a monic polynomial over Z/pZ.

    Returns a sorted list of (irreducible monic g, multiplicity).  The
    splitting randomness is seeded from (p, f) so the output is
    reproducible.
    """
    f = fp_monic(fp(f, p), p)
    rng = random.Random(hash((p, tuple(f))) & 0xFFFFFFFF)
    out = []
    for sq, m in fp_squarefree(f, p):
        for g, d in fp_distinct_degree(sq, p):
            for h in fp_equal_degree(g, d, p, rng):
                out.append((tuple(fp_monic(h, p)), m))
    out.sort(key=lambda gm: (len(gm[0]), gm[0], gm[1]))
    return [(list(g), m) for g, m in out]


def fp_degree_pattern(f, p):
    """Degrees of the irreducible factors of a squarefree f, without splitting."""
    degs = []
    for g, d in fp_distinct_degree(fp_monic(fp(f, p), p), p):
        degs.extend([d] * (degree(g) // d))
    return sorted(degs)
