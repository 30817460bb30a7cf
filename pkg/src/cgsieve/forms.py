"""Class numbers of imaginary quadratic orders by counting reduced forms."""

from math import gcd, isqrt

from .errors import OracleDomain


def reduced_forms(D):
    """
    Primitive reduced forms (a, b, c) of discriminant D < 0:
    |b| <= a <= c, and b >= 0 whenever |b| = a or a = c.
    """
    if D >= 0 or D % 4 not in (0, 1):
        raise OracleDomain(f"{D} is not a negative discriminant")
    out = []
    a = 1
    # reduced forms have a <= sqrt(|D|/3)
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a:
                continue
            if b < 0 and (a == c):
                continue
            if gcd(gcd(a, abs(b)), c) != 1:
                continue
            out.append((a, b, c))
        a += 1
    return out


def class_number(D):
    return len(reduced_forms(D))


def is_fundamental(D):
    if D % 4 == 1:
        return _squarefree(abs(D))
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and _squarefree(abs(m))
    return False


def _squarefree(m):
    d = 2
    while d * d <= m:
        if m % (d * d) == 0:
            return False
        d += 1
    return True


def quadratic_polynomial(D):
    """Monic T with Z[theta] of discriminant D: X^2 - D/4 or X^2 + X + (1-D)/4."""
    if D % 4 == 0:
        return [-D // 4, 0, 1]
    if D % 4 == 1:
        return [(1 - D) // 4, 1, 1]
    raise OracleDomain(f"{D} is not a discriminant")


def field_class_number(field):
    """Oracle class number of Z[theta] for an imaginary quadratic field."""
    if field.n != 2 or field.disc_T >= 0:
        raise OracleDomain("reduced-forms oracle needs an imaginary quadratic field")
    return class_number(field.disc_T)


def is_sqrt_exact(m):
    r = isqrt(m)
    return r * r == m
