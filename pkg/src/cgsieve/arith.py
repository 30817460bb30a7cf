"""Rational-integer helpers: prime lists, Pollard rho, budgeted factorization."""

from math import gcd, isqrt

from sympy import isprime, primerange


def primes_up_to(bound):
    return list(primerange(2, bound + 1))


def ceil_sqrt(m):
    if m <= 0:
        return 0
    return isqrt(m - 1) + 1


def pollard_rho(n, max_iter=1 << 20, seed=1):
    """Brent's variant.  Returns a nontrivial factor of composite n or None."""
    if n % 2 == 0:
        return 2
    for c in range(seed, seed + 8):
        y, r, q = 2, 1, 1
        g = 1
        x = ys = y
        it = 0
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += 128
            r *= 2
            it += r
            if it > max_iter:
                break
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def factorize(n, trial_bound=10**5, rho_iter=1 << 20):
    """
    Factor |n| as far as the budget allows.

    Returns ``(factors, cofactor)`` where ``factors`` maps primes to
    exponents and ``cofactor`` is the unfactored remainder (1 on success).
    """
    n = abs(n)
    factors = {}
    if n == 0:
        raise ValueError("cannot factor 0")
    for p in primerange(2, trial_bound + 1):
        if p * p > n:
            break
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    if n == 1:
        return factors, 1
    stack = [n]
    rest = 1
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if m <= trial_bound**2 or isprime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        d = pollard_rho(m, rho_iter)
        if d is None:
            rest *= m
            continue
        stack.extend([d, m // d])
    return dict(sorted(factors.items())), rest


def valuation(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


TRIAL_DIVISION_LIMIT = 1 << 16


def smooth_part(n, bound, primes=None):
    """
    Split ``n`` into its ``bound``-smooth factorization and the rest.

    Trial division by primes up to min(bound, 2^16); a remaining cofactor
    below bound^3 is split by Pollard rho.  Returns ``(factors, cofactor)``;
    ``n`` is smooth exactly when the cofactor is 1.
    """
    n = abs(n)
    if n < 1:
        raise ValueError("smooth_part needs n >= 1")
    if primes is None:
        primes = primes_up_to(min(bound, TRIAL_DIVISION_LIMIT))
    factors = {}
    for p in primes:
        if p > bound:
            break
        if n % p == 0:
            e = 1
            n //= p
            while n % p == 0:
                n //= p
                e += 1
            factors[p] = e
            if n == 1:
                return factors, 1
        if p * p > n:
            break
    if n == 1:
        return factors, 1
    if n <= bound and isprime(n):
        factors[n] = factors.get(n, 0) + 1
        return dict(sorted(factors.items())), 1
    if bound <= TRIAL_DIVISION_LIMIT or n >= bound**3:
        return factors, n
    # cofactor has no prime below the trial-division limit
    stack, rest = [n], 1
    while stack:
        m = stack.pop()
        if isprime(m):
            if m <= bound:
                factors[m] = factors.get(m, 0) + 1
            else:
                rest *= m
            continue
        d = pollard_rho(m)
        if d is None:
            rest *= m
        else:
            stack.extend([d, m // d])
    return dict(sorted(factors.items())), rest
