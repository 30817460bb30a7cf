"""
Factor base of prime ideals of Z[theta] with norm at most B, plus exact
valuations of principal ideals at its members.

A prime ideal above p is stored as (p, g) with g a monic irreducible
factor of T mod p, following Dedekind-Kummer.  Primes at which Z[theta]
is not p-maximal are excluded and recorded.
"""

import hashlib
import json
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache

from . import poly
from .arith import primes_up_to, smooth_part
from .errors import BoundTooSmall, UnsupportedPrime
from .numfield import dedekind_defect, element_norm, mul_mod

log = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class PrimeIdeal:
    norm: int
    p: int
    g: tuple
    e: int
    f: int

    def to_json(self):
        return {"p": self.p, "g": list(self.g), "e": self.e, "f": self.f}

    def __repr__(self):
        return f"PrimeIdeal(p={self.p}, g={list(self.g)}, e={self.e}, f={self.f})"


def prime_ideal(p, g, e):
    g = tuple(g)
    f = len(g) - 1
    return PrimeIdeal(norm=p**f, p=p, g=g, e=e, f=f)


@dataclass(frozen=True)
class FactorBase:
    T: tuple
    bound: int
    ideals: tuple
    excluded_primes: tuple
    by_prime: dict = field(default=None, compare=False, repr=False)

    def __len__(self):
        return len(self.ideals)

    def index(self, q):
        return self.ideals.index(q)

    def above(self, p):
        """Indices of the base ideals lying over the rational prime p."""
        return self.by_prime.get(p, ())

    def primes(self):
        return sorted(self.by_prime)

    def to_json(self):
        return [q.to_json() for q in self.ideals]

    @property
    def fb_hash(self):
        blob = json.dumps(
            {"T": list(self.T), "B": self.bound, "ideals": self.to_json(),
             "excluded": list(self.excluded_primes)},
            sort_keys=True, separators=(",", ":"),
        )
        return hashlib.sha256(blob.encode()).hexdigest()

    def complete_above(self, p, n):
        """True when every prime ideal above p is in the base (sum e*f = n)."""
        return sum(self.ideals[i].e * self.ideals[i].f for i in self.above(p)) == n


def _make_fb(T, bound, ideals, excluded):
    by_prime = {}
    for i, q in enumerate(ideals):
        by_prime.setdefault(q.p, []).append(i)
    by_prime = {p: tuple(v) for p, v in by_prime.items()}
    return FactorBase(T=tuple(T), bound=bound, ideals=tuple(ideals),
                      excluded_primes=tuple(excluded), by_prime=by_prime)


def is_excluded(field, p):
    if p in field.nonmaximal_primes:
        return True
    if field.disc_T % (p * p):
        return False
    return dedekind_defect(list(field.T), p) > 0


def primes_above(field, p):
    """All prime ideals above p, regardless of norm."""
    return [prime_ideal(p, g, e) for g, e in poly.fp_factor(list(field.T), p)]


def build_factor_base(field, bound):
    if bound < 2:
        raise BoundTooSmall(f"factor base bound {bound} < 2")
    ideals = []
    excluded = []
    for p in primes_up_to(bound):
        if is_excluded(field, p):
            excluded.append(p)
            continue
        for q in primes_above(field, p):
            if q.norm <= bound:
                ideals.append(q)
    ideals.sort(key=lambda q: (q.norm, q.p, q.g))
    log.debug("factor base B=%d: %d ideals, excluded %s", bound, len(ideals), excluded)
    return _make_fb(field.T, bound, ideals, excluded)


def load_factor_base(field, bound, data):
    ideals = [prime_ideal(d["p"], d["g"], d["e"]) for d in data]
    excluded = [p for p in primes_up_to(bound) if is_excluded(field, p)]
    return _make_fb(field.T, bound, ideals, excluded)


def ideal_count_check(fb):
    """|FB| / (B / log B): a prime-ideal-theorem sanity ratio."""
    return len(fb.ideals) / (fb.bound / math.log(fb.bound))


# ------------------------------------------------------------ valuations


@lru_cache(maxsize=4096)
def _cofactor(T, p, g):
    # (T mod p) / g lifted to Z: beta(theta) * q lies in p Z[theta]
    return tuple(poly.fp_divmod(poly.fp(list(T), p), list(g), p)[0])


@lru_cache(maxsize=4096)
def _hensel_root(T, p, r0, k):
    t = list(T)
    dt = poly.derivative(t)
    r = r0
    m = p
    while m < p**k:
        m = min(m * m, p**k)
        fr = poly.evaluate_mod(t, r, m)
        dfr = poly.evaluate_mod(dt, r, m)
        r = (r - fr * pow(dfr, -1, m)) % m
    return r


def element_valuation(field, q, x, norm=None):
    """v_q(<x>) for x != 0; q any prime ideal at a p-maximal prime."""
    if norm is None:
        norm = element_norm(field, x)
    p = q.p
    vp = 0
    m = norm
    while m % p == 0:
        m //= p
        vp += 1
    if vp < q.f:
        return 0
    vmax = vp // q.f
    if q.e == 1 and q.f == 1:
        k = vp + 1
        r = _hensel_root(field.T, p, (-q.g[0]) % p, k)
        mod = p**k
        val = poly.evaluate_mod(poly.strip(x), r, mod)
        v = 0
        while v < vmax and val % p == 0:
            val //= p
            v += 1
        return v
    beta = list(_cofactor(field.T, p, q.g))
    beta_el = field.element(beta)
    v = 0
    cur = tuple(x)
    while v < vmax:
        y = mul_mod(field, cur, beta_el)
        if any(c % p for c in y):
            break
        cur = tuple(c // p for c in y)
        v += 1
    return v


def valuation(field, fb, x, q):
    if q.p in fb.excluded_primes:
        raise UnsupportedPrime(f"p = {q.p} divides the index of Z[theta]")
    return element_valuation(field, q, x)


SMOOTH, NOT_SMOOTH, EXCLUDED = "smooth", "not-smooth", "excluded"


def decompose_status(field, fb, x, norm=None):
    """Returns (status, exponent vector or None, norm)."""
    if norm is None:
        norm = element_norm(field, x)
    vec = [0] * len(fb.ideals)
    if norm == 1:
        return SMOOTH, vec, norm
    factors, rest = smooth_part(norm, fb.bound)
    if rest != 1:
        return NOT_SMOOTH, None, norm
    for p, vp in factors.items():
        if p in fb.excluded_primes:
            return EXCLUDED, None, norm
        total = 0
        for i in fb.above(p):
            q = fb.ideals[i]
            v = element_valuation(field, q, x, norm)
            vec[i] = v
            total += v * q.f
        if total != vp:
            # some ideal above p has norm > B
            return NOT_SMOOTH, None, norm
    return SMOOTH, vec, norm


def decompose(field, fb, x):
    """Exponent vector of <x> over the base, or None when <x> is not smooth."""
    return decompose_status(field, fb, x)[1]
