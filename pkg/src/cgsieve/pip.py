"""
Principal ideal problem by descent.

The target ideal is multiplied by random small primes, LLL-reduced to a
short element x0 with <x0> = a * b, and b is tested for smoothness; the
resulting exponent vector is expressed through the relation lattice, which
yields a generator as a product of sieved elements and descent multipliers.
"""

import logging
import math
import random
from dataclasses import dataclass, field as dc_field

from . import ideals as I
from .errors import (
    DescentBudgetExhausted,
    DomainError,
    NoSolution,
    NotPrincipalInLattice,
    ScheduleInfeasible,
)
from .factorbase import primes_above
from .linalg import IncrementalHNF, RelationLattice
from .numfield import exact_quotient, height, mul_mod, pow_mod
from .params import LARGE, MEDIUM, SMALL, big_x, large_params, small_params

log = logging.getLogger(__name__)

E = math.e


# ---------------------------------------------------------------- schedule


@dataclass
class DescentConfig:
    regime: str
    k: float
    l: int
    y: float
    s: list
    c_b: float
    beta: int = 2
    sublattice_dims: list = dc_field(default_factory=list)  # (delta, c_d) per step
    s0: float = 0.0
    y_asymptotic: float = 0.0
    limit: float = None  # s_infinity for the medium recursion

    @property
    def e_s_l(self):
        return E * self.s[-1]

    @property
    def feasible(self):
        return self.e_s_l <= self.c_b * (1 + 1e-12)

    def to_json(self):
        return {
            "regime": self.regime, "k": self.k, "l": self.l, "y": self.y,
            "s": list(self.s), "c_b": self.c_b, "e_s_l": self.e_s_l,
            "sublattice_dims": [list(d) for d in self.sublattice_dims],
        }


def descent_steps(k, absdisc=None, log_x=None):
    """l = ceil(log2(log(X) / k)), at least 1."""
    if log_x is None:
        log_x = math.log(big_x(absdisc))
    if k <= 0 or log_x <= 0:
        return 1
    return max(1, math.ceil(math.log2(log_x / k)))


def medium_recursion(s0, k, n0, d0, y, steps):
    r = (4 * k * k * n0 * d0 / y**2) ** (1 / 6)
    s = [s0]
    for _ in range(steps):
        s.append(math.sqrt(s[-1]) * r)
    return s


def make_schedule(desc, absdisc=None, regime=None, l=None, c_beta=1.0, y=1.0, c_s=0.1, c_t=1):
    """
    Smoothness schedule s_0 .. s_l of the descent for the regime of desc.

    Medium: s_{i+1} = sqrt(s_i) (4k^2 n0 d0 / y^2)^(1/6).  The asymptotic
    choice y^2 = e^3 w^2 / (w+1) makes e*s_l reach c_b only in the limit, so
    y is raised to the smallest value for which the finite-l schedule
    satisfies e*s_l <= c_b.  Large and small: geometric schedules ending
    exactly at e*s_l = c_b.
    """
    regime = regime or desc.regime
    n0, d0, a, g, w = desc.n0, desc.d0, desc.alpha, desc.gamma, desc.omega
    if regime == MEDIUM:
        k = (a + g) / 3
        if l is None:
            l = descent_steps(k, absdisc) if absdisc else 1
        s0 = (2 * k * (n0 * d0) ** 2) ** (1 / 3)
        c_b = (4 * k * k * n0 * d0 * (w + 1) / w**2) ** (1 / 3)
        y_asym = math.sqrt(E**3 * w**2 / (w + 1))
        # finite l: s_l = s0^(2^-l) * Lim^(1 - 2^-l), Lim = (4k^2 n0 d0 / y^2)^(1/3)
        f = 2.0**-l
        lim_needed = ((c_b / E) * s0 ** (-f)) ** (1 / (1 - f))
        y_fin = math.sqrt(4 * k * k * n0 * d0 / lim_needed**3)
        yy = max(y_asym, y_fin)
        s = medium_recursion(s0, k, n0, d0, yy, l)
        dims = []
        for i in range(l):
            dims.append((a - k * (1 + 2.0 ** -(i + 1)), math.sqrt(n0 * s[i] / d0)))
        cfg = DescentConfig(MEDIUM, k, l, yy, s, c_b, sublattice_dims=dims, s0=s0,
                            y_asymptotic=y_asym,
                            limit=(4 * k * k * n0 * d0 / y_asym**2) ** (1 / 3))
    elif regime == LARGE:
        k = a / 2
        if l is None:
            l = descent_steps(k, absdisc) if absdisc else 1
        s0 = (k * n0**4 / (2 * c_beta**2)) ** (1 / 3)
        c_b = large_params(desc, c_s=c_s).c_b
        ratio = (c_b / (E * s0)) ** (1 / l)
        s = [s0 * ratio**i for i in range(l + 1)]
        c_d = (k * n0 / y) * (E * s0 / c_b) ** (1 / l)
        dims = [(k * (1 + 2.0 ** -(i + 1)), c_d) for i in range(l)]
        cfg = DescentConfig(LARGE, k, l, y, s, c_b, sublattice_dims=dims, s0=s0)
    elif regime == SMALL:
        k = g / 2
        if l is None:
            if absdisc and a > 0:
                l = descent_steps(a, absdisc)
            else:
                l = 1
        c_b = small_params(desc, c_t=c_t).c_b  # (k d0 c_t / w)^(1/2) with k = gamma/2
        s0 = k * n0 * d0 / y
        ratio = (c_b / (E * s0)) ** (1 / l)
        s = [s0 * ratio**i for i in range(l + 1)]
        dims = [(a / 2 ** (i + 1), 1 / E) for i in range(l)]
        cfg = DescentConfig(SMALL, k, l, y, s, c_b, sublattice_dims=dims, s0=s0)
    else:
        raise DomainError(f"unknown regime {regime}")
    if not cfg.feasible:
        raise ScheduleInfeasible(cfg.e_s_l, cfg.c_b)
    return cfg


# ----------------------------------------------------------- relation data


class PipContext:
    """
    Field, factor base and relation lattice prepared for repeated PIP solves.

    The lattice holds a subset of the sieved relations that generates the
    same row lattice (plus a few extra rows so short solutions exist), and
    the rational-prime relations <p> = prod q^e for every p whose primes
    all lie in the base; these give access to pruned columns.
    """

    def __init__(self, field, fb, relations, extra_rows=None):
        self.field = field
        self.fb = fb
        N = len(fb.ideals)
        rows, gens = [], []
        h = IncrementalHNF(N)
        spare = []
        for r in relations:
            if h.insert(r.e):
                rows.append(list(r.e))
                gens.append(r.x)
            else:
                spare.append(r)
        if extra_rows is None:
            extra_rows = N
        for r in spare[:extra_rows]:
            rows.append(list(r.e))
            gens.append(r.x)
        for p in fb.primes():
            if fb.complete_above(p, field.n):
                vec = [0] * N
                for i in fb.above(p):
                    vec[i] = fb.ideals[i].e
                rows.append(vec)
                gens.append((p,) + (0,) * (field.n - 1))
        self.gens = gens
        self.lattice = RelationLattice(rows, N) if rows else None
        self.small_ideals = [
            i for i, q in enumerate(fb.ideals) if q.f == 1 and q.p not in fb.excluded_primes
        ]

    def solve(self, v):
        if not any(v):
            return [0] * len(self.gens)
        if self.lattice is None:
            raise NoSolution("no relations")
        return self.lattice.solve(v)


# ----------------------------------------------------------------- descent


def randomize(field, fb, a, rng_seed, max_exp=2, count=2, candidates=None):
    """a * prod p_j^e_j for random base ideals; returns (ideal, {index: e})."""
    rng = random.Random(rng_seed)
    pool = candidates if candidates is not None else list(range(len(fb.ideals)))
    record = {}
    if pool:
        for _ in range(count):
            j = rng.choice(pool)
            e = rng.randint(0, max_exp)
            if e:
                record[j] = record.get(j, 0) + e
    out = a
    for j, e in sorted(record.items()):
        out = I.multiply(field, out, I.power(field, I.prime_ideal_hnf(field, fb.ideals[j]), e))
    return out, record


@dataclass
class DescentResult:
    v: list
    multipliers: list  # (element, exponent): a = <prod m^k> * prod q^v
    attempts: int = 0


def _add(u, w, k=1):
    return [x + k * y for x, y in zip(u, w)]


def descend(ctx, a, seed=0, budget=200, max_exp=2, depth=0, max_depth=1, fanout=64):
    """
    Write a = <prod m^k> * prod q^v with q in the base.

    Each round randomizes a, LLL-reduces it to x0 with <x0> = a' * b and
    tests b for smoothness.  With depth < max_depth a non-smooth b whose
    norm factors completely has its large prime ideals descended in turn.
    """
    field, fb = ctx.field, ctx.fb
    v = I.factor_over_base(field, fb, a)
    if v is not None:
        return DescentResult(v=v, multipliers=[], attempts=0)
    for attempt in range(budget):
        if attempt == 0:
            b_in, rec = a, {}
        else:
            b_in, rec = randomize(field, fb, a, f"{seed}:{attempt}", max_exp=max_exp,
                                  count=1 + attempt % 3, candidates=ctx.small_ideals)
        x0, b = I.reduce_ideal(field, b_in)
        # a * prod p^rec * b = <x0>  =>  a = <x0> * prod p^-rec * b^-1
        w = I.factor_over_base(field, fb, b)
        if w is not None:
            v = [-x for x in w]
            for j, e in rec.items():
                v[j] -= e
            return DescentResult(v=v, multipliers=[(x0, 1)], attempts=attempt + 1)
        if depth < max_depth:
            res = _descend_large(ctx, b, seed, budget, max_exp, depth, max_depth, fanout)
            if res is not None:
                v = [-x for x in res.v]
                for j, e in rec.items():
                    v[j] -= e
                mults = [(x0, 1)] + [(m, -k) for m, k in res.multipliers]
                return DescentResult(v=v, multipliers=mults, attempts=attempt + 1)
    raise DescentBudgetExhausted(f"no smooth reduction after {budget} attempts")


def _descend_large(ctx, b, seed, budget, max_exp, depth, max_depth, fanout):
    field, fb = ctx.field, ctx.fb
    facs = I.factor_ideal(field, b)
    if facs is None or sum(facs.values()) > fanout:
        return None
    v = [0] * len(fb.ideals)
    mults = []
    for q, e in facs.items():
        if q.norm <= fb.bound and q in fb.ideals:
            v[fb.index(q)] += e
            continue
        Q = I.prime_ideal_hnf(field, q)
        try:
            sub = descend(ctx, Q, seed=f"{seed}/{q.p}", budget=max(1, budget // 4), max_exp=max_exp,
                          depth=depth + 1, max_depth=max_depth, fanout=fanout)
        except DescentBudgetExhausted:
            return None
        v = _add(v, sub.v, e)
        mults.extend((m, k * e) for m, k in sub.multipliers)
    return DescentResult(v=v, multipliers=mults)


# ---------------------------------------------------------------- witness


@dataclass
class GeneratorWitness:
    numerator: list  # (element, exponent > 0)
    denominator: list
    value: tuple = None
    verified: bool = False

    def factors(self):
        return [(x, k) for x, k in self.numerator] + [(x, -k) for x, k in self.denominator]

    def to_json(self):
        out = {
            "factors": [{"x": list(x), "exp": k} for x, k in self.factors()],
            "verified": self.verified,
        }
        if self.value is not None:
            out["value"] = list(self.value)
        return out


def _product_ideal(field, factors):
    out = I.unit_ideal(field)
    for x, k in factors:
        out = I.multiply(field, out, I.power(field, I.ideal_from_generators(field, [x]), k))
    return out


def _expand(field, factors, max_bits):
    val = field.one
    for x, k in factors:
        if k * max(1, height(x)).bit_length() * field.n > max_bits:
            return None
        val = mul_mod(field, val, pow_mod(field, x, k))
        if height(val).bit_length() > max_bits:
            return None
    return val


def assemble_witness(field, a, factors, max_bits=4096):
    """Collect factors with integer exponents and verify <num> = a * <den>."""
    acc = {}
    for x, k in factors:
        if k:
            acc[tuple(x)] = acc.get(tuple(x), 0) + k
    num = sorted((x, k) for x, k in acc.items() if k > 0)
    den = sorted((x, -k) for x, k in acc.items() if k < 0)
    wit = GeneratorWitness(numerator=num, denominator=den)
    lhs = _product_ideal(field, num)
    rhs = I.multiply(field, a, _product_ideal(field, den))
    wit.verified = lhs == rhs
    if wit.verified:
        nv = _expand(field, num, max_bits)
        dv = _expand(field, den, max_bits)
        if nv is not None and dv is not None:
            q = exact_quotient(field, nv, dv)
            if q is not None:
                wit.value = q
    return wit


def solve_pip(ctx, a, seed=0, budget=200, max_depth=1):
    """
    A verified generator of a, or NotPrincipalInLattice when the descended
    vector is outside the relation lattice.
    """
    field = ctx.field
    if a.norm == 1:
        return GeneratorWitness(numerator=[], denominator=[], value=field.one, verified=True)
    res = descend(ctx, a, seed=seed, budget=budget, max_depth=max_depth)
    try:
        x = ctx.solve(res.v)
    except NoSolution as exc:
        raise NotPrincipalInLattice(f"target class is not trivial in the relation lattice: {exc}")
    factors = [(g, k) for g, k in zip(ctx.gens, x) if k] + list(res.multipliers)
    wit = assemble_witness(field, a, factors)
    if not wit.verified:
        raise NotPrincipalInLattice("assembled witness failed ideal verification")
    return wit


def prime_ideal_above(field, p, index=0):
    """Convenience: the index-th prime ideal above p as an IdealHNF."""
    return I.prime_ideal_hnf(field, primes_above(field, p)[index])
