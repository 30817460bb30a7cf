"""
Relation collection: enumerate small algebraic integers A(theta), keep those
whose principal ideal factors over the factor base.
"""

import itertools
import json
import logging
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from math import gcd

from .arith import smooth_part  # noqa: F401  (re-exported)
from .errors import HashMismatch, InputError
from .factorbase import EXCLUDED, SMOOTH, decompose_status
from .ideals import ideal_from_generators, ideal_of_vector
from .numfield import is_irreducible

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SieveRegion:
    t: int
    S: int
    skip_reducible: bool = False
    skip_imprimitive: bool = True
    S_min: int = 0  # candidates of height <= S_min were covered by an earlier region

    def check(self, field):
        if not 0 <= self.t <= field.n - 1:
            raise InputError(f"degree bound t = {self.t} outside [0, {field.n - 1}]")
        if self.S < 1:
            raise InputError("coefficient bound S must be >= 1")

    def raw_size(self):
        """Number of raw tuples walked (positive leading coefficient)."""
        return sum(self.S * (2 * self.S + 1) ** d for d in range(1, self.t + 1))


@dataclass(frozen=True)
class Relation:
    x: tuple
    e: tuple
    norm: int

    def to_json(self):
        return {"x": list(self.x), "norm": str(self.norm), "e": list(self.e)}

    @classmethod
    def from_json(cls, d):
        return cls(x=tuple(d["x"]), e=tuple(d["e"]), norm=int(d["norm"]))


@dataclass
class RelationSet:
    relations: list
    region: SieveRegion
    fb_hash: str
    next_index: int = 0
    tested: int = 0
    smooth: int = 0
    excluded_hits: int = 0
    units: int = 0
    exhausted: bool = False
    budget_exhausted: bool = False
    seen: set = dc_field(default_factory=set, repr=False)

    def add(self, rel):
        if rel.x in self.seen:
            return False
        self.seen.add(rel.x)
        self.relations.append(rel)
        return True

    def __len__(self):
        return len(self.relations)

    def counters(self):
        return {
            "tested": self.tested,
            "smooth": self.smooth,
            "excluded_hits": self.excluded_hits,
            "units": self.units,
        }


def target_relation_count(N):
    if N < 1:
        raise ValueError("factor base must be nonempty")
    return N + max(20, math.ceil(4 * math.sqrt(N)))


# ------------------------------------------------------------ enumeration


def _raw_stream(region, n):
    S = region.S
    for d in range(1, region.t + 1):
        for lead in range(1, S + 1):
            for rest in itertools.product(range(-S, S + 1), repeat=d):
                # rest = (a_{d-1}, ..., a_0), lexicographic
                coeffs = tuple(reversed(rest)) + (lead,)
                yield coeffs + (0,) * (n - d - 1)


def _keep(region, coeffs):
    if max(abs(c) for c in coeffs) <= region.S_min:
        return False
    if region.skip_imprimitive or region.skip_reducible:
        g = 0
        for c in coeffs:
            g = gcd(g, c)
        if g > 1:
            return False
    if region.skip_reducible:
        a = [c for c in coeffs]
        while a[-1] == 0:
            a.pop()
        if len(a) > 2 and not is_irreducible(a):
            return False
    return True


def iter_candidates(region, field, start=0):
    """Yields (index, x) for kept candidates with raw index >= start."""
    region.check(field)
    stream = _raw_stream(region, field.n)
    for idx, coeffs in enumerate(itertools.islice(stream, start, None), start):
        if _keep(region, coeffs):
            yield idx, coeffs


def enumerate_candidates(region, field):
    for _, x in iter_candidates(region, field):
        yield x


# ------------------------------------------------------------- collection

_worker = {}


def _init_worker(field, fb):
    _worker["field"] = field
    _worker["fb"] = fb


def _test_block(items):
    field, fb = _worker["field"], _worker["fb"]
    return [(idx, x) + decompose_status(field, fb, x) for idx, x in items]


def _blocks(it, size):
    while True:
        block = list(itertools.islice(it, size))
        if not block:
            return
        yield block


def collect_relations(field, fb, region, target, budget=None, rs=None, threads=1, block=2048):
    """
    Run the sieve over ``region`` until ``target`` relations are stored or
    ``budget`` candidates have been tested.  Passing an existing RelationSet
    continues it from its ``next_index``.
    """
    if target < 1:
        raise ValueError("target must be >= 1")
    if rs is None:
        rs = RelationSet(relations=[], region=region, fb_hash=fb.fb_hash)
    elif rs.fb_hash != fb.fb_hash:
        raise HashMismatch("relation set was built over another factor base")
    rs.region = region
    rs.exhausted = rs.budget_exhausted = False
    if len(rs) >= target:
        return rs
    tested_here = 0
    it = iter_candidates(region, field, rs.next_index)
    pool = None
    if threads > 1:
        pool = ProcessPoolExecutor(threads, initializer=_init_worker, initargs=(field, fb))
    else:
        _init_worker(field, fb)
    try:
        for blk in _blocks(it, block * max(1, threads)):
            if budget is not None:
                blk = blk[: budget - tested_here]
            if pool is not None:
                chunk = max(1, len(blk) // threads)
                parts = [blk[i : i + chunk] for i in range(0, len(blk), chunk)]
                results = [r for part in pool.map(_test_block, parts) for r in part]
            else:
                results = _test_block(blk)
            for idx, x, status, vec, norm in results:
                rs.tested += 1
                tested_here += 1
                rs.next_index = idx + 1
                if status == SMOOTH:
                    if norm == 1:
                        rs.units += 1
                    else:
                        rs.smooth += 1
                        rs.add(Relation(x=x, e=tuple(vec), norm=norm))
                elif status == EXCLUDED:
                    rs.excluded_hits += 1
                if len(rs) >= target:
                    return rs
            if budget is not None and tested_here >= budget:
                rs.budget_exhausted = True
                return rs
        rs.exhausted = True
        rs.next_index = region.raw_size()
        return rs
    finally:
        if pool is not None:
            pool.shutdown()


# ----------------------------------------------------------- verification


def check_norm_identity(fb, rel):
    prod = 1
    for q, e in zip(fb.ideals, rel.e):
        if e:
            prod *= q.norm**e
    return prod == rel.norm


def check_ideal_equality(field, fb, rel):
    return ideal_of_vector(field, fb, rel.e) == ideal_from_generators(field, [rel.x])


def verify_relations(field, fb, relations, sample=0.05, seed=0):
    """
    Norm identity on every relation plus full ideal equality on a random
    sample.  Returns the list of offending relations (empty on success).
    """
    bad = [r for r in relations if not check_norm_identity(fb, r)]
    rng = random.Random(seed)
    k = max(1, math.ceil(sample * len(relations))) if relations else 0
    for r in rng.sample(list(relations), k):
        if r not in bad and not check_ideal_equality(field, fb, r):
            bad.append(r)
    return bad


# --------------------------------------------------------------- database


def _dump(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def write_db(path, field, fb, rs, extra=None):
    header = {
        "fb_hash": fb.fb_hash,
        "T": list(field.T),
        "B": fb.bound,
        "t": rs.region.t,
        "S": rs.region.S,
        "S_min": rs.region.S_min,
        "skip_reducible": rs.region.skip_reducible,
        "skip_imprimitive": rs.region.skip_imprimitive,
        "next_index": rs.next_index,
    }
    if extra:
        header.update(extra)
    with open(path, "w") as f:
        f.write(_dump(header) + "\n")
        for r in rs.relations:
            f.write(_dump(r.to_json()) + "\n")


def read_db(path):
    """Returns (header, list of Relation)."""
    try:
        with open(path) as f:
            lines = [ln for ln in f.read().splitlines() if ln.strip()]
        header = json.loads(lines[0])
        rels = [Relation.from_json(json.loads(ln)) for ln in lines[1:]]
    except (OSError, ValueError, KeyError, IndexError) as exc:
        raise InputError(f"cannot read relation database {path}: {exc}") from exc
    return header, rels


def relation_set_from_db(header, rels, fb):
    if header.get("fb_hash") != fb.fb_hash:
        raise HashMismatch("relation database belongs to another field or factor base")
    region = SieveRegion(
        t=header["t"],
        S=header["S"],
        S_min=header.get("S_min", 0),
        skip_reducible=header.get("skip_reducible", False),
        skip_imprimitive=header.get("skip_imprimitive", True),
    )
    rs = RelationSet(relations=[], region=region, fb_hash=fb.fb_hash,
                     next_index=header.get("next_index", 0))
    for r in rels:
        rs.add(r)
    c = header.get("counters", {})
    rs.tested = c.get("tested", 0)
    rs.smooth = c.get("smooth", len(rels))
    rs.excluded_hits = c.get("excluded_hits", 0)
    rs.units = c.get("units", 0)
    return rs
