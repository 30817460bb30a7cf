"""
Class group driver: sieve in growing shells of the coefficient bound,
check the HNF determinant every batch and stop once it has settled.

Everything is a deterministic function of the relation stream, so a run
resumed from a (possibly truncated) relation database replays the stored
relations and continues at the candidate after the last one.
"""

import logging
import math
from dataclasses import dataclass, field as dc_field

from .errors import HashMismatch, InputError, SieveBudgetExhausted
from .factorbase import build_factor_base
from .linalg import IncrementalHNF, group_from_hnf
from .params import desk_scale_plan
from .sieve import (
    RelationSet,
    SieveRegion,
    collect_relations,
    read_db,
    target_relation_count,
    write_db,
)

log = logging.getLogger(__name__)

STABLE_BATCHES = 3
MAX_SHELLS = 10
MIN_ACTIVE = 16


@dataclass
class ClassGroupConfig:
    B: int
    t: int
    S: int
    target: int = None
    budget: int = None
    threads: int = 1
    stable_batches: int = STABLE_BATCHES
    max_shells: int = MAX_SHELLS

    def to_json(self):
        return {"B": self.B, "t": self.t, "S": self.S, "target": self.target,
                "stable_batches": self.stable_batches, "max_shells": self.max_shells}


def shell_bounds(S0, count):
    return [S0 << k for k in range(count)]


def shell_of(x, bounds):
    """Index of the first shell whose bound covers the height of x."""
    h = max(abs(c) for c in x)
    for k, S in enumerate(bounds):
        if h <= S:
            return k
    raise ValueError(f"element {x} lies outside every shell")


def raw_index(x, S):
    """Position of x in the raw enumeration of a region with bound S."""
    d = max(i for i, c in enumerate(x) if c)
    base = 2 * S + 1
    idx = sum(S * base**k for k in range(1, d))
    idx += (x[d] - 1) * base**d
    for i in range(d):
        idx += (x[i] + S) * base**i
    return idx


@dataclass
class _Tracker:
    """Feeds relations into an HNF and records the determinant at checkpoints."""

    ncols: int
    active: list
    pruned: list
    target: int
    batch: int
    stable_batches: int
    count: int = 0
    det_history: list = dc_field(default_factory=list)

    def __post_init__(self):
        self.hnf = IncrementalHNF(len(self.active))
        self._pruned = set(self.pruned)

    def next_checkpoint(self):
        if self.count < self.target:
            return self.target
        return self.target + ((self.count - self.target) // self.batch + 1) * self.batch

    def feed(self, rel):
        """Returns True when the stopping rule fires after this relation."""
        self.count += 1
        if not any(rel.e[j] for j in self._pruned):
            row = [rel.e[j] for j in self.active]
            if any(row):
                self.hnf.insert(row)
        if self.count < self.target or (self.count - self.target) % self.batch:
            return False
        if not self.hnf.full_rank():
            return False
        self.det_history.append(self.hnf.det())
        k = self.stable_batches
        tail = self.det_history[-(k + 1):]
        return len(tail) == k + 1 and len(set(tail)) == 1

    @property
    def stabilized(self):
        k = self.stable_batches
        tail = self.det_history[-(k + 1):]
        return len(tail) == k + 1 and len(set(tail)) == 1

    def result(self):
        if not self.active:
            return group_from_hnf([], [], self.pruned, self.det_history)
        return group_from_hnf(self.hnf.matrix(), self.active, self.pruned, self.det_history)


def widen_bound(field, B, t, min_active=MIN_ACTIVE, step=10, cap=10**5):
    """Smallest B' >= B (in steps) whose base has min_active ideals of degree <= t."""
    while B < cap:
        fb = build_factor_base(field, B)
        if sum(1 for q in fb.ideals if q.f <= t) >= min_active:
            break
        B += step
    return B


def default_config(field, B=None, t=None, S=None, target=None, budget=None, threads=1):
    plan = desk_scale_plan(field)
    t = max(1, min(plan.t if t is None else t, field.n - 1))
    if B is None:
        B = widen_bound(field, plan.B, t)
    return ClassGroupConfig(
        B=B,
        t=t,
        S=plan.S if S is None else S,
        target=target,
        budget=budget,
        threads=threads,
    )


@dataclass
class ClassGroupRun:
    result: object
    fb: object
    relations: RelationSet
    config: ClassGroupConfig


def _db_header(cfg, bounds, shell):
    return {"S_start": bounds[0], "shell": shell, "target": cfg.target,
            "stable_batches": cfg.stable_batches, "max_shells": cfg.max_shells}


def run_classgroup(field, cfg, db_path=None, resume=None):
    """
    Factor base, shell-by-shell sieve and determinant stabilization.

    With ``resume`` (a relation database path) the configuration stored in
    its header overrides ``cfg`` except for threads and budget.
    """
    stored = []
    if resume is not None:
        header, stored = read_db(resume)
        if list(header.get("T", [])) != list(field.T):
            raise HashMismatch("relation database belongs to another field")
        cfg = ClassGroupConfig(
            B=header["B"], t=header["t"], S=header["S_start"], target=header.get("target"),
            budget=cfg.budget, threads=cfg.threads,
            stable_batches=header.get("stable_batches", STABLE_BATCHES),
            max_shells=header.get("max_shells", MAX_SHELLS),
        )
    fb = build_factor_base(field, cfg.B)
    if resume is not None and header["fb_hash"] != fb.fb_hash:
        raise HashMismatch("relation database was built over another factor base")
    N = len(fb.ideals)
    if cfg.target is None:
        cfg.target = target_relation_count(N)
    pruned = [i for i, q in enumerate(fb.ideals) if q.f > cfg.t]
    active = [i for i in range(N) if i not in set(pruned)]
    tracker = _Tracker(N, active, pruned, cfg.target, max(1, math.isqrt(N - 1) + 1),
                       cfg.stable_batches)
    bounds = shell_bounds(cfg.S, cfg.max_shells)
    log.info("factor base: %d ideals (B=%d), %d pruned, target %d", N, cfg.B, len(pruned), cfg.target)

    def region(k):
        return SieveRegion(t=cfg.t, S=bounds[k], S_min=bounds[k - 1] if k else 0)

    rs = RelationSet(relations=[], region=region(0), fb_hash=fb.fb_hash)
    shell, done = 0, False
    for rel in stored:
        if len(rel.e) != N:
            raise InputError("stored relation has the wrong length")
        rs.add(rel)
        done = tracker.feed(rel)
        if done:
            break
    if rs.relations:
        # continue right after the last stored relation
        shell = shell_of(rs.relations[-1].x, bounds)
        rs.region = region(shell)
        rs.next_index = raw_index(rs.relations[-1].x, bounds[shell]) + 1

    tested = 0
    while not done:
        goal = tracker.next_checkpoint()
        remaining = None if cfg.budget is None else cfg.budget - tested
        before = rs.tested
        rs = collect_relations(field, fb, rs.region, goal, budget=remaining, rs=rs,
                               threads=cfg.threads)
        tested += rs.tested - before
        for rel in rs.relations[tracker.count:]:
            if tracker.feed(rel):
                done = True
                break
        if done:
            break
        if rs.budget_exhausted:
            _save(db_path, field, fb, rs, cfg, bounds, shell)
            raise SieveBudgetExhausted(f"sieve budget of {cfg.budget} candidates exhausted")
        if rs.exhausted:
            if shell + 1 >= len(bounds):
                break
            shell += 1
            log.info("shell %d exhausted; S -> %d", shell - 1, bounds[shell])
            rs.region = region(shell)
            rs.next_index = 0
    _save(db_path, field, fb, rs, cfg, bounds, shell)
    log.info("relations %d, counters %s, det history %s", len(rs), rs.counters(),
             tracker.det_history)
    result = tracker.result()
    result.stabilized = tracker.stabilized
    return ClassGroupRun(result=result, fb=fb, relations=rs, config=cfg)


def _save(path, field, fb, rs, cfg, bounds, shell):
    if path is not None:
        write_db(path, field, fb, rs, extra=_db_header(cfg, bounds, shell))


def class_number_run(field, **kw):
    """Convenience for tests: h from a default run."""
    return run_classgroup(field, default_config(field, **kw)).result

