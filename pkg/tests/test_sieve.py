import random

import pytest

from cgsieve.errors import HashMismatch
from cgsieve.factorbase import build_factor_base, decompose
from cgsieve.numfield import make_field
from cgsieve.sieve import (
    Relation,
    SieveRegion,
    check_ideal_equality,
    collect_relations,
    enumerate_candidates,
    read_db,
    relation_set_from_db,
    target_relation_count,
    verify_relations,
    write_db,
)


def test_enumeration_examples(f5):
    assert list(enumerate_candidates(SieveRegion(1, 1), f5)) == [(-1, 1), (0, 1), (1, 1)]
    assert list(enumerate_candidates(SieveRegion(0, 5), f5)) == []
    two = list(enumerate_candidates(SieveRegion(1, 2), f5))
    assert len(two) == 7
    assert set(two) == {(0, 1), (1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2)}
    assert SieveRegion(1, 2).raw_size() + 2 * 2 + 1 + 2 * 5 == 25  # raw (2S+1)^(t+1) counts all signs


def test_enumeration_hand_counts(f5):
    # n = 2, t = 1: primitive a + b*theta with 1 <= b <= S, |a| <= S
    from math import gcd

    for S in (1, 2, 3):
        expected = sum(1 for b in range(1, S + 1) for a in range(-S, S + 1) if gcd(a, b) == 1)
        got = list(enumerate_candidates(SieveRegion(1, S), f5))
        assert len(got) == expected
        negs = {tuple(-c for c in x) for x in got}
        assert not negs & set(got)


def test_stream_prefix_monotone(cubic):
    small = set(enumerate_candidates(SieveRegion(1, 3), cubic))
    assert small <= set(enumerate_candidates(SieveRegion(2, 3), cubic))
    assert small <= set(enumerate_candidates(SieveRegion(1, 5), cubic))


def test_skip_reducible(cubic):
    full = list(enumerate_candidates(SieveRegion(2, 3), cubic))
    irr = list(enumerate_candidates(SieveRegion(2, 3, skip_reducible=True), cubic))
    assert set(irr) < set(full)
    assert (0, 0, 1) not in irr  # theta^2 = X * X


def test_target_relation_count():
    assert target_relation_count(6) == 26
    assert target_relation_count(10000) == 10400
    with pytest.raises(ValueError):
        target_relation_count(0)


def test_collect_examples(f5, fb5):
    rs = collect_relations(f5, fb5, SieveRegion(1, 2), target=8)
    got = {r.x: r.e for r in rs.relations}
    assert got[(1, 1)] == (1, 1, 0, 0, 0, 0)
    assert got[(0, 1)] == (0, 0, 0, 1, 0, 0)
    one = collect_relations(f5, fb5, SieveRegion(1, 2), target=1)
    assert len(one) == 1
    first = next(x for x in enumerate_candidates(SieveRegion(1, 2), f5) if decompose(f5, fb5, x))
    assert one.relations[0].x == first
    with pytest.raises(ValueError):
        collect_relations(f5, fb5, SieveRegion(1, 2), target=0)


def test_hit_rate_matches_exhaustive(f5, fb5):
    region = SieveRegion(1, 20)
    cands = list(enumerate_candidates(region, f5))
    oracle = sum(1 for x in cands if decompose(f5, fb5, x) is not None)
    rs = collect_relations(f5, fb5, region, target=10**9)
    assert rs.exhausted
    assert rs.tested == len(cands)
    rate, orate = (rs.smooth + rs.units) / rs.tested, oracle / len(cands)
    assert 0.5 * orate <= rate <= 2 * orate


def test_budget_and_continuation(f5, fb5):
    region = SieveRegion(1, 20)
    full = collect_relations(f5, fb5, region, target=40)
    part = collect_relations(f5, fb5, region, target=40, budget=50)
    assert part.budget_exhausted and part.tested == 50
    rest = collect_relations(f5, fb5, region, target=40, rs=part)
    assert [r.x for r in rest.relations] == [r.x for r in full.relations]


def test_threads_identical(cubic):
    fb = build_factor_base(cubic, 60)
    region = SieveRegion(2, 5)
    a = collect_relations(cubic, fb, region, target=10**9)
    b = collect_relations(cubic, fb, region, target=10**9, threads=3, block=97)
    assert a.relations == b.relations
    assert a.counters() == b.counters()


def test_relations_verify(f5, fb5, sweep5, cubic):
    assert verify_relations(f5, fb5, sweep5.relations, sample=0.05, seed=1) == []
    fb = build_factor_base(cubic, 60)
    rs = collect_relations(cubic, fb, SieveRegion(2, 4), target=10**9)
    assert verify_relations(cubic, fb, rs.relations, sample=0.2, seed=2) == []
    bad = Relation(x=(1, 1), e=(1, 0, 1, 0, 0, 0), norm=6)  # norm fits, ideals do not
    assert not check_ideal_equality(f5, fb5, bad)
    assert verify_relations(f5, fb5, [bad], sample=1.0) == [bad]


def test_db_roundtrip(tmp_path, f5, fb5, sweep5):
    p1, p2 = tmp_path / "a.rels", tmp_path / "b.rels"
    write_db(p1, f5, fb5, sweep5)
    header, rels = read_db(p1)
    assert rels == sweep5.relations
    rs = relation_set_from_db(header, rels, fb5)
    write_db(p2, f5, fb5, rs)
    assert p1.read_bytes() == p2.read_bytes()
    with pytest.raises(HashMismatch):
        relation_set_from_db(header, rels, build_factor_base(f5, 11))


def test_full_sweep_contains_small_relations(f5, fb5, sweep5):
    rng = random.Random(0)
    xs = {r.x for r in sweep5.relations}
    for r in rng.sample(sweep5.relations, 20):
        assert r.x in xs and r.norm > 1
