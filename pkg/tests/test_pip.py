import math
import random

import pytest

from cgsieve import ideals as I
from cgsieve.errors import DescentBudgetExhausted, NotPrincipalInLattice
from cgsieve.factorbase import primes_above
from cgsieve.numfield import element_norm
from cgsieve.params import LARGE, MEDIUM, SMALL, ClassDescriptor, medium_params
from cgsieve.pip import (
    PipContext,
    assemble_witness,
    descend,
    descent_steps,
    make_schedule,
    medium_recursion,
    prime_ideal_above,
    randomize,
    solve_pip,
)
from oracles import is_principal_quadratic

HALF = ClassDescriptor(1, 1, 0.5, 0.5)


def test_medium_schedule_example():
    cfg = make_schedule(HALF, regime=MEDIUM, l=4)
    assert cfg.k == pytest.approx(1 / 3)
    assert cfg.s0 == pytest.approx((2 / 3) ** (1 / 3), rel=1e-12)
    assert round(cfg.s0, 4) == 0.8736
    assert cfg.y_asymptotic == pytest.approx(math.sqrt(math.e**3 * 9 / 4), rel=1e-12)
    assert round(cfg.y_asymptotic, 4) == 6.7225
    assert cfg.limit == pytest.approx((4 / 9 / cfg.y_asymptotic**2) ** (1 / 3), rel=1e-12)
    assert cfg.limit == pytest.approx(0.2141, abs=2e-4)
    assert cfg.c_b == pytest.approx(medium_params(HALF).c_b, rel=1e-12)
    assert cfg.feasible and cfg.e_s_l <= 0.588
    assert len(cfg.s) == 5 and len(cfg.sublattice_dims) == 4


def test_medium_recursion_converges():
    y = math.sqrt(math.e**3 * 9 / 4)
    s = medium_recursion(0.8736, 1 / 3, 1, 1, y, 20)
    assert abs(s[-1] - (4 / 9 / y**2) ** (1 / 3)) < 1e-6
    assert all(a > b for a, b in zip(s, s[1:]))


def test_descent_steps_example():
    assert descent_steps(1 / 3, log_x=math.log(math.exp(6) / 6)) == 4


def test_large_and_small_schedules():
    d = ClassDescriptor(1.5, 1, 0.8, 0.3)
    cfg = make_schedule(d, l=3, c_beta=2.0)
    assert cfg.regime == LARGE
    assert cfg.s0**3 == pytest.approx(0.4 * 1.5**4 / (2 * 4.0), rel=1e-9)
    assert cfg.e_s_l == pytest.approx(cfg.c_b, rel=1e-9)
    cfg = make_schedule(ClassDescriptor(1, 1, 0.2, 1.0), l=2)
    assert cfg.regime == SMALL and cfg.k == pytest.approx(0.5)
    assert cfg.feasible


def test_randomize(f5, fb5):
    a = prime_ideal_above(f5, 2)
    out, rec = randomize(f5, fb5, a, "s", max_exp=0)
    assert out == a and rec == {}
    u = I.unit_ideal(f5)
    out, rec = randomize(f5, fb5, u, "t", max_exp=3, count=4)
    assert out.norm == math.prod(fb5.ideals[j].norm ** e for j, e in rec.items())
    again, rec2 = randomize(f5, fb5, u, "t", max_exp=3, count=4)
    assert (again, rec2) == (out, rec)
    # (2, 1+theta) * (3, theta+1) has norm 6 and matches the generator product
    j = next(i for i, q in enumerate(fb5.ideals) if q.p == 3 and q.g[0] == 1)
    prod = I.multiply(f5, a, I.prime_ideal_hnf(f5, fb5.ideals[j]))
    assert prod.norm == 6
    oracle = I.ideal_from_generators(f5, [(6, 0), (2, 2), (3, 3), (-4, 2)])
    assert prod == oracle


@pytest.fixture(scope="module")
def ctx5(pip_runs):
    return pip_runs["x2+5"][2]


def test_descend_smooth_inputs(ctx5, f5):
    fb = ctx5.fb
    j = next(i for i, q in enumerate(fb.ideals) if q.p == 3)
    res = descend(ctx5, I.prime_ideal_hnf(f5, fb.ideals[j]))
    assert res.multipliers == [] and res.v == [int(i == j) for i in range(len(fb.ideals))]
    a = I.ideal_from_generators(f5, [(1, 1)])
    res = descend(ctx5, a)
    assert res.multipliers == []
    assert I.ideal_of_vector(f5, fb, res.v) == a


def test_descend_large_prime(f5, fb5, sweep5):
    # 23 splits in X^2+5 and lies above B = 10
    ctx = PipContext(f5, fb5, sweep5.relations)
    Q = prime_ideal_above(f5, 23)
    assert Q.norm == 23
    fb = fb5
    hits = 0
    for seed in range(50):
        b_in, rec = randomize(f5, fb, Q, seed, max_exp=2, count=2, candidates=ctx.small_ideals)
        _, b = I.reduce_ideal(f5, b_in)
        hits += I.factor_over_base(f5, fb, b) is not None
    assert hits >= 1
    res = descend(ctx, Q, seed=1)
    assert res.multipliers
    assert solve_pip(ctx, I.ideal_from_generators(f5, [(3, 2)])).verified


def test_descend_budget(ctx5, f5):
    with pytest.raises(DescentBudgetExhausted):
        descend(ctx5, prime_ideal_above(f5, 10007), budget=0)


def test_solve_pip_examples(ctx5, f5):
    wit = solve_pip(ctx5, I.unit_ideal(f5))
    assert wit.value == f5.one and wit.verified
    a = I.ideal_from_generators(f5, [(3, 1)])
    wit = solve_pip(ctx5, a)
    assert wit.verified
    assert wit.value in ((3, 1), (-3, -1))
    with pytest.raises(NotPrincipalInLattice):
        solve_pip(ctx5, prime_ideal_above(f5, 2))


@pytest.mark.parametrize("name", ["x2+5", "x2+1", "x2+x+6", "x3-x-1"])
def test_roundtrip_small(pip_runs, name):
    field, _, ctx = pip_runs[name]
    rng = random.Random(name)
    for _ in range(8):
        x = [rng.randint(-10, 10) for _ in range(field.n)]
        if element_norm(field, x) == 0:
            continue
        a = I.ideal_from_generators(field, [x])
        wit = solve_pip(ctx, a, seed=name)
        assert wit.verified
        assert I.ideal_from_generators(field, [wit.value]) == a


def test_non_principal_matches_oracle(pip_runs):
    field, run, ctx = pip_runs["x2+x+6"]
    assert run.result.h == 3
    for p in (2, 3, 5, 7):
        for q in primes_above(field, p):
            a = I.prime_ideal_hnf(field, q)
            if is_principal_quadratic(field, a):
                assert solve_pip(ctx, a).verified
            else:
                with pytest.raises(NotPrincipalInLattice):
                    solve_pip(ctx, a)


def test_assemble_witness_rejects_wrong_factor(f5):
    a = I.ideal_from_generators(f5, [(3, 1)])
    assert not assemble_witness(f5, a, [((1, 1), 1)]).verified
    wit = assemble_witness(f5, a, [((3, 1), 2), ((3, 1), -1)])
    assert wit.verified and wit.value == (3, 1)


def test_context_with_extra_rows(pip_runs):
    field, run, _ = pip_runs["x2+1"]
    ctx = PipContext(field, run.fb, run.relations.relations)
    assert solve_pip(ctx, I.ideal_from_generators(field, [(2, 1)])).verified
