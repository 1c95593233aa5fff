import random

from hypothesis import given, settings, strategies as st

from stabbers.core import EndpointId
from stabbers.index import EndpointIndex, RankCounter
from support import rand_instance


def _brute_report(inst, active, box):
    x_lo, x_hi, y_lo, y_hi = box
    out = []
    for eid in inst.endpoint_ids():
        if not active[eid.index]:
            continue
        x, y = inst.xs[eid.index], inst.ys[eid.index]
        if x_lo is not None and x < x_lo:
            continue
        if x_hi is not None and x > x_hi:
            continue
        if y_lo is not None and y < y_lo:
            continue
        if y_hi is not None and y > y_hi:
            continue
        out.append(eid)
    return sorted(out)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_index_matches_brute_force(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 9)
    inst = rand_instance(rng, n, span=30)
    idx = EndpointIndex(inst)
    active = [True] * (2 * n)
    for _ in range(30):
        op = rng.random()
        if op < 0.35:
            i = rng.randrange(2 * n)
            eid = EndpointId.from_index(i)
            if active[i]:
                idx.deactivate(eid)
            else:
                idx.activate(eid)
            active[i] = not active[i]
        else:
            bounds = []
            for _ in range(4):
                bounds.append(None if rng.random() < 0.4 else rng.randint(-31, 31))
            box = tuple(bounds)
            assert sorted(idx.report(*box)) == _brute_report(inst, active, box)


def test_index_clone_is_independent():
    rng = random.Random(5)
    inst = rand_instance(rng, 4)
    idx = EndpointIndex(inst)
    other = idx.clone()
    idx.deactivate(EndpointId(0, "A"))
    assert other.is_active(EndpointId(0, "A"))
    assert not idx.is_active(EndpointId(0, "A"))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_rank_counter_matches_brute_force(seed):
    rng = random.Random(seed)
    inst = rand_instance(rng, rng.randint(1, 8), span=25)
    counter = RankCounter(inst)
    m = 2 * inst.n
    for _ in range(25):
        xv, yv = rng.randint(-26, 26), rng.randint(-26, 26)
        sx, sy = rng.random() < 0.5, rng.random() < 0.5
        rx = counter.x_rank(xv, strict=sx)
        ry = counter.y_rank(yv, strict=sy)
        got = counter.count_ranks(0, rx, 0, ry)
        expect = sum(
            1
            for i in range(m)
            if (inst.xs[i] < xv if sx else inst.xs[i] <= xv)
            and (inst.ys[i] < yv if sy else inst.ys[i] <= yv)
        )
        assert got == expect
