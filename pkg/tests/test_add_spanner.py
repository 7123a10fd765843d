import itertools
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperspan.add_spanner import (
    AdditiveSpanner,
    SpannerParams,
    choose_at_most,
    iterated_log,
    paper_params,
    param_violations,
    subset_rank,
    subset_unrank,
    validate_params,
)
from hyperspan.errors import ConstraintViolation, DimensionError, ParameterError
from hyperspan.hyperbits import distinct_coordinate_sums, hamming_distance
from hyperspan.verify import bfs, materialize, symmetry_check, validate_path

from conftest import parity_check_syndrome

TOY = SpannerParams(n=19, k=1, q=7, block_sizes=(3, 3, 3, 3), s=2, g=2)

# level-2 schedules: top spanner plus the level-1 sub-spanner it needs
SMALL_K2 = SpannerParams(n=11, k=2, q=3, block_sizes=(2, 2, 2, 2), s=3, g=2)
SMALL_K2_SCHEDULE = {(1, 6): SpannerParams(n=6, k=1, q=3, block_sizes=(1, 1, 1), s=1, g=1)}
MID_K2 = SpannerParams(n=23, k=2, q=3, block_sizes=(5, 5, 5, 5), s=3, g=2)
MID_K2_SCHEDULE = {(1, 15): SpannerParams(n=15, k=1, q=7, block_sizes=(2, 2, 2, 2), s=2, g=2)}


@pytest.fixture(scope="module")
def toy():
    return AdditiveSpanner(TOY)


def brute_level1_mask(p, x):
    """Neighbor directions of a level-1 spanner straight from the definition."""
    q, t, s, g = p.q, p.t, p.s, p.g
    mask = (1 << q) - 1
    idx = parity_check_syndrome(x & mask, q)
    subsets = sorted(itertools.combinations(range(t), s), key=lambda c: tuple(reversed(c)))
    if idx >= len(subsets):
        return mask
    starts = [q + sum(p.block_sizes[:i]) for i in range(t)]
    bx = set()
    for b in subsets[idx]:
        bx |= set(range(starts[b], starts[b] + p.block_sizes[b]))
    mask |= sum(1 << c for c in bx)  # level-0 sub-spanner: every direction in B_x
    per = math.ceil(t / g)
    residue = sum((x >> c) & 1 for c in bx) % g
    for b in range(residue * per, min((residue + 1) * per, t)):
        for c in range(starts[b], starts[b] + p.block_sizes[b]):
            if c not in bx:
                mask |= 1 << c
    return mask


def test_validate_examples():
    assert validate_params(TOY) is TOY
    validate_params(SpannerParams(n=19, k=1, q=7, block_sizes=(3, 3, 3, 3), s=3, g=1))
    with pytest.raises(ConstraintViolation) as err:
        validate_params(SpannerParams(n=19, k=1, q=6, block_sizes=(4, 3, 3, 3), s=2, g=2))
    assert any("q = 2^r - 1" in v for v in err.value.violations)
    bad = SpannerParams(n=47, k=1, q=7, block_sizes=(5,) * 8, s=4, g=1)
    assert any("C(t,s) <= q + 1" in v for v in param_violations(bad))
    assert any("t >= s" in v for v in param_violations(
        SpannerParams(n=13, k=1, q=7, block_sizes=(3, 3), s=3, g=1)))
    assert any("sum(blockSizes)" in v for v in param_violations(
        SpannerParams(n=20, k=1, q=7, block_sizes=(3, 3, 3, 3), s=2, g=2)))
    assert param_violations(SpannerParams.base(5)) == []


def test_choose_at_most():
    assert choose_at_most(4, 2, 8) == 6
    assert choose_at_most(4, 2, 5) is None
    assert choose_at_most(10**6, 3, 10) is None
    for t in range(12):
        for s in range(t + 1):
            assert choose_at_most(t, s, 10**9) == math.comb(t, s)


@pytest.mark.parametrize("n", [10**3, 10**6, 10**9])
def test_paper_params_fail_at_desk_scale(n):
    with pytest.raises(ConstraintViolation) as err:
        paper_params(n, 1)
    assert any(v.startswith("t >= 1") for v in err.value.violations)


def test_paper_params_small_n():
    with pytest.raises(ConstraintViolation) as err:
        paper_params(4, 1)
    assert err.value.violations
    with pytest.raises(ParameterError):
        paper_params(1, 1)
    with pytest.raises(ConstraintViolation):
        paper_params(10, 3)  # iterated log drops below 1
    assert iterated_log(math.e ** math.e, 2) == pytest.approx(1.0)


def test_params_dict_round_trip():
    d = TOY.to_dict()
    assert list(d) == ["level", "n", "q", "blockSizes", "s", "g"]
    assert SpannerParams.from_dict(d) == TOY
    assert SpannerParams.from_dict({"level": 0, "n": 5}) == SpannerParams.base(5)
    with pytest.raises(ParameterError):
        SpannerParams.from_dict({"level": 1, "n": 5})


def test_subset_rank_examples():
    assert subset_rank({0, 1}) == 0
    assert subset_rank({0, 2}) == 1
    for s in range(0, 7):
        subsets = sorted(itertools.combinations(range(6), s), key=lambda c: tuple(reversed(c)))
        for i, sub in enumerate(subsets):
            assert subset_rank(sub) == i
            assert subset_unrank(i, 6, s) == sub
    with pytest.raises(ParameterError):
        subset_unrank(15, 6, 2)
    with pytest.raises(ParameterError):
        subset_rank([1, 1])


@given(st.integers(1, 40).flatmap(lambda t: st.tuples(st.just(t), st.integers(1, t))).flatmap(
    lambda ts: st.tuples(st.just(ts[0]), st.just(ts[1]), st.integers(0, math.comb(*ts) - 1))))
def test_rank_unrank_inverse(args):
    t, s, i = args
    sub = subset_unrank(i, t, s)
    assert len(sub) == s and list(sub) == sorted(set(sub)) and sub[-1] < t
    assert subset_rank(sub) == i


def test_layout(toy):
    assert list(toy.b0) == list(range(7))
    assert [list(b) for b in toy.blocks] == [[7, 8, 9], [10, 11, 12], [13, 14, 15], [16, 17, 18]]
    assert toy.groups == ((0, 1), (2, 3))
    assert toy.class_count == 6
    assert toy.sub_spanner(6).k == 0 and toy.sub_spanner(6).n == 6
    assert toy.sub_spanner(6) is toy.sub_spanner(6)


def test_code_index_and_block_set(toy):
    assert toy.code_index_of(0) == 0
    assert toy.code_index_of(1) == 1
    sizes = [0] * 8
    for w in range(128):
        sizes[toy.code_index_of(w)] += 1
    assert sizes == [16] * 8
    coords, blocks = toy.block_set_of(0)
    assert blocks == (0, 1) and list(coords) == list(range(7, 13))
    x7 = next(w for w in range(128) if toy.code_index_of(w) == 7)
    assert toy.block_set_of(x7) is None
    assert toy.degree(x7) == 7


def test_level0():
    sp = AdditiveSpanner(SpannerParams.base(3))
    assert sp.neighbors(0) == {1, 2, 4}
    assert all(sp.degree(x) == 3 for x in range(8))
    rep = sp.route(3, 3)
    assert rep.path == [3] and rep.claimed_slack == 0


@pytest.mark.parametrize("n", range(1, 11))
def test_level0_route_invariant_exhaustive(n):
    sp = AdditiveSpanner(SpannerParams.base(n))
    for x in range(1 << n):
        for y in range(1 << n):
            rep = sp.route(x, y)
            ell = hamming_distance(x, y)
            assert rep.claimed_slack == 0 and rep.length == ell
            assert rep.distinct_sums >= -(-ell // 2) + 1


def test_toy_oracle_matches_definition(toy, rng):
    xs = [rng.getrandbits(19) for _ in range(20_000)] + list(range(1 << 12))
    for x in xs:
        assert toy.neighbor_mask(x) == brute_level1_mask(TOY, x)


def test_toy_exhaustive_symmetry_and_degree(toy):
    M = materialize(toy)
    assert symmetry_check(M) == []
    degs = M.degrees()
    analytic = np.fromiter((toy.degree(x) for x in range(1 << 19)), dtype=degs.dtype, count=1 << 19)
    assert np.array_equal(degs, analytic)
    assert int(degs.max()) <= 19


def test_h2_h3_well_defined(toy, rng):
    for _ in range(5000):
        x = rng.getrandbits(19)
        bs = toy.block_set_of(x)
        if bs is None:
            continue
        coords, _ = bs
        # differences off B0 keep the block set
        y = x ^ (rng.getrandbits(19) & ~toy.b0.mask)
        assert toy.block_set_of(y)[0] == coords
        cls = toy.classes[toy.code_index_of(x)]
        r = (x & coords.mask).bit_count() % TOY.g
        for d in range(19):
            if (cls.h3[r] >> d) & 1:
                z = x ^ (1 << d)
                assert toy.block_set_of(z)[0] == coords
                assert (z & coords.mask).bit_count() % TOY.g == r


def test_toy_routes(toy, rng):
    for _ in range(5000):
        x, y = rng.getrandbits(19), rng.getrandbits(19)
        rep = toy.route(x, y)
        assert validate_path(toy, rep.path, y, source=x) is None
        assert rep.claimed_slack >= 0 and rep.claimed_slack % 2 == 0
        assert rep.distinct_sums == distinct_coordinate_sums(rep.path)
        if toy.case1_eligible(x, y):
            assert rep.claimed_slack <= 2


def test_toy_case1_pairs(toy, rng):
    for _ in range(5000):
        x = rng.getrandbits(19)
        blocks = rng.sample(range(4), 2)
        mask = toy.b0.mask | toy.blocks[blocks[0]].mask | toy.blocks[blocks[1]].mask
        y = x ^ (rng.getrandbits(19) & mask)
        assert toy.case1_eligible(x, y)
        rep = toy.route(x, y)
        assert validate_path(toy, rep.path, y, source=x) is None
        assert rep.claimed_slack <= 2 and rep.fallback_rounds == 0


def test_stretch_oracle_bounded_by_slack(toy, rng):
    x = rng.getrandbits(19)
    dist = bfs(toy, x)
    for _ in range(2000):
        y = rng.getrandbits(19)
        stretch = int(dist[y]) - hamming_distance(x, y)
        assert 0 <= stretch <= toy.route(x, y).claimed_slack
        assert stretch % 2 == 0
    assert toy.stretch_oracle(x, x) == 0
    assert toy.stretch_oracle(x, x ^ 1) == 0


def test_route_rejects_bad_vertices(toy):
    with pytest.raises(DimensionError):
        toy.route(0, 1 << 19)


def test_missing_schedule_entry():
    with pytest.raises(ParameterError):
        AdditiveSpanner(SMALL_K2, {})


@pytest.mark.parametrize("params,schedule", [(SMALL_K2, SMALL_K2_SCHEDULE), (MID_K2, MID_K2_SCHEDULE)])
def test_level2_spanners(params, schedule):
    sp = AdditiveSpanner(params, schedule)
    rng = random.Random(7)
    if params.n <= 12:
        M = materialize(sp)
        assert symmetry_check(M) == []
        assert all(int(M.degrees()[x]) == sp.degree(x) for x in range(1 << params.n))
        ecc_src = [rng.getrandbits(params.n) for _ in range(20)]
        for x in ecc_src:
            dist = bfs(M, x)
            for y in range(1 << params.n):
                rep = sp.route(x, y)
                assert validate_path(sp, rep.path, y, source=x) is None
                assert 0 <= int(dist[y]) - hamming_distance(x, y) <= rep.claimed_slack
                assert rep.claimed_slack % 2 == 0
    else:
        assert symmetry_check(sp, samples=3000, seed=1) == []
        for _ in range(3000):
            x, y = rng.getrandbits(params.n), rng.getrandbits(params.n)
            assert sp.degree(x) == len(sp.neighbors(x))
            rep = sp.route(x, y)
            assert validate_path(sp, rep.path, y, source=x) is None
            assert rep.claimed_slack % 2 == 0


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**19 - 1), st.integers(0, 2**19 - 1))
def test_toy_route_property(x, y):
    sp = AdditiveSpanner(TOY)
    rep = sp.route(x, y)
    assert rep.path[0] == x and rep.path[-1] == y
    assert validate_path(sp, rep.path, y) is None
    assert (rep.length - hamming_distance(x, y)) % 2 == 0
