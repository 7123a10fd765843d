import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperspan.antipodal import (
    AntipodalCycleGraph,
    CycleLocation,
    base_cycle_position,
    base_cycle_vertex,
)
from hyperspan.errors import DimensionError
from hyperspan.hyperbits import antipode, from_f_basis, to_f_basis
from hyperspan.verify import antipodal_distances, materialize, symmetry_check, validate_path

from conftest import S, V, npc_member_oracle


def cycle_vertex(n, p):
    ones = (1 << (p % (2 * n) if p % (2 * n) <= n else p % (2 * n) - n)) - 1
    return ones if p % (2 * n) <= n else ((1 << n) - 1) ^ ones


def brute_cycles(v, n):
    """Enumerate the candidate prefix-basis vectors and keep code members."""
    a = to_f_basis(v)
    cands = [a] + [a ^ (1 << j) for j in range(n)] + \
        [a ^ (1 << (n - 1)) ^ (1 << j) for j in range(n) if j != n - 1]
    found = []
    for s in cands:
        if npc_member_oracle(s, n):
            t = from_f_basis(s)
            p = next(p for p in range(2 * n) if cycle_vertex(n, p) == v ^ t)
            found.append((t, p))
    return found


def brute_edges(n):
    """Union of all translated base cycles, built from scratch."""
    E = set()
    for t in range(1 << n):
        if npc_member_oracle(to_f_basis(t), n):
            for p in range(2 * n):
                a, b = t ^ cycle_vertex(n, p), t ^ cycle_vertex(n, p + 1)
                if a != b:
                    E.add(frozenset((a, b)))
    return E


def test_base_cycle_examples():
    assert [S(base_cycle_vertex(3, p), 3) for p in range(6)] == \
        ["000", "100", "110", "111", "011", "001"]
    assert antipode(base_cycle_vertex(3, 1), 3) == base_cycle_vertex(3, 4)
    assert [base_cycle_vertex(1, p) for p in range(2)] == [0, 1]
    with pytest.raises(DimensionError):
        base_cycle_vertex(3, 6)
    assert base_cycle_position(3, V("110")) == 2
    assert base_cycle_position(3, V("010")) is None
    assert base_cycle_position(3, V("000")) == 0


@pytest.mark.parametrize("n", range(1, 16))
def test_base_cycle_structure(n):
    for p in range(2 * n):
        v = base_cycle_vertex(n, p)
        assert v == cycle_vertex(n, p)
        assert base_cycle_position(n, v) == p
        assert antipode(v, n) == base_cycle_vertex(n, (p + n) % (2 * n))
        assert v ^ base_cycle_vertex(n, (p + 1) % (2 * n)) == 1 << (p % n)


def test_n1_single_edge():
    H = AntipodalCycleGraph(1)
    assert H.neighbors(0) == {1}
    assert H.antipodal_walk(0) == [0, 1]


@pytest.mark.parametrize("n", range(1, 11))
def test_cycles_through_matches_candidate_scan(n):
    H = AntipodalCycleGraph(n)
    for v in range(1 << n):
        got = H.cycles_through(v)
        assert [tuple(c) for c in got] == brute_cycles(v, n)
        for c in got:
            assert isinstance(c, CycleLocation)
            assert base_cycle_vertex(n, c.position) ^ c.translation == v
            assert H.is_translation(c.translation)


def test_cycle_multiplicity_n7_perfect_case():
    H = AntipodalCycleGraph(7)
    assert {len(H.cycles_through(v)) for v in range(128)} <= {1, 2, 3}


@pytest.mark.parametrize("n", [4, 5, 6, 9, 10])
def test_cycle_multiplicity_bounds(n):
    H = AntipodalCycleGraph(n)
    assert all(1 <= len(H.cycles_through(v)) <= 5 for v in range(1 << n))


@pytest.mark.parametrize("n", range(4, 8))
def test_origin_on_base_cycle_when_in_code(n):
    H = AntipodalCycleGraph(n)
    assert H.is_translation(0)
    assert CycleLocation(0, 0) in H.cycles_through(0)


@pytest.mark.parametrize("n", range(1, 10))
def test_neighbors_equal_cycle_union(n):
    H = AntipodalCycleGraph(n)
    E = brute_edges(n)
    for v in range(1 << n):
        want = {w for e in E if v in e for w in e if w != v}
        assert H.neighbors(v) == want
        assert H.degree(v) == len(want) <= 10


@pytest.mark.parametrize("n", range(1, 13))
def test_walk_and_antipodal_distance(n):
    H = AntipodalCycleGraph(n)
    for v in range(1 << n):
        walk = H.antipodal_walk(v)
        assert len(walk) == n + 1 and walk[-1] == antipode(v, n)
        assert validate_path(H, walk, antipode(v, n)) is None
    assert set(antipodal_distances(H).tolist()) == {n}


def test_walk_example():
    H = AntipodalCycleGraph(3)
    assert [S(x, 3) for x in H.antipodal_walk(V("000"))] == ["000", "100", "110", "111"]


@pytest.mark.parametrize("n", [12, 14])
def test_degree_and_symmetry_exhaustive(n):
    H = AntipodalCycleGraph(n)
    M = materialize(H)
    assert int(M.degrees().max()) <= 10
    assert int(M.degrees().min()) >= 1
    assert symmetry_check(M) == []


@settings(max_examples=200)
@given(st.integers(15, 64).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, 2**n - 1))))
def test_large_n_properties(args):
    n, v = args
    H = AntipodalCycleGraph(n)
    locs = H.cycles_through(v)
    assert 1 <= len(locs) <= 5
    assert H.degree(v) <= 10
    for w in H.neighbors(v):
        assert v in H.neighbors(w)
    walk = H.antipodal_walk(v)
    assert walk[-1] == antipode(v, n) and validate_path(H, walk, walk[-1]) is None


def test_deterministic_identity():
    assert AntipodalCycleGraph(9).graph_id == AntipodalCycleGraph(9).graph_id
    assert AntipodalCycleGraph(9).mask_by_syndrome == AntipodalCycleGraph(9).mask_by_syndrome
