"""BFS, eccentricity, degree, stretch, symmetry and path checks over implicit graphs."""

from __future__ import annotations

import os
import random
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..errors import CapacityError
from ..hyperbits import bits_of
from .graph import MaterializedGraph, check_budget, materialize, neighbor_mask

DIAMETER_MAX = int(os.environ.get("HYPERSPAN_DIAMETER_MAX", "13"))
# bytes of reach bitsets per multi-source chunk
_CHUNK_BYTES = 64 << 20


def bfs(graph, source: int, budget: int | None = None) -> np.ndarray:
    """Distances from ``source`` for every vertex; ``-1`` marks unreachable."""
    mat = materialize(graph, budget)
    n = mat.n
    masks = mat.masks
    dist = np.full(1 << n, -1, dtype=np.int32)
    dist[source] = 0
    frontier = np.array([source], dtype=np.int64)
    level = 0
    while frontier.size:
        level += 1
        fm = masks[frontier]
        found = []
        for d in range(n):
            nb = frontier[((fm >> d) & 1).astype(bool)] ^ (1 << d)
            nb = nb[dist[nb] < 0]
            dist[nb] = level
            found.append(nb)
        frontier = np.concatenate(found)
    return dist


@dataclass
class MultiSourceResult:
    sources: np.ndarray
    eccentricity: np.ndarray  # -1 when the source does not reach every vertex
    target_distance: np.ndarray | None = None  # -1 when unreachable

    @property
    def connected(self) -> bool:
        return bool((self.eccentricity >= 0).all())

    @property
    def max_eccentricity(self) -> int | None:
        return int(self.eccentricity.max()) if self.connected else None


def _edge_lists(mat: MaterializedGraph):
    idx = np.arange(1 << mat.n, dtype=np.int64)
    out = []
    for d in range(mat.n):
        rows = idx[((mat.masks >> d) & 1).astype(bool)]
        out.append((rows, rows ^ (1 << d)))
    return out


def _multi_source_chunk(mat, edge_lists, sources, targets):
    size = 1 << mat.n
    words = (len(sources) + 63) // 64
    reach = np.zeros((size, words), dtype=np.uint64)
    col = np.arange(len(sources))
    bit = np.left_shift(np.uint64(1), (col % 64).astype(np.uint64))
    np.bitwise_or.at(reach, (sources, col // 64), bit)
    ecc = np.full(len(sources), -1, dtype=np.int64)
    tdist = None if targets is None else np.full(len(sources), -1, dtype=np.int64)

    def settle(level):
        full = np.bitwise_and.reduce(reach, axis=0)
        hit = ((full[col // 64] & bit) != 0) & (ecc < 0)
        ecc[hit] = level
        if tdist is not None:
            got = ((reach[targets, col // 64] & bit) != 0) & (tdist < 0)
            tdist[got] = level

    settle(0)
    level = 0
    while (ecc < 0).any():
        level += 1
        nxt = reach.copy()
        for rows, partners in edge_lists:
            nxt[rows] |= reach[partners]
        if np.array_equal(nxt, reach):
            break
        reach = nxt
        settle(level)
    return ecc, tdist


def multi_source_bfs(graph, sources: Sequence[int] | None = None,
                     targets: Sequence[int] | None = None, budget: int | None = None,
                     workers: int = 1) -> MultiSourceResult:
    """Bit-parallel BFS from many sources at once.

    Returns each source's eccentricity and, when ``targets`` is given, the
    distance from ``sources[i]`` to ``targets[i]``. Source chunks are
    independent and may run on a thread pool.
    """
    mat = materialize(graph, budget)
    size = 1 << mat.n
    src = np.arange(size, dtype=np.int64) if sources is None else np.asarray(sources, dtype=np.int64)
    tgt = None if targets is None else np.asarray(targets, dtype=np.int64)
    per_chunk = max(64, (_CHUNK_BYTES // (size * 8)) * 64)
    edge_lists = _edge_lists(mat)
    chunks = [slice(i, i + per_chunk) for i in range(0, len(src), per_chunk)]

    def run(sl):
        return _multi_source_chunk(mat, edge_lists, src[sl], None if tgt is None else tgt[sl])

    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(run, chunks))
    else:
        results = [run(sl) for sl in chunks]
    ecc = np.concatenate([r[0] for r in results]) if results else np.zeros(0, dtype=np.int64)
    tdist = None
    if tgt is not None:
        tdist = np.concatenate([r[1] for r in results]) if results else np.zeros(0, dtype=np.int64)
    return MultiSourceResult(src, ecc, tdist)


def diameter_exhaustive(graph, budget: int | None = None, workers: int = 1) -> int | None:
    """Exact diameter (``None`` if disconnected). Budget defaults to ``n <= 13``."""
    check_budget(graph.n, DIAMETER_MAX if budget is None else budget, "exhaustive diameter")
    return multi_source_bfs(graph, workers=workers).max_eccentricity


def diameter_sampled(graph, sources: int, seed: int = 0, budget: int | None = None) -> int | None:
    """Largest eccentricity over seeded random sources: a lower bound on the diameter."""
    mat = materialize(graph, budget)
    rng = random.Random(seed)
    picks = [rng.getrandbits(mat.n) for _ in range(sources)]
    return multi_source_bfs(mat, picks).max_eccentricity


def antipodal_distances(graph, budget: int | None = None) -> np.ndarray:
    """``d(v, ~v)`` for every vertex ``v`` (``-1`` if unreachable)."""
    mat = materialize(graph, budget)
    size = 1 << mat.n
    src = np.arange(size, dtype=np.int64)
    return multi_source_bfs(mat, src, src ^ (size - 1)).target_distance


@dataclass
class DegreeStats:
    histogram: dict[int, int]
    count: int
    max_degree: int
    min_degree: int


def _vertex_sample(n: int, count: int, seed: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.getrandbits(n) for _ in range(count)]


def degree_scan(graph, samples: int | None = None, seed: int = 0,
                budget: int | None = None) -> DegreeStats:
    """Degree histogram over all vertices, or over ``samples`` seeded random ones."""
    if samples is None:
        degs = materialize(graph, budget).degrees()
        values, counts = np.unique(degs, return_counts=True)
        hist = {int(v): int(c) for v, c in zip(values, counts)}
    else:
        hist = dict(Counter(neighbor_mask(graph, v).bit_count()
                            for v in _vertex_sample(graph.n, samples, seed)))
    hist = dict(sorted(hist.items()))
    return DegreeStats(hist, sum(hist.values()), max(hist), min(hist))


def min_degree(graph, budget: int | None = None) -> int:
    return int(materialize(graph, budget).degrees().min())


def symmetry_check(graph, samples: int | None = None, seed: int = 0,
                   budget: int | None = None, limit: int = 20) -> list[tuple[int, int]]:
    """Witness pairs ``(v, w)`` with ``w`` in N(v) but ``v`` not in N(w)."""
    out: list[tuple[int, int]] = []
    if samples is None:
        mat = materialize(graph, budget)
        idx = np.arange(1 << mat.n, dtype=np.int64)
        for d in range(mat.n):
            has = ((mat.masks >> d) & 1).astype(bool)
            bad = np.nonzero(has & ~has[idx ^ (1 << d)])[0]
            for v in bad[: limit - len(out)]:
                out.append((int(v), int(v) ^ (1 << d)))
            if len(out) >= limit:
                break
        return out
    for v in _vertex_sample(graph.n, samples, seed):
        for d in bits_of(neighbor_mask(graph, v)):
            w = v ^ (1 << d)
            if not (neighbor_mask(graph, w) >> d) & 1:
                out.append((v, w))
                if len(out) >= limit:
                    return out
    return out


def validate_path(graph, path: Sequence[int], target: int, source: int | None = None) -> int | None:
    """``None`` if ``path`` is a walk in ``graph`` ending at ``target``; else the first bad index.

    Index ``i > 0`` means the step into ``path[i]`` is not an edge; the last
    index flags a wrong endpoint; index 0 flags an empty path or wrong start.
    """
    if not path or (source is not None and path[0] != source):
        return 0
    oracle = getattr(graph, "neighbor_mask", None)
    if oracle is None:
        oracle = lambda v: neighbor_mask(graph, v)  # noqa: E731
    prev = path[0]
    last = len(path) - 1
    mask = oracle(prev)
    for i in range(1, last + 1):
        cur = path[i]
        d = prev ^ cur
        if not d or d & (d - 1) or not mask & d:
            return i
        prev = cur
        if i < last:
            mask = oracle(prev)
    if prev != target:
        return len(path) - 1
    return None


@dataclass
class StretchStats:
    pairs: int
    min: int
    mean: float
    max: int
    histogram: dict[int, int]
    exceeding: list[tuple[int, int, int]] = field(default_factory=list)  # (u, v, stretch)
    unreachable: list[tuple[int, int]] = field(default_factory=list)


def stretch_scan(graph, k: int, samples: int | None = None, seed: int = 0,
                 sources: int | None = None, budget: int | None = None,
                 limit: int = 20) -> StretchStats:
    """Additive stretch ``d_G - d_Q`` over all ordered pairs or seeded samples.

    Sampling draws ``sources`` BFS roots (default ``min(samples, 32)``) and
    spreads ``samples`` random targets over them.
    """
    mat = materialize(graph, budget)
    n = mat.n
    size = 1 << n
    idx = np.arange(size, dtype=np.int64)
    hist: Counter = Counter()
    total = 0
    acc = 0
    exceeding: list = []
    unreachable: list = []
    if samples is None:
        plan = [(u, idx) for u in range(size)]
    else:
        rng = random.Random(seed)
        roots = min(samples, 32) if sources is None else sources
        plan = []
        for j in range(roots):
            count = samples // roots + (1 if j < samples % roots else 0)
            u = rng.getrandbits(n)
            plan.append((u, np.array([rng.getrandbits(n) for _ in range(count)], dtype=np.int64)))
    for u, targets in plan:
        dist = bfs(mat, u)[targets]
        ham = np.bitwise_count(targets ^ u).astype(np.int64)
        lost = dist < 0
        for v in targets[lost][: max(0, limit - len(unreachable))]:
            unreachable.append((u, int(v)))
        st = (dist - ham)[~lost]
        vals, counts = np.unique(st, return_counts=True)
        hist.update({int(a): int(b) for a, b in zip(vals, counts)})
        total += int(st.size)
        acc += int(st.sum())
        over = np.nonzero(st > k)[0]
        for j in over[: max(0, limit - len(exceeding))]:
            exceeding.append((u, int(targets[~lost][j]), int(st[j])))
    hist = dict(sorted(hist.items()))
    return StretchStats(total, min(hist) if hist else 0, acc / total if total else 0.0,
                        max(hist) if hist else 0, hist, exceeding, unreachable)


def shortest_path(graph, u: int, v: int, budget: int | None = None) -> list[int] | None:
    """One shortest ``u -> v`` path by BFS from ``v`` and descent from ``u``."""
    mat = materialize(graph, budget)
    dist = bfs(mat, v)
    if dist[u] < 0:
        return None
    path = [u]
    cur = u
    while cur != v:
        mask = int(mat.masks[cur])
        for d in bits_of(mask):
            w = cur ^ (1 << d)
            if dist[w] == dist[cur] - 1:
                cur = w
                break
        path.append(cur)
    return path
