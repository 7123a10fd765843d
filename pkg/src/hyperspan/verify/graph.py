"""Uniform implicit-graph facade, materialization, and edge-list files."""

from __future__ import annotations

import os
from typing import Callable, Iterable, Protocol, TextIO, runtime_checkable

import numpy as np

from ..errors import CapacityError, DimensionError, SymmetryError
from ..hyperbits import bits_of, check_vertex, full_mask, parse_vertex

MATERIALIZE_MAX = int(os.environ.get("HYPERSPAN_MATERIALIZE_MAX", "24"))


@runtime_checkable
class ImplicitGraph(Protocol):
    """Spanning subgraph of Q_n given by a neighbor oracle."""

    n: int

    def neighbors(self, v: int) -> set[int]: ...


def neighbor_mask(graph, v: int) -> int:
    """Edge directions at ``v``; uses the graph's fast path when it has one."""
    fast = getattr(graph, "neighbor_mask", None)
    if fast is not None:
        return fast(v)
    return mask_from_neighbors(v, graph.neighbors(v))


def mask_from_neighbors(v: int, nbrs: Iterable[int]) -> int:
    mask = 0
    for w in nbrs:
        d = v ^ w
        if d & (d - 1) or not d:
            raise DimensionError(f"{w:#x} is not a hypercube neighbor of {v:#x}")
        mask |= d
    return mask


def graph_id(graph) -> str:
    return getattr(graph, "graph_id", type(graph).__name__)


class Hypercube:
    def __init__(self, n: int):
        self.n = n

    @property
    def graph_id(self) -> str:
        return f"qn(n={self.n})"

    def neighbor_mask(self, v: int) -> int:
        check_vertex(v, self.n)
        return full_mask(self.n)

    def neighbors(self, v: int) -> set[int]:
        return {v ^ (1 << d) for d in range(self.n)}


class OracleGraph:
    """Wrap an arbitrary ``v -> iterable of neighbors`` function."""

    def __init__(self, n: int, oracle: Callable[[int], Iterable[int]], graph_id: str = "oracle"):
        self.n = n
        self._oracle = oracle
        self.graph_id = graph_id

    def neighbors(self, v: int) -> set[int]:
        return set(self._oracle(v))

    def neighbor_mask(self, v: int) -> int:
        return mask_from_neighbors(v, self._oracle(v))


class MaterializedGraph:
    """All neighbor masks of a graph held in one array indexed by vertex."""

    def __init__(self, n: int, masks: np.ndarray, graph_id: str = "materialized"):
        self.n = n
        self.masks = masks
        self.graph_id = graph_id

    def neighbor_mask(self, v: int) -> int:
        check_vertex(v, self.n)
        return int(self.masks[v])

    def neighbors(self, v: int) -> set[int]:
        return {v ^ (1 << d) for d in bits_of(self.neighbor_mask(v))}

    def degrees(self) -> np.ndarray:
        return np.bitwise_count(self.masks).astype(np.int64)

    def has_edge(self, v: int, d: int) -> bool:
        return bool((int(self.masks[v]) >> d) & 1)


def check_budget(n: int, budget: int | None, what: str = "materialize") -> None:
    limit = MATERIALIZE_MAX if budget is None else budget
    if n > limit:
        raise CapacityError(f"{what} needs 2^{n} vertices; budget is n <= {limit}")


def materialize(graph, budget: int | None = None) -> MaterializedGraph:
    if isinstance(graph, MaterializedGraph):
        return graph
    n = graph.n
    check_budget(n, budget)
    fast = getattr(graph, "neighbor_mask", None)
    if fast is None:
        fast = lambda v: mask_from_neighbors(v, graph.neighbors(v))  # noqa: E731
    dtype = np.uint32 if n <= 32 else np.uint64
    masks = np.fromiter((fast(v) for v in range(1 << n)), dtype=dtype, count=1 << n)
    return MaterializedGraph(n, masks, graph_id(graph))


def edges(graph, budget: int | None = None) -> Iterable[tuple[int, int]]:
    """Each edge once as ``(u, v)`` with ``u < v``, ascending."""
    mat = materialize(graph, budget)
    for u in range(1 << mat.n):
        mask = int(mat.masks[u])
        for d in bits_of(mask):
            w = u ^ (1 << d)
            if w > u:
                yield u, w


def edge_count(graph, budget: int | None = None) -> int:
    mat = materialize(graph, budget)
    total = int(mat.degrees().sum())
    if total % 2:
        raise SymmetryError(f"degree sum {total} is odd; the neighbor oracle is not symmetric")
    return total // 2


def _edge_arrays(mat: MaterializedGraph) -> tuple[np.ndarray, np.ndarray]:
    idx = np.arange(1 << mat.n, dtype=np.int64)
    us, ws = [], []
    for d in range(mat.n):
        rows = idx[((mat.masks >> d) & 1).astype(bool) & ((idx >> d) & 1 == 0)]
        us.append(rows)
        ws.append(rows | (1 << d))
    return np.concatenate(us), np.concatenate(ws)


def _reverse_bits(x: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros_like(x)
    for i in range(n):
        out |= ((x >> i) & 1) << (n - 1 - i)
    return out


def write_edge_list(graph, out: TextIO, budget: int | None = None) -> int:
    """Write ``n <dim> m <edges>`` then one ``u v`` line per edge. Returns the edge count.

    Lines are sorted by the text form, with ``u < v`` on each line.
    """
    mat = materialize(graph, budget)
    n = mat.n
    u, w = _edge_arrays(mat)
    # text order of equal-length strings is the order of the bit-reversed values
    ru, rw = _reverse_bits(u, n), _reverse_bits(w, n)
    a, b = np.minimum(ru, rw), np.maximum(ru, rw)
    order = np.lexsort((b, a))
    a, b = a[order], b[order]
    out.write(f"n {n} m {len(a)}\n")
    fmt = f"{{:0{n}b}} {{:0{n}b}}\n"
    step = 1 << 16
    for i in range(0, len(a), step):
        out.write("".join(fmt.format(x, y) for x, y in zip(a[i:i + step].tolist(), b[i:i + step].tolist())))
    return len(a)


def read_edge_list(src: TextIO, graph_id: str = "edgelist") -> MaterializedGraph:
    header = src.readline().split()
    if len(header) != 4 or header[0] != "n" or header[2] != "m":
        raise DimensionError(f"bad edge-list header {' '.join(header)!r}")
    n, m = int(header[1]), int(header[3])
    check_budget(n, None)
    masks = np.zeros(1 << n, dtype=np.uint32 if n <= 32 else np.uint64)
    seen = 0
    for line in src:
        parts = line.split()
        if not parts:
            continue
        u, w = parse_vertex(parts[0], n), parse_vertex(parts[1], n)
        d = u ^ w
        if not d or d & (d - 1):
            raise DimensionError(f"edge {parts[0]} {parts[1]} is not a hypercube edge")
        masks[u] |= d
        masks[w] |= d
        seen += 1
    if seen != m:
        raise DimensionError(f"header promises {m} edges, file has {seen}")
    return MaterializedGraph(n, masks, graph_id)
