"""Bounded-degree spanning subgraph of Q_n with diameter n.

Coordinates are split into four contiguous blocks. Each block carries an
antipodal-cycle graph on its own coordinates, and every cycle position
additionally exposes one part of a partition of the coordinates outside
the block. Walking a block's cycle to the antipode therefore visits every
part, which is what the two-phase router uses to fix the other blocks.

Below the threshold (default 100) the graph is the full hypercube unless
``force=True``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .antipodal import AntipodalCycleGraph
from .errors import DimensionError, ParameterError
from .hyperbits import CoordinateSet, Path, check_vertex, full_mask, greedy_path

DEFAULT_THRESHOLD = 100


def almost_equal_sizes(total: int, parts: int) -> list[int]:
    """Sizes of an almost equal partition, larger parts first."""
    base, extra = divmod(total, parts)
    return [base + 1] * extra + [base] * (parts - extra)


def contiguous_runs(coords: list[int], sizes: list[int]) -> list[CoordinateSet]:
    out, i = [], 0
    for size in sizes:
        out.append(CoordinateSet(coords[i:i + size]))
        i += size
    return out


@dataclass(frozen=True)
class _Block:
    coords: CoordinateSet
    start: int
    size: int
    graph: AntipodalCycleGraph
    part_masks: tuple[int, ...]  # part j of the outside partition, in full coordinates

    def restrict(self, v: int) -> int:
        return (v >> self.start) & ((1 << self.size) - 1)


@dataclass
class DiameterSpanner:
    n: int
    threshold: int = DEFAULT_THRESHOLD
    force: bool = False
    blocks: tuple[_Block, ...] = field(init=False, default=(), repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError(f"n must be >= 1, got {self.n}")
        if self.force and self.n < 4:
            raise ParameterError(f"structured construction needs n >= 4 (four blocks), got {self.n}")
        if not self.trivial:
            self.blocks = self._layout()
            self._tables = tuple(self._block_table(b) for b in self.blocks)
            # consecutive path vertices share three of four block restrictions
            self._block_mask = lru_cache(maxsize=4096)(self._block_mask_uncached)
            self._slices = tuple((b.start, (1 << b.size) - 1) for b in self.blocks)

    @classmethod
    def build(cls, n: int, threshold: int = DEFAULT_THRESHOLD, force: bool = False) -> "DiameterSpanner":
        return cls(n, threshold, force)

    @property
    def trivial(self) -> bool:
        return self.n <= self.threshold and not self.force

    @property
    def graph_id(self) -> str:
        mode = "trivial" if self.trivial else "structured"
        return f"diam(n={self.n},{mode})"

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(b.size for b in self.blocks)

    @cached_property
    def parts(self) -> tuple[tuple[CoordinateSet, ...], ...]:
        return tuple(
            tuple(CoordinateSet(i for i in range(self.n) if (m >> i) & 1) for m in b.part_masks)
            for b in self.blocks
        )

    def _layout(self) -> tuple[_Block, ...]:
        n = self.n
        blocks = []
        start = 0
        for size in almost_equal_sizes(n, 4):
            coords = CoordinateSet.range(start, start + size)
            outside = [i for i in range(n) if i not in coords]
            parts = contiguous_runs(outside, almost_equal_sizes(len(outside), size))
            blocks.append(_Block(coords, start, size, AntipodalCycleGraph(size),
                                 tuple(p.mask for p in parts)))
            start += size
        return tuple(blocks)

    def _check(self, v: int) -> None:
        check_vertex(v, self.n)

    def exposed_parts(self, v: int) -> list[tuple[int, CoordinateSet]]:
        """``(block index, part)`` for every cycle location of every block restriction."""
        if self.trivial:
            raise ParameterError("exposed parts exist only for the structured construction")
        self._check(v)
        out = []
        for i, b in enumerate(self.blocks):
            parts = self.parts[i]
            for _, p in b.graph.cycles_through(b.restrict(v)):
                out.append((i, parts[p % b.size]))
        return out

    @staticmethod
    def _block_table(b: _Block) -> tuple[int, ...]:
        # edge directions contributed by block b, indexed by the syndrome of its restriction
        m = b.size
        table = []
        for positions in b.graph.positions_by_syndrome:
            mask = 0
            for p in positions:
                mask |= ((1 << (p % m)) | (1 << ((p - 1) % m))) << b.start
                mask |= b.part_masks[p % m]
            table.append(mask)
        return tuple(table)

    def _block_mask_uncached(self, i: int, r: int) -> int:
        return self._tables[i][self.blocks[i].graph._sigma(r)]

    def neighbor_mask(self, v: int) -> int:
        if v < 0 or v >> self.n:
            self._check(v)
        if self.trivial:
            return full_mask(self.n)
        bm = self._block_mask
        (s0, m0), (s1, m1), (s2, m2), (s3, m3) = self._slices
        return bm(0, (v >> s0) & m0) | bm(1, (v >> s1) & m1) | bm(2, (v >> s2) & m2) | bm(3, (v >> s3) & m3)

    def neighbors(self, v: int) -> set[int]:
        mask = self.neighbor_mask(v)
        return {v ^ (1 << d) for d in range(self.n) if (mask >> d) & 1}

    def degree(self, v: int) -> int:
        return self.neighbor_mask(v).bit_count()

    def route(self, v: int, w: int) -> Path:
        """Path from ``v`` to ``w`` of length at most ``n``.

        Two blocks with the fewest agreeing coordinates are walked to their
        antipodes in turn; the parts exposed along the first walk fix every
        other block (the second one to the antipode of its target), and the
        parts exposed along the second walk fix the first block.
        """
        self._check(v)
        self._check(w)
        if self.trivial:
            return greedy_path(v, w)
        if v == w:
            return [v]
        blocks = self.blocks
        agree = [b.size - ((v ^ w) >> b.start & ((1 << b.size) - 1)).bit_count() for b in blocks]
        order = sorted(range(4), key=lambda i: (agree[i], i))
        a, b = order[0], order[1]
        blk_a, blk_b = blocks[a], blocks[b]

        target = w ^ (((1 << blk_b.size) - 1) << blk_b.start)  # block b to its antipode
        path = [v]
        cur = self._walk(blk_a, v, target, (full_mask(self.n) ^ blk_a.coords.mask), path)
        self._walk(blk_b, cur, w, blk_a.coords.mask, path)
        return path

    @staticmethod
    def _walk(blk: _Block, cur: int, target: int, pending_scope: int, path: Path) -> int:
        m = blk.size
        p = blk.graph.first_position(blk.restrict(cur))
        parts = blk.part_masks
        for step in range(m):
            pos = p + step
            pending = (cur ^ target) & pending_scope & parts[pos % m]
            while pending:
                low = pending & -pending
                cur ^= low
                path.append(cur)
                pending ^= low
            cur ^= 1 << (blk.start + pos % m)
            path.append(cur)
        return cur
