"""Recursive 2k-additive spanner of Q_n.

Level 0 is the full hypercube. A level-``k`` spanner on ``n`` coordinates
keeps three edge families:

* H1: every edge in the first ``q = 2**r - 1`` coordinates (``B0``);
* H2: a level-``k - 1`` spanner on the union ``B_x`` of ``s`` of the
  blocks ``B_1..B_t``, chosen by which perfect code ``D_i`` of ``Q_q``
  holds the ``B0`` restriction of ``x`` (colex subset ranking);
* H3: edges in the directions of block group ``A_{s'}`` outside ``B_x``,
  where ``s'`` is the coordinate sum of ``x`` on ``B_x`` modulo ``g``.

Vertices whose code index is ``>= C(t, s)`` get only H1 edges.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from typing import Iterable, Literal, Mapping

from .codes import HammingCode
from .diam_spanner import almost_equal_sizes
from .errors import ConstraintViolation, DimensionError, ParameterError
from .hyperbits import (
    CoordinateSet,
    Path,
    bits_of,
    check_vertex,
    distinct_coordinate_sums,
    full_mask,
    greedy_path,
)

Source = Literal["paperFormula", "override"]


@dataclass(frozen=True)
class SpannerParams:
    n: int
    k: int
    q: int = 0
    block_sizes: tuple[int, ...] = ()
    s: int = 0
    g: int = 1
    source: Source = "override"

    @property
    def t(self) -> int:
        return len(self.block_sizes)

    @classmethod
    def base(cls, n: int) -> "SpannerParams":
        return cls(n=n, k=0)

    def to_dict(self) -> dict:
        return {"level": self.k, "n": self.n, "q": self.q,
                "blockSizes": list(self.block_sizes), "s": self.s, "g": self.g}

    @classmethod
    def from_dict(cls, doc: Mapping) -> "SpannerParams":
        try:
            k = int(doc["level"])
            n = int(doc["n"])
            if k == 0:
                return cls.base(n)
            return cls(n=n, k=k, q=int(doc["q"]),
                       block_sizes=tuple(int(b) for b in doc["blockSizes"]),
                       s=int(doc["s"]), g=int(doc["g"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParameterError(f"bad parameter entry {dict(doc)!r}: {exc}") from exc


def choose_at_most(t: int, s: int, cap: int) -> int | None:
    """``C(t, s)`` if it is at most ``cap``, else ``None`` (stops early)."""
    if s < 0 or s > t:
        return 0
    s = min(s, t - s)
    value = 1
    for i in range(1, s + 1):
        value = value * (t - s + i) // i
        if value > cap:
            return None
    return value


def param_violations(p: SpannerParams) -> list[str]:
    out = []
    if p.n < 1:
        out.append(f"n >= 1 (got {p.n})")
    if p.k < 0:
        out.append(f"k >= 0 (got {p.k})")
    if p.k <= 0:
        return out
    r = (p.q + 1).bit_length() - 1
    if p.q < 1 or (1 << r) - 1 != p.q:
        out.append(f"q = 2^r - 1 (got q={p.q})")
    if p.t < 1:
        out.append("t >= 1 (no blocks)")
    if any(b < 1 for b in p.block_sizes):
        out.append(f"block sizes positive (got {list(p.block_sizes)})")
    if sum(p.block_sizes) != p.n - p.q:
        out.append(f"sum(blockSizes) = n - q (got {sum(p.block_sizes)} vs {p.n - p.q})")
    if p.s < 1:
        out.append(f"s >= 1 (got {p.s})")
    if p.s > p.t:
        out.append(f"t >= s (got t={p.t}, s={p.s})")
    if p.g < 1:
        out.append(f"g >= 1 (got {p.g})")
    if p.t >= 1 and p.g > p.t:
        out.append(f"g <= t (got g={p.g}, t={p.t})")
    if p.q >= 1 and 1 <= p.s <= p.t and choose_at_most(p.t, p.s, p.q + 1) is None:
        out.append(f"C(t,s) <= q + 1 (C({p.t},{p.s}) > {p.q + 1})")
    return out


def validate_params(p: SpannerParams) -> SpannerParams:
    violations = param_violations(p)
    if violations:
        raise ConstraintViolation(violations)
    return p


def iterated_log(x: float, j: int) -> float:
    """``ln`` applied ``j`` times; every intermediate argument must exceed 1."""
    for _ in range(j):
        if x <= 1:
            raise ConstraintViolation([f"iterated log needs argument > 1 (got {x:.4g})"])
        x = math.log(x)
    return x


def paper_params(n: int, k: int) -> SpannerParams:
    """Parameters from the asymptotic formulas, or ``ConstraintViolation``.

    ``q`` is the largest ``2**r - 1 <= sqrt(n)`` and must be at least
    ``sqrt(n) / 2``; ``t = ln n * ln^(k) n / (900 (ln^(k+1) n)^2)`` and
    ``s = ln n / (10 ln^(k+1) n)`` are rounded to the nearest integer and
    ``g = max(1, floor(s / 500**k))``.
    """
    if n < 2 or k < 1:
        raise ParameterError(f"formula parameters need n >= 2 and k >= 1 (got n={n}, k={k})")
    ln_n = math.log(n)
    ln_k = iterated_log(n, k)
    ln_k1 = iterated_log(n, k + 1)
    root = math.sqrt(n)
    violations = []
    r = 1
    while (1 << (r + 1)) - 1 <= root:
        r += 1
    q = (1 << r) - 1
    if not (root / 2 <= q <= root):
        violations.append(f"2^r - 1 in [sqrt(n)/2, sqrt(n)] (best q={q}, interval [{root / 2:.4g}, {root:.4g}])")
    t_real = ln_n * ln_k / (900 * ln_k1 ** 2)
    s_real = ln_n / (10 * ln_k1)
    t = math.floor(t_real + 0.5)
    s = math.floor(s_real + 0.5)
    g = max(1, s // 500 ** k)
    if t < 1:
        violations.append(f"t >= 1 (formula t={t_real:.4g} rounds to {t})")
    if s < 1:
        violations.append(f"s >= 1 (formula s={s_real:.4g} rounds to {s})")
    if t >= 1 and t > n - q:
        violations.append(f"t <= n - q (t={t}, n-q={n - q})")
    if violations:
        raise ConstraintViolation(violations)
    params = SpannerParams(n=n, k=k, q=q, block_sizes=tuple(almost_equal_sizes(n - q, t)),
                           s=s, g=g, source="paperFormula")
    return validate_params(params)


def subset_rank(subset: Iterable[int]) -> int:
    """Colexicographic rank of a subset of ``[t]`` (0-based)."""
    items = sorted(subset)
    if len(set(items)) != len(items) or (items and items[0] < 0):
        raise ParameterError(f"not a subset: {list(subset)!r}")
    return sum(math.comb(c, j + 1) for j, c in enumerate(items))


def subset_unrank(rank: int, t: int, s: int) -> tuple[int, ...]:
    total = math.comb(t, s)
    if not 0 <= rank < total:
        raise ParameterError(f"rank {rank} outside [0, C({t},{s})={total})")
    out = [0] * s
    m = t
    while s > 0:
        m -= 1
        c = math.comb(m, s)
        if rank >= c:
            rank -= c
            s -= 1
            out[s] = m
    return tuple(out)


@dataclass(frozen=True)
class RouteReport:
    path: Path
    claimed_slack: int
    distinct_sums: int
    fallback_rounds: int

    @property
    def length(self) -> int:
        return len(self.path) - 1


@dataclass(frozen=True)
class _CodeClass:
    index: int
    blocks: tuple[int, ...]
    coords: CoordinateSet  # B_x
    h3: tuple[int, ...]  # per residue: direction mask of A_r outside B_x


Schedule = Mapping[tuple[int, int], SpannerParams]


class AdditiveSpanner:
    """Implicit level-``k`` additive spanner.

    ``schedule`` maps ``(level, dimension)`` to the parameters of every
    sub-spanner that the construction needs. Without one, sub-spanner
    parameters come from :func:`paper_params`.
    """

    def __init__(self, params: SpannerParams, schedule: Schedule | None = None):
        validate_params(params)
        self.params = params
        self.n = params.n
        self.k = params.k
        self.schedule = dict(schedule) if schedule is not None else None
        self._subs: dict[int, AdditiveSpanner] = {}
        self._lock = threading.Lock()
        if self.k == 0:
            return
        n, q = self.n, params.q
        self.b0 = CoordinateSet.range(0, q)
        self.hamming = HammingCode.of_length(q)
        blocks, start = [], q
        for size in params.block_sizes:
            blocks.append(CoordinateSet.range(start, start + size))
            start += size
        self.blocks = tuple(blocks)
        per = -(-params.t // params.g)
        self.groups = tuple(
            tuple(range(j * per, min((j + 1) * per, params.t))) for j in range(params.g)
        )
        group_masks = [0] * params.g
        for j, group in enumerate(self.groups):
            for b in group:
                group_masks[j] |= self.blocks[b].mask
        self.class_count = math.comb(params.t, params.s)
        classes = []
        for i in range(self.class_count):
            chosen = subset_unrank(i, params.t, params.s)
            coords = CoordinateSet(c for b in chosen for c in self.blocks[b])
            classes.append(_CodeClass(i, chosen, coords,
                                      tuple(m & ~coords.mask for m in group_masks)))
        self.classes = tuple(classes)
        self._code_table = [self.hamming.coset_index(w) for w in range(1 << q)] if q <= 16 else None
        # fail now, not at query time, if a needed sub-spanner has no parameters
        for size in sorted({len(c.coords) for c in classes}):
            self._sub_params(size)

    @property
    def graph_id(self) -> str:
        p = self.params
        if self.k == 0:
            return f"addspanner(n={self.n},k=0)"
        return (f"addspanner(n={self.n},k={self.k},q={p.q},blocks={list(p.block_sizes)},"
                f"s={p.s},g={p.g})")

    @classmethod
    def build(cls, params: SpannerParams, schedule: Schedule | None = None) -> "AdditiveSpanner":
        return cls(params, schedule)

    def _sub_params(self, dim: int) -> SpannerParams:
        level = self.k - 1
        if level == 0:
            return SpannerParams.base(dim)
        if self.schedule is None:
            return paper_params(dim, level)
        try:
            return validate_params(self.schedule[(level, dim)])
        except KeyError:
            raise ParameterError(f"schedule has no entry for level {level}, n={dim}") from None

    def sub_spanner(self, dim: int) -> "AdditiveSpanner":
        sub = self._subs.get(dim)
        if sub is None:
            with self._lock:
                sub = self._subs.get(dim)
                if sub is None:
                    sub = AdditiveSpanner(self._sub_params(dim), self.schedule)
                    self._subs[dim] = sub
        return sub

    def _check(self, x: int) -> None:
        check_vertex(x, self.n)

    def code_index_of(self, x: int) -> int:
        if self.k == 0:
            raise ParameterError("level-0 spanner has no code classes")
        self._check(x)
        return self._code(x)

    def _code(self, x: int) -> int:
        w = x & self.b0.mask
        if self._code_table is not None:
            return self._code_table[w]
        return self.hamming.coset_index(w)

    def block_set_of(self, x: int) -> tuple[CoordinateSet, tuple[int, ...]] | None:
        ci = self.code_index_of(x)
        if ci >= self.class_count:
            return None
        cls = self.classes[ci]
        return cls.coords, cls.blocks

    def neighbor_mask(self, x: int) -> int:
        self._check(x)
        return self._mask(x)

    def _mask(self, x: int) -> int:
        if self.k == 0:
            return full_mask(self.n)
        mask = self.b0.mask
        ci = self._code(x)
        if ci < self.class_count:
            cls = self.classes[ci]
            coords = cls.coords
            sub = self.sub_spanner(len(coords))
            mask |= coords.scatter(sub._mask(coords.gather(x)))
            mask |= cls.h3[(x & coords.mask).bit_count() % self.params.g]
        return mask

    def neighbors(self, x: int) -> set[int]:
        mask = self.neighbor_mask(x)
        return {x ^ (1 << d) for d in bits_of(mask)}

    def degree(self, x: int) -> int:
        """Degree from the three disjoint edge families, without building the neighbor set."""
        self._check(x)
        return self._degree(x)

    def _degree(self, x: int) -> int:
        if self.k == 0:
            return self.n
        deg = self.params.q
        ci = self._code(x)
        if ci < self.class_count:
            cls = self.classes[ci]
            coords = cls.coords
            deg += self.sub_spanner(len(coords))._degree(coords.gather(x))
            deg += cls.h3[(x & coords.mask).bit_count() % self.params.g].bit_count()
        return deg

    def outer_blocks_touched(self, x: int, y: int) -> list[int]:
        """Indices of blocks ``B_1..B_t`` (0-based) on which ``x`` and ``y`` differ."""
        diff = x ^ y
        return [i for i, b in enumerate(self.blocks) if diff & b.mask]

    def case1_eligible(self, x: int, y: int) -> bool:
        """True when the differences outside ``B0`` fit inside ``s`` blocks."""
        if self.k == 0:
            return True
        return len(self.outer_blocks_touched(x, y)) <= self.params.s

    def route(self, x: int, y: int) -> RouteReport:
        self._check(x)
        self._check(y)
        path, rounds = self._route(x, y)
        slack = len(path) - 1 - (x ^ y).bit_count()
        return RouteReport(path, slack, distinct_coordinate_sums(path), rounds)

    def _route(self, x: int, y: int) -> tuple[Path, int]:
        if self.k == 0:
            return greedy_path(x, y), 0
        path = [x]
        cur = x
        for i in bits_of((cur ^ y) & self.b0.mask):
            cur ^= 1 << i
            path.append(cur)
        rounds = -1
        while cur != y:
            rounds += 1
            cur, inner_rounds = self._round(cur, y, path)
            rounds += inner_rounds
        return path, max(rounds, 0)

    def _choose_blocks(self, cur: int, y: int) -> tuple[int, ...]:
        s = self.params.s
        diff = cur ^ y
        counts = [(diff & b.mask).bit_count() for b in self.blocks]
        touched = [i for i, c in enumerate(counts) if c]
        if len(touched) <= s:
            chosen = list(touched)
            for i in range(len(self.blocks)):
                if len(chosen) == s:
                    break
                if i not in chosen:
                    chosen.append(i)
        else:
            chosen = sorted(range(len(self.blocks)), key=lambda i: (-counts[i], i))[:s]
        return tuple(sorted(chosen))

    def _round(self, cur: int, y: int, path: Path) -> tuple[int, int]:
        """One pass: enter ``D_i``, route on ``B_x`` while fixing outer blocks via H3, exit."""
        cls = self.classes[subset_rank(self._choose_blocks(cur, y))]
        entry = None
        c0 = self._code(cur)
        if c0 != cls.index:
            entry = 1 << ((c0 ^ cls.index) - 1)
            cur ^= entry
            path.append(cur)
        coords = cls.coords
        sub = self.sub_spanner(len(coords))
        inner, inner_rounds = sub._route(coords.gather(cur), coords.gather(y))
        scope = full_mask(self.n) & ~self.b0.mask & ~coords.mask
        g = self.params.g
        prev = inner[0]
        for step, z in enumerate(inner):
            if step:
                cur ^= coords.scatter(prev ^ z)
                path.append(cur)
                prev = z
            pending = (cur ^ y) & scope & cls.h3[z.bit_count() % g]
            while pending:
                low = pending & -pending
                cur ^= low
                path.append(cur)
                pending ^= low
        if entry is not None:
            cur ^= entry
            path.append(cur)
        return cur, inner_rounds

    def stretch_oracle(self, x: int, y: int, budget: int | None = None) -> int:
        """Exact ``d_H(x, y) - d_Q(x, y)`` by BFS over the materialized graph."""
        from .verify.metrics import bfs

        self._check(x)
        self._check(y)
        if x == y:
            return 0
        dist = bfs(self, x, budget=budget)
        return int(dist[y]) - (x ^ y).bit_count()
