"""Antipodal-cycle subgraph of Q_n with maximum degree 10.

The base cycle ``C`` runs through the prefix-of-ones vertices and their
complements::

    position p <= n : ones at coordinates 0..p-1
    position p >  n : complement of ones at 0..p-n-1

Positions ``p`` and ``p + n`` are antipodal, and positions ``p``, ``p + 1``
differ in coordinate ``p mod n``. The graph is the union of the translates
``t + C`` over all ``t`` whose prefix-basis coordinates form a nearly
perfect code, so every vertex lies on between one and five cycles.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .codes import NearlyPerfectCode, XorFunctional
from .errors import DimensionError, ParameterError
from .hyperbits import Path, check_vertex, full_mask, to_f_basis


class CycleLocation(NamedTuple):
    translation: int
    position: int


def sum_directions(dirs) -> int:
    mask = 0
    for d in dirs:
        mask |= 1 << d
    return mask


def base_cycle_vertex(n: int, p: int) -> int:
    if not 0 <= p < 2 * n:
        raise DimensionError(f"cycle position {p} outside [0, {2 * n})")
    if p <= n:
        return (1 << p) - 1
    return full_mask(n) ^ ((1 << (p - n)) - 1)


def base_cycle_position(n: int, v: int) -> int | None:
    check_vertex(v, n)
    if v & (v + 1) == 0:  # prefix of ones, including 0 and 1^n
        return v.bit_length()
    c = full_mask(n) ^ v
    if c & (c + 1) == 0:
        return n + c.bit_length()
    return None


@dataclass(frozen=True)
class AntipodalCycleGraph:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError(f"antipodal graph needs n >= 1, got {self.n}")

    @property
    def graph_id(self) -> str:
        return f"antipodal(n={self.n})"

    @cached_property
    def code(self) -> NearlyPerfectCode:
        """Nearly perfect code on prefix-basis coordinates."""
        return NearlyPerfectCode.build(self.n)

    @cached_property
    def _sigma(self) -> XorFunctional:
        # v -> syndrome(to_f_basis(v)); to_f_basis(e_c) = e_c + e_{c-1}
        col = self.code.column
        cols = [col(0)] + [col(c) ^ col(c - 1) for c in range(1, self.n)]
        return XorFunctional(cols, chunk=16 if self.n > 32 else 8)

    @cached_property
    def positions_by_syndrome(self) -> tuple[tuple[int, ...], ...]:
        """Cycle positions of any vertex whose prefix-basis syndrome is the index."""
        n = self.n
        code = self.code
        last = code.column(n - 1)
        table = []
        for sigma in range(code.inner.q + 1):
            pos = [0] if sigma == 0 else [j + 1 for j in code.buckets[sigma - 1]]
            sigma_b = sigma ^ last
            if sigma_b:
                pos += [n + j + 1 for j in code.buckets[sigma_b - 1] if j != n - 1]
            table.append(tuple(pos))
        return tuple(table)

    @cached_property
    def mask_by_syndrome(self) -> tuple[int, ...]:
        n = self.n
        return tuple(
            sum_directions(d for p in positions for d in (p % n, (p - 1) % n))
            for positions in self.positions_by_syndrome
        )

    def syndrome(self, v: int) -> int:
        return self._sigma(v)

    def is_translation(self, t: int) -> bool:
        return self.code.is_member(to_f_basis(t))

    def cycles_through(self, v: int) -> list[CycleLocation]:
        """All cycle translates through ``v``.

        The candidates are the prefix-basis vectors ``a``, ``a + u_j`` and
        ``a + u_{n-1} + u_j`` (``a`` the image of ``v``), in that order.
        Syndrome linearity picks out the members without testing each one.
        """
        check_vertex(v, self.n)
        n = self.n
        return [CycleLocation(v ^ base_cycle_vertex(n, p), p)
                for p in self.positions_by_syndrome[self._sigma(v)]]

    def first_position(self, v: int) -> int:
        return self.positions_by_syndrome[self._sigma(v)][0]

    def neighbor_mask(self, v: int) -> int:
        """Directions of the H-edges at ``v`` as a bit mask."""
        check_vertex(v, self.n)
        return self.mask_by_syndrome[self._sigma(v)]

    def neighbors(self, v: int) -> set[int]:
        mask = self.neighbor_mask(v)
        return {v ^ (1 << d) for d in range(self.n) if (mask >> d) & 1}

    def degree(self, v: int) -> int:
        return self.neighbor_mask(v).bit_count()

    def antipodal_walk(self, v: int) -> Path:
        """Length-``n`` path to the antipode along the first cycle through ``v``."""
        check_vertex(v, self.n)
        n = self.n
        p = self.first_position(v)
        path = [v]
        cur = v
        for step in range(n):
            cur ^= 1 << ((p + step) % n)
            path.append(cur)
        return path
