"""Binary Hamming codes, their coset partition, and bucketed nearly perfect codes."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .errors import DimensionError, ParameterError
from .hyperbits import CoordinateSet, check_vertex

class XorFunctional:
    """GF(2)-linear map ``v -> XOR of columns[i] over set bits i of v``.

    Evaluated with one lookup table per ``chunk``-bit slice of the input.
    """

    __slots__ = ("columns", "chunk", "_tables")

    def __init__(self, columns: Sequence[int], chunk: int = 8):
        self.columns = tuple(columns)
        self.chunk = chunk
        tables = []
        for base in range(0, len(self.columns), chunk):
            cols = self.columns[base:base + chunk]
            table = [0] * (1 << len(cols))
            for x in range(1, len(table)):
                low = (x & -x).bit_length() - 1
                table[x] = table[x & (x - 1)] ^ cols[low]
            tables.append(table)
        self._tables = tuple(tables)

    def __call__(self, v: int) -> int:
        out = 0
        chunk = self.chunk
        low = (1 << chunk) - 1
        for table in self._tables:
            out ^= table[v & low]
            v >>= chunk
            if not v:
                break
        return out


@dataclass(frozen=True)
class HammingCode:
    """The length ``q = 2**r - 1`` binary Hamming code.

    Column ``j`` of the parity-check matrix is the binary encoding of ``j + 1``,
    so a nonzero syndrome names the flipped coordinate directly.
    """

    r: int

    def __post_init__(self):
        if self.r < 1:
            raise ParameterError(f"Hamming code needs r >= 1, got {self.r}")

    @property
    def q(self) -> int:
        return (1 << self.r) - 1

    @property
    def parity_columns(self) -> tuple[int, ...]:
        return tuple(range(1, self.q + 1))

    @property
    def size(self) -> int:
        return (1 << self.q) // (self.q + 1)

    @cached_property
    def _functional(self) -> XorFunctional:
        return XorFunctional(self.parity_columns)

    @classmethod
    def of_length(cls, q: int) -> "HammingCode":
        r = (q + 1).bit_length() - 1
        if q < 1 or (1 << r) - 1 != q:
            raise ParameterError(f"{q} is not of the form 2**r - 1")
        return cls(r)

    def _check(self, w: int) -> None:
        if w < 0 or w >> self.q:
            raise DimensionError(f"word {w:#x} longer than q={self.q}")

    def syndrome(self, w: int) -> int:
        self._check(w)
        return self._functional(w)

    def is_codeword(self, w: int) -> bool:
        return self.syndrome(w) == 0

    def decode(self, w: int) -> int:
        """Nearest codeword (distance at most 1)."""
        s = self.syndrome(w)
        return w ^ (1 << (s - 1)) if s else w

    def coset_index(self, w: int) -> int:
        """Index ``i`` of the perfect code ``D_i`` containing ``w``.

        ``D_0`` is the code itself and ``D_i`` is the code shifted by the unit
        vector at coordinate ``i - 1``; each holds ``2**q / (q + 1)`` words.
        """
        return self.syndrome(w)

    def codewords(self) -> list[int]:
        f = self._functional
        return [w for w in range(1 << self.q) if f(w) == 0]


@dataclass(frozen=True)
class NearlyPerfectCode:
    """Dominating set of Q_n in which every vertex sees at most two members.

    The ``n`` coordinates are grouped into ``2**k - 1`` buckets of size one or
    two (pairs first, ascending). A vertex is a member when the per-bucket
    parities form a codeword of the inner Hamming code.
    """

    n: int
    inner: HammingCode
    buckets: tuple[CoordinateSet, ...]
    bucket_of: tuple[int, ...] = field(repr=False)

    @classmethod
    def build(cls, n: int) -> "NearlyPerfectCode":
        if n < 1:
            raise ParameterError(f"nearly perfect code needs n >= 1, got {n}")
        k = (n + 1).bit_length() - 1
        q = (1 << k) - 1
        doubles = n - q
        buckets = [CoordinateSet((2 * b, 2 * b + 1)) for b in range(doubles)]
        buckets += [CoordinateSet((c,)) for c in range(2 * doubles, n)]
        bucket_of = [0] * n
        for j, bucket in enumerate(buckets):
            for c in bucket:
                bucket_of[c] = j
        return cls(n, HammingCode(k), tuple(buckets), tuple(bucket_of))

    @cached_property
    def _functional(self) -> XorFunctional:
        # syndrome of the bucket image, as a functional of v itself
        return XorFunctional([self.bucket_of[c] + 1 for c in range(self.n)])

    def column(self, c: int) -> int:
        """Syndrome contribution of coordinate ``c``."""
        return self.bucket_of[c] + 1

    def image(self, v: int) -> int:
        check_vertex(v, self.n)
        out = 0
        for j, bucket in enumerate(self.buckets):
            out |= ((v & bucket.mask).bit_count() & 1) << j
        return out

    def syndrome(self, v: int) -> int:
        """Inner-code syndrome of the bucket image of ``v``."""
        check_vertex(v, self.n)
        return self._functional(v)

    def is_member(self, v: int) -> bool:
        return self.syndrome(v) == 0

    def dominators(self, v: int) -> list[int]:
        """Members of S in the closed neighborhood of ``v``, ascending by flipped coordinate."""
        s = self.syndrome(v)
        if s == 0:
            return [v]
        return [v ^ (1 << c) for c in self.buckets[s - 1]]

    def members(self) -> list[int]:
        f = self._functional
        return [v for v in range(1 << self.n) if f(v) == 0]
