"""Bit-string vertex arithmetic for the hypercube Q_n.

A vertex of Q_n is a plain ``int`` in ``[0, 2**n)``. Coordinate ``i``
(0-based; the usual 1-based coordinate ``i + 1``) is bit ``i`` of the
integer, so coordinate 0 is the least significant bit. Python ints are
arbitrary precision, which gives word-packed vertices for any ``n``.

The text form writes coordinate 0 first: ``"1100"`` at ``n = 4`` has
coordinates 0 and 1 set, i.e. the integer ``0b0011``. A hex form
``0x...`` is the same string read as a big-endian binary number padded to
``n`` digits.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .errors import DimensionError

Path = list[int]  # consecutive entries differ in exactly one bit


def full_mask(n: int) -> int:
    return (1 << n) - 1


def check_vertex(v: int, n: int) -> int:
    if v < 0 or v >> n:
        raise DimensionError(f"vertex {v:#x} does not fit in dimension {n}")
    return v


def antipode(v: int, n: int) -> int:
    return v ^ full_mask(n)


def hamming_distance(u: int, v: int, n: int | None = None) -> int:
    if n is not None:
        check_vertex(u, n)
        check_vertex(v, n)
    return (u ^ v).bit_count()


def coordinate_sum(v: int) -> int:
    return v.bit_count()


def bits_of(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_f_basis(v: int) -> int:
    """Coordinates of ``v`` in the prefix basis f_k = e_0 + ... + e_{k-1}.

    ``a_i = v_i ^ v_{i+1}`` and ``a_{n-1} = v_{n-1}``; no ``n`` is needed
    because bits above ``n - 1`` are zero.
    """
    return v ^ (v >> 1)


def from_f_basis(a: int) -> int:
    """Inverse of :func:`to_f_basis`: ``v_i`` is the XOR of ``a_j`` for ``j >= i``."""
    v = a
    shift = 1
    width = a.bit_length()
    while shift < width:
        v ^= v >> shift
        shift <<= 1
    return v


class CoordinateSet(Sequence[int]):
    """Sorted set of coordinate indices, stored as maximal contiguous runs.

    Restriction and embedding work run by run with shifts and masks, so a
    contiguous block costs a single shift regardless of its length.
    """

    __slots__ = ("indices", "mask", "runs")

    def __init__(self, indices: Iterable[int]):
        idx = tuple(sorted(set(indices)))
        if idx and idx[0] < 0:
            raise DimensionError(f"negative coordinate index {idx[0]}")
        self.indices = idx
        mask = 0
        for i in idx:
            mask |= 1 << i
        self.mask = mask
        # runs: (source start, length, destination offset)
        runs = []
        offset = 0
        for i in idx:
            if runs and runs[-1][0] + runs[-1][1] == i:
                start, length, dst = runs[-1]
                runs[-1] = (start, length + 1, dst)
            else:
                runs.append((i, 1, offset))
            offset += 1
        self.runs = tuple(runs)

    @classmethod
    def range(cls, start: int, stop: int) -> "CoordinateSet":
        return cls(range(start, stop))

    def __len__(self) -> int:
        return len(self.indices)

    def __getitem__(self, j):
        return self.indices[j]

    def __iter__(self):
        return iter(self.indices)

    def __contains__(self, i) -> bool:
        return isinstance(i, int) and i >= 0 and bool((self.mask >> i) & 1)

    def __eq__(self, other) -> bool:
        if isinstance(other, CoordinateSet):
            return self.indices == other.indices
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.indices)

    def __repr__(self) -> str:
        return f"CoordinateSet({list(self.indices)})"

    def check(self, n: int) -> None:
        if self.indices and self.indices[-1] >= n:
            raise DimensionError(f"coordinate {self.indices[-1]} out of range for n={n}")

    def union(self, other: "CoordinateSet") -> "CoordinateSet":
        return CoordinateSet(self.indices + other.indices)

    def gather(self, v: int) -> int:
        """Bits of ``v`` on this set, packed into ``[0, 2**len)``."""
        out = 0
        for start, length, dst in self.runs:
            out |= ((v >> start) & ((1 << length) - 1)) << dst
        return out

    def scatter(self, sub: int) -> int:
        """Spread a packed sub-vertex back onto this set's positions."""
        out = 0
        for start, length, dst in self.runs:
            out |= ((sub >> dst) & ((1 << length) - 1)) << start
        return out


def restrict(v: int, coords: CoordinateSet, n: int | None = None) -> int:
    if n is not None:
        check_vertex(v, n)
        coords.check(n)
    return coords.gather(v)


def embed(v: int, coords: CoordinateSet, sub: int, n: int | None = None) -> int:
    """Replace the bits of ``v`` on ``coords`` by the packed ``sub``."""
    if sub >> len(coords):
        raise DimensionError(f"sub-vertex {sub:#x} has more than {len(coords)} bits")
    if n is not None:
        check_vertex(v, n)
        coords.check(n)
    return (v & ~coords.mask) | coords.scatter(sub)


def greedy_path(u: int, v: int, n: int | None = None) -> Path:
    """Shortest Q_n path flipping 0->1 coordinates first, then 1->0, each ascending."""
    if n is not None:
        check_vertex(u, n)
        check_vertex(v, n)
    path = [u]
    cur = u
    for i in bits_of(v & ~u):
        cur ^= 1 << i
        path.append(cur)
    for i in bits_of(u & ~v):
        cur ^= 1 << i
        path.append(cur)
    return path


def distinct_coordinate_sums(path: Sequence[int]) -> int:
    return len({x.bit_count() for x in path})


def is_hypercube_path(path: Sequence[int]) -> bool:
    return all((a ^ b).bit_count() == 1 for a, b in zip(path, path[1:]))


def format_vertex(v: int, n: int) -> str:
    check_vertex(v, n)
    return "".join("1" if (v >> i) & 1 else "0" for i in range(n))


def parse_vertex(text: str, n: int | None = None) -> int:
    """Parse the text form. Hex input (``0x`` prefix) requires ``n``."""
    text = text.strip()
    if text.lower().startswith("0x"):
        if n is None:
            raise DimensionError("hex vertex needs an explicit dimension")
        try:
            value = int(text, 16)
        except ValueError as exc:
            raise DimensionError(f"bad hex vertex {text!r}") from exc
        if value >> n:
            raise DimensionError(f"hex vertex {text} does not fit in dimension {n}")
        text = format(value, "b").zfill(n) if n else ""
    if any(c not in "01" for c in text):
        raise DimensionError(f"bad vertex string {text!r}")
    if n is not None and len(text) != n:
        raise DimensionError(f"vertex {text!r} has length {len(text)}, expected {n}")
    v = 0
    for i, c in enumerate(text):
        if c == "1":
            v |= 1 << i
    return v
