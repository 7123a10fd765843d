"""Layer-matching diameter-n subgraph and the edge lower bound for diameter-n subgraphs.

Between consecutive layers ``k`` and ``k + 1`` of Q_n, every vertex of the
larger layer (the lower one on ties) picks one partner in the other layer.
Partners come from bracket matching: reading coordinates 0..n-1, a 1 opens
and a 0 closes, each 0 pairing with the nearest unpaired 1 to its left.

``rule="chain"`` (the default) moves down by clearing the leftmost unpaired 1
and up by setting the rightmost unpaired 0, which measures diameter n for
n <= 13. ``rule="bracket"`` swaps the ends (rightmost 1 down, leftmost 0 up)
and measures diameter 2n - 2. When no unpaired symbol exists the lowest
feasible coordinate is flipped.
"""

from __future__ import annotations

import math
from fractions import Fraction

from ..errors import ParameterError
from ..hyperbits import bits_of, check_vertex, full_mask

RULES = ("bracket", "chain")


def unpaired(x: int, n: int) -> tuple[list[int], list[int]]:
    """Positions of unpaired 1s and unpaired 0s, each ascending."""
    ones: list[int] = []
    zeros: list[int] = []
    for i in range(n):
        if (x >> i) & 1:
            ones.append(i)
        elif ones:
            ones.pop()
        else:
            zeros.append(i)
    return ones, zeros


def down_partner(x: int, n: int, rule: str = "chain") -> int:
    ones, _ = unpaired(x, n)
    if ones:
        return x ^ (1 << (ones[-1] if rule == "bracket" else ones[0]))
    if not x:
        raise ParameterError("the empty vertex has no lower partner")
    return x & (x - 1)


def up_partner(x: int, n: int, rule: str = "chain") -> int:
    _, zeros = unpaired(x, n)
    if zeros:
        return x ^ (1 << (zeros[0] if rule == "bracket" else zeros[-1]))
    free = full_mask(n) & ~x
    if not free:
        raise ParameterError("the full vertex has no upper partner")
    return x | (free & -free)


class LayerMatchingGraph:
    def __init__(self, n: int, rule: str = "chain"):
        if n < 2:
            raise ParameterError(f"layer matching needs n >= 2, got {n}")
        if rule not in RULES:
            raise ParameterError(f"unknown rule {rule!r}; expected one of {RULES}")
        self.n = n
        self.rule = rule
        sizes = [math.comb(n, k) for k in range(n + 1)]
        # pair (k, k+1): True when the upper layer assigns (strictly larger)
        self._upper_assigns = tuple(sizes[k + 1] > sizes[k] for k in range(n))

    @property
    def graph_id(self) -> str:
        return f"layermatch(n={self.n},rule={self.rule})"

    def neighbor_mask(self, x: int) -> int:
        n, rule = self.n, self.rule
        check_vertex(x, n)
        w = x.bit_count()
        mask = 0
        if w >= 1:
            if self._upper_assigns[w - 1]:
                mask |= x ^ down_partner(x, n, rule)
            else:
                for d in bits_of(x):
                    y = x ^ (1 << d)
                    if up_partner(y, n, rule) == x:
                        mask |= 1 << d
        if w < n:
            if not self._upper_assigns[w]:
                mask |= x ^ up_partner(x, n, rule)
            else:
                for d in bits_of(full_mask(n) & ~x):
                    y = x | (1 << d)
                    if down_partner(y, n, rule) == x:
                        mask |= 1 << d
        return mask

    def neighbors(self, x: int) -> set[int]:
        return {x ^ (1 << d) for d in bits_of(self.neighbor_mask(x))}


def layer_matching_graph(n: int, rule: str = "chain") -> LayerMatchingGraph:
    return LayerMatchingGraph(n, rule)


def layer_matching_edge_formula(n: int) -> int:
    return (1 << n) + math.comb(n, n // 2) - 2


def proposition_bound(n: int) -> Fraction:
    """``2**n + (2**n - 1) / (2n) - 1``: fewest edges a diameter-n subgraph can have."""
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    return Fraction(1 << n) + Fraction((1 << n) - 1, 2 * n) - 1


def proposition_edge_floor(n: int) -> int:
    return math.ceil(proposition_bound(n))
