import random

import numpy as np
import pytest

from hyperspan.hyperbits import format_vertex, parse_vertex


def V(text: str) -> int:
    """Vertex from its text form (coordinate 0 first)."""
    return parse_vertex(text)


def S(v: int, n: int) -> str:
    return format_vertex(v, n)


def parity_check_syndrome(word: int, q: int) -> int:
    """Hamming syndrome as an explicit matrix product over GF(2)."""
    r = q.bit_length()
    H = np.array([[((j + 1) >> i) & 1 for j in range(q)] for i in range(r)], dtype=np.int64)
    w = np.array([(word >> j) & 1 for j in range(q)], dtype=np.int64)
    bits = (H @ w) % 2
    return int(sum(int(b) << i for i, b in enumerate(bits)))


def npc_member_oracle(v: int, n: int) -> bool:
    """Bucket-parity image tested against the explicit parity-check matrix."""
    k = (n + 1).bit_length() - 1
    q = (1 << k) - 1
    doubles = n - q
    image = 0
    for j in range(q):
        coords = (2 * j, 2 * j + 1) if j < doubles else (doubles + j,)
        image |= (sum((v >> c) & 1 for c in coords) % 2) << j
    return parity_check_syndrome(image, q) == 0


@pytest.fixture
def rng():
    return random.Random(12345)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
