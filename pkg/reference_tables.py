"""
Published rows of the A_3 (p = 4) and A_4 (p = 5) right-set tables.

Each row carries the printed column-(1) word of y (w = w_0 y), the printed
epsilon- and omega-vectors, l(w) and the counts (5), (6), (7). The printed
words may differ from the canonical words while naming the same element.
"""
from typing import Dict, NamedTuple, Tuple


class PublishedRow(NamedTuple):
    word: Tuple[int, ...]
    epsilon: Tuple[int, ...]
    omega: Tuple[int, ...]
    length: int
    c5: int
    c6: int
    c7: int


R = PublishedRow

A3_ROWS = (
    R((0, 3, 1, 2), (3, 1, -1, -3), (2, 2, 2), 10, 1, 5, 8),
    R((0, 1, 2), (3, -1, -1, -1), (4, 0, 0), 9, 1, 1, 4),
    R((0, 3, 1), (2, 1, -1, -2), (1, 2, 1), 9, 1, 2, 5),
    R((0, 3, 2), (1, 1, 1, -3), (0, 0, 4), 9, 1, 1, 4),
    R((0, 1), (2, 0, -1, -1), (2, 1, 0), 8, 1, 1, 3),
    R((0, 3), (1, 1, 0, -2), (0, 1, 2), 8, 1, 1, 3),
    R((0,), (1, 0, 0, -1), (1, 0, 1), 7, 1, 1, 2),
    R((), (0, 0, 0, 0), (0, 0, 0), 6, 1, 1, 1),
)

A4_ROWS = (
    R((0, 4, 1, 2, 3, 0, 4, 2, 1, 0), (6, 3, 0, -3, -6), (3, 3, 3, 3), 20, 1, 31, 52),
    R((0, 1, 2, 3, 4, 3, 2, 1, 0), (6, 0, 0, 0, -6), (6, 0, 0, 6), 19, 5, 7, 34),
    R((0, 4, 1, 2, 3, 0, 4, 1, 0), (6, 3, -3, -3, -3), (3, 6, 0, 0), 19, 3, 4, 26),
    R((0, 4, 1, 2, 3, 0, 4, 2, 0), (6, 1, 0, -3, -4), (5, 1, 3, 1), 19, 5, 6, 32),
    R((0, 4, 1, 2, 3, 0, 4, 2, 1), (5, 3, 0, -3, -5), (2, 3, 3, 2), 19, 2, 15, 38),
    R((0, 4, 1, 2, 3, 2, 0, 1, 0), (4, 3, 0, -1, -6), (1, 3, 1, 5), 19, 5, 6, 32),
    R((0, 4, 3, 1, 0, 4, 2, 1, 0), (3, 3, 3, -3, -6), (0, 0, 6, 3), 19, 3, 4, 26),
    R((0, 1, 2, 3, 4, 3, 2, 0), (6, 0, 0, -2, -4), (6, 0, 2, 2), 18, 3, 5, 26),
    R((0, 1, 2, 3, 4, 3, 2, 1), (5, 0, 0, 0, -5), (5, 0, 0, 5), 18, 2, 2, 21),
    R((0, 4, 1, 2, 3, 0, 4, 0), (6, 1, -1, -3, -3), (5, 2, 2, 0), 18, 2, 3, 22),
    R((0, 4, 1, 2, 3, 0, 4, 1), (5, 3, -2, -3, -3), (2, 5, 1, 0), 18, 3, 5, 22),
    R((0, 4, 1, 2, 3, 0, 4, 2), (5, 2, 0, -3, -4), (3, 2, 3, 1), 18, 2, 10, 27),
    R((0, 4, 1, 2, 3, 2, 0, 1), (4, 3, 0, -2, -5), (1, 3, 2, 3), 18, 2, 10, 27),
    R((0, 4, 1, 2, 3, 2, 1, 0), (4, 2, 0, 0, -6), (2, 2, 0, 6), 18, 3, 5, 26),
    R((0, 4, 3, 1, 0, 4, 2, 1), (3, 3, 2, -3, -5), (0, 1, 5, 2), 18, 3, 5, 22),
    R((0, 4, 3, 1, 2, 0, 1, 0), (3, 3, 1, -1, -6), (0, 2, 2, 5), 18, 2, 3, 22),
    R((0, 1, 2, 3, 4, 3, 0), (6, 0, -1, -2, -3), (6, 1, 1, 1), 17, 2, 7, 19),
    R((0, 1, 2, 3, 4, 3, 2), (5, 0, 0, -1, -4), (5, 0, 1, 3), 17, 1, 3, 17),
    R((0, 4, 1, 2, 3, 0, 1), (4, 3, -2, -2, -3), (1, 5, 0, 1), 17, 3, 4, 17),
    R((0, 4, 1, 2, 3, 0, 4), (5, 2, -1, -3, -3), (3, 3, 2, 0), 17, 1, 6, 19),
    R((0, 4, 1, 2, 3, 2, 0), (4, 2, 0, -2, -4), (2, 2, 2, 2), 17, 2, 4, 20),
    R((0, 4, 1, 2, 3, 2, 1), (4, 1, 0, 0, -5), (3, 1, 0, 5), 17, 1, 3, 17),
    R((0, 4, 3, 1, 0, 4, 2), (3, 2, 2, -3, -4), (1, 0, 5, 1), 17, 3, 4, 17),
    R((0, 4, 3, 1, 2, 0, 1), (3, 3, 1, -2, -5), (0, 2, 3, 3), 17, 1, 6, 19),
    R((0, 4, 3, 1, 2, 1, 0), (3, 2, 1, 0, -6), (1, 1, 1, 6), 17, 2, 7, 19),
    R((0, 1, 2, 3, 4, 0), (6, -1, -1, -2, -2), (7, 0, 1, 0), 16, 3, 3, 12),
    R((0, 1, 2, 3, 4, 3), (5, 0, -1, -1, -3), (5, 1, 0, 2), 16, 2, 3, 13),
    R((0, 4, 1, 2, 0, 1), (3, 3, -2, -2, -2), (0, 5, 0, 0), 16, 1, 1, 10),
    R((0, 4, 1, 2, 3, 0), (4, 2, -1, -2, -3), (2, 3, 1, 1), 16, 1, 6, 15),
    R((0, 4, 1, 2, 3, 2), (4, 1, 0, -1, -4), (3, 1, 1, 3), 16, 1, 5, 14),
    R((0, 4, 3, 1, 0, 4), (2, 2, 2, -3, -3), (0, 0, 5, 0), 16, 1, 1, 10),
    R((0, 4, 3, 1, 2, 0), (3, 2, 1, -2, -4), (1, 1, 3, 2), 16, 1, 6, 15),
    R((0, 4, 3, 1, 2, 1), (3, 1, 1, 0, -5), (2, 0, 1, 5), 16, 2, 3, 13),
    R((0, 4, 3, 2, 1, 0), (2, 2, 1, 1, -6), (0, 1, 0, 7), 16, 3, 3, 12),
    R((0, 1, 2, 3, 4), (5, -1, -1, -1, -2), (6, 0, 0, 1), 15, 2, 3, 9),
    R((0, 4, 1, 2, 0), (3, 2, -1, -2, -2), (1, 3, 1, 0), 15, 2, 2, 9),
    R((0, 4, 1, 2, 3), (4, 1, -1, -1, -3), (3, 2, 0, 2), 15, 1, 5, 11),
    R((0, 4, 3, 1, 0), (2, 2, 1, -2, -3), (0, 1, 3, 1), 15, 2, 2, 9),
    R((0, 4, 3, 1, 2), (3, 1, 1, -1, -4), (2, 0, 2, 3), 15, 1, 5, 11),
    R((0, 4, 3, 2, 1), (2, 1, 1, 1, -5), (1, 0, 0, 6), 15, 2, 3, 9),
    R((0, 1, 2, 3), (4, -1, -1, -1, -1), (5, 0, 0, 0), 14, 1, 1, 5),
    R((0, 4, 1, 0), (2, 2, 0, -2, -2), (0, 2, 2, 0), 14, 1, 1, 6),
    R((0, 4, 1, 2), (3, 1, -1, -1, -2), (2, 2, 0, 1), 14, 1, 2, 7),
    R((0, 4, 3, 1), (2, 1, 1, -1, -3), (1, 0, 2, 2), 14, 1, 2, 7),
    R((0, 4, 3, 2), (1, 1, 1, 1, -4), (0, 0, 0, 5), 14, 1, 1, 5),
    R((0, 1, 2), (3, 0, -1, -1, -1), (3, 1, 0, 0), 13, 1, 1, 4),
    R((0, 4, 1), (2, 1, 0, -1, -2), (1, 1, 1, 1), 13, 1, 2, 5),
    R((0, 4, 3), (1, 1, 1, 0, -3), (0, 0, 1, 3), 13, 1, 1, 4),
    R((0, 1), (2, 0, 0, -1, -1), (2, 0, 1, 0), 12, 1, 1, 3),
    R((0, 4), (1, 1, 0, 0, -2), (0, 1, 0, 2), 12, 1, 1, 3),
    R((0,), (1, 0, 0, 0, -1), (1, 0, 0, 1), 11, 1, 1, 2),
    R((), (0, 0, 0, 0, 0), (0, 0, 0, 0), 10, 1, 1, 1),
)

A3_EPSILON: Dict[Tuple[int, ...], Tuple[int, ...]] = {r.omega: r.epsilon for r in A3_ROWS}
A4_EPSILON: Dict[Tuple[int, ...], Tuple[int, ...]] = {r.omega: r.epsilon for r in A4_ROWS}
A3_WORDS: Dict[Tuple[int, ...], Tuple[int, ...]] = {r.omega: r.word for r in A3_ROWS}
A4_WORDS: Dict[Tuple[int, ...], Tuple[int, ...]] = {r.omega: r.word for r in A4_ROWS}

PUBLISHED = {3: A3_ROWS, 4: A4_ROWS}


def published_rows(n: int) -> Dict[Tuple[int, ...], PublishedRow]:
    """Published rows of A_n keyed by omega (n = 3 or 4)."""
    if n not in PUBLISHED:
        raise KeyError(f"no published table for A_{n}")
    return {row.omega: row for row in PUBLISHED[n]}
