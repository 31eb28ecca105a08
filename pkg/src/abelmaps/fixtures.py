"""Worked examples: graphs, polarizations and resolving sequences.

The first graph's printed matrix has entry (3,4) = -2 against (4,3) = 2;
its diagonal forces 2, which is what is used here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .blowup import BlowupSequence
from .graph import DualGraph, parse_intersection_matrix
from .quasistability import AbelData

FOUR_VERTEX = [[-2, 1, 1, 0], [1, -5, 3, 1], [1, 3, -6, 2], [0, 1, 2, -3]]
FOUR_VERTEX_DOUBLED = [[-4, 2, 2, 0], [2, -7, 3, 2], [2, 3, -7, 2], [0, 2, 2, -4]]


def circular_matrix(p: int) -> list[list[int]]:
    """Intersection matrix of the p-cycle (two parallel edges when p == 2)."""
    m = [[0] * p for _ in range(p)]
    for i in range(p):
        j = (i + 1) % p
        m[i][j] += 1
        m[j][i] += 1
        m[i][i] -= 1
        m[j][j] -= 1
    return m


def circular_graph(p: int) -> DualGraph:
    return parse_intersection_matrix(circular_matrix(p))


def _seq(*steps: list[int]) -> BlowupSequence:
    return BlowupSequence.from_lists([[s, s] for s in steps])


_CIRC_5 = [[1], [2], [1, 2], [3], [2, 3], [1, 3], [4], [3, 4], [2, 4], [1, 4]]


@dataclass(frozen=True)
class Case:
    name: str
    matrix: list
    e: tuple
    sequence: BlowupSequence

    @property
    def data(self) -> AbelData:
        return AbelData.standard(parse_intersection_matrix(self.matrix), self.e)


h = Fraction(1, 2)

WORKED_CASES = (
    Case("example-7-1-a", FOUR_VERTEX, (0, 0, 0, 0), _seq([1], [4])),
    Case("example-7-1-b", FOUR_VERTEX, (0, -h, 0, h), _seq([1], [4])),
    Case("example-7-1-c", FOUR_VERTEX, (0, h, 0, -h), _seq([1])),
    Case("example-7-2-p2", circular_matrix(2), (0, 0), _seq([1])),
    Case("example-7-2-p3", circular_matrix(3), (0, 0, 0), _seq([1], [2], [3])),
    Case("example-7-2-p4", circular_matrix(4), (0,) * 4, _seq(*_CIRC_5[:6])),
    Case("example-7-2-p5", circular_matrix(5), (0,) * 5, _seq(*_CIRC_5)),
    Case("example-7-3-a", FOUR_VERTEX_DOUBLED, (0, 0, 0, 0), _seq()),
    Case("example-7-3-b", FOUR_VERTEX_DOUBLED, (-h, 0, h, 0), _seq([1])),
    Case("example-7-3-c", FOUR_VERTEX_DOUBLED, (-1, -1, 1, 1), _seq([1], [4])),
)


def case(name: str) -> Case:
    for c in WORKED_CASES:
        if c.name == name:
            return c
    raise KeyError(name)
