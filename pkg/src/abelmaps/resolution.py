"""Resolutions of degree-2 Abel data, checked one ordered edge pair at a time.

A resolution assigns to each ordered pair of edges ``(e1, e2)`` an end of
each. Both admissibility and quasistability are local to the pair, so
everything here works with a :class:`PairChoice` and collects, per pair,
the set of quasistable choices (the Q-set). The singular locus and
solvability are read off those sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .graph import DualGraph, SubdividedGraph, subdivide
from .quasistability import AbelData, CorrectionTable, correction_table, is_quasistable_subdivided

EdgePair = tuple[int, int]


def other_end(g: DualGraph, edge: int, end: int) -> int:
    a, b = g.edges[edge]
    if end == a:
        return b
    if end == b:
        return a
    raise ValueError(f"vertex {end} is not an end of edge {edge}")


@dataclass(frozen=True, order=True)
class PairChoice:
    """Chosen ends ``(v1, v2)`` for the ordered edge pair ``(e1, e2)``."""

    e1: int
    e2: int
    v1: int
    v2: int

    @property
    def pair(self) -> EdgePair:
        return (self.e1, self.e2)

    @property
    def ends(self) -> tuple[int, int]:
        return (self.v1, self.v2)

    def validate(self, g: DualGraph) -> PairChoice:
        if self.v1 not in g.edges[self.e1] or self.v2 not in g.edges[self.e2]:
            raise ValueError(f"{self} does not pick ends of its edges")
        if self.e1 == self.e2 and self.v1 != self.v2:
            raise ValueError(f"{self}: a diagonal pair needs equal ends")
        return self


def mirror(g: DualGraph, c: PairChoice) -> PairChoice:
    return PairChoice(c.e1, c.e2, other_end(g, c.e1, c.v1), other_end(g, c.e2, c.v2))


def pair_choices(g: DualGraph, e1: int, e2: int) -> list[PairChoice]:
    """The candidate choices at a pair: 4 off the diagonal, 2 on it."""
    if e1 == e2:
        return [PairChoice(e1, e1, x, x) for x in g.edges[e1]]
    return [PairChoice(e1, e2, x, y) for x in g.edges[e1] for y in g.edges[e2]]


def equivalent(c1: PairChoice, c2: PairChoice) -> bool:
    same1, same2 = c1.v1 == c2.v1, c1.v2 == c2.v2
    return same1 == same2


def admissible_at(data: AbelData, table: CorrectionTable, c: PairChoice) -> bool:
    g = data.graph
    d = table.delta
    v1, v2 = c.v1, c.v2
    w1, w2 = other_end(g, c.e1, v1), other_end(g, c.e2, v2)

    for idx, (m, n) in enumerate(g.edges):
        if idx in (c.e1, c.e2):
            continue
        if not (
            abs(d(v1, v2, m, n) - d(w1, v2, m, n)) <= 1
            and abs(d(v1, v2, m, n) - d(v1, w2, m, n)) <= 1
            and abs(d(w1, v2, m, n) - d(v1, w2, m, n)) <= 1
            and abs(d(w1, w2, m, n) - d(w1, v2, m, n)) <= 1
            and abs(d(w1, w2, m, n) - d(v1, w2, m, n)) <= 1
        ):
            return False

    if c.e1 != c.e2:
        a, b = v1, w1
        s, t = v2, w2
        return (
            abs(d(v1, v2, a, b) - d(w1, v2, a, b) - 1) <= 1
            and abs(d(v1, v2, a, b) - d(v1, w2, a, b)) <= 1
            and abs(d(w1, v2, a, b) - d(v1, w2, a, b) + 1) <= 1
            and abs(d(w1, w2, a, b) - d(w1, v2, a, b)) <= 1
            and abs(d(w1, w2, a, b) - d(v1, w2, a, b) + 1) <= 1
            and abs(d(v1, w2, s, t) - d(v1, v2, s, t) + 1) <= 1
            and abs(d(v1, v2, s, t) - d(w1, v2, s, t)) <= 1
            and abs(d(w1, v2, s, t) - d(v1, w2, s, t) - 1) <= 1
            and abs(d(w1, w2, s, t) - d(w1, v2, s, t) + 1) <= 1
            and abs(d(v1, w2, s, t) - d(w1, w2, s, t)) <= 1
        )

    return (
        abs(d(v1, w1, v1, w1) - d(v1, v1, v1, w1) + 1) <= 1
        and abs(d(v1, w1, v1, w1) - d(w1, w1, v1, w1) - 1) <= 1
    )


def build_s_functions(
    data: AbelData, table: CorrectionTable, c: PairChoice, sub: SubdividedGraph | None = None
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The two functions s1, s2 on the vertices of Γ(2) for choice ``c``.

    Original vertices carry ``q``. An exceptional vertex on edge ``e``,
    adjacent to end ``m`` with far end ``n``, carries a sum of three δ
    values minus the number of slots ``i`` whose chosen end is ``m`` on
    that same edge.
    """
    g = data.graph
    sub = sub or subdivide(g, 2)
    d = table.delta
    v1, v2 = c.v1, c.v2
    w1, w2 = other_end(g, c.e1, v1), other_end(g, c.e2, v2)
    chosen = ((c.e1, v1), (c.e2, v2))
    mirrored = ((c.e1, w1), (c.e2, w2))

    s1 = list(data.q) + [0] * (sub.p - g.p)
    s2 = list(data.q) + [0] * (sub.p - g.p)
    for w, (edge, _pos, m) in sub.chain_index.items():
        n = other_end(g, edge, m)
        eps1 = sum(1 for ei, vi in chosen if vi == m and ei == edge)
        eps2 = sum(1 for ei, wi in mirrored if wi == m and ei == edge)
        s1[w] = d(v1, v2, m, n) + d(v1, w2, m, n) + d(w1, v2, m, n) - eps1
        s2[w] = d(w1, w2, m, n) + d(w1, v2, m, n) + d(v1, w2, m, n) - eps2
    return tuple(s1), tuple(s2)


def _chain_canonical(values: list[int]) -> tuple[list[int], int, int]:
    """Reduce interior chain values; returns (canonical values, spill to first end, spill to last end).

    Twisting interior vertex ``j`` by ``a_j`` subtracts ``a_j * c_j``. The
    canonical form has all zeros or a single -1, and exactly one of these
    ``len(values) + 1`` candidates is reachable with integer ``a``.
    """
    n = len(values)
    if n == 0:
        return [], 0, 0
    for target_pos in [None, *range(n)]:
        target = [0] * n
        if target_pos is not None:
            target[target_pos] = -1
        a = _solve_path(values, target)
        if a is not None:
            return target, -a[0], -a[-1]
    raise AssertionError("no canonical chain representative found")


def _solve_path(values: list[int], target: list[int]) -> list[int] | None:
    # values - sum_j a_j c_j restricted to the interior equals target, i.e.
    # (2 a_j - a_{j-1} - a_{j+1}) = target_j - values_j: a tridiagonal system.
    n = len(values)
    rhs = [Fraction(t - x) for t, x in zip(target, values)]
    diag = [Fraction(2)] * n
    # Thomas algorithm with off-diagonals -1.
    cp = [Fraction(0)] * n
    dp = [Fraction(0)] * n
    cp[0] = Fraction(-1) / diag[0]
    dp[0] = rhs[0] / diag[0]
    for j in range(1, n):
        denom = diag[j] + cp[j - 1]
        cp[j] = Fraction(-1) / denom
        dp[j] = (rhs[j] + dp[j - 1]) / denom
    a = [Fraction(0)] * n
    a[-1] = dp[-1]
    for j in range(n - 2, -1, -1):
        a[j] = dp[j] - cp[j] * a[j + 1]
    if any(x.denominator != 1 for x in a):
        return None
    return [int(x) for x in a]


def reduce(sub: SubdividedGraph, d: tuple[int, ...] | list[int]) -> tuple[int, ...]:
    """The reduction of ``d``: Γ-equivalent, with each chain all zeros except at most one -1."""
    out = list(d)
    for edge, chain in enumerate(sub.chains):
        if not chain:
            continue
        a, b = sub.base.edges[edge]
        canon, spill_a, spill_b = _chain_canonical([out[w] for w in chain])
        for w, val in zip(chain, canon):
            out[w] = val
        out[a] += spill_a
        out[b] += spill_b
    return tuple(out)


def extended_polarization(data: AbelData, sub: SubdividedGraph) -> tuple[Fraction, ...]:
    return tuple(data.e) + (Fraction(0),) * (sub.p - data.graph.p)


def quasistable_at(
    data: AbelData, table: CorrectionTable, c: PairChoice, sub: SubdividedGraph | None = None
) -> bool:
    if not admissible_at(data, table, c):
        return False
    sub = sub or subdivide(data.graph, 2)
    e2 = extended_polarization(data, sub)
    s1, s2 = build_s_functions(data, table, c, sub)
    return is_quasistable_subdivided(sub, e2, data.v, reduce(sub, s1)) and is_quasistable_subdivided(
        sub, e2, data.v, reduce(sub, s2)
    )


@dataclass(frozen=True)
class SingularLocusReport:
    """Q-sets for every ordered edge pair, the singular locus and solvability."""

    data: AbelData
    table: CorrectionTable
    qtable: dict[EdgePair, frozenset[PairChoice]]

    @cached_property
    def solvable(self) -> bool:
        return all(self.qtable.values())

    @cached_property
    def sigma(self) -> frozenset[EdgePair]:
        """Pairs where every quasistable choice lies in a single mirror class."""
        out = set()
        for pair, choices in self.qtable.items():
            cs = list(choices)
            if all(equivalent(cs[0], c) for c in cs[1:]):
                out.add(pair)
        return frozenset(out)

    @cached_property
    def off_diagonal(self) -> frozenset[EdgePair]:
        return frozenset(pr for pr in self.sigma if pr[0] != pr[1])

    @property
    def graph(self) -> DualGraph:
        return self.data.graph


def singular_locus(data: AbelData, table: CorrectionTable | None = None) -> SingularLocusReport:
    g = data.graph
    table = table or correction_table(data)
    sub = subdivide(g, 2)
    qtable = {}
    for e1 in range(g.n_edges):
        for e2 in range(g.n_edges):
            qtable[(e1, e2)] = frozenset(
                c for c in pair_choices(g, e1, e2) if quasistable_at(data, table, c, sub)
            )
    return SingularLocusReport(data, table, qtable)
