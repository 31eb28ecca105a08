"""v-quasistability of multidegrees, twisting to the quasistable representative,
and the correction function of degree-2 Abel data.

All polarization arithmetic is exact: polarizations are tuples of
:class:`fractions.Fraction`, and subset inequalities are evaluated on
integers after clearing denominators.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import BadIndex, DegreeMismatch, NonTermination
from .graph import DualGraph, SubdividedGraph, _as_graph, subset_table

MAX_TWIST_STEPS = 10**6

Polarization = tuple[Fraction, ...]
Multidegree = tuple[int, ...]


def as_polarization(values: Sequence) -> Polarization:
    return tuple(Fraction(x) for x in values)


def as_multidegree(values: Sequence) -> Multidegree:
    out = []
    for x in values:
        if int(x) != x:
            raise DegreeMismatch(f"multidegree entry {x!r} is not an integer")
        out.append(int(x))
    return tuple(out)


def unit_multidegree(g: DualGraph | SubdividedGraph, u: int) -> Multidegree:
    g = _as_graph(g)
    u = g.check_vertex(u)
    return tuple(int(i == u) for i in range(g.p))


def _check_lengths(g: DualGraph, *vectors: Sequence) -> None:
    for vec in vectors:
        if len(vec) != g.p:
            raise BadIndex(f"expected {g.p} values, got {len(vec)}")


def _scaled_excess(e: Polarization, d: Sequence[int]) -> tuple[np.ndarray, int]:
    """Return (X, D) with X = 2*D*(d - e) integral and D the lcm of e's denominators."""
    den = math.lcm(*(x.denominator for x in e)) if e else 1
    x = [int(2 * den * (Fraction(di) - ei)) for di, ei in zip(d, e)]
    return np.array(x, dtype=np.int64), den


def _violations(g: DualGraph, x: np.ndarray, den: int, v: int) -> np.ndarray:
    table = subset_table(g)
    slack = table.member @ x + den * table.k
    has_v = table.member[:, v].astype(bool)
    return (slack < 0) | ((slack == 0) & has_v)


def is_quasistable(g: DualGraph | SubdividedGraph, e: Sequence, v: int, d: Sequence[int]) -> bool:
    """True iff ``d`` is v-quasistable with respect to ``e``.

    Every proper nonempty subset I must satisfy
    ``sum_I (d - e) >= -k_I/2``, strictly when ``v`` is in I. Checking
    connected subsets suffices: both sides are additive over the
    components of I.
    """
    g = _as_graph(g)
    v = g.check_vertex(v)
    e = as_polarization(e)
    d = as_multidegree(d)
    _check_lengths(g, e, d)
    if sum(d) != sum(e):
        raise DegreeMismatch(f"degree of d is {sum(d)}, degree of e is {sum(e)}")
    x, den = _scaled_excess(e, d)
    return not _violations(g, x, den, v).any()


def is_quasistable_subdivided(
    sub: SubdividedGraph, e: Sequence, v: int, d: Sequence[int]
) -> bool:
    """Same verdict as :func:`is_quasistable` on Γ(i), without enumerating subsets of Γ(i).

    Fix the original vertices J of a subset. The cut and degree sums then
    split over the chains, and each chain's best interior choice is found
    by a small path DP. So only the 2^p subsets of original vertices are
    scanned. ``e`` and ``d`` are indexed by the vertices of Γ(i).
    """
    g = sub.graph
    base = sub.base
    v = base.check_vertex(v)
    e = as_polarization(e)
    d = as_multidegree(d)
    _check_lengths(g, e, d)
    if sum(d) != sum(e):
        raise DegreeMismatch(f"degree of d is {sum(d)}, degree of e is {sum(e)}")
    x, den = _scaled_excess(e, d)
    x = [int(t) for t in x]

    chains = []
    for edge, chain in enumerate(sub.chains):
        a, b = base.edges[edge]
        chains.append((a, b, _chain_minima([x[w] for w in chain], den)))

    full = base.full_mask
    for J in range(full + 1):
        total = sum(x[i] for i in range(base.p) if J >> i & 1)
        extra = None
        for a, b, mins in chains:
            best, nonempty, notfull = mins[J >> a & 1][J >> b & 1]
            total += best
            if J == 0:
                gap = nonempty - best
            elif J == full:
                gap = notfull - best
            else:
                continue
            extra = gap if extra is None else min(extra, gap)
        if J in (0, full):
            if extra is None or extra == _INF:
                continue
            total += extra
        if J >> v & 1:
            if total <= 0:
                return False
        elif total < 0:
            return False
    return True


_INF = float("inf")


def _chain_minima(values: list[int], den: int):
    """Per end-membership (b0, b1): min cost over interior choices, overall,
    with at least one interior vertex in, and with at least one out."""
    out = [[None, None], [None, None]]
    for b0 in (0, 1):
        for b1 in (0, 1):
            # state: (membership of previous vertex, any interior in, any interior out)
            states = {(b0, False, False): 0}
            for val in values:
                nxt: dict = {}
                for (prev, anyin, anyout), cost in states.items():
                    for cur in (0, 1):
                        c = cost + (val if cur else 0) + (den if cur != prev else 0)
                        key = (cur, anyin or cur == 1, anyout or cur == 0)
                        if c < nxt.get(key, _INF):
                            nxt[key] = c
                states = nxt
            best = nonempty = notfull = _INF
            for (prev, anyin, anyout), cost in states.items():
                c = cost + (den if prev != b1 else 0)
                best = min(best, c)
                if anyin:
                    nonempty = min(nonempty, c)
                if anyout:
                    notfull = min(notfull, c)
            out[b0][b1] = (best, nonempty, notfull)
    return out


def quasistable_twist(
    g: DualGraph, e: Sequence, v: int, d: Sequence[int]
) -> tuple[Multidegree, tuple[int, ...]]:
    """Twist ``d`` to its v-quasistable representative.

    Returns ``(d2, a)`` with ``d2 = d - sum_m a[m] * c_m`` v-quasistable and
    ``a[v] == 0``. Repeatedly picks the smallest connected subset I whose
    inequality fails and subtracts ``sum_{m in I} c_m``, which raises the
    degree on I by ``k_I``.
    """
    g = _as_graph(g)
    v = g.check_vertex(v)
    e = as_polarization(e)
    d = as_multidegree(d)
    _check_lengths(g, e, d)
    if sum(d) != sum(e):
        raise DegreeMismatch(f"degree of d is {sum(d)}, degree of e is {sum(e)}")
    table = subset_table(g)
    flows = np.array(g.intersection_matrix, dtype=np.int64)
    x, den = _scaled_excess(e, d)
    cur = np.array(d, dtype=np.int64)
    a = np.zeros(g.p, dtype=np.int64)
    for _ in range(MAX_TWIST_STEPS):
        bad = _violations(g, x, den, v)
        if not bad.any():
            break
        row = table.member[int(np.argmax(bad))]
        step = -(row @ flows)
        cur += step
        x += 2 * den * step
        a += row
    else:
        raise NonTermination(f"no quasistable representative after {MAX_TWIST_STEPS} twists")
    a -= a[v]
    return tuple(int(t) for t in cur), tuple(int(t) for t in a)


def quasistable_representative(
    g: DualGraph, e: Sequence, v: int, d: Sequence[int]
) -> Multidegree:
    """The unique v-quasistable multidegree twister-equivalent to ``d``."""
    return quasistable_twist(g, e, v, d)[0]


@dataclass(frozen=True)
class AbelData:
    """Degree-2 Abel data ``(graph, e, q, v)``.

    Requires ``sum(e) == sum(q) - 2``.
    """

    graph: DualGraph
    e: Polarization
    q: Multidegree
    v: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "e", as_polarization(self.e))
        object.__setattr__(self, "q", as_multidegree(self.q))
        object.__setattr__(self, "v", self.graph.check_vertex(self.v))
        _check_lengths(self.graph, self.e, self.q)
        if sum(self.e) != sum(self.q) - 2:
            raise DegreeMismatch(
                f"sum(e) = {sum(self.e)} but sum(q) - 2 = {sum(self.q) - 2}"
            )

    @property
    def f(self) -> Fraction:
        return sum(self.e, Fraction(0))

    @classmethod
    def standard(cls, graph: DualGraph, e: Sequence, v: int = 0) -> AbelData:
        """Abel data with q = 2 at ``v`` and 0 elsewhere (so ``e`` has degree 0)."""
        q = [0] * graph.p
        q[v] = 2
        return cls(graph, e, q, v)


@dataclass(frozen=True)
class CorrectionTable:
    """Normalized twister coefficients ``w[i][k]`` for every vertex pair.

    ``w[i][k]`` is the integer function with ``w[i][k][v] == 0`` making
    ``q - δ_i - δ_k - sum_m w[i][k][m] c_m`` v-quasistable.
    """

    data: AbelData
    w: tuple[tuple[tuple[int, ...], ...], ...]

    def delta(self, i: int, k: int, m: int, n: int) -> int:
        wik = self.w[i][k]
        return wik[m] - wik[n]

    @cached_property
    def array(self) -> np.ndarray:
        """δ as a p⁴ integer array indexed ``[i, k, m, n]``."""
        w = np.array(self.w, dtype=np.int64)
        return w[:, :, :, None] - w[:, :, None, :]


def correction_table(data: AbelData) -> CorrectionTable:
    g, p = data.graph, data.graph.p
    w = [[None] * p for _ in range(p)]
    for i in range(p):
        for k in range(i, p):
            d = list(data.q)
            d[i] -= 1
            d[k] -= 1
            _, coeffs = quasistable_twist(g, data.e, data.v, d)
            w[i][k] = w[k][i] = coeffs
    return CorrectionTable(data, tuple(tuple(row) for row in w))
