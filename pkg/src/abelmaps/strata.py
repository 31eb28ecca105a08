"""Signatures of degree-0 polarizations and grid sweeps over them.

For a proper subset I containing the marked vertex, let
``s_I = sum_I e + k_I/2``. A polarization is in the bounded region when
``0 <= s_I < k_I`` for all such I. Integer multidegrees only see the
floors of the ``s_I``, so two polarizations with equal signatures have the
same correction function.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .errors import NonzeroDegree
from .graph import DualGraph, boundary_count
from .quasistability import Polarization, as_polarization


@dataclass(frozen=True)
class StratumSignature:
    """``entries[j] = (mask, floor(s_I), s_I is an integer)`` over subsets I containing v."""

    entries: tuple[tuple[int, int, bool], ...]
    in_xi0: bool

    def compact(self) -> str:
        return " ".join(f"{fl}{'w' if wall else ''}" for _, fl, wall in self.entries)


def _subsets_with(g: DualGraph, v: int) -> list[int]:
    bit = 1 << v
    return [m for m in range(1, g.full_mask) if m & bit]


def signature(g: DualGraph, v: int, e: Sequence) -> StratumSignature:
    v = g.check_vertex(v)
    e = as_polarization(e)
    if len(e) != g.p:
        raise NonzeroDegree(f"expected {g.p} values, got {len(e)}")
    if sum(e) != 0:
        raise NonzeroDegree(f"polarization has degree {sum(e)}, expected 0")
    entries = []
    inside = True
    for mask in _subsets_with(g, v):
        k = boundary_count(g, mask)
        s = sum((e[i] for i in range(g.p) if mask >> i & 1), Fraction(0)) + Fraction(k, 2)
        fl = math.floor(s)
        entries.append((mask, fl, s == fl))
        if not (0 <= s < k):
            inside = False
    return StratumSignature(tuple(entries), inside)


def in_xi0(g: DualGraph, v: int, e: Sequence) -> bool:
    return signature(g, v, e).in_xi0


def same_stratum_signature(g: DualGraph, v: int, e1: Sequence, e2: Sequence) -> bool:
    return signature(g, v, e1).entries == signature(g, v, e2).entries


def grid_points(p: int, denominator: int, bound: int):
    """Degree-0 points with entries in ``[-bound, bound]`` and denominators dividing ``denominator``."""
    lim = bound * denominator
    for head in itertools.product(range(-lim, lim + 1), repeat=p - 1):
        last = -sum(head)
        if -lim <= last <= lim:
            yield tuple(Fraction(x, denominator) for x in (*head, last))


def enumerate_stratum_representatives(
    g: DualGraph, v: int, denominator: int, bound: int
) -> list[tuple[Polarization, StratumSignature]]:
    """One grid point per signature found in the bounded region, in scan order.

    Strata with no point on the grid are missed; refine ``denominator`` to
    find more.
    """
    if denominator < 1 or bound < 0:
        raise ValueError("need denominator >= 1 and bound >= 0")
    seen: dict = {}
    for e in grid_points(g.p, denominator, bound):
        sig = signature(g, v, e)
        if sig.in_xi0 and sig.entries not in seen:
            seen[sig.entries] = (e, sig)
    return list(seen.values())
