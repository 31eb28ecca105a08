"""Blowup sequences: symmetry, order and center, verification, and search.

A step is a pair of proper nonempty vertex subsets ``(I1, I2)`` stored as
bitmasks. A pair of edges ``(R, S)`` is affected by a step when exactly one
end of R is in I1 and exactly one end of S is in I2.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .errors import BadSequence, Unsolvable
from .graph import DualGraph, mask_of, vertices_of
from .resolution import EdgePair, SingularLocusReport

Step = tuple[int, int]


@dataclass(frozen=True)
class BlowupSequence:
    steps: tuple[Step, ...] = ()

    def __len__(self) -> int:
        return len(self.steps)

    def validate(self, g: DualGraph) -> BlowupSequence:
        for j, (a, b) in enumerate(self.steps, start=1):
            for m in (a, b):
                if m <= 0 or m >= g.full_mask or m & ~g.full_mask:
                    raise BadSequence(
                        f"step {j}: subsets must be proper nonempty subsets of the {g.p} vertices"
                    )
        return self

    @classmethod
    def from_lists(cls, steps: Iterable[Sequence[Iterable[int]]], one_based: bool = True) -> BlowupSequence:
        """Build from ``[[subset1, subset2], ...]`` with vertex lists (1-based by default)."""
        out = []
        shift = 1 if one_based else 0
        for step in steps:
            step = list(step)
            if len(step) != 2:
                raise BadSequence(f"a step must be a pair of subsets, got {step!r}")
            masks = []
            for subset in step:
                vs = [int(x) - shift for x in subset]
                if any(x < 0 for x in vs):
                    raise BadSequence(f"vertex index out of range in {subset!r}")
                masks.append(mask_of(vs))
            out.append((masks[0], masks[1]))
        return cls(tuple(out))

    def to_lists(self, one_based: bool = True) -> list[list[list[int]]]:
        shift = 1 if one_based else 0
        return [[[x + shift for x in vertices_of(m)] for m in step] for step in self.steps]

    def __str__(self) -> str:
        if not self.steps:
            return "()"
        parts = []
        for a, b in self.to_lists():
            fa = "{" + ",".join(map(str, a)) + "}"
            fb = "{" + ",".join(map(str, b)) + "}"
            parts.append(f"({fa},{fb})")
        return ", ".join(parts)


def is_symmetric(s: BlowupSequence) -> bool:
    """Every unequal step must sit next to its swap; neighbors past either end never match."""
    steps = s.steps
    for j, (a, b) in enumerate(steps):
        if a == b:
            continue
        prev_ok = j > 0 and steps[j - 1] == (b, a)
        next_ok = j + 1 < len(steps) and steps[j + 1] == (b, a)
        if not (prev_ok or next_ok):
            return False
    return True


def _crosses(g: DualGraph, edge: int, mask: int) -> bool:
    a, b = g.edges[edge]
    return bool(((mask >> a) ^ (mask >> b)) & 1)


def order_of(s: BlowupSequence, g: DualGraph, pair: EdgePair) -> int | None:
    """1-based index of the first step affecting ``pair``, or None."""
    r, t = pair
    for j, (a, b) in enumerate(s.steps, start=1):
        if _crosses(g, r, a) and _crosses(g, t, b):
            return j
    return None


def center_of(s: BlowupSequence, g: DualGraph) -> frozenset[EdgePair]:
    n = g.n_edges
    return frozenset(
        (r, t) for r in range(n) for t in range(n) if r == t or order_of(s, g, (r, t)) is not None
    )


def _oriented(rep: SingularLocusReport, pair: EdgePair, step: Step) -> bool:
    a, b = step
    for c in rep.qtable[pair]:
        in1 = bool(a >> c.v1 & 1)
        in2 = bool(b >> c.v2 & 1)
        if in1 == in2:
            return False
    return True


@dataclass(frozen=True)
class Verdict:
    resolves: bool
    minimal: bool
    symmetric: bool
    witness: str = ""
    center: frozenset = field(default=frozenset(), repr=False)


def verify(rep: SingularLocusReport, s: BlowupSequence) -> Verdict:
    """Check the three resolving conditions, then minimality (center equal to Σ)."""
    g = rep.graph
    s.validate(g)
    center = center_of(s, g)
    symmetric = is_symmetric(s)

    def verdict(resolves: bool, minimal: bool, witness: str) -> Verdict:
        return Verdict(resolves, minimal, symmetric, witness, center)

    def name(pair: EdgePair) -> str:
        return f"({g.edge_label(pair[0])}, {g.edge_label(pair[1])})"

    if not rep.solvable:
        empty = next(pr for pr, q in rep.qtable.items() if not q)
        return verdict(False, False, f"singular locus not solvable: no quasistable choice at {name(empty)}")
    missing = sorted(rep.sigma - center)
    if missing:
        return verdict(False, False, f"center misses {name(missing[0])} of the singular locus")
    for pair in sorted(rep.off_diagonal):
        j = order_of(s, g, pair)
        if not _oriented(rep, pair, s.steps[j - 1]):
            return verdict(False, False, f"quasistable choice at {name(pair)} is not separated by step {j}")
    extra = sorted(center - rep.sigma)
    if extra:
        return verdict(True, False, f"center contains {name(extra[0])}, which is outside the singular locus")
    return verdict(True, True, "")


def default_max_len(rep: SingularLocusReport) -> int:
    return 2 * len(rep.off_diagonal) + 2


class _Move:
    __slots__ = ("steps", "covers")

    def __init__(self, steps: tuple[Step, ...], covers: tuple[int, ...]):
        self.steps = steps
        # covers[i]: targets newly coverable at steps[i] (bitmask over Σ∖Δ)
        self.covers = covers


def _step_effect(rep: SingularLocusReport, targets: list[EdgePair], step: Step):
    """(bitmask of targets affected, bitmask of those correctly oriented) or None
    if the step affects an off-diagonal pair outside Σ."""
    g = rep.graph
    a, b = step
    n = g.n_edges
    cross_a = [_crosses(g, r, a) for r in range(n)]
    cross_b = [_crosses(g, t, b) for t in range(n)]
    hit = 0
    good = 0
    index = {pr: i for i, pr in enumerate(targets)}
    for r in range(n):
        if not cross_a[r]:
            continue
        for t in range(n):
            if r == t or not cross_b[t]:
                continue
            i = index.get((r, t))
            if i is None:
                return None
            hit |= 1 << i
            if _oriented(rep, (r, t), step):
                good |= 1 << i
    return hit, good


def _candidate_moves(rep: SingularLocusReport, targets: list[EdgePair], swapped: bool) -> list[tuple]:
    g = rep.graph
    subsets = sorted(range(1, g.full_mask), key=lambda m: (bin(m).count("1"), m))
    effects = {}

    def effect(step):
        if step not in effects:
            effects[step] = _step_effect(rep, targets, step)
        return effects[step]

    moves = []
    for m in subsets:
        eff = effect((m, m))
        if eff and eff[0]:
            moves.append((((m, m),), (eff,)))
    if swapped:
        for m1 in subsets:
            for m2 in subsets:
                if m1 == m2:
                    continue
                e1, e2 = effect((m1, m2)), effect((m2, m1))
                if e1 is None or e2 is None or not (e1[0] | e2[0]):
                    continue
                moves.append((((m1, m2), (m2, m1)), (e1, e2)))
    return moves


def _apply(covered: int, effects) -> int | None:
    """New covered set after the move's steps, or None if a newly hit pair is misoriented."""
    for hit, good in effects:
        new = hit & ~covered
        if new & ~good:
            return None
        covered |= new
    return covered


def search_minimal_symmetric(
    rep: SingularLocusReport, max_len: int | None = None
) -> BlowupSequence | None:
    """Find a symmetric blowup sequence resolving the data minimally.

    Iterative deepening on length. Sequences with equal subsets in every
    step are tried first, at every length up to ``max_len``; only then are
    adjacent swapped pairs allowed. Steps are ordered by subset size and
    then bitmask, so the result is deterministic. Returns None when
    nothing is found within ``max_len`` steps.
    """
    if not rep.solvable:
        raise Unsolvable("singular locus is not solvable")
    if max_len is None:
        max_len = default_max_len(rep)
    targets = sorted(rep.off_diagonal)
    goal = (1 << len(targets)) - 1
    if goal == 0:
        return BlowupSequence()

    for swapped in (False, True):
        moves = _candidate_moves(rep, targets, swapped)
        for depth in range(1, max_len + 1):
            found = _deepen(moves, goal, depth)
            if found is not None:
                seq = BlowupSequence(tuple(st for mv in found for st in moves[mv][0]))
                return seq
    return None


def _deepen(moves, goal: int, depth: int) -> list[int] | None:
    failed: dict[int, int] = {}
    path: list[int] = []

    def rec(covered: int, left: int) -> bool:
        if covered == goal:
            return True
        if left <= 0 or failed.get(covered, -1) >= left:
            return False
        for idx, (steps, effects) in enumerate(moves):
            if len(steps) > left:
                continue
            nxt = _apply(covered, effects)
            if nxt is None or nxt == covered:
                continue
            path.append(idx)
            if rec(nxt, left - len(steps)):
                return True
            path.pop()
        failed[covered] = max(failed.get(covered, -1), left)
        return False

    return list(path) if rec(0, depth) else None
