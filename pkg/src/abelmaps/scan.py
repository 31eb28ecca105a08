"""Seeded random Abel data and the batch pipeline behind ``abelmaps scan``."""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .blowup import search_minimal_symmetric, verify
from .graph import DualGraph
from .io import document_from_data
from .quasistability import AbelData
from .resolution import singular_locus
from .strata import signature

MAX_POLARIZATION_TRIES = 1000


def random_tree(rng: random.Random, p: int) -> list[tuple[int, int]]:
    """Uniform labeled tree on p vertices, decoded from a random Prüfer sequence."""
    if p == 2:
        return [(0, 1)]
    seq = [rng.randrange(p) for _ in range(p - 2)]
    degree = [1] * p
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(i for i in range(p) if degree[i] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, w = [i for i in range(p) if degree[i] == 1]
    edges.append((u, w))
    return edges


def random_graph(rng: random.Random, p: int, max_edges: int) -> DualGraph:
    edges = random_tree(rng, p)
    for _ in range(rng.randint(0, max_edges - (p - 1))):
        a, b = rng.sample(range(p), 2)
        edges.append((a, b))
    return DualGraph(p, tuple(edges))


def random_polarization(
    rng: random.Random, g: DualGraph, v: int, denominator: int, bound: int
) -> tuple[Fraction, ...]:
    """A degree-0 grid point in the bounded region; the zero polarization if sampling keeps missing."""
    lim = bound * denominator
    for _ in range(MAX_POLARIZATION_TRIES):
        head = [rng.randint(-lim, lim) for _ in range(g.p - 1)]
        last = -sum(head)
        if not -lim <= last <= lim:
            continue
        e = tuple(Fraction(x, denominator) for x in (*head, last))
        if signature(g, v, e).in_xi0:
            return e
    return (Fraction(0),) * g.p


def make_instance(seed: int, index: int, min_vertices: int, vertices: int, max_edges: int,
                  denominator: int, bound: int) -> AbelData:
    rng = random.Random(f"abelmaps-scan:{seed}:{index}")
    p = rng.randint(min_vertices, vertices)
    g = random_graph(rng, p, max(max_edges, p - 1))
    e = random_polarization(rng, g, 0, denominator, bound)
    return AbelData.standard(g, e, 0)


def run_instance(data: AbelData, max_len: int | None = None) -> dict:
    """Full pipeline on one instance; the result is one scan record minus bookkeeping."""
    start = time.perf_counter()
    rep = singular_locus(data)
    seq = None
    found_ok = False
    if rep.solvable:
        seq = search_minimal_symmetric(rep, max_len)
        if seq is not None:
            verdict = verify(rep, seq)
            found_ok = verdict.minimal and verdict.symmetric
    micros = int((time.perf_counter() - start) * 1e6)
    return {
        "solvable": rep.solvable,
        "sigma_off_diagonal": len(rep.off_diagonal),
        "sequence": seq.to_lists() if seq is not None else None,
        "search_ok": found_ok,
        "micros": micros,
    }


def _job(args) -> dict:
    seed, index, params = args
    data = make_instance(seed, index, **params)
    record = {"seed": seed, "index": index, "document": document_from_data(f"scan-{seed}-{index}", data)}
    record.update(run_instance(data))
    return record


def scan(count: int, seed: int, vertices: int, max_edges: int, denominator: int, bound: int,
         min_vertices: int | None = None, jobs: int = 1):
    """Yield scan records in index order."""
    params = dict(
        min_vertices=vertices if min_vertices is None else min_vertices,
        vertices=vertices,
        max_edges=max_edges,
        denominator=denominator,
        bound=bound,
    )
    work = [(seed, i, params) for i in range(count)]
    if jobs > 1 and count > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            yield from pool.map(_job, work)
    else:
        for item in work:
            yield _job(item)


def dumps_record(record: dict) -> str:
    return json.dumps(record, sort_keys=True)
