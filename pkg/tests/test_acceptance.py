"""Acceptance criteria, one test each, with a PASS/FAIL line in the terminal summary."""

import itertools
import random
import time
from contextlib import contextmanager

import pytest

from abelmaps.blowup import center_of, default_max_len, search_minimal_symmetric, verify
from abelmaps.fixtures import WORKED_CASES, case
from abelmaps.graph import subdivide, vertex_flow
from abelmaps.quasistability import (
    AbelData,
    correction_table,
    is_quasistable,
    is_quasistable_subdivided,
    quasistable_representative,
)
from abelmaps.resolution import build_s_functions, pair_choices, reduce, singular_locus
from abelmaps.scan import dumps_record, scan

import oracles


@contextmanager
def criterion(log, number, title):
    info = {}
    start = time.perf_counter()
    try:
        yield info
    except BaseException as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        log.append((number, f"criterion {number} FAIL  {title}  ({time.perf_counter() - start:.1f} s)  {msg[:160]}"))
        raise
    extra = "  " + info["detail"] if "detail" in info else ""
    log.append((number, f"criterion {number} PASS  {title}  ({time.perf_counter() - start:.1f} s){extra}"))


def _resolve_case(name):
    c = case(name)
    start = time.perf_counter()
    rep = singular_locus(c.data)
    verdict = verify(rep, c.sequence)
    return rep, verdict, time.perf_counter() - start


def test_criterion_1_four_vertex_graph(acceptance_log):
    with criterion(acceptance_log, 1, "first 4-vertex example") as info:
        times = []
        for name in ("example-7-1-a", "example-7-1-b", "example-7-1-c"):
            rep, v, dt = _resolve_case(name)
            assert rep.solvable, name
            assert v.resolves and v.minimal and v.symmetric, (name, v.witness)
            assert dt < 10, (name, dt)
            times.append(dt)
        info["detail"] = "max case time %.2f s" % max(times)


def test_criterion_2_circular_graphs(acceptance_log):
    with criterion(acceptance_log, 2, "circular graphs p=2..5") as info:
        lengths = []
        for p in (2, 3, 4, 5):
            c = case(f"example-7-2-p{p}")
            rep, v, dt = _resolve_case(c.name)
            assert v.resolves and v.minimal and v.symmetric, (c.name, v.witness)
            assert len(c.sequence) == {2: 1, 3: 3, 4: 6, 5: 10}[p]
            if p == 5:
                assert dt < 60, dt
            lengths.append(len(c.sequence))
        info["detail"] = f"sequence lengths {lengths}"


def test_criterion_3_doubled_graph(acceptance_log):
    with criterion(acceptance_log, 3, "second 4-vertex example") as info:
        start = time.perf_counter()
        for name in ("example-7-3-a", "example-7-3-b", "example-7-3-c"):
            rep, v, _ = _resolve_case(name)
            assert v.resolves and v.minimal and v.symmetric, (name, v.witness)
        assert len(case("example-7-3-a").sequence) == 0
        total = time.perf_counter() - start
        assert total < 30, total
        info["detail"] = "total %.2f s" % total


def _corpus(n=200, seed=2024):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        p = rng.randint(2, 5)
        g = oracles.random_connected_graph(rng, p, 7)
        if g.n_edges > 7:
            continue
        v = rng.randrange(p)
        e = oracles.random_xi0_polarization(rng, g, v, den=2, bound=2)
        while True:
            head = [rng.randint(-4, 4) for _ in range(p - 1)]
            if abs(sum(head)) <= 4:
                break
        out.append((g, e, v, tuple(head) + (-sum(head),)))
    return out


CORPUS = _corpus()


@pytest.mark.slow
def test_criterion_4_representatives_vs_brute_force(acceptance_log):
    with criterion(acceptance_log, 4, "fixpoint representative vs bounded brute force") as info:
        sizes = []
        for g, e, v, d in CORPUS:
            rep = quasistable_representative(g, e, v, d)
            bound = 2 * max(abs(x) for x in d) + 2 * int(sum(abs(x) for x in e)) + g.p
            assert oracles.coefficient_box_representatives(g, e, v, d, bound) == [rep], (g, e, v, d)
            # every quasistable multidegree lies in the singleton box, so this one is exhaustive
            assert oracles.degree_box_representatives(g, e, v, d) == [rep], (g, e, v, d)
            sizes.append(g.p)
        info["detail"] = f"{len(CORPUS)} instances, p in {min(sizes)}..{max(sizes)}"


def _gamma2_instances(seed=99):
    rng = random.Random(seed)
    out = []
    made = 0
    while made < 40:
        p = rng.randint(2, 5)
        g = oracles.random_connected_graph(rng, p, (18 - p) // 2)
        if g.p + 2 * g.n_edges > 18:
            continue
        made += 1
        data = AbelData.standard(g, oracles.random_xi0_polarization(rng, g, 0))
        sub = subdivide(g, 2)
        e2 = tuple(data.e) + (0,) * (sub.p - g.p)
        table = correction_table(data)
        # reductions that the pipeline actually tests, plus random ones
        pairs = list(itertools.product(range(g.n_edges), repeat=2))
        for e1, ee in rng.sample(pairs, min(3, len(pairs))):
            for c in pair_choices(g, e1, ee):
                for s in build_s_functions(data, table, c, sub):
                    out.append((sub, e2, 0, reduce(sub, s)))
        head = [rng.randint(-2, 2) for _ in range(sub.p - 1)]
        out.append((sub, e2, rng.randrange(g.p), tuple(head) + (data.f - sum(head),)))
    return out


def test_criterion_5_connected_subsets_suffice(acceptance_log):
    with criterion(acceptance_log, 5, "connected-subset check vs all subsets") as info:
        verdicts = []
        for g, e, v, d in CORPUS:
            rep = quasistable_representative(g, e, v, d)
            for x in (d, rep):
                got = is_quasistable(g, e, v, x)
                assert got == oracles.brute_is_quasistable(g, e, v, x), (g, e, v, x)
                verdicts.append(got)
        big = _gamma2_instances()
        for sub, e2, v, d in big:
            expected = oracles.brute_is_quasistable_np(sub.graph, e2, v, d)
            assert is_quasistable(sub.graph, e2, v, d) == expected
            assert is_quasistable_subdivided(sub, e2, v, d) == expected
            verdicts.append(expected)
        info["detail"] = (
            f"{2 * len(CORPUS)} base checks, {len(big)} on subdivided graphs "
            f"({len({id(s) for s, *_ in big})} graphs, up to {max(s.p for s, *_ in big)} vertices), "
            f"{sum(verdicts)} quasistable"
        )


def _delta_datasets(seed=6):
    rng = random.Random(seed)
    out = [c.data for c in WORKED_CASES]
    for _ in range(50):
        g = oracles.random_connected_graph(rng, rng.randint(2, 5), 7)
        out.append(AbelData.standard(g, oracles.random_xi0_polarization(rng, g, 0)))
    return out


DELTA_DATA = _delta_datasets()


def _shifted(data, a):
    g = data.graph
    t = [sum(a[m] * vertex_flow(g, m)[i] for m in range(g.p)) for i in range(g.p)]
    return AbelData(g, tuple(x + y for x, y in zip(data.e, t)), data.q, data.v)


def _quads(p):
    return itertools.product(range(p), repeat=4)


def test_criterion_6_delta_identities(acceptance_log):
    with criterion(acceptance_log, 6, "correction function identities") as info:
        for data in DELTA_DATA:
            t = correction_table(data)
            for i, k, m, n in _quads(data.graph.p):
                assert t.delta(i, k, m, n) == t.delta(k, i, m, n) == -t.delta(i, k, n, m)
                assert t.delta(i, k, m, m) == 0
        info["detail"] = f"{len(DELTA_DATA)} datasets, exhaustive"


@pytest.mark.xfail(
    strict=True,
    reason="with q fixed, replacing e by e + sum a_i c_i shifts delta(i,k,m,n) by a(n) - a(m); see the next test",
)
def test_criterion_6_twister_shift_leaves_delta_unchanged(acceptance_log):
    with criterion(acceptance_log, 6.1, "literal twister-shift invariance of the correction table"):
        rng = random.Random(8)
        for data in DELTA_DATA:
            t = correction_table(data)
            for _ in range(20):
                a = [rng.randint(-3, 3) for _ in range(data.graph.p)]
                t2 = correction_table(_shifted(data, a))
                assert t2.w == t.w, f"delta changed under shift a={a}"


def test_criterion_6_twister_shift_changes_delta_by_a_coboundary(acceptance_log):
    with criterion(acceptance_log, 6.2, "twister shift: delta moves by a(n)-a(m); Q-sets and singular locus unchanged") as info:
        rng = random.Random(8)
        locus_checks = 0
        for idx, data in enumerate(DELTA_DATA):
            t = correction_table(data)
            p = data.graph.p
            rep = singular_locus(data, t) if idx % 5 == 0 else None
            for trial in range(20):
                a = [rng.randint(-3, 3) for _ in range(p)]
                shifted = _shifted(data, a)
                t2 = correction_table(shifted)
                for i, k, m, n in _quads(p):
                    assert t2.delta(i, k, m, n) == t.delta(i, k, m, n) - a[m] + a[n]
                if rep is not None and trial < 2:
                    rep2 = singular_locus(shifted, t2)
                    assert rep2.qtable == rep.qtable and rep2.sigma == rep.sigma
                    locus_checks += 1
        info["detail"] = f"{len(DELTA_DATA)} datasets x 20 shifts, {locus_checks} singular-locus comparisons"


def test_criterion_7_reduction(acceptance_log):
    with criterion(acceptance_log, 7, "reduction properties") as info:
        rng = random.Random(7)
        chains = 0
        for _ in range(500):
            g = oracles.random_connected_graph(rng, rng.randint(2, 4), 5)
            sub = subdivide(g, 2)
            d = tuple(rng.randint(-5, 5) for _ in range(sub.p))
            out = reduce(sub, d)
            assert reduce(sub, out) == out
            assert sum(out) == sum(d)
            rebuilt = list(d)
            flows = oracles.flows(sub.graph)
            for x, y in sub.chains:
                assert (out[x], out[y]) in ((0, 0), (-1, 0), (0, -1))
                hits = oracles.chain_twists((d[x], d[y]))
                assert len(hits) == 1 and hits[0][0] == (out[x], out[y])
                _, a, b = hits[0]
                for i in range(sub.p):
                    rebuilt[i] -= a * flows[x][i] + b * flows[y][i]
                chains += 1
            # the difference is exactly a sum of exceptional flows
            assert tuple(rebuilt) == out
        info["detail"] = f"500 vectors, {chains} chains"


def test_criterion_8_search_soundness(acceptance_log):
    with criterion(acceptance_log, 8, "search output verifies on every example") as info:
        lengths = {}
        for c in WORKED_CASES:
            rep = singular_locus(c.data)
            s = search_minimal_symmetric(rep)
            assert s is not None, c.name
            assert len(s) <= default_max_len(rep)
            v = verify(rep, s)
            assert v.resolves and v.minimal and v.symmetric, (c.name, v.witness)
            assert center_of(s, rep.graph) == rep.sigma
            lengths[c.name] = len(s)
        info["detail"] = " ".join(f"{k.removeprefix('example-')}:{n}" for k, n in lengths.items())


@pytest.mark.slow
def test_criterion_9_scan_smoke(acceptance_log):
    with criterion(acceptance_log, 9, "scan smoke, 200 instances at p <= 4") as info:
        kwargs = dict(count=200, seed=7, vertices=4, max_edges=6, denominator=2, bound=1, min_vertices=2)
        first = list(scan(**kwargs))
        assert len(first) == 200
        assert all(r["solvable"] for r in first)
        assert all(r["search_ok"] for r in first)
        second = list(scan(**kwargs))

        def stream(records):
            return "\n".join(dumps_record({k: v for k, v in r.items() if k != "micros"}) for r in records)

        assert stream(first) == stream(second)
        info["detail"] = "0 unsolvable, 0 search failures, re-run identical"
