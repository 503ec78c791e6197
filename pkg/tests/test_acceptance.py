"""Acceptance suite.

One test per criterion; each prints a single PASS/FAIL line with its key
numbers so the run reads as a checklist.
"""

import itertools
import random
import time

from mwccs.cli import main as cli_main
from mwccs.colorcoding import ColoringFamilySpec, Mode, mwccs_cluster_chordal
from mwccs.dp import max_weight_colorful_is
from mwccs.fileformat import write_instance
from mwccs.gadgets import (
    clique_cover_certificate,
    construct_mis_instance,
    gadget_cliques,
    verify_construction,
)
from mwccs.generators import (
    random_chordal,
    random_cluster_chordal_instance,
    random_multicolored_clique,
)
from mwccs.graph import Graph, MulticoloredCliqueInstance, WeightedInstance, is_independent
from mwccs.oracle import (
    brute_colorful_is,
    brute_find_hole,
    brute_hamiltonian_cycle,
    brute_multicolored_clique,
    brute_mwccs,
    brute_mwis,
)
from mwccs.recognition import (
    hamiltonicity_via_decomposition,
    is_chordal,
    is_k_mino,
    two_simplicial_ordering,
)
from mwccs.treedecomp import (
    bag_alpha,
    clique_tree_from_peo,
    verify_tree_decomposition,
)

from conftest import complete_bipartite, petersen_graph, random_graph


def _report(criterion: int, ok: bool, detail: str) -> None:
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {criterion}: {detail}"


# ---------------------------------------------------------------- criterion 1

def test_criterion_1_colorful_dp_matches_oracle():
    start = time.monotonic()
    mismatches = 0
    rng = random.Random(101)
    for trial in range(500):
        n = rng.randint(1, 14)
        c = rng.randint(1, 4)
        g = random_chordal(n, rng.randint(2, 4), rng.getrandbits(32))
        inst = WeightedInstance(
            g,
            tuple(rng.randint(0, 100) for _ in range(n)),
            colors=tuple(rng.randint(1, c) for _ in range(n)),
        )
        td = clique_tree_from_peo(g, is_chordal(g))
        got = max_weight_colorful_is(inst, td, 1, c=c)
        want = brute_colorful_is(inst)
        if got.weight != want.weight:
            mismatches += 1
    elapsed = time.monotonic() - start
    _report(
        1,
        mismatches == 0 and elapsed < 60.0,
        f"500 instances, {mismatches} mismatches, {elapsed:.1f}s < 60s",
    )


# ---------------------------------------------------------------- criterion 2

def test_criterion_2_alpha_two_tables():
    rng = random.Random(202)
    checked = 0
    mismatches = 0
    seed = 0
    while checked < 100:
        seed += 1
        n = rng.randint(4, 10)
        g = random_chordal(n, 4, seed)
        td = clique_tree_from_peo(g, is_chordal(g))
        removed = set()
        for bag in td.bags:
            verts = sorted(bag)
            if len(verts) >= 2:
                pairs = [
                    (a, b) for i, a in enumerate(verts) for b in verts[i + 1 :]
                ]
                removed.add(pairs[rng.randrange(len(pairs))])
        sparser = Graph(n, [e for e in g.edges() if e not in removed])
        if not verify_tree_decomposition(sparser, td):
            continue
        if bag_alpha(sparser, td) != 2:
            continue
        c = rng.randint(1, 3)
        inst = WeightedInstance(
            sparser,
            tuple(rng.randint(0, 50) for _ in range(n)),
            colors=tuple(rng.randint(1, c) for _ in range(n)),
        )
        got = max_weight_colorful_is(inst, td, 2, c=c)
        want = brute_colorful_is(inst)
        if got.weight != want.weight:
            mismatches += 1
        checked += 1
    _report(2, mismatches == 0, f"100 bag-alpha-2 instances, {mismatches} mismatches")


# ------------------------------------------------------- criteria 3 and 4

def _pipeline_suite():
    rng = random.Random(20260810)
    suite = []
    for _ in range(200):
        n = rng.randint(4, 12)
        c = rng.randint(1, 3)
        ell = rng.randint(0, 5)
        inst = random_cluster_chordal_instance(
            n, 3, 3, 30, seed=rng.getrandbits(32)
        )
        suite.append((inst, c, ell))
    return suite


_ORACLE_CACHE: dict[int, int] = {}


def _oracle_weight(idx, inst, c, ell):
    if idx not in _ORACLE_CACHE:
        _ORACLE_CACHE[idx] = brute_mwccs(inst, c, ell_cap=ell).weight
    return _ORACLE_CACHE[idx]


def test_criterion_3_pipeline_exhaustive_exact():
    start = time.monotonic()
    suite = _pipeline_suite()
    spec = ColoringFamilySpec(Mode.EXHAUSTIVE)
    mismatches = 0
    for idx, (inst, c, ell) in enumerate(suite):
        got = mwccs_cluster_chordal(inst, c, ell, spec)
        if got.weight != _oracle_weight(idx, inst, c, ell):
            mismatches += 1
    elapsed = time.monotonic() - start
    _report(
        3,
        mismatches == 0 and elapsed < 300.0,
        f"200 instances, {mismatches} mismatches, {elapsed:.0f}s < 300s",
    )


def test_criterion_4_pipeline_randomized():
    suite = _pipeline_suite()
    spec = ColoringFamilySpec(Mode.RANDOMIZED, epsilon=0.01, seed=404)
    matches = 0
    infeasible = 0
    for idx, (inst, c, ell) in enumerate(suite):
        got = mwccs_cluster_chordal(inst, c, ell, spec)
        try:
            got.validate(inst, c)
            if len(got.vertices) > ell:
                raise ValueError
        except Exception:
            infeasible += 1
            continue
        if got.weight == _oracle_weight(idx, inst, c, ell):
            matches += 1
    rate = matches / len(suite)
    _report(
        4,
        infeasible == 0 and rate >= 0.98,
        f"match rate {rate:.1%} >= 98%, {infeasible} infeasible",
    )


# ---------------------------------------------------------------- criterion 5

def _k2_instances():
    out = []
    for n1, n2 in ((1, 1), (1, 2), (2, 1), (2, 2)):
        pairs = list(itertools.product(range(n1), range(n2)))
        for bits in range(1 << len(pairs)):
            edges = [
                (p, n1 + q)
                for i, (p, q) in enumerate(pairs)
                if bits >> i & 1
            ]
            classes = (tuple(range(n1)), tuple(range(n1, n1 + n2)))
            out.append(
                MulticoloredCliqueInstance(Graph(n1 + n2, edges), classes)
            )
    return out


def _k3_instances(count=50):
    out = []
    seed = 0
    while len(out) < count:
        seed += 1
        rng = random.Random(seed)
        sizes = tuple(rng.randint(1, 2) for _ in range(3))
        mcc = random_multicolored_clique(
            3, sizes, rng.uniform(0.2, 1.0), rng.random() < 0.4, seed
        )
        gp, _, _ = construct_mis_instance(mcc)
        if gp.n <= 24:
            out.append(mcc)
    return out


def _criterion5_gadgets():
    gadgets = []
    for mcc in _k2_instances() + _k3_instances():
        gadgets.append((mcc,) + construct_mis_instance(mcc))
    return gadgets


def test_criterion_5_construction_equivalence():
    failures = 0
    total = 0
    for mcc, gp, ell, index in _criterion5_gadgets():
        total += 1
        expect_ell = (5 if mcc.k == 2 else 12)
        if ell != expect_ell:
            failures += 1
            continue
        has_clique = brute_multicolored_clique(mcc)
        best = brute_mwis(WeightedInstance.unit(gp)).weight
        if has_clique != (best >= ell):
            failures += 1
    _report(
        5,
        failures == 0,
        f"{total} instances (k=2 sweep + 50 random k=3), {failures} mismatches",
    )


# ---------------------------------------------------------------- criterion 6

def test_criterion_6_class_certificates():
    bad = 0
    vertices_checked = 0
    for mcc, gp, ell, index in _criterion5_gadgets():
        if gp.n and not is_k_mino(gp, 3):
            bad += 1
        if gp.n and two_simplicial_ordering(gp) is None:
            bad += 1
        for name in index.name_of:
            if name[0] != "sel":
                continue
            one, two, three = clique_cover_certificate(gp, index, name)
            u = index.id_of[name]
            if not (set(gp.adj[u]) | {u}) <= (one | two | three):
                bad += 1
            vertices_checked += 1
    _report(
        6,
        bad == 0,
        f"all gadgets 3-mino + 2-simplicial, {vertices_checked} cover certificates",
    )


# ---------------------------------------------------------------- criterion 7

def test_criterion_7_counting_identity():
    mcc = random_multicolored_clique(3, (4, 4, 4), 1.0, False, seed=0)
    gp, ell, index = construct_mis_instance(mcc)
    ok = gp.n == 84 and ell == 12
    cliques = gadget_cliques(index)
    ok = ok and len(cliques) == 12
    covered: set[int] = set()
    for cl in cliques:
        ok = ok and not (covered & cl)
        covered |= cl
        ok = ok and all(
            gp.has_edge(a, b) for a, b in itertools.combinations(sorted(cl), 2)
        )
    ok = ok and covered == set(range(84))
    picks = [index.selection(i, j, 1) for i in (1, 2, 3) for j in (1, 2, 3)]
    picks += [index.verification(i, j, 1, 1) for i, j in ((1, 2), (1, 3), (2, 3))]
    ok = ok and len(picks) == 12 and is_independent(gp, picks)

    small = random_multicolored_clique(3, (1, 1, 1), 1.0, False, seed=0)
    gp1, ell1, _ = construct_mis_instance(small)
    ok = ok and gp1.n == 12 and ell1 == 12
    ok = ok and brute_mwis(WeightedInstance.unit(gp1)).weight == 12
    _report(7, ok, "|V'|=84, 12 disjoint cliques, size-12 set; shrink |V'|=12 by brute force")


# ---------------------------------------------------------------- criterion 8

def _franklin_graph() -> Graph:
    # 12-cycle plus chords per the alternating +5/-5 pattern
    edges = [(i, (i + 1) % 12) for i in range(12)]
    for i in range(0, 12, 2):
        edges.append(tuple(sorted((i, (i + 5) % 12))))
    return Graph(12, sorted(set(map(tuple, map(sorted, edges)))))


def test_criterion_8_recognition_soundness():
    bad_chordal = 0
    for seed in range(300):
        g = random_graph(seed % 8 + 3, 0.35, seed * 13 + 1)
        if (is_chordal(g) is not None) != (brute_find_hole(g) is None):
            bad_chordal += 1

    cubic = {
        "K33": complete_bipartite(3, 3),
        "cube": Graph(8, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6),
                          (6, 7), (7, 4), (0, 4), (1, 5), (2, 6), (3, 7)]),
        "petersen": petersen_graph(),
        "franklin": _franklin_graph(),
    }
    bad_ham = 0
    verdicts = {}
    for name, g in cubic.items():
        got = hamiltonicity_via_decomposition(g)
        want = brute_hamiltonian_cycle(g)
        verdicts[name] = got
        if got != want:
            bad_ham += 1
    ok = (
        bad_chordal == 0
        and bad_ham == 0
        and verdicts["K33"] is True
        and verdicts["petersen"] is False
    )
    _report(
        8,
        ok,
        f"300 chordal checks, hamiltonicity on {sorted(cubic)} incl. "
        f"K33={verdicts['K33']}, petersen={verdicts['petersen']}",
    )


# ---------------------------------------------------------------- criterion 9

def _dp_wall_time(n: int, c: int, seed: int) -> float:
    rng = random.Random(seed)
    g = random_chordal(n, 5, seed)
    inst = WeightedInstance(
        g,
        tuple(rng.randint(0, 100) for _ in range(n)),
        colors=tuple(rng.randint(1, c) for _ in range(n)),
    )
    td = clique_tree_from_peo(g, is_chordal(g))
    best = float("inf")
    for _ in range(2):
        t0 = time.monotonic()
        max_weight_colorful_is(inst, td, 1, c=c)
        best = min(best, time.monotonic() - t0)
    return best


def test_criterion_9_scaling_shape():
    t_half = _dp_wall_time(1000, 8, 42)
    t_full = _dp_wall_time(2000, 8, 42)
    ratio = t_full / max(t_half, 0.05)
    ok = t_full < 10.0 and ratio <= 5.0
    _report(
        9,
        ok,
        f"n=2000 in {t_full:.2f}s < 10s, doubling ratio {ratio:.1f}x <= 5x",
    )


# --------------------------------------------------------------- criterion 10

def test_criterion_10_determinism(tmp_path, capsys):
    inst = random_cluster_chordal_instance(11, 3, 3, 25, seed=55)
    path = tmp_path / "inst.iki"
    write_instance(inst, path)
    ok = True
    runs = (
        ["solve", "mwccs", str(path), "--c", "2", "--ell", "4",
         "--mode", "exhaustive"],
        ["solve", "mwccs", str(path), "--c", "2", "--ell", "4",
         "--mode", "randomized", "--epsilon", "0.05", "--seed", "9"],
        ["solve", "mwis", str(path), "--ell", "3",
         "--mode", "randomized", "--epsilon", "0.05", "--seed", "9"],
    )
    for base_args in runs:
        outs = []
        for name in ("one", "two"):
            out = tmp_path / f"{base_args[1]}-{base_args[-1]}-{name}.txt"
            code = cli_main(base_args + ["-o", str(out)])
            capsys.readouterr()
            ok = ok and code == 0
            outs.append(out.read_bytes())
        ok = ok and outs[0] == outs[1]
    _report(10, ok, "repeated mwccs and mwis solves are byte-identical")
