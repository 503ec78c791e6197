import math
import random

import pytest

from mwccs.colorcoding import (
    ColoringFamilySpec,
    Mode,
    decomposition_parts,
    enumerate_size_partitions,
    mwccs_cluster_chordal,
    mwccs_from_mwis,
    mwis_cluster_chordal,
)
from mwccs.generators import (
    overlay_cluster_chordal,
    random_chordal,
    random_cluster,
    random_cluster_chordal_instance,
)
from mwccs.graph import (
    Graph,
    SizeCapError,
    Solution,
    WeightedInstance,
    solution_sort_key,
)
from mwccs.oracle import brute_mwccs, brute_mwis
from mwccs.dp import max_weight_is_chordal
from mwccs.recognition import is_chordal
from mwccs.treedecomp import clique_tree_from_peo

from conftest import cycle_graph

EX = ColoringFamilySpec(Mode.EXHAUSTIVE)


def _chordal_with_singletons(inst):
    return WeightedInstance(
        inst.graph,
        inst.weights,
        cluster_edges=frozenset(),
        chordal_edges=frozenset(inst.graph.edges()),
    )


def _brute_bounded_solver(sub, bound):
    return brute_mwis(sub, ell_cap=bound)


def test_enumerate_size_partitions():
    parts = list(enumerate_size_partitions(2, 2))
    assert len(parts) == 6
    assert set(parts) == {(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)}
    assert list(enumerate_size_partitions(0, 3)) == [(0, 0, 0)]
    assert set(enumerate_size_partitions(3, 1)) == {(0,), (1,), (2,), (3,)}
    for ell, c in ((3, 2), (4, 3), (2, 4)):
        assert len(list(enumerate_size_partitions(ell, c))) == math.comb(ell + c, c)
    assert len(set(enumerate_size_partitions(4, 3))) == math.comb(7, 3)


def test_spec_validation():
    with pytest.raises(ValueError):
        ColoringFamilySpec(Mode.RANDOMIZED, epsilon=0.0)
    with pytest.raises(ValueError):
        ColoringFamilySpec(trial_cap=0)


def test_decomposition_parts():
    inst = random_cluster_chordal_instance(10, 3, 3, 5, seed=1)
    clusters, chordal_g = decomposition_parts(inst)
    assert sorted(v for comp in clusters for v in comp) == list(range(10))
    assert is_chordal(chordal_g) is not None
    bare = WeightedInstance.unit(cycle_graph(4))
    with pytest.raises(ValueError):
        decomposition_parts(bare)


def test_mwccs_from_mwis_single_color_equals_solver():
    for seed in range(10):
        rng = random.Random(seed)
        inst = random_cluster_chordal_instance(8, 3, 3, 9, seed=seed)
        ell = rng.randint(0, 4)
        got = mwccs_from_mwis(inst, 1, ell, _brute_bounded_solver, EX)
        want = brute_mwis(inst, ell_cap=ell)
        assert got.weight == want.weight


def test_mwccs_from_mwis_everything_fits():
    g = Graph(3, [(0, 1)])
    inst = WeightedInstance(g, (2, 3, 4))
    got = mwccs_from_mwis(inst, 3, 3, _brute_bounded_solver, EX)
    assert got.weight == 9  # every graph is n-colorable
    got.validate(inst, 3)


def test_mwccs_from_mwis_c5():
    inst = WeightedInstance.unit(cycle_graph(5))
    got = mwccs_from_mwis(inst, 2, 5, _brute_bounded_solver, EX)
    assert got.weight == 4  # odd cycle: one vertex must go
    got.validate(inst, 2)


def test_mwccs_from_mwis_matches_brute_on_random_graphs():
    from conftest import random_graph

    for seed in range(15):
        rng = random.Random(seed)
        g = random_graph(7, 0.4, seed + 20)
        inst = WeightedInstance(g, tuple(rng.randint(0, 9) for _ in range(7)))
        c, ell = rng.randint(1, 3), rng.randint(0, 4)
        got = mwccs_from_mwis(inst, c, ell, _brute_bounded_solver, EX)
        want = brute_mwccs(inst, c, ell_cap=ell)
        assert got.weight == want.weight, (seed, c, ell)


def test_mwis_cluster_chordal_pure_chordal():
    for seed in range(8):
        rng = random.Random(seed)
        n = rng.randint(2, 10)
        g = random_chordal(n, 3, seed + 40)
        weights = tuple(rng.randint(0, 20) for _ in range(n))
        inst = _chordal_with_singletons(WeightedInstance(g, weights))
        full = max_weight_is_chordal(
            WeightedInstance(g, weights),
            clique_tree_from_peo(g, is_chordal(g)),
        )
        ell = n  # budget large enough for the unrestricted optimum
        got = mwis_cluster_chordal(inst, ell, EX)
        assert got.weight == full.weight


def test_mwis_cluster_chordal_pure_cluster():
    for seed in range(8):
        rng = random.Random(seed)
        n = rng.randint(3, 12)
        g, labels = random_cluster(n, 3, seed)
        weights = tuple(rng.randint(1, 9) for _ in range(n))
        inst = WeightedInstance(
            g,
            weights,
            cluster_edges=frozenset(g.edges()),
            chordal_edges=frozenset(),
        )
        ell = rng.randint(0, 4)
        got = mwis_cluster_chordal(inst, ell, EX)
        # exchange argument: pick the heaviest vertex of the ell best clusters
        per_cluster: dict[int, int] = {}
        for v in range(n):
            per_cluster[labels[v]] = max(
                per_cluster.get(labels[v], 0), weights[v]
            )
        want = sum(sorted(per_cluster.values(), reverse=True)[:ell])
        assert got.weight == want


def test_mwis_cluster_chordal_strip_sample():
    for seed in range(12):
        inst = random_cluster_chordal_instance(12, 3, 3, 20, seed=seed + 100)
        got = mwis_cluster_chordal(inst, 4, EX)
        want = brute_mwis(inst, ell_cap=4)
        assert got.weight == want.weight, f"seed {seed}"


def test_mwis_cluster_chordal_requires_witness():
    with pytest.raises(ValueError):
        mwis_cluster_chordal(WeightedInstance.unit(cycle_graph(4)), 2, EX)


def test_pipeline_c1_matches_mwis():
    for seed in range(6):
        inst = random_cluster_chordal_instance(9, 3, 3, 9, seed=seed + 7)
        a = mwccs_cluster_chordal(inst, 1, 3, EX)
        b = mwis_cluster_chordal(inst, 3, EX)
        assert a.weight == b.weight


def test_pipeline_zero_budget():
    inst = random_cluster_chordal_instance(6, 2, 3, 5, seed=2)
    sol = mwccs_cluster_chordal(inst, 2, 0, EX)
    assert sol.weight == 0 and sol.vertices == frozenset()


def test_pipeline_matches_brute():
    for seed in range(10):
        rng = random.Random(seed)
        inst = random_cluster_chordal_instance(10, 3, 3, 15, seed=seed + 31)
        c, ell = rng.randint(1, 2), rng.randint(1, 5)
        stats = {}
        got = mwccs_cluster_chordal(inst, c, ell, EX, stats)
        want = brute_mwccs(inst, c, ell_cap=ell)
        assert got.weight == want.weight, (seed, c, ell)
        assert stats["trials"] >= 1
        got.validate(inst, c)
        assert len(got.vertices) <= ell


def test_pipeline_monotone_in_c_and_ell():
    inst = random_cluster_chordal_instance(10, 3, 3, 9, seed=77)
    w = {}
    for c in (1, 2, 3):
        for ell in (1, 2, 3, 4):
            w[c, ell] = mwccs_cluster_chordal(inst, c, ell, EX).weight
    for c in (1, 2):
        for ell in (1, 2, 3, 4):
            assert w[c + 1, ell] >= w[c, ell]
    for c in (1, 2, 3):
        for ell in (1, 2, 3):
            assert w[c, ell + 1] >= w[c, ell]


def test_randomized_always_feasible_and_deterministic():
    inst = random_cluster_chordal_instance(10, 3, 3, 20, seed=5)
    spec = ColoringFamilySpec(Mode.RANDOMIZED, epsilon=0.2, seed=123, trial_cap=7)
    a = mwccs_cluster_chordal(inst, 2, 4, spec)
    b = mwccs_cluster_chordal(inst, 2, 4, spec)
    a.validate(inst, 2)
    assert len(a.vertices) <= 4
    assert solution_sort_key(a) == solution_sort_key(b)
    other = mwccs_cluster_chordal(
        inst, 2, 4, ColoringFamilySpec(Mode.RANDOMIZED, epsilon=0.2, seed=124)
    )
    other.validate(inst, 2)  # different seed still feasible


def test_randomized_mostly_finds_optimum():
    spec = ColoringFamilySpec(Mode.RANDOMIZED, epsilon=0.01, seed=9)
    match = 0
    for seed in range(30):
        inst = random_cluster_chordal_instance(9, 3, 3, 12, seed=seed + 400)
        got = mwccs_cluster_chordal(inst, 2, 4, spec)
        want = brute_mwccs(inst, 2, ell_cap=4)
        match += got.weight == want.weight
    assert match >= 29


def test_randomized_mwis_cluster_chordal():
    spec = ColoringFamilySpec(Mode.RANDOMIZED, epsilon=0.01, seed=3)
    for seed in range(10):
        inst = random_cluster_chordal_instance(9, 3, 3, 9, seed=seed + 800)
        got = mwis_cluster_chordal(inst, 3, spec)
        got.validate(inst)
        assert len(got.vertices) <= 3
        assert got.weight <= brute_mwis(inst, ell_cap=3).weight


def test_exhaustive_cap_directs_to_randomized():
    inst = random_cluster_chordal_instance(26, 3, 3, 5, seed=6)
    with pytest.raises(SizeCapError, match="randomized"):
        mwccs_cluster_chordal(inst, 3, 4, EX)
    # randomized mode with a small trial cap still runs
    spec = ColoringFamilySpec(Mode.RANDOMIZED, epsilon=0.5, seed=0, trial_cap=3)
    sol = mwccs_cluster_chordal(inst, 3, 4, spec)
    sol.validate(inst, 3)


def test_hash_family_cap():
    # many clusters, several colors: the enumerated family would be huge
    g, labels = random_cluster(28, 2, seed=1)
    inst = WeightedInstance(
        g,
        tuple([1] * 28),
        cluster_edges=frozenset(g.edges()),
        chordal_edges=frozenset(),
    )
    with pytest.raises(SizeCapError):
        mwis_cluster_chordal(inst, 6, EX)


def test_parallel_jobs_match_sequential():
    inst = random_cluster_chordal_instance(10, 3, 3, 9, seed=15)
    spec = ColoringFamilySpec(Mode.RANDOMIZED, epsilon=0.1, seed=2)
    seq = mwccs_cluster_chordal(inst, 2, 3, spec, jobs=1)
    par = mwccs_cluster_chordal(inst, 2, 3, spec, jobs=2)
    assert solution_sort_key(seq) == solution_sort_key(par)
