import random

import pytest

from mwccs.dp import (
    ColorfulDP,
    _pair_table,
    colorful_best_by_color_count,
    max_weight_colorful_is,
    max_weight_is_chordal,
)
from mwccs.generators import random_chordal
from mwccs.graph import Graph, WeightedInstance
from mwccs.oracle import brute_colorful_is, brute_mwis
from mwccs.recognition import is_chordal
from mwccs.treedecomp import (
    TreeDecomposition,
    bag_alpha,
    clique_tree_from_peo,
    verify_tree_decomposition,
)

from conftest import complete_graph, path_graph


def _clique_tree(g):
    return clique_tree_from_peo(g, is_chordal(g))


def _random_colored_chordal(seed, n_max=14, c_max=4, w_max=100):
    rng = random.Random(seed)
    n = rng.randint(1, n_max)
    c = rng.randint(1, c_max)
    g = random_chordal(n, rng.randint(2, 4), seed)
    return (
        WeightedInstance(
            g,
            tuple(rng.randint(0, w_max) for _ in range(n)),
            colors=tuple(rng.randint(1, c) for _ in range(n)),
        ),
        c,
    )


def test_single_vertex():
    inst = WeightedInstance(Graph(1, []), (5,), colors=(1,))
    sol = max_weight_colorful_is(inst, _clique_tree(inst.graph), 1, c=1)
    assert sol.weight == 5 and sol.vertices == {0}


def test_edge_blocks_colorful_pair():
    inst = WeightedInstance(Graph(2, [(0, 1)]), (4, 7), colors=(1, 2))
    sol = max_weight_colorful_is(inst, _clique_tree(inst.graph), 1, c=2)
    assert sol.weight == 7 and sol.vertices == {1}


def test_p4_example():
    # all 16 subsets checked by hand give 6 via {0, 3}
    g = path_graph(4)
    inst = WeightedInstance(g, (3, 4, 5, 3), colors=(1, 2, 1, 2))
    sol = max_weight_colorful_is(inst, _clique_tree(g), 1, c=2)
    assert sol.weight == 6
    assert sol.vertices == {0, 3}


def test_repeated_color_limits_selection():
    g = Graph(3, [])
    inst = WeightedInstance(g, (9, 8, 2), colors=(1, 1, 2))
    sol = max_weight_colorful_is(inst, _clique_tree(g), 1, c=2)
    assert sol.weight == 11 and sol.vertices == {0, 2}


def test_matches_oracle_on_random_chordal():
    for seed in range(120):
        inst, c = _random_colored_chordal(seed)
        td = _clique_tree(inst.graph)
        got = max_weight_colorful_is(inst, td, 1, c=c)
        want = brute_colorful_is(inst)
        assert got.weight == want.weight, f"seed {seed}"


def test_empty_graph():
    inst = WeightedInstance(Graph(0, []), (), colors=None)
    td = TreeDecomposition([frozenset()], [None], 0)
    inst = WeightedInstance(Graph(0, []), (), colors=())
    sol = max_weight_colorful_is(inst, td, 1, c=0)
    assert sol.weight == 0 and sol.vertices == frozenset()


def _alpha_two_case(seed):
    """Chordal graph with one edge per large bag removed: the clique tree
    stays a valid decomposition of the sparser graph with bag independence
    two."""
    rng = random.Random(seed)
    n = rng.randint(4, 10)
    g = random_chordal(n, 4, seed)
    td = _clique_tree(g)
    removed = set()
    for bag in td.bags:
        verts = sorted(bag)
        if len(verts) >= 2:
            pairs = [(a, b) for i, a in enumerate(verts) for b in verts[i + 1 :]]
            removed.add(pairs[rng.randrange(len(pairs))])
    edges = [e for e in g.edges() if e not in removed]
    sparser = Graph(n, edges)
    return sparser, td, rng


def test_alpha_two_path_matches_oracle():
    hits = 0
    for seed in range(80):
        sparser, td, rng = _alpha_two_case(seed)
        if not verify_tree_decomposition(sparser, td):
            continue
        alpha = bag_alpha(sparser, td)
        if alpha > 2:
            continue
        hits += alpha == 2
        c = rng.randint(1, 3)
        inst = WeightedInstance(
            sparser,
            tuple(rng.randint(0, 50) for _ in range(sparser.n)),
            colors=tuple(rng.randint(1, c) for _ in range(sparser.n)),
        )
        got = max_weight_colorful_is(inst, td, 2, c=c)
        want = brute_colorful_is(inst)
        assert got.weight == want.weight, f"seed {seed}"
    assert hits >= 20  # the sweep genuinely exercises alpha = 2 tables


def test_alpha_violation_rejected():
    g = Graph(3, [])
    td = TreeDecomposition([frozenset({0, 1, 2})], [None], 0)
    inst = WeightedInstance(g, (1, 1, 1), colors=(1, 2, 3))
    with pytest.raises(ValueError):
        max_weight_colorful_is(inst, td, 2, c=3)
    sol = max_weight_colorful_is(inst, td, 3, c=3)
    assert sol.weight == 3


def test_argument_errors():
    g = path_graph(3)
    inst = WeightedInstance(g, (1, 1, 1), colors=(1, 1, 2))
    bad_td = TreeDecomposition([frozenset({0, 1})], [None], 0)
    with pytest.raises(ValueError):
        max_weight_colorful_is(inst, bad_td, 1, c=2)
    td = _clique_tree(g)
    with pytest.raises(ValueError):
        max_weight_colorful_is(inst, td, 1, c=1)  # color 2 out of range
    with pytest.raises(ValueError):
        max_weight_colorful_is(inst, td, 1, c=31)
    no_colors = WeightedInstance(g, (1, 1, 1))
    with pytest.raises(ValueError):
        max_weight_colorful_is(no_colors, td, 1, c=1)


def test_monotone_in_colors_and_vertices():
    for seed in range(25):
        rng = random.Random(seed)
        n = rng.randint(2, 10)
        g = random_chordal(n, 3, seed + 50)
        c = rng.randint(2, 3)
        colors = [rng.randint(1, c) for _ in range(n)]
        weights = tuple(rng.randint(0, 30) for _ in range(n))
        inst = WeightedInstance(g, weights, colors=tuple(colors))
        base = max_weight_colorful_is(inst, _clique_tree(g), 1, c=c).weight

        # refine one repeated color class into a fresh color
        dup = [col for col in set(colors) if colors.count(col) > 1]
        if dup:
            refined = list(colors)
            refined[refined.index(dup[0])] = c + 1
            inst2 = WeightedInstance(g, weights, colors=tuple(refined))
            assert (
                max_weight_colorful_is(inst2, _clique_tree(g), 1, c=c + 1).weight
                >= base
            )

        if n >= 2:
            keep = [v for v in range(n) if v != rng.randrange(n)]
            sub, _ = inst.induce(keep)
            assert (
                max_weight_colorful_is(sub, _clique_tree(sub.graph), 1, c=c).weight
                <= base
            )


def test_join_fallback_for_large_color_counts(monkeypatch):
    # force the python-loop join path that serves color counts past the
    # precomputed pair tables
    import mwccs.dp as dp_mod

    monkeypatch.setattr(dp_mod, "_PAIR_TABLE_MAX_C", 1)
    for seed in range(15):
        inst, c = _random_colored_chordal(seed + 600, n_max=9, c_max=3, w_max=20)
        td = _clique_tree(inst.graph)
        got = max_weight_colorful_is(inst, td, 1, c=c)
        want = brute_colorful_is(inst)
        assert got.weight == want.weight, f"seed {seed}"


def test_pair_table_enumerates_exactly_three_to_the_c():
    for c in range(0, 9):
        full, sub, other_base, starts, counts = _pair_table(c)
        assert len(full) == 3**c
        assert counts.sum() == 3**c
        # submask discipline
        assert ((full & sub) == sub).all()


def test_best_by_color_count_bounds_cardinality():
    for seed in range(20):
        inst, c = _random_colored_chordal(seed + 300, n_max=10, c_max=4, w_max=9)
        td = _clique_tree(inst.graph)
        vec = colorful_best_by_color_count(inst, td, 1, c, max_count=c)
        prev = -1
        for b, sol in enumerate(vec):
            assert len(sol.vertices) <= b
            assert sol.weight >= prev
            prev = sol.weight
        assert vec[c].weight == brute_colorful_is(inst).weight


def test_chordal_mwis_examples():
    k3 = complete_graph(3)
    inst = WeightedInstance(k3, (2, 9, 4))
    assert max_weight_is_chordal(inst, _clique_tree(k3)).weight == 9
    p3 = path_graph(3)
    inst = WeightedInstance(p3, (3, 4, 3))
    sol = max_weight_is_chordal(inst, _clique_tree(p3))
    assert sol.weight == 6 and sol.vertices == {0, 2}


def test_chordal_mwis_matches_oracle():
    for seed in range(80):
        rng = random.Random(seed)
        n = rng.randint(1, 15)
        g = random_chordal(n, rng.randint(2, 4), seed + 7)
        inst = WeightedInstance(g, tuple(rng.randint(0, 99) for _ in range(n)))
        got = max_weight_is_chordal(inst, _clique_tree(g))
        assert got.weight == brute_mwis(inst).weight, f"seed {seed}"


def test_chordal_mwis_requires_clique_tree():
    c4 = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    td = TreeDecomposition(
        [frozenset({0, 1, 3}), frozenset({1, 2, 3})], [None, 0], 0
    )
    inst = WeightedInstance(c4, (1, 1, 1, 1))
    with pytest.raises(ValueError):
        max_weight_is_chordal(inst, td)
