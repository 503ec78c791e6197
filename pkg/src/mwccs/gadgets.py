"""Hardness gadget generators with verifiable certificates.

The main generator turns a multicolored-clique instance into an unweighted
independent-set instance built from selection cliques (one per ordered
class pair, encoding which vertex each class picks) and verification
cliques (one per unordered class pair, encoding which cross edge is
claimed).  The target independent-set size is k^2 + k*(k-1)/2, one vertex
per clique, and is achievable exactly when the source instance has a
k-clique.

Vertex names use the 1-based (i, j, p[, q]) scheme of the construction;
storage ids are dense and 0-based, ordered selection-first then
verification, lexicographically, so generated instances are byte-stable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import (
    Graph,
    MulticoloredCliqueInstance,
    Solution,
    WeightedInstance,
    is_independent,
)
from .oracle import brute_multicolored_clique, brute_mwis
from .recognition import is_k_mino, two_simplicial_ordering

SelName = tuple[str, int, int, int]  # ("sel", i, j, p)
VerName = tuple[str, int, int, int, int]  # ("ver", i, j, p, q) with i < j


@dataclass(frozen=True)
class GadgetIndex:
    """Bidirectional map between dense vertex ids and structured names."""

    name_of: tuple[SelName | VerName, ...]
    id_of: dict[SelName | VerName, int]
    k: int
    class_sizes: tuple[int, ...]

    def selection(self, i: int, j: int, p: int) -> int:
        return self.id_of[("sel", i, j, p)]

    def verification(self, i: int, j: int, p: int, q: int) -> int:
        return self.id_of[("ver", i, j, p, q)]

    def names_text(self) -> str:
        """Sidecar name map: `<vid+1> sel i j p` / `<vid+1> ver i j p q`."""
        lines = []
        for vid, name in enumerate(self.name_of):
            lines.append(f"{vid + 1} {' '.join(str(x) for x in name)}")
        return "\n".join(lines) + "\n"


def construct_mis_instance(
    mcc: MulticoloredCliqueInstance,
) -> tuple[Graph, int, GadgetIndex]:
    """Build the independent-set gadget graph for a multicolored-clique
    instance, returning (graph, target size, name index).

    Selection clique (i -> j) holds one vertex per member of class i; its
    vertex p is wired below vertices q < p of clique (i -> j's cyclic
    successor), which forces all cliques of gadget i to pick the same p.
    Verification clique (i < j) holds one vertex per cross edge; selection
    vertex (i -> j, p) conflicts with every verification vertex whose
    class-i endpoint is not p (and symmetrically for j), so a verification
    pick certifies the chosen edge's endpoints.
    """
    k = mcc.k
    if k < 2:
        raise ValueError("need at least two color classes")
    sizes = tuple(len(cls) for cls in mcc.classes)
    names: list[SelName | VerName] = []
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            for p in range(1, sizes[i - 1] + 1):
                names.append(("sel", i, j, p))
    # verification vertices exist only for actual cross edges
    cross: dict[tuple[int, int], list[tuple[int, int]]] = {}
    pos = {v: (ci + 1, pi + 1) for ci, cls in enumerate(mcc.classes) for pi, v in enumerate(cls)}
    for u, v in mcc.graph.edges():
        (iu, pu), (iv, pv) = pos[u], pos[v]
        if iu == iv:
            raise AssertionError("class is not independent")
        if iu > iv:
            (iu, pu), (iv, pv) = (iv, pv), (iu, pu)
        cross.setdefault((iu, iv), []).append((pu, pv))
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            for p, q in sorted(cross.get((i, j), [])):
                names.append(("ver", i, j, p, q))

    id_of = {name: vid for vid, name in enumerate(names)}
    index = GadgetIndex(tuple(names), id_of, k, sizes)

    edges: list[tuple[int, int]] = []

    def add(a: int, b: int):
        edges.append((a, b) if a < b else (b, a))

    # each selection clique and each verification clique is complete
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            ni = sizes[i - 1]
            for p in range(1, ni + 1):
                for p2 in range(p + 1, ni + 1):
                    add(index.selection(i, j, p), index.selection(i, j, p2))
    for (i, j), pairs in cross.items():
        spairs = sorted(pairs)
        for a in range(len(spairs)):
            for b in range(a + 1, len(spairs)):
                add(
                    index.verification(i, j, *spairs[a]),
                    index.verification(i, j, *spairs[b]),
                )

    # chaining between consecutive cliques of one selection gadget
    for i in range(1, k + 1):
        ni = sizes[i - 1]
        for j in range(1, k + 1):
            succ = (j % k) + 1
            for p in range(2, ni + 1):
                for q in range(1, p):
                    add(index.selection(i, j, p), index.selection(i, succ, q))

    # selection-to-verification conflicts
    for (i, j), pairs in cross.items():
        for p2, q2 in pairs:
            vid = index.verification(i, j, p2, q2)
            for p in range(1, sizes[i - 1] + 1):
                if p != p2:
                    add(index.selection(i, j, p), vid)
            for q in range(1, sizes[j - 1] + 1):
                if q != q2:
                    add(index.selection(j, i, q), vid)

    graph = Graph(len(names), sorted(set(edges)))
    ell = k * k + k * (k - 1) // 2
    return graph, ell, index


def gadget_cliques(index: GadgetIndex) -> list[frozenset[int]]:
    """The selection and verification cliques as vertex sets (empty
    verification cliques omitted); together they partition the vertices."""
    groups: dict[tuple, set[int]] = {}
    for vid, name in enumerate(index.name_of):
        groups.setdefault(name[:3], set()).add(vid)
    return [frozenset(g) for _, g in sorted(groups.items())]


@dataclass
class ConstructionReport:
    equivalence_holds: bool
    source_has_clique: bool
    gadget_is_size: int
    ell: int
    is_three_mino: bool
    two_simplicial: bool
    cliques_partition: bool


def verify_construction(
    mcc: MulticoloredCliqueInstance,
    gprime: Graph,
    ell: int,
    index: GadgetIndex | None = None,
) -> ConstructionReport:
    """End-to-end certificate for a generated gadget instance.

    Checks, by brute force at desk scale, that the source instance has a
    multicolored clique iff the gadget has an independent set of size ell,
    and that the gadget is a 2-simplicial 3-mino whose gadget cliques
    partition its vertices.  Any failure raises.
    """
    if index is None:
        rebuilt, rebuilt_ell, index = construct_mis_instance(mcc)
        if rebuilt != gprime or rebuilt_ell != ell:
            raise AssertionError("gadget does not match its source instance")
    has_clique = brute_multicolored_clique(mcc)
    best = brute_mwis(WeightedInstance.unit(gprime))
    gadget_is = best.weight  # unit weights: weight == size
    equiv = has_clique == (gadget_is >= ell)

    cliques = gadget_cliques(index)
    covered: set[int] = set()
    partition_ok = True
    for cl in cliques:
        if covered & cl:
            partition_ok = False
        covered |= cl
        for a in sorted(cl):
            for b in sorted(cl):
                if a < b and not gprime.has_edge(a, b):
                    partition_ok = False
    if covered != set(range(gprime.n)):
        partition_ok = False

    report = ConstructionReport(
        equivalence_holds=equiv,
        source_has_clique=has_clique,
        gadget_is_size=gadget_is,
        ell=ell,
        is_three_mino=is_k_mino(gprime, 3) if gprime.n else True,
        two_simplicial=two_simplicial_ordering(gprime) is not None,
        cliques_partition=partition_ok,
    )
    if not (report.equivalence_holds and report.is_three_mino
            and report.two_simplicial and report.cliques_partition):
        raise AssertionError(f"gadget certificate failed: {report}")
    return report


def clique_cover_certificate(
    gprime: Graph, index: GadgetIndex, name: SelName
) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
    """Three cliques covering the closed neighborhood of a selection vertex.

    Set one follows the chain toward the cyclic successor clique, set two
    toward the predecessor, set three collects the vertex's verification
    neighbors (empty for the diagonal cliques i -> i).  Each set is checked
    to be a clique and their union to cover N[v] before returning.
    """
    if name not in index.id_of or name[0] != "sel":
        raise KeyError(f"unknown selection vertex {name}")
    _, i, j, p = name
    k = index.k
    ni = index.class_sizes[i - 1]
    u = index.selection(i, j, p)
    succ = (j % k) + 1
    pred = next(l for l in range(1, k + 1) if (l % k) + 1 == j)

    set_one = {index.selection(i, j, q) for q in range(p, ni + 1)}
    set_one |= {index.selection(i, succ, q) for q in range(1, p)}
    set_two = {index.selection(i, j, q) for q in range(1, p + 1)}
    set_two |= {index.selection(i, pred, q) for q in range(p + 1, ni + 1)}
    if i == j:
        set_three: set[int] = set()
    else:
        lo, hi = min(i, j), max(i, j)
        ver = {
            vid
            for vid, nm in enumerate(index.name_of)
            if nm[0] == "ver" and nm[1] == lo and nm[2] == hi
        }
        set_three = {u} | (set(gprime.adj[u]) & ver)

    for label, cl in (("one", set_one), ("two", set_two), ("three", set_three)):
        verts = sorted(cl)
        for a in range(len(verts)):
            for b in range(a + 1, len(verts)):
                assert gprime.has_edge(verts[a], verts[b]), (
                    f"certificate set {label} of {name} is not a clique"
                )
    union = set_one | set_two | set_three
    assert gprime.adj[u] | {u} <= union, (
        f"certificate sets of {name} miss part of the closed neighborhood"
    )
    return frozenset(set_one), frozenset(set_two), frozenset(set_three)


def gen_indkind_hardness(g: Graph, k: int) -> Graph:
    """Add k+1 mutually nonadjacent vertices adjacent to all of g.

    The result is inductive k-independent iff g has no independent set of
    size k+1.
    """
    if k < 1:
        raise ValueError("k must be positive")
    n = g.n
    edges = g.edges()
    for extra in range(k + 1):
        u = n + extra
        edges.extend((v, u) for v in range(n))
    return Graph(n + k + 1, edges)


def gen_k1kfree_hardness(g: Graph, k: int) -> Graph:
    """Add one vertex adjacent to all of g.

    The result contains an induced star with k leaves iff g has an
    independent set of size k (the new vertex as center); k only
    parameterizes that property, not the construction.
    """
    if k < 1:
        raise ValueError("k must be positive")
    edges = g.edges()
    edges.extend((v, g.n) for v in range(g.n))
    return Graph(g.n + 1, edges)
