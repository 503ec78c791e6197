"""Core graph representation and the primitive predicates everything else builds on.

Vertices are dense 0-based ids.  Vertex sets cross the public API as
frozensets; internally most search routines work on int bitmasks, which
``Graph`` precomputes per vertex.
"""

from __future__ import annotations

from dataclasses import dataclass

# Weights are non-negative ints.  Totals must stay below this bound so the
# DP's int64 arithmetic (including the -inf sentinel) cannot overflow.
MAX_TOTAL_WEIGHT = 2**53


class SizeCapError(RuntimeError):
    """Raised when an input exceeds the hard cap of an exponential routine."""


class CliqueCountExceeded(RuntimeError):
    """Raised when a vertex lies in more maximal cliques than the cap allows."""

    def __init__(self, vertex: int, cap: int):
        super().__init__(f"vertex {vertex} lies in more than {cap} maximal cliques")
        self.vertex = vertex
        self.cap = cap


class ValidationError(RuntimeError):
    """A solver produced a result that failed its own re-validation."""


def _mask_to_set(mask: int) -> frozenset[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


class Graph:
    """Undirected simple graph over vertex ids {0, ..., n-1}.

    Immutable after construction; safe to share across workers.
    """

    __slots__ = ("n", "adj", "mask")

    def __init__(self, n: int, edges=()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj: list[set[int]] = [set() for _ in range(n)]
        seen = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge ({u},{v})")
            seen.add(key)
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.adj: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in adj)
        self.mask: tuple[int, ...] = tuple(
            sum(1 << u for u in s) for s in self.adj
        )

    @property
    def m(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph) and self.n == other.n and self.adj == other.adj
        )

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def neighborhood(g: Graph, v: int, closed: bool = False) -> frozenset[int]:
    """Open neighborhood N(v), or N[v] = N(v) + {v} when closed is set."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    return g.adj[v] | {v} if closed else g.adj[v]


def induced_subgraph(g: Graph, s) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced by s, relabeled to dense ids.

    Returns (subgraph, mapping) where mapping[new_id] == old_id; the mapping
    is sorted, so relabeling is deterministic.
    """
    verts = sorted(s)
    if verts and not (0 <= verts[0] and verts[-1] < g.n):
        raise ValueError("vertex set out of range")
    index = {v: i for i, v in enumerate(verts)}
    edges = [
        (index[u], index[v])
        for u in verts
        for v in g.adj[u]
        if u < v and v in index
    ]
    return Graph(len(verts), edges), tuple(verts)


def is_independent(g: Graph, s) -> bool:
    """True iff no edge of g joins two vertices of s."""
    verts = list(s)
    taken = sum(1 << v for v in verts)
    return all(g.mask[v] & taken == 0 for v in verts)


def find_independent_subset(g: Graph, s, size: int) -> frozenset[int] | None:
    """Some independent subset of s of exactly the given size, or None.

    Bounded branch-and-prune: only explores as far as needed to certify
    existence, so it stays cheap when size is small.
    """
    if size <= 0:
        return frozenset()
    avail = 0
    for v in s:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
        avail |= 1 << v

    def rec(avail_mask: int, chosen: list[int], need: int):
        if need == 0:
            return frozenset(chosen)
        if avail_mask.bit_count() < need:
            return None
        v = (avail_mask & -avail_mask).bit_length() - 1
        bit = 1 << v
        chosen.append(v)
        got = rec(avail_mask & ~g.mask[v] & ~bit, chosen, need - 1)
        if got is not None:
            return got
        chosen.pop()
        return rec(avail_mask & ~bit, chosen, need)

    return rec(avail, [], size)


def independence_bounded(g: Graph, s, k: int) -> bool:
    """True iff every independent subset of G[s] has size at most k."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return find_independent_subset(g, s, k + 1) is None


def is_c_colorable(g: Graph, c: int) -> dict[int, int] | None:
    """A proper coloring with colors {1..c} if one exists, else None.

    Backtracking over degree-ordered vertices with the usual color-symmetry
    break (a vertex may only open one fresh color).
    """
    if c < 0:
        raise ValueError("c must be non-negative")
    if g.n == 0:
        return {}
    if c == 0:
        return None
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    colors: dict[int, int] = {}

    def rec(i: int, used: int) -> bool:
        if i == g.n:
            return True
        v = order[i]
        banned = {colors[u] for u in g.adj[v] if u in colors}
        for col in range(1, min(c, used + 1) + 1):
            if col in banned:
                continue
            colors[v] = col
            if rec(i + 1, max(used, col)):
                return True
            del colors[v]
        return False

    return dict(colors) if rec(0, 0) else None


def _max_cliques_of_mask(g: Graph, cand: int):
    """Yield all maximal cliques (as masks) of the subgraph induced by cand."""
    # Bron-Kerbosch with greedy pivoting, all sets held as bitmasks.
    def rec(r: int, p: int, x: int):
        if p == 0 and x == 0:
            yield r
            return
        pivot_pool = p | x
        pivot = -1
        best = -1
        pool = pivot_pool
        while pool:
            u = (pool & -pool).bit_length() - 1
            pool &= pool - 1
            deg = (p & g.mask[u]).bit_count()
            if deg > best:
                best = deg
                pivot = u
        branch = p & ~g.mask[pivot]
        while branch:
            v = (branch & -branch).bit_length() - 1
            bit = 1 << v
            branch &= branch - 1
            yield from rec(r | bit, p & g.mask[v], x & g.mask[v])
            p &= ~bit
            x |= bit

    yield from rec(0, cand, 0)


def maximal_cliques_containing(
    g: Graph, v: int, cap: int | None = None
) -> list[frozenset[int]]:
    """All maximal cliques of g that contain v.

    Enumeration is restricted to G[N(v)] (a maximal clique through v is v
    plus a maximal clique of its neighborhood).  If cap is given and more
    than cap cliques exist, CliqueCountExceeded is raised; callers probing
    "at most k cliques?" pass cap=k+1 and catch the signal.
    """
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    nb_mask = g.mask[v]
    out: list[frozenset[int]] = []
    for clique_mask in _max_cliques_of_mask(g, nb_mask):
        full = _mask_to_set(clique_mask | (1 << v))
        # maximality: nothing in N[v] extends the clique
        all_mask = clique_mask | (1 << v)
        for u in g.adj[v]:
            assert (1 << u) & all_mask or (g.mask[u] & all_mask) != all_mask, (
                f"clique {sorted(full)} extendable by {u}"
            )
        out.append(full)
        if cap is not None and len(out) > cap:
            raise CliqueCountExceeded(v, cap)
    out.sort(key=sorted)
    return out


@dataclass(frozen=True)
class WeightedInstance:
    """A graph plus per-vertex weights, optional colors / cluster labels, and
    an optional edge partition witnessing a cluster+chordal decomposition.

    The edge partition, when present, assigns every edge to exactly one
    side; CLUSTER-tagged edges should form a cluster graph and
    CHORDAL-tagged edges a chordal graph (recognition checks this, the
    constructor only checks coverage).
    """

    graph: Graph
    weights: tuple[int, ...]
    colors: tuple[int, ...] | None = None
    clusters: tuple[int, ...] | None = None
    cluster_edges: frozenset[tuple[int, int]] | None = None
    chordal_edges: frozenset[tuple[int, int]] | None = None

    def __post_init__(self):
        n = self.graph.n
        if len(self.weights) != n:
            raise ValueError("weights length must equal vertex count")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be non-negative")
        if sum(self.weights) > MAX_TOTAL_WEIGHT:
            raise ValueError("total weight exceeds the supported accumulator range")
        if self.colors is not None:
            if len(self.colors) != n:
                raise ValueError("colors length must equal vertex count")
            if any(c < 1 for c in self.colors):
                raise ValueError("colors are 1-based")
        if self.clusters is not None and len(self.clusters) != n:
            raise ValueError("cluster labels length must equal vertex count")
        if (self.cluster_edges is None) != (self.chordal_edges is None):
            raise ValueError("edge partition needs both sides (either may be empty)")
        if self.cluster_edges is not None:
            norm_c = frozenset(
                (u, v) if u < v else (v, u) for u, v in self.cluster_edges
            )
            norm_h = frozenset(
                (u, v) if u < v else (v, u) for u, v in self.chordal_edges
            )
            object.__setattr__(self, "cluster_edges", norm_c)
            object.__setattr__(self, "chordal_edges", norm_h)
            all_edges = frozenset((u, v) for u, v in self.graph.edges())
            if norm_c | norm_h != all_edges:
                raise ValueError("edge partition does not cover the edge set")
            if norm_c & norm_h:
                raise ValueError("edge partition sides must be disjoint")

    @classmethod
    def unit(cls, graph: Graph, **kw) -> "WeightedInstance":
        return cls(graph, tuple([1] * graph.n), **kw)

    @property
    def has_decomposition(self) -> bool:
        return self.cluster_edges is not None

    @property
    def num_colors(self) -> int:
        return max(self.colors) if self.colors else 0

    def weight_of(self, s) -> int:
        return sum(self.weights[v] for v in s)

    def induce(self, s) -> tuple["WeightedInstance", tuple[int, ...]]:
        """Induced sub-instance on s, with the new-id -> old-id mapping."""
        sub, mapping = induced_subgraph(self.graph, s)
        index = {v: i for i, v in enumerate(mapping)}
        keep = set(mapping)

        def filt(pairs):
            return frozenset(
                (index[u], index[v])
                for u, v in pairs
                if u in keep and v in keep
            )

        return (
            WeightedInstance(
                sub,
                tuple(self.weights[v] for v in mapping),
                colors=tuple(self.colors[v] for v in mapping) if self.colors else None,
                clusters=(
                    tuple(self.clusters[v] for v in mapping) if self.clusters else None
                ),
                cluster_edges=(
                    filt(self.cluster_edges) if self.cluster_edges is not None else None
                ),
                chordal_edges=(
                    filt(self.chordal_edges) if self.chordal_edges is not None else None
                ),
            ),
            mapping,
        )

    def with_colors(self, colors) -> "WeightedInstance":
        return WeightedInstance(
            self.graph,
            self.weights,
            colors=tuple(colors),
            clusters=self.clusters,
            cluster_edges=self.cluster_edges,
            chordal_edges=self.chordal_edges,
        )


@dataclass
class Solution:
    """A vertex set with its total weight and an optional color assignment."""

    vertices: frozenset[int]
    weight: int
    color_assignment: dict[int, int] | None = None

    def validate(self, inst: WeightedInstance, c: int | None = None) -> None:
        """Re-check the solution against the instance; raises ValidationError.

        Without a color assignment the vertex set must be independent; with
        one, the assignment must properly color the induced subgraph.
        """
        if any(not 0 <= v < inst.graph.n for v in self.vertices):
            raise ValidationError("solution vertex out of range")
        if self.weight != inst.weight_of(self.vertices):
            raise ValidationError("reported weight does not match vertex weights")
        if self.color_assignment is None:
            if not is_independent(inst.graph, self.vertices):
                raise ValidationError("solution set is not independent")
        else:
            if set(self.color_assignment) != set(self.vertices):
                raise ValidationError("color assignment does not cover the solution")
            for v, col in self.color_assignment.items():
                if col < 1 or (c is not None and col > c):
                    raise ValidationError(f"color {col} out of range at vertex {v}")
            for u in self.vertices:
                for v in inst.graph.adj[u]:
                    if v in self.color_assignment and u < v:
                        if self.color_assignment[u] == self.color_assignment[v]:
                            raise ValidationError(
                                f"adjacent vertices {u},{v} share a color"
                            )


def empty_solution() -> Solution:
    return Solution(frozenset(), 0, None)


def solution_sort_key(sol: Solution):
    """Deterministic preference order: heavier first, then lexicographically
    smallest vertex set, then smallest color assignment."""
    assign = (
        tuple(sorted(sol.color_assignment.items())) if sol.color_assignment else ()
    )
    return (-sol.weight, tuple(sorted(sol.vertices)), assign)


def better_solution(a: Solution | None, b: Solution | None) -> Solution | None:
    if a is None:
        return b
    if b is None:
        return a
    return a if solution_sort_key(a) <= solution_sort_key(b) else b


@dataclass(frozen=True)
class MulticoloredCliqueInstance:
    """A graph whose vertices are partitioned into independent color classes."""

    graph: Graph
    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for cls in self.classes:
            if tuple(sorted(cls)) != tuple(cls):
                raise ValueError("each class must be listed in sorted order")
            for v in cls:
                if not 0 <= v < self.graph.n:
                    raise ValueError(f"class vertex {v} out of range")
                if v in seen:
                    raise ValueError(f"vertex {v} appears in two classes")
                seen.add(v)
            if not is_independent(self.graph, cls):
                raise ValueError("color classes must be independent sets")
        if len(seen) != self.graph.n:
            raise ValueError("classes must cover every vertex")

    @property
    def k(self) -> int:
        return len(self.classes)
