"""Color-coding reductions and the composed solver pipeline.

Two reductions are layered here.  The subgraph reduction turns max-weight
c-colorable subgraph into bounded-size max-weight independent set queries:
color the vertices, split a size budget among the color classes, solve each
class independently and take the union.  The cluster reduction turns
bounded MWIS on a cluster+chordal graph into colorful independent set on
the chordal part by coloring whole clusters.

Derandomization families are replaced by two modes.  EXHAUSTIVE enumerates
every coloring of the relevant family, deduplicated by color symmetry
(renaming colors never changes an optimum, so one representative per
partition into color classes suffices) and is exact.  RANDOMIZED draws the
family-specific number of independent uniform colorings and is optimal
with probability at least 1 - epsilon, always returning a feasible set.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator

from .dp import ColorfulDP, MAX_COLORS
from .graph import (
    Graph,
    SizeCapError,
    Solution,
    ValidationError,
    WeightedInstance,
    better_solution,
)
from .recognition import find_cluster_violation, is_chordal
from .treedecomp import clique_tree_from_peo

EXHAUSTIVE_ASSIGNMENT_CAP = 1 << 24  # cap on c^n colorings of the vertex set
HASH_FAMILY_BITS = 24.0  # cap on d*log2(ell) for enumerated cluster colorings
IDENTITY_COLOR_CAP = 12  # clusters used directly as colors up to this count


class Mode(str, Enum):
    EXHAUSTIVE = "exhaustive"
    RANDOMIZED = "randomized"


@dataclass(frozen=True)
class ColoringFamilySpec:
    """How coloring families are generated.

    seed feeds a fixed PRNG (python's Mersenne Twister via random.Random),
    so randomized runs are reproducible across platforms.  trial_cap
    overrides the derived repetition count.
    """

    mode: Mode = Mode.EXHAUSTIVE
    epsilon: float = 0.01
    seed: int = 0
    trial_cap: int | None = None

    def __post_init__(self):
        if self.mode == Mode.RANDOMIZED and not 0 < self.epsilon < 1:
            raise ValueError("epsilon must lie strictly between 0 and 1")
        if self.trial_cap is not None and self.trial_cap < 1:
            raise ValueError("trial_cap must be positive")


def enumerate_size_partitions(ell: int, c: int) -> Iterator[tuple[int, ...]]:
    """All c-tuples of non-negative sizes with sum at most ell.

    Yields exactly binomial(ell + c, c) tuples, each once.
    """
    if ell < 0:
        raise ValueError("ell must be non-negative")
    if c < 1:
        raise ValueError("c must be positive")
    acc: list[int] = []

    def rec(i: int, left: int):
        if i == c:
            yield tuple(acc)
            return
        for v in range(left + 1):
            acc.append(v)
            yield from rec(i + 1, left - v)
            acc.pop()

    yield from rec(0, ell)


def _set_partitions(n: int, max_blocks: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Partitions of range(n) into at most max_blocks non-empty blocks, in a
    deterministic order (blocks ordered by their smallest element)."""
    if n == 0:
        yield ()
        return
    if max_blocks < 1:
        return
    blocks: list[list[int]] = []

    def rec(i: int):
        if i == n:
            yield tuple(tuple(b) for b in blocks)
            return
        for b in blocks:
            b.append(i)
            yield from rec(i + 1)
            b.pop()
        if len(blocks) < max_blocks:
            blocks.append([i])
            yield from rec(i + 1)
            blocks.pop()

    yield from rec(0)


def _randomized_trials(base: float, spec: ColoringFamilySpec) -> int:
    need = base * math.log(1.0 / spec.epsilon)
    if need > 1e18 or math.isinf(need):
        if spec.trial_cap is None:
            raise SizeCapError(
                "randomized repetition count overflows; supply a trial cap"
            )
        return spec.trial_cap
    trials = max(1, math.ceil(need))
    if spec.trial_cap is not None:
        trials = min(trials, spec.trial_cap)
    return trials


def decomposition_parts(inst: WeightedInstance) -> tuple[list[frozenset[int]], Graph]:
    """Split a witnessed instance into (ordered clusters, chordal-side graph).

    Clusters are the components of the cluster-tagged edges plus singleton
    vertices, ordered by smallest member.  Raises if the cluster side is
    not a cluster graph.
    """
    if not inst.has_decomposition:
        raise ValueError(
            "instance carries no cluster/chordal edge partition witness"
        )
    n = inst.graph.n
    cluster_g = Graph(n, sorted(inst.cluster_edges))
    viol = find_cluster_violation(cluster_g)
    if viol is not None:
        raise ValueError(
            f"cluster-tagged edges are not a cluster graph: induced path {viol}"
        )
    chordal_g = Graph(n, sorted(inst.chordal_edges))
    seen = [False] * n
    clusters: list[frozenset[int]] = []
    for v in range(n):
        if not seen[v]:
            comp = frozenset(cluster_g.adj[v] | {v})
            for u in comp:
                seen[u] = True
            clusters.append(comp)
    return clusters, chordal_g


class ClusterChordalEngine:
    """Bounded MWIS on one cluster+chordal instance, for many colorings.

    Builds the chordal side's clique tree once; every cluster coloring then
    reuses the same DP structure.
    """

    def __init__(self, inst: WeightedInstance):
        self.inst = inst
        self.clusters, self.chordal_g = decomposition_parts(inst)
        peo = is_chordal(self.chordal_g)
        if peo is None:
            raise ValueError("chordal-tagged edges do not form a chordal graph")
        self.td = clique_tree_from_peo(self.chordal_g, peo)
        self.cluster_of = [0] * inst.graph.n
        for i, comp in enumerate(self.clusters):
            for v in comp:
                self.cluster_of[v] = i
        self.dp = ColorfulDP(
            WeightedInstance(self.chordal_g, inst.weights), self.td, 1
        )

    def _run(self, f: list[int], c: int):
        colors = tuple(f[self.cluster_of[v]] for v in range(self.inst.graph.n))
        return self.dp.solve(colors, c)

    def bounded_vector(
        self, ell: int, spec: ColoringFamilySpec, stats: dict | None = None
    ) -> list[Solution]:
        """Entry b holds an optimal independent set of at most b vertices of
        the full graph, for b = 0..ell (exact in EXHAUSTIVE mode)."""
        if ell < 0:
            raise ValueError("ell must be non-negative")
        n = self.inst.graph.n
        empty = Solution(frozenset(), 0, None)
        if ell == 0 or n == 0:
            return [empty] * (ell + 1)
        d = len(self.clusters)
        best: list[Solution | None] = [empty] * (ell + 1)
        trials = 0

        def fold(vec: list[Solution]):
            for b in range(ell + 1):
                cand = vec[min(b, len(vec) - 1)]
                stripped = Solution(cand.vertices, cand.weight, None)
                best[b] = better_solution(best[b], stripped)

        if spec.mode == Mode.EXHAUSTIVE:
            if d <= IDENTITY_COLOR_CAP:
                # few clusters: use the cluster ids themselves as colors, one
                # DP run; a bound of b is the root optimum over color subsets
                # of size at most b
                fold(self._run(list(range(1, d + 1)), d).best_by_color_count(ell))
                trials = 1
            else:
                if ell >= 2 and d * math.log2(ell) > HASH_FAMILY_BITS:
                    raise SizeCapError(
                        f"enumerating {ell}^{d} cluster colorings exceeds the "
                        "exhaustive cap; use randomized mode"
                    )
                bmax = min(ell, d)
                for part in _set_partitions(d, bmax):
                    f = [0] * d
                    for bi, block in enumerate(part):
                        for cl in block:
                            f[cl] = bi + 1
                    fold(self._run(f, len(part)).best_by_color_count(min(ell, len(part))))
                    trials += 1
        else:
            trials = _randomized_trials(math.e**ell, spec)
            rng = random.Random(spec.seed)
            for _ in range(trials):
                f = [rng.randint(1, ell) for _ in range(d)]
                fold(self._run(f, ell).best_by_color_count(ell))

        if stats is not None:
            stats["trials"] = stats.get("trials", 0) + trials
        out: list[Solution] = []
        for b, sol in enumerate(best):
            sol.validate(self.inst)  # independence in the full graph
            if len(sol.vertices) > b:
                raise ValidationError("bounded MWIS witness exceeds its bound")
            out.append(sol)
        return out


def mwis_cluster_chordal(
    inst: WeightedInstance,
    ell: int,
    spec: ColoringFamilySpec,
    stats: dict | None = None,
) -> Solution:
    """Max-weight independent set with at most ell vertices of a
    cluster+chordal graph, given the decomposition witness."""
    engine = ClusterChordalEngine(inst)
    vec = engine.bounded_vector(ell, spec, stats)
    return vec[ell]


class ClusterChordalSolver:
    """Bounded-MWIS callable for the subgraph reduction, with a vector
    entry point so one engine sweep serves every bound of a color class.

    Inner queries run exhaustively (they are exact and the sub-instances
    are small); if an inner exhaustive sweep is refused for size and the
    surrounding run is randomized, the inner query falls back to the
    randomized family with the caller's epsilon.
    """

    def __init__(self, spec: ColoringFamilySpec):
        self.spec = spec
        self.exhaustive = ColoringFamilySpec(
            Mode.EXHAUSTIVE, seed=spec.seed, trial_cap=spec.trial_cap
        )

    def solve_vector(self, sub: WeightedInstance, max_bound: int) -> list[Solution]:
        engine = ClusterChordalEngine(sub)
        try:
            return engine.bounded_vector(max_bound, self.exhaustive)
        except SizeCapError:
            if self.spec.mode == Mode.RANDOMIZED:
                return engine.bounded_vector(max_bound, self.spec)
            raise

    def __call__(self, sub: WeightedInstance, bound: int) -> Solution:
        return self.solve_vector(sub, bound)[bound]


def _assemble(
    blocks: list[frozenset[int]],
    bounds: tuple[int, ...],
    vectors: list[list[Solution]],
) -> Solution:
    verts: set[int] = set()
    assignment: dict[int, int] = {}
    weight = 0
    for i, b in enumerate(bounds):
        sol = vectors[i][b]
        verts |= sol.vertices
        weight += sol.weight
        for v in sol.vertices:
            assignment[v] = i + 1
    return Solution(frozenset(verts), weight, assignment)


def _class_vector_fn(inst, ell, solver):
    """Memoized per-class bound vectors in the parent instance's vertex ids.

    Uses the solver's vector entry point when it has one (so one engine
    sweep serves every bound of a color class), otherwise one call per
    bound.
    """
    vector_fn = getattr(solver, "solve_vector", None)
    cache: dict[frozenset[int], tuple[list[Solution], tuple[int, ...]]] = {}

    def class_vector(block: frozenset[int]) -> tuple[list[Solution], tuple[int, ...]]:
        got = cache.get(block)
        if got is not None:
            return got
        sub, mapping = inst.induce(block)
        bmax = min(ell, len(block))
        if vector_fn is not None:
            raw = vector_fn(sub, bmax)
        else:
            raw = [solver(sub, b) for b in range(bmax + 1)]
        sols = []
        for b, sol in enumerate(raw):
            verts = frozenset(mapping[v] for v in sol.vertices)
            lifted = Solution(verts, sol.weight, None)
            lifted.validate(inst)
            if len(verts) > b:
                raise ValidationError("bounded solver exceeded its size bound")
            sols.append(lifted)
        while len(sols) < ell + 1:
            sols.append(sols[-1])
        got = (sols, tuple(s.weight for s in sols))
        cache[block] = got
        return got

    return class_vector


def _trial_best(blocks, ell, class_vector, size_partitions) -> Solution:
    """Optimum over one coloring's size partitions (first-found witness)."""
    if not blocks:
        return Solution(frozenset(), 0, {})
    pairs = [class_vector(b) for b in blocks]
    wvecs = [p[1] for p in pairs]
    best_total = -1
    best_bounds = None
    for bounds in size_partitions(len(blocks)):
        total = 0
        for i, b in enumerate(bounds):
            total += wvecs[i][b]
        if total > best_total:
            best_total = total
            best_bounds = bounds
    return _assemble(blocks, best_bounds, [p[0] for p in pairs])


def mwccs_from_mwis(
    inst: WeightedInstance,
    c: int,
    ell: int,
    mwis_bounded_solver: Callable[[WeightedInstance, int], Solution],
    spec: ColoringFamilySpec,
    stats: dict | None = None,
) -> Solution:
    """Max-weight induced c-colorable subgraph with at most ell vertices,
    via bounded MWIS on the classes of vertex colorings.

    The solver must be exact on induced sub-instances (the class is
    hereditary).  EXHAUSTIVE mode walks every coloring of the vertex set
    into at most c classes and is exact; RANDOMIZED mode draws
    ceil(c^ell * ln(1/epsilon)) uniform colorings.
    """
    if c < 1:
        raise ValueError("c must be positive")
    if c > MAX_COLORS:
        raise ValueError(f"c must be at most {MAX_COLORS}")
    if ell < 0:
        raise ValueError("ell must be non-negative")
    n = inst.graph.n
    empty = Solution(frozenset(), 0, {})
    if ell == 0 or n == 0:
        if stats is not None:
            stats["trials"] = stats.get("trials", 0)
        return empty

    class_vector = _class_vector_fn(inst, ell, mwis_bounded_solver)

    partition_cache: dict[int, list[tuple[int, ...]]] = {}

    def size_partitions(j: int) -> list[tuple[int, ...]]:
        if j not in partition_cache:
            partition_cache[j] = list(enumerate_size_partitions(ell, j))
        return partition_cache[j]

    best = empty

    def consider(blocks: list[frozenset[int]]):
        # first strictly-better candidate wins; the enumeration order is
        # canonical, so results stay deterministic
        nonlocal best
        pairs = [class_vector(b) for b in blocks]
        cap = 0
        for p in pairs:
            cap += p[1][-1]
        if cap <= best.weight:
            return
        wvecs = [p[1] for p in pairs]
        best_total = best.weight
        best_bounds = None
        for bounds in size_partitions(len(blocks)):
            total = 0
            for i, b in enumerate(bounds):
                total += wvecs[i][b]
            if total > best_total:
                best_total = total
                best_bounds = bounds
        if best_bounds is not None:
            best = _assemble(blocks, best_bounds, [p[0] for p in pairs])

    trials = 0
    if spec.mode == Mode.EXHAUSTIVE:
        if c**n > EXHAUSTIVE_ASSIGNMENT_CAP:
            raise SizeCapError(
                f"enumerating {c}^{n} colorings exceeds the exhaustive cap; "
                "use randomized mode"
            )
        for part in _set_partitions(n, min(c, n)):
            consider([frozenset(block) for block in part])
            trials += 1
    else:
        # per-trial optimum, then the canonical cross-trial merge (heavier
        # first, then lexicographically smallest vertex set), so chunked
        # parallel runs reproduce the sequential result
        trials = _randomized_trials(float(c) ** ell, spec)
        rng = random.Random(spec.seed)
        for _ in range(trials):
            coloring = tuple(rng.randint(1, c) for _ in range(n))
            blocks = [
                frozenset(v for v in range(n) if coloring[v] == col)
                for col in range(1, c + 1)
            ]
            trial_best = _trial_best(
                [b for b in blocks if b], ell, class_vector, size_partitions
            )
            best = better_solution(best, trial_best)

    if stats is not None:
        stats["trials"] = stats.get("trials", 0) + trials
    best.validate(inst, c)
    if len(best.vertices) > ell:
        raise ValidationError("solution exceeds the vertex budget")
    return best


def mwccs_cluster_chordal(
    inst: WeightedInstance,
    c: int,
    ell: int,
    spec: ColoringFamilySpec,
    stats: dict | None = None,
    jobs: int = 1,
) -> Solution:
    """The full pipeline: max-weight c-colorable subgraph with at most ell
    vertices of a cluster+chordal graph with a given decomposition witness."""
    _, chordal_g = decomposition_parts(inst)  # validate the witness up front
    if is_chordal(chordal_g) is None:
        raise ValueError("chordal-tagged edges do not form a chordal graph")
    solver = ClusterChordalSolver(spec)
    if spec.mode == Mode.RANDOMIZED and jobs > 1 and ell > 0 and inst.graph.n > 0:
        return _mwccs_randomized_parallel(inst, c, ell, spec, stats, jobs)
    return mwccs_from_mwis(inst, c, ell, solver, spec, stats)


def _mwccs_chunk(args) -> Solution:
    inst, c, ell, colorings, spec = args
    return _mwccs_over_colorings(inst, c, ell, colorings, ClusterChordalSolver(spec))


def _mwccs_over_colorings(inst, c, ell, colorings, solver) -> Solution:
    best = Solution(frozenset(), 0, {})
    class_vector = _class_vector_fn(inst, ell, solver)
    partition_cache: dict[int, list[tuple[int, ...]]] = {}

    def size_partitions(j: int) -> list[tuple[int, ...]]:
        if j not in partition_cache:
            partition_cache[j] = list(enumerate_size_partitions(ell, j))
        return partition_cache[j]

    n = inst.graph.n
    for coloring in colorings:
        blocks = [
            frozenset(v for v in range(n) if coloring[v] == col)
            for col in range(1, c + 1)
        ]
        trial_best = _trial_best(
            [b for b in blocks if b], ell, class_vector, size_partitions
        )
        best = better_solution(best, trial_best)
    return best


def _mwccs_randomized_parallel(inst, c, ell, spec, stats, jobs) -> Solution:
    from concurrent.futures import ProcessPoolExecutor

    trials = _randomized_trials(float(c) ** ell, spec)
    rng = random.Random(spec.seed)
    colorings = [
        tuple(rng.randint(1, c) for _ in range(inst.graph.n)) for _ in range(trials)
    ]
    chunk = max(1, (trials + jobs - 1) // jobs)
    parts = [colorings[i : i + chunk] for i in range(0, trials, chunk)]
    best = Solution(frozenset(), 0, {})
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for sub_best in pool.map(
            _mwccs_chunk, [(inst, c, ell, part, spec) for part in parts]
        ):
            best = better_solution(best, sub_best)
    if stats is not None:
        stats["trials"] = stats.get("trials", 0) + trials
    best.validate(inst, c)
    if len(best.vertices) > ell:
        raise ValidationError("solution exceeds the vertex budget")
    return best
