"""Bottom-up dynamic programs over tree decompositions.

The colorful program computes, for every bag X, color subset C and
selection S of at most alpha independent bag vertices, the heaviest
independent set of the subtree graph that meets X exactly in S and uses
pairwise distinct colors from C.  Leaves score w(S); a single child is
combined through selections grouped by their intersection with the parent
bag (this grouping is what keeps the per-bag cost near n^alpha instead of
n^(2*alpha)); a join bag with two equal children splits the free colors
disjointly between the subtrees, which costs 3^c pairs per selection.

Weights use int64 arrays with a large negative sentinel for infeasible
entries; instance construction bounds total weight so sums never wrap.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .graph import (
    Solution,
    ValidationError,
    WeightedInstance,
    find_independent_subset,
    is_independent,
)
from .treedecomp import TreeDecomposition, normalize_binary, verify_tree_decomposition

NEG = -(2**61)
FEAS_MIN = -(2**60)
MAX_COLORS = 30
_PAIR_TABLE_MAX_C = 12  # join pair arrays up to 3^12 rows; larger c loops in python


@lru_cache(maxsize=None)
def _pair_table(c: int):
    """All (C, C_sub) pairs with C_sub subset of C, flat and grouped by C.

    Exactly 3^c rows; within a C segment submasks ascend, so first-argmax
    tie-breaking is deterministic.
    """
    nc = 1 << c
    full: list[int] = []
    sub: list[int] = []
    starts = np.zeros(nc, dtype=np.int64)
    counts = np.zeros(nc, dtype=np.int64)
    for C in range(nc):
        starts[C] = len(full)
        subs = []
        s = C
        while True:
            subs.append(s)
            if s == 0:
                break
            s = (s - 1) & C
        subs.reverse()
        full.extend([C] * len(subs))
        sub.extend(subs)
        counts[C] = len(subs)
    full_a = np.asarray(full, dtype=np.int64)
    sub_a = np.asarray(sub, dtype=np.int64)
    assert full_a.size == 3**c
    return full_a, sub_a, full_a & ~sub_a, starts, counts


@lru_cache(maxsize=None)
def _popcounts(c: int) -> np.ndarray:
    return np.array([x.bit_count() for x in range(1 << c)], dtype=np.int64)


class ColorfulDP:
    """Reusable DP engine: the tree/selection structure is precomputed once,
    after which solve() may be called with many different colorings."""

    def __init__(self, inst: WeightedInstance, td: TreeDecomposition, alpha: int):
        if alpha < 1:
            raise ValueError("alpha must be positive")
        g = inst.graph
        if not td.is_binary_form():
            td = normalize_binary(td)
        for bag in td.bags:
            if find_independent_subset(g, bag, alpha + 1) is not None:
                raise ValueError(
                    f"a bag has more than alpha={alpha} pairwise nonadjacent vertices"
                )
        self.inst = inst
        self.td = td
        self.alpha = alpha
        self.order = td.postorder()

        self.sels: list[list[frozenset[int]]] = []
        self.sel_pos: list[dict[frozenset[int], int]] = []
        for bag in td.bags:
            lst = [frozenset()]
            verts = sorted(bag)
            for size in range(1, alpha + 1):
                for comb in itertools.combinations(verts, size):
                    if is_independent(g, comb):
                        lst.append(frozenset(comb))
            self.sels.append(lst)
            self.sel_pos.append({s: i for i, s in enumerate(lst)})

        # per single-child bag: child selections grouped by intersection with
        # the parent bag, and per parent selection its group key + moved part
        self.single_link: dict[int, dict] = {}
        self.join_children: dict[int, tuple[int, int]] = {}
        for x in range(len(td)):
            ch = td.children[x]
            if len(ch) == 1:
                y = ch[0]
                groups: dict[frozenset[int], list[int]] = {}
                for j, sprime in enumerate(self.sels[y]):
                    groups.setdefault(sprime & td.bags[x], []).append(j)
                link = []
                for s in self.sels[x]:
                    sstar = s & td.bags[y]
                    moved = tuple(sorted(s - sstar))
                    link.append((sstar, moved))
                self.single_link[x] = {"groups": groups, "link": link}
            elif len(ch) == 2:
                assert td.bags[ch[0]] == td.bags[x] == td.bags[ch[1]]
                self.join_children[x] = (ch[0], ch[1])

    def solve(self, colors, c: int) -> "ColorfulRun":
        """Run the DP under the given 1-based vertex coloring with c colors."""
        if c < 0 or c > MAX_COLORS:
            raise ValueError(f"color count must be in 0..{MAX_COLORS}")
        g = self.inst.graph
        w = self.inst.weights
        if len(colors) != g.n:
            raise ValueError("coloring length must equal vertex count")
        if any(not 1 <= col <= c for col in colors):
            raise ValueError("vertex colors must lie in 1..c")
        nc = 1 << c
        cmask = [1 << (col - 1) for col in colors]
        call = np.arange(nc, dtype=np.int64)

        td = self.td
        values: list[list[np.ndarray] | None] = [None] * len(td)
        bp_join: dict[int, list[np.ndarray | None]] = {}
        bp_single: dict[int, dict] = {}

        def sel_colmask(s: frozenset[int]) -> int:
            mask = 0
            for v in s:
                mask |= cmask[v]
            return mask

        sel_meta: list[list[tuple[int, bool, int]]] = []  # (colmask, colorful, weight)
        for x in range(len(td)):
            meta = []
            for s in self.sels[x]:
                mask = sel_colmask(s)
                meta.append((mask, mask.bit_count() == len(s), sum(w[v] for v in s)))
            sel_meta.append(meta)

        if c <= _PAIR_TABLE_MAX_C:
            full_a, sub_a, other_base, starts, counts = _pair_table(c)
            ar3 = np.arange(full_a.size, dtype=np.int64)
        else:
            full_a = None

        for x in self.order:
            kids = td.children[x]
            arrs: list[np.ndarray] = []
            if not kids:
                for mask, colorful, ws in sel_meta[x]:
                    if colorful:
                        arrs.append(np.where((call & mask) == mask, ws, NEG))
                    else:
                        arrs.append(np.full(nc, NEG, dtype=np.int64))
            elif len(kids) == 1:
                y = kids[0]
                info = self.single_link[x]
                child_vals = values[y]
                gmax: dict[frozenset[int], np.ndarray] = {}
                garg: dict[frozenset[int], tuple[np.ndarray, list[int]]] = {}
                for key, members in info["groups"].items():
                    stack = np.stack([child_vals[j] for j in members])
                    gmax[key] = stack.max(axis=0)
                    garg[key] = (stack.argmax(axis=0).astype(np.int16), members)
                for i, s in enumerate(self.sels[x]):
                    mask, colorful, ws = sel_meta[x][i]
                    if not colorful:
                        arrs.append(np.full(nc, NEG, dtype=np.int64))
                        continue
                    sstar, moved = info["link"][i]
                    dmask = 0
                    extra = 0
                    for v in moved:
                        dmask |= cmask[v]
                        extra += w[v]
                    base = gmax[sstar][call & ~dmask] + extra
                    arrs.append(np.where((call & mask) == mask, base, NEG))
                bp_single[x] = garg
                values[y] = None
            else:
                y, z = self.join_children[x]
                avals, bvals = values[y], values[z]
                bps: list[np.ndarray | None] = []
                for i, s in enumerate(self.sels[x]):
                    mask, colorful, ws = sel_meta[x][i]
                    if not colorful:
                        arrs.append(np.full(nc, NEG, dtype=np.int64))
                        bps.append(None)
                        continue
                    A, B = avals[i], bvals[i]
                    if full_a is not None:
                        other = other_base | mask
                        av = A[sub_a]
                        bv = B[other]
                        vals = av + bv
                        feas = (av > FEAS_MIN) & (bv > FEAS_MIN)
                        # color discipline of the join rule on feasible pairs
                        assert np.all((sub_a | other)[feas] == full_a[feas])
                        assert np.all((sub_a & other)[feas] == mask)
                        segmax = np.maximum.reduceat(vals, starts)
                        rep = np.repeat(segmax, counts)
                        firsts = np.minimum.reduceat(
                            np.where(vals == rep, ar3, full_a.size), starts
                        ).astype(np.int64)
                        arrs.append(
                            np.where((call & mask) == mask, segmax - ws, NEG)
                        )
                        bps.append(firsts)
                    else:
                        arr = np.full(nc, NEG, dtype=np.int64)
                        bp = np.zeros(nc, dtype=np.int64)
                        for C in range(nc):
                            if (C & mask) != mask:
                                continue
                            best = NEG
                            best_sub = mask
                            sbm = C
                            while True:
                                other_m = (C & ~sbm) | mask
                                v = A[sbm] + B[other_m]
                                if v > best:
                                    best = v
                                    best_sub = sbm
                                if sbm == 0:
                                    break
                                sbm = (sbm - 1) & C
                            arr[C] = best - ws if best > FEAS_MIN else NEG
                            bp[C] = best_sub
                        arrs.append(arr)
                        bps.append(bp)
                bp_join[x] = bps
                values[y] = None
                values[z] = None
            values[x] = arrs

        return ColorfulRun(
            self, colors, c, tuple(cmask), values[td.root], bp_join, bp_single
        )


class ColorfulRun:
    """Finished DP run: root table plus the backpointers for reconstruction."""

    def __init__(self, engine, colors, c, cmask, root_vals, bp_join, bp_single):
        self.engine = engine
        self.colors = colors
        self.c = c
        self.cmask = cmask
        self.root_vals = root_vals
        self.bp_join = bp_join
        self.bp_single = bp_single

    def _reconstruct(self, start_c: int, start_sel: int) -> frozenset[int]:
        eng = self.engine
        td = eng.td
        chosen: set[int] = set()
        stack = [(td.root, start_c, start_sel)]
        while stack:
            x, C, i = stack.pop()
            s = eng.sels[x][i]
            chosen.update(s)
            kids = td.children[x]
            if not kids:
                continue
            if len(kids) == 1:
                y = kids[0]
                sstar, moved = eng.single_link[x]["link"][i]
                dmask = 0
                for v in moved:
                    dmask |= self.cmask[v]
                cprime = C & ~dmask
                arg, members = self.bp_single[x][sstar]
                j = members[int(arg[cprime])]
                stack.append((y, cprime, j))
            else:
                y, z = eng.join_children[x]
                smask = 0
                for v in s:
                    smask |= self.cmask[v]
                bp = self.bp_join[x][i]
                if self.c <= _PAIR_TABLE_MAX_C:
                    _, sub_a, _, _, _ = _pair_table(self.c)
                    sub = int(sub_a[int(bp[C])])
                else:
                    sub = int(bp[C])
                stack.append((y, sub, i))
                stack.append((z, (C & ~sub) | smask, i))
        return frozenset(chosen)

    def _solution_at(self, C: int, sel: int) -> Solution:
        verts = self._reconstruct(C, sel)
        sol = Solution(
            verts,
            self.engine.inst.weight_of(verts),
            {v: self.colors[v] for v in verts},
        )
        # witness re-validation happens on every call, not just in tests
        sol.validate(self.engine.inst, self.c)
        if len({self.colors[v] for v in verts}) != len(verts):
            raise ValidationError("witness has repeated colors")
        expected = int(self.root_vals[sel][C])
        if sol.weight != expected:
            raise ValidationError(
                f"witness weight {sol.weight} disagrees with table value {expected}"
            )
        return sol

    def best_full(self) -> Solution:
        """Optimum over all colorful independent sets (all c colors usable)."""
        full = (1 << self.c) - 1
        best_val = FEAS_MIN
        best_sel = 0
        for i, arr in enumerate(self.root_vals):
            v = int(arr[full])
            if v > best_val:
                best_val = v
                best_sel = i
        if best_val <= FEAS_MIN:
            # the empty selection is always feasible, so this cannot happen
            raise ValidationError("DP root has no feasible entry")
        return self._solution_at(full, best_sel)

    def best_by_color_count(self, max_count: int) -> list[Solution]:
        """Entry b: the optimum among solutions using at most b distinct
        colors (hence at most b vertices); prefix-maximal, never None."""
        pops = _popcounts(self.c)
        per_bucket: list[tuple[int, int, int]] = []  # (value, C, sel)
        for b in range(min(max_count, self.c) + 1):
            positions = np.flatnonzero(pops == b)
            best_val, best_c, best_sel = NEG, 0, 0
            for i, arr in enumerate(self.root_vals):
                vals = arr[positions]
                j = int(np.argmax(vals))
                v = int(vals[j])
                if v > best_val:
                    best_val, best_c, best_sel = v, int(positions[j]), i
            per_bucket.append((best_val, best_c, best_sel))
        out: list[Solution] = []
        cur = (FEAS_MIN, 0, 0)
        cache: dict[tuple[int, int], Solution] = {}
        for b in range(max_count + 1):
            if b < len(per_bucket) and per_bucket[b][0] > cur[0]:
                cur = per_bucket[b]
            key = (cur[1], cur[2])
            if key not in cache:
                cache[key] = self._solution_at(cur[1], cur[2])
            out.append(cache[key])
        return out


def _check_td(inst: WeightedInstance, td: TreeDecomposition) -> None:
    if not verify_tree_decomposition(inst.graph, td):
        raise ValueError("not a valid tree decomposition of the instance graph")


def max_weight_colorful_is(
    inst: WeightedInstance,
    td: TreeDecomposition,
    alpha: int,
    c: int | None = None,
) -> Solution:
    """Max-weight independent set with pairwise distinct colors.

    Requires per-vertex colors on the instance and a tree decomposition
    whose bags have independence number at most alpha.
    """
    if inst.colors is None:
        raise ValueError("instance has no vertex colors")
    if c is None:
        c = inst.num_colors
    if inst.graph.n and max(inst.colors) > c:
        raise ValueError("vertex color exceeds the declared color count")
    _check_td(inst, td)
    engine = ColorfulDP(inst, td, alpha)
    return engine.solve(inst.colors, c).best_full()


def colorful_best_by_color_count(
    inst: WeightedInstance, td: TreeDecomposition, alpha: int, c: int, max_count: int
) -> list[Solution]:
    """Vector of optima restricted to at most b distinct colors, b = 0..max_count."""
    if inst.colors is None:
        raise ValueError("instance has no vertex colors")
    _check_td(inst, td)
    engine = ColorfulDP(inst, td, alpha)
    return engine.solve(inst.colors, c).best_by_color_count(max_count)


def max_weight_is_chordal(inst: WeightedInstance, td: TreeDecomposition) -> Solution:
    """Max-weight independent set of a chordal graph over its clique tree.

    Same recurrences as the colorful program with the color machinery
    dropped; selections are empty or a single bag vertex.
    """
    g = inst.graph
    w = inst.weights
    _check_td(inst, td)
    if not td.is_binary_form():
        td = normalize_binary(td)
    for bag in td.bags:
        if find_independent_subset(g, bag, 2) is not None:
            raise ValueError("clique tree required: found a non-clique bag")

    sels: list[list[int | None]] = [[None] + sorted(bag) for bag in td.bags]
    values: list[dict[int | None, int] | None] = [None] * len(td)
    bp: dict[int, dict] = {}

    for x in td.postorder():
        kids = td.children[x]
        if not kids:
            values[x] = {s: (w[s] if s is not None else 0) for s in sels[x]}
        elif len(kids) == 1:
            y = kids[0]
            child_vals = values[y]
            gmax: dict[int | None, int] = {}
            garg: dict[int | None, int | None] = {}
            for sprime, val in child_vals.items():
                key = sprime if (sprime is not None and sprime in td.bags[x]) else None
                if key not in gmax or val > gmax[key]:
                    gmax[key] = val
                    garg[key] = sprime
            table: dict[int | None, int] = {}
            for s in sels[x]:
                if s is None:
                    table[s] = gmax[None]
                elif s in td.bags[y]:
                    table[s] = gmax[s]
                else:
                    table[s] = gmax[None] + w[s]
            values[x] = table
            bp[x] = garg
            values[y] = None
        else:
            y, z = kids
            table = {}
            for s in sels[x]:
                ws = w[s] if s is not None else 0
                table[s] = values[y][s] + values[z][s] - ws
            values[x] = table
            # join children inherit the same selection; nothing to record
            values[y] = None
            values[z] = None

    root_table = values[td.root]
    best_sel = None
    best_val = -1
    for s in sels[td.root]:
        if root_table[s] > best_val:
            best_val = root_table[s]
            best_sel = s

    chosen: set[int] = set()
    stack: list[tuple[int, int | None]] = [(td.root, best_sel)]
    while stack:
        x, s = stack.pop()
        if s is not None:
            chosen.add(s)
        kids = td.children[x]
        if not kids:
            continue
        if len(kids) == 1:
            y = kids[0]
            key = s if (s is not None and s in td.bags[y]) else None
            stack.append((y, bp[x][key]))
        else:
            y, z = kids
            stack.append((y, s))
            stack.append((z, s))

    sol = Solution(frozenset(chosen), inst.weight_of(chosen), None)
    sol.validate(inst)
    if sol.weight != best_val:
        raise ValidationError("chordal MWIS witness weight disagrees with DP value")
    return sol
