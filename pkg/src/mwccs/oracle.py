"""Brute-force reference solvers.

Deliberately simple and size-capped; these validate the real algorithms and
must never share code with them beyond the core graph primitives.
"""

from __future__ import annotations

import itertools

from .graph import (
    Graph,
    MulticoloredCliqueInstance,
    SizeCapError,
    Solution,
    WeightedInstance,
    is_c_colorable,
    solution_sort_key,
)

MWIS_CAP = 24
MWCCS_CAP = 18
COLORFUL_CAP = 20
MCC_CAP = 10**6
HAMILTONIAN_CAP = 14
HOLE_CAP = 12


def brute_mwis(inst: WeightedInstance, ell_cap: int | None = None) -> Solution:
    """Exact max-weight independent set by branch enumeration.

    Branches include/exclude on the lowest remaining vertex; the only
    pruning is the trivially sound remaining-weight bound.
    """
    g = inst.graph
    if g.n > MWIS_CAP:
        raise SizeCapError(f"brute_mwis refuses n={g.n} > {MWIS_CAP}")
    w = inst.weights
    suffix = [0] * (g.n + 1)
    for v in range(g.n - 1, -1, -1):
        suffix[v] = suffix[v + 1] + w[v]

    best_set: list[int] = []
    best_w = -1

    def rec(avail: int, chosen: list[int], acc: int):
        nonlocal best_set, best_w
        if acc > best_w:
            best_w = acc
            best_set = list(chosen)
        if avail == 0:
            return
        if ell_cap is not None and len(chosen) >= ell_cap:
            return
        v = (avail & -avail).bit_length() - 1
        if acc + suffix[v] <= best_w:
            return
        bit = 1 << v
        chosen.append(v)
        rec(avail & ~g.mask[v] & ~bit, chosen, acc + w[v])
        chosen.pop()
        rec(avail & ~bit, chosen, acc)

    rec((1 << g.n) - 1, [], 0)
    sol = Solution(frozenset(best_set), best_w, None)
    sol.validate(inst)
    return sol


def brute_mwccs(inst: WeightedInstance, c: int, ell_cap: int | None = None) -> Solution:
    """Exact max-weight c-colorable subgraph: try every vertex subset."""
    g = inst.graph
    if g.n > MWCCS_CAP:
        raise SizeCapError(f"brute_mwccs refuses n={g.n} > {MWCCS_CAP}")
    if c < 0:
        raise ValueError("c must be non-negative")
    w = inst.weights
    best: Solution | None = None
    for mask in range(1 << g.n):
        verts = [v for v in range(g.n) if mask >> v & 1]
        if ell_cap is not None and len(verts) > ell_cap:
            continue
        weight = sum(w[v] for v in verts)
        if best is not None and weight < best.weight:
            continue
        sub_edges = [
            (i, j)
            for i, u in enumerate(verts)
            for j, v in enumerate(verts)
            if i < j and g.has_edge(u, v)
        ]
        coloring = is_c_colorable(Graph(len(verts), sub_edges), c)
        if coloring is None:
            continue
        cand = Solution(
            frozenset(verts),
            weight,
            {verts[i]: col for i, col in coloring.items()},
        )
        if best is None or solution_sort_key(cand) < solution_sort_key(best):
            best = cand
    assert best is not None  # the empty subset always qualifies
    best.validate(inst, c)
    return best


def brute_colorful_is(inst: WeightedInstance) -> Solution:
    """Exact max-weight independent set with pairwise distinct colors."""
    g = inst.graph
    if g.n > COLORFUL_CAP:
        raise SizeCapError(f"brute_colorful_is refuses n={g.n} > {COLORFUL_CAP}")
    if inst.colors is None:
        raise ValueError("instance has no vertex colors")
    w = inst.weights
    col = inst.colors
    best_set: list[int] = []
    best_w = -1

    def rec(avail: int, used_colors: int, chosen: list[int], acc: int):
        nonlocal best_set, best_w
        if acc > best_w:
            best_w = acc
            best_set = list(chosen)
        while avail:
            v = (avail & -avail).bit_length() - 1
            bit = 1 << v
            avail &= ~bit
            cbit = 1 << col[v]
            if used_colors & cbit:
                continue
            chosen.append(v)
            rec(avail & ~g.mask[v], used_colors | cbit, chosen, acc + w[v])
            chosen.pop()

    rec((1 << g.n) - 1, 0, [], 0)
    sol = Solution(frozenset(best_set), best_w, None)
    sol.validate(inst)
    if len({col[v] for v in best_set}) != len(best_set):
        raise AssertionError("oracle produced a non-colorful set")
    return sol


def brute_multicolored_clique(mcc: MulticoloredCliqueInstance) -> bool:
    """Does some transversal (one vertex per class) form a clique?"""
    sizes = 1
    for cls in mcc.classes:
        sizes *= max(len(cls), 1)
        if sizes > MCC_CAP:
            raise SizeCapError(f"class-size product exceeds {MCC_CAP}")
    if any(len(cls) == 0 for cls in mcc.classes):
        return False
    g = mcc.graph

    def rec(i: int, mask: int) -> bool:
        if i == len(mcc.classes):
            return True
        for v in mcc.classes[i]:
            if g.mask[v] & mask == mask:
                if rec(i + 1, mask | (1 << v)):
                    return True
        return False

    return rec(0, 0)


def brute_hamiltonian_cycle(g: Graph) -> bool:
    """Hamiltonian cycle existence via bitmask DP over (visited, last)."""
    n = g.n
    if n > HAMILTONIAN_CAP:
        raise SizeCapError(f"brute_hamiltonian_cycle refuses n={n} > {HAMILTONIAN_CAP}")
    if n < 3:
        return False
    # cycles through vertex 0; reach[mask] holds last-vertex bits
    start = 1
    reach = {1: 1}
    for _ in range(n - 1):
        nxt: dict[int, int] = {}
        for mask, lasts in reach.items():
            ls = lasts
            while ls:
                v = (ls & -ls).bit_length() - 1
                ls &= ls - 1
                cand = g.mask[v] & ~mask
                while cand:
                    u = (cand & -cand).bit_length() - 1
                    cand &= cand - 1
                    key = mask | (1 << u)
                    nxt[key] = nxt.get(key, 0) | (1 << u)
        reach = nxt
    full = (1 << n) - 1
    lasts = reach.get(full, 0)
    return bool(lasts & g.mask[0])


def brute_find_hole(g: Graph) -> tuple[int, ...] | None:
    """Search all vertex subsets for an induced cycle of length >= 4."""
    if g.n > HOLE_CAP:
        raise SizeCapError(f"brute_find_hole refuses n={g.n} > {HOLE_CAP}")
    for size in range(4, g.n + 1):
        for subset in itertools.combinations(range(g.n), size):
            # induced subgraph must be connected and 2-regular
            degs = [sum(1 for u in subset if g.has_edge(v, u)) for v in subset]
            if any(d != 2 for d in degs):
                continue
            # walk the cycle to confirm a single component
            order = [subset[0]]
            prev = None
            while True:
                nbrs = [u for u in subset if g.has_edge(order[-1], u) and u != prev]
                prev = order[-1]
                order.append(nbrs[0])
                if order[-1] == order[0]:
                    break
            if len(order) - 1 == size:
                return tuple(order[:-1])
    return None


def brute_independence_number(g: Graph, s=None) -> int:
    """Independence number of G[s] (of g itself when s is omitted)."""
    verts = list(range(g.n)) if s is None else sorted(s)
    if len(verts) > MWIS_CAP:
        raise SizeCapError(f"brute_independence_number refuses |s|={len(verts)}")
    best = 0

    def rec(avail: int, count: int):
        nonlocal best
        best = max(best, count)
        while avail:
            v = (avail & -avail).bit_length() - 1
            bit = 1 << v
            if count + avail.bit_count() <= best:
                return
            avail &= ~bit
            rec(avail & ~g.mask[v], count + 1)

    rec(sum(1 << v for v in verts), 0)
    return best
