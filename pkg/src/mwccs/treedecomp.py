"""Tree decompositions: clique trees of chordal graphs, validation, and the
binary normal form the dynamic program consumes."""

from __future__ import annotations

from collections import deque

from .graph import Graph, find_independent_subset
from .recognition import verify_peo


class TreeDecomposition:
    """Rooted tree of bags.  parent[i] is None exactly for the root."""

    __slots__ = ("bags", "parent", "root", "children", "normalized")

    def __init__(self, bags, parent, root, normalized=False):
        self.bags: list[frozenset[int]] = [frozenset(b) for b in bags]
        self.parent: list[int | None] = list(parent)
        self.root = root
        self.normalized = normalized
        if len(self.bags) != len(self.parent):
            raise ValueError("bags and parent arrays differ in length")
        if not self.bags:
            raise ValueError("a decomposition needs at least one bag")
        if self.parent[root] is not None:
            raise ValueError("root must have no parent")
        children: list[list[int]] = [[] for _ in self.bags]
        root_count = 0
        for i, p in enumerate(self.parent):
            if p is None:
                root_count += 1
            else:
                children[p].append(i)
        if root_count != 1:
            raise ValueError("exactly one bag may be parentless")
        self.children = children
        # reachability from the root certifies the parent array is a tree
        seen = 0
        stack = [root]
        while stack:
            x = stack.pop()
            seen += 1
            stack.extend(children[x])
        if seen != len(self.bags):
            raise ValueError("parent pointers do not form a tree")

    def __len__(self):
        return len(self.bags)

    def postorder(self) -> list[int]:
        out: list[int] = []
        stack: list[tuple[int, bool]] = [(self.root, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded:
                out.append(node)
            else:
                stack.append((node, True))
                for ch in reversed(self.children[node]):
                    stack.append((ch, False))
        return out

    def is_binary_form(self) -> bool:
        for i, ch in enumerate(self.children):
            if len(ch) > 2:
                return False
            if len(ch) == 2 and not (
                self.bags[ch[0]] == self.bags[i] == self.bags[ch[1]]
            ):
                return False
        return True


def clique_tree_from_peo(g: Graph, peo) -> TreeDecomposition:
    """Clique tree of a chordal graph from a perfect elimination ordering.

    bag(v) = {v} + later neighbors of v; bag(v)'s parent is the bag of v's
    earliest-eliminated later neighbor.  Bags comparable with their parent
    are merged, which leaves one bag per maximal clique.
    """
    if not verify_peo(g, peo):
        raise ValueError("ordering is not a perfect elimination ordering")
    order = list(peo)
    n = g.n
    if n == 0:
        return TreeDecomposition([frozenset()], [None], 0)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i

    bag_of = {}
    bags = []
    parent_vertex: list[int | None] = []
    for i, v in enumerate(order):
        later = [u for u in g.adj[v] if pos[u] > pos[v]]
        bag_of[v] = len(bags)
        bags.append(frozenset([v] + later))
        if later:
            parent_vertex.append(min(later, key=lambda u: pos[u]))
        elif i + 1 < n:
            # no later neighbor: attach to the next bag in elimination order
            # (the bags share nothing, so the tree conditions are unaffected)
            parent_vertex.append(order[i + 1])
        else:
            parent_vertex.append(None)

    parent: list[int | None] = [
        bag_of[pv] if pv is not None else None for pv in parent_vertex
    ]

    # merge any bag into its parent when one contains the other
    alive = [True] * len(bags)
    merged_into = list(range(len(bags)))

    def rep(i: int) -> int:
        while merged_into[i] != i:
            merged_into[i] = merged_into[merged_into[i]]
            i = merged_into[i]
        return i

    for i in range(len(bags)):
        cur = rep(i)
        while parent[cur] is not None:
            par = rep(parent[cur])
            if par == cur:
                parent[cur] = None
                break
            if bags[par] <= bags[cur]:
                # absorb the parent: cur inherits its parent pointer
                merged_into[par] = cur
                alive[par] = False
                parent[cur] = parent[par]
            elif bags[cur] <= bags[par]:
                merged_into[cur] = par
                alive[cur] = False
                cur = par
            else:
                break

    index = {}
    new_bags = []
    for i in range(len(bags)):
        if alive[i]:
            index[i] = len(new_bags)
            new_bags.append(bags[i])
    new_parent: list[int | None] = [None] * len(new_bags)
    for i in range(len(bags)):
        if alive[i]:
            p = parent[i]
            new_parent[index[i]] = index[rep(p)] if p is not None else None
    root = index[rep(bag_of[order[-1]])]
    # re-root in case merging left the root pointer elsewhere
    if new_parent[root] is not None:
        # walk up to the actual root
        r = root
        while new_parent[r] is not None:
            r = new_parent[r]
        root = r
    return TreeDecomposition(new_bags, new_parent, root)


def verify_tree_decomposition(g: Graph, td: TreeDecomposition) -> bool:
    """Check the three defining conditions: bags cover the vertices, every
    edge lies in some bag, and each vertex's bags form a subtree."""
    if any(v < 0 or v >= g.n for bag in td.bags for v in bag):
        return False
    holding: list[set[int]] = [set() for _ in range(g.n)]
    for i, bag in enumerate(td.bags):
        for v in bag:
            holding[v].add(i)
    if any(not h for h in holding):
        return g.n == 0
    for u, v in g.edges():
        if holding[u].isdisjoint(holding[v]):
            return False
    # per-vertex connectivity over the tree
    for v in range(g.n):
        hold = holding[v]
        start = next(iter(hold))
        seen = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            nbrs = list(td.children[x])
            if td.parent[x] is not None:
                nbrs.append(td.parent[x])
            for y in nbrs:
                if y in hold and y not in seen:
                    seen.add(y)
                    queue.append(y)
        if seen != hold:
            return False
    return True


def normalize_binary(td: TreeDecomposition) -> TreeDecomposition:
    """Binary normal form: every bag has at most two children, and a bag
    with two children equals both of them.

    Offending bags get two equal copies attached as their only children,
    with the original children distributed below; at worst this triples the
    number of bags.
    """
    bags: list[frozenset[int]] = []
    parent: list[int | None] = []

    def add(bag: frozenset[int], par: int | None) -> int:
        bags.append(bag)
        parent.append(par)
        return len(bags) - 1

    # explicit worklist; deep decompositions would blow the recursion limit
    stack: list[tuple] = [("build", td.root, None)]
    while stack:
        item = stack.pop()
        if item[0] == "build":
            _, old, par = item
            me = add(td.bags[old], par)
            stack.append(("attach", me, td.bags[old], tuple(td.children[old])))
            continue
        _, me, bag, kids = item
        if not kids:
            continue
        if len(kids) == 1:
            stack.append(("build", kids[0], me))
        elif len(kids) == 2 and td.bags[kids[0]] == bag == td.bags[kids[1]]:
            stack.append(("build", kids[0], me))
            stack.append(("build", kids[1], me))
        else:
            left = add(bag, me)
            stack.append(("build", kids[0], left))
            right = add(bag, me)
            stack.append(("attach", right, bag, kids[1:]))

    out = TreeDecomposition(bags, parent, 0, normalized=True)
    assert len(out) <= 3 * len(td), "normalization exceeded the 3x bag bound"
    assert out.is_binary_form()
    return out


def bag_alpha(g: Graph, td: TreeDecomposition) -> int:
    """Largest independence number over the bags (brute force per bag)."""
    best = 0
    for bag in td.bags:
        size = best
        while find_independent_subset(g, bag, size + 1) is not None:
            size += 1
        best = max(best, size)
    return best


def decomposition_to_text(td: TreeDecomposition) -> str:
    """Line-oriented dump: one `b <id> <parent|-1> <vertices...>` per bag,
    vertices 1-based, in tree index order."""
    lines = []
    for i, bag in enumerate(td.bags):
        par = td.parent[i]
        verts = " ".join(str(v + 1) for v in sorted(bag))
        lines.append(f"b {i} {par if par is not None else -1} {verts}".rstrip())
    return "\n".join(lines) + "\n"


def decomposition_from_text(text: str) -> TreeDecomposition:
    bags: list[frozenset[int]] = []
    parent: list[int | None] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] != "b":
            raise ValueError(f"unexpected line: {raw!r}")
        idx, par = int(parts[1]), int(parts[2])
        if idx != len(bags):
            raise ValueError("bag ids must be consecutive from 0")
        bags.append(frozenset(int(x) - 1 for x in parts[3:]))
        parent.append(None if par == -1 else par)
    root = parent.index(None)
    return TreeDecomposition(bags, parent, root)
