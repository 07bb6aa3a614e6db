"""Tree decompositions (min-fill + nicification) and the bag-subset DPs for
shrinking to independence and to acyclicity (cardinality variants)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from diskshrink.geometry import NuClass, unit_graph
from diskshrink.model import Instance, Solution, Verdict

LEAF, INTRODUCE, FORGET, JOIN = "leaf", "introduce", "forget", "join"


@dataclass
class TreeDecomposition:
    bags: list[frozenset[int]]
    parent: list[int]  # -1 for the root
    kind: str = "raw"  # "raw" or "nice"
    node_kind: list[str] = field(default_factory=list)
    node_vertex: list[int | None] = field(default_factory=list)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    @property
    def root(self) -> int:
        return self.parent.index(-1)

    def children(self) -> list[list[int]]:
        ch: list[list[int]] = [[] for _ in self.bags]
        for v, p in enumerate(self.parent):
            if p >= 0:
                ch[p].append(v)
        return ch

    def postorder(self) -> list[int]:
        ch = self.children()
        order, stack = [], [(self.root, False)]
        while stack:
            v, done = stack.pop()
            if done:
                order.append(v)
                continue
            stack.append((v, True))
            stack.extend((c, False) for c in reversed(ch[v]))
        return order


def _adjacency(n: int, edges: Iterable[tuple[int, int]]) -> list[set[int]]:
    adj = [set() for _ in range(n)]
    for u, v in edges:
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    return adj


def min_fill_order(n: int, edges: Iterable[tuple[int, int]]) -> list[int]:
    adj = _adjacency(n, edges)
    alive = set(range(n))
    order = []
    while alive:
        best, best_key = None, None
        for v in sorted(alive):
            nb = list(adj[v])
            fill = sum(1 for i in range(len(nb)) for j in range(i + 1, len(nb)) if nb[j] not in adj[nb[i]])
            key = (fill, v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        nb = adj[best]
        for u in nb:
            adj[u] |= nb - {u}
            adj[u].discard(best)
        alive.remove(best)
        order.append(best)
    return order


def raw_decomposition(n: int, edges: Iterable[tuple[int, int]]) -> TreeDecomposition:
    edges = list(edges)
    if n == 0:
        return TreeDecomposition([frozenset()], [-1])
    order = min_fill_order(n, edges)
    pos = {v: i for i, v in enumerate(order)}
    adj = _adjacency(n, edges)
    bags, parent = [], []
    for v in order:
        nb = set(adj[v])
        bags.append(frozenset(nb | {v}))
        for u in nb:
            adj[u] |= nb - {u}
            adj[u].discard(v)
        parent.append(min(pos[u] for u in nb) if nb else -1)
    # hang every component root below the last node to get a single tree
    top = len(order) - 1
    for i in range(len(order) - 1):
        if parent[i] == -1:
            parent[i] = top
    return TreeDecomposition(bags, parent)


def nicify(td: TreeDecomposition) -> TreeDecomposition:
    """Convert to a nice decomposition with an empty root bag."""
    bags: list[frozenset[int]] = []
    parent: list[int] = []
    kinds: list[str] = []
    verts: list[int | None] = []

    def node(bag, kind, vertex=None):
        bags.append(frozenset(bag))
        parent.append(-1)
        kinds.append(kind)
        verts.append(vertex)
        return len(bags) - 1

    def chain(child: int, src: frozenset, dst: frozenset) -> int:
        """Forget src - dst then introduce dst - src above ``child``."""
        cur, bag = child, set(src)
        for v in sorted(src - dst):
            bag.discard(v)
            nxt = node(bag, FORGET, v)
            parent[cur] = nxt
            cur = nxt
        for v in sorted(dst - src):
            bag.add(v)
            nxt = node(bag, INTRODUCE, v)
            parent[cur] = nxt
            cur = nxt
        return cur

    ch = td.children()
    built: dict[int, int] = {}
    for v in td.postorder():
        X = td.bags[v]
        tops = [chain(built[c], td.bags[c], X) for c in ch[v]]
        if not tops:
            tops = [chain(node((), LEAF), frozenset(), X)]
        cur = tops[0]
        for t in tops[1:]:
            j = node(X, JOIN)
            parent[cur] = j
            parent[t] = j
            cur = j
        built[v] = cur
    root = chain(built[td.root], td.bags[td.root], frozenset())
    parent[root] = -1
    return TreeDecomposition(bags, parent, "nice", kinds, verts)


def decompose(n: int, edges: Iterable[tuple[int, int]]) -> TreeDecomposition:
    return nicify(raw_decomposition(n, list(edges)))


def check_decomposition(td: TreeDecomposition, n: int, edges: Iterable[tuple[int, int]]) -> str:
    """Empty string when ``td`` is a valid (nice, if marked so) decomposition; else a reason."""
    m = len(td.bags)
    if td.parent.count(-1) != 1:
        return "not a single rooted tree"
    # reachability from the root along child links
    ch = td.children()
    seen, stack = {td.root}, [td.root]
    while stack:
        for c in ch[stack.pop()]:
            if c in seen:
                return "cycle in tree links"
            seen.add(c)
            stack.append(c)
    if len(seen) != m:
        return "tree is disconnected"
    covered = set().union(*td.bags) if td.bags else set()
    if any(v not in covered for v in range(n)):
        return "vertex missing from every bag"
    for u, v in edges:
        if not any(u in b and v in b for b in td.bags):
            return f"edge ({u}, {v}) not covered"
    for v in range(n):
        holders = [i for i, b in enumerate(td.bags) if v in b]
        tops = [i for i in holders if td.parent[i] < 0 or v not in td.bags[td.parent[i]]]
        if len(tops) != 1:
            return f"bags holding {v} are not connected"
    if td.kind == "nice":
        for i, k in enumerate(td.node_kind):
            c = ch[i]
            b, x = td.bags[i], td.node_vertex[i]
            if k == LEAF and (c or b):
                return f"bad leaf {i}"
            if k == INTRODUCE and not (len(c) == 1 and x in b and td.bags[c[0]] == b - {x}):
                return f"bad introduce {i}"
            if k == FORGET and not (len(c) == 1 and x not in b and td.bags[c[0]] == b | {x}):
                return f"bad forget {i}"
            if k == JOIN and not (len(c) == 2 and all(td.bags[j] == b for j in c)):
                return f"bad join {i}"
        if td.bags[td.root]:
            return "root bag not empty"
    return ""


# ------------------------------------------------------------------- no gates

def independence_degree_threshold(alpha: float) -> float:
    return math.inf if alpha == 0 else (2.0 / alpha + 1.0) ** 2 - 1.0


def acyclicity_degree_threshold(alpha: float) -> float:
    return math.inf if alpha == 0 else 6.0 * (2.0 / alpha + 1.0) ** 2 - 1.0


def clique_degree_gate(inst: Instance) -> bool:
    """False when the unit-graph degree exceeds the variant's no-instance threshold."""
    if inst.problem.is_independence:
        thr = independence_degree_threshold(inst.alpha)
    elif inst.problem.is_acyclicity:
        thr = acyclicity_degree_threshold(inst.alpha)
    else:
        raise ValueError("degree gate applies to independence and acyclicity")
    return unit_graph(inst.points, model=inst.model).max_degree() <= thr


# ------------------------------------------------------------------------ DPs

def _requirement(cls: NuClass) -> float:
    return cls.count  # shrunk endpoints needed to delete the edge


def _edge_classes(inst: Instance) -> dict[tuple[int, int], NuClass]:
    g = unit_graph(inst.points, inst.alpha, inst.model)
    return {key: e.nu for key, e in g.edges.items()}


def _prepare(inst: Instance, td: TreeDecomposition | None):
    classes = _edge_classes(inst)
    if td is None:
        td = decompose(inst.n, classes)
    elif td.kind != "nice":
        td = nicify(td)
    adj = _adjacency(inst.n, classes)
    return classes, td, adj


def dp_independence(inst: Instance, td: TreeDecomposition | None = None) -> Verdict:
    """Minimum number of shrunk points (radius alpha) leaving no edge."""
    classes, td, adj = _prepare(inst, td)
    bad = next((e for e, c in classes.items() if c is NuClass.BOTTOM), None)
    if bad is not None:
        return Verdict.no("irremovable edge", edge=bad)
    return _finish(inst, _run_dp(td, adj, classes, partitions=False), td)


def dp_acyclicity(inst: Instance, td: TreeDecomposition | None = None) -> Verdict:
    """Minimum number of shrunk points (radius alpha) leaving a forest."""
    classes, td, adj = _prepare(inst, td)
    return _finish(inst, _run_dp(td, adj, classes, partitions=True), td)


def _finish(inst: Instance, best, td: TreeDecomposition) -> Verdict:
    stats = {"width": td.width}
    if best is None:
        return Verdict.no("no feasible shrink set", **stats)
    size, S = best
    stats["min_size"] = size
    if size > inst.k:
        return Verdict.no("minimum shrink set exceeds k", **stats)
    return Verdict(True, Solution.uniform(inst.n, S, inst.alpha), stats=stats)


def _canon(blocks: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(tuple(sorted(b)) for b in blocks if b))


def _run_dp(td: TreeDecomposition, adj: Sequence[set[int]], classes: dict, partitions: bool):
    """Generic bag DP. States are (shrunk bag subset, partition or None).

    Edges are checked at the forget node of whichever endpoint leaves first.
    Returns (min size, shrunk set) or None.
    """
    ch = td.children()
    tables: dict[int, dict] = {}
    back: dict[int, dict] = {}

    def cls_of(u, v):
        return classes[(min(u, v), max(u, v))]

    for i in td.postorder():
        kind, x, bag = td.node_kind[i], td.node_vertex[i], td.bags[i]
        table: dict = {}
        bp: dict = {}
        if kind == LEAF:
            table[(frozenset(), ())] = 0
        elif kind == INTRODUCE:
            for (S, part), c in tables[ch[i][0]].items():
                new_part = _canon(part + ((x,),)) if partitions else ()
                for shrink in (False, True):
                    key = (S | {x} if shrink else S, new_part)
                    val = c + shrink
                    if key not in table or val < table[key]:
                        table[key] = val
                        bp[key] = (S, part)
        elif kind == FORGET:
            for (S, part), c in tables[ch[i][0]].items():
                nbs = [u for u in adj[x] if u in bag]
                if partitions:
                    res = _forget_acyclic(x, S, part, nbs, cls_of)
                    if res is None:
                        continue
                    new_part = res
                else:
                    if not all((x in S) + (u in S) >= _requirement(cls_of(x, u)) for u in nbs):
                        continue
                    new_part = ()
                key = (S - {x}, new_part)
                if key not in table or c < table[key]:
                    table[key] = c
                    bp[key] = (S, part)
        elif kind == JOIN:
            left, right = tables[ch[i][0]], tables[ch[i][1]]
            by_set: dict = {}
            for (S, part), c in right.items():
                by_set.setdefault(S, []).append((part, c))
            for (S, part), c in left.items():
                for part2, c2 in by_set.get(S, ()):
                    merged = _merge(part, part2) if partitions else ()
                    if merged is None:
                        continue
                    key = (S, merged)
                    val = c + c2 - len(S)
                    if key not in table or val < table[key]:
                        table[key] = val
                        bp[key] = ((S, part), (S, part2))
        tables[i] = table
        back[i] = bp
        for c in ch[i]:
            del tables[c]
    root_table = tables[td.root]
    key = (frozenset(), ())
    if key not in root_table:
        return None
    # walk back pointers top-down to collect the shrunk set
    shrunk: set[int] = set()
    stack = [(td.root, key)]
    while stack:
        i, k = stack.pop()
        shrunk |= k[0]
        kind = td.node_kind[i]
        if kind == LEAF:
            continue
        if kind == JOIN:
            a, b = back[i][k]
            stack += [(ch[i][0], a), (ch[i][1], b)]
        else:
            stack.append((ch[i][0], back[i][k]))
    return root_table[key], shrunk


def _forget_acyclic(x, S, part, nbs, cls_of):
    """Add the residual edges of ``x`` to the bag partition, then drop ``x``."""
    parent = {v: b[0] for b in part for v in b}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u in nbs:
        need = _requirement(cls_of(x, u))
        if (x in S) + (u in S) >= need:
            continue  # edge deleted
        ru, rx = find(u), find(x)
        if ru == rx:
            return None
        parent[ru] = rx
    groups: dict[int, list[int]] = {}
    for v in parent:
        if v != x:
            groups.setdefault(find(v), []).append(v)
    return _canon(groups.values())


def _merge(p1, p2):
    parent = {}
    for b in p1:
        for v in b:
            parent[v] = b[0]

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for b in p2:
        for v in b[1:]:
            r1, r2 = find(b[0]), find(v)
            if r1 == r2:
                return None
            parent[r2] = r1
    groups: dict[int, list[int]] = {}
    for v in parent:
        groups.setdefault(find(v), []).append(v)
    return _canon(groups.values())


def solve_by_treewidth(inst: Instance) -> Verdict:
    """Degree gate, then the matching DP (cardinality variants only)."""
    if inst.problem.is_min:
        raise ValueError("the treewidth DPs solve the cardinality variants")
    if not clique_degree_gate(inst):
        return Verdict.no("degree above the no-instance threshold")
    if inst.problem.is_independence:
        return dp_independence(inst)
    if inst.problem.is_acyclicity:
        return dp_acyclicity(inst)
    raise ValueError("no treewidth DP for connectivity")
