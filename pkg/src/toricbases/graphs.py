"""Column and row graphs of sparse matrices, elimination orderings, chordal
completions, elimination trees, and treewidth/treedepth estimates.

The elimination structure computed here is the backbone of the kernel-lattice
join tree: the clique of each vertex becomes a bag, and the elimination-tree
parent relation becomes the tree.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .core import SparseIntMatrix


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..num_vertices-1."""

    num_vertices: int
    edges: frozenset[tuple[int, int]]

    @classmethod
    def from_edges(cls, num_vertices: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        norm = set()
        for a, b in edges:
            a, b = int(a), int(b)
            if a == b:
                raise ValueError(f"self-loop at vertex {a}")
            if not (0 <= a < num_vertices and 0 <= b < num_vertices):
                raise ValueError(f"edge ({a},{b}) out of range")
            norm.add((a, b) if a < b else (b, a))
        return cls(num_vertices, frozenset(norm))

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.num_vertices)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def num_edges(self) -> int:
        return len(self.edges)

    def has_edge(self, a: int, b: int) -> bool:
        return ((a, b) if a < b else (b, a)) in self.edges


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def star_graph(n: int) -> Graph:
    """Star on n vertices with center 0."""
    return Graph.from_edges(n, ((0, i) for i in range(1, n)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def column_graph(A: SparseIntMatrix) -> Graph:
    """Graph on the columns of A; two columns are adjacent when some row has
    nonzeros in both."""
    edges = set()
    for i in range(A.num_rows):
        support = [j for j, _ in A.row(i)]
        edges.update(combinations(support, 2))
    return Graph.from_edges(A.num_cols, edges)


def row_graph(A: SparseIntMatrix) -> Graph:
    """Graph on the rows of A; equals the column graph of the transpose."""
    return column_graph(A.transpose())


# ---------------------------------------------------------------------------
# elimination


@dataclass(frozen=True)
class EliminationStructure:
    """Result of eliminating a graph along a fixed vertex ordering.

    ``cliques[l]`` is the vertex eliminated at step l together with its
    not-yet-eliminated neighbours in the completed graph; each such set is a
    clique of the completion.  The parent of the step-l vertex is the member
    of its clique eliminated soonest after it; vertices whose clique is a
    singleton are roots (the completion of a disconnected graph yields a
    forest).
    """

    ordering: tuple[int, ...]
    position: dict[int, int]
    cliques: tuple[frozenset[int], ...]
    fill_edges: frozenset[tuple[int, int]]
    clique_number: int
    parent: dict[int, int | None]
    height: int

    def children(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {v: [] for v in self.ordering}
        for v, p in self.parent.items():
            if p is not None:
                out[p].append(v)
        for v in out:
            out[v].sort(key=self.position.__getitem__)
        return out

    def roots(self) -> list[int]:
        return [v for v in self.ordering if self.parent[v] is None]

    @property
    def width(self) -> int:
        return self.clique_number - 1


def eliminate(graph: Graph, ordering: Sequence[int]) -> EliminationStructure:
    """Chordally complete the graph along the ordering and build the
    elimination tree."""
    n = graph.num_vertices
    ordering = tuple(int(v) for v in ordering)
    if sorted(ordering) != list(range(n)):
        raise ValueError("ordering must be a permutation of the vertices")
    position = {v: l for l, v in enumerate(ordering)}

    adj = graph.adjacency()
    fill: set[tuple[int, int]] = set()
    cliques: list[frozenset[int]] = []
    for v in ordering:
        later = sorted(adj[v])
        cliques.append(frozenset([v] + later))
        for a, b in combinations(later, 2):
            if b not in adj[a]:
                adj[a].add(b)
                adj[b].add(a)
                fill.add((a, b) if a < b else (b, a))
        for w in later:
            adj[w].discard(v)
        adj[v].clear()

    parent: dict[int, int | None] = {}
    for l, v in enumerate(ordering):
        rest = cliques[l] - {v}
        parent[v] = min(rest, key=position.__getitem__) if rest else None

    depth: dict[int, int] = {}
    for v in reversed(ordering):
        p = parent[v]
        depth[v] = 1 if p is None else depth[p] + 1
    height = max(depth.values(), default=0)

    return EliminationStructure(
        ordering=ordering,
        position=position,
        cliques=tuple(cliques),
        fill_edges=frozenset(fill),
        clique_number=max((len(c) for c in cliques), default=0),
        parent=parent,
        height=height,
    )


# ---------------------------------------------------------------------------
# ordering heuristics

MIN_DEGREE = "min-degree"
MIN_FILL = "min-fill"
GIVEN = "given"


def min_degree_ordering(graph: Graph) -> tuple[int, ...]:
    """Greedy minimum-degree elimination; ties broken by lowest vertex index."""
    adj = graph.adjacency()
    remaining = set(range(graph.num_vertices))
    order = []
    while remaining:
        v = min(remaining, key=lambda u: (len(adj[u]), u))
        order.append(v)
        nbrs = sorted(adj[v])
        for a, b in combinations(nbrs, 2):
            adj[a].add(b)
            adj[b].add(a)
        for w in nbrs:
            adj[w].discard(v)
        adj[v].clear()
        remaining.discard(v)
    return tuple(order)


def min_fill_ordering(graph: Graph) -> tuple[int, ...]:
    """Greedy minimum-fill elimination; ties broken by lowest vertex index."""
    adj = graph.adjacency()
    remaining = set(range(graph.num_vertices))

    def fill_count(u: int) -> int:
        nbrs = sorted(adj[u])
        return sum(1 for a, b in combinations(nbrs, 2) if b not in adj[a])

    order = []
    while remaining:
        v = min(remaining, key=lambda u: (fill_count(u), u))
        order.append(v)
        nbrs = sorted(adj[v])
        for a, b in combinations(nbrs, 2):
            adj[a].add(b)
            adj[b].add(a)
        for w in nbrs:
            adj[w].discard(v)
        adj[v].clear()
        remaining.discard(v)
    return tuple(order)


def heuristic_ordering(
    graph: Graph, strategy: str, given: Sequence[int] | None = None
) -> tuple[int, ...]:
    if strategy == MIN_DEGREE:
        return min_degree_ordering(graph)
    if strategy == MIN_FILL:
        return min_fill_ordering(graph)
    if strategy == GIVEN:
        if given is None:
            raise ValueError("strategy 'given' requires an explicit ordering")
        ordering = tuple(int(v) for v in given)
        if sorted(ordering) != list(range(graph.num_vertices)):
            raise ValueError("given ordering is not a permutation of the vertices")
        return ordering
    raise ValueError(f"unknown ordering strategy {strategy!r}")


def treewidth_estimate(graph: Graph, ordering: Sequence[int]) -> int:
    """Upper bound on the treewidth: clique number of the completion, minus one."""
    return eliminate(graph, ordering).clique_number - 1


def treedepth_estimate(graph: Graph, ordering: Sequence[int]) -> int:
    """Upper bound on the treedepth: height of the elimination tree."""
    return eliminate(graph, ordering).height


# ---------------------------------------------------------------------------
# exact searches (small graphs only)


def exact_width_ordering(graph: Graph, k: int) -> tuple[int, ...] | None:
    """An elimination ordering whose completion has clique number <= k+1, or
    None if no such ordering exists.

    Branch-and-bound over elimination prefixes with memoisation on the set of
    eliminated vertices (the filled graph depends only on that set, not on
    the order within it).  Intended for graphs with at most ~20 vertices.
    """
    n = graph.num_vertices
    if n == 0:
        return ()
    base = graph.adjacency()
    failed: set[int] = set()

    def search(adj: list[set[int]], mask: int, prefix: list[int]) -> tuple[int, ...] | None:
        if len(prefix) == n:
            return tuple(prefix)
        if mask in failed:
            return None
        for v in range(n):
            if mask >> v & 1:
                continue
            nbrs = adj[v]
            if len(nbrs) > k:
                continue
            nxt = [s.copy() for s in adj]
            ordered = sorted(nbrs)
            for a, b in combinations(ordered, 2):
                nxt[a].add(b)
                nxt[b].add(a)
            for w in ordered:
                nxt[w].discard(v)
            nxt[v].clear()
            prefix.append(v)
            found = search(nxt, mask | (1 << v), prefix)
            if found is not None:
                return found
            prefix.pop()
        failed.add(mask)
        return None

    return search(base, 0, [])


def exact_depth_ordering(graph: Graph, k: int) -> tuple[int, ...] | None:
    """An elimination ordering whose elimination tree has height <= k, or None.

    Exhaustive recursion on connected subgraphs, memoised on vertex subsets;
    limited to 12 vertices (beyond that, use the heuristics).
    """
    n = graph.num_vertices
    if n > 12:
        raise ValueError("exact treedepth search is limited to 12 vertices")
    if n == 0:
        return ()
    adj = graph.adjacency()

    def components(mask: int) -> list[int]:
        comps = []
        todo = mask
        while todo:
            start = (todo & -todo).bit_length() - 1
            comp = 1 << start
            stack = [start]
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    bit = 1 << w
                    if mask & bit and not comp & bit:
                        comp |= bit
                        stack.append(w)
            comps.append(comp)
            todo &= ~comp
        return comps

    @lru_cache(maxsize=None)
    def best(mask: int) -> tuple[int, tuple[int, ...]]:
        if mask == 0:
            return 0, ()
        comps = components(mask)
        if len(comps) > 1:
            depth = 0
            order: tuple[int, ...] = ()
            for comp in sorted(comps):
                d, o = best(comp)
                depth = max(depth, d)
                order = order + o
            return depth, order
        best_depth, best_order = None, None
        for v in range(n):
            if not mask >> v & 1:
                continue
            d, o = best(mask & ~(1 << v))
            if best_depth is None or d + 1 < best_depth:
                best_depth, best_order = d + 1, o + (v,)
        assert best_depth is not None and best_order is not None
        return best_depth, best_order

    depth, order = best((1 << n) - 1)
    return order if depth <= k else None


def recursive_median_ordering(n: int) -> tuple[int, ...]:
    """Elimination ordering of the n-vertex path 0-1-...-(n-1) that realises
    elimination-tree height ceil(log2(n+1)): recurse into the two halves and
    eliminate the midpoint last."""

    def rec(lo: int, hi: int) -> list[int]:
        if lo > hi:
            return []
        mid = (lo + hi) // 2
        return rec(lo, mid - 1) + rec(mid + 1, hi) + [mid]

    return tuple(rec(0, n - 1))


# ---------------------------------------------------------------------------
# graph file format (one 0-based edge "u v" per line)


def edge_list_from_text(text: str) -> Graph:
    edges = []
    hi = -1
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line: {ln!r}")
        a, b = int(parts[0]), int(parts[1])
        edges.append((a, b))
        hi = max(hi, a, b)
    return Graph.from_edges(hi + 1, edges)


def edge_list_to_text(graph: Graph) -> str:
    return "".join(f"{a} {b}\n" for a, b in sorted(graph.edges))
