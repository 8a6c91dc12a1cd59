"""Multigraphs with loops and parallel edges.

Edges are identified by their position in ``MultiGraph.edges``; every
per-edge vector in the package is a tuple aligned with that order.
Edge subsets are ``frozenset`` of edge indices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError

EdgeSubset = frozenset


class GraphFormatError(DomainError):
    """Malformed graph JSON; ``location`` says where."""

    def __init__(self, message: str, location: str):
        self.location = location
        super().__init__(f"{location}: {message}")


@dataclass(frozen=True)
class MultiGraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        n = len(self.vertices)
        if len(set(self.vertices)) != n:
            raise DomainError("duplicate vertex labels")
        for i, (u, v) in enumerate(self.edges):
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge {i} references a missing vertex")

    @classmethod
    def from_labels(cls, vertices: Sequence[str], edges: Iterable[Sequence[str]]) -> "MultiGraph":
        index = {label: i for i, label in enumerate(vertices)}
        out = []
        for i, (a, b) in enumerate(edges):
            if a not in index or b not in index:
                raise DomainError(f"edge {i} references an unknown vertex")
            out.append((index[a], index[b]))
        return cls(tuple(vertices), tuple(out))

    @classmethod
    def from_edges(cls, num_vertices: int, edges: Iterable[Sequence[int]]) -> "MultiGraph":
        """Graph on vertices "0".."n-1" from integer endpoint pairs."""
        return cls(tuple(str(i) for i in range(num_vertices)),
                   tuple((int(u), int(v)) for u, v in edges))

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def is_loop(self, e: int) -> bool:
        u, v = self.edges[e]
        return u == v

    def all_edges(self) -> frozenset:
        return frozenset(range(len(self.edges)))

    def edge_labels(self) -> list[tuple[str, str]]:
        return [(self.vertices[u], self.vertices[v]) for u, v in self.edges]

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices),
                "edges": [list(p) for p in self.edge_labels()]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def parse_graph(text: str) -> MultiGraph:
    """Parse the graph JSON format, raising GraphFormatError with a location."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from exc
    if not isinstance(obj, dict):
        raise GraphFormatError("top level must be an object", "$")
    verts = obj.get("vertices")
    if not isinstance(verts, list):
        raise GraphFormatError("'vertices' must be an array", "$.vertices")
    for i, label in enumerate(verts):
        if not isinstance(label, str):
            raise GraphFormatError("vertex labels must be strings", f"$.vertices[{i}]")
    seen = set()
    for i, label in enumerate(verts):
        if label in seen:
            raise GraphFormatError(f"duplicate vertex label {label!r}", f"$.vertices[{i}]")
        seen.add(label)
    edges = obj.get("edges", [])
    if not isinstance(edges, list):
        raise GraphFormatError("'edges' must be an array", "$.edges")
    index = {label: i for i, label in enumerate(verts)}
    pairs = []
    for i, e in enumerate(edges):
        if not isinstance(e, list) or len(e) != 2:
            raise GraphFormatError("edge must be a 2-element array", f"$.edges[{i}]")
        ends = []
        for j, label in enumerate(e):
            if not isinstance(label, str):
                raise GraphFormatError("endpoint must be a string label", f"$.edges[{i}][{j}]")
            if label not in index:
                raise GraphFormatError(f"unknown vertex label {label!r}", f"$.edges[{i}][{j}]")
            ends.append(index[label])
        pairs.append((ends[0], ends[1]))
    return MultiGraph(tuple(verts), tuple(pairs))


def load_graph(path) -> MultiGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


class _DSU:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def components(g: MultiGraph, edges: Iterable[int] | None = None) -> list[list[int]]:
    """Connected components as sorted vertex-index lists, ordered by least vertex."""
    dsu = _DSU(g.num_vertices)
    for e in (range(g.num_edges) if edges is None else edges):
        u, v = g.edges[e]
        dsu.union(u, v)
    blocks: dict[int, list[int]] = {}
    for v in range(g.num_vertices):
        blocks.setdefault(dsu.find(v), []).append(v)
    return sorted(blocks.values())


def num_components(g: MultiGraph, edges: Iterable[int] | None = None) -> int:
    return len(components(g, edges))


def rank(g: MultiGraph, edges: Iterable[int] | None = None) -> int:
    """r<X> = |V| - c<X>."""
    return g.num_vertices - num_components(g, edges)


def cycle_rank(g: MultiGraph, edges: Iterable[int] | None = None) -> int:
    """n<X> = |X| - |V| + c<X>."""
    es = list(range(g.num_edges)) if edges is None else list(edges)
    return len(es) - rank(g, es)


def bridges(g: MultiGraph) -> frozenset:
    """Edges whose removal increases the number of components."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.num_vertices)]
    for e, (u, v) in enumerate(g.edges):
        if u != v:
            adj[u].append((v, e))
            adj[v].append((u, e))
    disc = [-1] * g.num_vertices
    low = [0] * g.num_vertices
    found = set()
    timer = 0
    for root in range(g.num_vertices):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        # iterative DFS; parent edge tracked by index so parallel edges count
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, pe, it = stack[-1]
            advanced = False
            for w, e in it:
                if e == pe:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, e, iter(adj[w])))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[v])
                if low[v] > disc[parent]:
                    found.add(pe)
    return frozenset(found)


def is_bridgeless(g: MultiGraph) -> bool:
    return not bridges(g)


def cyclic_part(g: MultiGraph) -> frozenset:
    """Edges lying on at least one circuit (loops included)."""
    return g.all_edges() - bridges(g)


@dataclass(frozen=True)
class SpanningForest:
    """Maximal spanning forest chosen greedily by ascending edge index."""

    graph: MultiGraph
    tree: tuple[int, ...]
    cotree: tuple[int, ...]

    def tree_path(self, a: int, b: int) -> list[tuple[int, int, int]]:
        """Tree path from ``a`` to ``b`` as (edge, from_vertex, to_vertex) steps."""
        g = self.graph
        adj: dict[int, list[tuple[int, int]]] = {}
        for e in self.tree:
            u, v = g.edges[e]
            adj.setdefault(u, []).append((v, e))
            adj.setdefault(v, []).append((u, e))
        prev: dict[int, tuple[int, int]] = {a: (-1, -1)}
        stack = [a]
        while stack:
            x = stack.pop()
            if x == b:
                break
            for y, e in adj.get(x, ()):
                if y not in prev:
                    prev[y] = (x, e)
                    stack.append(y)
        if b not in prev:
            raise DomainError(f"vertices {a} and {b} are not joined by the forest")
        steps = []
        x = b
        while x != a:
            px, e = prev[x]
            steps.append((e, px, x))
            x = px
        steps.reverse()
        return steps


def maximal_spanning_forest(g: MultiGraph) -> SpanningForest:
    dsu = _DSU(g.num_vertices)
    tree, cotree = [], []
    for e, (u, v) in enumerate(g.edges):
        if dsu.union(u, v):
            tree.append(e)
        else:
            cotree.append(e)
    return SpanningForest(g, tuple(tree), tuple(cotree))


def fundamental_circuit(g: MultiGraph, forest: SpanningForest, e: int, ref) -> tuple[int, ...]:
    """Signed indicator of the fundamental circuit of co-tree edge ``e``.

    The circuit is traversed in the direction ``ref`` gives ``e``; an entry is
    +1 where ``ref`` agrees with that traversal and -1 where it opposes it.
    The result is a flow of ``(g, ref)``.
    """
    if e not in forest.cotree:
        raise DomainError(f"edge {e} is not a co-tree edge")
    vec = [0] * g.num_edges
    vec[e] = 1
    if g.is_loop(e):
        return tuple(vec)
    tail, head = ref.ends(g, e)
    for x, a, b in forest.tree_path(head, tail):
        xt, _ = ref.ends(g, x)
        vec[x] = 1 if xt == a else -1
    return tuple(vec)


def _remap(g: MultiGraph, keep: list[int], merge: Iterable[int]) -> MultiGraph:
    dsu = _DSU(g.num_vertices)
    for e in merge:
        u, v = g.edges[e]
        dsu.union(u, v)
    roots = sorted({dsu.find(v) for v in range(g.num_vertices)})
    new_index = {r: i for i, r in enumerate(roots)}
    labels = tuple(g.vertices[r] for r in roots)
    edges = tuple((new_index[dsu.find(g.edges[e][0])], new_index[dsu.find(g.edges[e][1])])
                  for e in keep)
    return MultiGraph(labels, edges)


def delete(g: MultiGraph, X: Iterable[int]) -> MultiGraph:
    drop = set(X)
    return MultiGraph(g.vertices, tuple(p for e, p in enumerate(g.edges) if e not in drop))


def induced(g: MultiGraph, X: Iterable[int]) -> MultiGraph:
    """Spanning subgraph (V, X)."""
    keep = set(X)
    return MultiGraph(g.vertices, tuple(p for e, p in enumerate(g.edges) if e in keep))


def contract(g: MultiGraph, X: Iterable[int]) -> MultiGraph:
    """Merge the endpoints of every edge of X, then drop X; new loops are kept.

    A merged vertex takes the label of its least-index member.
    """
    drop = set(X)
    keep = [e for e in range(g.num_edges) if e not in drop]
    return _remap(g, keep, drop)
