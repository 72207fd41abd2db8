"""Signed bipartite multigraphs induced by Seifert surfaces, and rooted spanning trees over them."""

import enum
import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx

from .errors import NonBipartiteError, ParseError, PreconditionError

log = logging.getLogger("plumb.seifgraph")


class PathRule(enum.Enum):
    """How a coedge's fundamental path is reduced to a single sign"""

    SUM = "sum"
    PRODUCT = "product"


def sign_char(sign: int) -> str:
    return "+" if sign > 0 else "-"


@dataclass(frozen=True)
class Edge:
    id: int
    u: str
    v: str
    sign: int

    def other(self, x: str) -> str:
        return self.v if x == self.u else self.u


@dataclass(frozen=True)
class SignedMultigraph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    components: int | None = None
    side: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise PreconditionError("Duplicate vertex label")
        if len({e.id for e in self.edges}) != len(self.edges):
            raise PreconditionError("Duplicate edge id")
        known = set(self.vertices)
        for e in self.edges:
            if e.u not in known or e.v not in known:
                raise PreconditionError(f"Edge {e.id} references an unknown vertex")
            if e.u == e.v:
                raise PreconditionError(f"Edge {e.id} is a loop at {e.u}")
            if e.sign not in (1, -1):
                raise PreconditionError(f"Edge {e.id} has sign {e.sign}")
        if self.components is not None and self.components < 1:
            raise PreconditionError("Components hint must be positive")
        object.__setattr__(self, "side", _bipartition(self))

    @cached_property
    def as_networkx(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.vertices)
        for e in self.edges:
            graph.add_edge(e.u, e.v, key=e.id, sign=e.sign)
        return graph

    @cached_property
    def _index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _by_id(self) -> dict[int, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def _incidence(self) -> dict[str, tuple[Edge, ...]]:
        incident: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            incident[e.u].append(e)
            incident[e.v].append(e)
        # neighbours in vertex order, parallel edges by id
        return {
            v: tuple(sorted(es, key=lambda e: (self._index[e.other(v)], e.id)))
            for v, es in incident.items()
        }

    def __contains__(self, v: object) -> bool:
        return v in self._index

    def index(self, v: str) -> int:
        return self._index[v]

    def edge(self, eid: int) -> Edge:
        return self._by_id[eid]

    def incident(self, v: str) -> tuple[Edge, ...]:
        return self._incidence[v]

    def degree(self, v: str) -> int:
        return len(self._incidence[v])

    def is_connected(self) -> bool:
        return bool(self.vertices) and nx.is_connected(self.as_networkx)


def _bipartition(g: SignedMultigraph) -> dict[str, int]:
    """Colour each component by distance parity from its first vertex in input order"""
    graph = nx.MultiGraph()
    graph.add_nodes_from(g.vertices)
    graph.add_edges_from((e.u, e.v) for e in g.edges)
    side: dict[str, int] = {}
    for start in g.vertices:
        if start in side:
            continue
        dist = nx.single_source_shortest_path_length(graph, start)
        for v, d in dist.items():
            side[v] = d % 2
        for e in g.edges:
            if e.u in dist and side[e.u] == side[e.v]:
                raise NonBipartiteError(
                    f"Graph is not bipartite: edge {e.id} closes an odd cycle",
                    _odd_cycle(graph, start, e.u, e.v),
                )
    return side


def _odd_cycle(graph: nx.MultiGraph, start: str, u: str, v: str) -> list[str]:
    pred = dict(nx.bfs_predecessors(graph, start))

    def _up(x: str) -> list[str]:
        path = [x]
        while path[-1] != start:
            path.append(pred[path[-1]])
        return path

    up_u, up_v = _up(u), _up(v)
    while len(up_u) > 1 and len(up_v) > 1 and up_u[-2] == up_v[-2]:
        up_u.pop()
        up_v.pop()
    return up_u + up_v[-2::-1]


def parse_graph(text: str) -> SignedMultigraph:
    """Parse a graph file.

    Lines are ``vertex <name>``, ``edge <u> <v> <+|->`` and an optional
    ``components <l>``. Edges must name vertices declared before them; edge ids are
    assigned in file order starting at 0. Blank lines and ``#`` comments are ignored.

    Raises:
        ParseError: On malformed lines, loops, unknown or duplicate vertices.
        NonBipartiteError: If the graph has an odd cycle.
    """
    vertices: list[str] = []
    known: set[str] = set()
    edges: list[Edge] = []
    components = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        match parts:
            case ["vertex", name]:
                if name in known:
                    raise ParseError(f"Line {lineno}: duplicate vertex {name!r}")
                known.add(name)
                vertices.append(name)
            case ["edge", u, v, sign]:
                for x in (u, v):
                    if x not in known:
                        raise ParseError(f"Line {lineno}: unknown vertex {x!r}")
                if u == v:
                    raise ParseError(f"Line {lineno}: loop at {u!r}")
                if sign not in ("+", "-"):
                    raise ParseError(f"Line {lineno}: bad sign {sign!r}")
                edges.append(Edge(len(edges), u, v, 1 if sign == "+" else -1))
            case ["components", count]:
                if not count.isdigit() or int(count) < 1:
                    raise ParseError(f"Line {lineno}: components must be a positive integer")
                components = int(count)
            case _:
                raise ParseError(f"Line {lineno}: malformed line {line!r}")
    g = SignedMultigraph(tuple(vertices), tuple(edges), components)
    log.debug(f"Loaded graph with {len(vertices)} vertices and {len(edges)} edges")
    return g


def render_graph(g: SignedMultigraph) -> str:
    lines = [f"vertex {v}" for v in g.vertices]
    lines += [f"edge {e.u} {e.v} {sign_char(e.sign)}" for e in sorted(g.edges, key=lambda e: e.id)]
    if g.components is not None:
        lines.append(f"components {g.components}")
    return "\n".join(lines) + "\n"


def prune_pendants(g: SignedMultigraph) -> tuple[SignedMultigraph, int]:
    """Repeatedly delete degree-1 vertices with their edge; surviving edge ids are kept"""
    vertices = list(g.vertices)
    edges = list(g.edges)
    removed = 0
    while True:
        degree = {v: 0 for v in vertices}
        for e in edges:
            degree[e.u] += 1
            degree[e.v] += 1
        pendant = next((v for v in vertices if degree[v] == 1), None)
        if pendant is None:
            break
        vertices.remove(pendant)
        edges = [e for e in edges if pendant not in (e.u, e.v)]
        removed += 1
    if removed:
        log.info(f"Pruned {removed} pendant vertices")
    return SignedMultigraph(tuple(vertices), tuple(edges), g.components), removed


@dataclass(frozen=True)
class RootedTree:
    graph: SignedMultigraph = field(repr=False)
    root: str
    tree_edges: frozenset[int]
    parent: dict[str, tuple[str, int] | None]
    depth: dict[str, int]

    def edge_depth(self, eid: int) -> int:
        e = self.graph.edge(eid)
        return max(self.depth[e.u], self.depth[e.v])

    @property
    def coedges(self) -> list[int]:
        return [e.id for e in self.graph.edges if e.id not in self.tree_edges]

    def sorted_edges(self) -> list[int]:
        return sorted(self.tree_edges)


def rooted_tree(g: SignedMultigraph, tree_edges, root: str) -> RootedTree:
    """Root a spanning tree given by its edge ids.

    Raises:
        PreconditionError: If the root is unknown or the edges do not form a spanning tree.
    """
    if root not in g:
        raise PreconditionError(f"Unknown root {root!r}")
    tree_edges = frozenset(tree_edges)
    if len(tree_edges) != len(g.vertices) - 1:
        raise PreconditionError(
            f"A spanning tree needs {len(g.vertices) - 1} edges, got {len(tree_edges)}"
        )
    parent: dict[str, tuple[str, int] | None] = {root: None}
    depth = {root: 0}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for e in g.incident(x):
            if e.id not in tree_edges:
                continue
            y = e.other(x)
            if y in depth:
                continue
            parent[y] = (x, e.id)
            depth[y] = depth[x] + 1
            queue.append(y)
    if len(depth) != len(g.vertices):
        raise PreconditionError("Edges do not span the graph")
    return RootedTree(g, root, tree_edges, parent, depth)


def bfs_tree(g: SignedMultigraph, root: str) -> RootedTree:
    """Breadth-first spanning tree; neighbours in vertex order, parallel edges by id"""
    seen = {root}
    chosen: list[int] = []
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for e in g.incident(x):
            y = e.other(x)
            if y not in seen:
                seen.add(y)
                chosen.append(e.id)
                queue.append(y)
    return rooted_tree(g, chosen, root)


@dataclass(frozen=True)
class EdgeColoring:
    kappa: dict[int, int]
    flipped: bool = False

    def __getitem__(self, eid: int) -> int:
        return self.kappa[eid]

    def flip(self) -> "EdgeColoring":
        return EdgeColoring({eid: -s for eid, s in self.kappa.items()}, not self.flipped)


def depth_coloring(t: RootedTree, flipped: bool = False) -> EdgeColoring:
    factor = -1 if flipped else 1
    kappa = {eid: factor * (-1) ** t.edge_depth(eid) for eid in sorted(t.tree_edges)}
    return EdgeColoring(kappa, flipped)


def lca(t: RootedTree, u: str, v: str) -> str:
    while t.depth[u] > t.depth[v]:
        u = t.parent[u][0]
    while t.depth[v] > t.depth[u]:
        v = t.parent[v][0]
    while u != v:
        u = t.parent[u][0]
        v = t.parent[v][0]
    return u


def _climb(t: RootedTree, x: str, top: str) -> list[int]:
    """Edge ids from x up to its ancestor top"""
    path = []
    while x != top:
        x, eid = t.parent[x]
        path.append(eid)
    return path


def fundamental_path(t: RootedTree, e: int) -> list[int]:
    """Tree path joining the endpoints of coedge ``e``, ordered from its first endpoint

    Raises:
        PreconditionError: If ``e`` is a tree edge.
    """
    if e in t.tree_edges:
        raise PreconditionError(f"Edge {e} is a tree edge")
    edge = t.graph.edge(e)
    top = lca(t, edge.u, edge.v)
    return _climb(t, edge.u, top) + _climb(t, edge.v, top)[::-1]


def is_alternating(path: list[int], kappa: EdgeColoring) -> bool:
    return all(kappa[a] != kappa[b] for a, b in zip(path, path[1:]))


def path_sign(path: list[int], kappa: EdgeColoring) -> int:
    sign = 1
    for eid in path:
        sign *= kappa[eid]
    return sign


def path_sum_sign(path: list[int], kappa: EdgeColoring) -> int:
    total = sum(kappa[eid] for eid in path)
    if total == 0:
        raise PreconditionError("Path sum is zero; fundamental paths have odd length")
    return 1 if total > 0 else -1


def reduce_path(path: list[int], kappa: EdgeColoring, rule: PathRule) -> int:
    if rule is PathRule.PRODUCT:
        return path_sign(path, kappa)
    return path_sum_sign(path, kappa)


def is_valid_pair(g: SignedMultigraph, t: RootedTree) -> bool:
    """True iff every fundamental path alternates under the depth coloring"""
    kappa = depth_coloring(t)
    return all(is_alternating(fundamental_path(t, e), kappa) for e in t.coedges)


@dataclass(frozen=True)
class SeifertStats:
    s: int
    c: int
    l: int  # noqa: E741
    g_c: int

    def as_dict(self) -> dict:
        return {"s": self.s, "c": self.c, "l": self.l, "g_c": self.g_c}


def seifert_stats(g: SignedMultigraph, l: int) -> SeifertStats:  # noqa: E741
    """Diagram statistics with the canonical genus from the Euler characteristic

    Raises:
        PreconditionError: If ``l`` is not positive or ``c - s + 2 - l`` is odd or negative.
    """
    if l < 1:
        raise PreconditionError(f"Component count must be positive, got {l}")
    s, c = len(g.vertices), len(g.edges)
    twice_genus = c - s + 2 - l
    if twice_genus < 0 or twice_genus % 2:
        raise PreconditionError(
            f"c - s + 2 - l = {twice_genus} must be even and nonnegative; "
            f"{l} components is inconsistent with this graph"
        )
    return SeifertStats(s, c, l, twice_genus // 2)
