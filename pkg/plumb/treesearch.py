"""LCA-guided edge swaps that reach a valid (tree, root) pair, plus spanning-tree enumeration."""

import logging
from collections.abc import Iterator
from dataclasses import dataclass

from sympy import Matrix

from .common import DEFAULT_CAP
from .errors import CapExceededError, InvariantError, PreconditionError
from .seifgraph import RootedTree, SignedMultigraph, bfs_tree, lca, rooted_tree

log = logging.getLogger("plumb.treesearch")


@dataclass(frozen=True)
class SwapStep:
    removed: int
    inserted: int
    eta_before: int
    eta_after: int


@dataclass(frozen=True)
class SwapTrace:
    root: str
    steps: tuple[SwapStep, ...]
    final_tree: RootedTree


def eta(t: RootedTree) -> int:
    """Sum of vertex depths"""
    return sum(t.depth.values())


def offending_coedges(g: SignedMultigraph, t: RootedTree) -> list[int]:
    """Coedges whose endpoints' least common ancestor is neither endpoint.

    Ordered by the ancestor's depth, then endpoint positions in the vertex list,
    then edge id.
    """
    found = []
    for eid in t.coedges:
        e = g.edge(eid)
        top = lca(t, e.u, e.v)
        if top in (e.u, e.v):
            continue
        ends = tuple(sorted((g.index(e.u), g.index(e.v))))
        found.append(((t.depth[top], ends, eid), eid))
    return [eid for _, eid in sorted(found)]


def swap_step(g: SignedMultigraph, t: RootedTree, f: int) -> RootedTree:
    """Insert coedge ``f`` and drop the ancestor's child edge on the shorter half of its path.

    Raises:
        PreconditionError: If ``f`` is not an offending coedge.
        InvariantError: If the swap fails to increase the depth sum.
    """
    if f in t.tree_edges:
        raise PreconditionError(f"Edge {f} is a tree edge")
    e = g.edge(f)
    top = lca(t, e.u, e.v)
    if top in (e.u, e.v):
        raise PreconditionError(f"Coedge {f} has an endpoint as its ancestor")
    len_u = t.depth[e.u] - t.depth[top]
    len_v = t.depth[e.v] - t.depth[top]
    if len_u == len_v:
        raise InvariantError(f"Coedge {f} has two halves of equal length {len_u}")
    x = e.u if len_u < len_v else e.v
    while t.parent[x][0] != top:
        x = t.parent[x][0]
    child_edge = t.parent[x][1]
    swapped = rooted_tree(g, (t.tree_edges - {child_edge}) | {f}, t.root)
    before, after = eta(t), eta(swapped)
    if after <= before:
        raise InvariantError(f"Swap {child_edge}->{f} did not increase eta ({before} -> {after})")
    return swapped


def construct_valid_pair(g: SignedMultigraph, root: str) -> SwapTrace:
    """Swap from the breadth-first tree at ``root`` until no coedge offends.

    The offending list is recomputed after every swap and the first entry is used.

    Raises:
        PreconditionError: If the graph is disconnected or the root is unknown.
        InvariantError: If the iteration guard of ``|V|**3`` swaps is exceeded.
    """
    if root not in g:
        raise PreconditionError(f"Unknown root {root!r}")
    if not g.is_connected():
        raise PreconditionError("Graph is not connected")
    t = bfs_tree(g, root)
    guard = max(1, len(g.vertices) ** 3)
    steps: list[SwapStep] = []
    while offending := offending_coedges(g, t):
        if len(steps) >= guard:
            raise InvariantError(f"No valid pair after {guard} swaps from root {root}")
        f = offending[0]
        swapped = swap_step(g, t, f)
        removed = next(iter(t.tree_edges - swapped.tree_edges))
        step = SwapStep(removed, f, eta(t), eta(swapped))
        log.debug(f"Root {root}: swapped out {removed} for {f}, eta {step.eta_before} -> {step.eta_after}")
        steps.append(step)
        t = swapped
    log.debug(f"Root {root}: valid pair after {len(steps)} swaps")
    return SwapTrace(root, tuple(steps), t)


def construct_any_root(g: SignedMultigraph) -> SwapTrace:
    for root in g.vertices:
        return construct_valid_pair(g, root)
    raise PreconditionError("Graph has no vertices")


def enumerate_spanning_trees(g: SignedMultigraph, cap: int = DEFAULT_CAP) -> Iterator[tuple[int, ...]]:
    """Yield every spanning tree once as a sorted tuple of edge ids, in lexicographic order.

    Args:
        g (SignedMultigraph): The graph; a disconnected graph yields nothing.
        cap (int, optional): Largest edge count accepted. Defaults to 20.

    Raises:
        CapExceededError: If the graph has more than ``cap`` edges.
    """
    if len(g.edges) > cap:
        raise CapExceededError(f"{len(g.edges)} edges exceeds the enumeration cap of {cap}")
    n = len(g.vertices)
    if n == 0:
        return
    need = n - 1
    ids = sorted(e.id for e in g.edges)
    ends = [(g.index(g.edge(eid).u), g.index(g.edge(eid).v)) for eid in ids]
    # union-find without path compression so unions roll back in LIFO order
    parent = list(range(n))
    size = [1] * n
    chosen: list[int] = []

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    def extend(start: int) -> Iterator[tuple[int, ...]]:
        if len(chosen) == need:
            yield tuple(chosen)
            return
        for pos in range(start, len(ids) - (need - len(chosen)) + 1):
            a, b = find(ends[pos][0]), find(ends[pos][1])
            if a == b:
                continue
            if size[a] < size[b]:
                a, b = b, a
            parent[b] = a
            size[a] += size[b]
            chosen.append(ids[pos])
            yield from extend(pos + 1)
            chosen.pop()
            size[a] -= size[b]
            parent[b] = b

    yield from extend(0)


def matrix_tree_count(g: SignedMultigraph) -> int:
    """Spanning-tree count from a Laplacian cofactor, in exact integer arithmetic"""
    n = len(g.vertices)
    if n <= 1:
        return n
    laplacian = [[0] * n for _ in range(n)]
    for e in g.edges:
        i, j = g.index(e.u), g.index(e.v)
        laplacian[i][i] += 1
        laplacian[j][j] += 1
        laplacian[i][j] -= 1
        laplacian[j][i] -= 1
    minor = Matrix([row[1:] for row in laplacian[1:]])
    return int(minor.det(method="bareiss"))
