import os
import random

from dotenv import load_dotenv

from plumb.common import DEFAULT_SEED
from plumb.seifgraph import Edge, SignedMultigraph

load_dotenv()

SEED = int(os.environ.get("PLUMB_SEED", DEFAULT_SEED))

FIG8_BRAID = "strands 3\nword 1 2 1 2\n"
B4_BRAID = "# four-strand example\nstrands 4\nword 1 2 3 -1 2 1 1 -2 3 2 2 -3 2 3 3\n"
SEVEN_FIVE_BRAID = "strands 3\nword 1 2 -1 2 2 1 1 1\n"

# edge ids: 0,1 a-b; 2,3,4 b-c; 5 a-d; 6 d-c
SEVEN_FIVE_GRAPH = """\
# Seifert graph of the alternating 7_5 diagram
vertex a
vertex b
vertex c
vertex d
edge a b +
edge a b +
edge b c +
edge b c +
edge b c +
edge a d -
edge d c -
components 1
"""

# edge 0 (v-v1) is pendant; c - s is even, so l is too
FIG8_GRAPH = """\
vertex v
vertex v1
vertex v2
vertex v3
vertex v4
vertex v5
vertex v6
vertex v7
edge v v1 +
edge v v2 +
edge v v3 +
edge v v4 +
edge v2 v5 -
edge v2 v6 -
edge v3 v6 +
edge v4 v6 +
edge v5 v7 -
edge v6 v7 -
components 2
"""

PATH3_GRAPH = "vertex x\nvertex y\nvertex z\nedge x y +\nedge y z -\n"
TRIANGLE_GRAPH = "vertex x\nvertex y\nvertex z\nedge x y +\nedge y z +\nedge x z -\n"
SQUARE_GRAPH = "vertex p\nvertex q\nvertex r\nvertex s\nedge p q +\nedge q r -\nedge r s +\nedge s p -\n"


def random_graph(rng: random.Random, max_vertices: int = 10, max_edges: int = 15) -> SignedMultigraph:
    """Connected bipartite signed multigraph: a random tree plus extra cross edges"""
    n = rng.randint(1, max_vertices)
    n = min(n, max_edges + 1)
    side = [0]
    ends = []
    for i in range(1, n):
        p = rng.randrange(i)
        side.append(1 - side[p])
        ends.append((p, i))
    if n > 1:
        extra = rng.randint(0, max_edges - len(ends))
        left = [i for i in range(n) if side[i] == 0]
        right = [i for i in range(n) if side[i] == 1]
        for _ in range(extra):
            ends.append((rng.choice(left), rng.choice(right)))
    rng.shuffle(ends)
    labels = tuple(f"v{i}" for i in range(n))
    edges = tuple(
        Edge(eid, labels[a], labels[b], rng.choice((1, -1))) for eid, (a, b) in enumerate(ends)
    )
    return SignedMultigraph(labels, edges)


def cycle_graph(n: int, alternating: bool) -> str:
    """Graph file for an even cycle of ``n`` vertices, all edges positive unless alternating"""
    lines = [f"vertex c{i}" for i in range(n)]
    for i in range(n):
        sign = "-" if alternating and i % 2 else "+"
        lines.append(f"edge c{i} c{(i + 1) % n} {sign}")
    return "\n".join(lines) + "\n"
