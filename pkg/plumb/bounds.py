"""Upper bounds on the basket, flat plumbing and flat plumbing basket numbers.

Braid-side bounds read a disc off the word; graph-side bounds work on a spanning
tree of the Seifert graph. Exhaustive graph modes minimize over every spanning tree
(and root) with a total-order tie-break, so results do not depend on worker count.
"""

import enum
import json
import logging
from dataclasses import dataclass, field
from itertools import combinations

from .braidcore import (
    BraidWord,
    disc_word,
    find_disc_prefix,
    generator_counts,
    induced_graph,
    insert_trivial_pairs,
    missing_generators,
    render_braid,
)
from .common import DEFAULT_CAP, DEFAULT_WORKERS, run_fan_out
from .errors import CapExceededError, InvariantError, PreconditionError
from .seifgraph import (
    EdgeColoring,
    PathRule,
    RootedTree,
    SeifertStats,
    SignedMultigraph,
    bfs_tree,
    depth_coloring,
    fundamental_path,
    is_valid_pair,
    prune_pendants,
    reduce_path,
    render_graph,
    rooted_tree,
    seifert_stats,
)
from .treesearch import construct_valid_pair, enumerate_spanning_trees

log = logging.getLogger("plumb.bounds")


class Mode(enum.Enum):
    CONSTRUCTIVE = "constructive"
    EXHAUSTIVE = "exhaustive"


class FlipPolicy(enum.Enum):
    """Which of the depth coloring and its flip an annulus budget uses"""

    BOUND = "bound"
    GAMMA = "gamma"


@dataclass(frozen=True)
class Inapplicable:
    reason: str


@dataclass(frozen=True)
class FlatWitness:
    value: int
    tree_edges: tuple[int, ...]
    companions: tuple[int, ...]
    root: str | None = None
    minimal: bool = True

    @property
    def delta(self) -> int:
        return len(self.companions)


@dataclass(frozen=True)
class AnnulusBudget:
    tree: RootedTree
    kappa: EdgeColoring
    set_B: tuple[int, ...]
    set_C: tuple[int, ...]
    bound_value: int

    @property
    def gamma(self) -> int:
        return len(self.set_B)

    @property
    def delta(self) -> int:
        return len(self.set_C)


@dataclass(frozen=True)
class GenusChain:
    fp_upper: int
    fpbk_upper: int
    lower: int | None = None


# Braid-side bounds


def basket_bound(w: BraidWord) -> int | Inapplicable:
    split = find_disc_prefix(w)
    if split is None:
        return Inapplicable("no rotation of the word starts with a positive disc")
    return split.m


def fp_bound_braid(w: BraidWord) -> int:
    return len(w) + w.strands - 1


def fpbk_bound_simple(w: BraidWord) -> int | Inapplicable:
    split = find_disc_prefix(w)
    if split is None:
        return Inapplicable("no rotation of the word starts with a positive disc")
    return split.m + 2 * split.s


def fpbk_bound_signed(w: BraidWord, auto_insert: bool = False) -> int:
    """Sum over generators of ``a_i(-eps_i) + 2 * (a_i(eps_i) - 1)``.

    Args:
        w (BraidWord): The braid.
        auto_insert (bool, optional): Append trivial pairs for generators missing a sign first.

    Raises:
        PreconditionError: If a generator lacks one of its signs.

    Returns:
        int: The bound.
    """
    if auto_insert:
        w = insert_trivial_pairs(w)
    counts = generator_counts(w)
    total = 0
    for i in w.generators:
        if counts.count(i, 1) == 0 or counts.count(i, -1) == 0:
            raise PreconditionError(f"Generator {i} does not occur with both signs")
        eps = counts.epsilon(i)
        total += counts.count(i, -eps) + 2 * (counts.count(i, eps) - 1)
    return total


# Flat plumbing on a graph


def _require_connected(g: SignedMultigraph):
    if not g.is_connected():
        raise PreconditionError("Graph is not connected")


def _path_feasible(path: list[int], g: SignedMultigraph, companions: set[int]) -> bool:
    """Two-state sweep: can the path alternate when companion edges offer both signs"""
    reachable: set[int] | None = None
    for eid in path:
        allowed = {1, -1} if eid in companions else {g.edge(eid).sign}
        reachable = allowed if reachable is None else {s for s in allowed if -s in reachable}
        if not reachable:
            return False
    return True


def _offending_paths(g: SignedMultigraph, tree_edges) -> list[list[int]]:
    t = rooted_tree(g, tree_edges, g.vertices[0])
    paths = (fundamental_path(t, e) for e in t.coedges)
    return [p for p in paths if not _path_feasible(p, g, set())]


def delta_flat(
    g: SignedMultigraph, tree_edges, cap: int = DEFAULT_CAP
) -> tuple[int, tuple[int, ...]]:
    """Smallest set of tree edges to double so every fundamental path can alternate.

    Only edges on paths that cannot already alternate are candidates. Subsets are tried
    by size, then lexicographically, so the witness is deterministic.

    Raises:
        CapExceededError: If there are more than ``cap`` candidate edges.
    """
    paths = _offending_paths(g, frozenset(tree_edges))
    relevant = sorted({eid for p in paths for eid in p})
    if len(relevant) > cap:
        raise CapExceededError(f"{len(relevant)} candidate companion edges exceeds the subset cap of {cap}")
    for k in range(len(relevant) + 1):
        for subset in combinations(relevant, k):
            chosen = set(subset)
            if all(_path_feasible(p, g, chosen) for p in paths):
                return k, subset
    raise InvariantError("Doubling every tree edge must make all paths alternate")


def fp_bound_for_tree(
    g: SignedMultigraph,
    tree_edges,
    companions=None,
    cap: int = DEFAULT_CAP,
    exact: bool = True,
) -> FlatWitness:
    """Flat plumbing bound ``E - V + 1 + 2 * delta`` for one spanning tree.

    With ``companions`` given, that set is checked and used instead of the minimum.
    With ``exact`` off, a search over the cap doubles every candidate edge instead.

    Raises:
        PreconditionError: If the companions are not tree edges or leave a path unable to alternate.
        CapExceededError: If ``exact`` is set and the subset search is over the cap.
    """
    tree_edges = tuple(sorted(tree_edges))
    minimal = True
    if companions is None:
        try:
            _, chosen = delta_flat(g, tree_edges, cap)
        except CapExceededError as exc:
            if exact:
                raise
            chosen = tuple(sorted({eid for p in _offending_paths(g, tree_edges) for eid in p}))
            minimal = False
            log.warning(f"{exc}; doubling all {len(chosen)} candidates")
    else:
        chosen = tuple(sorted(companions))
        if not set(chosen) <= set(tree_edges):
            raise PreconditionError("Companion edges must be tree edges")
        t = rooted_tree(g, tree_edges, g.vertices[0])
        for e in t.coedges:
            if not _path_feasible(fundamental_path(t, e), g, set(chosen)):
                raise PreconditionError(f"Companions {list(chosen)} leave coedge {e} unable to alternate")
    value = len(g.edges) - len(g.vertices) + 1 + 2 * len(chosen)
    return FlatWitness(value, tree_edges, chosen, minimal=minimal)


def fp_worst_case(g: SignedMultigraph) -> int:
    """Flat plumbing count when every tree edge gets a companion"""
    return len(g.edges) + len(g.vertices) - 1


def _flat_key(g: SignedMultigraph, w: FlatWitness) -> tuple:
    return w.value, w.tree_edges, -1 if w.root is None else g.index(w.root)


def fp_bound_graph(
    g: SignedMultigraph,
    mode: Mode = Mode.CONSTRUCTIVE,
    cap: int = DEFAULT_CAP,
    workers: int = DEFAULT_WORKERS,
) -> tuple[int, FlatWitness]:
    """Flat plumbing bound from a spanning tree.

    Constructive mode takes the breadth-first tree of every root and keeps the best;
    exhaustive mode minimizes over all spanning trees.
    Constructive mode never fails on size: over the subset cap it doubles every candidate.

    Raises:
        PreconditionError: If the graph is disconnected.
        CapExceededError: If exhaustive enumeration is over the cap.
    """
    _require_connected(g)
    if mode is Mode.CONSTRUCTIVE:
        candidates = []
        for root in g.vertices:
            t = bfs_tree(g, root)
            w = fp_bound_for_tree(g, t.tree_edges, cap=cap, exact=False)
            candidates.append(FlatWitness(w.value, w.tree_edges, w.companions, root, w.minimal))
        best = min(candidates, key=lambda w: _flat_key(g, w))
    else:

        def _chunk(trees: list[tuple[int, ...]]) -> FlatWitness:
            return min(
                (fp_bound_for_tree(g, edges, cap=cap) for edges in trees),
                key=lambda w: _flat_key(g, w),
            )

        results = run_fan_out(_chunk, enumerate_spanning_trees(g, cap), workers)
        best = min(results, key=lambda w: _flat_key(g, w))
    log.info(f"Flat plumbing bound ({mode.value}): {best.value}")
    return best.value, best


# Flat plumbing basket on a graph


def _budget_for(
    g: SignedMultigraph, t: RootedTree, flipped: bool, path_rule: PathRule
) -> AnnulusBudget:
    kappa = depth_coloring(t, flipped)
    set_b = tuple(eid for eid in sorted(t.tree_edges) if g.edge(eid).sign != kappa[eid])
    set_c = tuple(
        e
        for e in t.coedges
        if g.edge(e).sign != reduce_path(fundamental_path(t, e), kappa, path_rule)
    )
    bound = 3 * (len(g.edges) - len(g.vertices)) + 2 * (len(set_b) - len(set_c)) + 3
    return AnnulusBudget(t, kappa, set_b, set_c, bound)


def annulus_budget(
    g: SignedMultigraph,
    t: RootedTree,
    path_rule: PathRule = PathRule.SUM,
    flip_policy: FlipPolicy = FlipPolicy.BOUND,
) -> AnnulusBudget:
    """Twisted-band and coedge bookkeeping for a valid (tree, root) pair.

    ``set_B`` holds tree edges whose sign differs from the coloring; ``set_C`` holds
    coedges whose sign differs from their path's reduced sign. The bound is
    ``3 * (E - V) + 2 * (gamma - delta) + 3``.

    Args:
        g (SignedMultigraph): The graph.
        t (RootedTree): A spanning tree whose fundamental paths alternate.
        path_rule (PathRule, optional): Sum or product reduction of paths. Defaults to SUM.
        flip_policy (FlipPolicy, optional): BOUND keeps the coloring with the smaller bound;
            GAMMA flips iff that shrinks ``set_B``, ties going to the larger ``delta``.

    Raises:
        PreconditionError: If the pair is not valid.
        InvariantError: If the cost identity fails.

    Returns:
        AnnulusBudget: The chosen budget.
    """
    if not is_valid_pair(g, t):
        raise PreconditionError(f"Tree rooted at {t.root} has a non-alternating fundamental path")
    plain = _budget_for(g, t, False, path_rule)
    flipped = _budget_for(g, t, True, path_rule)
    if flip_policy is FlipPolicy.BOUND:
        chosen = min((plain, flipped), key=lambda b: (b.bound_value, b.gamma, b.kappa.flipped))
    elif flipped.gamma != plain.gamma:
        chosen = flipped if flipped.gamma < plain.gamma else plain
    else:
        chosen = flipped if flipped.delta > plain.delta else plain
    coedges = len(t.coedges)
    if chosen.bound_value != 3 * (coedges - chosen.delta) + chosen.delta + 2 * chosen.gamma:
        raise InvariantError(f"Cost identity fails for tree rooted at {t.root}")
    return chosen


def _budget_key(g: SignedMultigraph, b: AnnulusBudget) -> tuple:
    return b.bound_value, tuple(sorted(b.tree.tree_edges)), g.index(b.tree.root)


def fpbk_bound_graph(
    g: SignedMultigraph,
    mode: Mode = Mode.CONSTRUCTIVE,
    root: str | None = None,
    cap: int = DEFAULT_CAP,
    workers: int = DEFAULT_WORKERS,
    path_rule: PathRule = PathRule.SUM,
    flip_policy: FlipPolicy = FlipPolicy.BOUND,
) -> tuple[int, AnnulusBudget]:
    """Flat plumbing basket bound, best over roots (or the given root).

    Constructive mode budgets the swap construction's final tree per root; exhaustive
    mode budgets every valid (spanning tree, root) pair.

    Raises:
        PreconditionError: If the graph is disconnected or the root is unknown.
        CapExceededError: If exhaustive enumeration is over the cap.
    """
    _require_connected(g)
    if root is not None and root not in g:
        raise PreconditionError(f"Unknown root {root!r}")
    roots = [root] if root is not None else list(g.vertices)

    def _key(b: AnnulusBudget) -> tuple:
        return _budget_key(g, b)

    if mode is Mode.CONSTRUCTIVE:
        budgets = [
            annulus_budget(g, construct_valid_pair(g, r).final_tree, path_rule, flip_policy)
            for r in roots
        ]
        best = min(budgets, key=_key)
    else:

        def _chunk(trees: list[tuple[int, ...]]) -> AnnulusBudget | None:
            best_here = None
            for edges in trees:
                for r in roots:
                    t = rooted_tree(g, edges, r)
                    if not is_valid_pair(g, t):
                        continue
                    b = annulus_budget(g, t, path_rule, flip_policy)
                    if best_here is None or _key(b) < _key(best_here):
                        best_here = b
            return best_here

        results = [b for b in run_fan_out(_chunk, enumerate_spanning_trees(g, cap), workers) if b]
        if not results:
            raise InvariantError("No valid (tree, root) pair found")
        best = min(results, key=_key)
    log.info(f"Flat plumbing basket bound ({mode.value}): {best.bound_value}")
    return best.bound_value, best


def genus_chain(
    stats: SeifertStats,
    delta: int,
    gamma_minus_delta: int,
    genus_hint: int | None = None,
) -> GenusChain:
    """Restate the graph bounds through the canonical genus of the diagram"""
    fp_upper = 2 * stats.g_c + 2 * delta + stats.l - 1
    fpbk_upper = 6 * stats.g_c + 2 * gamma_minus_delta + 3 * stats.l - 3
    lower = None if genus_hint is None else 2 * genus_hint + stats.l - 1
    return GenusChain(fp_upper, fpbk_upper, lower)


# Reports


def _witness(**fields) -> dict:
    base = {
        "root": None,
        "tree_edges": None,
        "flipped": None,
        "gamma": None,
        "delta": None,
        "set_B": None,
        "set_C": None,
        "rotation": None,
        "companions": None,
        "disc_word": None,
    }
    base.update(fields)
    return base


@dataclass
class BoundRow:
    name: str
    value: int | None
    witness: dict = field(default_factory=_witness)
    reason: str | None = None

    @property
    def applicable(self) -> bool:
        return self.value is not None

    @classmethod
    def from_result(cls, name: str, result: int | Inapplicable, **witness) -> "BoundRow":
        if isinstance(result, Inapplicable):
            return cls(name, None, _witness(), result.reason)
        return cls(name, result, _witness(**witness))

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "applicable": self.applicable,
            "value": self.value,
            "reason": self.reason,
            "witness": self.witness,
        }

    def summary(self) -> str:
        if not self.applicable:
            return f"n/a ({self.reason})"
        parts = [
            f"{key}={value}"
            for key, value in self.witness.items()
            if value is not None
        ]
        return " ".join(parts)


@dataclass
class BoundsReport:
    input: str
    stats: SeifertStats | None
    rows: list[BoundRow] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def row(self, name: str) -> BoundRow:
        return next(r for r in self.rows if r.name == name)

    @property
    def all_inapplicable(self) -> bool:
        return not any(r.applicable for r in self.rows)

    def as_dict(self) -> dict:
        return {
            "input": self.input,
            "stats": None if self.stats is None else self.stats.as_dict(),
            "bounds": [r.as_dict() for r in self.rows],
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        lines = []
        if self.stats is not None:
            st = self.stats
            lines.append(f"s={st.s} c={st.c} l={st.l} g_c={st.g_c}")
        width = max((len(r.name) for r in self.rows), default=0)
        for r in self.rows:
            value = "-" if r.value is None else str(r.value)
            lines.append(f"{r.name:<{width}}  {value:>4}  {r.summary()}")
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines) + "\n"


def _budget_witness(b: AnnulusBudget) -> dict:
    return {
        "root": b.tree.root,
        "tree_edges": b.tree.sorted_edges(),
        "flipped": b.kappa.flipped,
        "gamma": b.gamma,
        "delta": b.delta,
        "set_B": list(b.set_B),
        "set_C": list(b.set_C),
    }


def _flat_witness(w: FlatWitness) -> dict:
    return {
        "root": w.root,
        "tree_edges": list(w.tree_edges),
        "delta": w.delta,
        "companions": list(w.companions),
    }


def _graph_rows(
    g: SignedMultigraph,
    stats: SeifertStats | None,
    *,
    exhaustive: bool,
    root: str | None,
    cap: int,
    workers: int,
    path_rule: PathRule,
    flip_policy: FlipPolicy,
    genus_hint: int | None,
    skip_over_cap: bool = False,
) -> tuple[list[BoundRow], list[str]]:
    modes = [Mode.CONSTRUCTIVE, Mode.EXHAUSTIVE] if exhaustive else [Mode.CONSTRUCTIVE]
    rows: list[BoundRow] = []
    notes: list[str] = []
    flat: FlatWitness | None = None
    budget: AnnulusBudget | None = None
    fp_rows, fpbk_rows = [], []
    for mode in modes:
        try:
            _, found_flat = fp_bound_graph(g, mode, cap, workers)
            _, found_budget = fpbk_bound_graph(g, mode, root, cap, workers, path_rule, flip_policy)
        except CapExceededError as exc:
            if not skip_over_cap:
                raise
            skipped = Inapplicable(str(exc))
            fp_rows.append(BoundRow.from_result(f"fp_graph_{mode.value}", skipped))
            fpbk_rows.append(BoundRow.from_result(f"fpbk_graph_{mode.value}", skipped))
            notes.append(f"{mode.value} graph search skipped: {exc}")
            continue
        flat, budget = found_flat, found_budget
        fp_rows.append(BoundRow.from_result(f"fp_graph_{mode.value}", flat.value, **_flat_witness(flat)))
        fpbk_rows.append(
            BoundRow.from_result(f"fpbk_graph_{mode.value}", budget.bound_value, **_budget_witness(budget))
        )
        if not flat.minimal:
            notes.append(
                f"fp_graph_{mode.value} doubles every candidate edge; the subset search was over the cap"
            )
    rows += fp_rows
    rows.append(BoundRow.from_result("fp_worst_case", fp_worst_case(g)))
    rows += fpbk_rows
    if stats is None:
        missing = Inapplicable("number of link components unknown")
        rows.append(BoundRow.from_result("fp_genus_upper", missing))
        rows.append(BoundRow.from_result("fpbk_genus_upper", missing))
        return rows, notes
    chain = genus_chain(stats, flat.delta, budget.gamma - budget.delta, genus_hint)
    rows.append(BoundRow.from_result("fp_genus_upper", chain.fp_upper, delta=flat.delta))
    rows.append(
        BoundRow.from_result(
            "fpbk_genus_upper", chain.fpbk_upper, gamma=budget.gamma, delta=budget.delta
        )
    )
    if chain.lower is not None:
        rows.append(BoundRow.from_result("fp_genus_lower", chain.lower))
    return rows, notes


def braid_report(
    w: BraidWord,
    *,
    auto_insert: bool = False,
    exhaustive: bool = False,
    cap: int = DEFAULT_CAP,
    workers: int = DEFAULT_WORKERS,
    path_rule: PathRule = PathRule.SUM,
    flip_policy: FlipPolicy = FlipPolicy.BOUND,
) -> BoundsReport:
    """All braid-side bounds, plus the graph-side bounds of the induced path graph"""
    g = induced_graph(w)
    missing = missing_generators(w)
    stats = None if missing else seifert_stats(g, g.components)
    report = BoundsReport(render_braid(w), stats)

    split = find_disc_prefix(w)
    rotation = {} if split is None else {"rotation": split.rotation}
    report.rows.append(BoundRow.from_result("basket", basket_bound(w), **rotation))
    report.rows.append(BoundRow.from_result("fp_braid", fp_bound_braid(w)))
    simple = fpbk_bound_simple(w)
    report.rows.append(BoundRow.from_result("fpbk_simple", simple, **rotation))
    try:
        signed = fpbk_bound_signed(w, auto_insert)
        counts = generator_counts(insert_trivial_pairs(w) if auto_insert else w)
        report.rows.append(BoundRow.from_result("fpbk_signed", signed, disc_word=disc_word(counts)))
    except PreconditionError as exc:
        signed = Inapplicable(f"{exc}; rerun with --auto-insert")
        report.rows.append(BoundRow.from_result("fpbk_signed", signed))

    if not isinstance(simple, Inapplicable):
        report.notes.append(
            "fpbk_simple depends on the braid word and the rotation exposing the disc; "
            "other words for the same link can give other values"
        )
        if not isinstance(signed, Inapplicable) and signed > simple:
            report.notes.append(f"fpbk_signed ({signed}) exceeds fpbk_simple ({simple}) for this word")

    if missing:
        report.notes.append(
            f"generators {missing} do not occur; the induced graph is disconnected "
            "and graph-side bounds do not apply"
        )
        modes = [Mode.CONSTRUCTIVE, Mode.EXHAUSTIVE] if exhaustive else [Mode.CONSTRUCTIVE]
        disconnected = Inapplicable("induced graph is disconnected")
        for prefix in ("fp_graph", "fpbk_graph"):
            for mode in modes:
                report.rows.append(BoundRow.from_result(f"{prefix}_{mode.value}", disconnected))
        return report
    rows, graph_notes = _graph_rows(
        g,
        stats,
        exhaustive=exhaustive,
        root=None,
        cap=cap,
        workers=workers,
        path_rule=path_rule,
        flip_policy=flip_policy,
        genus_hint=None,
        skip_over_cap=True,
    )
    report.rows += rows
    report.notes += graph_notes
    report.notes.append(f"coedge signs by {path_rule.value} rule, flip policy {flip_policy.value}")
    return report


def graph_report(
    g: SignedMultigraph,
    *,
    components: int | None = None,
    exhaustive: bool = False,
    root: str | None = None,
    keep_pendants: bool = False,
    cap: int = DEFAULT_CAP,
    workers: int = DEFAULT_WORKERS,
    path_rule: PathRule = PathRule.SUM,
    flip_policy: FlipPolicy = FlipPolicy.BOUND,
    genus_hint: int | None = None,
) -> BoundsReport:
    """Graph-side bounds and genus restatements for a Seifert graph.

    Pendant vertices are pruned first unless ``keep_pendants`` is set.

    Raises:
        PreconditionError: If the graph is disconnected, the root is unknown or pruned,
            or the component count is inconsistent with the graph.
        CapExceededError: If exhaustive enumeration is over the cap.
    """
    text = render_graph(g)
    notes = []
    if not keep_pendants:
        g, removed = prune_pendants(g)
        if removed:
            notes.append(f"pruned {removed} pendant vertices before bounding")
        if root is not None and root not in g:
            raise PreconditionError(f"Root {root!r} was removed as a pendant vertex")
    l_value = components if components is not None else g.components
    stats = None if l_value is None else seifert_stats(g, l_value)
    report = BoundsReport(text, stats, notes=notes)
    rows, graph_notes = _graph_rows(
        g,
        stats,
        exhaustive=exhaustive,
        root=root,
        cap=cap,
        workers=workers,
        path_rule=path_rule,
        flip_policy=flip_policy,
        genus_hint=genus_hint,
    )
    report.rows += rows
    report.notes += graph_notes
    if root is not None:
        report.notes.append(f"fpbk rows restricted to root {root}")
    report.notes.append(f"coedge signs by {path_rule.value} rule, flip policy {flip_policy.value}")
    report.notes.append(
        "fp_graph uses the smallest companion set; a surface realizing it may need more plumbings"
    )
    return report
