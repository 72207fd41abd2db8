"""Command-line front end.

Exit codes: 0 success, 1 parse or precondition failure, 2 enumeration cap exceeded
or every bound inapplicable, 3 internal invariant violation.
"""

import argparse
import asyncio
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from .bounds import BoundsReport, FlipPolicy, Mode, braid_report, fp_bound_graph, fpbk_bound_graph, graph_report
from .braidcore import BraidWord, braid_from_tokens, induced_graph, parse_braid, render_braid
from .common import get_config
from .errors import CapExceededError, DirectoryError, InvariantError, ParseError, PreconditionError, UNCPathError
from .seifgraph import PathRule, SignedMultigraph, depth_coloring, parse_graph, render_graph, sign_char
from .treesearch import SwapTrace, construct_any_root, construct_valid_pair, enumerate_spanning_trees, matrix_tree_count
from .version import __version__

log = logging.getLogger("plumb.cli")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CAP = 2
EXIT_INTERNAL = 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: Path | None = None
    word: str | None = None
    strands: int | None = None
    exhaustive: bool = False
    root: str | None = None
    components: int | None = None
    genus: int | None = None
    auto_insert: bool = False
    keep_pendants: bool = False
    json_path: str | None = None
    cap: int = 20
    workers: int = 1
    store: Path | None = None
    path_rule: PathRule = PathRule.SUM
    flip_policy: FlipPolicy = FlipPolicy.BOUND

    def input_text(self) -> str:
        if self.input_path is not None:
            return self.input_path.read_text(encoding="utf-8")
        return render_braid(self.braid())

    def braid(self) -> BraidWord:
        if self.input_path is not None:
            return parse_braid(self.input_path.read_text(encoding="utf-8"))
        return braid_from_tokens(self.word.split(), self.strands)

    def graph(self) -> SignedMultigraph:
        return parse_graph(self.input_path.read_text(encoding="utf-8"))


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise ParseError(message)


def run_config(args: argparse.Namespace) -> RunConfig:
    """Merge parsed flags with the environment into a RunConfig

    Raises:
        ParseError: If the input source is missing or given twice.
    """
    path = getattr(args, "file", None)
    word = getattr(args, "word", None)
    if args.command in ("braid-bounds", "braid-to-graph"):
        if (path is None) == (word is None):
            raise ParseError("Give exactly one of a braid file or --word")
        if word is not None and args.strands is None:
            raise ParseError("--word needs --strands")
    env = get_config(
        cap=getattr(args, "cap", None),
        workers=args.workers,
        store=args.store,
    )
    return RunConfig(
        command=args.command,
        input_path=None if path is None else Path(path),
        word=word,
        strands=getattr(args, "strands", None),
        exhaustive=getattr(args, "exhaustive", False),
        root=getattr(args, "root", None),
        components=getattr(args, "components", None),
        genus=getattr(args, "genus", None),
        auto_insert=getattr(args, "auto_insert", False),
        keep_pendants=getattr(args, "keep_pendants", False),
        json_path=getattr(args, "json", None),
        cap=env.cap,
        workers=env.workers,
        store=env.store,
        path_rule=PathRule(getattr(args, "path_rule", PathRule.SUM.value)),
        flip_policy=FlipPolicy(getattr(args, "flip_policy", FlipPolicy.BOUND.value)),
    )


def cmd_braid_bounds(cfg: RunConfig) -> BoundsReport:
    return braid_report(
        cfg.braid(),
        auto_insert=cfg.auto_insert,
        exhaustive=cfg.exhaustive,
        cap=cfg.cap,
        workers=cfg.workers,
        path_rule=cfg.path_rule,
        flip_policy=cfg.flip_policy,
    )


def cmd_graph_bounds(cfg: RunConfig) -> BoundsReport:
    return graph_report(
        cfg.graph(),
        components=cfg.components,
        exhaustive=cfg.exhaustive,
        root=cfg.root,
        keep_pendants=cfg.keep_pendants,
        cap=cfg.cap,
        workers=cfg.workers,
        path_rule=cfg.path_rule,
        flip_policy=cfg.flip_policy,
        genus_hint=cfg.genus,
    )


def cmd_tree(cfg: RunConfig) -> SwapTrace:
    g = cfg.graph()
    if cfg.root is None:
        return construct_any_root(g)
    return construct_valid_pair(g, cfg.root)


def cmd_oracle(cfg: RunConfig) -> dict:
    """Tree counts by both methods and the exhaustive minima"""
    g = cfg.graph()
    enumerated = sum(1 for _ in enumerate_spanning_trees(g, cfg.cap))
    _, flat = fp_bound_graph(g, Mode.EXHAUSTIVE, cfg.cap, cfg.workers)
    _, budget = fpbk_bound_graph(
        g,
        Mode.EXHAUSTIVE,
        cfg.root,
        cfg.cap,
        cfg.workers,
        cfg.path_rule,
        cfg.flip_policy,
    )
    return {
        "trees_enumerated": enumerated,
        "trees_matrix_tree": matrix_tree_count(g),
        "min_delta_flat": flat.delta,
        "delta_flat_tree": list(flat.tree_edges),
        "min_gamma_minus_delta": budget.gamma - budget.delta,
        "gamma_minus_delta_tree": budget.tree.sorted_edges(),
        "gamma_minus_delta_root": budget.tree.root,
    }


def cmd_braid_to_graph(cfg: RunConfig) -> str:
    return render_graph(induced_graph(cfg.braid()))


def trace_as_dict(trace: SwapTrace) -> dict:
    t = trace.final_tree
    kappa = depth_coloring(t)
    return {
        "root": trace.root,
        "steps": [
            {
                "removed": s.removed,
                "inserted": s.inserted,
                "eta_before": s.eta_before,
                "eta_after": s.eta_after,
            }
            for s in trace.steps
        ],
        "final": {
            "root": t.root,
            "tree_edges": t.sorted_edges(),
            "kappa": {str(eid): sign_char(kappa[eid]) for eid in t.sorted_edges()},
            "depth": {v: t.depth[v] for v in t.graph.vertices},
        },
    }


def trace_as_text(trace: SwapTrace) -> str:
    data = trace_as_dict(trace)
    lines = [f"root {data['root']}"]
    for s in data["steps"]:
        lines.append(f"swap -{s['removed']} +{s['inserted']}  eta {s['eta_before']} -> {s['eta_after']}")
    final = data["final"]
    lines.append("tree " + " ".join(f"{eid}{sign}" for eid, sign in final["kappa"].items()))
    return "\n".join(lines) + "\n"


def _write_json(target: str, payload: str):
    if target == "-":
        sys.stdout.write(payload)
    else:
        Path(target).write_text(payload, encoding="utf-8")


async def _archive(cfg: RunConfig, payload: str, exit_code: int):
    from .store import register_store, save_report

    await register_store(cfg.store)
    await save_report(cfg.command, cfg.input_text(), payload, exit_code)


def execute(cfg: RunConfig) -> tuple[str, str | None, int]:
    """Run one command; returns (text output, JSON output, exit code)"""
    if cfg.command == "braid-bounds":
        report = cmd_braid_bounds(cfg)
    elif cfg.command == "graph-bounds":
        report = cmd_graph_bounds(cfg)
    elif cfg.command == "tree":
        trace = cmd_tree(cfg)
        return trace_as_text(trace), json.dumps(trace_as_dict(trace), indent=2) + "\n", EXIT_OK
    elif cfg.command == "oracle":
        result = cmd_oracle(cfg)
        text = "".join(f"{key}: {value}\n" for key, value in result.items())
        return text, json.dumps(result, indent=2) + "\n", EXIT_OK
    elif cfg.command == "braid-to-graph":
        return cmd_braid_to_graph(cfg), None, EXIT_OK
    else:
        raise ParseError(f"Unknown command {cfg.command!r}")
    code = EXIT_CAP if report.all_inapplicable else EXIT_OK
    return report.to_text(), report.to_json(), code


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--workers", type=int, help="Worker threads for exhaustive search (default: PLUMB_WORKERS or 1)")
    p.add_argument("--store", help="Directory of the SQLite report archive (default: PLUMB_STORE)")
    p.add_argument("--json", metavar="PATH", help="Write the JSON report to PATH ('-' for stdout)")


def _add_policies(p: argparse.ArgumentParser):
    p.add_argument("--path-rule", choices=[r.value for r in PathRule], default=PathRule.SUM.value)
    p.add_argument("--flip-policy", choices=[f.value for f in FlipPolicy], default=FlipPolicy.BOUND.value)
    p.add_argument("--cap", type=int, help="Largest edge count for exhaustive search (default: PLUMB_CAP or 20)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="plumb", description="Plumbing-number upper bounds from braids and Seifert graphs.")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    p_braid = subparsers.add_parser("braid-bounds", help="Bounds from a braid word")
    p_braid.add_argument("file", nargs="?")
    p_braid.add_argument("--word", help='Inline word, e.g. "1 2 -1 2"')
    p_braid.add_argument("--strands", type=int)
    p_braid.add_argument("--auto-insert", action="store_true", help="Append trivial pairs for the signed bound")
    p_braid.add_argument("--exhaustive", action="store_true", help="Also search every spanning tree of the induced graph")
    _add_policies(p_braid)
    _add_common(p_braid)

    p_graph = subparsers.add_parser("graph-bounds", help="Bounds from a Seifert graph file")
    p_graph.add_argument("file")
    p_graph.add_argument("--exhaustive", action="store_true")
    p_graph.add_argument("--root", help="Fix the root vertex for the basket bound")
    p_graph.add_argument("--components", type=int, help="Number of link components")
    p_graph.add_argument("--genus", type=int, help="Known link genus, adds the lower line")
    p_graph.add_argument("--keep-pendants", action="store_true", help="Do not prune degree-1 vertices")
    _add_policies(p_graph)
    _add_common(p_graph)

    p_tree = subparsers.add_parser("tree", help="Trace the swap construction of a valid (tree, root) pair")
    p_tree.add_argument("file")
    p_tree.add_argument("--root")
    _add_common(p_tree)

    p_oracle = subparsers.add_parser("oracle", help="Exhaustive counts and minima")
    p_oracle.add_argument("file")
    p_oracle.add_argument("--root")
    _add_policies(p_oracle)
    _add_common(p_oracle)

    p_convert = subparsers.add_parser("braid-to-graph", help="Emit the induced Seifert graph of a braid")
    p_convert.add_argument("file", nargs="?")
    p_convert.add_argument("--word")
    p_convert.add_argument("--strands", type=int)
    _add_common(p_convert)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(
            level=logging.DEBUG if args.verbose else logging.WARNING,
            format="%(levelname)s %(name)s: %(message)s",
        )
        cfg = run_config(args)
        text, payload, code = execute(cfg)
    except (ParseError, PreconditionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InvariantError as exc:
        log.exception("Internal invariant violated")
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL

    sys.stdout.write(text)
    if cfg.json_path is not None and payload is not None:
        _write_json(cfg.json_path, payload)
    if cfg.store is not None:
        try:
            asyncio.run(_archive(cfg, payload or text, code))
        except (DirectoryError, UNCPathError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
    return code


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
