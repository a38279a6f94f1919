#!/usr/bin/env python3
"""
Dynamic Cluster Editing - command line front end
Exact solvers, kernelization, distances, verification and instance generation
"""

import argparse
import logging
import sys
import time
from pathlib import Path
from typing import List, Optional, Sequence

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent))

from core.config import Config
from core.errors import ClusterEditingError, TooLarge
from core.graph import Graph, cluster_matching
from core.instance import Measure, Variant, measure_distance, verify_solution
from generators.gadgets import (
    CliqueSource,
    McCliqueSource,
    ThreePartitionSource,
    X3cSource,
    gen_3partition_completion_edge,
    gen_clique_editing_edge,
    gen_mcclique_deletion_edge,
    gen_x3c_deletion_matching,
)
from generators.random_instances import gen_random
from kernel.kernelizer import kernelize
from solvers.dispatch import ALGORITHMS, solve_instance
from solvers.result import SCOPE_KERNEL
from utils.instance_io import (
    instance_to_dict,
    load_clusters,
    load_instance,
    load_solution,
    result_to_dict,
    save_instance,
    write_json,
)
from utils.logger import LoggerMixin, setup_logging

logger = logging.getLogger(__name__)

EXIT_YES = 0
EXIT_NO = 1
EXIT_ERROR = 2

FAMILIES = ("3partition", "x3c", "clique", "mcclique", "random")


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'")


def _edge(text: str):
    try:
        u, v = text.split("-")
        return int(u), int(v)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an edge like 0-1, got '{text}'")


class ClusterEditingApp(LoggerMixin):
    """Runs one subcommand against a loaded configuration."""

    def __init__(self, config: Config):
        self.config = config
        self.indent = int(config.get_io_config().get("indent", 2))

    def _emit(self, text: str, output: Optional[str] = None):
        if output:
            Path(output).write_text(text + "\n")
            self.log_info(f"Wrote {output}")
        else:
            print(text)

    def cmd_solve(self, args) -> int:
        inst = load_instance(args.path)
        algo = args.algo or self.config.get_default_algo()
        cap = args.cap if args.cap is not None else self.config.get_oracle_cap()
        self.log_debug(f"Solving {inst.describe()} with {algo}, oracle cap {cap}")

        start = time.perf_counter()
        try:
            result = solve_instance(inst, algo, cap)
        except TooLarge as e:
            self.log_error(str(e))
            print(
                f"error: {e}. Try --algo fpt-k / fpt-d where the variant allows it, or raise --cap "
                f"(environment variable DCE_ORACLE_CAP).",
                file=sys.stderr,
            )
            return EXIT_ERROR
        runtime_ms = round((time.perf_counter() - start) * 1000, 3)

        stats = {"solver": result.solver, "runtime_ms": runtime_ms, "kernel_vertices_before": inst.n}
        if result.kernel is not None and result.kernel.reduced is not None:
            stats["kernel_vertices_after"] = result.kernel.reduced.n
        stats.update({k: v for k, v in result.stats.items() if k not in stats})

        witness = None
        witness_graph = None
        if result.yes and result.solution is not None and args.emit_witness:
            target = result.kernel.reduced if result.scope == SCOPE_KERNEL else inst
            verdict = verify_solution(target, result.solution)
            if not verdict:
                raise ClusterEditingError(f"Witness fails verification: {[r.value for r in verdict.reasons]}")
            witness, witness_graph = result.solution, target.g

        if args.json:
            trace = [e.to_dict() for e in result.kernel.trace] if result.kernel is not None else None
            data = result_to_dict(result.yes, stats, witness, witness_graph, result.scope, trace)
            self._emit(write_json(data, indent=self.indent), args.output)
        else:
            lines = ["yes" if result.yes else "no"]
            if witness is not None:
                lines.append(f"witness ({result.scope}): {[sorted(c) for c in witness.gprime.clusters]}")
                lines.append(f"edits: {sorted(witness.edits)}")
            self._emit("\n".join(lines), args.output)
        return EXIT_YES if result.yes else EXIT_NO

    def cmd_kernelize(self, args) -> int:
        inst = load_instance(args.path)
        result = kernelize(inst)
        after = None if result.is_no else result.reduced.n
        bound = result.vertex_bound()
        if self.config.get_kernel_config().get("check_bounds", True) and bound is not None and after > bound:
            self.log_warning(f"Kernel has {after} vertices, above the bound {bound}")

        if args.json:
            data = {
                "decision": "no" if result.is_no else "reduced",
                "vertices_before": inst.n,
                "vertices_after": after,
                "bound": bound,
                "instance": None if result.is_no else instance_to_dict(result.reduced),
                "trace": [e.to_dict() for e in result.trace],
            }
            if result.is_no:
                data["no_rule"] = result.no_reason.value
            self._emit(write_json(data, indent=self.indent), args.output)
        else:
            lines = [f"vertices: {inst.n} -> {after if after is not None else '-'}"]
            for entry in result.trace:
                lines.append(f"  {entry.rule.value}: {entry.effect}")
            if result.is_no:
                lines.append(f"no ({result.no_reason.value}: {result.no_message})")
            else:
                r = result.reduced
                lines.append(f"bound: {bound} (k={r.k}, d={r.d}, {r.measure.value} distance)")
            self._emit("\n".join(lines), args.output)
        return EXIT_NO if result.is_no else EXIT_YES

    def cmd_distance(self, args) -> int:
        a = load_clusters(args.path_a)
        b = load_clusters(args.path_b, a.n)
        measure = Measure(args.measure)
        print(measure_distance(measure, a, b))
        if args.explain:
            for i, j, weight in cluster_matching(a, b):
                print(f"{sorted(a.clusters[i])} <-> {sorted(b.clusters[j])} shares {weight}")
        return EXIT_YES

    def cmd_verify(self, args) -> int:
        inst = load_instance(args.instance_path)
        solution = load_solution(args.solution_path, inst)
        verdict = verify_solution(inst, solution)
        if verdict:
            print(f"ok: {verdict.edit_count} edits, distance {verdict.distance}")
            return EXIT_YES
        print(" ".join(r.value for r in verdict.reasons))
        return EXIT_NO

    def cmd_generate(self, args) -> int:
        family = args.family
        seed = args.seed if args.seed is not None else self.config.get_default_seed()
        if family == "3partition":
            numbers = args.numbers or []
            src = ThreePartitionSource(len(numbers) // 3, args.bin_size, tuple(numbers))
            inst = gen_3partition_completion_edge(src)
        elif family == "x3c":
            universe = tuple(args.universe) if args.universe else tuple(range(3 * args.q))
            src = X3cSource(args.q, universe, tuple(tuple(s) for s in args.sets or []))
            inst = gen_x3c_deletion_matching(src)
        elif family == "clique":
            inst = gen_clique_editing_edge(CliqueSource(Graph(args.vertices, args.edges or []), args.ell))
        elif family == "mcclique":
            g0 = Graph(args.vertices, args.edges or [])
            inst = gen_mcclique_deletion_edge(McCliqueSource(g0, tuple(args.colors or []), args.ell))
        else:
            defaults = self.config.get_generator_config().get("random") or {}
            inst = gen_random(
                args.n if args.n is not None else int(defaults.get("n", 8)),
                args.edge_prob if args.edge_prob is not None else float(defaults.get("edge_prob", 0.4)),
                Variant(args.variant),
                Measure(args.measure),
                args.k if args.k is not None else int(defaults.get("k", 3)),
                args.d if args.d is not None else int(defaults.get("d", 3)),
                seed=seed,
                cluster_input=args.cluster_input,
            )
        self._emit(save_instance(inst, indent=self.indent), args.output)
        return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Exact solvers for Dynamic Cluster Editing")
    parser.add_argument("--config", type=str, default=None, help="Path to configuration file")
    parser.add_argument("--log-level", type=str, default=None, help="DEBUG, INFO, WARNING or ERROR")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="Decide an instance")
    solve.add_argument("path")
    solve.add_argument("--algo", choices=ALGORITHMS, default=None)
    solve.add_argument("--cap", type=int, default=None, help="Largest vertex count for the brute-force oracle")
    solve.add_argument("--emit-witness", action="store_true")
    solve.add_argument("--json", action="store_true")
    solve.add_argument("-o", "--output", default=None)

    kern = sub.add_parser("kernelize", help="Apply the reduction rules exhaustively")
    kern.add_argument("path")
    kern.add_argument("--json", action="store_true")
    kern.add_argument("-o", "--output", default=None)

    dist = sub.add_parser("distance", help="Distance between two cluster graphs")
    dist.add_argument("path_a")
    dist.add_argument("path_b")
    dist.add_argument("--measure", choices=[m.value for m in Measure], default=Measure.MATCHING_DIST.value)
    dist.add_argument("--explain", action="store_true", help="Print the matched cluster pairs")

    verify = sub.add_parser("verify", help="Check a solution against an instance")
    verify.add_argument("instance_path")
    verify.add_argument("solution_path")

    gen = sub.add_parser("generate", help="Write a generated instance")
    gen.add_argument("family", choices=FAMILIES)
    gen.add_argument("--seed", type=int, default=None)
    gen.add_argument("-o", "--output", default=None)
    gen.add_argument("--numbers", type=_int_list, default=None, help="3partition: a_1,...,a_3m")
    gen.add_argument("--bin-size", type=int, default=0, help="3partition: B")
    gen.add_argument("--q", type=int, default=1, help="x3c: universe has 3q elements")
    gen.add_argument("--universe", type=_int_list, default=None, help="x3c: elements (default 0..3q-1)")
    gen.add_argument("--sets", type=_int_list, nargs="*", default=None, help="x3c: sets like 0,1,2")
    gen.add_argument("--ell", type=int, default=3, help="clique / mcclique: ell")
    gen.add_argument("--vertices", type=int, default=0, help="clique / mcclique: vertices of g0")
    gen.add_argument("--edges", type=_edge, nargs="*", default=None, help="clique / mcclique: edges like 0-1")
    gen.add_argument("--colors", type=_int_list, default=None, help="mcclique: color of every vertex")
    gen.add_argument("--n", type=int, default=None)
    gen.add_argument("--edge-prob", type=float, default=None)
    gen.add_argument("--variant", choices=[v.value for v in Variant], default=Variant.EDITING.value)
    gen.add_argument("--measure", choices=[m.value for m in Measure], default=Measure.EDGE_DIST.value)
    gen.add_argument("--k", type=int, default=None)
    gen.add_argument("--d", type=int, default=None)
    gen.add_argument("--cluster-input", action="store_true", help="random: draw G as a cluster graph")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        config = Config(args.config)
    except (RuntimeError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR

    if getattr(args, "cap", None) is not None:
        config.update("solver.oracle.cap", args.cap)
    log_config = config.get_app_config().get("logging") or {}
    setup_logging(
        log_level=args.log_level or log_config.get("level") or "WARNING",
        log_file=log_config.get("file"),
        max_size=log_config.get("max_size", "10MB"),
        backup_count=int(log_config.get("backup_count", 5)),
    )

    app = ClusterEditingApp(config)
    handler = getattr(app, f"cmd_{args.command}")
    try:
        return handler(args)
    except (ClusterEditingError, OSError, ValueError) as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
