"""Main entry point for the GBF-PUM command-line tool"""
import argparse
import sys
import os
from typing import List, Optional

# Add parent directory to Python path to enable imports
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.config.settings import config
from src.handlers.command_handler import DEFAULT_SWEEP_SIZES, CommandHandler
from src.constants.reference import REFERENCE_TABLES
from src.models.kernel import KernelParams
from src.models.partition import CommunityParams
from src.models.results import KatzParams, RunConfig
from src.utils.errors import exit_code_for
from src.utils.logger import setup_logger


def _add_sample_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("samples")
    group.add_argument("--samples", type=int, help="Number of uniformly drawn sample vertices")
    group.add_argument("--seed", type=int, help="Sampling seed (required with --samples)")
    group.add_argument("--sample-ids", help="File of sample vertex ids")


def _add_community_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("community detection")
    group.add_argument("--r", type=float, default=config.R, help="In-community neighbour ratio threshold")
    group.add_argument("--dmax", type=int, default=config.DMAX, help="Hop radius for boundary vertices")
    group.add_argument("--dmin", type=int, default=config.DMIN, help="Hop radius for interior vertices")
    group.add_argument("--small-fraction", type=float, default=config.SMALL_FRACTION,
                       help="Communities below this share of vertices are merged")
    group.add_argument("--katz-alpha", type=float, default=config.KATZ_ALPHA, help="Katz attenuation factor")


def _add_signal_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("signal")
    group.add_argument("--signal", help="node,value CSV with the signal")
    group.add_argument("--signal-seed", type=int, help="Seed of a synthetic smooth signal")
    group.add_argument("--cutoff", type=float, help="Laplacian frequency cutoff of the synthetic signal")


def _add_kernel_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("kernel")
    group.add_argument("--epsilon", type=float, default=config.EPSILON, help="Kernel shift")
    group.add_argument("--s", type=float, default=config.S, help="Kernel exponent")
    group.add_argument("--gamma", type=float, default=config.GAMMA, help="Ridge weight")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gbfpum",
        description="Graph signal interpolation with GBF partition of unity over detected communities"
    )
    parser.add_argument("--log-level", default=config.log_level,
                        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"])
    parser.add_argument("-v", "--verbose", action="store_true", help="Shorthand for --log-level DEBUG")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("communities", help="Detect overlapping communities bound to the samples")
    p.add_argument("--graph", required=True)
    p.add_argument("--out", required=True, help="Partition JSON (plot CSV written alongside)")
    _add_sample_args(p)
    _add_community_args(p)

    p = sub.add_parser("interpolate", help="Reconstruct a signal from its sample values")
    p.add_argument("--graph", required=True)
    p.add_argument("--out", required=True, help="Result JSON (approximation CSV written alongside)")
    p.add_argument("--record", action="store_true", help="Store the run in the run store")
    _add_sample_args(p)
    _add_signal_args(p)
    _add_community_args(p)
    _add_kernel_args(p)

    p = sub.add_parser("synth-signal", help="Write a smooth synthetic signal")
    p.add_argument("--graph", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--cutoff", type=float)
    p.add_argument("--out", required=True)

    p = sub.add_parser("flow-ingest", help="Extract one timestamp of node,timestamp,flow measurements")
    p.add_argument("--graph", required=True)
    p.add_argument("--flow", required=True, help="node,timestamp,flow CSV")
    p.add_argument("--timestamp", required=True)
    p.add_argument("--out", required=True, help="Signal CSV of the largest measured component")
    p.add_argument("--nodes-out", help="Vertex-id file (default: alongside --out)")

    p = sub.add_parser("karate", help="Zachary Karate Club split experiments")
    p.add_argument("--out")
    p.add_argument("--record", action="store_true")

    p = sub.add_parser("sweep", help="Errors for increasing sample counts")
    p.add_argument("--graph", required=True)
    p.add_argument("--out", required=True, help="Result CSV (JSON written alongside)")
    p.add_argument("--seed", type=int, required=True, help="Sampling seed")
    p.add_argument("--sizes", type=int, nargs="+", default=list(DEFAULT_SWEEP_SIZES))
    p.add_argument("--reference", choices=sorted(REFERENCE_TABLES), help="Print a published table alongside")
    p.add_argument("--record", action="store_true")
    _add_signal_args(p)
    _add_community_args(p)
    _add_kernel_args(p)

    p = sub.add_parser("runs", help="List recorded runs")
    p.add_argument("--limit", type=int, default=20)

    p = sub.add_parser("grid", help="Write a rows x cols grid edge list")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--out", required=True)
    return parser


def run_config_from_args(args: argparse.Namespace) -> RunConfig:
    """RunConfig from parsed arguments; flags override the environment defaults"""
    return RunConfig(
        graph_path=args.graph,
        output_path=args.out,
        signal_path=getattr(args, "signal", None),
        synthetic_seed=getattr(args, "signal_seed", None),
        sample_ids_path=getattr(args, "sample_ids", None),
        sample_count=getattr(args, "samples", None),
        sample_seed=getattr(args, "seed", None),
        cutoff=getattr(args, "cutoff", None),
        community=CommunityParams(r=args.r, dmax=args.dmax, dmin=args.dmin, small_fraction=args.small_fraction),
        kernel=KernelParams(
            epsilon=getattr(args, "epsilon", config.EPSILON),
            s=getattr(args, "s", config.S),
            gamma=getattr(args, "gamma", config.GAMMA)
        ),
        katz=KatzParams(alpha=args.katz_alpha, max_iter=config.KATZ_MAX_ITER, tol=config.KATZ_TOL),
        record=getattr(args, "record", False)
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point"""
    args = build_parser().parse_args(argv)
    level = "DEBUG" if args.verbose else args.log_level
    logger = setup_logger("gbfpum", level, config.LOG_FILE, config.LOG_DIR)

    handler = CommandHandler()
    try:
        config.validate()
        if args.command == "communities":
            handler.handle_communities(run_config_from_args(args))
        elif args.command == "interpolate":
            handler.handle_interpolate(run_config_from_args(args))
        elif args.command == "synth-signal":
            handler.handle_synth_signal(args.graph, args.seed, args.out, args.cutoff)
        elif args.command == "flow-ingest":
            handler.handle_flow_ingest(args.graph, args.flow, args.timestamp, args.out, args.nodes_out)
        elif args.command == "karate":
            handler.handle_karate(args.out, args.record)
        elif args.command == "sweep":
            cfg = run_config_from_args(args)
            handler.handle_sweep(cfg, args.sizes, args.reference)
        elif args.command == "runs":
            handler.handle_runs(args.limit)
        elif args.command == "grid":
            handler.handle_grid(args.rows, args.cols, args.out)
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return 130
    except Exception as e:
        code = exit_code_for(e)
        if code == 1:
            logger.exception(f"Fatal error: {e}")
        else:
            logger.error(f"{type(e).__name__}: {e}")
        return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
