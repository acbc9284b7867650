"""Command handler: one method per CLI subcommand"""
import os
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from sqlalchemy.exc import SQLAlchemyError

from src.constants import karate_club
from src.constants.reference import REFERENCE_COLUMNS, reference_rows
from src.models.graph import Graph, NodeSet, grid_graph
from src.models.results import RunConfig
from src.services.community_service import CommunityService
from src.services.database_service import DatabaseService
from src.services.measures_service import modularity
from src.services.pipeline_service import PipelineService
from src.services.signal_service import ingest_flow, sample_vertices, synthetic_signal
from src.utils.errors import ValidationError
from src.utils.file_utils import (
    read_edge_list,
    read_full_signal,
    read_node_ids,
    read_signal,
    write_edge_list,
    write_json,
    write_node_ids,
    write_plot_data,
    write_signal,
    write_table,
)
from src.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_SWEEP_SIZES = (400, 800, 1200, 1600, 2000)


def sibling_path(path: str, suffix: str) -> str:
    """`out/result.json` + `_plot.csv` -> `out/result_plot.csv`"""
    stem, _ = os.path.splitext(path)
    return f"{stem}{suffix}"


class CommandHandler:
    """Handles CLI subcommands"""

    def __init__(self, db_url: Optional[str] = None):
        self.db_url = db_url

    # ---------- shared loading ----------

    def _load_samples(self, cfg: RunConfig, g: Graph) -> NodeSet:
        if cfg.sample_ids_path is not None:
            W = read_node_ids(cfg.sample_ids_path, g.node_count)
            if not W:
                raise ValidationError(f"{cfg.sample_ids_path}: no sample vertices")
            return W
        return sample_vertices(g.node_count, cfg.sample_count, cfg.sample_seed)

    def _load_signal(self, cfg: RunConfig, g: Graph, W: NodeSet) -> Tuple[np.ndarray, Optional[np.ndarray]]:
        """Sample values at W and, when the whole signal is known, the truth vector"""
        if cfg.synthetic_seed is not None:
            truth = synthetic_signal(g, cfg.synthetic_seed, cfg.cutoff)
            return truth[list(W)], truth
        nodes, values = read_signal(cfg.signal_path, g.node_count)
        index = {v: i for i, v in enumerate(nodes)}
        missing = [w for w in W if w not in index]
        if missing:
            raise ValidationError(f"Signal has no value at sample vertex {missing[0]}")
        x_W = values[[index[w] for w in W]]
        if len(nodes) == g.node_count:
            return x_W, values
        logger.warning(f"Signal covers {len(nodes)} of {g.node_count} vertices; errors are not computed")
        return x_W, None

    def _record(self, command: str, g: Graph, **fields) -> None:
        try:
            DatabaseService(self.db_url).record_run(command, g.node_count, g.edge_count, **fields)
        except SQLAlchemyError as e:
            logger.error(f"❌ Run store unavailable: {e}")

    # ---------- subcommands ----------

    def handle_communities(self, cfg: RunConfig) -> Dict[str, Any]:
        """Detect communities and write partition JSON plus plot data"""
        g = read_edge_list(cfg.graph_path)
        cfg.validate(g.node_count)
        W = self._load_samples(cfg, g)
        service = CommunityService(cfg.community, cfg.katz)
        partition, expanded = service.detect_communities(g, W)

        result = expanded.to_dict()
        result["modularity"] = modularity(g, partition) if g.edge_count else 0.0
        result["accepted_splits"] = len(service.last_log)
        write_json(cfg.output_path, result)
        write_plot_data(sibling_path(cfg.output_path, "_plot.csv"), expanded, g.node_count)
        logger.info(f"✅ {len(partition)} communities written to {cfg.output_path}")
        return result

    def handle_interpolate(self, cfg: RunConfig) -> Dict[str, Any]:
        """Full pipeline run; writes the result JSON and the approximation CSV"""
        g = read_edge_list(cfg.graph_path)
        cfg.validate(g.node_count, require_signal=True)
        W = self._load_samples(cfg, g)
        x_W, truth = self._load_signal(cfg, g, W)

        pipeline = PipelineService(cfg.community, cfg.kernel, cfg.katz)
        run = pipeline.run(g, W, x_W, truth)
        result = run.to_dict()
        write_json(cfg.output_path, result)
        write_signal(sibling_path(cfg.output_path, "_approx.csv"), run.approximation.values)

        if cfg.record:
            self._record(
                "interpolate", g,
                graph_path=cfg.graph_path,
                sample_count=len(W),
                seed=cfg.sample_seed,
                communities=run.community_count,
                rmae=result["rmae"],
                rrmse=result["rrmse"],
                timings=run.timings.to_dict(),
                params=cfg.params_dict()
            )
        return result

    def handle_synth_signal(self, graph_path: str, seed: int, out: str, cutoff: Optional[float] = None) -> np.ndarray:
        g = read_edge_list(graph_path)
        x = synthetic_signal(g, seed, cutoff)
        write_signal(out, x)
        logger.info(f"✅ Synthetic signal (seed {seed}) written to {out}")
        return x

    def handle_flow_ingest(
        self,
        graph_path: str,
        csv_path: str,
        timestamp: str,
        out: str,
        nodes_out: Optional[str] = None
    ) -> NodeSet:
        """Write the flow slice of the largest measured component and its vertex ids"""
        g = read_edge_list(graph_path)
        flow = ingest_flow(g, csv_path, timestamp)
        write_signal(out, flow.component_values(), flow.component)
        write_node_ids(nodes_out or sibling_path(out, "_nodes.txt"), flow.component)
        return flow.component

    def handle_karate(self, out: Optional[str] = None, record: bool = False) -> Dict[str, Any]:
        """Leaders split the club in two; an adjacent non-leader pair splits nothing"""
        g = Graph.from_edge_list(karate_club.EDGES, karate_club.NODE_COUNT)
        service = CommunityService()
        report: Dict[str, Any] = {}
        experiments = (
            ("leaders", (karate_club.INSTRUCTOR, karate_club.ADMINISTRATOR)),
            ("adjacent_pair", karate_club.NO_SPLIT_PAIR),
        )
        for name, W in experiments:
            partition, _ = service.detect_communities(g, W)
            report[name] = {
                "samples": list(W),
                "communities": [list(c) for c in partition.communities],
                "modularity": modularity(g, partition)
            }
            print(f"{name}: W={list(W)} -> {len(partition)} communities, Q={report[name]['modularity']:.4f}")
            for c in partition.communities:
                print(f"  {list(c)}")

        found = {tuple(c) for c in report["leaders"]["communities"]}
        factions = {karate_club.INSTRUCTOR_FACTION, karate_club.ADMINISTRATOR_FACTION}
        report["matches_factions"] = found == factions
        print(f"Matches the factional split: {report['matches_factions']}")
        if out:
            write_json(out, report)
        if record:
            self._record("karate", g, sample_count=2, communities=len(found), params={})
        return report

    def handle_sweep(
        self,
        cfg: RunConfig,
        sizes: Sequence[int] = DEFAULT_SWEEP_SIZES,
        reference: Optional[str] = None
    ) -> List[Dict[str, Any]]:
        """Reconstruction errors for increasing sample counts, one row per count"""
        g = read_edge_list(cfg.graph_path)
        if (cfg.signal_path is None) == (cfg.synthetic_seed is None):
            raise ValidationError("Exactly one of --signal or --signal-seed is required")
        if cfg.sample_seed is None:
            raise ValidationError("sweep requires --seed")
        counts = sorted({k for k in sizes if 1 <= k <= g.node_count})
        dropped = sorted(set(sizes) - set(counts))
        if dropped:
            logger.warning(f"Sample counts {dropped} exceed {g.node_count} vertices; skipped")
        if not counts:
            raise ValidationError("No sample count fits the graph")

        if cfg.synthetic_seed is not None:
            truth = synthetic_signal(g, cfg.synthetic_seed, cfg.cutoff)
        else:
            truth = read_full_signal(cfg.signal_path, g.node_count)

        pipeline = PipelineService(cfg.community, cfg.kernel, cfg.katz)
        rows: List[Dict[str, Any]] = []
        for k in counts:
            W = sample_vertices(g.node_count, k, cfg.sample_seed)
            run = pipeline.run(g, W, truth[list(W)], truth)
            rows.append({
                "samples": k,
                "communities": run.community_count,
                "rmae": run.errors.rmae,
                "rrmse": run.errors.rrmse,
                "time_s": run.timings.total
            })
            if cfg.record:
                self._record(
                    "sweep", g,
                    graph_path=cfg.graph_path,
                    sample_count=k,
                    seed=cfg.sample_seed,
                    communities=run.community_count,
                    rmae=run.errors.rmae,
                    rrmse=run.errors.rrmse,
                    timings=run.timings.to_dict(),
                    params=cfg.params_dict()
                )

        self._print_rows("GBF-PUM", rows)
        if reference:
            self._print_rows(f"published ({reference})", reference_rows(reference))
        write_table(cfg.output_path, rows)
        write_json(sibling_path(cfg.output_path, ".json"), {"rows": rows, "params": cfg.params_dict()})
        return rows

    def handle_runs(self, limit: int = 20) -> List[Dict[str, Any]]:
        runs = [r.to_dict() for r in DatabaseService(self.db_url).list_runs(limit)]
        for r in runs:
            rmae = f"{r['rmae']:.3e}" if r["rmae"] is not None else "-"
            rrmse = f"{r['rrmse']:.6e}" if r["rrmse"] is not None else "-"
            print(f"{r['id']:>5} {r['command']:<12} n={r['node_count']:<6} W={r['sample_count']} "
                  f"communities={r['communities']} rmae={rmae} rrmse={rrmse} {r['created_at']}")
        return runs

    def handle_grid(self, rows: int, cols: int, out: str) -> Graph:
        if rows < 1 or cols < 1:
            raise ValidationError("Grid dimensions must be positive")
        g = grid_graph(rows, cols)
        write_edge_list(g, out, header=f"{rows}x{cols} grid, vertex id = row * {cols} + col")
        logger.info(f"✅ Grid with {g.node_count} vertices and {g.edge_count} edges written to {out}")
        return g

    @staticmethod
    def _print_rows(title: str, rows: List[Dict[str, Any]]) -> None:
        print(title)
        print("  ".join(f"{c:>12}" for c in REFERENCE_COLUMNS))
        for row in rows:
            print(f"{row['samples']:>12}  {row['communities']:>12}  {row['rmae']:>12.3e}  "
                  f"{row['rrmse']:>12.6e}  {row['time_s']:>12.3e}")
