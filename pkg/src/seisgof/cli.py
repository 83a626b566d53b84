"""Command-line surface: synth, gof, sweep and report.

Errors exit non-zero with a machine-readable JSON object on stderr; a sweep
with per-run failures writes what it can and exits 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import report, traceio
from .config import ConfigError, PipelineConfig, config_echo, load_config
from .ensemble import (build_grid, correlation_tables, group_report,
                       run_sweep)
from .gof_anderson import score_pair
from .gof_tf import record_tf_gof, tf_misfits, to_gof, write_plane_csv
from .signal import COMPONENTS, align_records
from .source import scenario_from_dict, synth_fullspace


class CliError(RuntimeError):
    pass


def _load_scenario(cfg: PipelineConfig):
    if cfg.scenario_path is None:
        raise CliError("config must reference a scenario JSON file")
    return scenario_from_dict(json.loads(cfg.scenario_path.read_text()))


def _load_reference(cfg: PipelineConfig):
    if cfg.reference_path is None:
        raise CliError("config must reference a recorded trace CSV "
                       "(\"reference\")")
    return traceio.read_record(cfg.reference_path)


def cmd_synth(cfg: PipelineConfig, out_dir: Path) -> int:
    """Synthesize one record for the scenario mechanism and write trace files."""
    scenario, fm, stf = _load_scenario(cfg)
    record = synth_fullspace(scenario, fm, stf)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = traceio.write_record(record, out_dir / "synthetic.csv")
    report.write_manifest(out_dir / "manifest.json", {
        "command": "synth",
        "config": config_echo(cfg),
        "mechanism": {"strike": fm.strike, "dip": fm.dip, "rake": fm.rake},
        "files": [csv_path.name, traceio.meta_path_for(csv_path).name],
    })
    return 0


def cmd_gof(record_path: Path, synthetic_path: Path, cfg: PipelineConfig,
            out_dir: Path, component: str = "all") -> int:
    """Both GOF frameworks on one recorded/synthetic pair."""
    rec = traceio.read_record(record_path)
    sim = traceio.read_record(synthetic_path)
    rec, sim = align_records(rec, sim)
    wanted = COMPONENTS if component == "all" else (component,)

    anderson = score_pair(rec, sim, config=cfg.anderson)
    anderson = {comp: anderson[comp] for comp in wanted}
    tf = {comp: gof for comp, gof in record_tf_gof(rec, sim, cfg.tf).items()
          if comp in wanted}

    out_dir.mkdir(parents=True, exist_ok=True)
    files = []
    files.append(report.write_anderson_csv(out_dir / "anderson_scores.csv",
                                           anderson).name)
    summary = {
        "record": str(record_path),
        "synthetic": str(synthetic_path),
        "anderson": report.anderson_summary(anderson),
        "tf": {comp: {"EG": gof.eg, "PG": gof.pg,
                      "TEG": gof.teg.tolist(), "TPG": gof.tpg.tolist(),
                      "FEG": gof.feg.tolist(), "FPG": gof.fpg.tolist(),
                      "freqs": gof.freqs.tolist()}
               for comp, gof in tf.items()},
    }
    summary_path = out_dir / "gof_summary.json"
    summary_path.write_text(json.dumps(summary, indent=2, sort_keys=True)
                            + "\n")
    files.append(summary_path.name)
    for comp, gof in tf.items():
        for name, matrix in (("tfeg", gof.tfeg), ("tfpg", gof.tfpg)):
            p = write_plane_csv(out_dir / f"{name}_{comp}.csv", gof.times,
                                gof.freqs, matrix)
            files.append(p.name)
    report.write_manifest(out_dir / "manifest.json", {
        "command": "gof", "config": config_echo(cfg), "files": sorted(files),
    })
    return 0


def _ingest_external_run(external_dir: Path, angles) -> Path:
    name = report.run_dir_name(angles)
    for candidate in (external_dir / f"{name}.csv",
                      external_dir / name / "synthetic.csv"):
        if candidate.exists():
            return candidate
    raise CliError(f"external run not found for mechanism {name} under "
                   f"{external_dir}")


def cmd_sweep(cfg: PipelineConfig, out_dir: Path,
              external_runs: Path | None = None) -> int:
    """Full grid pipeline: synthesis (or ingestion), scores, correlations."""
    scenario, center, stf = _load_scenario(cfg)
    reference = _load_reference(cfg)
    grid = build_grid(center, cfg.grid_deltas)

    if external_runs is None:
        results = run_sweep(scenario, grid, reference, stf=stf,
                            anderson_config=cfg.anderson, tf_config=cfg.tf,
                            workers=cfg.workers)
    else:
        results = _sweep_external(grid, reference, cfg, external_runs)

    out_dir.mkdir(parents=True, exist_ok=True)
    files = []
    failed = []
    for result in results:
        run_dir = out_dir / "runs" / report.run_dir_name(result.angles)
        run_dir.mkdir(parents=True, exist_ok=True)
        if result.synthetic is not None:
            traceio.write_record(result.synthetic, run_dir / "synthetic.csv")
        report.write_run_gof_json(run_dir / "gof.json", result)
        if result.error is not None:
            failed.append({"run": report.run_dir_name(result.angles),
                           "error": result.error})

    tables = correlation_tables(results)
    for comp, table in tables.items():
        p = report.write_correlations_csv(
            out_dir / f"correlations_{comp}.csv", table, cfg.alpha)
        files.append(p.name)
        svg = report.render_correlation_svg(table, cfg.alpha)
        svg_path = out_dir / f"correlation_{comp}.svg"
        svg_path.write_text(svg)
        files.append(svg_path.name)

    grouped = group_report(results)
    files.append(report.write_grouped_csv(out_dir / "grouped_scores.csv",
                                          grouped).name)
    for comp in COMPONENTS:
        svg_path = out_dir / f"grouped_{comp}.svg"
        svg_path.write_text(report.render_grouped_svg(grouped, comp))
        files.append(svg_path.name)

    report.write_manifest(out_dir / "manifest.json", {
        "command": "sweep",
        "config": config_echo(cfg),
        "grid": {"strikes": list(grid.strikes), "dips": list(grid.dips),
                 "rakes": list(grid.rakes), "size": grid.size},
        "runs": [report.run_dir_name(r.angles) for r in results],
        "failed_runs": failed,
        "correlation_note": tables[COMPONENTS[0]].note if tables else None,
        "files": sorted(files),
    })
    return 2 if failed else 0


def _sweep_external(grid, reference, cfg: PipelineConfig,
                    external_dir: Path) -> list:
    from .ensemble import RunResult
    from .source import FocalMechanism

    results = []
    for angles in grid.angles():
        try:
            path = _ingest_external_run(external_dir, angles)
            synthetic = traceio.read_record(path)
            rec, sim = align_records(reference, synthetic)
            results.append(RunResult(
                angles=angles, fm=FocalMechanism(*angles),
                synthetic=synthetic,
                anderson=score_pair(rec, sim, config=cfg.anderson),
                tf=record_tf_gof(rec, sim, cfg.tf)))
        except Exception as exc:
            results.append(RunResult(angles=angles,
                                     error=f"{type(exc).__name__}: {exc}"))
    return results


def cmd_report(run_dir: Path, out_dir: Path, alpha: float = 0.05) -> int:
    """Re-render SVG charts and the manifest from a sweep output directory."""
    from .renderdata import (grouped_rows_from_csv, table_from_csv)

    run_dir = Path(run_dir)
    if not run_dir.is_dir():
        raise CliError(f"run directory not found: {run_dir}")
    out_dir.mkdir(parents=True, exist_ok=True)
    files = []
    for comp in COMPONENTS:
        csv_path = run_dir / f"correlations_{comp}.csv"
        if not csv_path.exists():
            raise CliError(f"missing {csv_path.name} in {run_dir}")
        table = table_from_csv(csv_path, comp)
        svg_path = out_dir / f"correlation_{comp}.svg"
        svg_path.write_text(report.render_correlation_svg(table, alpha))
        files.append(svg_path.name)
    grouped_path = run_dir / "grouped_scores.csv"
    if not grouped_path.exists():
        raise CliError(f"missing grouped_scores.csv in {run_dir}")
    grouped = grouped_rows_from_csv(grouped_path)
    for comp in COMPONENTS:
        svg_path = out_dir / f"grouped_{comp}.svg"
        svg_path.write_text(report.render_grouped_svg(grouped, comp))
        files.append(svg_path.name)
    report.write_manifest(out_dir / "manifest.json", {
        "command": "report", "source_dir": str(run_dir),
        "files": sorted(files),
    })
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seisgof",
        description="Synthesize point-source seismograms and score them "
                    "against recorded motions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_synth = sub.add_parser("synth", help="synthesize one record")
    p_synth.add_argument("--config", required=True)
    p_synth.add_argument("--out", default=None)

    p_gof = sub.add_parser("gof", help="score one recorded/synthetic pair")
    p_gof.add_argument("record")
    p_gof.add_argument("synthetic")
    p_gof.add_argument("--config", default=None)
    p_gof.add_argument("--out", default=None)
    p_gof.add_argument("--component", choices=[*COMPONENTS, "all"],
                       default="all")

    p_sweep = sub.add_parser("sweep", help="run the mechanism grid pipeline")
    p_sweep.add_argument("--config", required=True)
    p_sweep.add_argument("--out", default=None)
    p_sweep.add_argument("--workers", type=int, default=None)
    p_sweep.add_argument("--external-runs", default=None)

    p_report = sub.add_parser("report", help="render charts from a sweep dir")
    p_report.add_argument("run_dir")
    p_report.add_argument("--out", default=None)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "gof" and args.config is None:
            cfg = PipelineConfig()
        elif getattr(args, "config", None) is not None:
            cfg = load_config(args.config)
        else:
            cfg = PipelineConfig()
        if getattr(args, "workers", None) is not None:
            cfg.workers = args.workers
        out_dir = Path(args.out) if args.out is not None else cfg.output_dir

        if args.command == "synth":
            return cmd_synth(cfg, out_dir)
        if args.command == "gof":
            return cmd_gof(Path(args.record), Path(args.synthetic), cfg,
                           out_dir, args.component)
        if args.command == "sweep":
            external = (Path(args.external_runs)
                        if args.external_runs is not None else None)
            return cmd_sweep(cfg, out_dir, external)
        if args.command == "report":
            return cmd_report(Path(args.run_dir), out_dir, cfg.alpha)
        raise CliError(f"unknown command {args.command!r}")
    except (CliError, ConfigError, ValueError, OSError) as exc:
        payload = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        print(json.dumps(payload), file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
