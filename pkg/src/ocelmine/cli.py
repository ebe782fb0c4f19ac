"""Command-line interface for generation, validation, log algebra,
discovery, the case-study recipes, and the end-to-end reproduction."""

from __future__ import annotations

import functools
import json
from pathlib import Path

import click

from . import casegen, labels, ops, recipes
from .core import OcelLog, OcelmineError, TypeLabel
from .discovery import Dfg, dfg_to_dot, discover_dfg, discover_ocdfg
from .io import load_json_file, parse_document, save_json, save_json_file, write_text_atomic
from .metrics import compute_metrics, default_fixture_path, load_fixture_file, select_model

_OUTDIR = click.option(
    "--outdir",
    envvar="OCELMINE_OUTDIR",
    default=".",
    show_default=True,
    type=click.Path(file_okay=False, path_type=Path),
    help="Output directory (env: OCELMINE_OUTDIR).",
)


def _fail_on_error(func):
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (OcelmineError, ZeroDivisionError) as exc:
            click.echo(f"{type(exc).__name__}: {exc}", err=True)
            raise SystemExit(1)

    return wrapper


def _load(path: Path) -> OcelLog:
    return load_json_file(path)


def _write_json(path: Path, payload: dict) -> None:
    write_text_atomic(path, json.dumps(payload, indent=2, ensure_ascii=False) + "\n")


@click.group()
@click.version_option(package_name="ocelmine")
def main() -> None:
    """Object-centric process mining over OCEL 2.0 logs, with a
    deterministic insurance-claims case study built in."""


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Generator configuration (JSON or key=value); defaults to the case-study calibration.")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False, path_type=Path),
              help="Where to write the OCEL 2.0 JSON log.")
@_fail_on_error
def generate(config_path: Path | None, out_path: Path) -> None:
    """Generate the synthetic claims-process log."""
    config = casegen.load_config_file(config_path) if config_path else casegen.default_case_config()
    log = casegen.generate(config)
    save_json_file(log, out_path)
    click.echo(f"wrote {len(log.events)} events / {len(log.objects)} objects to {out_path}")


@main.command()
@click.argument("log_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@_fail_on_error
def validate(log_path: Path) -> None:
    """Validate an OCEL 2.0 JSON log; exit 0 iff it is loadable."""
    _, report = parse_document(log_path.read_text(encoding="utf-8"))
    for problem in report.errors:
        click.echo(f"error: {problem}", err=True)
    for problem in report.warnings:
        click.echo(f"warning: {problem}")
    click.echo(f"{log_path}: {len(report.errors)} errors, {len(report.warnings)} warnings")
    if report.errors:
        raise SystemExit(1)


@main.command()
@click.argument("log_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False, path_type=Path),
              help="Where to write the CSV matrix.")
@click.option("--fig", "fig_path", type=click.Path(dir_okay=False, path_type=Path),
              help="Also render the matrix as a heatmap PNG.")
@_fail_on_error
def matrix(log_path: Path, out_path: Path, fig_path: Path | None) -> None:
    """Compute the activity-by-object-type extraction matrix."""
    result = ops.extraction_matrix(_load(log_path))
    write_text_atomic(out_path, ops.matrix_to_csv(result))
    click.echo(f"wrote {out_path}")
    if fig_path:
        from . import report

        report.save_matrix_heatmap(result, fig_path)
        click.echo(f"wrote {fig_path}")


@main.command()
@click.argument("log_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--type", "type_text", required=True, help="Case object type, e.g. claim.")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False, path_type=Path))
@_fail_on_error
def flatten(log_path: Path, type_text: str, out_path: Path) -> None:
    """Flatten a log onto one object type."""
    flat = ops.flatten(_load(log_path), TypeLabel.parse(type_text))
    write_text_atomic(out_path, ops.save_flat_json(flat))
    click.echo(f"wrote {len(flat.cases)} cases to {out_path}")


@main.group()
def discover() -> None:
    """Discover directly-follows models."""


@discover.command("dfg")
@click.option("--in", "in_path", required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Flattened log (JSON) produced by the flatten command.")
@click.option("--dot", "dot_path", required=True, type=click.Path(dir_okay=False, path_type=Path))
@_fail_on_error
def discover_dfg_cmd(in_path: Path, dot_path: Path) -> None:
    """Discover a DFG from a flattened log and export DOT."""
    flat = ops.load_flat_json(in_path.read_text(encoding="utf-8"))
    model = discover_dfg(flat)
    write_text_atomic(dot_path, dfg_to_dot(model))
    click.echo(f"wrote {dot_path} ({len(model.nodes)} nodes, {len(model.edges)} edges)")


@discover.command("ocdfg")
@click.option("--in", "in_path", required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="OCEL 2.0 JSON log.")
@click.option("--dot", "dot_path", required=True, type=click.Path(dir_okay=False, path_type=Path))
@_fail_on_error
def discover_ocdfg_cmd(in_path: Path, dot_path: Path) -> None:
    """Discover an OC-DFG from an OCEL log and export DOT."""
    model = discover_ocdfg(_load(in_path))
    write_text_atomic(dot_path, dfg_to_dot(model))
    click.echo(f"wrote {dot_path} ({len(model.nodes)} nodes, {len(model.typed_edges)} typed edges)")


def _save_log(log: OcelLog, out_path: Path) -> None:
    save_json_file(log, out_path)
    click.echo(f"wrote {len(log.events)} events / {len(log.objects)} objects to {out_path}")


@main.group(name="ops")
def ops_group() -> None:
    """Apply a single log-algebra operation."""


@ops_group.command("filter")
@click.argument("log_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--mode", type=click.Choice(["keep", "drop"]), required=True)
@click.option("--activity", "activities", multiple=True, required=True)
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False, path_type=Path))
@_fail_on_error
def ops_filter(log_path: Path, mode: str, activities: tuple[str, ...], out_path: Path) -> None:
    """Keep or drop events by activity."""
    _save_log(ops.filter_activities(_load(log_path), mode, activities), out_path)


@ops_group.command("retain-linked")
@click.argument("log_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--target", required=True, help="Activity whose events are filtered.")
@click.option("--anchor", required=True, help="Activity whose events anchor the link.")
@click.option("--via", required=True, help="Object type carrying the link.")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False, path_type=Path))
@_fail_on_error
def ops_retain_linked(log_path: Path, target: str, anchor: str, via: str, out_path: Path) -> None:
    """Keep target events sharing a via-typed object with an anchor event."""
    _save_log(ops.retain_linked(_load(log_path), target, anchor, via), out_path)


@ops_group.command("drilldown")
@click.argument("log_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--type", "type_text", required=True)
@click.option("--attribute", required=True)
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False, path_type=Path))
@_fail_on_error
def ops_drilldown(log_path: Path, type_text: str, attribute: str, out_path: Path) -> None:
    """Refine an object type by an attribute value."""
    _save_log(ops.drill_down(_load(log_path), type_text, attribute), out_path)


@ops_group.command("unfold")
@click.argument("log_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--activity", required=True)
@click.option("--type", "type_text", required=True)
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False, path_type=Path))
@_fail_on_error
def ops_unfold(log_path: Path, activity: str, type_text: str, out_path: Path) -> None:
    """Relabel an activity by its relation to an object type."""
    _save_log(ops.unfold(_load(log_path), activity, type_text), out_path)


@ops_group.command("project")
@click.argument("log_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--keep", "keeps", multiple=True, required=True)
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False, path_type=Path))
@_fail_on_error
def ops_project(log_path: Path, keeps: tuple[str, ...], out_path: Path) -> None:
    """Keep only the given object types."""
    _save_log(ops.project_object_types(_load(log_path), keeps), out_path)


@ops_group.command("latest-note")
@click.argument("log_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False, path_type=Path))
@_fail_on_error
def ops_latest_note(log_path: Path, out_path: Path) -> None:
    """Keep one note per claim: the latest before the claim's first scan."""
    _save_log(ops.latest_note_filter(_load(log_path)), out_path)


def _dfg_nodes(model) -> dict[str, int]:
    return {label.display: count for label, count in sorted(model.nodes.items(), key=lambda kv: kv[0].display)}


def _q1_payload(model: Dfg) -> dict:
    rc = model.nodes.get(labels.ACT_REGISTER_CLAIM, 0)
    rcp = model.nodes.get(labels.ACT_REPORT_PART, 0)
    return {
        "recipe": "q1",
        "counts": {
            "claims_registered": rc,
            "parts_reported": rcp,
            "investigations": model.nodes.get(labels.ACT_CREATE_INVESTIGATION, 0),
        },
        "human_reported_pct": recipes.format_percent(rcp, rc) if rc else None,
        "nodes": _dfg_nodes(model),
    }


def _q2_payload(model: Dfg) -> dict:
    pcp = labels.ACT_PREDICT_PART
    rc = model.nodes.get(labels.ACT_REGISTER_CLAIM, 0)
    unique = model.incoming_flow(pcp)
    return {
        "recipe": "q2",
        "counts": {
            "claims_registered": rc,
            "unique_predictions": unique,
            "duplicate_predictions": model.edges.get((pcp, pcp), 0),
            "investigations": model.nodes.get(labels.ACT_CREATE_INVESTIGATION, 0),
        },
        "ai_predicted_pct": recipes.format_percent(unique, rc) if rc else None,
        "nodes": _dfg_nodes(model),
    }


def _q3_payload(model) -> dict:
    plain = labels.ACT_CREATE_INVESTIGATION
    return {
        "recipe": "q3",
        "counts": {
            "missed_by_ai": model.nodes.get(plain, 0),
            "identified_by_ai": model.nodes.get(plain.refine(labels.TYPE_AI.display), 0),
        },
        "nodes": _dfg_nodes(model),
    }


def _q4_payload(model) -> dict:
    plain = labels.ACT_CREATE_INVESTIGATION
    return {
        "recipe": "q4",
        "counts": {
            "missed_by_handlers": model.nodes.get(plain, 0),
            "identified_by_handlers": model.nodes.get(plain.refine(labels.TYPE_CLAIM_HANDLER.display), 0),
        },
        "nodes": _dfg_nodes(model),
    }


def _venn_payload(venn) -> dict:
    return {
        "recipe": "venn",
        "counts": {"ai_only": venn.ai_only, "both": venn.both, "human_only": venn.human_only},
        "total": venn.total,
    }


@main.command()
@click.argument("name", type=click.Choice(["q1", "q2", "q3", "q4", "venn", "scaling"]))
@click.option("--in", "in_path", required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@_OUTDIR
@_fail_on_error
def recipe(name: str, in_path: Path, outdir: Path) -> None:
    """Run one published analysis; writes a JSON summary plus DOT/PNG."""
    outdir.mkdir(parents=True, exist_ok=True)
    log = _load(in_path)
    if name == "q1":
        model = recipes.q1_human_effectiveness(log)
        payload = _q1_payload(model)
        write_text_atomic(outdir / "q1.dot", dfg_to_dot(model))
    elif name == "q2":
        model = recipes.q2_ai_effectiveness(log)
        payload = _q2_payload(model)
        write_text_atomic(outdir / "q2.dot", dfg_to_dot(model))
    elif name == "q3":
        model = recipes.q3_missed_by_ai(log)
        payload = _q3_payload(model)
        write_text_atomic(outdir / "q3.dot", dfg_to_dot(model))
    elif name == "q4":
        model = recipes.q4_missed_by_humans(log)
        payload = _q4_payload(model)
        write_text_atomic(outdir / "q4.dot", dfg_to_dot(model))
    elif name == "venn":
        venn = recipes.venn_attribution(log)
        payload = _venn_payload(venn)
        from . import report

        report.save_venn_figure(venn, outdir / "venn.png")
    else:
        payload = {"recipe": "scaling", "scaling_pct": f"{recipes.scaling_percentage(log)}%"}
    _write_json(outdir / f"{name}.json", payload)
    click.echo(json.dumps(payload.get("counts", payload), indent=2))
    click.echo(f"wrote {outdir / (name + '.json')}")


@main.group(name="metrics")
def metrics_group() -> None:
    """Model evaluation reports."""


@metrics_group.command("table1")
@click.option("--fixtures", "fixture_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Fixture JSON; defaults to the bundled evaluation table.")
@_OUTDIR
@_fail_on_error
def metrics_table1(fixture_path: Path | None, outdir: Path) -> None:
    """Recompute the model evaluation table and pick the winner."""
    outdir.mkdir(parents=True, exist_ok=True)
    rows, baseline = load_fixture_file(fixture_path or default_fixture_path())
    lines = ["version,language,accuracy,precision,recall,f1"]
    for row in rows:
        computed = compute_metrics(row.confusion)
        lines.append(
            f"{row.version},{row.language},{computed.accuracy:.4f},{computed.precision:.4f},"
            f"{computed.recall:.4f},{computed.f1:.4f}"
        )
        click.echo(
            f"{row.key}: accuracy={computed.accuracy:.2f} precision={computed.precision:.2f} "
            f"recall={computed.recall:.2f} f1={computed.f1:.2f}"
        )
    write_text_atomic(outdir / "table1.csv", "\n".join(lines) + "\n")

    selection = select_model({row.key: row.published for row in rows}, baseline)
    verdict = "meets" if selection.meets_baseline else "misses"
    click.echo(
        f"selected {selection.version} (recall {selection.recall:.2f}), "
        f"{verdict} the {baseline:.2f} baseline"
    )
    from . import report

    report.save_recall_chart(rows, baseline, outdir / "recall.png")
    click.echo(f"wrote {outdir / 'table1.csv'} and {outdir / 'recall.png'}")


@main.command()
@_OUTDIR
@_fail_on_error
def repro(outdir: Path) -> None:
    """Generate the default log, run every recipe, and compare all counts
    against the case-study targets."""
    from . import report

    outdir.mkdir(parents=True, exist_ok=True)
    config = casegen.default_case_config()
    log = casegen.generate(config)
    write_text_atomic(outdir / "log.json", save_json(log))

    q1 = recipes.q1_human_effectiveness(log)
    q2 = recipes.q2_ai_effectiveness(log)
    q3 = recipes.q3_missed_by_ai(log)
    q4 = recipes.q4_missed_by_humans(log)
    venn = recipes.venn_attribution(log)
    for name, model in (("q1", q1), ("q2", q2), ("q3", q3), ("q4", q4)):
        write_text_atomic(outdir / f"{name}.dot", dfg_to_dot(model))
    _write_json(outdir / "q1.json", _q1_payload(q1))
    _write_json(outdir / "q2.json", _q2_payload(q2))
    _write_json(outdir / "q3.json", _q3_payload(q3))
    _write_json(outdir / "q4.json", _q4_payload(q4))
    _write_json(outdir / "venn.json", _venn_payload(venn))
    scaling_pct = f"{recipes.scaling_percentage(log)}%"
    _write_json(outdir / "scaling.json", {"recipe": "scaling", "scaling_pct": scaling_pct})

    inv = labels.ACT_CREATE_INVESTIGATION
    rc_count = q1.nodes.get(labels.ACT_REGISTER_CLAIM, 0)
    rcp_count = q1.nodes.get(labels.ACT_REPORT_PART, 0)
    unique_pcp = q2.incoming_flow(labels.ACT_PREDICT_PART)
    observed = {
        "q1_rc": rc_count,
        "q1_rcp": rcp_count,
        "q1_ccpi": q1.nodes.get(inv, 0),
        "q2_unique_pcp": unique_pcp,
        "q2_ccpi": q2.nodes.get(inv, 0),
        "q3_ccpi": q3.nodes.get(inv, 0),
        "q3_ccpi_ai": q3.nodes.get(inv.refine(labels.TYPE_AI.display), 0),
        "q4_ccpi": q4.nodes.get(inv, 0),
        "q4_ccpi_handler": q4.nodes.get(inv.refine(labels.TYPE_CLAIM_HANDLER.display), 0),
        "venn_ai_only": venn.ai_only,
        "venn_both": venn.both,
        "venn_human_only": venn.human_only,
        "human_reported_pct": recipes.format_percent(rcp_count, rc_count),
        "ai_predicted_pct": recipes.format_percent(unique_pcp, rc_count),
        "scaling_pct": scaling_pct,
    }

    targets = recipes.CASE_REFERENCE_COUNTS
    rows = []
    all_ok = True
    for name, target in targets.items():
        value = observed[name]
        ok = value == target
        all_ok &= ok
        rows.append({"metric": name, "observed": value, "target": target, "status": "PASS" if ok else "FAIL"})
        click.echo(f"{'PASS' if ok else 'FAIL'} {name}: observed={value} target={target}")

    csv_lines = ["metric,observed,target,status"]
    csv_lines += [f"{r['metric']},{r['observed']},{r['target']},{r['status']}" for r in rows]
    write_text_atomic(outdir / "summary.csv", "\n".join(csv_lines) + "\n")
    _write_json(
        outdir / "summary.json",
        {"config": casegen.config_to_dict(config), "results": rows, "all_pass": all_ok},
    )

    report.save_venn_figure(venn, outdir / "venn.png")
    drilled = ops.drill_down(log, labels.TYPE_EMPLOYEE, labels.ROLE_ATTRIBUTE)
    matrix_result = ops.extraction_matrix(drilled)
    write_text_atomic(outdir / "matrix.csv", ops.matrix_to_csv(matrix_result))
    report.save_matrix_heatmap(matrix_result, outdir / "matrix.png")
    numeric = {k: v for k, v in observed.items() if isinstance(v, int)}
    report.save_target_comparison(numeric, {k: v for k, v in targets.items() if isinstance(v, int)}, outdir / "counts.png")

    click.echo(f"artifacts in {outdir}")
    if not all_ok:
        raise SystemExit(1)


if __name__ == "__main__":
    main()
