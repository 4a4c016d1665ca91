"""Command line front door: train, rank, explain, serve, reproduce."""
from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import data_path
from .contrast import contrast_pair, parse_policy
from .dataset import load_csv, stratified_split, subset
from .encoding import TableEncoder
from .errors import PolicyError, RankLensError
from .glm import backward_stepwise, load_model, model_to_dict, save_model
from .narrate import render_chart_data, render_text
from .ranking import rank, ranking_to_csv, top_k
from .schema import load_schema
from .service import Session, create_app


DEFAULT_TRAIN_FRACTION = 0.65
DEFAULT_ALPHA = 0.05
DEFAULT_K = 5
DEFAULT_SEED = 0


def _load(data, schema):
    schema_path = Path(schema) if schema else data_path("campus_schema.yaml")
    data_file = Path(data) if data else data_path("campus_recruitment_synthetic.csv")
    return load_csv(data_file, load_schema(schema_path))


def _policy(text: str):
    try:
        return parse_policy(text)
    except PolicyError as exc:
        raise click.UsageError(str(exc))


data_option = click.option("--data", type=click.Path(exists=True), default=None,
                           help="Dataset CSV (default: bundled synthetic recruitment data).")
schema_option = click.option("--schema", type=click.Path(exists=True), default=None,
                             help="Schema YAML (default: bundled recruitment schema).")


@click.group()
def main():
    """Fit a scoring model, rank candidates, and explain pairwise contrasts."""


@main.command()
@data_option
@schema_option
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@click.option("--train-fraction", type=float, default=DEFAULT_TRAIN_FRACTION, show_default=True)
@click.option("--alpha", type=float, default=DEFAULT_ALPHA, show_default=True,
              help="Significance level for backward stepwise selection.")
@click.option("--tol", type=float, default=1e-8, show_default=True)
@click.option("--max-iter", type=int, default=100, show_default=True)
@click.option("--out", type=click.Path(), default="model.json", show_default=True)
def train(data, schema, seed, train_fraction, alpha, tol, max_iter, out):
    """Fit by maximum likelihood with backward stepwise feature selection."""
    try:
        ds = _load(data, schema)
        train_idx, _ = stratified_split(ds, train_fraction, seed)
        encoder = TableEncoder().fit(ds, train_idx)
        matrix = encoder.transform(subset(ds, train_idx))
        model, trace = backward_stepwise(matrix, alpha_level=alpha, tol=tol, max_iter=max_iter)
        save_model(model, out)
    except RankLensError as exc:
        raise click.ClickException(str(exc))
    click.echo(f"model written to {out}")
    click.echo(f"retained features: {', '.join(model.retained_raw_features) or '(intercept only)'}")
    for col, coef, p in zip(model.columns, model.coefficients, model.p_values):
        click.echo(f"  {col.name:<24} coef={coef:+.4f}  p={p:.4g}")
    if trace.steps:
        removed = ", ".join(s.removed_feature for s in trace.steps)
        click.echo(f"removed (in order): {removed}")


@main.command("rank")
@click.option("--model", "model_path", type=click.Path(exists=True), required=True)
@data_option
@schema_option
@click.option("--k", type=int, default=DEFAULT_K, show_default=True)
@click.option("--out", type=click.Path(), default=None, help="Ranking CSV path (default: stdout).")
def rank_cmd(model_path, data, schema, k, out):
    """Score a pool and emit the ranking as CSV."""
    try:
        model = load_model(model_path)
        pool = _load(data, schema)
        rl = rank(model, pool, min(k, pool.n))
        text = ranking_to_csv(rl, pool, model, path=out)
    except RankLensError as exc:
        raise click.ClickException(str(exc))
    if out is None:
        click.echo(text, nl=False)
    else:
        click.echo(f"ranking written to {out}")


@main.command()
@click.argument("id_a")
@click.argument("id_b")
@click.option("--model", "model_path", type=click.Path(exists=True), required=True)
@data_option
@schema_option
@click.option("--policy", default="topz:2", show_default=True,
              help="topz:<int> | cum:<float> | mixed:<float>,<int>")
@click.option("--chart-out", type=click.Path(), default=None, help="Write chart JSON here.")
@click.option("--report-out", type=click.Path(), default=None, help="Write report JSON here.")
def explain(id_a, id_b, model_path, data, schema, policy, chart_out, report_out):
    """Explain why one item outranks another; text to stdout, charts to files."""
    selection = _policy(policy)
    try:
        model = load_model(model_path)
        pool = _load(data, schema)
        rl = rank(model, pool, min(DEFAULT_K, pool.n))
        report = contrast_pair(model, rl, pool, id_a, id_b, selection)
        text = render_text(report)
    except RankLensError as exc:
        raise click.ClickException(str(exc))
    click.echo(str(text))
    if chart_out:
        Path(chart_out).write_text(
            json.dumps(render_chart_data(report).to_dict(), indent=2), encoding="utf-8")
    if report_out:
        Path(report_out).write_text(
            json.dumps(report.to_dict(), indent=2), encoding="utf-8")


@main.command()
@click.option("--model", "model_path", type=click.Path(exists=True), default=None)
@data_option
@schema_option
@click.option("--fixture", is_flag=True,
              help="Serve the bundled top-10 review fixture (model, pool and k=5).")
@click.option("--k", type=int, default=DEFAULT_K, show_default=True)
@click.option("--policy", default="topz:2", show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--state-dir", type=click.Path(), default=".", show_default=True,
              help="Directory for the decision log (decisions.ndjson).")
@click.option("--static-dir", type=click.Path(), default=None,
              help="Directory with the dashboard bundle to host at /.")
def serve(model_path, data, schema, fixture, k, policy, host, port, state_dir, static_dir):
    """Start the HTTP service (rankings, contrasts, decision log)."""
    import uvicorn

    if fixture:
        model_path = model_path or data_path("table1_model.json")
        data = data or data_path("table1_pool.csv")
        schema = schema or data_path("table1_schema.yaml")
    if model_path is None:
        raise click.UsageError("either --model or --fixture is required")
    try:
        model = load_model(model_path)
        pool = _load(data, schema)
        state = Path(state_dir)
        state.mkdir(parents=True, exist_ok=True)
        session = Session(
            model, pool, k=min(k, pool.n), default_policy=_policy(policy),
            log_path=state / "decisions.ndjson",
        )
    except RankLensError as exc:
        raise click.ClickException(str(exc))
    app = create_app(session, static_dir=static_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")


@main.command()
@data_option
@schema_option
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@click.option("--train-fraction", type=float, default=DEFAULT_TRAIN_FRACTION, show_default=True)
@click.option("--alpha", type=float, default=DEFAULT_ALPHA, show_default=True)
@click.option("--k", type=int, default=DEFAULT_K, show_default=True)
@click.option("--policy", default="topz:2", show_default=True)
@click.option("--out-dir", type=click.Path(), default="reproduction", show_default=True)
def reproduce(data, schema, seed, train_fraction, alpha, k, policy, out_dir):
    """Run the whole experiment: split, select, fit, rank, explain the
    boundary pair; write every artifact under --out-dir."""
    selection = _policy(policy)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    try:
        ds = _load(data, schema)
        train_idx, holdout_idx = stratified_split(ds, train_fraction, seed)
        encoder = TableEncoder().fit(ds, train_idx)
        model, trace = backward_stepwise(
            encoder.transform(subset(ds, train_idx)), alpha_level=alpha)
        save_model(model, out / "model.json")

        holdout = subset(ds, holdout_idx)
        rl = rank(model, holdout, min(k, holdout.n))
        ranking_to_csv(rl, holdout, model, path=out / "ranking.csv")

        boundary = rl.entries[rl.k - 1], rl.entries[min(rl.k, rl.n - 1)]
        report = contrast_pair(
            model, rl, holdout, boundary[0].item_id, boundary[1].item_id, selection)
        text = render_text(report)
        (out / "explanation.txt").write_text(str(text) + "\n", encoding="utf-8")
        (out / "report.json").write_text(
            json.dumps(report.to_dict(), indent=2), encoding="utf-8")
        (out / "chart.json").write_text(
            json.dumps(render_chart_data(report).to_dict(), indent=2), encoding="utf-8")

        summary = {
            "seed": seed,
            "train_fraction": train_fraction,
            "alpha_level": alpha,
            "k": k,
            "n": ds.n,
            "train_rows": len(train_idx),
            "holdout_rows": len(holdout_idx),
            "class_balance": {
                "positive": int(ds.targets().sum()),
                "negative": int(ds.n - ds.targets().sum()),
            },
            "retained_features": model.retained_raw_features,
            "removed_features": [s.removed_feature for s in trace.steps],
            "coefficients": {
                col.name: {"coefficient": float(c), "p_value": float(p)}
                for col, c, p in zip(model.columns, model.coefficients, model.p_values)
            },
            "boundary_pair": [boundary[0].item_id, boundary[1].item_id],
        }
        (out / "summary.json").write_text(
            json.dumps(summary, indent=2), encoding="utf-8")
    except RankLensError as exc:
        raise click.ClickException(str(exc))

    click.echo(f"artifacts written to {out}/")
    click.echo(f"retained features: {', '.join(model.retained_raw_features)}")
    click.echo("top of the ranking:")
    click.echo(f"  {'RANK':>4}  {'ID':<8} SCORE")
    for e in rl.entries[: min(10, rl.n)]:
        click.echo(f"  {e.rank:>4}  {e.item_id:<8} {e.score:.5f}")
    click.echo(f"boundary pair at the top-{rl.k} cut: "
               f"{boundary[0].item_id} vs {boundary[1].item_id}")
    click.echo(str(text))


if __name__ == "__main__":
    sys.exit(main())
