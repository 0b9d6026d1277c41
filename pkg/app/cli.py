"""
Command-line entry point.

    python -m app.cli run --graph edges.txt --weights deg --algo pipeline --lambda 0.5 --seed 7 --trials 10 --bounds
    python -m app.cli sweep --graph edges.txt --lambdas 0,0.25,0.5,1 --target-k 4
    python -m app.cli serve --port 8000

Reports go to stdout (or --output) as JSON. Failures print an error object
{"error", "message", "line"?} on stdout and exit 1 for rejected input, 2 for
anything unexpected. Logs go to stderr.
"""
from builtins import Exception, OSError, dict, float, int, list, open, str
import json
import logging
import sys
from typing import List, Optional, Tuple

import click

from app.dependencies import get_settings
from app.models.graph_model import WeightAssignment
from app.services.clustering_service import ALGORITHMS, ClusteringService
from app.services.pipeline_service import SWEEP_ALGORITHMS
from app.utils.common import setup_logging
from app.utils.edge_list import ParsedGraph, parse_edge_list, parse_weights
from app.utils.errors import ClusteringError, ParseError

settings = get_settings()
logger = logging.getLogger(__name__)

STDOUT_TARGETS = ("stdout", "-")


def _read(path: str, what: str) -> str:
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as e:
        logger.error(f"Cannot read {what} {path}: {e}")
        raise ParseError(f"cannot read {what} {path}: {e.strerror or e}")


def _load(graph_path: str, weights: str) -> Tuple[ParsedGraph, WeightAssignment]:
    parsed = parse_edge_list(_read(graph_path, "graph"))
    if weights in ("deg", "unit"):
        return parsed, parse_weights(weights, parsed)
    return parsed, parse_weights("file", parsed, _read(weights, "weights file"))


def _emit(body: dict, output: str) -> None:
    text = json.dumps(body, indent=2) + "\n"
    if output in STDOUT_TARGETS:
        click.echo(text, nl=False)
    else:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)


def _parse_lambdas(ctx, param, value: str) -> List[float]:
    try:
        return [float(x) for x in value.split(",") if x.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated numbers, got {value!r}")


graph_option = click.option(
    "--graph", "graph_path", required=True, type=click.Path(dir_okay=False), help="Edge list file."
)
weights_option = click.option(
    "--weights", default="deg", show_default=True, help="deg, unit, or a path to a 'v w' weight file."
)
seed_option = click.option("--seed", type=int, default=settings.default_seed, show_default=True)
trials_option = click.option("--trials", type=int, default=settings.default_trials, show_default=True)
output_option = click.option(
    "--output", default="stdout", show_default=True, help="Report path; 'stdout' or '-' prints it."
)


@click.group()
def cli():
    """Ratio-objective graph clustering."""
    setup_logging()


@cli.command()
@graph_option
@weights_option
@click.option("--lambda", "lam", type=float, default=settings.default_lambda, show_default=True)
@click.option("--algo", type=click.Choice(ALGORITHMS), default="pipeline", show_default=True)
@seed_option
@trials_option
@click.option("--bounds", "with_bounds", is_flag=True, help="Add the spanning-forest certificate.")
@output_option
def run(graph_path, weights, lam, algo, seed, trials, with_bounds, output):
    """Cluster a graph and print the JSON report."""
    parsed, w = _load(graph_path, weights)
    report = ClusteringService.report(parsed, w, algo, lam=lam, seed=seed, trials=trials, with_bounds=with_bounds)
    _emit(report.to_output(), output)


@cli.command()
@graph_option
@weights_option
@click.option("--lambdas", callback=_parse_lambdas, default="0,0.25,0.5,0.75,1", show_default=True)
@click.option("--algo", type=click.Choice(SWEEP_ALGORITHMS), default="agglomerative", show_default=True)
@seed_option
@trials_option
@click.option("--target-k", type=int, default=None, help="Mark the lambda whose cluster count is closest.")
@output_option
def sweep(graph_path, weights, lambdas, algo, seed, trials, target_k, output):
    """Solve for several lambdas and report cluster count against NCut."""
    parsed, w = _load(graph_path, weights)
    report = ClusteringService.sweep(parsed, w, lambdas, algo=algo, seed=seed, trials=trials, target_k=target_k)
    _emit(report.model_dump(by_alias=True), output)


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Serve the HTTP API with uvicorn."""
    import uvicorn

    uvicorn.run("app.main:app", host=host, port=port)


def _fail(body: dict) -> None:
    click.echo(json.dumps(body))


def main(argv: Optional[List[str]] = None) -> int:
    """Runs the CLI and maps failures to exit codes; returns the code instead of exiting."""
    try:
        code = cli.main(args=argv, prog_name="ratio-clustering", standalone_mode=False)
    except ClusteringError as e:
        _fail(e.to_dict())
        return 1
    except click.ClickException as e:
        _fail({"error": "UsageError", "message": e.format_message()})
        return 1
    except click.exceptions.Abort:
        _fail({"error": "Aborted", "message": "aborted"})
        return 1
    except Exception as e:
        logger.exception(f"Unexpected failure: {e}")
        _fail({"error": "InternalError", "message": str(e)})
        return 2
    return code if isinstance(code, int) else 0


if __name__ == "__main__":
    sys.exit(main())
