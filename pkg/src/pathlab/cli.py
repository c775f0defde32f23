"""Command-line harness.

Subcommands: ``model`` (analytic queries), ``simulate`` (seeded
Monte-Carlo report), ``validate`` (simulate + model comparison +
chi-square), ``tables`` (reference-table reproduction).

Exit codes: 0 success, 1 usage or configuration error, 2 runtime error.
``PATHLAB_SEED`` supplies the default master seed when ``--seed`` is
not given.
"""

from __future__ import annotations

import sys

import click

from . import model
from .harness import (
    DEFAULT_SIZES,
    DEFAULT_TRIALS,
    LARGE_SIZE_THRESHOLD,
    ConfigError,
    ExperimentConfig,
    run_experiment,
)
from .report import FormatError, model_query, render_report, reproduce_tables

_FORMAT_NAMES = {"md": "markdown", "csv": "csv", "json": "json"}

_format_option = click.option(
    "--format", "fmt", type=click.Choice(sorted(_FORMAT_NAMES)), default="md",
    show_default=True, help="Output format.",
)
_seed_option = click.option(
    "--seed", type=int, envvar="PATHLAB_SEED", default=0, show_default=True,
    help="Master seed (env PATHLAB_SEED when omitted).",
)
_jobs_option = click.option(
    "--jobs", type=click.IntRange(min=1), default=1, show_default=True,
    help="Worker threads for trials.",
)


def _parse_sizes(_ctx, _param, value: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in value.split(","))
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {value!r}")


@click.group()
def cli():
    """Patricia-trie path-length model and Monte-Carlo validation."""


@cli.command("model")
@click.option("--n", type=click.IntRange(min=1), required=True,
              help="Number of keys in the modeled trie.")
@click.option("--kmax", type=click.IntRange(min=1, max=model.MAX_PATH_LENGTH),
              default=model.MAX_PATH_LENGTH, show_default=True)
@_format_option
def model_cmd(n: int, kmax: int, fmt: str):
    """Print the analytic path-length distribution for N keys."""
    click.echo(model_query(n, kmax, _FORMAT_NAMES[fmt]), nl=False)


def _experiment_options(fn):
    for deco in (
        click.option("--sizes", callback=_parse_sizes,
                     default=",".join(str(s) for s in DEFAULT_SIZES),
                     show_default=True, help="Comma-separated address counts."),
        click.option("--trials", type=click.IntRange(min=1),
                     default=DEFAULT_TRIALS, show_default=True),
        _seed_option,
        click.option("--mode", type=click.Choice(["uniform", "crypto"]),
                     default="uniform", show_default=True),
        click.option("--kmax", type=click.IntRange(min=1, max=model.MAX_PATH_LENGTH),
                     default=model.MAX_PATH_LENGTH, show_default=True),
        click.option("--min-expected", type=float, default=5.0, show_default=True,
                     help="Chi-square bin-merge threshold."),
        click.option("--allow-large", is_flag=True,
                     help=f"Permit sizes above {LARGE_SIZE_THRESHOLD}."),
        _jobs_option,
        click.option("--out", type=click.Path(dir_okay=False, writable=True),
                     default=None, help="Write output to a file instead of stdout."),
    ):
        fn = deco(fn)
    return fn


def _run(sizes, trials, seed, mode, kmax, min_expected, allow_large, jobs, fmt):
    cfg = ExperimentConfig(
        sizes=sizes, trials=trials, master_seed=seed, mode=mode, k_max=kmax,
        output_format=_FORMAT_NAMES[fmt], min_expected=min_expected,
        allow_large=allow_large,
    )
    if any(s > LARGE_SIZE_THRESHOLD for s in sizes):
        click.echo(
            f"warning: sizes above {LARGE_SIZE_THRESHOLD} may take a long time",
            err=True,
        )
    report = run_experiment(cfg, jobs=jobs)
    return render_report(report, _FORMAT_NAMES[fmt])


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


@cli.command()
@_experiment_options
@click.option("--format", "fmt", type=click.Choice(sorted(_FORMAT_NAMES)),
              default="json", show_default=True)
def simulate(sizes, trials, seed, mode, kmax, min_expected, allow_large, jobs,
             out, fmt):
    """Run seeded trials and emit the full experiment report."""
    _emit(_run(sizes, trials, seed, mode, kmax, min_expected, allow_large,
               jobs, fmt), out)


@cli.command()
@_experiment_options
@_format_option
def validate(sizes, trials, seed, mode, kmax, min_expected, allow_large, jobs,
             out, fmt):
    """Simulate, compare against the model, and run chi-square tests."""
    _emit(_run(sizes, trials, seed, mode, kmax, min_expected, allow_large,
               jobs, fmt), out)


@cli.command()
@click.option("--out", "out_dir", type=click.Path(file_okay=False),
              required=True, help="Directory for the six table files.")
@_seed_option
@click.option("--trials", type=click.IntRange(min=1), default=DEFAULT_TRIALS,
              show_default=True)
@_jobs_option
def tables(out_dir, seed, trials, jobs):
    """Reproduce the six reference tables as CSV files."""
    for path in reproduce_tables(out_dir, master_seed=seed, trials=trials,
                                 jobs=jobs):
        click.echo(str(path))


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except (click.ClickException,) as exc:
        exc.show(file=sys.stderr)
        return 1
    except (ConfigError, FormatError, model.ModelDomainError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except OSError as exc:
        target = getattr(exc, "filename", None)
        suffix = f" ({target})" if target else ""
        click.echo(f"runtime error: {exc}{suffix}", err=True)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        click.echo(f"runtime error: {exc}", err=True)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
