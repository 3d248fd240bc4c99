"""Command-line interface for evenset.

Graphs are read as DIMACS from a file or from stdin (``-``), so generators
and solvers can be piped together::

    evenset gen --kind cycle --len 400 | evenset solve --c 3/5

Machine formats (DIMACS from ``gen``, separator dumps from ``decompose``
and everything under ``--format json``) go to stdout unstyled; logs and
errors go to stderr.
"""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path

import click
import typer
from rich.console import Console
from rich.table import Table

from .config import DEFAULTS, EvensetConfig, config_path_get, load_config, remove_config_key, update_config
from .errors import (
    EvensetError,
    GraphError,
    InvalidWeights,
    NotPawFriendlyEvidence,
    ParseError,
    PreconditionFailed,
)
from .formats import parse_dimacs, parse_fraction, parse_weights, render_dimacs, separator_from_json, separator_to_json
from .generate import GeneratorKind, generate
from .models import Graph, Weights
from .recognition import check_preconditions
from .separator import tame_separator, verify_separator
from .solver import SolveOptions, SolverResult, brute_force_mwis, solve

logger = logging.getLogger(__name__)

#: Exit codes beyond 0 (success) and 1 (failure or violation).
EXIT_PRECONDITION = 2
EXIT_EVIDENCE = 3
EXIT_USAGE = 64
EXIT_DATA = 65

# --- Rich Consoles ---

console = Console()
err_console = Console(stderr=True)

# --- Typer apps ---

app = typer.Typer(
    help="Maximum weight independent sets through even set separators.",
    add_completion=False,
    rich_markup_mode="rich",
)
verify_app = typer.Typer(help="Check separators and class membership.", rich_markup_mode="rich")
config_app = typer.Typer(help="Manage user configuration.", rich_markup_mode="rich")
app.add_typer(verify_app, name="verify")
app.add_typer(config_app, name="config")


# --- State ---


class State:
    """Shared state for all commands."""

    config: EvensetConfig
    quiet: bool = False
    no_color: bool = False
    format: str = "table"


state = State()


def _echo(message: object, **kwargs: object) -> None:
    """Print a message unless ``--quiet`` is set."""
    if not state.quiet:
        console.print(message, **kwargs)


def _echo_format(data: object) -> None:
    """Write ``data`` as JSON to stdout; machine output ignores ``--quiet``."""
    typer.echo(json.dumps(data, indent=2))


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        err_console.print(f"[red]Error:[/red] Cannot read '{path}': {e.strerror}")
        raise typer.Exit(code=1)


def _load_graph(path: str) -> Graph:
    return parse_dimacs(_read_text(path))


def _load_weights(path: str | None, g: Graph) -> list[int] | None:
    if path is None:
        return None
    return parse_weights(_read_text(path), g.n)


def _options(c: str | None, check: bool = False) -> SolveOptions:
    try:
        overrides = {"c": parse_fraction(c) if c else None, "check": check}
        return SolveOptions.from_config(state.config.to_dict(), **overrides)
    except (ValueError, ParseError) as e:
        raise click.BadParameter(str(e)) from None


def _result_table(title: str, result: SolverResult) -> Table:
    table = Table(title=title, show_header=False, title_style="bold cyan")
    table.add_column("Key", style="dim")
    table.add_column("Value")
    table.add_row("Weight", str(result.weight))
    table.add_row("Size", str(len(result.solution)))
    shown = sorted(result.solution)
    text = " ".join(str(v) for v in shown[:40]) + (" …" if len(shown) > 40 else "")
    table.add_row("Solution", text)
    stats = result.stats
    if stats.branch is not None:
        table.add_row("Top separator", stats.branch.name.lower())
        table.add_row("Separators", str(stats.separators))
        table.add_row("Recursion depth", str(stats.depth))
        table.add_row("SFM calls", str(stats.sfm_calls))
        table.add_row("Oracle calls", str(stats.oracle_calls))
        table.add_row("z", str(stats.z))
    table.add_row("Time elapsed", f"{stats.elapsed:.4f}s")
    return table


@app.callback()
def app_callback(
    quiet: bool = typer.Option(False, "--quiet", "-q", help="Suppress informational output."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Increase output verbosity."),
    no_color: bool = typer.Option(False, "--no-color", help="Disable colored output."),
    format_opt: str | None = typer.Option(None, "--format", help="Output format: table or json. Overrides config."),
) -> None:
    """Set up logging and shared state."""
    global console, err_console

    state.quiet = quiet
    state.no_color = no_color

    if no_color:
        console = Console(no_color=True, highlight=False)
        err_console = Console(stderr=True, no_color=True, highlight=False)

    log_level = logging.INFO
    if quiet:
        log_level = logging.WARNING
    elif verbose:
        log_level = logging.DEBUG
    logging.basicConfig(level=log_level, stream=sys.stderr)

    state.config = load_config()
    state.format = format_opt or str(state.config.get("format", "table"))
    if state.format not in ("table", "json"):
        raise click.BadParameter(f"unknown format {state.format!r}", param_hint="--format")


# --- Solving ---


@app.command("solve")
def solve_cmd(
    graph: str = typer.Option("-", "--graph", "-g", help="DIMACS graph file, '-' for stdin."),
    weights: str | None = typer.Option(None, "--weights", "-w", help="Weight file, one integer per line."),
    c: str | None = typer.Option(None, "--c", help="Balance constant as num/den. Overrides config."),
    check: bool = typer.Option(False, "--check", help="Refuse inputs with a forbidden structure."),
    as_json: bool = typer.Option(False, "--json", help="Shorthand for --format json."),
) -> None:
    """Solve maximum weight independent set exactly."""
    g = _load_graph(graph)
    values = _load_weights(weights, g)
    result = solve(g, values, _options(c, check))
    if as_json or state.format == "json":
        _echo_format(result.to_dict())
    else:
        _echo(_result_table("Maximum Weight Independent Set", result))


@app.command("oracle")
def oracle_cmd(
    graph: str = typer.Option("-", "--graph", "-g", help="DIMACS graph file, '-' for stdin."),
    weights: str | None = typer.Option(None, "--weights", "-w", help="Weight file, one integer per line."),
) -> None:
    """Solve by branch and bound (at most 30 vertices by default)."""
    g = _load_graph(graph)
    values = _load_weights(weights, g)
    result = brute_force_mwis(g, values, int(state.config.brute_cap))
    if state.format == "json":
        _echo_format(result.to_dict())
    else:
        _echo(_result_table("Brute-Force MWIS", result))


@app.command("decompose")
def decompose_cmd(
    graph: str = typer.Option("-", "--graph", "-g", help="DIMACS graph file, '-' for stdin."),
    c: str | None = typer.Option(None, "--c", help="Balance constant as num/den. Overrides config."),
) -> None:
    """Build a tame separator under uniform weights and dump it as JSON."""
    g = _load_graph(graph)
    options = _options(c)
    sep = tame_separator(g, Weights.uniform(g.n), options.c)
    typer.echo(json.dumps(separator_to_json(sep)))


@app.command("gen")
def gen_cmd(
    kind: GeneratorKind = typer.Option(..., "--kind", "-k", help="Instance family."),
    seed: int = typer.Option(0, "--seed", "-s", help="Random seed."),
    length: int = typer.Option(8, "--len", help="Cycle or path length."),
    n: int | None = typer.Option(None, "--n", help="Base vertex count (subdivided, filtered-random)."),
    degree: int = typer.Option(3, "--degree", help="Degree of the random regular base graph."),
    base: str = typer.Option("random", "--base", help="Base of a subdivided graph: random or complete."),
    p: float = typer.Option(0.2, "--p", help="Edge probability of filtered-random."),
) -> None:
    """Generate a class instance and write it as DIMACS."""
    params: dict[str, object] = {"len": length, "degree": degree, "base": base, "p": p}
    if n is not None:
        params["n"] = n
    instance = generate(kind, params, seed)
    logger.info("%s", instance.note)
    typer.echo(f"c {instance.note}\n" + render_dimacs(instance.graph), nl=False)


# --- Verification ---


@verify_app.command("separator")
def verify_separator_cmd(
    graph: str = typer.Option("-", "--graph", "-g", help="DIMACS graph file, '-' for stdin."),
    sep_path: str = typer.Option(..., "--sep", help="Separator dump produced by 'decompose'."),
    full_evenness: bool = typer.Option(False, "--full-evenness", help="Also check every layer pair is even."),
) -> None:
    """Re-check a separator dump against its graph."""
    g = _load_graph(graph)
    sep = separator_from_json(_read_text(sep_path))
    report = verify_separator(g, sep, full_evenness=full_evenness, path_cap=int(state.config.path_cap))
    if state.format == "json":
        _echo_format(report.to_dict())
    else:
        table = Table(title="Separator Verification", title_style="bold cyan")
        table.add_column("Kind", style="bold")
        table.add_column("Detail")
        table.add_column("Vertices", style="dim")
        for violation in report.violations:
            table.add_row(violation.kind, violation.detail, " ".join(map(str, violation.vertices[:20])))
        for u, v in report.undecided:
            table.add_row("undecided", "path cap reached", f"{u} {v}")
        if report.ok:
            _echo(f"[green]✓[/green] {len(report.checks)} checks passed: {', '.join(report.checks)}")
        else:
            _echo(table)
    if not report.ok:
        raise typer.Exit(code=1)


@verify_app.command("class")
def verify_class_cmd(
    graph: str = typer.Option("-", "--graph", "-g", help="DIMACS graph file, '-' for stdin."),
) -> None:
    """Report connectivity, C4, prism, Berge and paw evidence."""
    g = _load_graph(graph)
    report = check_preconditions(g, int(state.config.berge_cap), int(state.config.path_cap))
    data = report.to_dict()
    if state.format == "json":
        _echo_format(data)
    else:
        table = Table(title="Class Membership", show_header=False, title_style="bold cyan")
        table.add_column("Key", style="dim")
        table.add_column("Value")
        for key, value in data.items():
            if isinstance(value, dict):
                value = f"{value['kind']} {value['vertices']}"
            elif isinstance(value, list):
                value = f"{len(value)} found"
            table.add_row(key, "-" if value is None else str(value))
        _echo(table)
    if not report.in_class:
        raise typer.Exit(code=1)


# --- Config sub-commands ---


@config_app.command("path")
def config_path_cmd() -> None:
    """Show the path to the config file."""
    console.print(config_path_get())


@config_app.command("list")
def config_list_cmd() -> None:
    """List current settings."""
    full_config = load_config()
    if state.format == "json":
        _echo_format(dict(full_config.items()))
    else:
        table = Table(title="Configuration", title_style="bold cyan")
        table.add_column("Key", style="bold")
        table.add_column("Value", justify="right")
        for key, value in full_config.items():
            table.add_row(key, str(value))
        _echo(table)


@config_app.command("get")
def config_get_cmd(
    key: str = typer.Argument(help="The configuration key to get."),
) -> None:
    """Get a configuration value."""
    value = load_config().get(key)
    if state.format == "json":
        _echo_format({key: value})
    else:
        _echo(str(value))


@config_app.command("set")
def config_set_cmd(
    key: str = typer.Argument(help="The configuration key to set."),
    value: str = typer.Argument(help="The value to set."),
) -> None:
    """Set a configuration value."""
    if key not in DEFAULTS:
        err_console.print(f"[red]Error:[/red] Invalid configuration key: '{key}'")
        raise typer.Exit(code=1)
    try:
        typed_value: int | str = type(DEFAULTS[key])(value)
        if key == "c":
            parse_fraction(value)
    except (ValueError, ParseError):
        err_console.print(f"[red]Error:[/red] Invalid value for '{key}': '{value}'")
        raise typer.Exit(code=1)
    new_config = update_config(key, typed_value)
    _echo(f"[green]✓[/green] Set [bold]{key}[/bold] to {new_config[key]}")
    state.config.update(new_config)


@config_app.command("unset")
def config_unset_cmd(
    key: str = typer.Argument(help="The configuration key to unset."),
) -> None:
    """Unset a configuration value."""
    new_config = remove_config_key(key)
    _echo(f"[green]✓[/green] Unset [bold]{key}[/bold], returning to default.")
    state.config.clear()
    state.config.update(new_config)


def _exit_code(error: EvensetError) -> int:
    if isinstance(error, PreconditionFailed):
        return EXIT_PRECONDITION
    if isinstance(error, NotPawFriendlyEvidence):
        return EXIT_EVIDENCE
    if isinstance(error, (GraphError, InvalidWeights)):
        return EXIT_DATA
    return 1


def main() -> None:
    """Entry point for the evenset command line interface."""
    try:
        code = app(standalone_mode=False)
    except click.UsageError as e:
        e.show()
        sys.exit(EXIT_USAGE)
    except click.ClickException as e:
        e.show()
        sys.exit(e.exit_code)
    except click.Abort:
        err_console.print("Aborted.")
        sys.exit(1)
    except EvensetError as e:
        err_console.print(f"[red]Error:[/red] {e}")
        sys.exit(_exit_code(e))
    sys.exit(code if isinstance(code, int) else 0)


if __name__ == "__main__":
    main()
