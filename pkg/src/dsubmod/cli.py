"""Command-line entry point: ``dsubmod gen|run|bounds|verify|experiment``."""

from __future__ import annotations

import csv
import sys
from pathlib import Path

import click

from . import graphgen
from .bounds import BoundReport, bound_report
from .core import brute_force_opt
from .dag import chromatic_number, format_graph, read_graph
from .errors import InvalidInputError, SizeGuardError
from .experiments import EXPERIMENTS, ExperimentConfig, run_experiment
from .greedy import TieBreak, approximation_ratio, prefer, run_sequential, run_synchronous
from .objectives import CoverageGrid, make_adversarial, make_coverage, make_universal, read_disks
from .verify import SUITES, run_suites


class _Group(click.Group):
    """Turn library errors into a one-line diagnostic and a nonzero exit code."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except InvalidInputError as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(2)
        except SizeGuardError as exc:
            click.echo(f"guard exceeded: {exc}", err=True)
            ctx.exit(3)
        except OSError as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(2)


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        click.echo(text, nl=False)


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InvalidInputError(f"expected comma-separated integers, got {text!r}") from None


@click.group(cls=_Group)
def main():
    """Local greedy submodular maximisation over information DAGs."""


@main.command()
@click.argument("family", type=click.Choice(graphgen.FAMILIES))
@click.option("--n", "n", type=int, help="Number of vertices (er, ba, ws, complete, empty).")
@click.option("--p", "p", type=float, help="Edge probability (er).")
@click.option("--k", "k", type=int, help="Neighbours per side before rewiring (ws).")
@click.option("--beta", type=float, default=0.25, show_default=True, help="Rewiring probability (ws).")
@click.option("--m", "m", type=int, help="Half size of the bipartite gap graph (gap).")
@click.option("--blocks", help="Comma-separated block sizes (cliques).")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="Graph file to write (default stdout).")
def gen(family, n, p, k, beta, m, blocks, seed, output):
    """Generate a graph and write it in the edge-list format."""
    def need(name, value):
        if value is None:
            raise InvalidInputError(f"family {family!r} needs --{name}")
        return value

    if family == "er":
        g = graphgen.gen_er_dag(need("n", n), need("p", p), seed)
    elif family == "ba":
        g = graphgen.gen_ba_dag(need("n", n), seed)
    elif family == "ws":
        g = graphgen.gen_ws_dag(need("n", n), need("k", k), beta, seed)
    elif family == "cliques":
        g, _ = graphgen.gen_interconnected_cliques(_int_list(need("blocks", blocks)))
    elif family == "gap":
        g = graphgen.gen_bipartite_gap(need("m", m))
    elif family == "complete":
        g = graphgen.gen_complete_dag(need("n", n))
    else:
        g = graphgen.gen_empty(need("n", n))
    _emit(format_graph(g), output)


@main.command()
@click.option("--graph", "graph_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--objective", type=click.Choice(["universal", "adversarial", "coverage"]),
              default="universal", show_default=True)
@click.option("--disks", type=click.Path(exists=True, dir_okay=False), help="Disk file (coverage).")
@click.option("--grid", type=int, default=100, show_default=True, help="Grid resolution (coverage).")
@click.option("--m", "m", type=int, help="Ground size for the universal objective (default n).")
@click.option("--tiebreak", type=click.Choice(["lowest-index", "highest-index", "seeded-random", "prefer-a"]),
              default="lowest-index", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for seeded-random ties.")
@click.option("--rounds", type=int, help="Run synchronous updates for this many rounds.")
@click.option("--optimum/--no-optimum", default=False, help="Also brute-force the optimum.")
@click.option("--trace-csv", type=click.Path(dir_okay=False), help="Write the trace here instead of stdout.")
def run(graph_path, objective, disks, grid, m, tiebreak, seed, rounds, optimum, trace_csv):
    """Run the local greedy on a graph file and print its trace."""
    g = read_graph(graph_path)
    if objective == "universal":
        inst = make_universal(g.n, m)
    elif objective == "adversarial":
        inst = make_adversarial(g, chromatic_number(g)[1])
    else:
        if not disks:
            raise InvalidInputError("coverage objective needs --disks")
        inst = make_coverage(read_disks(disks), CoverageGrid(grid))
    if tiebreak == "prefer-a":
        tb = prefer(lambda x: isinstance(x, tuple) and x[0] == "a")
    elif tiebreak == "seeded-random":
        tb = TieBreak.seeded(seed)
    else:
        tb = TieBreak(tiebreak)
    if rounds is not None:
        sol = run_synchronous(inst, g, tb, rounds)[-1]
    else:
        sol = run_sequential(inst, g, tb)
    _emit(sol.trace_csv(), trace_csv)
    click.echo(f"# value {sol.value} ({float(sol.value):.6g})", err=trace_csv is None)
    if optimum:
        # both constructions reach n by giving every agent a distinct element
        opt = g.n if objective != "coverage" else brute_force_opt(inst)[1]
        ratio = approximation_ratio(sol, inst, opt)
        click.echo(f"# optimum {opt}  ratio {ratio} ({float(ratio):.6g})", err=trace_csv is None)


@main.command()
@click.option("--graph", "graph_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), help="Also write a one-row CSV.")
def bounds(graph_path, csv_path):
    """Print lower and upper performance bounds for a graph."""
    g = read_graph(graph_path)
    report = bound_report(g)
    click.echo(report.format())
    if csv_path:
        with open(csv_path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(BoundReport.CSV_COLUMNS)
            w.writerow(report.csv_row())


@main.command()
@click.option("--suite", "suites", multiple=True, type=click.Choice(sorted(SUITES)),
              help="Suite to run (repeatable; default all).")
def verify(suites):
    """Check the proved inequalities on seeded random instances against brute force."""
    results = run_suites(suites)
    for r in results:
        click.echo(r.line())
    if not all(r.ok for r in results):
        sys.exit(1)


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              help="key=value config file.")
@click.option("--name", type=click.Choice(EXPERIMENTS), help="Experiment (overrides the config).")
@click.option("--seed", type=int, help="Master seed (overrides the config).")
@click.option("--output-dir", type=click.Path(file_okay=False), help="Directory for CSV output.")
def experiment(config_path, name, seed, output_dir):
    """Run one of the random-graph experiments and write CSV results."""
    text = Path(config_path).read_text() if config_path else ""
    overrides = []
    if name:
        overrides.append(f"experiment={name}")
    if seed is not None:
        overrides.append(f"master_seed={seed}")
    if output_dir:
        overrides.append(f"output_dir={output_dir}")
    config = ExperimentConfig.from_text(text + "\n" + "\n".join(overrides))
    result = run_experiment(config)
    for path in result.write(config.output_dir):
        click.echo(f"wrote {path}")
    if result.name == "correlation":
        click.echo(f"spearman_rho {result.summary[0]['spearman_rho']:.4f}")


if __name__ == "__main__":
    main()
