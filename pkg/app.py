import logging
import sys
from functools import wraps

import click
from dotenv import load_dotenv

from config import get_log_level
from services.count_table import Engine, Statistic
from services.counting_service import ENGINES_BY_STATISTIC, build_table, compare_engines
from services.export_service import (
    bivariate_to_json,
    bivariate_to_lines,
    comparisons_to_lines,
    results_to_json,
    results_to_pretty,
    series_to_json,
    series_to_lines,
    table_to_pretty,
    tables_to_csv,
    tables_to_json,
    tables_to_xlsx,
    tree_record,
    trees_to_csv,
    trees_to_json,
    trees_to_pretty,
)
from services.permutation_service import (
    Permutation,
    extension_witness,
    in_res,
    is_andre,
    lr_minima,
    phi_inverse,
    rl_minima,
)
from services.series_service import cycle_egf, euler_log_series, f2_series, ftilde
from services.tree_service import Orientation, check_tree_size, iter_trees
from services.verification_service import run_property_suite
from utils.errors import EnumerationError
from utils.permutation_parser import PermutationParser

# Load environment variables from .env file
load_dotenv()

# Configure logging
logging.basicConfig(
    level=get_log_level(),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

EXIT_DISCREPANCY = 1

SERIES_BUILDERS = {
    'euler': euler_log_series,
    'cycle': cycle_egf,
    'f2': f2_series,
}


def reports_usage_errors(f):
    """Turn service errors into click usage failures (exit status 2)."""

    @wraps(f)
    def decorated_function(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except EnumerationError as e:
            logger.error(f"{f.__name__} failed: {e}")
            raise click.UsageError(str(e))

    return decorated_function


def parse_engines(statistic, selector):
    """``all`` or a comma-separated engine list, brute force first when present."""
    allowed = ENGINES_BY_STATISTIC[statistic]
    if selector.strip() == 'all':
        return list(allowed)
    engines = []
    for name in selector.split(','):
        name = name.strip()
        try:
            engine = Engine(name)
        except ValueError:
            raise click.BadParameter(f"unknown engine '{name}'", param_hint='--engine')
        if engine not in allowed:
            raise click.BadParameter(
                f"engine '{name}' cannot count '{statistic.value}'", param_hint='--engine')
        if engine not in engines:
            engines.append(engine)
    engines.sort(key=lambda e: e is not Engine.BRUTE)
    return engines


@click.group()
def cli():
    """Binary increasing trees, restrictions of Andre permutations and their counts."""


# ==================================================
# TREES
# ==================================================

@cli.command()
@click.option('--n', 'n', type=int, required=True, help='Tree size.')
@click.option('--format', 'fmt', type=click.Choice(['pretty', 'csv', 'json']), default='pretty')
@reports_usage_errors
def trees(n, fmt):
    """List B_n with statistics and both phi images."""
    records = [tree_record(t) for t in iter_trees(n)]
    logger.info(f"Listed {len(records)} trees of size {n}")
    writers = {'pretty': trees_to_pretty, 'csv': trees_to_csv, 'json': trees_to_json}
    click.echo(writers[fmt](n, records), nl=False)


# ==================================================
# TABLES
# ==================================================

@cli.command()
@click.option('--stat', 'stat', type=click.Choice([s.value for s in Statistic]), required=True)
@click.option('--n-max', 'n_max', type=int, required=True, help='Largest tree size.')
@click.option('--engine', 'engine', default='all', show_default=True,
              help="'all' or a comma-separated list of brute, eco, series, recursion.")
@click.option('--format', 'fmt', type=click.Choice(['pretty', 'csv', 'json', 'xlsx']),
              default='pretty')
@click.option('--output', 'output', type=click.Path(dir_okay=False), default=None,
              help='Workbook path, required with --format xlsx.')
@reports_usage_errors
def table(stat, n_max, engine, fmt, output):
    """Count trees by min-path (lr) or max-path (rl) length with one or more engines."""
    statistic = Statistic(stat)
    if n_max < 1:
        raise click.BadParameter(f"must be at least 1, got {n_max}", param_hint='--n-max')
    if fmt == 'xlsx' and not output:
        raise click.UsageError("--format xlsx needs --output")

    engines = parse_engines(statistic, engine)
    tables = [build_table(statistic, e, n_max) for e in engines]
    comparisons = compare_engines(tables)

    if fmt == 'json':
        click.echo(tables_to_json(tables, comparisons), nl=False)
    elif fmt == 'csv':
        click.echo(tables_to_csv(tables), nl=False)
    elif fmt == 'xlsx':
        tables_to_xlsx(tables, output)
    else:
        click.echo('\n'.join(table_to_pretty(t) for t in tables), nl=False)

    verdict = comparisons_to_lines(comparisons)
    # json carries its own verdict; csv and xlsx keep stdout a clean data stream
    if verdict and fmt != 'json':
        click.echo('\n'.join(verdict), err=fmt != 'pretty')

    if not all(c.agreed for c in comparisons):
        logger.error(f"Engines disagree on {statistic.value} up to n={n_max}")
        sys.exit(EXIT_DISCREPANCY)


# ==================================================
# VERIFY
# ==================================================

@cli.command()
@click.option('--n-max', 'n_max', type=int, default=10, show_default=True)
@click.option('--format', 'fmt', type=click.Choice(['pretty', 'json']), default='pretty')
@click.option('--inject-fault', is_flag=True, default=False,
              help='Replace the min-path succession rule with a perturbed one.')
@reports_usage_errors
def verify(n_max, fmt, inject_fault):
    """Run the whole property suite; exit 1 when any property fails."""
    check_tree_size(n_max, 'verify size')

    results = run_property_suite(n_max, inject_fault=inject_fault)
    writer = results_to_json if fmt == 'json' else results_to_pretty
    click.echo(writer(results), nl=False)

    failed = [r.name for r in results if not r.passed]
    if failed:
        logger.error(f"{len(failed)} properties failed: {', '.join(failed)}")
        sys.exit(EXIT_DISCREPANCY)
    logger.info(f"All {len(results)} properties passed up to n={n_max}")


# ==================================================
# SERIES
# ==================================================

@cli.command()
@click.option('--name', 'name', type=click.Choice(['euler', 'ftilde', 'cycle', 'f2']),
              required=True)
@click.option('--order', 'order', type=int, required=True, help='Truncation order.')
@click.option('--format', 'fmt', type=click.Choice(['pretty', 'json']), default='pretty')
@reports_usage_errors
def series(name, order, fmt):
    """Dump exact coefficients of a generating function.

    euler is L = integral of (sec + tan), so its dump opens with a zero
    constant term before e_1.
    """
    if name == 'ftilde':
        s = ftilde(order)
        text = bivariate_to_json(name, s) if fmt == 'json' else '\n'.join(bivariate_to_lines(s)) + '\n'
    else:
        s = SERIES_BUILDERS[name](order)
        text = series_to_json(name, s) if fmt == 'json' else '\n'.join(series_to_lines(s)) + '\n'
    click.echo(text, nl=False)


# ==================================================
# PERMUTATIONS
# ==================================================

def describe_permutation(pi):
    lines = [f"({pi})"]
    member = in_res(pi)
    lines.append(f"  in res_{pi.size}: {'yes' if member else 'no'}")
    lines.append(f"  in A_{pi.size}: {'yes' if is_andre(pi) else 'no'}")
    lines.append(f"  lr minima: {' '.join(str(v) for v in sorted(lr_minima(pi)))}")
    lines.append(f"  rl minima: {' '.join(str(v) for v in sorted(rl_minima(pi)))}")
    if member:
        tree = phi_inverse(pi, Orientation.LEFT)
        parents = ','.join(str(p) for p in tree.parents) or '-'
        lines.append(f"  left-oriented tree parents: {parents}")
        lines.append(f"  extension witness: ({extension_witness(pi)})")
    return '\n'.join(lines)


@cli.command()
@click.argument('entries', nargs=-1)
@click.option('--file', 'path', type=click.File('r'), default=None,
              help='Read one permutation per line.')
@reports_usage_errors
def perm(entries, path):
    """Membership, minima and extension witness of permutations in one-line notation."""
    if path is not None:
        raw = PermutationParser.parse_lines(path.read())
    elif entries:
        raw = [PermutationParser.parse_line(' '.join(entries))]
    else:
        raise click.UsageError("give a permutation or --file")
    click.echo('\n'.join(describe_permutation(Permutation(p)) for p in raw))


if __name__ == '__main__':
    cli()
