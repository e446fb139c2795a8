"""
Export Service
Renders count tables, series coefficients, tree listings and verification
results as CSV, JSON, aligned text or an Excel workbook.

Large counts leave JSON as decimal strings so no consumer loses precision.
Nothing here writes timestamps: output is byte-identical for a fixed input.
"""

import csv
import io
import json
import logging
import math

from services.permutation_service import phi
from services.tree_service import Orientation, canonical_drawing, stats

logger = logging.getLogger(__name__)

# Try importing optional dependencies
try:
    from openpyxl import Workbook
    from openpyxl.styles import Alignment, Font, PatternFill

    EXCEL_AVAILABLE = True
except ImportError:
    EXCEL_AVAILABLE = False


def _dumps(payload):
    return json.dumps(payload, indent=2) + '\n'


# ==================================================
# COUNT TABLES
# ==================================================

def _cells(table):
    for n in range(1, table.n_max + 1):
        for stat in table.stat_values():
            if stat <= n:
                yield n, stat, table.entry(n, stat)


def tables_to_csv(tables):
    """One row per (table, n, stat), header ``n,stat,count,engine``."""
    output = io.StringIO()
    writer = csv.writer(output, lineterminator='\n')
    writer.writerow(['n', 'stat', 'count', 'engine'])
    for table in tables:
        for n, stat, count in _cells(table):
            writer.writerow([n, stat, count, table.engine.value])
    return output.getvalue()


def table_to_dict(table):
    return {
        'statistic': table.statistic.value,
        'engine': table.engine.value,
        'n_max': table.n_max,
        'entries': [{'n': n, 'stat': stat, 'count': str(count)} for n, stat, count in _cells(table)],
    }


def tables_to_json(tables, comparisons=None):
    payload = {'tables': [table_to_dict(t) for t in tables]}
    if comparisons is not None:
        payload['agreement'] = all(c.agreed for c in comparisons)
        payload['comparisons'] = [
            {'name': c.name, 'agreed': c.agreed,
             'discrepancy': c.discrepancy.describe() if c.discrepancy else None}
            for c in comparisons
        ]
    return _dumps(payload)


def table_to_pretty(table):
    """Rows n ascending, one column per statistic value, zeros included."""
    stats_shown = table.stat_values()
    width = max([len(str(v)) for v in table.entries.values()] + [len(str(table.n_max)), 3]) + 1
    corner = 'n/m' if table.statistic.value == 'lr' else 'n/r'
    lines = [f"{table.label()}",
             corner.rjust(4) + ' |' + ''.join(str(s).rjust(width) for s in stats_shown)]
    lines.append('-' * len(lines[-1]))
    for n in range(1, table.n_max + 1):
        lines.append(str(n).rjust(4) + ' |' + ''.join(str(c).rjust(width) for c in table.row(n)))
    return '\n'.join(lines) + '\n'


def tables_to_xlsx(tables, path):
    """Write one worksheet per table. Falls back to CSV text when openpyxl is missing."""
    if not EXCEL_AVAILABLE:
        logger.warning(f"openpyxl not installed, writing CSV to {path} instead")
        with open(path, 'w', newline='') as handle:
            handle.write(tables_to_csv(tables))
        return path

    wb = Workbook()
    wb.remove(wb.active)

    header_font = Font(bold=True, color="FFFFFF")
    header_fill = PatternFill(start_color="366092", end_color="366092", fill_type="solid")
    header_alignment = Alignment(horizontal="center", vertical="center")

    for table in tables:
        ws = wb.create_sheet(title=f"{table.statistic.value}-{table.engine.value}")
        ws.append(['n'] + [str(s) for s in table.stat_values()])
        for cell in ws[1]:
            cell.font = header_font
            cell.fill = header_fill
            cell.alignment = header_alignment
        for n in range(1, table.n_max + 1):
            # strings keep counts beyond 2^53 exact in spreadsheet tools
            ws.append([n] + [str(c) for c in table.row(n)])
        ws.column_dimensions['A'].width = 6

    wb.save(path)
    logger.info(f"Wrote {len(tables)} table(s) to {path}")
    return path


def comparisons_to_lines(comparisons):
    lines = []
    for c in comparisons:
        if c.agreed:
            lines.append(f"agree: {c.name}")
        else:
            lines.append(f"DISCREPANCY: {c.name}: {c.discrepancy.describe()}")
    return lines


# ==================================================
# SERIES
# ==================================================

def _fraction(value):
    return f"{value.numerator}/{value.denominator}"


def series_to_lines(series):
    """``k <num>/<den>`` per order, then ``k! * coeff = <integer>`` when integral."""
    lines = []
    for k in range(series.order + 1):
        lines.append(f"{k} {_fraction(series.coefficient(k))}")
        scaled = series.scaled_coefficient(k)
        if scaled.denominator == 1:
            lines.append(f"{k}! * coeff = {scaled.numerator}")
    return lines


def bivariate_to_lines(series):
    """``k j <num>/<den>`` per nonzero y^j z^k coefficient, with the k! scaling."""
    lines = []
    for k, row in enumerate(series.rows):
        for j, value in enumerate(row):
            if not value:
                continue
            lines.append(f"{k} {j} {_fraction(value)}")
            scaled = value * math.factorial(k)
            if scaled.denominator == 1:
                lines.append(f"{k}! * coeff = {scaled.numerator}")
    if not lines:
        lines.append("0 0 0/1")
    return lines


def series_to_json(name, series):
    coefficients = []
    for k in range(series.order + 1):
        scaled = series.scaled_coefficient(k)
        coefficients.append({
            'k': k,
            'coeff': _fraction(series.coefficient(k)),
            'scaled': str(scaled.numerator) if scaled.denominator == 1 else None,
        })
    return _dumps({'name': name, 'order': series.order, 'coefficients': coefficients})


def bivariate_to_json(name, series):
    coefficients = [
        {'k': k, 'j': j, 'coeff': _fraction(value),
         'scaled': str((value * math.factorial(k)).numerator)
         if (value * math.factorial(k)).denominator == 1 else None}
        for k, row in enumerate(series.rows) for j, value in enumerate(row) if value
    ]
    return _dumps({'name': name, 'order': series.order, 'coefficients': coefficients})


# ==================================================
# TREE LISTINGS
# ==================================================

def tree_record(tree):
    s = stats(tree)
    return {
        'parents': list(tree.parents),
        'o': s.o, 'p': s.p, 'q': s.q, 'd': s.d, 'l': s.l, 'r': s.r,
        'cls': s.cls.value,
        'standard': str(phi(canonical_drawing(tree, Orientation.STANDARD))),
        'left': str(phi(canonical_drawing(tree, Orientation.LEFT))),
    }


def trees_to_pretty(n, records):
    lines = []
    for rec in records:
        parents = ','.join(str(p) for p in rec['parents']) or '-'
        lines.append(
            f"parents={parents} o={rec['o']} p={rec['p']} q={rec['q']} d={rec['d']} "
            f"l={rec['l']} r={rec['r']} cls={rec['cls']} "
            f"std=({rec['standard']}) left=({rec['left']})"
        )
    lines.append(f"count {len(records)}")
    return '\n'.join(lines) + '\n'


def trees_to_csv(n, records):
    output = io.StringIO()
    writer = csv.writer(output, lineterminator='\n')
    writer.writerow(['parents', 'o', 'p', 'q', 'd', 'l', 'r', 'cls', 'standard', 'left'])
    for rec in records:
        writer.writerow([' '.join(str(p) for p in rec['parents']), rec['o'], rec['p'], rec['q'],
                         rec['d'], rec['l'], rec['r'], rec['cls'], rec['standard'], rec['left']])
    writer.writerow([f"# count {len(records)}"])
    return output.getvalue()


def trees_to_json(n, records):
    return _dumps({'n': n, 'trees': records, 'count': len(records)})


# ==================================================
# VERIFICATION RESULTS
# ==================================================

def results_to_json(results):
    return _dumps([{'property': r.name, 'passed': r.passed, 'detail': r.detail} for r in results])


def results_to_pretty(results):
    lines = [f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}" for r in results]
    passed = sum(1 for r in results if r.passed)
    lines.append(f"{passed}/{len(results)} properties passed")
    return '\n'.join(lines) + '\n'
