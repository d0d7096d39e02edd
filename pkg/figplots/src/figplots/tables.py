"""CSV loading and schema validation for the benchmark file formats.

Two schemas are consumed: per-sample recovery dumps
(n,true,folded,recovered,residual) and sweep/summary tables keyed by
algorithm.  Values are kept as the original strings alongside parsed floats
so --dump-table can echo the file verbatim.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass

from .spec import SpecError

RECOVERY_COLUMNS = ("n", "true", "folded", "recovered", "residual")
SWEEP_REQUIRED = ("algorithm", "lambda", "of", "snr_db", "mse_db")


@dataclass(frozen=True)
class Table:
    path: str
    header: tuple
    rows: tuple  # tuples of strings, exactly as read

    def column(self, name: str) -> list:
        i = self.header.index(name)
        return [row[i] for row in self.rows]

    def floats(self, name: str) -> list:
        return [float(v) for v in self.column(name)]


def read_table(path) -> Table:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = tuple(next(reader))
        except StopIteration:
            raise SpecError(f"{path}: empty file") from None
        rows = tuple(tuple(r) for r in reader if r)
    return Table(str(path), header, rows)


def require_columns(table: Table, required) -> None:
    missing = [c for c in required if c not in table.header]
    if missing:
        raise SpecError(
            f"{table.path}: missing columns {missing}; "
            f"found {list(table.header)}")
    if not table.rows:
        raise SpecError(f"{table.path}: no data rows")


def dump_table(table: Table) -> str:
    """The plotted values, echoed exactly as they appeared in the file."""
    lines = [",".join(table.header)]
    lines.extend(",".join(row) for row in table.rows)
    return "\n".join(lines) + "\n"
