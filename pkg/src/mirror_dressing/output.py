"""Result tables and their CSV / JSONL serialisation.

Both formats are byte-stable: numbers are always written with ``%.12e``,
line endings are LF, and nothing time-dependent is emitted unless asked for.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__

NUMBER_FORMAT = "%.12e"


@dataclass
class ResultTable:
    columns: list[str]
    rows: list[tuple] = field(default_factory=list)
    config: dict = field(default_factory=dict)  # key -> formatted value, round-trips
    info: dict = field(default_factory=dict)  # extra header facts, not config
    failures: list[str] = field(default_factory=list)

    def __post_init__(self):
        for row in self.rows:
            self._check(row)

    def _check(self, row):
        if len(row) != len(self.columns):
            raise ValueError(f"row has {len(row)} entries, table has {len(self.columns)} columns")

    def append(self, row):
        row = tuple(float(v) for v in row)
        self._check(row)
        self.rows.append(row)

    def column(self, name: str) -> list[float]:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]


def _num(value) -> str:
    return NUMBER_FORMAT % value


def render_csv(table: ResultTable) -> str:
    out = io.StringIO()
    out.write(f"# mirror-dressing {__version__}\n")
    for key, value in table.info.items():
        out.write(f"# {key}: {value}\n")
    for key, value in table.config.items():
        out.write(f"# {key} = {value}\n")
    out.write(",".join(table.columns) + "\n")
    for row in table.rows:
        out.write(",".join(_num(v) for v in row) + "\n")
    return out.getvalue()


def render_jsonl(table: ResultTable) -> str:
    meta = {"tool": "mirror-dressing", "version": __version__, "info": table.info, "config": table.config}
    lines = [json.dumps({"metadata": meta}, sort_keys=False)]
    for row in table.rows:
        items = ", ".join(f"{json.dumps(c)}: {_num(v)}" for c, v in zip(table.columns, row))
        # JSON has no NaN/inf literals
        items = items.replace(": nan", ": null").replace(": inf", ": null").replace(": -inf", ": null")
        lines.append("{" + items + "}")
    return "\n".join(lines) + "\n"


def write_table(table: ResultTable, path, fmt: str = "csv") -> None:
    """Write ``table`` to ``path`` (``"-"`` for stdout) as csv or jsonl."""
    if fmt == "csv":
        text = render_csv(table)
    elif fmt == "jsonl":
        text = render_jsonl(table)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if str(path) == "-":
        import sys

        sys.stdout.write(text)
        return
    try:
        with open(Path(path), "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
