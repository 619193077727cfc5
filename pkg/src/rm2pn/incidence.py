"""Incidence-table text format and metadata sidecars.

A table has one column per place (state-like places first, then register
places, each group in declaration order) and one row per transition.  Each
cell is the exact string "a,b" with a = W(place, transition) and
b = W(transition, place); the "0,0" cell is left empty.  The header row
carries place names, the first column transition names.  The default column
delimiter is a tab; CSV (with quoted cells) is selectable.

Initial marking, input places, and the output place travel in a JSON sidecar
(by convention ``<table>.meta.json`` next to ``<table>``).
"""

from __future__ import annotations

import csv
import io
import json
import re
from pathlib import Path
from typing import Mapping, Optional, Sequence

from .nets import Net, NetError

_CELL_RE = re.compile(r"^(-?\d+),(\d+)$")


def _is_register_place(name: str) -> bool:
    return bool(re.fullmatch(r"R\d+", name))


def _column_order(places: Sequence[str]) -> list[str]:
    state_like = [p for p in places if not _is_register_place(p)]
    registers = [p for p in places if _is_register_place(p)]
    return state_like + registers


def export_incidence(net: Net, delimiter: str = "\t") -> str:
    columns = _column_order(net.places)
    rows = [[""] + list(columns)]
    for t in net.transitions:
        row = [t]
        for p in columns:
            a = net.w(p, t)
            b = net.w(t, p)
            row.append("" if a == 0 and b == 0 else f"{a},{b}")
        rows.append(row)
    if delimiter == ",":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows(rows)
        return buf.getvalue()
    return "\n".join(delimiter.join(row) for row in rows) + "\n"


class IncidenceParseError(NetError):
    def __init__(self, message: str, row: int, column: int):
        super().__init__(f"row {row}, column {column}: {message}")
        self.row = row
        self.column = column


def import_incidence(
    text: str,
    delimiter: str = "\t",
    initial_marking: Optional[Mapping[str, int]] = None,
    input_places: Sequence[str] = (),
    output_place: Optional[str] = None,
) -> Net:
    """Inverse of export_incidence; marking/input/output come from the caller
    (typically a sidecar file)."""
    if delimiter == ",":
        rows = [row for row in csv.reader(io.StringIO(text))]
    else:
        lines = text.splitlines()
        rows = [line.split(delimiter) for line in lines]
    rows = [row for row in rows if any(cell.strip() for cell in row)]
    if not rows:
        raise IncidenceParseError("empty table", 1, 1)

    header = [cell.strip() for cell in rows[0]]
    if header and header[0] == "":
        header = header[1:]
    places = header
    if len(set(places)) != len(places):
        raise IncidenceParseError("duplicate place names", 1, 1)

    transitions = []
    weight: dict[tuple[str, str], int] = {}
    for r, row in enumerate(rows[1:], start=2):
        cells = [cell.strip() for cell in row]
        tname = cells[0]
        if not tname:
            raise IncidenceParseError("missing transition name", r, 1)
        if tname in transitions:
            raise IncidenceParseError(f"duplicate transition {tname!r}", r, 1)
        transitions.append(tname)
        body = cells[1:]
        if len(body) > len(places):
            raise IncidenceParseError("more cells than places", r, len(body))
        for c, cell in enumerate(body, start=2):
            if not cell:
                continue
            m = _CELL_RE.match(cell)
            if not m:
                raise IncidenceParseError(f"malformed cell {cell!r}", r, c)
            a, b = int(m.group(1)), int(m.group(2))
            if a < -1:
                raise IncidenceParseError(f"bad consume weight in {cell!r}", r, c)
            place = places[c - 2]
            if a:
                weight[(place, tname)] = a
            if b:
                weight[(tname, place)] = b
    return Net(
        places=places,
        transitions=transitions,
        weight=weight,
        initial_marking=initial_marking,
        input_places=input_places,
        output_place=output_place,
    )


def write_sidecar(path: Path, net: Net) -> None:
    payload = {
        "initial_marking": dict(sorted(net.initial_marking.items())),
        "input_places": list(net.input_places),
        "output_place": net.output_place,
    }
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def sidecar_path(table_path: Path) -> Path:
    return table_path.with_suffix(table_path.suffix + ".meta.json")


def save_net(net: Net, table_path: Path, delimiter: str = "\t") -> None:
    table_path.write_text(export_incidence(net, delimiter))
    write_sidecar(sidecar_path(table_path), net)


def load_net(
    table_path: Path,
    meta_path: Optional[Path] = None,
    delimiter: str = "\t",
) -> Net:
    """Read a table plus its sidecar (``<table>.meta.json`` by default)."""
    text = Path(table_path).read_text()
    meta = {}
    candidate = meta_path if meta_path is not None else sidecar_path(Path(table_path))
    if candidate.exists():
        meta = json.loads(candidate.read_text())
    elif meta_path is not None:
        raise NetError(f"metadata file not found: {meta_path}")
    return import_incidence(
        text,
        delimiter=delimiter,
        initial_marking=meta.get("initial_marking"),
        input_places=meta.get("input_places", ()),
        output_place=meta.get("output_place"),
    )
