"""
Network file formats.

JSON: ``{"n": int, "rows": [[{"j": int, "w": float}, ...], ...]}`` with sparse
rows, ``j`` ascending. CSV: header ``i,j,w``, one directed link per line,
0-based agents. Floats are written with ``repr`` so reading back is exact.

Result tables are written in the same two formats: CSV with a header, or a
JSON list of records.
"""

import csv
import hashlib
import io
import json
from pathlib import Path

import pandas as pd

from .core import InfluenceNetwork
from .exceptions import ParseError

FORMATS = ("json", "csv")


def to_payload(network: InfluenceNetwork) -> dict:
    rows = []
    for i in range(network.n):
        columns, values = network.row(i)
        rows.append([{"j": int(j), "w": float(w)} for j, w in zip(columns, values)])
    return {"n": network.n, "rows": rows}


def from_payload(payload) -> InfluenceNetwork:
    if not isinstance(payload, dict) or "n" not in payload or "rows" not in payload:
        raise ParseError('network document needs "n" and "rows"')
    n, rows = payload["n"], payload["rows"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError(f'"n" must be a positive integer, got {n!r}')
    if not isinstance(rows, list) or len(rows) != n:
        raise ParseError(f'"rows" must list exactly {n} rows')

    parsed = []
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise ParseError(f"row {i} is not a list")
        entries, previous = [], -1
        for entry in row:
            try:
                j, w = entry["j"], entry["w"]
            except (TypeError, KeyError):
                raise ParseError(f'row {i} has an entry without "j" and "w"') from None
            if not isinstance(j, int) or isinstance(j, bool) or not 0 <= j < n:
                raise ParseError(f"row {i} names agent {j!r} outside 0..{n - 1}")
            if j == previous:
                raise ParseError(f"duplicate link ({i}, {j})")
            if j < previous:
                raise ParseError(f"row {i} is not sorted by j")
            if not isinstance(w, (int, float)) or isinstance(w, bool):
                raise ParseError(f"weight of link ({i}, {j}) is not a number")
            entries.append((j, float(w)))
            previous = j
        parsed.append(entries)
    return InfluenceNetwork.from_rows(n, parsed)


def to_json(network: InfluenceNetwork) -> bytes:
    return json.dumps(to_payload(network), separators=(",", ":")).encode()


def from_json(data: bytes) -> InfluenceNetwork:
    text = data.decode() if isinstance(data, bytes) else data
    if not text.strip():
        raise ParseError("empty network document", line=1, offset=0)
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, offset=exc.colno) from exc
    return from_payload(payload)


def to_csv(network: InfluenceNetwork) -> bytes:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["i", "j", "w"])
    for i in range(network.n):
        columns, values = network.row(i)
        writer.writerows((i, int(j), repr(float(w))) for j, w in zip(columns, values))
    return buffer.getvalue().encode()


def from_csv(data: bytes) -> InfluenceNetwork:
    text = data.decode() if isinstance(data, bytes) else data
    if not text.strip():
        raise ParseError("empty edge list", line=1, offset=0)

    reader = csv.reader(io.StringIO(text))
    header = [cell.strip() for cell in next(reader)]
    if header != ["i", "j", "w"]:
        raise ParseError(f"expected header i,j,w, got {','.join(header)}", line=1, offset=0)

    links: dict[tuple[int, int], float] = {}
    for cells in reader:
        if not cells:
            continue
        line = reader.line_num
        if len(cells) != 3:
            raise ParseError(f"expected 3 fields, got {len(cells)}", line=line)
        try:
            i, j, w = int(cells[0]), int(cells[1]), float(cells[2])
        except ValueError as exc:
            raise ParseError(str(exc), line=line) from exc
        if i < 0 or j < 0:
            raise ParseError(f"negative agent index in link ({i}, {j})", line=line)
        if (i, j) in links:
            raise ParseError(f"duplicate link ({i}, {j})", line=line)
        links[(i, j)] = w

    if not links:
        raise ParseError("edge list has no links", line=1)
    n = 1 + max(max(i, j) for i, j in links)
    rows: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for (i, j), w in sorted(links.items()):
        rows[i].append((j, w))
    return InfluenceNetwork.from_rows(n, rows)


def serialize(network: InfluenceNetwork, fmt: str = "json") -> bytes:
    if fmt == "json":
        return to_json(network)
    if fmt == "csv":
        return to_csv(network)
    raise ValueError(f"unknown network format {fmt!r}")


def deserialize(data: bytes, fmt: str = "json") -> InfluenceNetwork:
    if fmt == "json":
        return from_json(data)
    if fmt == "csv":
        return from_csv(data)
    raise ValueError(f"unknown network format {fmt!r}")


def write_table(frame: pd.DataFrame, path, fmt: str = "csv") -> Path:
    """Write ``frame`` as CSV with a header or as a JSON list of records; the suffix follows ``fmt``."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown table format {fmt!r}")
    path = Path(path).with_suffix(f".{fmt}")
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        frame.to_csv(path, index=False)
    else:
        frame.to_json(path, orient="records", indent=2)
    return path


def guess_format(path) -> str:
    return "csv" if str(path).lower().endswith(".csv") else "json"


def content_hash(network: InfluenceNetwork) -> str:
    """Git blob hash of the canonical JSON encoding."""
    payload = to_json(network)
    return hashlib.sha1(b"blob %d\0" % len(payload) + payload, usedforsecurity=False).hexdigest()
