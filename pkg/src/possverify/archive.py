"""Forecast archives, universe files and table output.

An archive is newline-delimited JSON, one record per line::

    {"id": "A", "pi": [0, 0, 0.05, 0.15, 0.9, 0.1], "obs": "MDT", "model": "v1"}

``obs`` may be a label or an index. Blank lines are skipped. Any bad record
rejects the whole file.
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence, TextIO

from .core import SPC_UNIVERSE, Universe, validate
from .errors import (
    EmptySample,
    InvalidCategory,
    ParseError,
    PossibilityError,
    RecordError,
    UniverseMismatch,
)
from .scorecard import VerificationPair

FLOAT_FORMAT = "{:.6f}"


def load_universe(path: str | Path | None) -> Universe:
    if path is None:
        return SPC_UNIVERSE
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.lineno, f"universe file is not valid JSON: {exc.msg}") from exc
    if not isinstance(data, dict) or "categories" not in data:
        raise PossibilityError("universe file needs a 'categories' list")
    return Universe(tuple(data["categories"]), data.get("climatology"))


def universe_to_dict(universe: Universe) -> dict[str, Any]:
    out: dict[str, Any] = {"categories": list(universe.categories)}
    if universe.climatology is not None:
        out["climatology"] = list(universe.climatology)
    return out


def parse_record(line: str, lineno: int, universe: Universe) -> VerificationPair:
    try:
        rec = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ParseError(lineno, f"invalid JSON ({exc.msg})") from exc
    if not isinstance(rec, dict):
        raise ParseError(lineno, "record must be a JSON object")
    for key in ("pi", "obs"):
        if key not in rec:
            raise ParseError(lineno, f"missing field {key!r}")
    pi = rec["pi"]
    if not isinstance(pi, list) or not all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in pi
    ):
        raise ParseError(lineno, "'pi' must be a list of numbers")
    if len(pi) != universe.size:
        raise ParseError(lineno, f"'pi' has {len(pi)} values, universe has {universe.size}")
    try:
        forecast = validate(pi, universe)
    except PossibilityError as exc:
        raise RecordError(lineno, str(exc)) from exc
    obs = rec["obs"]
    if isinstance(obs, bool) or not isinstance(obs, (int, str)):
        raise ParseError(lineno, "'obs' must be a category label or index")
    try:
        observed = universe.index(obs)
    except InvalidCategory as exc:
        raise UniverseMismatch(f"line {lineno}: {exc}") from exc
    rid = rec.get("id")
    model = rec.get("model")
    return VerificationPair(
        forecast, observed,
        id=None if rid is None else str(rid),
        model=None if model is None else str(model),
    )


def read_archive(path: str | Path | TextIO, universe: Universe = SPC_UNIVERSE) -> list[VerificationPair]:
    if isinstance(path, (str, Path)):
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    else:
        lines = path.read().splitlines()
    pairs = [
        parse_record(line, n, universe)
        for n, line in enumerate(lines, start=1)
        if line.strip()
    ]
    if not pairs:
        raise EmptySample("archive holds no records")
    return pairs


def pair_to_record(pair: VerificationPair) -> dict[str, Any]:
    rec: dict[str, Any] = {}
    if pair.id is not None:
        rec["id"] = pair.id
    rec["pi"] = list(pair.forecast.pi)
    rec["obs"] = pair.forecast.universe.categories[pair.observed]
    if pair.model is not None:
        rec["model"] = pair.model
    return rec


def format_archive(pairs: Iterable[VerificationPair]) -> str:
    return "".join(json.dumps(pair_to_record(p)) + "\n" for p in pairs)


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        return FLOAT_FORMAT.format(value)
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, float) and math.isnan(value):
        return None
    return value


def format_csv(rows: Sequence[Mapping[str, Any]]) -> str:
    buf = io.StringIO()
    if not rows:
        return ""
    writer = csv.writer(buf, lineterminator="\n")
    header = list(rows[0].keys())
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(row.get(k)) for k in header])
    return buf.getvalue()


def format_tables(tables: Mapping[str, Sequence[Mapping[str, Any]]], fmt: str = "json") -> str:
    """Render named tables.

    JSON: a single table becomes an array, several become an object keyed by
    table name. CSV: a single table is plain CSV; several are written one
    after another, each preceded by a ``# name`` line and separated by a
    blank line.
    """
    if fmt == "json":
        clean = {
            name: [{k: _json_value(v) for k, v in row.items()} for row in rows]
            for name, rows in tables.items()
        }
        payload: Any = next(iter(clean.values())) if len(clean) == 1 else clean
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        if len(tables) == 1:
            return format_csv(next(iter(tables.values())))
        return "\n".join(f"# {name}\n{format_csv(rows)}" for name, rows in tables.items())
    raise PossibilityError(f"unknown output format {fmt!r}")


def emit(text: str, destination: str | Path | None) -> None:
    if destination is None or str(destination) == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(destination, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def write_table(rows: Sequence[Mapping[str, Any]], fmt: str = "json",
                destination: str | Path | None = "-", name: str = "rows") -> None:
    emit(format_tables({name: rows}, fmt), destination)
