"""JSON-lines reports: one object per checked item, then one summary object.

Records are serialized with sorted keys and no timing data, so a fixed
configuration reproduces a report byte for byte.
"""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from typing import Iterable

import jsonschema

from .conventions import convention_hash

__all__ = ["item", "summary", "dumps", "schema", "validate", "Report"]


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (str, int, float, bool)) or v is None:
        return v
    return str(v)


def item(command: str, family: str, params: dict, order: int, passed: bool,
         residual_terms: int = 0, rank: int | None = None, expected: int | None = None) -> dict:
    return {
        "record": "item", "command": command, "family": family, "params": _jsonable(params),
        "order": int(order), "pass": bool(passed), "residual_terms": int(residual_terms),
        "rank": rank, "expected": expected,
    }


def summary(command: str, items: Iterable[dict], exit_code: int, config: dict) -> dict:
    items = list(items)
    passed = sum(1 for r in items if r["pass"])
    return {
        "record": "summary", "command": command, "total": len(items), "passed": passed,
        "failed": len(items) - passed, "pass": passed == len(items) and exit_code == 0,
        "exit_code": exit_code, "config": _jsonable(config), "convention_hash": convention_hash(),
    }


def dumps(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


@lru_cache(maxsize=None)
def schema() -> dict:
    text = resources.files("spinsym").joinpath("schema/report.schema.json").read_text()
    return json.loads(text)


def validate(record: dict) -> None:
    """Raise jsonschema.ValidationError if ``record`` is not a valid report line."""
    jsonschema.validate(record, schema())


class Report:
    """Collects item records for one command and renders them."""

    def __init__(self, command: str, config: dict):
        self.command = command
        self.config = config
        self.items: list[dict] = []

    def add(self, record: dict) -> dict:
        validate(record)
        self.items.append(record)
        return record

    def finish(self, exit_code: int) -> dict:
        s = summary(self.command, self.items, exit_code, self.config)
        validate(s)
        return s

    def json_lines(self, exit_code: int) -> str:
        lines = [dumps(r) for r in self.items]
        lines.append(dumps(self.finish(exit_code)))
        return "\n".join(lines) + "\n"

    def table(self, exit_code: int) -> str:
        rows = [("family", "params", "order", "rank", "expected", "residual", "status")]
        for r in self.items:
            params = ",".join(f"{k}={v}" for k, v in sorted(r["params"].items()))
            rows.append((r["family"], params, str(r["order"]),
                         "" if r["rank"] is None else str(r["rank"]),
                         "" if r["expected"] is None else str(r["expected"]),
                         str(r["residual_terms"]), "PASS" if r["pass"] else "FAIL"))
        widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
        out = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows]
        s = self.finish(exit_code)
        out.append(f"{s['passed']}/{s['total']} PASS" + ("" if s["pass"] else f"  (exit {exit_code})"))
        return "\n".join(out) + "\n"
