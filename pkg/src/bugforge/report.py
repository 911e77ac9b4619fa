"""Aggregate metric records along analysis axes and render result tables."""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass

from .dataset import BugInstance
from .evalkit.metrics import MetricRecord
from .mutators.catalog import CATEGORIES

AXES = ("language", "category", "subtype", "token_bucket", "error_count", "all")
TOKEN_BOUNDS = (500, 1000, 2000, 5000, 10000)
METRICS = ("bi", "obl", "abl", "es", "em")


@dataclass(frozen=True)
class AggregateRow:
    group_key: str
    n: int
    bi: float
    obl: float
    abl: float
    es: float
    em: float
    pass1: float | None = None
    pass1_n: int = 0
    parse_failures: int = 0

    def __post_init__(self):
        if self.n <= 0:
            raise ValueError("aggregate rows need at least one record")
        for name in METRICS:
            v = getattr(self, name)
            if not -1e-9 <= v <= 100 + 1e-9:
                raise ValueError(f"{name} mean {v} outside [0, 100]")


def token_bucket(count: int, *, cumulative: bool = False) -> list[str]:
    """Bucket labels for ``count``; cumulative mode puts it in every "<N" bucket it satisfies."""
    if cumulative:
        labels = [f"<{b}" for b in TOKEN_BOUNDS if count < b]
        return labels or [f">={TOKEN_BOUNDS[-1]}"]
    for b in TOKEN_BOUNDS:
        if count < b:
            return [f"<{b}"]
    return [f">={TOKEN_BOUNDS[-1]}"]


def group_keys(inst: BugInstance, axis: str, *, cumulative: bool = False) -> list[str]:
    if axis == "language":
        return [inst.language]
    if axis == "category":
        return [inst.category]
    if axis == "subtype":
        return [str(inst.subtype_index)]
    if axis == "token_bucket":
        return token_bucket(inst.token_count, cumulative=cumulative)
    if axis == "error_count":
        return [str(len(inst.locations))]
    if axis == "all":
        return ["all"]
    raise ValueError(f"unknown axis {axis!r}; expected one of {', '.join(AXES)}")


def _sort_key(axis: str, key: str):
    if axis == "category" and key in CATEGORIES:
        return (0, CATEGORIES.index(key), "")
    if axis == "token_bucket":
        m = re.match(r"(<|>=)(\d+)", key)
        if m:
            return (0, int(m.group(2)) + (1 if m.group(1) == ">=" else 0), "")
    if key.isdigit():
        return (0, int(key), "")
    return (1, 0, key)


def _row(key: str, recs: list[MetricRecord]) -> AggregateRow:
    n = len(recs)
    means = {m: 100.0 * sum(getattr(r, m) for r in recs) / n for m in METRICS}
    with_pass = [r.pass1 for r in recs if r.pass1 is not None]
    pass1 = 100.0 * sum(with_pass) / len(with_pass) if with_pass else None
    return AggregateRow(key, n, **means, pass1=pass1, pass1_n=len(with_pass),
                        parse_failures=sum(1 for r in recs if r.parse_failed))


def aggregate(
    records: list[MetricRecord], instances: list[BugInstance], axis: str, *, cumulative: bool = False
) -> list[AggregateRow]:
    by_id = {inst.id: inst for inst in instances}
    groups: dict[str, list[MetricRecord]] = {}
    for rec in records:
        inst = by_id.get(rec.instance_id)
        if inst is None:
            raise KeyError(f"record refers to unknown instance id {rec.instance_id!r}")
        for key in group_keys(inst, axis, cumulative=cumulative):
            groups.setdefault(key, []).append(rec)
    return [_row(k, groups[k]) for k in sorted(groups, key=lambda k: _sort_key(axis, k))]


def merge_rows(shards: list[list[AggregateRow]]) -> list[AggregateRow]:
    """Combine per-shard rows by count-weighted means; order follows first appearance sorted by key."""
    acc: dict[str, dict] = {}
    order: list[str] = []
    for rows in shards:
        for r in rows:
            a = acc.get(r.group_key)
            if a is None:
                a = acc[r.group_key] = {"n": 0, "pass_sum": 0.0, "pass_n": 0, "pf": 0, **{m: 0.0 for m in METRICS}}
                order.append(r.group_key)
            a["n"] += r.n
            for m in METRICS:
                a[m] += getattr(r, m) * r.n
            if r.pass1 is not None:
                a["pass_sum"] += r.pass1 * r.pass1_n
                a["pass_n"] += r.pass1_n
            a["pf"] += r.parse_failures
    out = []
    for key in order:
        a = acc[key]
        out.append(
            AggregateRow(
                key, a["n"], **{m: a[m] / a["n"] for m in METRICS},
                pass1=a["pass_sum"] / a["pass_n"] if a["pass_n"] else None,
                pass1_n=a["pass_n"], parse_failures=a["pf"],
            )
        )
    return out


HEADER = ("group", "n", "BI", "OBL", "ABL", "ES", "EM", "Pass@1", "parse_failures")


def _cells(r: AggregateRow) -> list[str]:
    vals = [f"{getattr(r, m):.2f}" for m in METRICS]
    return [r.group_key, str(r.n), *vals, "" if r.pass1 is None else f"{r.pass1:.2f}", str(r.parse_failures)]


def render_table(rows: list[AggregateRow], fmt: str = "markdown") -> str:
    if fmt == "markdown":
        lines = ["| " + " | ".join(HEADER) + " |", "|" + "---|" * len(HEADER)]
        lines += ["| " + " | ".join(_cells(r)) + " |" for r in rows]
        return "\n".join(lines) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(HEADER)
        for r in rows:
            writer.writerow(_cells(r))
        return buf.getvalue()
    raise ValueError(f"unknown table format {fmt!r}")
