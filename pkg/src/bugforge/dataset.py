"""Bug instances, JSONL serialization, automated checks and corpus statistics."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import IO, Iterable

from .languages import LANGUAGES
from .mutators.catalog import CATEGORIES, get_operator
from .mutators.editclass import edit_matches
from .mutators.plan import EditRecord
from .syntax import find_errors, parse, split_lines

FIELD_ORDER = (
    "id",
    "repo",
    "relative_path",
    "language",
    "subtype_index",
    "subtype_name",
    "category",
    "locations",
    "edits",
    "original_code",
    "buggy_code",
    "token_count",
    "line_count",
)


class DatasetError(ValueError):
    """A record could not be read; ``line`` is 1-based within the stream."""

    def __init__(self, line: int, field_name: str, message: str):
        super().__init__(f"line {line}: {field_name}: {message}")
        self.line = line
        self.field = field_name


@dataclass
class BugInstance:
    id: str
    repo: str
    relative_path: str
    language: str
    subtype_index: int
    subtype_name: str
    category: str
    locations: list[int]
    edits: list[EditRecord]
    original_code: str
    buggy_code: str
    token_count: int
    line_count: int

    @property
    def arity(self) -> int:
        return len(self.locations)

    def original_line(self, line: int) -> str:
        return split_lines(self.original_code)[line - 1]

    def buggy_line(self, line: int) -> str:
        return split_lines(self.buggy_code)[line - 1]

    def to_dict(self) -> dict:
        d = {
            "id": self.id,
            "repo": self.repo,
            "relative_path": self.relative_path,
            "language": self.language,
            "subtype_index": self.subtype_index,
            "subtype_name": self.subtype_name,
            "category": self.category,
            "locations": list(self.locations),
            "edits": [e.to_dict() for e in self.edits],
            "original_code": self.original_code,
            "buggy_code": self.buggy_code,
            "token_count": self.token_count,
            "line_count": self.line_count,
        }
        return {k: d[k] for k in FIELD_ORDER}

    @classmethod
    def from_dict(cls, data: dict) -> "BugInstance":
        missing = [k for k in FIELD_ORDER if k not in data]
        if missing:
            raise KeyError(missing[0])
        edits = [EditRecord(int(e["line"]), e["original_line"], e["buggy_line"]) for e in data["edits"]]
        return cls(
            id=data["id"],
            repo=data["repo"],
            relative_path=data["relative_path"],
            language=data["language"],
            subtype_index=int(data["subtype_index"]),
            subtype_name=data["subtype_name"],
            category=data["category"],
            locations=[int(x) for x in data["locations"]],
            edits=edits,
            original_code=data["original_code"],
            buggy_code=data["buggy_code"],
            token_count=int(data["token_count"]),
            line_count=int(data["line_count"]),
        )


def invariant_violations(inst: BugInstance) -> list[tuple[str, str]]:
    """(field, message) pairs for every broken structural invariant."""
    out: list[tuple[str, str]] = []
    if not isinstance(inst.id, str) or not inst.id:
        out.append(("id", "empty"))
    if inst.language not in LANGUAGES:
        out.append(("language", f"unknown language {inst.language!r}"))
    if not 1 <= inst.subtype_index <= 22:
        out.append(("subtype_index", f"{inst.subtype_index} outside 1..22"))
        return out
    op = get_operator(inst.subtype_index)
    if inst.subtype_name != op.name:
        out.append(("subtype_name", f"expected {op.name!r}"))
    if inst.category != op.category or inst.category not in CATEGORIES:
        out.append(("category", f"expected {op.category!r}"))
    locs = inst.locations
    if not 1 <= len(locs) <= 4:
        out.append(("locations", f"{len(locs)} locations, need 1 to 4"))
    if locs != sorted(set(locs)):
        out.append(("locations", "not sorted and distinct"))
    if len(locs) != op.arity:
        out.append(("locations", f"{len(locs)} locations but subtype arity is {op.arity}"))
    if [e.line for e in inst.edits] != list(locs):
        out.append(("edits", "edit lines not aligned with locations"))
    if inst.token_count < 0:
        out.append(("token_count", "negative"))
    orig, bug = split_lines(inst.original_code), split_lines(inst.buggy_code)
    if inst.line_count < 1 or inst.line_count != len(orig):
        out.append(("line_count", f"{inst.line_count} but original has {len(orig)} lines"))
    if len(orig) != len(bug):
        out.append(("buggy_code", "line count differs from original_code"))
        return out
    diff = [i + 1 for i, (a, b) in enumerate(zip(orig, bug)) if a != b]
    if diff != list(locs):
        out.append(("buggy_code", f"differs on lines {diff}, locations are {list(locs)}"))
    for e in inst.edits:
        if not 1 <= e.line <= len(orig):
            out.append(("edits", f"line {e.line} out of range"))
            continue
        if orig[e.line - 1] != e.original_line:
            out.append(("edits", f"line {e.line}: original_line does not match original_code"))
        if bug[e.line - 1] != e.buggy_line:
            out.append(("edits", f"line {e.line}: buggy_line does not match buggy_code"))
    return out


def emit_jsonl(instances: Iterable[BugInstance], sink: IO[str]) -> int:
    written = 0
    offset = 0
    for inst in instances:
        line = json.dumps(inst.to_dict(), ensure_ascii=False) + "\n"
        try:
            sink.write(line)
        except OSError as exc:
            raise OSError(f"write failed at byte offset {offset}: {exc}") from exc
        offset += len(line.encode("utf-8"))
        written += 1
    return written


def load_jsonl(source: IO[str]) -> list[BugInstance]:
    out = []
    for lineno, raw in enumerate(source, start=1):
        if not raw.strip():
            continue
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise DatasetError(lineno, "<json>", str(exc)) from None
        if not isinstance(data, dict):
            raise DatasetError(lineno, "<json>", "record is not an object")
        try:
            inst = BugInstance.from_dict(data)
        except KeyError as exc:
            raise DatasetError(lineno, str(exc.args[0]), "missing") from None
        except (TypeError, ValueError) as exc:
            raise DatasetError(lineno, "edits", str(exc)) from None
        problems = invariant_violations(inst)
        if problems:
            raise DatasetError(lineno, problems[0][0], problems[0][1])
        out.append(inst)
    return out


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ValidationOutcome:
    instance_id: str
    completeness: CheckResult
    subtype_match: CheckResult
    adverse_effect: CheckResult
    advisory: tuple[str, ...] = ("adverse_effect",)

    @property
    def passed(self) -> bool:
        """Completeness and subtype match; the parse proxy never fails an instance."""
        return self.completeness.passed and self.subtype_match.passed


def _subtype_match(inst: BugInstance) -> CheckResult:
    idx = inst.subtype_index
    if not 1 <= idx <= 22:
        return CheckResult("subtype_match", False, "no such subtype")
    bad = []
    for e in inst.edits:
        if idx <= 19:
            ok = edit_matches(idx, e.original_line, e.buggy_line)
        else:
            ok = any(edit_matches(i, e.original_line, e.buggy_line) for i in range(1, 20))
        if not ok:
            bad.append(e.line)
    if bad:
        return CheckResult("subtype_match", False, f"edits on lines {bad} not producible by subtype {idx}")
    return CheckResult("subtype_match", True)


def validate_instance(inst: BugInstance) -> ValidationOutcome:
    problems = invariant_violations(inst)
    completeness = CheckResult(
        "completeness", not problems, "; ".join(f"{f}: {m}" for f, m in problems)
    )
    subtype = _subtype_match(inst) if not problems else CheckResult("subtype_match", False, "incomplete instance")
    try:
        errors = find_errors(parse(inst.buggy_code, inst.language))
        rows = sorted({n.span.start_row + 1 for n in errors})
        adverse = CheckResult("adverse_effect", True, f"parse errors near lines {rows}" if rows else "parses cleanly")
    except Exception as exc:  # advisory only
        adverse = CheckResult("adverse_effect", True, f"could not parse: {exc}")
    return ValidationOutcome(inst.id, completeness, subtype, adverse)


def buggy_parses_with_errors(inst: BugInstance) -> bool:
    return bool(find_errors(parse(inst.buggy_code, inst.language)))


@dataclass
class LanguageStats:
    language: str
    count: int
    avg_tokens: float
    max_tokens: int
    avg_lines: float
    max_lines: int


@dataclass
class StatsTable:
    languages: list[LanguageStats] = field(default_factory=list)
    category_counts: dict[str, int] = field(default_factory=dict)
    category_shares: dict[str, float] = field(default_factory=dict)
    total: int = 0

    def render(self) -> str:
        out = ["| Language | Count | Avg tokens | Max tokens | Avg lines | Max lines |", "|---|---|---|---|---|---|"]
        for s in self.languages:
            out.append(
                f"| {s.language} | {s.count} | {s.avg_tokens:.2f} | {s.max_tokens} | {s.avg_lines:.2f} | {s.max_lines} |"
            )
        out.append("")
        out.append("| Category | Count | Share (%) |")
        out.append("|---|---|---|")
        for cat in CATEGORIES:
            if cat in self.category_counts:
                out.append(f"| {cat} | {self.category_counts[cat]} | {self.category_shares[cat]:.2f} |")
        return "\n".join(out) + "\n"


def dataset_stats(instances: list[BugInstance]) -> StatsTable:
    table = StatsTable(total=len(instances))
    if not instances:
        return table
    by_lang: dict[str, list[BugInstance]] = {}
    for inst in instances:
        by_lang.setdefault(inst.language, []).append(inst)
    for lang in sorted(by_lang, key=lambda x: LANGUAGES.index(x) if x in LANGUAGES else len(LANGUAGES)):
        group = by_lang[lang]
        toks = [i.token_count for i in group]
        lines = [i.line_count for i in group]
        table.languages.append(
            LanguageStats(lang, len(group), sum(toks) / len(group), max(toks), sum(lines) / len(group), max(lines))
        )
    counts = Counter(i.category for i in instances)
    table.category_counts = {c: counts[c] for c in CATEGORIES if counts[c]}
    table.category_shares = {c: 100.0 * n / len(instances) for c, n in table.category_counts.items()}
    return table
