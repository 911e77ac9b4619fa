"""Mutation sites, plans and per-line edit records."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..syntax import Node, Span, replace_span


class SiteRejected(Exception):
    """A site or file cannot host the requested mutation; ``reason`` says why."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass(frozen=True)
class EditRecord:
    line: int
    original_line: str
    buggy_line: str

    def __post_init__(self):
        if self.line < 1:
            raise ValueError(f"line numbers are 1-based, got {self.line}")
        if "\n" in self.original_line or "\n" in self.buggy_line:
            raise ValueError("edit records hold single lines")
        if self.original_line == self.buggy_line:
            raise ValueError(f"line {self.line}: buggy line equals original")

    def to_dict(self) -> dict:
        return {"line": self.line, "original_line": self.original_line, "buggy_line": self.buggy_line}


@dataclass(frozen=True, eq=False)
class MutationSite:
    operator_index: int
    target: Node
    language: str
    aux: dict[str, Node] = field(default_factory=dict)

    @property
    def line(self) -> int:
        return self.target.span.start_row + 1


@dataclass(frozen=True)
class LineEdit:
    span: Span
    replacement: str


@dataclass(frozen=True)
class MutationPlan:
    operator_index: int
    edits: tuple[LineEdit, ...]
    records: tuple[EditRecord, ...]

    @property
    def locations(self) -> list[int]:
        return sorted(r.line for r in self.records)

    def apply(self, source: str) -> str:
        # right-to-left keeps earlier spans valid
        for edit in sorted(self.edits, key=lambda e: (e.span.start_row, e.span.start_col), reverse=True):
            source = replace_span(source, edit.span, edit.replacement)
        return source
