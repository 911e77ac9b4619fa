"""The bug-subtype catalog and its per-language site queries."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from ..languages import LANGUAGES, QUERY_DIRS

CATEGORIES = ("Syntax", "Reference", "Logic", "Multiple")
CATALOG_VERSION = "subtypes-v1"


@dataclass(frozen=True)
class OperatorSpec:
    index: int
    name: str
    category: str
    description: str
    arity: int
    applicability: frozenset[str]
    query: str | None
    rewrite: str

    def __post_init__(self):
        if not 1 <= self.index <= 22:
            raise ValueError(f"operator index {self.index} outside 1..22")
        if self.category not in CATEGORIES:
            raise ValueError(f"unknown category {self.category!r}")
        expected = self.index - 18 if self.index >= 20 else 1
        if self.arity != expected:
            raise ValueError(f"operator {self.index} must have arity {expected}")
        if not self.applicability or not self.applicability <= set(LANGUAGES):
            raise ValueError(f"operator {self.index} has bad applicability {sorted(self.applicability)}")

    @property
    def is_multiple(self) -> bool:
        return self.category == "Multiple"

    def applies_to(self, language: str) -> bool:
        return language in self.applicability

    def site_query(self, language: str) -> str:
        """Query text for ``language``; empty for the composed subtypes."""
        if self.query is None:
            return ""
        rel = self.query.format(language=QUERY_DIRS[language])
        return resources.files("bugforge").joinpath(rel).read_text(encoding="utf-8")

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "name": self.name,
            "category": self.category,
            "description": self.description,
            "arity": self.arity,
            "applicability": sorted(self.applicability),
            "query": self.query,
            "rewrite": self.rewrite,
        }


def parse_catalog(entries: list[dict]) -> tuple[OperatorSpec, ...]:
    ops = tuple(
        OperatorSpec(
            index=int(e["index"]),
            name=e["name"],
            category=e["category"],
            description=e["description"],
            arity=int(e["arity"]),
            applicability=frozenset(e["applicability"]),
            query=e.get("query"),
            rewrite=e["rewrite"],
        )
        for e in entries
    )
    if sorted(op.index for op in ops) != list(range(1, len(ops) + 1)):
        raise ValueError("catalog indices must be contiguous from 1")
    return tuple(sorted(ops, key=lambda op: op.index))


@lru_cache(maxsize=None)
def default_catalog() -> tuple[OperatorSpec, ...]:
    text = resources.files("bugforge").joinpath("data/operators.json").read_text(encoding="utf-8")
    return parse_catalog(json.loads(text))


def get_operator(index: int) -> OperatorSpec:
    if not 1 <= index <= 22:
        raise KeyError(f"no operator with index {index}")
    return default_catalog()[index - 1]


def operators_for(indices=None) -> list[OperatorSpec]:
    if indices is None:
        return list(default_catalog())
    return [get_operator(i) for i in sorted(set(indices))]


def single_line_operators() -> list[OperatorSpec]:
    return [op for op in default_catalog() if op.index <= 19]
