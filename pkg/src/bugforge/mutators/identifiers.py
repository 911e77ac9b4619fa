"""Identifier pools and near-name classification for reference substitutions."""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field

from ..syntax import Node
from ..textdist import levenshtein

IDENTIFIER_KINDS = frozenset(
    {
        "identifier",
        "type_identifier",
        "field_identifier",
        "property_identifier",
        "shorthand_property_identifier",
        "package_identifier",
        "constant",
    }
)

FUNCTION_DEFS = frozenset(
    {
        "function_definition",
        "function_declarator",
        "function_declaration",
        "method_declaration",
        "method_definition",
        "method",
        "singleton_method",
        "function_item",
        "function_signature_item",
        "local_function_statement",
        "constructor_declaration",
    }
)

CLASS_DEFS = frozenset(
    {
        "class_definition",
        "class_declaration",
        "class",
        "module",
        "struct_item",
        "enum_item",
        "trait_item",
        "union_item",
        "type_item",
        "interface_declaration",
        "enum_declaration",
        "record_declaration",
        "struct_declaration",
        "struct_specifier",
        "enum_specifier",
        "type_spec",
    }
)

IMPORTS = frozenset(
    {
        "import_statement",
        "import_from_statement",
        "future_import_statement",
        "import_declaration",
        "using_directive",
        "use_declaration",
        "import_spec",
        "preproc_include",
        "package_clause",
    }
)

CALLS = frozenset({"call", "call_expression", "method_invocation", "invocation_expression"})

# never offered as substitutes
RESERVED = frozenset({"self", "cls", "this", "super", "_", "new"})

KIND_ORDER = ("class", "function", "module", "variable")

_CAMEL = re.compile(r"^_*[A-Z][A-Za-z0-9_]*[a-z][A-Za-z0-9_]*$")


@dataclass
class IdentifierPool:
    counts: Counter = field(default_factory=Counter)
    kinds: dict[str, str] = field(default_factory=dict)

    @property
    def names(self) -> set[str]:
        return set(self.counts)

    def __contains__(self, name: str) -> bool:
        return name in self.counts

    def __len__(self) -> int:
        return len(self.counts)

    def kind_of(self, name: str) -> str:
        return self.kinds.get(name, "variable")

    def restricted(self, names) -> "IdentifierPool":
        keep = set(names)
        return IdentifierPool(
            Counter({n: c for n, c in self.counts.items() if n in keep}),
            {n: k for n, k in self.kinds.items() if n in keep},
        )


def _definition_kind(node: Node) -> str | None:
    parent = node.parent
    if parent is None:
        return None
    name = parent.child_by_field("name")
    if parent.kind == "function_declarator":
        name = parent.child_by_field("declarator")
    if name is not None and name == node:
        if parent.kind in FUNCTION_DEFS:
            return "function"
        if parent.kind in CLASS_DEFS:
            return "class"
    for anc in node.ancestors():
        if anc.kind in IMPORTS:
            return "module"
        if anc.kind.endswith("statement") or anc.kind.endswith("_item") or anc.kind.endswith("definition"):
            break
    return None


def _is_callee(node: Node) -> bool:
    parent = node.parent
    if parent is None:
        return False
    if parent.kind in CALLS:
        return parent.child_by_field("function") == node or parent.child_by_field("name") == node
    grand = parent.parent
    return grand is not None and grand.kind in CALLS and grand.child_by_field("function") == parent


def collect_identifiers(root: Node, source: str = "") -> IdentifierPool:
    counts: Counter = Counter()
    declared: dict[str, set[str]] = {}
    called: set[str] = set()
    for node in root.walk():
        if node.kind not in IDENTIFIER_KINDS or node.child_count:
            continue
        name = node.text()
        if not name:
            continue
        counts[name] += 1
        kind = _definition_kind(node)
        if kind:
            declared.setdefault(name, set()).add(kind)
        elif _is_callee(node):
            called.add(name)
    kinds = {}
    for name in counts:
        found = declared.get(name)
        if found:
            kinds[name] = next(k for k in KIND_ORDER if k in found)
        elif _CAMEL.match(name):
            kinds[name] = "class"
        elif name in called:
            kinds[name] = "function"
        else:
            kinds[name] = "variable"
    return IdentifierPool(counts, kinds)


def _plural_pair(a: str, b: str) -> bool:
    if len(a) > len(b):
        a, b = b, a
    if b in (a + "s", a + "es"):
        return True
    return a.endswith("y") and b == a[:-1] + "ies"


def similar(a: str, b: str) -> bool:
    """Near-names: case-only change, singular/plural, or edit distance <= 2."""
    if a == b:
        return False
    return a.lower() == b.lower() or _plural_pair(a, b) or levenshtein(a, b) <= 2


def dissimilar(a: str, b: str) -> bool:
    return levenshtein(a, b) > max(3, math.ceil(0.5 * max(len(a), len(b))))


def pick_substitute(pool: IdentifierPool, name: str, kind: str, rng, exclude=()) -> str | None:
    """Choose a replacement for ``name``.

    Preference: same-kind near-name, then same-kind dissimilar name, then any
    other identifier in the pool. Returns None when nothing distinct exists.
    """
    banned = set(exclude) | RESERVED | {name}
    others = sorted(n for n in pool.counts if n not in banned)
    same = [n for n in others if pool.kind_of(n) == kind]
    for tier in (
        [n for n in same if similar(name, n)],
        [n for n in same if dissimilar(name, n)],
        others,
    ):
        if tier:
            return tier[int(rng.integers(len(tier)))]
    return None
