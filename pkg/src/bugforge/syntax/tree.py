"""Read-only views over concrete syntax trees."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


@dataclass(frozen=True, order=True)
class Span:
    """Half-open region; rows are 0-based, columns are UTF-8 byte offsets."""

    start_row: int
    start_col: int
    end_row: int
    end_col: int

    def __post_init__(self):
        if (self.start_row, self.start_col) > (self.end_row, self.end_col):
            raise ValueError(f"span start after end: {self}")
        if min(self.start_row, self.start_col, self.end_row, self.end_col) < 0:
            raise ValueError(f"negative coordinate in {self}")

    @property
    def single_row(self) -> bool:
        return self.start_row == self.end_row

    def __str__(self):
        return f"({self.start_row},{self.start_col})-({self.end_row},{self.end_col})"


class Node:
    """A grammar node. Wraps a backend node; cheap to create, never mutated."""

    __slots__ = ("_n", "backend")

    def __init__(self, raw, backend):
        self._n = raw
        self.backend = backend

    def _wrap(self, raw):
        return None if raw is None else Node(raw, self.backend)

    @property
    def raw(self):
        return self._n

    @property
    def kind(self) -> str:
        return self._n.type

    @property
    def span(self) -> Span:
        s, e = self._n.start_point, self._n.end_point
        return Span(s[0], s[1], e[0], e[1])

    @property
    def start_byte(self) -> int:
        return self._n.start_byte

    @property
    def end_byte(self) -> int:
        return self._n.end_byte

    @property
    def children(self) -> tuple["Node", ...]:
        return tuple(Node(c, self.backend) for c in self._n.children)

    @property
    def named_children(self) -> tuple["Node", ...]:
        return tuple(Node(c, self.backend) for c in self._n.named_children)

    @property
    def child_count(self) -> int:
        return self._n.child_count

    @property
    def parent(self) -> "Node | None":
        return self._wrap(self._n.parent)

    @property
    def next_sibling(self) -> "Node | None":
        return self._wrap(self._n.next_sibling)

    @property
    def prev_sibling(self) -> "Node | None":
        return self._wrap(self._n.prev_sibling)

    @property
    def is_error(self) -> bool:
        return self._n.is_error

    @property
    def is_missing(self) -> bool:
        return self._n.is_missing

    @property
    def is_named(self) -> bool:
        return self._n.is_named

    @property
    def is_extra(self) -> bool:
        return self._n.is_extra

    @property
    def has_error(self) -> bool:
        """True if this subtree contains an error or missing node."""
        return self._n.has_error

    def child_by_field(self, name: str) -> "Node | None":
        return self._wrap(self._n.child_by_field_name(name))

    def text(self) -> str:
        return self._n.text.decode("utf-8")

    def walk(self) -> Iterator["Node"]:
        """Pre-order traversal."""
        stack = [self._n]
        while stack:
            raw = stack.pop()
            yield Node(raw, self.backend)
            stack.extend(reversed(raw.children))

    def leaves(self) -> Iterator["Node"]:
        for node in self.walk():
            if node.child_count == 0 and node.end_byte > node.start_byte:
                yield node

    def ancestors(self) -> Iterator["Node"]:
        node = self.parent
        while node is not None:
            yield node
            node = node.parent

    def __eq__(self, other):
        return isinstance(other, Node) and self._n == other._n

    def __hash__(self):
        return hash((self._n.start_byte, self._n.end_byte, self._n.type))

    def __repr__(self):
        return f"Node({self.kind}, {self.span})"

    def sexp(self) -> str:
        return str(self._n)


@dataclass(frozen=True)
class QueryMatch:
    captures: dict[str, Node]
    pattern_index: int = 0

    def __getitem__(self, name: str) -> Node:
        return self.captures[name]

    def get(self, name: str) -> Node | None:
        return self.captures.get(name)

    def outermost(self) -> Node:
        return min(self.captures.values(), key=lambda n: (n.start_byte, -n.end_byte))


def find_errors(root: Node) -> list[Node]:
    return [n for n in root.walk() if n.is_error or n.is_missing]
