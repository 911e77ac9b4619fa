"""Grammar backends: one per language, each exposing parse + query."""

from __future__ import annotations

import importlib
import re
import threading
from typing import Callable, Protocol

import tree_sitter as ts

from ..languages import LANGUAGES
from .tree import Node, QueryMatch


class ConfigurationError(LookupError):
    """No grammar is registered for the requested language."""


class QuerySyntaxError(ValueError):
    def __init__(self, message: str, row: int | None = None, column: int | None = None):
        where = f" at row {row}, column {column}" if row is not None else ""
        super().__init__(f"malformed query{where}: {message}")
        self.row = row
        self.column = column


class GrammarBackend(Protocol):
    language: str

    def parse(self, source: str) -> Node: ...

    def query(self, root: Node, pattern: str) -> list[QueryMatch]: ...


TREE_SITTER_MODULES = {
    "C": "tree_sitter_c",
    "C#": "tree_sitter_c_sharp",
    "Go": "tree_sitter_go",
    "Java": "tree_sitter_java",
    "JavaScript": "tree_sitter_javascript",
    "Python": "tree_sitter_python",
    "Ruby": "tree_sitter_ruby",
    "Rust": "tree_sitter_rust",
}

_POSITION = re.compile(r"row (\d+), column (\d+)")


class TreeSitterBackend:
    def __init__(self, language: str, module_name: str):
        self.language = language
        mod = importlib.import_module(module_name)
        self._lang = ts.Language(mod.language())
        self._local = threading.local()
        self._queries: dict[str, ts.Query] = {}
        self._lock = threading.Lock()

    def _parser(self) -> ts.Parser:
        parser = getattr(self._local, "parser", None)
        if parser is None:
            parser = self._local.parser = ts.Parser(self._lang)
        return parser

    def parse(self, source: str) -> Node:
        tree = self._parser().parse(source.encode("utf-8"))
        return Node(tree.root_node, self)

    def compile(self, pattern: str) -> ts.Query:
        with self._lock:
            query = self._queries.get(pattern)
            if query is None:
                try:
                    query = ts.Query(self._lang, pattern)
                except ts.QueryError as exc:
                    msg = str(exc)
                    m = _POSITION.search(msg)
                    if m:
                        raise QuerySyntaxError(msg, int(m.group(1)), int(m.group(2))) from None
                    raise QuerySyntaxError(msg) from None
                self._queries[pattern] = query
        return query

    def query(self, root: Node, pattern: str) -> list[QueryMatch]:
        cursor = ts.QueryCursor(self.compile(pattern))
        out = []
        for index, caps in cursor.matches(root.raw):
            captures = {name: Node(nodes[0], self) for name, nodes in caps.items() if nodes}
            if captures:
                out.append(QueryMatch(captures, index))
        out.sort(key=lambda m: (m.outermost().start_byte, -m.outermost().end_byte, m.pattern_index))
        return out


_factories: dict[str, Callable[[], GrammarBackend]] = {
    tag: (lambda tag=tag: TreeSitterBackend(tag, TREE_SITTER_MODULES[tag])) for tag in LANGUAGES
}
_instances: dict[str, GrammarBackend] = {}
_registry_lock = threading.Lock()


def register_backend(language: str, factory: Callable[[], GrammarBackend]) -> None:
    with _registry_lock:
        _factories[language] = factory
        _instances.pop(language, None)


def get_backend(language: str) -> GrammarBackend:
    with _registry_lock:
        backend = _instances.get(language)
        if backend is None:
            factory = _factories.get(language)
            if factory is None:
                raise ConfigurationError(f"no grammar registered for language {language!r}")
            backend = _instances[language] = factory()
        return backend


def parse(source: str, language: str) -> Node:
    return get_backend(language).parse(source)


def run_query(root: Node, source: str, pattern: str) -> list[QueryMatch]:
    """Run an S-expression query; matches come back in document order.

    ``source`` must be the text ``root`` was parsed from; the backend keeps
    its own copy, so it is accepted for interface symmetry only.
    """
    return root.backend.query(root, pattern)
