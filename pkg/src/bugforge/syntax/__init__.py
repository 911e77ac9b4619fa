from .backend import (
    ConfigurationError,
    GrammarBackend,
    QuerySyntaxError,
    TreeSitterBackend,
    get_backend,
    parse,
    register_backend,
    run_query,
)
from .edit import SpanRangeError, line_of, replace_in_line, replace_span, span_text, split_lines
from .tree import Node, QueryMatch, Span, find_errors

__all__ = [
    "ConfigurationError",
    "GrammarBackend",
    "Node",
    "QueryMatch",
    "QuerySyntaxError",
    "Span",
    "SpanRangeError",
    "TreeSitterBackend",
    "find_errors",
    "get_backend",
    "line_of",
    "parse",
    "register_backend",
    "replace_in_line",
    "replace_span",
    "run_query",
    "span_text",
    "split_lines",
]
