"""Span-addressed string surgery."""

from __future__ import annotations

from .tree import Span


class SpanRangeError(IndexError):
    pass


def split_lines(text: str) -> list[str]:
    """Lines without their trailing newline; a final newline adds no empty line."""
    if not text:
        return []
    lines = text.split("\n")
    if text.endswith("\n"):
        lines.pop()
    return lines


def _row_offsets(data: bytes) -> list[int]:
    offsets = [0]
    pos = data.find(b"\n")
    while pos != -1:
        offsets.append(pos + 1)
        pos = data.find(b"\n", pos + 1)
    return offsets


def _byte_offset(data: bytes, rows: list[int], row: int, col: int) -> int:
    if row >= len(rows):
        raise SpanRangeError(f"row {row} beyond end of source ({len(rows)} rows)")
    start = rows[row]
    end = rows[row + 1] - 1 if row + 1 < len(rows) else len(data)
    if col > end - start:
        raise SpanRangeError(f"column {col} beyond end of row {row} (length {end - start})")
    return start + col


def span_text(source: str, span: Span) -> str:
    data = source.encode("utf-8")
    rows = _row_offsets(data)
    a = _byte_offset(data, rows, span.start_row, span.start_col)
    b = _byte_offset(data, rows, span.end_row, span.end_col)
    return data[a:b].decode("utf-8")


def replace_span(source: str, span: Span, replacement: str, *, allow_multirow: bool = False) -> str:
    """Return ``source`` with the text under ``span`` replaced.

    Replacements may not contain newlines. A span covering several rows is
    rejected unless ``allow_multirow`` is set, since collapsing rows changes
    line numbering.
    """
    if "\n" in replacement:
        raise ValueError("replacement text must not contain a newline")
    if not span.single_row and not allow_multirow:
        raise ValueError(f"multi-row span {span} with a single-line replacement")
    data = source.encode("utf-8")
    rows = _row_offsets(data)
    a = _byte_offset(data, rows, span.start_row, span.start_col)
    b = _byte_offset(data, rows, span.end_row, span.end_col)
    try:
        return (data[:a] + replacement.encode("utf-8") + data[b:]).decode("utf-8")
    except UnicodeDecodeError:
        raise SpanRangeError(f"span {span} splits a multi-byte character") from None


def line_of(span: Span) -> int:
    return span.start_row + 1


def replace_in_line(line: str, start_col: int, end_col: int, replacement: str) -> str:
    """Byte-column replacement within one line of text."""
    data = line.encode("utf-8")
    if not 0 <= start_col <= end_col <= len(data):
        raise SpanRangeError(f"columns {start_col}:{end_col} outside line of length {len(data)}")
    return (data[:start_col] + replacement.encode("utf-8") + data[end_col:]).decode("utf-8")
