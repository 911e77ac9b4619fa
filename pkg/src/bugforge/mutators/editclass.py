"""Decide whether an (original line, buggy line) pair fits a subtype's rewrite rule.

These checks look only at the two strings, independently of the tree-driven
rewriters, so they can audit instances loaded from disk.
"""

from __future__ import annotations

import re

# Ruby method names may end in ? or !
_IDENT = re.compile(r"[A-Za-z_$][A-Za-z0-9_$]*[?!]?")
_IDENT_FULL = re.compile(r"^[A-Za-z_$][A-Za-z0-9_$]*[?!]?$")
_ARITH = "+-*/%"
_BOOLS = ("true", "false", "True", "False", "1", "0")


def _replaced_once(o: str, b: str, old: str, new: str, *, word: bool = False) -> bool:
    if len(b) != len(o) - len(old) + len(new):
        return False
    start = o.find(old)
    while start != -1:
        if b == o[:start] + new + o[start + len(old) :]:
            if not word or _word_bounded(o, start, len(old)):
                return True
        start = o.find(old, start + 1)
    return False


def _word_bounded(text: str, start: int, length: int) -> bool:
    before = text[start - 1] if start > 0 else " "
    after = text[start + length] if start + length < len(text) else " "
    return not (before.isalnum() or before == "_") and not (after.isalnum() or after == "_")


def _substitutions(o: str, b: str, allowed):
    """Yield (old, new) where o = P+old+S and b = P+new+S with new taken from ``allowed`` matches."""
    for new_match in allowed(b):
        i, j = new_match
        prefix, suffix = b[:i], b[j:]
        if len(prefix) + len(suffix) > len(o):
            continue
        if o.startswith(prefix) and o.endswith(suffix):
            old = o[len(prefix) : len(o) - len(suffix)]
            new = b[i:j]
            if old and old != new:
                yield old, new


def _ident_spans(text: str):
    return [(m.start(), m.end()) for m in _IDENT.finditer(text)]


def _is_identifier_swap(o: str, b: str) -> bool:
    return any(_IDENT_FULL.match(old) for old, _ in _substitutions(o, b, _ident_spans))


def _is_value_to_identifier(o: str, b: str) -> bool:
    return any(True for _ in _substitutions(o, b, _ident_spans))


def _is_same_length_literal_change(o: str, b: str) -> bool:
    if len(o) != len(b):
        return False
    diff = [(x, y) for x, y in zip(o, b) if x != y]
    return bool(diff) and all(x.isalnum() and y.isalnum() for x, y in diff)


def _is_divide_by_zero(o: str, b: str) -> bool:
    if len(b) != len(o) + 4:
        return False
    for i in range(len(o)):
        if b[i] != "(" or b[:i] != o[:i]:
            if b[:i] != o[:i]:
                return False
            continue
        for j in range(i + 1, len(o) + 1):
            if b[j + 1 : j + 4] == ")/0" and b[j + 4 :] == o[j:] and b[i + 1 : j + 1] == o[i:j]:
                return True
    return False


def _is_operand_drop(o: str, b: str) -> bool:
    cut = len(o) - len(b)
    if cut <= 1:
        return False
    for i in range(len(b) + 1):
        if o[:i] == b[:i] and o[i + cut :] == b[i:]:
            removed = o[i : i + cut].strip()
            if len(removed) > 1 and (removed[0] in _ARITH or removed[-1] in _ARITH):
                return True
    return False


def _is_constant_condition(o: str, b: str) -> bool:
    def bool_spans(text):
        out = []
        for lit in _BOOLS:
            start = text.find(lit)
            while start != -1:
                if _word_bounded(text, start, len(lit)):
                    out.append((start, start + len(lit)))
                start = text.find(lit, start + 1)
        return out

    return any(old not in _BOOLS for old, _ in _substitutions(o, b, bool_spans))


def _is_comment_corruption(o: str, b: str) -> bool:
    for old in ("#", "//", "/*"):
        for new in ("", "#", "//"):
            if new != old and _replaced_once(o, b, old, new):
                return True
    return False


def edit_matches(index: int, original: str, buggy: str) -> bool:
    """True if ``buggy`` can come from ``original`` under subtype ``index`` (1-19)."""
    o, b = original, buggy
    if o == b:
        return False
    if index == 1:
        return _replaced_once(o, b, "==", "=") or _replaced_once(o, b, "===", "=")
    if index == 2:
        return _replaced_once(o, b, "=", "==")
    if 3 <= index <= 8:
        token = {3: ")", 4: "]", 5: "}", 6: ":", 7: ",", 8: ";"}[index]
        return _replaced_once(o, b, token, "")
    if index == 9:
        return _is_comment_corruption(o, b)
    if index == 10:
        return _is_value_to_identifier(o, b)
    if index in (11, 12, 13):
        return _is_identifier_swap(o, b)
    if index == 14:
        return _is_identifier_swap(o, b) or _is_same_length_literal_change(o, b)
    if index == 15:
        return _is_divide_by_zero(o, b)
    if index == 16:
        pairs = [("+=", "-="), ("-=", "+="), ("*=", "/="), ("/=", "*="), ("+", "-"), ("-", "+"), ("*", "/"), ("/", "*")]
        return any(_replaced_once(o, b, x, y) for x, y in pairs)
    if index == 17:
        return _is_operand_drop(o, b)
    if index == 18:
        return (
            _replaced_once(o, b, "&&", "||")
            or _replaced_once(o, b, "||", "&&")
            or _replaced_once(o, b, "and", "or", word=True)
            or _replaced_once(o, b, "or", "and", word=True)
        )
    if index == 19:
        return _is_constant_condition(o, b)
    raise ValueError(f"no single-line edit class for subtype {index}")


def matching_subtypes(original: str, buggy: str) -> list[int]:
    return [i for i in range(1, 20) if edit_matches(i, original, buggy)]
