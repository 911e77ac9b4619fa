"""Site filters and rewrite rules for the single-line subtypes (indices 1-19).

Each rule receives a site whose target node was captured by the operator's
query and returns the single-row span to overwrite plus its replacement.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass

from ..languages import HASH_COMMENT, bool_literals
from ..syntax import Node, Span
from .identifiers import IdentifierPool, pick_substitute
from .plan import MutationSite, SiteRejected

CLOSERS = frozenset({")", "]", "}", ">"})
IF_KINDS = frozenset({"if_statement", "elif_clause", "if", "elsif", "unless", "if_expression"})
ARITH_SWAP = {"+": "-", "-": "+", "*": "/", "/": "*", "+=": "-=", "-=": "+=", "*=": "/=", "/=": "*="}
LOGIC_SWAP = {"&&": "||", "||": "&&", "and": "or", "or": "and"}
BOOL_TEXTS = frozenset({"true", "false", "True", "False", "1", "0"})
NUMBER = re.compile(r"^[0-9]+(\.[0-9]+)?$")
STRING = re.compile(r"""^([A-Za-z]{0,2})("|'|`)([^"'`\\{}$#%]*)\2$""")
WORD = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


@dataclass
class RewriteContext:
    lines: list[str]
    pool: IdentifierPool
    rng: object
    language: str


def _whole(node: Node) -> Span:
    return node.span


def _in_error(node: Node) -> bool:
    return any(a.is_error for a in node.ancestors())


def base_filter(site: MutationSite) -> str | None:
    """Reason to drop the site, or None if it is usable."""
    t = site.target
    if t.is_missing or t.is_error:
        return "target is a recovery node"
    if not t.span.single_row:
        return "target spans several rows"
    if t.end_byte == t.start_byte:
        return "empty target"
    if site.operator_index != 9 and t.is_extra:
        return "target is a comment"
    if _in_error(t):
        return "target inside an error region"
    return None


def _next_real_sibling(node: Node) -> Node | None:
    sib = node.next_sibling
    while sib is not None and sib.is_extra:
        sib = sib.next_sibling
    return sib


def _rest_of_row(node: Node, lines: list[str]) -> str:
    line = lines[node.span.start_row].encode("utf-8")
    return line[node.span.end_col :].decode("utf-8", errors="replace")


def _comment_delimiter(text: str, language: str) -> str | None:
    for delim in ("#",) if language in HASH_COMMENT else ("//", "/*"):
        if text.startswith(delim):
            return delim
    return None


def _inside_if_condition(node: Node) -> bool:
    child = node
    for anc in node.ancestors():
        if anc.kind in IF_KINDS:
            cond = anc.child_by_field("condition")
            return cond is not None and cond == child
        if anc.kind.endswith("block") or anc.kind in ("block", "statement_block", "compound_statement"):
            return False
        child = anc
    return False


def extra_filter(site: MutationSite, lines: list[str]) -> str | None:
    t, idx = site.target, site.operator_index
    if idx == 7:
        nxt = _next_real_sibling(t)
        if nxt is None or nxt.kind in CLOSERS:
            return "trailing comma"
    elif idx == 8:
        rest = _rest_of_row(t, lines).strip()
        if rest and not rest.startswith(("//", "/*", "#")):
            return "semicolon not at end of line"
    elif idx == 9:
        text = t.text()
        delim = _comment_delimiter(text, site.language)
        if delim is None:
            return "unrecognised comment delimiter"
        if not text[len(delim) :].strip(" \t/*#!"):
            return "empty comment"
        if text.startswith("#!") and t.span.start_row == 0:
            return "shebang line"
    elif idx in (15, 17):
        for side in ("left", "right"):
            operand = site.aux.get(side)
            if operand is None:
                return "missing operand capture"
            if "string" in operand.kind or "template" in operand.kind:
                return "string operand"
    elif idx == 18:
        if not _inside_if_condition(t):
            return "not inside an if condition"
    elif idx == 19:
        if t.kind in ("let_condition", "let_chain"):
            return "pattern-binding condition"
        if t.text() in BOOL_TEXTS:
            return "condition already constant"
    return None


def _substitute_identifier(node: Node, ctx: RewriteContext, kind: str | None = None) -> tuple[Span, str]:
    name = node.text()
    kind = kind or ctx.pool.kind_of(name)
    new = pick_substitute(ctx.pool, name, kind, ctx.rng)
    if new is None:
        raise SiteRejected(f"no substitute for {name!r} in identifier pool")
    return node.span, new


def _rewrite_path(node: Node, ctx: RewriteContext) -> tuple[Span, str]:
    text = node.text()
    cut = text.rfind("/") + 1
    m = WORD.search(text, cut)
    if m is None:
        raise SiteRejected(f"no name component in import path {text!r}")
    stem = m.group()
    plain = ctx.pool.restricted(n for n in ctx.pool.names if WORD.fullmatch(n))
    new = pick_substitute(plain, stem, "module", ctx.rng)
    if new is None:
        raise SiteRejected(f"no substitute for {stem!r} in identifier pool")
    s = node.span
    start = s.start_col + len(text[: m.start()].encode("utf-8"))
    return Span(s.start_row, start, s.end_row, start + len(stem.encode("utf-8"))), new


def _random_digits(length: int, rng) -> str:
    first = str(int(rng.integers(1, 10)))
    rest = "".join(str(int(d)) for d in rng.integers(0, 10, size=length - 1))
    return first + rest


def _scramble_char(c: str, rng) -> str:
    # letters and digits are redrawn; spacing and punctuation keep the literal's shape
    if c.isascii() and c.isalpha():
        return string.ascii_letters[int(rng.integers(len(string.ascii_letters)))]
    if c.isascii() and c.isdigit():
        return str(int(rng.integers(10)))
    return c


def _perturb_argument(node: Node, ctx: RewriteContext) -> tuple[Span, str]:
    text = node.text()
    if node.kind in ("identifier",):
        return _substitute_identifier(node, ctx)
    if NUMBER.match(text):
        for _ in range(8):
            if "." in text:
                whole, frac = text.split(".")
                new = _random_digits(len(whole), ctx.rng) + "." + _random_digits(len(frac), ctx.rng)
            else:
                new = _random_digits(len(text), ctx.rng)
            if new != text:
                return node.span, new
        raise SiteRejected(f"could not perturb number {text!r}")
    m = STRING.match(text)
    if m and m.group(3):
        prefix, quote, body = m.groups()
        for _ in range(8):
            new_body = "".join(_scramble_char(c, ctx.rng) for c in body)
            if new_body != body:
                return node.span, f"{prefix}{quote}{new_body}{quote}"
        raise SiteRejected("could not perturb string")
    raise SiteRejected(f"unsupported argument form {text!r}")


def rewrite(site: MutationSite, ctx: RewriteContext) -> tuple[Span, str]:
    t, idx = site.target, site.operator_index
    if idx == 1:
        return t.span, "="
    if idx == 2:
        return t.span, "=="
    if 3 <= idx <= 8:
        return t.span, ""
    if idx == 9:
        text = t.text()
        delim = _comment_delimiter(text, site.language)
        if site.language in HASH_COMMENT:
            options = ["", "//"]
        else:
            options = ["", "#"]
        new = options[int(ctx.rng.integers(len(options)))]
        s = t.span
        return Span(s.start_row, s.start_col, s.start_row, s.start_col + len(delim)), new
    if idx == 10:
        if t.kind in ("identifier", "constant"):
            return _substitute_identifier(t, ctx)
        return _substitute_identifier_value(t, ctx)
    if idx == 11:
        if "string" in t.kind:
            return _rewrite_path(t, ctx)
        return _substitute_identifier(t, ctx, "module")
    if idx == 12:
        return _substitute_identifier(t, ctx, "class")
    if idx == 13:
        return _substitute_identifier(t, ctx)
    if idx == 14:
        return _perturb_argument(t, ctx)
    if idx == 15:
        return t.span, f"({t.text()})/0"
    if idx == 16:
        return t.span, ARITH_SWAP[t.text()]
    if idx == 17:
        keep = site.aux["left"] if int(ctx.rng.integers(2)) == 0 else site.aux["right"]
        return t.span, keep.text()
    if idx == 18:
        return t.span, LOGIC_SWAP[t.text()]
    if idx == 19:
        true, false = bool_literals(site.language)
        return t.span, true if int(ctx.rng.integers(2)) == 0 else false
    raise ValueError(f"operator {idx} has no single-line rewrite")


def _substitute_identifier_value(node: Node, ctx: RewriteContext) -> tuple[Span, str]:
    # a compound return value is replaced wholesale by a variable name
    new = pick_substitute(ctx.pool, node.text(), "variable", ctx.rng)
    if new is None:
        raise SiteRejected("identifier pool is empty")
    return node.span, new
