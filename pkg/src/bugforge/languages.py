"""Language tags, suffix map and small per-language lexical facts."""

from __future__ import annotations

from pathlib import PurePath

LANGUAGES = ("C", "C#", "Go", "Java", "JavaScript", "Python", "Ruby", "Rust")

SUFFIX_MAP = {
    ".c": "C",
    ".cs": "C#",
    ".go": "Go",
    ".java": "Java",
    ".js": "JavaScript",
    ".py": "Python",
    ".rb": "Ruby",
    ".rs": "Rust",
}

# directory names under queries/
QUERY_DIRS = {
    "C": "c",
    "C#": "csharp",
    "Go": "go",
    "Java": "java",
    "JavaScript": "javascript",
    "Python": "python",
    "Ruby": "ruby",
    "Rust": "rust",
}

# fence tags used in prompts
FENCE_TAGS = {
    "C": "c",
    "C#": "csharp",
    "Go": "go",
    "Java": "java",
    "JavaScript": "javascript",
    "Python": "python",
    "Ruby": "ruby",
    "Rust": "rust",
}

HASH_COMMENT = frozenset({"Python", "Ruby"})

BRACE_LANGUAGES = frozenset({"C", "C#", "Go", "Java", "JavaScript", "Rust"})

TRUE_LITERAL = {"Python": "True", "C": "1"}
FALSE_LITERAL = {"Python": "False", "C": "0"}


def language_for_path(path: str | PurePath) -> str | None:
    return SUFFIX_MAP.get(PurePath(path).suffix)


def check_language(tag: str) -> str:
    if tag not in LANGUAGES:
        raise ValueError(f"unsupported language {tag!r}; expected one of {', '.join(LANGUAGES)}")
    return tag


def bool_literals(language: str) -> tuple[str, str]:
    return TRUE_LITERAL.get(language, "true"), FALSE_LITERAL.get(language, "false")


def comment_delimiters(language: str) -> tuple[str, ...]:
    if language in HASH_COMMENT:
        return ("#",)
    return ("//", "/*")
