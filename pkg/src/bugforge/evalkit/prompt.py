"""Three-part debugging prompt: code, subtype catalog, instruction."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from ..dataset import BugInstance
from ..languages import FENCE_TAGS
from ..mutators.catalog import CATALOG_VERSION, OperatorSpec, default_catalog
from ..syntax import split_lines

INSTRUCTION = """\
The code above may contain injected bugs. Decide whether it has an error. If it does,
give the subtype number from the list, every buggy line number, and for each of those
lines the full corrected line. Line numbers refer to the numbers shown at the left of
the code; do not include them in the corrected lines.

Answer with exactly one fenced block of this form:
```json
{"has_error": true, "type": 13, "lines": [3], "repairs": {"3": "<full corrected line 3>"}}
```
If there is no error, answer {"has_error": false, "type": null, "lines": [], "repairs": {}}.
"""

_WORDS = re.compile(r"\w+|[^\w\s]")


@dataclass(frozen=True)
class PromptBundle:
    instance_id: str
    prompt_text: str
    subtype_catalog_version: str


def _numbered(code: str) -> str:
    lines = split_lines(code)
    width = len(str(len(lines)))
    return "\n".join(f"{i:>{width}} | {line}" for i, line in enumerate(lines, start=1))


def render_catalog(catalog) -> str:
    out = []
    category = None
    for op in catalog:
        if op.category != category:
            category = op.category
            out.append(f"{category} errors:")
        out.append(f"  {op.index}. {op.name}: {op.description}")
    return "\n".join(out)


def build_prompt(inst: BugInstance, catalog: tuple[OperatorSpec, ...] | None = None) -> PromptBundle:
    catalog = tuple(catalog) if catalog is not None else default_catalog()
    if sorted(op.index for op in catalog) != list(range(1, 23)):
        raise ValueError("catalog must cover subtypes 1 to 22")
    fence = FENCE_TAGS.get(inst.language, "")
    text = (
        f"## Code\nFile: {inst.relative_path} ({inst.language})\n"
        f"```{fence}\n{_numbered(inst.buggy_code)}\n```\n\n"
        f"## Error types\n{render_catalog(catalog)}\n\n"
        f"## Instruction\n{INSTRUCTION}"
    )
    return PromptBundle(inst.id, text, CATALOG_VERSION)


def estimate_tokens(text: str) -> int:
    """Word-and-punctuation count; a cheap, tokenizer-free upper-ish estimate."""
    return len(_WORDS.findall(text))


def oracle_response(inst: BugInstance) -> str:
    """The ground-truth answer in the requested format."""
    answer = {
        "has_error": True,
        "type": inst.subtype_index,
        "lines": list(inst.locations),
        "repairs": {str(e.line): e.original_line for e in inst.edits},
    }
    return "```json\n" + json.dumps(answer, ensure_ascii=False) + "\n```\n"


def empty_response() -> str:
    return "I could not find anything."
