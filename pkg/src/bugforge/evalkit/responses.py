"""Turn free-form model output into a structured answer. Never raises."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

_FENCE = re.compile(r"```[ \t]*([A-Za-z0-9_+-]*)[ \t]*\n(.*?)```", re.DOTALL)
_TYPE = re.compile(r"\btype\"?\s*[:=]\s*(\d+)", re.IGNORECASE)
_LINES = re.compile(r"\blines\"?\s*[:=]\s*\[([^\]]*)\]", re.IGNORECASE)
_LINE_REPAIR = re.compile(r"line\s+(\d+)\s*:?\s*\n```[^\n]*\n(.*?)\n```", re.IGNORECASE | re.DOTALL)


@dataclass
class ModelResponse:
    has_error: bool = False
    predicted_subtype: int | None = None
    predicted_locations: list[int] = field(default_factory=list)
    repairs: dict[int, str] = field(default_factory=dict)
    raw_text: str = ""
    parse_failed: bool = False

    def __post_init__(self):
        if not self.has_error:
            self.predicted_subtype = None
            self.predicted_locations = []
            self.repairs = {}
        self.predicted_locations = _dedupe(self.predicted_locations)
        self.repairs = {k: v for k, v in self.repairs.items() if k in self.predicted_locations}


def _dedupe(lines) -> list[int]:
    seen, out = set(), []
    for x in lines:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def _as_int(value) -> int | None:
    if isinstance(value, bool):
        return None
    if isinstance(value, int):
        return value
    if isinstance(value, str) and value.strip().isdigit():
        return int(value.strip())
    return None


def _from_json(obj: dict, raw: str) -> ModelResponse | None:
    if not isinstance(obj, dict) or "has_error" not in obj:
        return None
    has_error = bool(obj.get("has_error"))
    subtype = _as_int(obj.get("type"))
    if subtype is not None and not 1 <= subtype <= 22:
        subtype = None
    lines = [n for n in (_as_int(x) for x in obj.get("lines") or []) if n is not None and n >= 1]
    repairs = {}
    raw_repairs = obj.get("repairs") or {}
    if isinstance(raw_repairs, dict):
        for k, v in raw_repairs.items():
            n = _as_int(k)
            if n is not None and isinstance(v, str):
                repairs[n] = v.rstrip("\r\n")
    return ModelResponse(has_error, subtype, lines, repairs, raw)


def _fallback(text: str) -> ModelResponse | None:
    t = _TYPE.search(text)
    ls = _LINES.search(text)
    if not t and not ls:
        return None
    subtype = int(t.group(1)) if t else None
    if subtype is not None and not 1 <= subtype <= 22:
        subtype = None
    lines = [int(x) for x in re.findall(r"\d+", ls.group(1))] if ls else []
    repairs = {int(n): body.split("\n")[0] for n, body in _LINE_REPAIR.findall(text)}
    return ModelResponse(True, subtype, [x for x in lines if x >= 1], repairs, text)


def parse_response(text: str) -> ModelResponse:
    text = text if isinstance(text, str) else ""
    try:
        for tag, body in _FENCE.findall(text):
            if tag and tag.lower() != "json":
                continue
            try:
                obj = json.loads(body)
            except ValueError:
                continue
            resp = _from_json(obj, text)
            if resp is not None:
                return resp
        resp = _fallback(text)
        if resp is not None:
            return resp
    except Exception:  # failures are data, not exceptions
        pass
    return ModelResponse(raw_text=text, parse_failed=True)
