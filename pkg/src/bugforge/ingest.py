"""Repository manifests, collection filters and source-file loading."""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path

from .languages import LANGUAGES, language_for_path

log = logging.getLogger(__name__)

LineRange = tuple[int, int]


class ManifestError(ValueError):
    """A manifest field is missing or malformed."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


class SourceLoadError(OSError):
    def __init__(self, path, message: str):
        super().__init__(f"{path}: {message}")
        self.path = str(path)


@dataclass(frozen=True)
class FilterPolicy:
    min_stars: int = 100  # strictly more than this
    created_on_or_after: date = date(2022, 1, 1)
    licenses: frozenset[str] = frozenset({"MIT"})
    max_bytes: int = 1 << 20
    languages: frozenset[str] = frozenset(LANGUAGES)


@dataclass(frozen=True)
class RepoManifest:
    name: str
    star_count: int
    created_at: date | str
    license_id: str
    root: str

    @classmethod
    def from_dict(cls, data: dict, base: str | Path | None = None) -> "RepoManifest":
        for key in ("name", "star_count", "created_at", "license_id", "root"):
            if key not in data:
                raise ManifestError(key, "missing")
        stars = data["star_count"]
        if isinstance(stars, bool) or not isinstance(stars, int) or stars < 0:
            raise ManifestError("star_count", f"expected a non-negative integer, got {stars!r}")
        root = str(data["root"])
        if base is not None and not os.path.isabs(root):
            root = str(Path(base) / root)
        return cls(
            name=str(data["name"]),
            star_count=stars,
            created_at=parse_date(data["created_at"]),
            license_id=str(data["license_id"]),
            root=root,
        )


def parse_date(value, field_name: str = "created_at") -> date:
    if isinstance(value, date):
        return value
    try:
        return date.fromisoformat(str(value)[:10])
    except ValueError:
        raise ManifestError(field_name, f"not an ISO-8601 date: {value!r}") from None


def load_manifest(path: str | Path) -> RepoManifest:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise SourceLoadError(path, str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise ManifestError("<file>", f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ManifestError("<file>", "manifest must be a JSON object")
    return RepoManifest.from_dict(data, base=path.parent)


@dataclass(frozen=True)
class CriterionResult:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    repo: str
    criteria: tuple[CriterionResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.criteria)

    def failures(self) -> list[str]:
        return [c.name for c in self.criteria if not c.passed]


def validate_manifest(manifest: RepoManifest, policy: FilterPolicy = FilterPolicy()) -> ValidationReport:
    created = parse_date(manifest.created_at)
    stars_ok = manifest.star_count > policy.min_stars
    date_ok = created >= policy.created_on_or_after
    license_ok = manifest.license_id in policy.licenses
    return ValidationReport(
        repo=manifest.name,
        criteria=(
            CriterionResult("stars", stars_ok, f"{manifest.star_count} > {policy.min_stars}"),
            CriterionResult(
                "created_at", date_ok, f"{created.isoformat()} >= {policy.created_on_or_after.isoformat()}"
            ),
            CriterionResult("license", license_ok, f"{manifest.license_id} in {sorted(policy.licenses)}"),
        ),
    )


@dataclass(frozen=True)
class SourceFile:
    repo: str
    relative_path: str
    language: str
    content: str
    line_count: int
    focus_lines: tuple[LineRange, ...] | None = None

    def __post_init__(self):
        expected = language_for_path(self.relative_path)
        if expected != self.language:
            raise ValueError(f"{self.relative_path}: language {self.language!r} does not match suffix")
        if self.line_count != count_lines(self.content):
            raise ValueError(f"{self.relative_path}: line_count {self.line_count} is wrong")

    def in_focus(self, line: int) -> bool:
        return any(lo <= line <= hi for lo, hi in self.focus_lines or ())


def count_lines(text: str) -> int:
    if not text:
        return 0
    return text.count("\n") + (0 if text.endswith("\n") else 1)


def load_source_file(
    path: str | Path,
    language: str | None = None,
    *,
    repo: str = "",
    relative_path: str | None = None,
    focus_lines=None,
) -> SourceFile:
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise SourceLoadError(path, exc.strerror or str(exc)) from exc
    try:
        content = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise SourceLoadError(path, f"not valid UTF-8 ({exc.reason} at byte {exc.start})") from exc
    rel = relative_path if relative_path is not None else path.name
    language = language or language_for_path(rel)
    if language is None:
        raise SourceLoadError(path, "unsupported suffix")
    focus = tuple((int(a), int(b)) for a, b in focus_lines) if focus_lines else None
    return SourceFile(repo, rel, language, content, count_lines(content), focus)


@dataclass
class SkipRecord:
    path: str
    reason: str


def load_focus_sidecar(path: str | Path) -> dict[str, list[LineRange]]:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        raise ValueError("focus sidecar must map relative paths to range lists")
    out = {}
    for rel, ranges in data.items():
        parsed = []
        for pair in ranges:
            lo, hi = (int(v) for v in pair)
            if lo < 1 or hi < lo:
                raise ValueError(f"{rel}: bad range {pair!r}")
            parsed.append((lo, hi))
        out[rel] = parsed
    return out


def discover_files(
    root: str | Path,
    policy: FilterPolicy = FilterPolicy(),
    *,
    repo: str | None = None,
    focus: dict[str, list[LineRange]] | None = None,
    skip_log: list[SkipRecord] | None = None,
) -> list[SourceFile]:
    """Load every supported source file under ``root``, sorted by relative path.

    Unreadable, oversized or non-UTF-8 files are recorded in ``skip_log``
    instead of raising.
    """
    root = Path(root)
    if not root.is_dir():
        raise SourceLoadError(root, "not a directory")
    repo = repo if repo is not None else root.resolve().name
    skips = skip_log if skip_log is not None else []
    candidates = []
    for dirpath, dirnames, filenames in os.walk(root):
        dirnames[:] = [d for d in dirnames if not d.startswith(".")]
        for name in filenames:
            full = Path(dirpath) / name
            rel = full.relative_to(root).as_posix()
            language = language_for_path(rel)
            if language is None or language not in policy.languages:
                continue
            candidates.append((rel, full, language))
    files = []
    for rel, full, language in sorted(candidates):
        try:
            size = full.stat().st_size
        except OSError as exc:
            skips.append(SkipRecord(rel, f"stat failed: {exc}"))
            continue
        if size > policy.max_bytes:
            skips.append(SkipRecord(rel, f"{size} bytes exceeds cap {policy.max_bytes}"))
            continue
        try:
            sf = load_source_file(
                full, language, repo=repo, relative_path=rel, focus_lines=(focus or {}).get(rel)
            )
        except SourceLoadError as exc:
            log.info("skipping %s: %s", rel, exc)
            skips.append(SkipRecord(rel, str(exc)))
            continue
        files.append(sf)
    return files
