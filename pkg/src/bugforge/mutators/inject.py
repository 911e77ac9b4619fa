"""Site enumeration, planning, multi-bug composition and per-file injection."""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass

from ..dataset import BugInstance
from ..ingest import SourceFile
from ..syntax import Node, parse, replace_in_line, split_lines
from .catalog import OperatorSpec, get_operator, single_line_operators
from .identifiers import IdentifierPool, collect_identifiers
from .operators import RewriteContext, base_filter, extra_filter, rewrite
from .plan import EditRecord, LineEdit, MutationPlan, MutationSite, SiteRejected
from .rng import stream

log = logging.getLogger(__name__)

DEFAULT_QUOTA = 5


@dataclass
class InjectionSkip:
    relative_path: str
    operator_index: int | None
    reason: str


def enumerate_sites(root: Node, source: str, op: OperatorSpec, language: str) -> list[MutationSite]:
    if op.is_multiple or not op.applies_to(language):
        return []
    lines = split_lines(source)
    matches = root.backend.query(root, op.site_query(language))
    seen = set()
    sites = []
    for m in matches:
        target = m.get("target")
        if target is None:
            continue
        key = (target.start_byte, target.end_byte, target.kind)
        if key in seen:
            continue
        aux = {k: v for k, v in m.captures.items() if k != "target" and not k.startswith("_")}
        site = MutationSite(op.index, target, language, aux)
        if base_filter(site) or extra_filter(site, lines):
            continue
        seen.add(key)
        sites.append(site)
    sites.sort(key=lambda s: (s.target.start_byte, s.target.end_byte))
    return sites


def _max_line_length(lines: list[str]) -> int:
    return max((len(line) for line in lines), default=0)


def plan_mutation(site: MutationSite, source: str, pool: IdentifierPool, rng, *, lines=None) -> MutationPlan:
    lines = lines if lines is not None else split_lines(source)
    ctx = RewriteContext(lines, pool, rng, site.language)
    span, replacement = rewrite(site, ctx)
    if not span.single_row:
        raise SiteRejected("edit spans several rows")
    row = span.start_row
    original = lines[row]
    buggy = replace_in_line(original, span.start_col, span.end_col, replacement)
    if buggy == original:
        raise SiteRejected("rewrite left the line unchanged")
    if len(buggy) > 2 * _max_line_length(lines):
        raise SiteRejected("mutated line more than twice the longest original line")
    return MutationPlan(site.operator_index, (LineEdit(span, replacement),), (EditRecord(row + 1, original, buggy),))


def compose_multiple(
    root: Node,
    source: str,
    n: int,
    rng,
    pool: IdentifierPool,
    *,
    language: str | None = None,
    sites_by_op: dict[int, list[MutationSite]] | None = None,
) -> MutationPlan:
    """Combine ``n`` single-line bugs on ``n`` distinct lines."""
    if n not in (2, 3, 4):
        raise ValueError(f"multiple-bug arity must be 2, 3 or 4, got {n}")
    language = language or root.backend.language
    lines = split_lines(source)
    if sites_by_op is None:
        sites_by_op = {op.index: enumerate_sites(root, source, op, language) for op in single_line_operators()}
    available = {idx: list(sites) for idx, sites in sites_by_op.items() if sites}
    parts: list[MutationPlan] = []
    used: set[int] = set()
    while len(parts) < n:
        open_ops = sorted(idx for idx, sites in available.items() if any(s.line not in used for s in sites))
        if not open_ops:
            raise SiteRejected(f"fewer than {n} distinct-line sites")
        idx = open_ops[int(rng.integers(len(open_ops)))]
        candidates = [s for s in available[idx] if s.line not in used]
        site = candidates[int(rng.integers(len(candidates)))]
        try:
            plan = plan_mutation(site, source, pool, rng, lines=lines)
        except SiteRejected:
            available[idx].remove(site)
            continue
        parts.append(plan)
        used.add(site.line)
    edits = tuple(e for p in parts for e in p.edits)
    records = tuple(sorted((r for p in parts for r in p.records), key=lambda r: r.line))
    return MutationPlan(18 + n, edits, records)


def instance_id(repo: str, relative_path: str, subtype: int, locations, seed: int) -> str:
    material = json.dumps([repo, relative_path, int(subtype), list(locations), int(seed)])
    return hashlib.sha256(material.encode("utf-8")).hexdigest()[:16]


def count_tokens(root: Node) -> int:
    return sum(1 for _ in root.leaves())


def changed_lines(original: str, buggy: str) -> list[int]:
    a, b = split_lines(original), split_lines(buggy)
    if len(a) != len(b):
        raise ValueError("line counts differ")
    return [i + 1 for i, (x, y) in enumerate(zip(a, b)) if x != y]


def build_instance(file: SourceFile, plan: MutationPlan, seed: int, token_count: int) -> BugInstance:
    op = get_operator(plan.operator_index)
    buggy = plan.apply(file.content)
    if changed_lines(file.content, buggy) != plan.locations:
        raise SiteRejected("changed lines disagree with recorded locations")
    return BugInstance(
        id=instance_id(file.repo, file.relative_path, op.index, plan.locations, seed),
        repo=file.repo,
        relative_path=file.relative_path,
        language=file.language,
        subtype_index=op.index,
        subtype_name=op.name,
        category=op.category,
        locations=plan.locations,
        edits=list(plan.records),
        original_code=file.content,
        buggy_code=buggy,
        token_count=token_count,
        line_count=file.line_count,
    )


def inject_file(
    file: SourceFile,
    ops: list[OperatorSpec],
    quota: int = DEFAULT_QUOTA,
    seed: int = 0,
    *,
    skip_log: list[InjectionSkip] | None = None,
) -> list[BugInstance]:
    """Produce up to ``quota`` instances per operator for one file.

    Sites are drawn uniformly without replacement from a stream keyed by
    (seed, repo, path, operator), so output does not depend on call order.
    Each instance of a given operator sits on a distinct set of lines.
    """
    skips = skip_log if skip_log is not None else []
    if quota <= 0 or not file.content:
        return []
    root = parse(file.content, file.language)
    if root.has_error:
        skips.append(InjectionSkip(file.relative_path, None, "original file does not parse cleanly"))
        return []
    pool = collect_identifiers(root, file.content)
    lines = split_lines(file.content)
    tokens = count_tokens(root)
    site_cache: dict[int, list[MutationSite]] = {}

    def sites_for(op: OperatorSpec) -> list[MutationSite]:
        if op.index not in site_cache:
            site_cache[op.index] = enumerate_sites(root, file.content, op, file.language)
        return site_cache[op.index]

    out: list[BugInstance] = []
    for op in sorted(ops, key=lambda o: o.index):
        if not op.applies_to(file.language):
            continue
        rng = stream(seed, file.repo, file.relative_path, op.index)
        made: list[BugInstance] = []
        taken: set[tuple[int, ...]] = set()
        if op.is_multiple:
            singles = {s.index: sites_for(s) for s in single_line_operators() if s.applies_to(file.language)}
            attempts = 0
            while len(made) < quota and attempts < 4 * quota:
                attempts += 1
                try:
                    plan = compose_multiple(
                        root, file.content, op.arity, rng, pool, language=file.language, sites_by_op=singles
                    )
                except SiteRejected as exc:
                    skips.append(InjectionSkip(file.relative_path, op.index, exc.reason))
                    break
                key = tuple(plan.locations)
                if key in taken:
                    continue
                try:
                    made.append(build_instance(file, plan, seed, tokens))
                except SiteRejected as exc:
                    skips.append(InjectionSkip(file.relative_path, op.index, exc.reason))
                    continue
                taken.add(key)
        else:
            sites = sites_for(op)
            if file.focus_lines and op.category in ("Reference", "Logic"):
                inside = [s for s in sites if file.in_focus(s.line)]
                if inside:
                    sites = inside
            for i in rng.permutation(len(sites)):
                if len(made) >= quota:
                    break
                site = sites[int(i)]
                if (site.line,) in taken:
                    continue
                try:
                    plan = plan_mutation(site, file.content, pool, rng, lines=lines)
                    made.append(build_instance(file, plan, seed, tokens))
                except SiteRejected as exc:
                    skips.append(InjectionSkip(file.relative_path, op.index, exc.reason))
                    continue
                taken.add((site.line,))
        out.extend(made)
    return out
