"""Command-line entry point: inject, validate, stats, prompt, score, report."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .dataset import BugInstance, DatasetError, dataset_stats, emit_jsonl, load_jsonl, validate_instance
from .evalkit import CommandOracle, build_prompt, parse_response, register_oracle, score_instance
from .evalkit.metrics import MetricRecord
from .ingest import (
    FilterPolicy,
    ManifestError,
    SkipRecord,
    SourceLoadError,
    discover_files,
    load_focus_sidecar,
    load_manifest,
    validate_manifest,
)
from .languages import LANGUAGES, check_language
from .mutators.catalog import operators_for
from .mutators.inject import DEFAULT_QUOTA, InjectionSkip, inject_file
from .report import AXES, aggregate, render_table

log = logging.getLogger("bugforge")

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    seed: int = 0
    quota: int = DEFAULT_QUOTA
    languages: tuple[str, ...] = LANGUAGES
    operators: tuple[int, ...] = tuple(range(1, 23))
    sources: list[str] = field(default_factory=list)
    manifests: list[str] = field(default_factory=list)
    focus: str | None = None
    out: str = "-"
    jobs: int = 1

    def __post_init__(self):
        if self.quota < 1:
            raise UsageError("quota must be at least 1")
        bad = [i for i in self.operators if not 1 <= i <= 22]
        if bad:
            raise UsageError(f"operator indices must be in 1..22, got {bad}")
        for lang in self.languages:
            check_language(lang)
        if not -(2**63) <= self.seed < 2**64:
            raise UsageError("seed must fit in 64 bits")


def _op_index(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 1 <= value <= 22:
        raise argparse.ArgumentTypeError(f"operator index {value} outside 1..22")
    return value


def _language(text: str) -> str:
    for lang in LANGUAGES:
        if text.lower() == lang.lower():
            return lang
    raise argparse.ArgumentTypeError(f"unknown language {text!r}; choose from {', '.join(LANGUAGES)}")


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _seed_default() -> int:
    raw = os.environ.get("FORGE_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"FORGE_SEED is not an integer: {raw!r}") from None


def _open_out(path: str):
    if path == "-":
        return sys.stdout, False
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    return open(path, "w", encoding="utf-8", newline="\n"), True


def _inject_one(args):
    file, op_indices, quota, seed = args
    skips: list[InjectionSkip] = []
    insts = inject_file(file, operators_for(op_indices), quota, seed, skip_log=skips)
    return insts, skips


def collect_sources(cfg: RunConfig, skips: list[SkipRecord]):
    policy = FilterPolicy(languages=frozenset(cfg.languages))
    focus = load_focus_sidecar(cfg.focus) if cfg.focus else None
    files = []
    for mpath in cfg.manifests:
        manifest = load_manifest(mpath)
        verdict = validate_manifest(manifest, policy)
        if not verdict.passed:
            skips.append(SkipRecord(manifest.name, f"manifest rejected: {', '.join(verdict.failures())}"))
            continue
        files += discover_files(manifest.root, policy, repo=manifest.name, focus=focus, skip_log=skips)
    for src in cfg.sources:
        files += discover_files(src, policy, focus=focus, skip_log=skips)
    files.sort(key=lambda f: (f.repo, f.relative_path))
    return files


def cmd_inject(cfg: RunConfig, *, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    skips: list[SkipRecord] = []
    try:
        files = collect_sources(cfg, skips)
    except (SourceLoadError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_IO
    except (ManifestError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_VALIDATION
    jobs = [(f, cfg.operators, cfg.quota, cfg.seed) for f in files]
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_inject_one, jobs, chunksize=1))
    else:
        results = [_inject_one(j) for j in jobs]
    instances: list[BugInstance] = [i for insts, _ in results for i in insts]
    inject_skips = [s for _, ss in results for s in ss]
    try:
        sink, close = _open_out(cfg.out)
        try:
            emit_jsonl(instances, sink)
        finally:
            if close:
                sink.close()
    except OSError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_IO
    report = stderr if cfg.out == "-" else stdout
    print(f"{len(instances)} instances from {len(files)} files", file=report)
    by_lang = Counter(i.language for i in instances)
    for lang in LANGUAGES:
        if by_lang[lang]:
            print(f"  language {lang}: {by_lang[lang]}", file=report)
    by_sub = Counter(i.subtype_index for i in instances)
    for idx in sorted(by_sub):
        print(f"  subtype {idx}: {by_sub[idx]}", file=report)
    for s in skips:
        print(f"  skipped {s.path}: {s.reason}", file=report)
    parse_skips = sorted({s.relative_path for s in inject_skips if s.operator_index is None})
    for path in parse_skips:
        print(f"  skipped {path}: original file does not parse cleanly", file=report)
    return EXIT_OK


def _read_dataset(path: str) -> list[BugInstance]:
    with open(path, encoding="utf-8") as fh:
        return load_jsonl(fh)


def cmd_validate(path: str, *, stdout=None) -> int:
    stdout = stdout or sys.stdout
    instances = _read_dataset(path)
    failed = 0
    parse_flagged = 0
    for inst in instances:
        outcome = validate_instance(inst)
        if outcome.adverse_effect.detail != "parses cleanly":
            parse_flagged += 1
        if not outcome.passed:
            failed += 1
            for check in (outcome.completeness, outcome.subtype_match):
                if not check.passed:
                    print(f"{inst.id}: {check.name} failed: {check.detail}", file=stdout)
    n = len(instances)
    rate = 100.0 * parse_flagged / n if n else 0.0
    print(f"{n - failed}/{n} instances pass; {parse_flagged} ({rate:.2f}%) re-parse with errors", file=stdout)
    return EXIT_VALIDATION if failed else EXIT_OK


def cmd_stats(path: str, *, stdout=None) -> int:
    stdout = stdout or sys.stdout
    stdout.write(dataset_stats(_read_dataset(path)).render())
    return EXIT_OK


def cmd_prompt(path: str, out_dir: str, *, stdout=None) -> int:
    stdout = stdout or sys.stdout
    instances = _read_dataset(path)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for inst in instances:
        bundle = build_prompt(inst)
        (out / f"{inst.id}.txt").write_text(bundle.prompt_text, encoding="utf-8")
    print(f"wrote {len(instances)} prompts to {out}", file=stdout)
    return EXIT_OK


def _response_index(responses_dir: str) -> dict[str, Path]:
    d = Path(responses_dir)
    if not d.is_dir():
        raise FileNotFoundError(f"{d}: not a directory")
    index = {}
    for p in sorted(d.iterdir()):
        if p.is_file():
            index.setdefault(p.name.split(".", 1)[0], p)
    return index


def cmd_score(path: str, responses_dir: str, out: str, *, stdout=None) -> int:
    stdout = stdout or sys.stdout
    instances = _read_dataset(path)
    index = _response_index(responses_dir)
    missing = 0
    records = []
    for inst in instances:
        p = index.get(inst.id)
        if p is None:
            missing += 1
            text = ""
        else:
            text = p.read_text(encoding="utf-8", errors="replace")
        records.append(score_instance(inst, parse_response(text)))
    sink, close = _open_out(out)
    try:
        for r in records:
            sink.write(json.dumps(r.to_dict()) + "\n")
    finally:
        if close:
            sink.close()
    failures = sum(1 for r in records if r.parse_failed)
    msg = f"scored {len(records)} instances; {missing} without a response; {failures} parse failures"
    print(msg, file=sys.stderr if out == "-" else stdout)
    return EXIT_OK


def load_records(path: str) -> list[MetricRecord]:
    with open(path, encoding="utf-8") as fh:
        return [MetricRecord.from_dict(json.loads(line)) for line in fh if line.strip()]


def cmd_report(records_path: str, dataset_path: str, axes, out_dir: str, *, fmt="markdown",
               cumulative=False, stdout=None) -> int:
    stdout = stdout or sys.stdout
    records = load_records(records_path)
    instances = _read_dataset(dataset_path)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for axis in axes:
        rows = aggregate(records, instances, axis, cumulative=cumulative)
        md, csv_text = render_table(rows, "markdown"), render_table(rows, "csv")
        (out / f"report.{axis}.md").write_text(md, encoding="utf-8")
        (out / f"report.{axis}.csv").write_text(csv_text, encoding="utf-8")
        stdout.write(f"\n## {axis}\n")
        stdout.write(md if fmt == "markdown" else csv_text)
    return EXIT_OK


def build_parser() -> _Parser:
    p = _Parser(prog="bugforge", description="Inject bugs into source corpora and score debugging answers.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    inj = sub.add_parser("inject", help="discover sources, inject bugs, write JSONL")
    inj.add_argument("sources", nargs="*", help="source directories; each is treated as one repository")
    inj.add_argument("--manifest", action="append", default=[], help="repository manifest JSON (repeatable)")
    inj.add_argument("--out", default="-", help="output JSONL path (default stdout)")
    inj.add_argument("--seed", type=int, default=None, help="RNG seed (falls back to FORGE_SEED, then 0)")
    inj.add_argument("--quota", type=_positive, default=DEFAULT_QUOTA, help="instances per subtype per file")
    inj.add_argument("--lang", type=_language, action="append", help="restrict to a language (repeatable)")
    inj.add_argument("--op", type=_op_index, action="append", help="restrict to a subtype index (repeatable)")
    inj.add_argument("--focus", help="JSON sidecar mapping relative paths to [[lo, hi], ...] line ranges")
    inj.add_argument("--jobs", type=_positive, default=1, help="worker processes")

    val = sub.add_parser("validate", help="check every instance in a dataset")
    val.add_argument("dataset")

    st = sub.add_parser("stats", help="per-language and per-category statistics")
    st.add_argument("dataset")

    pr = sub.add_parser("prompt", help="write one prompt file per instance")
    pr.add_argument("dataset")
    pr.add_argument("--out", required=True, help="output directory")

    sc = sub.add_parser("score", help="parse responses and write metric records")
    sc.add_argument("dataset")
    sc.add_argument("--responses", required=True, help="directory of <instance id>.* response files")
    sc.add_argument("--out", default="-", help="metric records JSONL path (default stdout)")
    sc.add_argument("--oracle", action="append", default=[], metavar="LANG=COMMAND",
                    help="execution oracle for Pass@1; the patched file path is appended to COMMAND")

    rp = sub.add_parser("report", help="aggregate metric records into tables")
    rp.add_argument("records")
    rp.add_argument("--dataset", required=True)
    rp.add_argument("--axis", action="append", choices=AXES, help="grouping axis (repeatable; default all)")
    rp.add_argument("--out", default=".", help="directory for report.<axis>.md/csv")
    rp.add_argument("--format", choices=("markdown", "csv"), default="markdown", help="format echoed to stdout")
    rp.add_argument("--cumulative", action="store_true", help="cumulative token buckets")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if args.command == "inject":
            if not args.sources and not args.manifest:
                raise UsageError("give at least one source directory or --manifest")
            cfg = RunConfig(
                seed=args.seed if args.seed is not None else _seed_default(),
                quota=args.quota,
                languages=tuple(args.lang) if args.lang else LANGUAGES,
                operators=tuple(sorted(set(args.op))) if args.op else tuple(range(1, 23)),
                sources=list(args.sources),
                manifests=list(args.manifest),
                focus=args.focus,
                out=args.out,
                jobs=args.jobs,
            )
            return cmd_inject(cfg)
        if args.command == "validate":
            return cmd_validate(args.dataset)
        if args.command == "stats":
            return cmd_stats(args.dataset)
        if args.command == "prompt":
            return cmd_prompt(args.dataset, args.out)
        if args.command == "score":
            for spec in args.oracle:
                lang, sep, command = spec.partition("=")
                if not sep or not command:
                    raise UsageError(f"--oracle expects LANG=COMMAND, got {spec!r}")
                register_oracle(_language(lang), CommandOracle(command))
            return cmd_score(args.dataset, args.responses, args.out)
        if args.command == "report":
            axes = args.axis or [a for a in AXES]
            return cmd_report(args.records, args.dataset, axes, args.out, fmt=args.format, cumulative=args.cumulative)
    except (UsageError, argparse.ArgumentTypeError) as exc:
        print(f"bugforge: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DatasetError as exc:
        print(f"bugforge: invalid dataset: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except KeyError as exc:
        print(f"bugforge: {exc.args[0]}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"bugforge: {exc}", file=sys.stderr)
        return EXIT_IO
    parser.error(f"unknown command {args.command!r}")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
