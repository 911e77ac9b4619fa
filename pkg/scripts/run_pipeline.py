"""Inject -> prompt -> respond -> score -> report on a source tree, with synthetic responders.

    python scripts/run_pipeline.py tests/fixtures/corpus --out runs/demo --responder noisy
"""

import argparse
import json
import random
from pathlib import Path

from bugforge.cli import RunConfig, cmd_inject
from bugforge.dataset import dataset_stats, load_jsonl
from bugforge.evalkit import build_prompt, oracle_response, parse_response, score_instance
from bugforge.report import AXES, aggregate, render_table
from bugforge.syntax import split_lines


def noisy_response(inst, rng, p_type=0.6, p_line=0.7, p_fix=0.5):
    """Right subtype, lines and repairs each with some probability."""
    n_lines = inst.line_count
    subtype = inst.subtype_index if rng.random() < p_type else rng.randint(1, 22)
    lines = [k for k in inst.locations if rng.random() < p_line]
    if rng.random() < 0.3:
        lines.append(rng.randint(1, n_lines))
    original = split_lines(inst.original_code)
    repairs = {}
    for k in lines:
        if rng.random() < p_fix:
            repairs[str(k)] = original[k - 1]
    body = {"has_error": True, "type": subtype, "lines": lines, "repairs": repairs}
    return "```json\n" + json.dumps(body) + "\n```"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("sources", nargs="+")
    ap.add_argument("--out", default="runs/demo")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--quota", type=int, default=5)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--responder", choices=("perfect", "empty", "noisy"), default="noisy")
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    data = out / "dataset.jsonl"
    cfg = RunConfig(seed=args.seed, quota=args.quota, sources=args.sources, out=str(data), jobs=args.jobs)
    if cmd_inject(cfg) != 0:
        raise SystemExit("injection failed")
    instances = load_jsonl(data.open(encoding="utf-8"))
    print(dataset_stats(instances).render())

    rng = random.Random(args.seed)
    records = []
    for inst in instances:
        build_prompt(inst)
        if args.responder == "perfect":
            text = oracle_response(inst)
        elif args.responder == "empty":
            text = ""
        else:
            text = noisy_response(inst, rng)
        records.append(score_instance(inst, parse_response(text)))

    with (out / "records.jsonl").open("w", encoding="utf-8") as fh:
        for r in records:
            fh.write(json.dumps(r.to_dict()) + "\n")
    for axis in AXES:
        table = render_table(aggregate(records, instances, axis))
        (out / f"report.{axis}.md").write_text(table, encoding="utf-8")
        print(f"\n## {axis}\n{table}")


if __name__ == "__main__":
    main()
