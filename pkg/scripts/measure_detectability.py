"""How often does each subtype leave a parse error behind, per language?

Bugs that re-parse cleanly can only be found by reading the code, so this
is a rough difficulty profile of the injected corpus.

    python scripts/measure_detectability.py tests/fixtures/corpus --seeds 0 1 2
"""

import argparse
from collections import defaultdict

from bugforge.dataset import buggy_parses_with_errors
from bugforge.ingest import discover_files
from bugforge.languages import LANGUAGES
from bugforge.mutators.catalog import operators_for
from bugforge.mutators.inject import inject_file


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("sources", nargs="+")
    ap.add_argument("--seeds", type=int, nargs="+", default=[0])
    ap.add_argument("--quota", type=int, default=5)
    args = ap.parse_args()

    hits = defaultdict(lambda: [0, 0])
    files = [f for src in args.sources for f in discover_files(src)]
    for seed in args.seeds:
        for f in files:
            for inst in inject_file(f, operators_for(), args.quota, seed):
                cell = hits[(inst.subtype_index, inst.language)]
                cell[0] += buggy_parses_with_errors(inst)
                cell[1] += 1

    langs = [lang for lang in LANGUAGES if any(k[1] == lang for k in hits)]
    print("| subtype | " + " | ".join(langs) + " | all |")
    print("|---" * (len(langs) + 2) + "|")
    for idx in range(1, 23):
        row = [hits.get((idx, lang)) for lang in langs]
        cells = [f"{100 * c[0] / c[1]:.1f} ({c[1]})" if c else "-" for c in row]
        flagged = sum(c[0] for c in row if c)
        total = sum(c[1] for c in row if c)
        overall = f"{100 * flagged / total:.1f}" if total else "-"
        print(f"| {idx} | " + " | ".join(cells) + f" | {overall} |")


if __name__ == "__main__":
    main()
