from collections import Counter

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bugforge.ingest import SourceFile, count_lines
from bugforge.languages import LANGUAGES
from bugforge.mutators.catalog import CATEGORIES, default_catalog, get_operator, operators_for, parse_catalog
from bugforge.mutators.identifiers import collect_identifiers
from bugforge.mutators.inject import (
    InjectionSkip,
    changed_lines,
    compose_multiple,
    enumerate_sites,
    inject_file,
    instance_id,
    plan_mutation,
)
from bugforge.mutators.plan import EditRecord, SiteRejected
from bugforge.syntax import get_backend, parse, split_lines

SUBTYPES = [
    (1, "Syntax", "misuse equal sign1"),
    (2, "Syntax", "misuse equal sign2"),
    (3, "Syntax", "open parenthesis"),
    (4, "Syntax", "open bracket"),
    (5, "Syntax", "open brace"),
    (6, "Syntax", "missing colon"),
    (7, "Syntax", "missing comma"),
    (8, "Syntax", "missing semicolon"),
    (9, "Syntax", "invalid annotation"),
    (10, "Reference", "wrong return statement"),
    (11, "Reference", "wrong import statement"),
    (12, "Reference", "wrong class call"),
    (13, "Reference", "wrong function call"),
    (14, "Reference", "wrong parameters"),
    (15, "Logic", "divide-by-zero"),
    (16, "Logic", "opposite binary operator"),
    (17, "Logic", "missing operand"),
    (18, "Logic", "opposite condition"),
    (19, "Logic", "constant condition"),
    (20, "Multiple", "double bugs"),
    (21, "Multiple", "triple bugs"),
    (22, "Multiple", "quadruple bugs"),
]


def test_catalog_matches_subtype_table():
    assert [(op.index, op.category, op.name) for op in default_catalog()] == SUBTYPES
    assert sum(op.category == "Syntax" for op in default_catalog()) == 9
    assert [op.arity for op in default_catalog()][-3:] == [2, 3, 4]
    assert {op.category for op in default_catalog()} == set(CATEGORIES)


def test_catalog_rejects_gaps_and_bad_entries():
    entries = [op.to_dict() for op in default_catalog()]
    with pytest.raises(ValueError):
        parse_catalog(entries[:3] + entries[4:])
    bad = dict(entries[0], arity=2)
    with pytest.raises(ValueError):
        parse_catalog([bad] + entries[1:])
    with pytest.raises(KeyError):
        get_operator(23)


@pytest.mark.parametrize("language", LANGUAGES)
def test_every_applicable_query_compiles(language):
    backend = get_backend(language)
    for op in default_catalog():
        if op.is_multiple or not op.applies_to(language):
            continue
        backend.compile(op.site_query(language))


def test_every_single_line_subtype_fires_somewhere(corpus_instances):
    seen = Counter(i.subtype_index for i in corpus_instances)
    assert set(seen) == set(range(1, 23))


def test_every_language_produces_most_subtypes(corpus_instances):
    by_lang = {}
    for i in corpus_instances:
        by_lang.setdefault(i.language, set()).add(i.subtype_index)
    assert set(by_lang) == set(LANGUAGES)
    for lang, subtypes in by_lang.items():
        assert len(subtypes) >= 16, (lang, sorted(subtypes))


def test_corpus_instances_are_consistent(corpus_instances):
    per_file = Counter((i.repo, i.relative_path, i.subtype_index) for i in corpus_instances)
    assert max(per_file.values()) <= 5
    ids = [i.id for i in corpus_instances]
    assert len(ids) == len(set(ids))
    for inst in corpus_instances:
        assert changed_lines(inst.original_code, inst.buggy_code) == inst.locations
        assert len(inst.locations) == get_operator(inst.subtype_index).arity
        assert count_lines(inst.buggy_code) == inst.line_count


def test_types_fixture_sites(types_file):
    root = parse(types_file.content, "Python")
    sites = enumerate_sites(root, types_file.content, get_operator(13), "Python")
    assert [s.line for s in sites] == [3, 7, 16, 20, 24]


def test_plan_rejects_unchanged_line(types_file):
    root = parse(types_file.content, "Python")
    site = enumerate_sites(root, types_file.content, get_operator(13), "Python")[0]
    pool = collect_identifiers(root).restricted(["NewType"])
    with pytest.raises(SiteRejected):
        plan_mutation(site, types_file.content, pool, np.random.default_rng(0))


def make(src, path="m.py", lang="Python", focus=None):
    return SourceFile("repo", path, lang, src, count_lines(src), focus)


SNIPPET = """\
def area(width, height):
    if width > 0 and height > 0:
        return width * height
    return 0


def scale(values, factor):
    out = [v * factor for v in values]
    total = sum(out) + len(out)
    if total == 0 or factor < 1:
        print("empty", total)
    return out
"""


def test_broken_original_is_skipped():
    skips: list[InjectionSkip] = []
    assert inject_file(make("def f(:\n  pass\n"), operators_for(), 5, 0, skip_log=skips) == []
    assert skips and skips[0].operator_index is None


def test_quota_and_distinct_lines():
    insts = inject_file(make(SNIPPET), operators_for(), 2, 3)
    per_op = Counter(i.subtype_index for i in insts)
    assert max(per_op.values()) <= 2
    seen = {}
    for i in insts:
        key = tuple(i.locations)
        assert key not in seen.setdefault(i.subtype_index, set())
        seen[i.subtype_index].add(key)


def test_focus_lines_steer_logic_sites():
    insts = inject_file(make(SNIPPET, focus=((10, 10),)), operators_for([18, 19]), 1, 0)
    assert insts and all(i.locations == [10] for i in insts)


def test_compose_multiple_uses_distinct_lines():
    root = parse(SNIPPET, "Python")
    pool = collect_identifiers(root)
    plan = compose_multiple(root, SNIPPET, 4, np.random.default_rng(5), pool, language="Python")
    assert plan.operator_index == 22
    assert len(set(plan.locations)) == 4
    assert changed_lines(SNIPPET, plan.apply(SNIPPET)) == plan.locations
    with pytest.raises(ValueError):
        compose_multiple(root, SNIPPET, 5, np.random.default_rng(5), pool)


def test_compose_multiple_fails_on_tiny_file():
    src = "x = 1\n"
    root = parse(src, "Python")
    with pytest.raises(SiteRejected):
        compose_multiple(root, src, 2, np.random.default_rng(0), collect_identifiers(root), language="Python")


def test_instance_id_is_stable():
    a = instance_id("r", "p.py", 13, [3], 0)
    assert a == instance_id("r", "p.py", 13, [3], 0)
    assert len(a) == 16
    assert a != instance_id("r", "p.py", 13, [3], 1)


def test_edit_record_validation():
    with pytest.raises(ValueError):
        EditRecord(0, "a", "b")
    with pytest.raises(ValueError):
        EditRecord(1, "a", "a")
    with pytest.raises(ValueError):
        EditRecord(1, "a\n", "b")


@given(st.integers(0, 2**63 - 1), st.sampled_from([1, 2, 3, 5]))
def test_injection_is_deterministic_and_well_formed(seed, quota):
    file = make(SNIPPET)
    first = inject_file(file, operators_for(), quota, seed)
    second = inject_file(file, operators_for(), quota, seed)
    assert [i.to_dict() for i in first] == [i.to_dict() for i in second]
    for inst in first:
        assert changed_lines(inst.original_code, inst.buggy_code) == inst.locations
        assert len(split_lines(inst.buggy_code)) == len(split_lines(inst.original_code))
        for e in inst.edits:
            assert split_lines(inst.original_code)[e.line - 1] == e.original_line


def test_operator_order_does_not_change_output():
    file = make(SNIPPET)
    forward = inject_file(file, operators_for(), 3, 11)
    backward = inject_file(file, list(reversed(operators_for())), 3, 11)
    assert [i.id for i in forward] == [i.id for i in backward]
