import csv
import io
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bugforge.evalkit import score_instance
from bugforge.evalkit.metrics import MetricRecord
from bugforge.report import AXES, AggregateRow, aggregate, merge_rows, render_table, token_bucket
from oracles import pairs

PAIRS = pairs(120, seed=3)
INSTANCES = [t for t, _ in PAIRS]
RECORDS = [score_instance(t, r) for t, r in PAIRS]


def test_two_record_mean():
    a, b = INSTANCES[0], INSTANCES[1]
    recs = [MetricRecord(a.id, 1, 1, 1, 1.0, 1.0), MetricRecord(b.id, 0, 0, 0, 0.0, 0.0)]
    (row,) = aggregate(recs, [a, b], "all")
    assert row.n == 2 and row.es == 50.0 and row.bi == 50.0


@pytest.mark.parametrize(
    "count,label", [(0, "<500"), (499, "<500"), (500, "<1000"), (9999, "<10000"), (10000, ">=10000")]
)
def test_bucket_edges(count, label):
    assert token_bucket(count) == [label]


def test_cumulative_buckets():
    assert token_bucket(700, cumulative=True) == ["<1000", "<2000", "<5000", "<10000"]
    assert token_bucket(20000, cumulative=True) == [">=10000"]


@pytest.mark.parametrize("axis", AXES)
def test_grand_mean_is_weighted_mean_of_groups(axis):
    (grand,) = aggregate(RECORDS, INSTANCES, "all")
    rows = aggregate(RECORDS, INSTANCES, axis)
    assert sum(r.n for r in rows) == grand.n
    for m in ("bi", "obl", "abl", "es", "em"):
        weighted = sum(getattr(r, m) * r.n for r in rows) / grand.n
        assert weighted == pytest.approx(getattr(grand, m), abs=1e-9)
    for r in rows:
        assert r.obl >= r.abl


def test_rows_are_sorted():
    keys = [r.group_key for r in aggregate(RECORDS, INSTANCES, "token_bucket")]
    order = ["<500", "<1000", "<2000", "<5000", "<10000", ">=10000"]
    assert keys == [k for k in order if k in keys]
    subtypes = [int(r.group_key) for r in aggregate(RECORDS, INSTANCES, "subtype")]
    assert subtypes == sorted(subtypes)
    assert [r.group_key for r in aggregate(RECORDS, INSTANCES, "error_count")] == ["1", "2", "3", "4"]


def test_unknown_id_raises():
    with pytest.raises(KeyError, match="nope"):
        aggregate([MetricRecord("nope", 0, 0, 0, 0.0, 0.0)], INSTANCES, "language")
    with pytest.raises(ValueError):
        aggregate(RECORDS, INSTANCES, "colour")


@given(st.randoms(use_true_random=False))
def test_permutation_invariance(rnd):
    shuffled = list(RECORDS)
    rnd.shuffle(shuffled)
    for a, b in zip(aggregate(RECORDS, INSTANCES, "subtype"), aggregate(shuffled, INSTANCES, "subtype")):
        assert a.group_key == b.group_key and a.n == b.n
        assert a.es == pytest.approx(b.es, abs=1e-9)


@given(st.integers(1, 6), st.integers(0, 1000))
def test_shard_merge_equals_whole(n_shards, seed):
    recs = list(RECORDS)
    random.Random(seed).shuffle(recs)
    shards = [recs[i::n_shards] for i in range(n_shards)]
    merged = {r.group_key: r for r in merge_rows([aggregate(s, INSTANCES, "language") for s in shards if s])}
    whole = aggregate(RECORDS, INSTANCES, "language")
    for row in whole:
        m = merged[row.group_key]
        assert m.n == row.n
        for k in ("bi", "obl", "abl", "es", "em"):
            assert getattr(m, k) == pytest.approx(getattr(row, k), abs=1e-9)


def test_render_markdown_and_csv():
    row = AggregateRow("Python", 3, 100.0, 66.666666, 33.3333, 12.345, 0.0)
    md = render_table([row], "markdown").splitlines()
    assert len(md) == 3 and "| Python | 3 | 100.00 | 66.67 | 33.33 | 12.35 | 0.00 |" in md[2]
    assert len(render_table([], "markdown").splitlines()) == 2
    parsed = list(csv.reader(io.StringIO(render_table([row], "csv"))))
    assert parsed[0][0] == "group" and parsed[1][:3] == ["Python", "3", "100.00"]
    assert len(list(csv.reader(io.StringIO(render_table([], "csv"))))) == 1
    with pytest.raises(ValueError):
        render_table([row], "html")


def test_row_bounds():
    with pytest.raises(ValueError):
        AggregateRow("x", 0, 0, 0, 0, 0, 0)
    with pytest.raises(ValueError):
        AggregateRow("x", 1, 101, 0, 0, 0, 0)


def test_pass1_mean_ignores_absent():
    a, b = INSTANCES[:2]
    recs = [MetricRecord(a.id, 0, 0, 0, 0.0, 0.0, 1), MetricRecord(b.id, 0, 0, 0, 0.0, 0.0, None)]
    (row,) = aggregate(recs, INSTANCES, "all")
    assert row.pass1 == 100.0 and row.pass1_n == 1
