import math

import pytest

from wbtree.bottom_up import BottomUpTree
from wbtree.metrics import (
    CSV_COLUMNS,
    MetricsRecord,
    MetricsSink,
    average_depth,
    count_violations,
    max_depth,
    summarize_ns,
    time_block,
)
from wbtree.params import PARAM_SETS, make_params
from wbtree.redblack import RedBlackTree
from wbtree.top_down import TopDownTree

from test_core import tree_of


def test_sink_single_accumulates():
    s = MetricsSink()
    s.record_single(5)
    s.record_single(2)
    assert s.rotation_count == 2
    assert s.rotated_weight_total == 7


def test_sink_double_counts_two_by_default():
    s = MetricsSink()
    s.record_double(3, 8)
    assert s.rotation_count == 2
    assert s.rotated_weight_total == 11


def test_sink_double_counts_one_when_asked():
    s = MetricsSink(double_counts=1)
    s.record_double(3, 8)
    assert s.rotation_count == 1
    assert s.rotated_weight_total == 8  # only the outer pivot is booked


def test_sink_rejects_other_double_policies():
    with pytest.raises(ValueError):
        MetricsSink(double_counts=3)


def test_sink_reset_clears_everything():
    s = MetricsSink()
    s.record_single(4)
    s.record_touches(9)
    s.reset()
    assert (s.rotation_count, s.rotated_weight_total, s.touch_count) == (0, 0, 0)


def test_count_violations_on_broken_shape():
    # A left chain of five nodes: the top two both violate delta = 3.
    t = tree_of((5, (4, (3, (2, (1, None, None), None), None), None), None))
    assert count_violations(t) == 2
    assert count_violations(t, make_params(4, 2)) == 1


def test_count_violations_zero_on_balanced():
    t = tree_of((2, (1, None, None), (3, None, None)))
    assert count_violations(t) == 0
    t2 = BottomUpTree(PARAM_SETS["classic"])
    for k in range(100):
        t2.insert(k)
    assert count_violations(t2) == 0


def test_average_depth_examples():
    t = tree_of((2, (1, None, None), (3, None, None)))
    assert average_depth(t) == pytest.approx(2 / 3)
    chain = tree_of((1, None, (2, None, (3, None, None))))
    assert average_depth(chain) == pytest.approx(1.0)
    assert average_depth(tree_of(None)) == 0.0


def test_average_depth_uses_per_tree_sentinel():
    rb = RedBlackTree()
    for k in [2, 1, 3]:
        rb.insert(k)
    assert average_depth(rb) == pytest.approx(2 / 3)


def test_max_depth():
    assert max_depth(tree_of(None)) == -1
    assert max_depth(tree_of((1, None, None))) == 0
    assert max_depth(tree_of((1, None, (2, None, (3, None, None))))) == 2


def test_time_block_measures_something():
    ns = time_block("noop", lambda: sum(range(1000)))
    assert ns > 0


def test_summarize_ns():
    mean, std = summarize_ns([100, 200], 10)
    assert mean == pytest.approx(15.0)
    assert std == pytest.approx(5.0)
    assert summarize_ns([], 10) == (0.0, 0.0)
    assert summarize_ns([100], 0) == (0.0, 0.0)


def test_summarize_ns_std_is_population():
    vals = [10, 20, 30, 40]
    mean, std = summarize_ns(vals, 1)
    expect = math.sqrt(sum((v - 25) ** 2 for v in vals) / 4)
    assert std == pytest.approx(expect)


def test_record_round_trips_through_columns():
    rec = MetricsRecord(experiment="insert-pct", variant="top_down/classic",
                        params="classic", seed=3, ops=50, elapsed_ns=12.5)
    row = rec.to_row()
    assert len(row) == len(CSV_COLUMNS)
    assert row[CSV_COLUMNS.index("experiment")] == "insert-pct"
    assert row[CSV_COLUMNS.index("seed")] == "3"
    assert row[CSV_COLUMNS.index("violation_count")] == "-1"
    assert row[CSV_COLUMNS.index("avg_depth")] == "-1.0"


def test_columns_are_stable():
    # The CSV schema is part of the tool's interface; reordering breaks
    # downstream parsing.
    assert CSV_COLUMNS[:4] == ["experiment", "variant", "params", "dist"]
    assert CSV_COLUMNS[-1] == "normalized_elapsed"


def test_touch_counting_through_trees():
    s = MetricsSink()
    t = TopDownTree(PARAM_SETS["topdown"], sink=s)
    for k in range(20):
        t.insert(k)
    assert s.touch_count >= 20
