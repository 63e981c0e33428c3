"""Counters, derived measurements, and timing helpers.

A tree with sink=None records nothing and pays nothing. Violation counting
is a full O(n) traversal by design; harnesses sample it at intervals instead
of maintaining it incrementally.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, asdict
from typing import Callable

from .core import NIL, Tree


class MetricsSink:
    """Rotation and node-touch counters shared by all tree variants.

    double_counts controls how a double rotation is booked: 2 (default)
    records both constituent rotations with each pivot's pre-rotation weight,
    inner pivot first; 1 records a single event carrying only the outer
    pivot's weight.
    """

    __slots__ = ("rotation_count", "rotated_weight_total", "touch_count",
                 "double_counts")

    def __init__(self, double_counts: int = 2):
        if double_counts not in (1, 2):
            raise ValueError("double_counts must be 1 or 2")
        self.rotation_count = 0
        self.rotated_weight_total = 0
        self.touch_count = 0
        self.double_counts = double_counts

    def record_single(self, pivot_weight: int):
        self.rotation_count += 1
        self.rotated_weight_total += pivot_weight

    def record_double(self, inner_weight: int, outer_weight: int):
        if self.double_counts == 2:
            self.rotation_count += 2
            self.rotated_weight_total += inner_weight + outer_weight
        else:
            self.rotation_count += 1
            self.rotated_weight_total += outer_weight

    def record_touches(self, n: int):
        self.touch_count += n

    def reset(self):
        self.rotation_count = 0
        self.rotated_weight_total = 0
        self.touch_count = 0


# Fixed CSV column order; every row carries its full configuration.
CSV_COLUMNS = [
    "experiment", "variant", "params", "dist", "universe", "zipf_s",
    "base_size", "op", "rep", "seed", "op_index", "ops",
    "elapsed_ns", "elapsed_ns_std", "rotation_count", "rotated_weight_total",
    "violation_count", "avg_depth", "normalized_elapsed",
]


@dataclass
class MetricsRecord:
    """One result row. Fields not meaningful for an experiment stay empty."""

    experiment: str
    variant: str
    params: str
    dist: str = ""
    universe: int = 0
    zipf_s: float = 0.0
    base_size: int = 0
    op: str = ""
    rep: int = 0
    seed: int = 0
    op_index: int = 0
    ops: int = 0
    elapsed_ns: float = 0.0
    elapsed_ns_std: float = 0.0
    rotation_count: int = 0
    rotated_weight_total: int = 0
    violation_count: int = -1
    avg_depth: float = -1.0
    normalized_elapsed: float = -1.0

    def to_row(self) -> list[str]:
        d = asdict(self)
        return [str(d[c]) for c in CSV_COLUMNS]


def count_violations(tree: Tree, params=None) -> int:
    """Number of nodes violating the balance inequalities. Full traversal."""
    p = params if params is not None else tree.params
    dn = p.dn
    dd = p.dd
    root = tree.root
    if root is NIL:
        return 0
    bad = 0
    stack = [root]
    pop = stack.pop
    push = stack.append
    while stack:
        v = pop()
        l = v.left
        r = v.right
        wl = l.weight
        wr = r.weight
        if wl * dn < wr * dd or wr * dn < wl * dd:
            bad += 1
        if l is not NIL:
            push(l)
        if r is not NIL:
            push(r)
    return bad


def average_depth(tree) -> float:
    """Mean node depth with the root at depth 0. Empty tree: 0.0.

    Works for any tree exposing root and a nil sentinel (the red-black
    baseline keeps a per-tree sentinel, so the shared NIL is not assumed).
    """
    nil = tree.nil
    root = tree.root
    if root is nil:
        return 0.0
    total = 0
    count = 0
    stack = [(root, 0)]
    pop = stack.pop
    push = stack.append
    while stack:
        v, d = pop()
        total += d
        count += 1
        if v.left is not nil:
            push((v.left, d + 1))
        if v.right is not nil:
            push((v.right, d + 1))
    return total / count


def max_depth(tree) -> int:
    """Deepest node's depth, root at 0. Empty tree: -1."""
    nil = tree.nil
    root = tree.root
    if root is nil:
        return -1
    deepest = 0
    stack = [(root, 0)]
    while stack:
        v, d = stack.pop()
        if d > deepest:
            deepest = d
        if v.left is not nil:
            stack.append((v.left, d + 1))
        if v.right is not nil:
            stack.append((v.right, d + 1))
    return deepest


def time_block(label: str, thunk: Callable[[], None]) -> int:
    """Run thunk once under the monotonic clock; returns elapsed nanoseconds."""
    t0 = time.perf_counter_ns()
    thunk()
    return time.perf_counter_ns() - t0


def summarize_ns(durations: list[int], ops: int) -> tuple[float, float]:
    """Per-op mean and population standard deviation across repetitions."""
    if not durations or ops <= 0:
        return 0.0, 0.0
    per_op = [d / ops for d in durations]
    mean = sum(per_op) / len(per_op)
    var = sum((x - mean) ** 2 for x in per_op) / len(per_op)
    return mean, math.sqrt(var)
