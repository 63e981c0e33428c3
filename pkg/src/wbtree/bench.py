"""Experiment harness behind the wbtree-bench command.

Each experiment builds base trees from a seeded key distribution, runs a
mutation phase per (variant, size, base-tree) cell, and emits one result
row per cell (or per sample point, for the over-time experiments). All
randomness is derived from the master seed plus the cell coordinates, so
every variant sees the same keys, the same victims, and the same churn
order; two runs with the same seed produce the same tree shapes.

Timed phases repeat on a fresh clone of the base snapshot until the time
floor is met, and report the per-op mean and standard deviation across
repetitions. Cells always run sequentially in a fixed order: rows are
deterministic, and one interpreter lock means thread workers would only
add timing noise (--serial is accepted and is also the default reality).
"""

from __future__ import annotations

import csv
import gc
import io
import json
import sys
import time
from dataclasses import dataclass, field

from .bottom_up import BottomUpTree
from .core import structure_string
from .keygen import (
    STREAM_BASE,
    STREAM_CHURN,
    STREAM_FRESH,
    STREAM_VICTIM,
    SplitMix64,
    derive_seed,
    fresh_keys,
    generate,
)
from .metrics import (
    CSV_COLUMNS,
    MetricsRecord,
    MetricsSink,
    average_depth,
    count_violations,
    summarize_ns,
)
from .oracle import audit_balance, audit_structure
from .params import BalanceParams, classify_feasibility, param_set_name, params_from_name
from .redblack import RedBlackTree
from .redblack import audit as rb_audit
from .top_down import TopDownTree

EXPERIMENTS = ("insert-pct", "erase-pct", "depth-churn", "violations",
               "rotations", "replay")
DISTS = ("uniform", "zipf", "skewed", "presorted")
SCHEMES = ("bottom_up", "top_down", "redblack")

REPLAY_REPS = 10

# Default key universes per distribution; presorted always uses n.
ZIPF_UNIVERSE = 10 ** 6
WIDE_UNIVERSE = 2 ** 60


class AuditFailure(RuntimeError):
    """Raised when --audit finds a defect; maps to exit code 2."""


class VariantSpec:
    """One tree configuration: a scheme plus (for the WBTs) its parameters."""

    __slots__ = ("scheme", "params")

    def __init__(self, scheme: str, params: BalanceParams | None):
        if scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {scheme!r}")
        if (params is None) != (scheme == "redblack"):
            raise ValueError("params go with the weight-balanced schemes only")
        self.scheme = scheme
        self.params = params

    @property
    def params_name(self) -> str:
        return "" if self.params is None else param_set_name(self.params)

    @property
    def label(self) -> str:
        if self.params is None:
            return "redblack"
        return f"{self.scheme}/{self.params_name}"

    def make_tree(self, sink=None):
        if self.scheme == "bottom_up":
            return BottomUpTree(self.params, sink=sink)
        if self.scheme == "top_down":
            return TopDownTree(self.params, sink=sink)
        return RedBlackTree(sink=sink)

    def balance_guaranteed(self) -> bool:
        """True when this scheme/parameter pairing has a soundness claim."""
        if self.scheme == "redblack":
            return True
        f = classify_feasibility(self.params)
        return f.bottom_up_feasible if self.scheme == "bottom_up" \
            else f.top_down_feasible

    def __repr__(self):
        return f"VariantSpec({self.label})"


def expand_variants(schemes: list[str], param_names: list[str]) -> list[VariantSpec]:
    """Cross schemes with parameter sets; redblack ignores the params list."""
    out = []
    for s in schemes:
        if s == "redblack":
            out.append(VariantSpec("redblack", None))
        elif s in ("bottom_up", "top_down"):
            if not param_names:
                raise ValueError(f"{s} needs at least one parameter set")
            out.extend(VariantSpec(s, params_from_name(p)) for p in param_names)
        else:
            raise ValueError(f"unknown variant {s!r}")
    return out


@dataclass
class ExperimentSpec:
    experiment: str
    variants: list[VariantSpec]
    dist: str = "uniform"
    sizes: list[int] = field(default_factory=lambda: [1000])
    base_trees: int = 10
    seed: int = 1
    time_floor_ms: int = 1000
    sample_interval: int = 10000
    zipf_s: float = 1.0
    universe: int | None = None    # None: distribution default
    op_pairs: int | None = None    # None: 2 * size
    audit: bool = False
    double_counts_as: int = 2

    def check(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}")
        if self.dist not in DISTS:
            raise ValueError(f"unknown distribution {self.dist!r}")
        if not self.variants:
            raise ValueError("no variants selected")
        if self.base_trees < 1:
            raise ValueError("base-trees must be >= 1")
        if not self.sizes or any(n <= 0 for n in self.sizes):
            raise ValueError("sizes must be strictly positive")
        if self.sample_interval < 1:
            raise ValueError("sample-interval must be >= 1")
        if self.time_floor_ms < 0:
            raise ValueError("time-floor-ms must be >= 0")
        if self.double_counts_as not in (1, 2):
            raise ValueError("double-counts-as must be 1 or 2")

    def universe_for(self, size: int) -> int:
        if self.dist == "presorted":
            return size
        if self.universe is not None:
            return self.universe
        return ZIPF_UNIVERSE if self.dist == "zipf" else WIDE_UNIVERSE


@dataclass
class RunResult:
    """Rows for emission plus final tree shapes keyed by cell, for
    determinism checks; timings live only in the rows."""

    rows: list[MetricsRecord]
    shapes: dict[tuple, str]


def tree_shape(tree) -> str:
    if isinstance(tree, RedBlackTree):
        return tree.dump().split("\n", 1)[1]
    return structure_string(tree)


def _base_keys(spec: ExperimentSpec, size: int, tree_idx: int) -> list[int]:
    seed = derive_seed(spec.seed, size, tree_idx, STREAM_BASE)
    return generate(spec.dist, size, spec.universe_for(size), seed,
                    spec.zipf_s).keys


def _build(vs: VariantSpec, keys: list[int]):
    t = vs.make_tree(sink=None)
    insert = t.insert
    for k in keys:
        insert(k)
    return t


def _audit_cell(vs: VariantSpec, tree, spec: ExperimentSpec, where: str):
    if not spec.audit:
        return
    if vs.scheme == "redblack":
        problems = rb_audit(tree)
    else:
        problems = audit_structure(tree)
        if vs.balance_guaranteed():
            problems = problems + audit_balance(tree)
    if problems:
        raise AuditFailure(f"{vs.label} {where}: " + "; ".join(problems[:4]))


def _timed_reps(spec: ExperimentSpec, base_tree, phase):
    """Clone, run phase, repeat until the floor. Returns (durations ns,
    sink state of the last rep, last rep's tree)."""
    floor = spec.time_floor_ms * 1_000_000
    sink = MetricsSink(double_counts=spec.double_counts_as)
    durations: list[int] = []
    spent = 0
    last = None
    was_enabled = gc.isenabled()
    while not durations or spent < floor:
        t = base_tree.clone()
        t.sink = sink
        sink.reset()
        # Dead clones are cyclic (parent pointers), so the collector has
        # real work here; keep its pauses out of the timed window. It
        # catches up during the next clone.
        gc.disable()
        t0 = time.perf_counter_ns()
        phase(t)
        dt = time.perf_counter_ns() - t0
        if was_enabled:
            gc.enable()
        durations.append(dt)
        spent += dt
        last = t
    return durations, sink, last


def _fill(spec: ExperimentSpec, vs: VariantSpec, size: int, **over) -> MetricsRecord:
    rec = MetricsRecord(
        experiment=spec.experiment,
        variant=vs.scheme,
        params=vs.params_name,
        dist=spec.dist,
        universe=spec.universe_for(size),
        zipf_s=spec.zipf_s if spec.dist == "zipf" else 0.0,
        base_size=size,
        seed=spec.seed,
    )
    for k, v in over.items():
        setattr(rec, k, v)
    return rec


def run_insert_pct(spec: ExperimentSpec) -> RunResult:
    """Time inserting ceil(5%) fresh keys into each base tree."""
    spec.check()
    rows, shapes = [], {}
    for size in spec.sizes:
        m = -(-size // 20)  # ceil(size / 20)
        for ti in range(spec.base_trees):
            keys = _base_keys(spec, size, ti)
            fresh = fresh_keys(spec.dist, m, spec.universe_for(size),
                               derive_seed(spec.seed, size, ti, STREAM_FRESH),
                               spec.zipf_s)
            for vs in spec.variants:
                base = _build(vs, keys)

                def phase(t, fresh=fresh):
                    ins = t.insert
                    for k in fresh:
                        ins(k)

                durations, sink, final = _timed_reps(spec, base, phase)
                _audit_cell(vs, final, spec, f"insert-pct n={size} tree={ti}")
                mean, std = summarize_ns(durations, m)
                viol = (count_violations(final)
                        if vs.scheme != "redblack" else -1)
                rows.append(_fill(
                    spec, vs, size, op="insert", rep=len(durations),
                    op_index=-1, ops=m, elapsed_ns=mean, elapsed_ns_std=std,
                    rotation_count=sink.rotation_count,
                    rotated_weight_total=sink.rotated_weight_total,
                    violation_count=viol, avg_depth=average_depth(final)))
                shapes[(size, ti, vs.label)] = tree_shape(final)
    return RunResult(rows, shapes)


def run_erase_pct(spec: ExperimentSpec) -> RunResult:
    """Time deleting ceil(5%) keys picked uniformly from the contents."""
    spec.check()
    rows, shapes = [], {}
    for size in spec.sizes:
        m = -(-size // 20)
        for ti in range(spec.base_trees):
            keys = _base_keys(spec, size, ti)
            # Victims: uniform draws without replacement from the multiset,
            # via swap-pop on a scratch copy. Same list for every variant.
            rng = SplitMix64(derive_seed(spec.seed, size, ti, STREAM_VICTIM))
            pool = list(keys)
            victims = []
            for _ in range(m):
                i = rng.below(len(pool))
                victims.append(pool[i])
                pool[i] = pool[-1]
                pool.pop()
            for vs in spec.variants:
                base = _build(vs, keys)

                def phase(t, victims=victims):
                    de = t.delete
                    for k in victims:
                        de(k)

                durations, sink, final = _timed_reps(spec, base, phase)
                _audit_cell(vs, final, spec, f"erase-pct n={size} tree={ti}")
                mean, std = summarize_ns(durations, m)
                viol = (count_violations(final)
                        if vs.scheme != "redblack" else -1)
                rows.append(_fill(
                    spec, vs, size, op="erase", rep=len(durations),
                    op_index=-1, ops=m, elapsed_ns=mean, elapsed_ns_std=std,
                    rotation_count=sink.rotation_count,
                    rotated_weight_total=sink.rotated_weight_total,
                    violation_count=viol, avg_depth=average_depth(final)))
                shapes[(size, ti, vs.label)] = tree_shape(final)
    return RunResult(rows, shapes)


def run_depth_churn(spec: ExperimentSpec) -> RunResult:
    """Delete every original key and reinsert a fresh one; report depth.

    One pass per cell (no repetition floor: the result of interest is the
    final shape, which repetitions would just duplicate).
    """
    spec.check()
    rows, shapes = [], {}
    for size in spec.sizes:
        for ti in range(spec.base_trees):
            keys = _base_keys(spec, size, ti)
            repl = fresh_keys(spec.dist, size, spec.universe_for(size),
                              derive_seed(spec.seed, size, ti, STREAM_CHURN),
                              spec.zipf_s)
            for vs in spec.variants:
                t = _build(vs, keys)
                sink = MetricsSink(double_counts=spec.double_counts_as)
                t.sink = sink
                ins, de = t.insert, t.delete
                t0 = time.perf_counter_ns()
                for old, new in zip(keys, repl):
                    de(old)
                    ins(new)
                dt = time.perf_counter_ns() - t0
                _audit_cell(vs, t, spec, f"depth-churn n={size} tree={ti}")
                viol = (count_violations(t)
                        if vs.scheme != "redblack" else -1)
                rows.append(_fill(
                    spec, vs, size, op="churn", rep=1, op_index=-1, ops=size,
                    elapsed_ns=dt / size, elapsed_ns_std=0.0,
                    rotation_count=sink.rotation_count,
                    rotated_weight_total=sink.rotated_weight_total,
                    violation_count=viol, avg_depth=average_depth(t)))
                shapes[(size, ti, vs.label)] = tree_shape(t)
    return RunResult(rows, shapes)


def _churn_rows(spec: ExperimentSpec, want_violations: bool) -> RunResult:
    """Shared driver for the over-time experiments.

    Runs op-pairs (delete a uniform victim, insert a fresh key) on each
    cell, emitting one row per sample interval with either the violation
    count or the cumulative rotation counters.
    """
    spec.check()
    rows, shapes = [], {}
    for size in spec.sizes:
        pairs = spec.op_pairs if spec.op_pairs is not None else 2 * size
        for ti in range(spec.base_trees):
            keys = _base_keys(spec, size, ti)
            repl = fresh_keys(spec.dist, pairs, spec.universe_for(size),
                              derive_seed(spec.seed, size, ti, STREAM_CHURN),
                              spec.zipf_s)
            vic_seed = derive_seed(spec.seed, size, ti, STREAM_VICTIM)
            for vs in spec.variants:
                t = _build(vs, keys)
                sink = MetricsSink(double_counts=spec.double_counts_as)
                t.sink = sink
                rng = SplitMix64(vic_seed)
                below = rng.below
                contents = list(keys)
                ins, de = t.insert, t.delete
                done = 0
                while done < pairs:
                    stop = min(done + spec.sample_interval, pairs)
                    for i in range(done, stop):
                        j = below(len(contents))
                        victim = contents[j]
                        contents[j] = contents[-1]
                        contents.pop()
                        de(victim)
                        k = repl[i]
                        ins(k)
                        contents.append(k)
                    done = stop
                    if want_violations:
                        viol = (count_violations(t)
                                if vs.scheme != "redblack" else -1)
                        rows.append(_fill(
                            spec, vs, size, op="pair", rep=1, op_index=done,
                            ops=pairs, violation_count=viol,
                            rotation_count=sink.rotation_count,
                            rotated_weight_total=sink.rotated_weight_total))
                    else:
                        rows.append(_fill(
                            spec, vs, size, op="pair", rep=1, op_index=done,
                            ops=pairs,
                            rotation_count=sink.rotation_count,
                            rotated_weight_total=sink.rotated_weight_total))
                _audit_cell(vs, t, spec,
                            f"{spec.experiment} n={size} tree={ti}")
                shapes[(size, ti, vs.label)] = tree_shape(t)
    return RunResult(rows, shapes)


def run_violations_over_time(spec: ExperimentSpec) -> RunResult:
    return _churn_rows(spec, want_violations=True)


def run_rotations(spec: ExperimentSpec) -> RunResult:
    return _churn_rows(spec, want_violations=False)


class OpSequence:
    """Replayable operation list: (op, key) with op 'i' or 'd'."""

    __slots__ = ("ops",)

    def __init__(self, ops: list[tuple[str, int]] | None = None):
        self.ops = ops if ops is not None else []

    @staticmethod
    def parse(text: str) -> "OpSequence":
        ops = []
        for ln, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2 or parts[0] not in ("i", "d"):
                raise ValueError(f"line {ln}: expected 'i <key>' or "
                                 f"'d <key>', got {raw!r}")
            try:
                key = int(parts[1])
            except ValueError:
                raise ValueError(f"line {ln}: bad key {parts[1]!r}") from None
            ops.append((parts[0], key))
        return OpSequence(ops)

    def dump(self) -> str:
        return "".join(f"{op} {key}\n" for op, key in self.ops)

    def __len__(self):
        return len(self.ops)

    def __eq__(self, other):
        return isinstance(other, OpSequence) and self.ops == other.ops


_REPLAY_BASELINE = ("bottom_up", "classic")


def run_replay(spec: ExperimentSpec, seq: OpSequence) -> RunResult:
    """Replay a recorded sequence against every variant, from empty.

    Times the whole sequence REPLAY_REPS times per variant and reports
    per-op mean/stddev plus the mean normalized to the bottom-up classic
    baseline (auto-added when not already selected).
    """
    spec.check()
    variants = list(spec.variants)
    if not any(vs.scheme == _REPLAY_BASELINE[0]
               and vs.params_name == _REPLAY_BASELINE[1] for vs in variants):
        variants.insert(0, VariantSpec(_REPLAY_BASELINE[0],
                                       params_from_name(_REPLAY_BASELINE[1])))
    n_ops = max(len(seq), 1)
    rows, shapes = [], {}
    means = {}
    per_variant = []
    for vs in variants:
        sink = MetricsSink(double_counts=spec.double_counts_as)
        durations = []
        final = None
        for _ in range(REPLAY_REPS):
            t = vs.make_tree(sink=sink)
            sink.reset()
            t0 = time.perf_counter_ns()
            ins, de = t.insert, t.delete
            for op, key in seq.ops:
                if op == "i":
                    ins(key)
                else:
                    de(key)
            durations.append(time.perf_counter_ns() - t0)
            final = t
        _audit_cell(vs, final, spec, "replay")
        mean, std = summarize_ns(durations, n_ops)
        means[vs.label] = mean
        per_variant.append((vs, mean, std, sink, final))
        shapes[(0, 0, vs.label)] = tree_shape(final)
    base_mean = means[f"{_REPLAY_BASELINE[0]}/{_REPLAY_BASELINE[1]}"]
    for vs, mean, std, sink, final in per_variant:
        viol = count_violations(final) if vs.scheme != "redblack" else -1
        rows.append(_fill(
            spec, vs, 0, op="replay", rep=REPLAY_REPS, op_index=-1,
            ops=len(seq), elapsed_ns=mean, elapsed_ns_std=std,
            rotation_count=sink.rotation_count,
            rotated_weight_total=sink.rotated_weight_total,
            violation_count=viol, avg_depth=average_depth(final),
            normalized_elapsed=(mean / base_mean if base_mean > 0 else -1.0)))
    return RunResult(rows, shapes)


def emit_results(rows: list[MetricsRecord], fmt: str, path: str | None):
    """Write rows as CSV (with header) or JSONL; path None means stdout."""
    if fmt not in ("csv", "jsonl"):
        raise ValueError(f"unknown format {fmt!r}")
    out = io.StringIO()
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in rows:
            w.writerow(r.to_row())
    else:
        for r in rows:
            out.write(json.dumps(
                {c: getattr(r, c) for c in CSV_COLUMNS},
                separators=(",", ":")) + "\n")
    text = out.getvalue()
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)


def read_results_csv(path: str) -> list[dict]:
    """Load an emitted CSV back into dicts of strings (round-trip aid)."""
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


RUNNERS = {
    "insert-pct": run_insert_pct,
    "erase-pct": run_erase_pct,
    "depth-churn": run_depth_churn,
    "violations": run_violations_over_time,
    "rotations": run_rotations,
}
