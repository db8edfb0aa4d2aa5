"""Multiplicity census of Pascal's k-simplex, plus capped high-multiplicity scans.

Layers ``0..n-1`` are enumerated point by point.  Work is split by the first
coordinate into contiguous shards whose partial stores are merged by adding
counts, so the result does not depend on the shard count.  A run can write a
checkpoint after every block of layers and resume from it.
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
import os
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .arith import SortedParts
from .counter import DEFAULT_BUDGET, BudgetExceeded, nontrivial_tuples

log = logging.getLogger(__name__)

FORMAT_VERSION = 1
MANIFEST = "manifest.json"
DATA = "data.tsv"


class CheckpointError(RuntimeError):
    pass


@dataclass
class PartialStore:
    """Occurrence counts keyed by value (value 1 included) for a span of layers."""

    k: int
    counts: Counter = field(default_factory=Counter)
    layers_completed: int = 0


@dataclass
class CensusHistogram:
    k: int
    n_layers: int
    by_multiplicity: dict[int, int]
    distinct_total: int
    ones_entries: int
    entries_total: int

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "n_layers": self.n_layers,
            "by_multiplicity": {str(m): c for m, c in sorted(self.by_multiplicity.items())},
            "distinct_total": self.distinct_total,
            "ones_entries": self.ones_entries,
            "entries_total": str(self.entries_total),
        }


@dataclass
class ScanHit:
    a: int
    multiplicity: int
    witnesses: list[SortedParts]


def merge(h1: PartialStore, h2: PartialStore) -> PartialStore:
    if h1.k != h2.k:
        raise ValueError(f"cannot merge stores with k={h1.k} and k={h2.k}")
    counts = Counter(h1.counts)
    counts.update(h2.counts)
    return PartialStore(h1.k, counts, max(h1.layers_completed, h2.layers_completed))


def entries_in_layers(k: int, n_layers: int) -> int:
    """Number of points in layers 0..n-1 of the k-simplex."""
    return math.comb(n_layers - 1 + k, k)


# --- layer evaluation -------------------------------------------------------

def _sweep(counts: Counter, k: int, base: int, r: int) -> None:
    """Add ``base * multinomial(t)`` for every composition t of r into k parts.

    Only the last two coordinates move in the innermost loop, where the
    coefficient is stepped as C(r, j+1) = C(r, j) * (r - j) / (j + 1).
    """
    if k == 1:
        counts[base] += 1
        return
    if k == 2:
        v = base
        counts[v] += 1
        for j in range(r):
            v = v * (r - j) // (j + 1)
            counts[v] += 1
        return
    # first of the remaining k coordinates takes i, the rest share r - i
    v = base
    for i in range(r + 1):
        _sweep(counts, k - 1, v, r - i)
        v = v * (r - i) // (i + 1)


def _layer_block(k: int, lo_layer: int, hi_layer: int, first_lo: int, first_hi: int) -> Counter:
    """Counts for layers [lo_layer, hi_layer) restricted to first coordinate in [first_lo, first_hi)."""
    counts: Counter = Counter()
    for m in range(lo_layer, hi_layer):
        top = min(first_hi, m + 1)
        if first_lo >= top:
            continue
        v = math.comb(m, first_lo)
        for i in range(first_lo, top):
            _sweep(counts, k - 1, v, m - i)
            v = v * (m - i) // (i + 1)
    return counts


def _first_coordinate_weight(k: int, lo_layer: int, hi_layer: int, i: int) -> int:
    # points with m_1 = i in the given layers
    return sum(math.comb(m - i + k - 2, k - 2) for m in range(max(lo_layer, i), hi_layer))


def shard_ranges(k: int, lo_layer: int, hi_layer: int, shards: int) -> list[tuple[int, int]]:
    """Contiguous first-coordinate ranges with roughly equal point counts."""
    weights = [_first_coordinate_weight(k, lo_layer, hi_layer, i) for i in range(hi_layer)]
    total = sum(weights)
    ranges = []
    start = 0
    acc = 0
    for s in range(1, shards):
        goal = total * s // shards
        end = start
        while end < hi_layer and acc + weights[end] <= goal:
            acc += weights[end]
            end += 1
        ranges.append((start, end))
        start = end
    ranges.append((start, hi_layer))
    return ranges


def _run_block(k: int, lo: int, hi: int, shards: int, pool: Optional[ProcessPoolExecutor]) -> Counter:
    ranges = shard_ranges(k, lo, hi, shards)
    if pool is None:
        parts = [_layer_block(k, lo, hi, a, b) for a, b in ranges]
    else:
        futures = [pool.submit(_layer_block, k, lo, hi, a, b) for a, b in ranges]
        parts = [f.result() for f in futures]
    store = PartialStore(k)
    for p in parts:
        store = merge(store, PartialStore(k, p))
    return store.counts


# --- checkpoints ------------------------------------------------------------

def _data_bytes(counts: Counter) -> bytes:
    # numeric order == (decimal length, lexicographic) for nonnegative ints
    lines = [f"{v}\t{c}\n" for v, c in sorted(counts.items())]
    return "".join(lines).encode("ascii")


def checkpoint_save(store: PartialStore, path, shard_count: int = 1) -> None:
    """Write ``manifest.json`` and ``data.tsv`` under ``path`` via write-then-rename."""
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    data = _data_bytes(store.counts)
    manifest = {
        "format_version": FORMAT_VERSION,
        "k": store.k,
        "layers_completed": store.layers_completed,
        "shard_count": shard_count,
        "digest": hashlib.sha256(data).hexdigest(),
    }
    for name, payload in ((DATA, data), (MANIFEST, (json.dumps(manifest, indent=2) + "\n").encode())):
        tmp = path / (name + ".tmp")
        with open(tmp, "wb") as fh:
            fh.write(payload)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path / name)


def checkpoint_load(path) -> tuple[PartialStore, dict]:
    path = Path(path)
    try:
        manifest = json.loads((path / MANIFEST).read_text())
        data = (path / DATA).read_bytes()
    except FileNotFoundError as e:
        raise CheckpointError(f"incomplete checkpoint at {path}: {e.filename}") from e
    if manifest.get("format_version") != FORMAT_VERSION:
        raise CheckpointError(f"unsupported checkpoint version {manifest.get('format_version')!r}")
    if hashlib.sha256(data).hexdigest() != manifest.get("digest"):
        raise CheckpointError(f"digest mismatch in {path / DATA}")
    counts: Counter = Counter()
    for line in data.decode("ascii").splitlines():
        v, c = line.split("\t")
        counts[int(v)] = int(c)
    return PartialStore(manifest["k"], counts, manifest["layers_completed"]), manifest


# --- census -----------------------------------------------------------------

def histogram(store: PartialStore) -> CensusHistogram:
    by_mult: Counter = Counter()
    for v, c in store.counts.items():
        if v != 1:
            by_mult[c] += 1
    n = store.layers_completed
    return CensusHistogram(
        k=store.k,
        n_layers=n,
        by_multiplicity=dict(sorted(by_mult.items())),
        distinct_total=sum(by_mult.values()),
        ones_entries=store.counts.get(1, 0),
        entries_total=sum(store.counts.values()),
    )


def census_store(
    k: int,
    n_layers: int,
    jobs: int = 1,
    shards: Optional[int] = None,
    checkpoint_dir=None,
    resume: bool = False,
    checkpoint_every: Optional[int] = None,
    stop_after: Optional[int] = None,
    budget: int = DEFAULT_BUDGET,
) -> PartialStore:
    """Build the value -> occurrence store for layers 0..n_layers-1.

    ``stop_after`` ends the run (after checkpointing) once that many layers
    are done, which is how interruption is simulated in tests.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if n_layers < 1:
        raise ValueError(f"n_layers must be >= 1, got {n_layers}")
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    if entries_in_layers(k, n_layers) > budget:
        raise BudgetExceeded(
            f"{entries_in_layers(k, n_layers)} simplex entries exceed budget {budget}"
        )
    shards = shards or jobs
    store = PartialStore(k)
    if resume:
        if checkpoint_dir is None:
            raise CheckpointError("resume requested without a checkpoint directory")
        store, manifest = checkpoint_load(checkpoint_dir)
        if store.k != k:
            raise CheckpointError(f"checkpoint has k={store.k}, requested k={k}")
        if store.layers_completed > n_layers:
            raise CheckpointError(
                f"checkpoint covers {store.layers_completed} layers, more than requested {n_layers}"
            )
        log.info("resuming at layer %d", store.layers_completed)
    if checkpoint_every is None:
        checkpoint_every = n_layers if checkpoint_dir is None else max(1, n_layers // 10)
    end = n_layers if stop_after is None else min(n_layers, stop_after)

    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        while store.layers_completed < end:
            lo = store.layers_completed
            hi = min(end, lo + checkpoint_every)
            block = _run_block(k, lo, hi, shards, pool)
            store = merge(store, PartialStore(k, block))
            store.layers_completed = hi
            log.info("k=%d layers %d..%d done", k, lo, hi - 1)
            if checkpoint_dir is not None:
                checkpoint_save(store, checkpoint_dir, shards)
    finally:
        if pool is not None:
            pool.shutdown()
    return store


def census_run(k: int, n_layers: int, **opts) -> CensusHistogram:
    """Histogram of multiplicities of values > 1 over layers 0..n_layers-1."""
    return histogram(census_store(k, n_layers, **opts))


def scan_high_multiplicity(
    k: int, value_cap: int, threshold: int, budget: int = DEFAULT_BUDGET
) -> list[ScanHit]:
    """All ``a <= value_cap`` with N_k(a) >= threshold, ascending.

    Only multisets whose largest part is at most m - 2 are enumerated; the
    trivial family adds k(k-1) for each a >= 3 and C(k, 2) for a = 2.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if value_cap < 2:
        raise ValueError(f"value_cap must be >= 2, got {value_cap}")
    if threshold < 1:
        raise ValueError(f"threshold must be >= 1, got {threshold}")
    groups: dict[int, list[SortedParts]] = defaultdict(list)
    for v, sp in nontrivial_tuples(k, value_cap, budget):
        groups[v].append(sp)

    def trivial(a: int) -> int:
        return math.comb(k, 2) if a == 2 else k * (k - 1)

    if threshold <= k * (k - 1):
        if value_cap > budget:
            raise BudgetExceeded(f"threshold {threshold} would list every value up to {value_cap}")
        candidates = range(2, value_cap + 1)
    else:
        candidates = sorted(groups)
    hits = []
    for a in candidates:
        ws = sorted(groups.get(a, []))
        mult = trivial(a) + sum(w.orbit for w in ws)
        if mult >= threshold:
            hits.append(ScanHit(a, mult, ws))
    return hits
