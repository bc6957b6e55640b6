"""Benchmark cells: repeated timed runs per (dataset, algorithm, ordering)."""
from __future__ import annotations

import csv
import json
import statistics
import time
from pathlib import Path
from typing import TextIO

from .enumerator import EnumConfig, IeMode, enumerate_bicliques
from .graph import BipartiteGraph, load_konect, normalize_sides, parse_gen_spec
from .ie import gamma, order_vertices

FIELDS = [
    "dataset",
    "algo",
    "ie",
    "repeats",
    "mean_seconds",
    "min_seconds",
    "branches",
    "biplex_batches",
    "pruned_p1",
    "pruned_p2",
    "outputs",
    "max_depth",
    "gamma",
    "delay_curve",
    "error",
]


def load_dataset(entry: str) -> BipartiteGraph:
    """A suite entry is a generator spec (``crown:12``) or a KONECT file path."""
    head = entry.split(":", 1)[0]
    if head in ("crown", "random", "biplex"):
        return parse_gen_spec(entry)
    with open(entry) as fh:
        return load_konect(fh)


def read_suite(path: str | Path) -> list[str]:
    entries = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            entries.append(line)
    return entries


def geometric_grid(limit: int) -> list[int]:
    ks, k = [], 1
    while k <= limit:
        ks.append(k)
        k *= 2
    return ks


def run_cell(g: BipartiteGraph, label: str, algo: str, ie: str, repeats: int, **cfg_kw) -> dict:
    times = []
    stats = None
    curve: list[tuple[int, float]] = []
    for rep in range(repeats):
        cfg = EnumConfig(tier=algo, ie_mode=ie, **cfg_kw)
        marks: list[tuple[int, float]] = []
        if rep == 0:
            count = 0
            nxt = 1
            start = time.perf_counter()

            def sink(_r):
                nonlocal count, nxt
                count += 1
                if count == nxt:
                    marks.append((count, time.perf_counter() - start))
                    nxt *= 2

        else:
            sink = None
            start = time.perf_counter()
        st = enumerate_bicliques(g, cfg, sink)
        times.append(time.perf_counter() - start)
        if rep == 0:
            curve = [(k, t / k) for k, t in marks]
        elif st.counters() != stats.counters():
            raise RuntimeError("branch counters changed between repeats")
        stats = st
    row = {
        "dataset": label,
        "algo": algo,
        "ie": ie,
        "repeats": repeats,
        "mean_seconds": statistics.fmean(times),
        "min_seconds": min(times),
        "branches": stats.branches,
        "biplex_batches": stats.biplex_batches,
        "pruned_p1": stats.pruned_p1,
        "pruned_p2": stats.pruned_p2,
        "outputs": stats.outputs,
        "max_depth": stats.max_depth,
        "gamma": None,
        "delay_curve": curve,
        "error": None,
    }
    if IeMode(ie) is not IeMode.OFF:
        h, _ = normalize_sides(g)
        row["gamma"] = gamma(h, order_vertices(h, ie))
    return row


def run_suite(entries: list[str], algos: list[str], ies: list[str], repeats: int) -> list[dict]:
    rows = []
    for entry in entries:
        try:
            g = load_dataset(entry)
        except (OSError, ValueError) as exc:
            rows.append({"dataset": entry, "error": f"{type(exc).__name__}: {exc}"})
            continue
        for algo in algos:
            for ie in ies:
                rows.append(run_cell(g, entry, algo, ie, repeats))
    return rows


def write_report(rows: list[dict], out: TextIO, fmt: str) -> None:
    if fmt == "json":
        json.dump(rows, out, indent=2)
        out.write("\n")
        return
    writer = csv.DictWriter(out, fieldnames=FIELDS)
    writer.writeheader()
    for row in rows:
        flat = {k: row.get(k) for k in FIELDS}
        if flat["delay_curve"] is not None:
            flat["delay_curve"] = ";".join(f"{k}:{v:.3g}" for k, v in flat["delay_curve"])
        writer.writerow(flat)
