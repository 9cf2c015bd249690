"""Batch search over (group, signature) work units."""
from __future__ import annotations

import csv
import io as _io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Any, Sequence

from .chars import CharTable, character_table, parse_chartable, rational_characters
from .covers import Signature, cover_action, enumerate_generating_vectors
from .decomp import decompose, decompose_quotient
from .io import read_automorphisms, read_group, read_schur_overrides, sidecar
from .permgrp import PermGroup, subgroups_up_to_order
from .store import ChartableCache, ResultStore, record_to_dict, sort_key

log = logging.getLogger(__name__)

R_MIN, R_MAX = 3, 7


class GroupContext:
    """A group plus everything derived from it, computed on first use.

    Optional sidecars next to ``foo.pg``: ``foo.chartable`` (ingested table),
    ``foo.schur`` (Schur index overrides), ``foo.aut`` (automorphisms).
    """

    def __init__(self, path: str | Path, cache_dir: str | Path | None = None,
                 table_path: str | Path | None = None, schur_path: str | Path | None = None,
                 aut_path: str | Path | None = None, use_cache: bool = True):
        self.path = Path(path)
        self.group: PermGroup = read_group(self.path)
        self.cache_dir = cache_dir
        self.use_cache = use_cache
        self.table_path = Path(table_path) if table_path else sidecar(self.path, ".chartable")
        self.schur_path = Path(schur_path) if schur_path else sidecar(self.path, ".schur")
        self.aut_path = Path(aut_path) if aut_path else sidecar(self.path, ".aut")
        self._subgroups: dict[int, list] = {}

    @property
    def classes(self):
        return self.group.classes

    @cached_property
    def table(self) -> CharTable:
        if self.table_path is not None:
            return parse_chartable(self.table_path.read_text(), self.classes, self.group.label)
        if not self.use_cache:
            return character_table(self.group, self.classes)
        cache = ChartableCache(self.cache_dir)
        return cache.get_or_compute(self.group, self.classes,
                                    lambda: character_table(self.group, self.classes))

    @cached_property
    def rationals(self):
        overrides = read_schur_overrides(self.schur_path) if self.schur_path else None
        return rational_characters(self.table, overrides)

    @cached_property
    def automorphisms(self):
        return read_automorphisms(self.aut_path, self.group) if self.aut_path else []

    def subgroups(self, max_order: int):
        if max_order not in self._subgroups:
            self._subgroups[max_order] = subgroups_up_to_order(self.group, max_order)
        return self._subgroups[max_order]

    def vectors(self, sig: Signature, dedup: bool = True):
        return enumerate_generating_vectors(
            self.group, self.classes, sig, dedup=dedup, automorphisms=self.automorphisms or None
        )

    def decompositions(self, sig: Signature, dedup: bool = True):
        for vec in self.vectors(sig, dedup):
            yield decompose(cover_action(self.group, sig, vec, self.classes), self.rationals)


def admissible_signatures(order: int, element_orders: Sequence[int], genus_min: int,
                          genus_max: int, r_min: int = R_MIN, r_max: int = R_MAX) -> list[Signature]:
    """All ``[0; s_1 <= ... <= s_r]`` with s_i element orders and genus in the window."""
    periods = sorted({int(s) for s in element_orders if s > 1})
    half = Fraction(order, 2)
    out = []

    def walk(prefix: list[int], start: int, acc: Fraction, r: int):
        left = r - len(prefix)
        base = 1 - order + half * acc
        if base + left * half / 2 > genus_max:
            return
        if left == 0:
            if base.denominator == 1 and genus_min <= base <= genus_max:
                out.append(Signature(0, tuple(prefix)))
            return
        for i in range(start, len(periods)):
            s = periods[i]
            walk(prefix + [s], i, acc + 1 - Fraction(1, s), r)

    for r in range(r_min, r_max + 1):
        walk([], 0, Fraction(0), r)
    return sorted(out, key=lambda s: (s.r, s.periods))


@dataclass(frozen=True)
class SearchJob:
    group_paths: tuple[Path, ...]
    genus_min: int
    genus_max: int
    signatures: tuple[Signature, ...] | None = None
    max_subgroup_order: int = 0
    dedup: bool = True
    only_complete: bool = False
    jobs: int = 1
    cache_dir: str | None = None

    def __post_init__(self):
        if self.genus_min > self.genus_max:
            raise ValueError("genus_min must not exceed genus_max")
        if self.jobs < 1:
            raise ValueError("worker count must be at least 1")


@dataclass(frozen=True)
class WorkUnit:
    group_path: Path
    signature: Signature
    job: SearchJob


@dataclass
class SearchResult:
    records: list[dict[str, Any]] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)


_CONTEXTS: dict[tuple[str, str | None], GroupContext] = {}


def _context(path: Path, cache_dir: str | None) -> GroupContext:
    key = (str(path), cache_dir)
    if key not in _CONTEXTS:
        _CONTEXTS[key] = GroupContext(path, cache_dir)
    return _CONTEXTS[key]


def _in_window(g: int, job: SearchJob) -> bool:
    return job.genus_min <= g <= job.genus_max


def run_unit(unit: WorkUnit) -> tuple[list[dict[str, Any]], list[str]]:
    job = unit.job
    try:
        ctx = _context(unit.group_path, job.cache_dir)
        out = []
        subs = [h for h in ctx.subgroups(job.max_subgroup_order) if h.order > 1] \
            if job.max_subgroup_order > 0 else []
        for rec in ctx.decompositions(unit.signature, job.dedup):
            if _in_window(rec.genus, job) and (rec.completely_decomposable or not job.only_complete):
                out.append(record_to_dict(rec))
            for h in subs:
                q = decompose_quotient(rec, h)
                if _in_window(q.quotient_genus, job) and (
                    q.completely_decomposable or not job.only_complete
                ):
                    out.append(record_to_dict(q))
        return out, []
    except Exception as exc:  # one bad unit must not sink the job
        msg = f"{unit.group_path} {unit.signature}: {type(exc).__name__}: {exc}"
        log.warning(msg)
        return [], [msg]


def plan_units(job: SearchJob) -> tuple[list[WorkUnit], list[str]]:
    units, failures = [], []
    for path in sorted(Path(p) for p in job.group_paths):
        try:
            ctx = _context(path, job.cache_dir)
            group = ctx.group
            if job.signatures is not None:
                sigs = list(job.signatures)
            else:
                sigs = admissible_signatures(group.order, ctx.classes.orders,
                                             job.genus_min, job.genus_max)
        except Exception as exc:
            msg = f"{path}: {type(exc).__name__}: {exc}"
            log.warning(msg)
            failures.append(msg)
            continue
        orders = set(ctx.classes.orders)
        for sig in sigs:
            if sig.g0 != 0 or not set(sig.periods) <= orders:
                continue
            units.append(WorkUnit(path, sig, job))
    return units, failures


def run_search(job: SearchJob, store: ResultStore | None = None) -> SearchResult:
    units, failures = plan_units(job)
    result = SearchResult(failures=failures)
    if job.jobs == 1 or len(units) <= 1:
        outcomes = map(run_unit, units)
    else:
        pool = ProcessPoolExecutor(max_workers=job.jobs)
        outcomes = pool.map(run_unit, units, chunksize=1)
    try:
        for recs, errs in outcomes:
            if store is not None:
                store.append(recs)
            result.records.extend(recs)
            result.failures.extend(errs)
    finally:
        if job.jobs > 1 and len(units) > 1:
            pool.shutdown()
    result.records.sort(key=sort_key)
    if store is not None:
        store.consolidate()
    return result


def group_paths_in(directory: str | Path) -> tuple[Path, ...]:
    return tuple(sorted(Path(directory).glob("*.pg")))


# --- rendering -------------------------------------------------------------

TEXT_HEADER = "# genus  group  signature  multiplicities  family_dim  quotient  classes"
CSV_FIELDS = [
    "kind", "genus", "group", "order", "signature", "multiplicities", "family_dim",
    "completely_decomposable", "subgroup_order", "subgroup_class", "parent_genus",
]


def _quotient_note(d: dict[str, Any]) -> str:
    if d["kind"] != "quotient":
        return "-"
    sub = d["subgroup"]
    return f"H={sub['order']}.{sub['class']} of genus {d['parent_genus']}"


def emit_table(records: Sequence[dict[str, Any]], fmt: str = "text") -> str:
    records = sorted(records, key=sort_key)
    if fmt == "json":
        return json.dumps(list(records), indent=1, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = _io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        for d in records:
            sub = d.get("subgroup") or {}
            w.writerow({
                "kind": d["kind"], "genus": d["genus"], "group": d["group"], "order": d["order"],
                "signature": d["signature"], "multiplicities": d["multiplicities"],
                "family_dim": d["family_dim"],
                "completely_decomposable": d["completely_decomposable"],
                "subgroup_order": sub.get("order", ""), "subgroup_class": sub.get("class", ""),
                "parent_genus": d.get("parent_genus", ""),
            })
        return buf.getvalue()
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    # identical rows (distinct vector classes, same result) are shown once with a count
    rows: dict[str, int] = {}
    for d in records:
        row = "  ".join([
            str(d["genus"]), str(d["group"]), d["signature"], d["multiplicities"] or "-",
            str(d["family_dim"]), _quotient_note(d),
        ])
        rows[row] = rows.get(row, 0) + 1
    lines = [TEXT_HEADER] + [f"{row}  {n}" for row, n in rows.items()]
    return "\n".join(lines) + "\n"
