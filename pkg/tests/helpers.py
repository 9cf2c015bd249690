"""Fixture access shared by the test modules."""
from __future__ import annotations

import functools
import os
import shutil
import time
from contextlib import contextmanager
from pathlib import Path

from cdj.io import read_group

FIXTURES = Path(__file__).parent / "fixtures"
GROUPS = FIXTURES / "groups"
TABLES = FIXTURES / "tables"

ACCEPTANCE: list[str] = []


@contextmanager
def criterion(label: str, budget: float | None = None):
    """Record one PASS/FAIL line for an acceptance criterion (and a time budget)."""
    start = time.perf_counter()
    status, note = "FAIL", ""
    try:
        yield
        elapsed = time.perf_counter() - start
        if budget is not None and elapsed > budget:
            note = f" over budget {budget:.0f}s"
            raise AssertionError(f"{label} took {elapsed:.1f}s, budget {budget:.0f}s")
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        line = f"{status}  {label}  ({elapsed:.1f}s){note}"
        ACCEPTANCE.append(line)
        print(line)


@functools.lru_cache(maxsize=None)
def load(name: str):
    return read_group(GROUPS / f"{name}.pg")


def fixture_names(max_order: int | None = None, min_order: int = 1) -> list[str]:
    names = []
    for path in sorted(GROUPS.glob("*.pg")):
        g = load(path.stem)
        if g.order >= min_order and (max_order is None or g.order <= max_order):
            names.append(path.stem)
    return names


def copy_groups(dest: Path, names) -> Path:
    dest.mkdir(parents=True, exist_ok=True)
    for n in names:
        shutil.copy(GROUPS / f"{n}.pg", dest / f"{n}.pg")
    return dest


def pure_python() -> bool:
    return os.environ.get("CDJ_PURE_PYTHON", "") not in ("", "0")


@functools.lru_cache(maxsize=None)
def table(name: str):
    from cdj.chars import character_table

    g = load(name)
    return character_table(g, g.classes)


@functools.lru_cache(maxsize=None)
def gap_table(name: str):
    from cdj.chars import parse_chartable

    g = load(name)
    return parse_chartable((TABLES / f"{name}.chartable").read_text(), g.classes, g.label)


@functools.lru_cache(maxsize=None)
def sample_signatures(name: str, count: int = 2) -> tuple:
    """The first ``count`` small signatures (by r, then periods) that admit vectors."""
    from itertools import islice

    from cdj.covers import enumerate_generating_vectors
    from cdj.search import admissible_signatures

    g = load(name)
    if g.order == 1:
        return ()
    sigs = admissible_signatures(g.order, g.classes.orders, 2, 400, r_min=3, r_max=6)
    sigs.sort(key=lambda s: (s.r, s.periods))
    out = []
    for s in sigs:
        if next(islice(enumerate_generating_vectors(g, g.classes, s, dedup=True), 1), None):
            out.append(s)
            if len(out) == count:
                break
    return tuple(out)


@functools.lru_cache(maxsize=None)
def sample_records(name: str, per_signature: int = 3) -> tuple:
    """Decomposition records for a few vector classes of each sample signature."""
    from itertools import islice

    from cdj.chars import rational_characters
    from cdj.covers import cover_action, enumerate_generating_vectors
    from cdj.decomp import decompose

    g = load(name)
    rats = rational_characters(table(name))
    out = []
    for s in sample_signatures(name):
        for vec in islice(enumerate_generating_vectors(g, g.classes, s, dedup=True), per_signature):
            out.append(decompose(cover_action(g, s, vec, g.classes), rats))
    return tuple(out)
