"""Result persistence (JSON Lines) and the on-disk character table cache."""
from __future__ import annotations

import fcntl
import hashlib
import json
import os
import threading
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Iterable

from .chars import CharTable, CharTableError, format_chartable, parse_chartable
from .decomp import DecompositionRecord, QuotientRecord, format_factors
from .permgrp import ClassData, PermGroup


def default_cache_dir() -> Path:
    env = os.environ.get("CDJ_CACHE_DIR")
    if env:
        return Path(env).expanduser()
    return Path("~/.cache/cdj").expanduser()


class ChartableCache:
    """Character tables keyed by sha256(group id + generator hash).

    Entries are re-validated (orthogonality) when loaded; a corrupt entry is
    treated as a miss and overwritten.
    """

    def __init__(self, cache_dir: str | Path | None = None):
        self.cache_dir = Path(cache_dir).expanduser() if cache_dir else default_cache_dir()
        self.cache_dir.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def key(group: PermGroup) -> str:
        return hashlib.sha256(f"{group.label}:{group.generator_hash()}".encode()).hexdigest()

    def path(self, group: PermGroup) -> Path:
        return self.cache_dir / f"{self.key(group)}.chartable"

    @contextmanager
    def _locked(self, group: PermGroup):
        lock_path = self.cache_dir / f"{self.key(group)}.lock"
        with open(lock_path, "w") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX)
            try:
                yield
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)

    def get(self, group: PermGroup, cls: ClassData) -> CharTable | None:
        path = self.path(group)
        if not path.exists():
            return None
        try:
            return parse_chartable(path.read_text(), cls, group.label)
        except CharTableError:
            return None

    def put(self, group: PermGroup, table: CharTable) -> Path:
        path = self.path(group)
        tmp = path.with_suffix(f".tmp{os.getpid()}")
        tmp.write_text(format_chartable(table, group.label or "?"))
        os.replace(tmp, path)
        return path

    def get_or_compute(self, group: PermGroup, cls: ClassData, compute) -> CharTable:
        with self._locked(group):
            table = self.get(group, cls)
            if table is None:
                table = compute()
                self.put(group, table)
            return table


# --- records ---------------------------------------------------------------

def decomposition_to_dict(rec: DecompositionRecord) -> dict[str, Any]:
    return {
        "kind": "decomposition",
        "group": rec.group_id,
        "order": rec.group_order,
        "signature": str(rec.signature),
        "genus": rec.genus,
        "vector": list(rec.vector),
        "factors": [[f.rat_char_index, f.dim_b, f.mult] for f in rec.factors],
        "multiplicities": format_factors(rec.factors),
        "completely_decomposable": rec.completely_decomposable,
        "family_dim": rec.family_dim,
    }


def quotient_to_dict(rec: QuotientRecord) -> dict[str, Any]:
    parent = rec.parent
    return {
        "kind": "quotient",
        "group": parent.group_id,
        "order": parent.group_order,
        "signature": str(parent.signature),
        "genus": rec.quotient_genus,
        "parent_genus": parent.genus,
        "vector": list(parent.vector),
        "subgroup": {
            "order": rec.subgroup.order,
            "class": rec.subgroup.conj_class_id,
            "generators": [g.to_cycle_string() for g in rec.subgroup.generators],
        },
        "factors": [[f.rat_char_index, f.dim_b, f.mult] for f in rec.factors],
        "multiplicities": format_factors(rec.factors),
        "completely_decomposable": rec.completely_decomposable,
        "family_dim": parent.family_dim,
    }


def record_to_dict(rec) -> dict[str, Any]:
    if isinstance(rec, QuotientRecord):
        return quotient_to_dict(rec)
    return decomposition_to_dict(rec)


def _sig_key(text: str):
    body = text.strip("[]")
    g0, _, periods = body.partition(";")
    return int(g0), tuple(int(s) for s in periods.split(",") if s)


def sort_key(d: dict[str, Any]):
    """(genus, |G|, signature, factor multiset) with full tie-breaking."""
    factors = sorted((dim, mult) for _, dim, mult in d["factors"] if mult and dim)
    sub = d.get("subgroup") or {"order": 0, "class": -1}
    return (
        d["genus"],
        d["order"],
        _sig_key(d["signature"]),
        factors,
        d["kind"] != "decomposition",
        str(d["group"]),
        sub["order"],
        sub["class"],
        d["vector"],
    )


class ResultStore:
    """Append-only JSON Lines log of records."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()

    def append(self, records: Iterable[dict[str, Any]]) -> None:
        lines = [json.dumps(r, sort_keys=True) + "\n" for r in records]
        if not lines:
            return
        with self._lock, open(self.path, "a") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX)
            fh.writelines(lines)
            fcntl.flock(fh, fcntl.LOCK_UN)

    def records(self) -> list[dict[str, Any]]:
        if not self.path.exists():
            return []
        with open(self.path) as fh:
            return [json.loads(ln) for ln in fh if ln.strip()]

    def consolidate(self) -> list[dict[str, Any]]:
        """Sort the log in place; returns the sorted records."""
        recs = sorted(self.records(), key=sort_key)
        tmp = self.path.with_suffix(self.path.suffix + ".tmp")
        with open(tmp, "w") as fh:
            for r in recs:
                fh.write(json.dumps(r, sort_keys=True) + "\n")
        os.replace(tmp, self.path)
        return recs


__all__ = [
    "ChartableCache",
    "ResultStore",
    "decomposition_to_dict",
    "default_cache_dir",
    "quotient_to_dict",
    "record_to_dict",
    "sort_key",
]
