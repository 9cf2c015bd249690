"""Text formats: group files, generating-vector files and small sidecars.

Group file::

    # comment
    degree 4
    id (24,12)
    (2,4,3)
    (1,2)

Points are 1-based; ``()`` is the identity.
"""
from __future__ import annotations

from pathlib import Path

from .covers import GeneratingVector
from .perm import MAX_DEGREE, MalformedPermutation, Permutation
from .permgrp import PermGroup, build_group


class GroupFileError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.line = line
        self.source = source


class DegreeOverflow(GroupFileError):
    pass


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if s and not s.startswith("#"):
            yield no, s


def parse_group(text: str, source: str | None = None) -> PermGroup:
    lines = list(_content_lines(text))
    if len(lines) < 2:
        raise GroupFileError("expected 'degree' and 'id' lines", None, source)
    (no, first), (no2, second) = lines[0], lines[1]
    key, _, val = first.partition(" ")
    if key != "degree":
        raise GroupFileError("first line must be 'degree <n>'", no, source)
    try:
        degree = int(val)
    except ValueError:
        raise GroupFileError(f"bad degree {val.strip()!r}", no, source) from None
    if degree < 1:
        raise GroupFileError("degree must be positive", no, source)
    if degree > MAX_DEGREE:
        raise DegreeOverflow(f"degree {degree} exceeds the cap {MAX_DEGREE}", no, source)
    key, _, label = second.partition(" ")
    if key != "id" or not label.strip():
        raise GroupFileError("second line must be 'id <label>'", no2, source)
    gens = []
    for no, s in lines[2:]:
        try:
            gens.append(Permutation.parse(s, degree))
        except MalformedPermutation as exc:
            raise GroupFileError(str(exc), no, source) from None
    return build_group(degree, gens, label.strip())


def read_group(path: str | Path) -> PermGroup:
    path = Path(path)
    return parse_group(path.read_text(), str(path))


def format_group(group: PermGroup) -> str:
    lines = [f"degree {group.degree}", f"id {group.label or '?'}"]
    lines += [g.to_cycle_string() for g in group.generators]
    return "\n".join(lines) + "\n"


def parse_vector(text: str, group: PermGroup, source: str | None = None) -> GeneratingVector:
    entries = []
    for no, s in _content_lines(text):
        try:
            g = Permutation.parse(s, group.degree)
        except MalformedPermutation as exc:
            raise GroupFileError(str(exc), no, source) from None
        if g not in group:
            raise GroupFileError("vector entry is not in the group", no, source)
        entries.append(g)
    return GeneratingVector(tuple(entries))


def read_vector(path: str | Path, group: PermGroup) -> GeneratingVector:
    path = Path(path)
    return parse_vector(path.read_text(), group, str(path))


def format_vector(vec: GeneratingVector) -> str:
    return "\n".join(g.to_cycle_string() for g in vec) + "\n"


def read_schur_overrides(path: str | Path) -> dict[int, int]:
    """Lines ``<complex row index> <schur index>``."""
    out = {}
    path = Path(path)
    for no, s in _content_lines(path.read_text()):
        toks = s.split()
        if len(toks) != 2:
            raise GroupFileError("expected '<row> <index>'", no, str(path))
        try:
            out[int(toks[0])] = int(toks[1])
        except ValueError:
            raise GroupFileError("row and index must be integers", no, str(path)) from None
    return out


def read_automorphisms(path: str | Path, group: PermGroup) -> list[list[Permutation]]:
    """One automorphism per line: generator images separated by ``;``."""
    out = []
    path = Path(path)
    for no, s in _content_lines(path.read_text()):
        parts = [p.strip() for p in s.split(";")]
        try:
            imgs = [Permutation.parse(p, group.degree) for p in parts]
        except MalformedPermutation as exc:
            raise GroupFileError(str(exc), no, str(path)) from None
        if len(imgs) != len(group.generators):
            raise GroupFileError(
                f"{len(imgs)} images for {len(group.generators)} generators", no, str(path)
            )
        out.append(imgs)
    return out


def sidecar(group_path: str | Path, suffix: str) -> Path | None:
    """``foo.pg`` -> ``foo<suffix>`` if that file exists."""
    p = Path(group_path).with_suffix(suffix)
    return p if p.exists() else None
