"""Signatures, generating vectors and the rational homology character.

A curve with a G-action over a genus-``g0`` quotient branched at points with
periods ``s_1, ..., s_r`` is encoded (for ``g0 = 0``) by a generating vector:
elements ``g_i`` of order ``s_i`` with product 1 that generate G.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from . import kernels
from .chars import ClassFunction, induced_trivial_character, regular_character, trivial_character
from .perm import Permutation
from .permgrp import ClassData, PermGroup, SubgroupRecord, cyclic_subgroup


class InadmissibleSignature(ValueError):
    pass


class VectorError(ValueError):
    """A tuple that is not a generating vector for the stated signature."""


class AutomorphismError(ValueError):
    pass


_SIG = re.compile(r"^\[?\s*(\d+)\s*;\s*([\d\s,^]*)\]?$")


@dataclass(frozen=True, order=True)
class Signature:
    g0: int
    periods: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "periods", tuple(int(s) for s in self.periods))
        if self.g0 < 0:
            raise InadmissibleSignature("quotient genus must be nonnegative")
        if any(s < 2 for s in self.periods):
            raise InadmissibleSignature("periods must be at least 2")

    @classmethod
    def parse(cls, text: str) -> Signature:
        """Accept ``0; 2,4,6``, ``[0;2,4,6]`` and exponent shorthand ``[0;2^6]``."""
        m = _SIG.match(text.strip())
        if m is None:
            raise InadmissibleSignature(f"cannot parse signature {text!r}")
        periods: list[int] = []
        body = m.group(2).strip()
        if body:
            for tok in body.split(","):
                tok = tok.strip()
                if not tok:
                    raise InadmissibleSignature(f"empty period in {text!r}")
                base, _, rep = tok.partition("^")
                periods.extend([int(base)] * (int(rep) if rep else 1))
        return cls(int(m.group(1)), tuple(periods))

    @property
    def r(self) -> int:
        return len(self.periods)

    @property
    def family_dim(self) -> int:
        return self.r - 3 + 3 * self.g0

    def __str__(self):
        return f"[{self.g0};" + ",".join(map(str, self.periods)) + "]"


def genus_from_rh(group: PermGroup | int, sig: Signature) -> int:
    """Riemann-Hurwitz: ``1 + |G|(g0 - 1) + |G|/2 sum(1 - 1/s_i)``."""
    if isinstance(group, PermGroup):
        n = group.order
        orders = set(group.classes.orders)
        missing = [s for s in sig.periods if s not in orders]
        if missing:
            raise InadmissibleSignature(f"G has no elements of order {missing}")
    else:
        n = int(group)
    g = 1 + n * (sig.g0 - 1) + Fraction(n, 2) * sum(1 - Fraction(1, s) for s in sig.periods)
    if g.denominator != 1 or g < 0:
        raise InadmissibleSignature(f"Riemann-Hurwitz gives genus {g} for |G| = {n}, {sig}")
    return int(g)


@dataclass(frozen=True)
class GeneratingVector:
    entries: tuple[Permutation, ...]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def product(self) -> Permutation:
        out = Permutation.identity(self.entries[0].degree)
        for g in self.entries:
            out = out * g
        return out

    def orders(self) -> tuple[int, ...]:
        return tuple(g.order() for g in self.entries)

    def conjugate(self, t: Permutation) -> GeneratingVector:
        ti = t.inverse()
        return GeneratingVector(tuple(ti * g * t for g in self.entries))


def validate_vector(group: PermGroup, sig: Signature, vec: GeneratingVector) -> None:
    if len(vec) != sig.r:
        raise VectorError(f"{len(vec)} entries for a signature with r = {sig.r}")
    for i, (g, s) in enumerate(zip(vec, sig.periods), 1):
        if g not in group:
            raise VectorError(f"entry {i} is not in G")
        if g.order() != s:
            raise VectorError(f"entry {i} has order {g.order()}, expected {s}")
    if sig.g0 == 0:
        if vec.entries and not vec.product().is_identity():
            raise VectorError("entries do not multiply to the identity")
        sub = PermGroup(group.degree, vec.entries) if vec.entries else None
        if (sub.order if sub else 1) != group.order:
            raise VectorError("entries do not generate G")


def chi_v(group: PermGroup, cls: ClassData, sig: Signature, vec: GeneratingVector) -> ClassFunction:
    """``2 triv + 2(g0 - 1) reg + sum_i (reg - rho_<g_i>)``."""
    et = group.elements
    reg = regular_character(cls)
    total = trivial_character(cls).scale(2) + reg.scale(2 * (sig.g0 - 1))
    for g in vec:
        x = et.index(g)
        elems = cyclic_subgroup(group, x)
        sub = SubgroupRecord((g,), len(elems), -1, elems)
        total = total + (reg - induced_trivial_character(group, sub, cls))
    return total


@dataclass(frozen=True, eq=False)
class CoverAction:
    group: PermGroup
    sig: Signature
    vec: GeneratingVector
    chi_v: ClassFunction
    genus: int


def cover_action(group: PermGroup, sig: Signature, vec: GeneratingVector,
                 cls: ClassData | None = None) -> CoverAction:
    cls = cls or group.classes
    validate_vector(group, sig, vec)
    genus = genus_from_rh(group.order, sig)
    chi = chi_v(group, cls, sig, vec)
    if chi.values[0] != 2 * genus:
        raise VectorError(f"chi_V(1) = {chi.values[0]} but Riemann-Hurwitz gives 2g = {2 * genus}")
    return CoverAction(group, sig, vec, chi, genus)


# --- Hurwitz moves ---------------------------------------------------------

def hurwitz_move(vec: GeneratingVector, i: int) -> GeneratingVector:
    """``(g_i, g_{i+1}) -> (g_i g_{i+1} g_i^-1, g_i)`` at 1-based position i."""
    e = list(vec.entries)
    if not 1 <= i < len(e):
        raise IndexError(f"move position {i} outside 1..{len(e) - 1}")
    a, b = e[i - 1], e[i]
    e[i - 1], e[i] = a * b * a.inverse(), a
    return GeneratingVector(tuple(e))


def hurwitz_move_inverse(vec: GeneratingVector, i: int) -> GeneratingVector:
    """``(g_i, g_{i+1}) -> (g_{i+1}, g_{i+1}^-1 g_i g_{i+1})``."""
    e = list(vec.entries)
    if not 1 <= i < len(e):
        raise IndexError(f"move position {i} outside 1..{len(e) - 1}")
    a, b = e[i - 1], e[i]
    e[i - 1], e[i] = b, b.inverse() * a * b
    return GeneratingVector(tuple(e))


# --- enumeration -----------------------------------------------------------

def automorphism_map(group: PermGroup, images: Sequence[Permutation]) -> np.ndarray:
    """Element-index map of the automorphism sending generator k to ``images[k]``."""
    et = group.elements
    gens = [et.index(g) for g in group.generators]
    if len(images) != len(gens):
        raise AutomorphismError("need one image per generator")
    try:
        imgs = [et.index(h) for h in images]
    except Exception as exc:
        raise AutomorphismError("automorphism image not in G") from exc
    phi = np.full(et.n, -1, dtype=np.int64)
    phi[0] = 0
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for g, h in zip(gens, imgs):
            y = int(et.table[x, g])
            fy = int(et.table[phi[x], h])
            if phi[y] < 0:
                phi[y] = fy
                queue.append(y)
            elif phi[y] != fy:
                raise AutomorphismError("generator images do not define a homomorphism")
    if (phi < 0).any() or len(np.unique(phi)) != et.n:
        raise AutomorphismError("generator images do not define a bijection")
    return phi.astype(np.int32)


class _Enumerator:
    def __init__(self, group: PermGroup, cls: ClassData, sig: Signature):
        self.group = group
        self.cls = cls
        self.sig = sig
        self.et = group.elements
        order = self.et.order
        cls_of = cls.class_of
        self.by_order: dict[int, np.ndarray] = {}
        for s in set(sig.periods):
            idx = np.flatnonzero(order == s)
            self.by_order[s] = idx[np.lexsort((idx, cls_of[idx]))].astype(np.int32)

    def generates(self, tup) -> bool:
        elems = kernels.closure(self.et.table, np.asarray(tup, dtype=np.int32), self.et.n)
        return elems is not None and len(elems) == self.et.n

    def rep_tuples(self) -> Iterator[tuple[int, ...]]:
        """Vectors whose first entry is a class representative, in lexicographic order."""
        s = self.sig.periods
        r = len(s)
        if r == 0:
            if self.et.n == 1:
                yield ()
            return
        reps = [int(x) for x, o in zip(self.cls.rep_index, self.cls.orders) if o == s[0]]
        if r == 1:
            return
        et = self.et
        for first in reps:
            rows = kernels.product_tuples(
                et.table, et.inv, et.order, first,
                [self.by_order[si] for si in s[1:-1]], s[-1],
            )
            for row in rows:
                tup = tuple(int(v) for v in row)
                if self.generates(tup):
                    yield tup

    def conj_tuple(self, tup, t: int) -> tuple[int, ...]:
        return tuple(self.et.conj(x, t) for x in tup)

    def canonical(self, tup) -> tuple[int, ...]:
        """Lexicographically least conjugate of an index tuple."""
        if not tup:
            return ()
        ts = np.arange(self.et.n)
        out = []
        for x in tup:
            imgs = self.et.conj_all(x)[ts]
            m = int(imgs.min())
            out.append(m)
            ts = ts[imgs == m]
        return tuple(out)

    def moves(self, tup):
        table, inv = self.et.table, self.et.inv
        for i in range(len(tup) - 1):
            a, b = tup[i], tup[i + 1]
            fwd = list(tup)
            fwd[i], fwd[i + 1] = int(table[table[a, b], inv[a]]), a
            yield tuple(fwd)
            back = list(tup)
            back[i], back[i + 1] = b, int(table[table[inv[b], a], b])
            yield tuple(back)


def enumerate_generating_vectors(group: PermGroup, cls: ClassData | None, sig: Signature,
                                 dedup: bool = False,
                                 automorphisms: Sequence[Sequence[Permutation]] | None = None,
                                 ) -> Iterator[GeneratingVector]:
    """Generating vectors for a ``g0 = 0`` signature.

    With ``dedup`` off every tuple is produced. With ``dedup`` on, one vector is
    produced per class under simultaneous conjugation and Hurwitz moves (and the
    supplied automorphisms, each given by generator images).
    """
    if sig.g0 != 0:
        raise InadmissibleSignature("enumeration only supports quotient genus 0")
    cls = cls or group.classes
    en = _Enumerator(group, cls, sig)
    et = en.et
    if not dedup:
        for tup in en.rep_tuples():
            if not tup:
                yield GeneratingVector(())
                continue
            images = et.conj_all(tup[0])
            _, ts = np.unique(images, return_index=True)
            for t in sorted(int(t) for t in ts):
                yield GeneratingVector(tuple(et.perm(x) for x in en.conj_tuple(tup, t)))
        return
    auts = [automorphism_map(group, imgs) for imgs in (automorphisms or [])]
    seen: set[tuple[int, ...]] = set()
    for tup in en.rep_tuples():
        start = en.canonical(tup)
        if start in seen:
            continue
        seen.add(start)
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            nbrs = list(en.moves(cur))
            nbrs.extend(tuple(int(phi[x]) for x in cur) for phi in auts)
            for nb in nbrs:
                c = en.canonical(nb)
                if c not in seen:
                    seen.add(c)
                    queue.append(c)
        yield GeneratingVector(tuple(et.perm(x) for x in tup))


def vector_indices(group: PermGroup, vec: GeneratingVector) -> tuple[int, ...]:
    et = group.elements
    return tuple(et.index(g) for g in vec)
