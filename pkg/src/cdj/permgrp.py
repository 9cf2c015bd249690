"""Finite permutation groups.

A :class:`PermGroup` is built from generators and carries a stabilizer chain
(deterministic Schreier-Sims). Groups small enough to enumerate also get an
:class:`ElementTable`: every element gets an integer index (identity is 0) and
products are looked up in a full Cayley table. Everything downstream
(classes, characters, generating vectors) works on those indices.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd, lcm

import numpy as np

from . import kernels
from .perm import MAX_DEGREE, MalformedPermutation, Permutation

ENUMERATION_LIMIT = 10_000
SUBGROUP_ORDER_DEFAULT = 12
SUBGROUP_HARD_CAP = 64


class GroupTooLarge(RuntimeError):
    pass


class ContainmentError(ValueError):
    pass


class SubgroupBoundError(ValueError):
    pass


def _inverse_array(p: np.ndarray) -> np.ndarray:
    inv = np.empty_like(p)
    inv[p] = np.arange(len(p), dtype=p.dtype)
    return inv


class StabChain:
    """Base, strong generators per level and explicit transversals."""

    def __init__(self, degree: int, generators: list[np.ndarray]):
        self.degree = degree
        self.identity = np.arange(degree, dtype=np.int32)
        self.base: list[int] = []
        self.strong: list[list[np.ndarray]] = []
        self.transversals: list[dict[int, np.ndarray]] = []
        self._inverses: list[dict[int, np.ndarray]] = []
        self._build([g for g in generators if not np.array_equal(g, self.identity)])

    def _orbit(self, level: int) -> None:
        beta = self.base[level]
        trans = {beta: self.identity}
        queue = [beta]
        for pt in queue:
            u = trans[pt]
            for s in self.strong[level]:
                q = int(s[pt])
                if q not in trans:
                    trans[q] = s[u]
                    queue.append(q)
        self.transversals[level] = trans
        self._inverses[level] = {}

    def _uinv(self, level: int, pt: int) -> np.ndarray:
        cache = self._inverses[level]
        if pt not in cache:
            cache[pt] = _inverse_array(self.transversals[level][pt])
        return cache[pt]

    def _add_level(self, point: int) -> None:
        self.base.append(point)
        self.strong.append([])
        self.transversals.append({})
        self._inverses.append({})

    def _build(self, gens: list[np.ndarray]) -> None:
        for g in gens:
            if all(g[b] == b for b in self.base):
                self._add_level(int(np.flatnonzero(g != self.identity)[0]))
        for i in range(len(self.base)):
            fixed = self.base[:i]
            self.strong[i] = [g for g in gens if all(g[b] == b for b in fixed)]
            self._orbit(i)
        i = len(self.base) - 1
        while i >= 0:
            jumped = False
            for pt, u in list(self.transversals[i].items()):
                for s in list(self.strong[i]):
                    q = int(s[pt])
                    sg = self._uinv(i, q)[s[u]]
                    if np.array_equal(sg, self.identity):
                        continue
                    h, j = self.sift(sg, i + 1)
                    if j < len(self.base) or not np.array_equal(h, self.identity):
                        if j == len(self.base):
                            self._add_level(int(np.flatnonzero(h != self.identity)[0]))
                        for level in range(i + 1, j + 1):
                            self.strong[level].append(h)
                            self._orbit(level)
                        i = j
                        jumped = True
                        break
                if jumped:
                    break
            if not jumped:
                i -= 1

    def sift(self, g: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
        for i in range(start, len(self.base)):
            b = int(g[self.base[i]])
            if b not in self.transversals[i]:
                return g, i
            g = self._uinv(i, b)[g]
        return g, len(self.base)

    def contains(self, g: np.ndarray) -> bool:
        h, j = self.sift(np.asarray(g, dtype=np.int32))
        return j == len(self.base) and np.array_equal(h, self.identity)

    @property
    def order(self) -> int:
        n = 1
        for t in self.transversals:
            n *= len(t)
        return n

    def enumerate(self) -> np.ndarray:
        """All elements as rows, identity first, in a fixed deterministic order."""
        elems = self.identity[None, :]
        for trans in reversed(self.transversals):
            elems = np.concatenate([u[elems] for u in trans.values()])
        return elems


class PermGroup:
    """A permutation group on ``{0, ..., degree-1}`` given by generators."""

    def __init__(self, degree: int, generators, label: str | None = None):
        if degree < 1 or degree > MAX_DEGREE:
            raise MalformedPermutation(f"degree {degree} outside 1..{MAX_DEGREE}")
        gens = []
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if g.degree != degree:
                raise MalformedPermutation(f"generator of degree {g.degree}, expected {degree}")
            gens.append(g)
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(gens)
        self.label = label

    def __repr__(self):
        return f"PermGroup(label={self.label!r}, degree={self.degree}, order={self.order})"

    @cached_property
    def chain(self) -> StabChain:
        return StabChain(self.degree, [g.as_array() for g in self.generators])

    @property
    def order(self) -> int:
        return self.chain.order

    def __contains__(self, g: Permutation) -> bool:
        return g.degree == self.degree and self.chain.contains(g.as_array())

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    @cached_property
    def elements(self) -> ElementTable:
        if self.order > ENUMERATION_LIMIT:
            raise GroupTooLarge(
                f"|G| = {self.order} exceeds the enumeration bound {ENUMERATION_LIMIT}"
            )
        return ElementTable(self)

    @cached_property
    def classes(self) -> ClassData:
        return conjugacy_classes(self)

    @cached_property
    def exponent(self) -> int:
        return int(lcm(1, *map(int, np.unique(self.elements.order))))

    def generator_hash(self) -> str:
        text = f"{self.degree}|" + ";".join(g.to_cycle_string() for g in self.generators)
        return hashlib.sha256(text.encode()).hexdigest()


def build_group(degree: int, gens, id: str | None = None) -> PermGroup:
    group = PermGroup(degree, gens, id)
    _ = group.chain
    return group


class ElementTable:
    """Indexed elements of a group with a full Cayley table."""

    def __init__(self, group: PermGroup):
        chain = group.chain
        self.degree = group.degree
        self.perms = np.ascontiguousarray(chain.enumerate(), dtype=np.int32)
        self.n = self.perms.shape[0]
        self.base = np.asarray(chain.base or [0], dtype=np.int32)
        self.radix = max(self.degree, 2)
        if len(self.base) * np.log2(self.radix) >= 62:
            raise GroupTooLarge("base images do not fit in a 64-bit key")
        self._weights = self.radix ** np.arange(len(self.base), dtype=np.int64)
        keys = self.perms[:, self.base].astype(np.int64) @ self._weights
        self._key_order = np.argsort(keys, kind="stable").astype(np.int32)
        self._sorted_keys = keys[self._key_order]
        self.table = kernels.cayley_table(
            self.perms, self.base, self._sorted_keys, self._key_order, self.radix
        )
        inv_rows = np.empty_like(self.perms)
        np.put_along_axis(
            inv_rows, self.perms, np.arange(self.degree, dtype=np.int32)[None, :], axis=1
        )
        self.inv = self.indices(inv_rows)
        self.order = self._orders()

    def _orders(self) -> np.ndarray:
        order = np.zeros(self.n, dtype=np.int32)
        order[0] = 1
        everything = np.arange(self.n)
        cur = everything.copy()
        k = 1
        todo = everything[1:]
        while todo.size:
            k += 1
            cur[todo] = self.table[cur[todo], todo]
            done = cur[todo] == 0
            order[todo[done]] = k
            todo = todo[~done]
        return order

    def indices(self, rows: np.ndarray) -> np.ndarray:
        rows = np.asarray(rows, dtype=np.int32)
        keys = rows[:, self.base].astype(np.int64) @ self._weights
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, self.n - 1)
        idx = self._key_order[pos]
        if not np.array_equal(self.perms[idx], rows):
            raise ContainmentError("permutation is not an element of the group")
        return idx

    def index(self, g: Permutation | np.ndarray) -> int:
        arr = g.as_array() if isinstance(g, Permutation) else np.asarray(g, dtype=np.int32)
        return int(self.indices(arr[None, :])[0])

    def perm(self, i: int) -> Permutation:
        return Permutation(self.perms[int(i)])

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def power(self, x: int, k: int) -> int:
        k %= int(self.order[x])
        result = 0
        for _ in range(k):
            result = int(self.table[result, x])
        return result

    def conj(self, x: int, t: int) -> int:
        """``t^-1 x t``."""
        return int(self.table[self.table[self.inv[t], x], t])

    def conj_all(self, x: int) -> np.ndarray:
        """``t^-1 x t`` for every ``t``, indexed by ``t``."""
        left = self.table[self.inv, x].astype(np.intp)
        return self.table[left, np.arange(self.n)].astype(np.int32)

    def conj_map(self, t: int) -> np.ndarray:
        """``x -> t^-1 x t`` for every ``x``."""
        left = self.table[int(self.inv[t])].astype(np.intp)
        return self.table[left, t].astype(np.int32)

    def lex_rank(self) -> np.ndarray:
        """Rank of each element in lexicographic order of image arrays."""
        order = np.lexsort(self.perms.T[::-1])
        rank = np.empty(self.n, dtype=np.int64)
        rank[order] = np.arange(self.n)
        return rank


@dataclass(frozen=True, eq=False)
class ClassData:
    """Conjugacy classes, sorted by (element order, size, canonical rep)."""

    reps: tuple[Permutation, ...]
    rep_index: np.ndarray
    sizes: tuple[int, ...]
    orders: tuple[int, ...]
    class_of: np.ndarray
    power_maps: dict[int, tuple[int, ...]]
    powers: tuple[tuple[int, ...], ...]
    exponent: int
    group_order: int

    def __len__(self):
        return len(self.sizes)

    def power_class(self, c: int, k: int) -> int:
        """Class of ``rep_c ** k`` for any integer ``k``."""
        row = self.powers[c]
        return row[k % len(row)]

    def members(self, c: int) -> np.ndarray:
        return np.flatnonzero(self.class_of == c)

    def inverse_class(self, c: int) -> int:
        return self.power_class(c, -1)


def conjugacy_classes(group: PermGroup) -> ClassData:
    et = group.elements
    gen_idx = [et.index(g) for g in group.generators]
    if gen_idx:
        labels = kernels.orbit_labels(np.stack([et.conj_map(t) for t in gen_idx]))
    else:
        labels = np.zeros(et.n, dtype=np.int32)
    rank = et.lex_rank()
    uniq, inverse, counts = np.unique(labels, return_inverse=True, return_counts=True)
    # canonical representative: lexicographically smallest member
    best = np.full(len(uniq), np.iinfo(np.int64).max)
    np.minimum.at(best, inverse, rank)
    rank_to_elem = np.empty(et.n, dtype=np.int64)
    rank_to_elem[rank] = np.arange(et.n)
    rep_elems = rank_to_elem[best]
    keys = [(int(et.order[r]), int(c), int(b)) for r, c, b in zip(rep_elems, counts, best)]
    perm = sorted(range(len(uniq)), key=keys.__getitem__)
    remap = np.empty(len(uniq), dtype=np.int32)
    remap[perm] = np.arange(len(uniq), dtype=np.int32)
    class_of = remap[inverse].astype(np.int32)
    rep_index = np.asarray([rep_elems[i] for i in perm], dtype=np.int32)
    orders = tuple(int(et.order[r]) for r in rep_index)
    sizes = tuple(int(counts[i]) for i in perm)
    exponent = int(lcm(1, *orders))
    powers = []
    for r, o in zip(rep_index, orders):
        row = [0]
        cur = 0
        for _ in range(1, o):
            cur = int(et.table[cur, r])
            row.append(int(class_of[cur]))
        powers.append(tuple(row))
    power_maps = {}
    for k in range(1, max(exponent, 2)):
        if gcd(k, exponent) == 1:
            power_maps[k] = tuple(powers[c][k % orders[c]] for c in range(len(orders)))
    return ClassData(
        reps=tuple(et.perm(r) for r in rep_index),
        rep_index=rep_index,
        sizes=sizes,
        orders=orders,
        class_of=class_of,
        power_maps=power_maps,
        powers=tuple(powers),
        exponent=exponent,
        group_order=et.n,
    )


@dataclass(frozen=True, eq=False)
class SubgroupRecord:
    generators: tuple[Permutation, ...]
    order: int
    conj_class_id: int
    elements: np.ndarray = field(repr=False)

    @property
    def label(self) -> str:
        return f"{self.order}.{self.conj_class_id}"


def subgroup_record(group: PermGroup, generators, conj_class_id: int = -1) -> SubgroupRecord:
    """Record for the subgroup generated by ``generators`` (must lie in ``group``)."""
    et = group.elements
    gens = tuple(generators)
    try:
        idx = [et.index(g) for g in gens]
    except ContainmentError as exc:
        raise ContainmentError("subgroup generator not in G") from exc
    elems = kernels.closure(et.table, np.asarray(idx, dtype=np.int32), et.n)
    return SubgroupRecord(gens, len(elems), conj_class_id, elems)


def trivial_subgroup(group: PermGroup) -> SubgroupRecord:
    return SubgroupRecord((), 1, 0, np.zeros(1, dtype=np.int32))


def whole_group(group: PermGroup) -> SubgroupRecord:
    return subgroup_record(group, group.generators)


def cyclic_subgroup(group: PermGroup, x: int) -> np.ndarray:
    """Sorted element indices of ``<x>``."""
    et = group.elements
    out = [0]
    cur = x
    while cur != 0:
        out.append(cur)
        cur = int(et.table[cur, x])
    return np.asarray(sorted(out), dtype=np.int32)


def _conjugates(et: ElementTable, elems: np.ndarray):
    """Sorted element tuples of all conjugates, plus the conjugators realizing them."""
    conj = np.stack([et.conj_all(int(x)) for x in elems])
    conj.sort(axis=0)
    cols, first = np.unique(conj.T, axis=0, return_index=True)
    return cols, first


def subgroups_up_to_order(group: PermGroup, max_order: int = SUBGROUP_ORDER_DEFAULT,
                          hard_cap: int = SUBGROUP_HARD_CAP) -> list[SubgroupRecord]:
    """One record per conjugacy class of subgroups of order at most ``max_order``.

    Cyclic subgroups are grown one generator at a time with order pruning;
    conjugates are deduplicated through the full set of conjugate element sets.
    """
    if max_order < 1:
        raise SubgroupBoundError("max_order must be at least 1")
    if max_order > hard_cap:
        raise SubgroupBoundError(
            f"max_order {max_order} exceeds the safety bound {hard_cap}; raise hard_cap explicitly"
        )
    et = group.elements
    known: dict[tuple[int, ...], int] = {}
    found: list[tuple[tuple[int, ...], list[int]]] = []

    def register(elems: np.ndarray, gens: list[int]) -> bool:
        key = tuple(int(e) for e in elems)
        if key in known:
            return False
        cols, first = _conjugates(et, elems)
        cid = len(found)
        for col in cols:
            known[tuple(int(e) for e in col)] = cid
        canon = tuple(int(e) for e in cols[0])
        t = int(first[0])
        found.append((canon, [et.conj(g, t) for g in gens]))
        return True

    register(np.zeros(1, dtype=np.int32), [])
    cands = np.flatnonzero((et.order <= max_order) & (et.order > 1))
    head = 0
    while head < len(found):
        canon, gens = found[head]
        head += 1
        size = len(canon)
        inside = set(canon)
        seen: set[tuple[int, ...]] = set()
        for x in cands:
            x = int(x)
            if x in inside or lcm(size, int(et.order[x])) > max_order:
                continue
            elems = kernels.closure(et.table, np.asarray(gens + [x], dtype=np.int32), max_order)
            if elems is None:
                continue
            key = tuple(int(e) for e in elems)
            if key in seen:
                continue
            seen.add(key)
            register(elems, gens + [x])
    ordered = sorted(found, key=lambda item: (len(item[0]), item[0]))
    records = []
    per_order: dict[int, int] = {}
    for canon, gens in ordered:
        k = per_order.get(len(canon), 0)
        per_order[len(canon)] = k + 1
        records.append(SubgroupRecord(
            tuple(et.perm(g) for g in gens), len(canon), k, np.asarray(canon, dtype=np.int32)
        ))
    return records


@dataclass(frozen=True, eq=False)
class CosetAction:
    """Action of G on the right cosets ``Hx``."""

    group: PermGroup
    images: tuple[Permutation, ...]
    coset_label: np.ndarray
    coset_reps: np.ndarray
    source: PermGroup = field(repr=False)

    @property
    def degree(self) -> int:
        return len(self.coset_reps)

    def image(self, x: int) -> Permutation:
        """Permutation of cosets induced by the element with index ``x``."""
        et = self.source.elements
        moved = et.table[self.coset_reps, x]
        return Permutation(self.coset_label[moved])


def coset_action(group: PermGroup, sub: SubgroupRecord) -> CosetAction:
    et = group.elements
    for g in sub.generators:
        if g not in group:
            raise ContainmentError("H is not contained in G")
    elems = np.asarray(sub.elements, dtype=np.intp)
    label = et.table[elems[0]].astype(np.int64)
    for h in elems[1:]:
        np.minimum(label, et.table[h], out=label)
    reps, coset_of = np.unique(label, return_inverse=True)
    coset_of = coset_of.astype(np.int32)
    gen_idx = [et.index(g) for g in group.generators]
    images = tuple(Permutation(coset_of[et.table[reps, g]]) for g in gen_idx)
    label_str = f"{group.label}/H{sub.order}" if group.label else None
    image_group = PermGroup(len(reps), images, label_str)
    return CosetAction(image_group, images, coset_of, reps.astype(np.int32), group)
