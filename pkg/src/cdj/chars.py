"""Complex and rational irreducible characters.

Tables are computed with the Dixon-Burnside method: the class-algebra
structure constants are diagonalized simultaneously over a prime field
GF(p) with ``p = 1 mod exponent``, and each eigenvector is lifted to exact
cyclotomic values through a fixed primitive root of unity mod p. Every table,
computed or read from a file, must pass exact row and column orthogonality.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from . import kernels
from .cyclotomic import Cyclotomic, _reduction_rows, parse_cyclotomic
from .permgrp import (
    ENUMERATION_LIMIT,
    ClassData,
    ContainmentError,
    GroupTooLarge,
    PermGroup,
    SubgroupRecord,
)


class CharTableError(ValueError):
    """A table that fails validation or cannot be parsed."""


class ClassDataMismatch(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ClassFunction:
    """Values on the conjugacy classes of one ClassData."""

    classes: ClassData
    values: tuple

    def __call__(self, c: int):
        return self.values[c]

    def __len__(self):
        return len(self.values)

    def __add__(self, other: ClassFunction) -> ClassFunction:
        _same_classes(self, other)
        return ClassFunction(self.classes, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: ClassFunction) -> ClassFunction:
        _same_classes(self, other)
        return ClassFunction(self.classes, tuple(a - b for a, b in zip(self.values, other.values)))

    def scale(self, k) -> ClassFunction:
        return ClassFunction(self.classes, tuple(k * v for v in self.values))


def _same_classes(a: ClassFunction, b: ClassFunction) -> None:
    if a.classes is not b.classes:
        raise ClassDataMismatch("class functions live on different class data")


def _conj(v):
    return v.conjugate() if isinstance(v, Cyclotomic) else v


def _as_rational(v):
    if isinstance(v, Cyclotomic):
        return v.to_fraction() if v.is_rational() else v
    return v


def inner_product(a: ClassFunction, b: ClassFunction):
    """``(1/|G|) sum_c |c| a(c) conj(b(c))``; a Fraction whenever the result is rational."""
    _same_classes(a, b)
    cls = a.classes
    total = 0
    for size, x, y in zip(cls.sizes, a.values, b.values):
        if x and y:
            total = total + x * _conj(y) * size
    total = _as_rational(total)
    return Fraction(total) / cls.group_order if not isinstance(total, Cyclotomic) else total / cls.group_order


@dataclass(frozen=True, eq=False)
class CharTable:
    classes: ClassData
    rows: tuple[tuple[Cyclotomic, ...], ...]
    degrees: tuple[int, ...]
    fs_indicators: tuple[int, ...]
    exponent: int
    prime: int | None = None

    def __len__(self):
        return len(self.rows)

    def character(self, i: int) -> ClassFunction:
        return ClassFunction(self.classes, self.rows[i])

    def trivial(self) -> ClassFunction:
        return self.character(0)

    def regular(self) -> ClassFunction:
        n = self.classes.group_order
        return ClassFunction(self.classes, (n,) + (0,) * (len(self.classes) - 1))

    def value_keys(self, i: int) -> tuple:
        return tuple(v.key(self.exponent) for v in self.rows[i])


def trivial_character(cls: ClassData) -> ClassFunction:
    return ClassFunction(cls, (1,) * len(cls))


def regular_character(cls: ClassData) -> ClassFunction:
    return ClassFunction(cls, (cls.group_order,) + (0,) * (len(cls) - 1))


# --- modular helpers -------------------------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in range(2, isqrt(n) + 1):
        if n % q == 0:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def choose_prime(order: int, exponent: int) -> int:
    """Smallest prime p = 1 mod exponent with p > 2 sqrt(order) and p not dividing order."""
    p = exponent + 1
    while not (p * p > 4 * order and order % p and _is_prime(p)):
        p += exponent
    return p


def primitive_root(p: int) -> int:
    qs = _prime_factors(p - 1)
    g = 2 if p > 2 else 1
    while any(pow(g, (p - 1) // q, p) == 1 for q in qs):
        g += 1
    return g


def _roots_mod(poly: np.ndarray, p: int) -> list[int]:
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in poly:
        acc = (acc * xs + int(c)) % p
    return [int(x) for x in np.flatnonzero(acc == 0)]


def structure_constants(group: PermGroup, cls: ClassData) -> np.ndarray:
    """``a[j, k, l] = #{x in C_j : x^-1 z_l in C_k}`` for class reps ``z_l``."""
    et = group.elements
    k = len(cls)
    cx = cls.class_of.astype(np.int64)
    inv = et.inv.astype(np.intp)
    out = np.empty((k, k, k), dtype=np.int64)
    for l, z in enumerate(cls.rep_index):
        cy = cls.class_of[et.table[inv, int(z)]].astype(np.int64)
        out[:, :, l] = np.bincount(cx * k + cy, minlength=k * k).reshape(k, k)
    return out


def _split_spaces(mats: np.ndarray, p: int) -> list[np.ndarray]:
    """Common 1-dim eigenspaces of the commuting matrices ``mats[j]`` over GF(p)."""
    k = mats.shape[1]
    spaces = [np.eye(k, dtype=np.int64)]
    for a in mats[1:]:
        if all(s.shape[0] == 1 for s in spaces):
            break
        at = a.T % p
        nxt = []
        for basis in spaces:
            d = basis.shape[0]
            if d == 1:
                nxt.append(basis)
                continue
            _, pivots = kernels.rref_mod(basis, p)
            m = ((basis @ at) % p)[:, pivots]
            if np.all(m == np.diag(np.diag(m))) and np.all(np.diag(m) == m[0, 0]):
                nxt.append(basis)
                continue
            roots = _roots_mod(kernels.charpoly_mod(m, p), p)
            found = 0
            for lam in roots:
                coeffs = kernels.nullspace_mod((m.T - lam * np.eye(d, dtype=np.int64)) % p, p)
                if coeffs.shape[0] == 0:
                    continue
                sub, piv = kernels.rref_mod((coeffs @ basis) % p, p)
                nxt.append(sub[: len(piv)])
                found += len(piv)
            if found != d:
                raise CharTableError(f"class matrix not diagonalizable mod {p}")
        spaces = nxt
    if any(s.shape[0] != 1 for s in spaces):
        raise CharTableError("class algebra did not split into one-dimensional spaces")
    return [s[0] for s in spaces]


def _lift_values(chi_mod: np.ndarray, d: int, cls: ClassData, p: int, z: int) -> list[Cyclotomic]:
    e = cls.exponent
    values = []
    for c, o in enumerate(cls.orders):
        zo = pow(z, e // o, p)
        inv_o = pow(o, -1, p)
        pw = cls.powers[c]
        samples = [int(chi_mod[pw[l]]) for l in range(o)]
        coeffs = {}
        total = 0
        for kk in range(o):
            w = pow(zo, (-kk) % o, p)
            acc, t = 0, 1
            for l in range(o):
                acc += samples[l] * t
                t = t * w % p
            m = acc * inv_o % p
            if m > d:
                raise CharTableError("eigenvalue multiplicity out of range while lifting")
            if m:
                coeffs[kk * (e // o)] = m
                total += m
        if total != d:
            raise CharTableError("eigenvalue multiplicities do not sum to the degree")
        values.append(Cyclotomic(e, coeffs))
    return values


def character_table(group: PermGroup, cls: ClassData | None = None) -> CharTable:
    if group.order > ENUMERATION_LIMIT:
        raise GroupTooLarge(
            f"|G| = {group.order} is beyond the table bound {ENUMERATION_LIMIT}; "
            "supply a character table file instead"
        )
    cls = cls or group.classes
    n = cls.group_order
    k = len(cls)
    e = cls.exponent
    if k == 1:
        return _finish(cls, [[Cyclotomic(e, {0: 1})]], None)
    p = choose_prime(n, e)
    z = pow(primitive_root(p), (p - 1) // e, p)
    consts = structure_constants(group, cls)
    # mats[j][k, l] = a[j, k, l]; omega is a right eigenvector of each
    mats = consts % p
    vecs = _split_spaces(mats, p)
    inv_cls = [cls.inverse_class(c) for c in range(k)]
    size_inv = [pow(s, -1, p) for s in cls.sizes]
    rows = []
    for w in vecs:
        w = w * pow(int(w[0]), -1, p) % p
        s = sum(int(w[j]) * int(w[inv_cls[j]]) * size_inv[j] for j in range(k)) % p
        target = n * pow(s, -1, p) % p
        d = next((d for d in range(1, isqrt(n) + 1) if d * d % p == target and n % d == 0), None)
        if d is None:
            raise CharTableError("no admissible degree for an eigenvector")
        chi_mod = np.asarray([int(w[j]) * d * size_inv[j] % p for j in range(k)], dtype=np.int64)
        rows.append(_lift_values(chi_mod, d, cls, p, z))
    return _finish(cls, rows, p)


def _fs_indicator(row, cls: ClassData) -> int:
    total = 0
    for c, size in enumerate(cls.sizes):
        total = total + row[cls.power_class(c, 2)] * size
    nu = Cyclotomic.coerce(total).to_fraction() / cls.group_order
    if nu not in (-1, 0, 1):
        raise CharTableError(f"Frobenius-Schur indicator {nu} outside {{-1, 0, 1}}")
    return int(nu)


def _finish(cls: ClassData, rows, prime) -> CharTable:
    e = cls.exponent
    degrees = []
    for row in rows:
        d = row[0].to_fraction() if row[0].is_rational() else None
        if d is None or d.denominator != 1 or d <= 0:
            raise CharTableError("character value at the identity is not a positive integer")
        degrees.append(int(d))
    keyed = [(deg, tuple(v.key(e) for v in row), row) for deg, row in zip(degrees, rows)]
    triv = [i for i, (deg, _, row) in enumerate(keyed)
            if deg == 1 and all(v == 1 for v in row)]
    if len(triv) != 1:
        raise CharTableError("table must contain exactly one trivial character")
    first = keyed.pop(triv[0])
    keyed.sort(key=lambda t: (t[0], t[1]))
    keyed.insert(0, first)
    rows = tuple(tuple(r) for _, _, r in keyed)
    degrees = tuple(d for d, _, _ in keyed)
    verify_orthogonality(cls, rows)
    fs = tuple(_fs_indicator(r, cls) for r in rows)
    return CharTable(cls, rows, degrees, fs, e, prime)


def _sparse(v: Cyclotomic, e: int) -> list[tuple[int, object]]:
    f = e // v.n
    return [(j * f % e, c) for j, c in v.coeffs.items()]


def _reduce_dense(acc: dict[int, object], e: int) -> tuple:
    rows = _reduction_rows(e)
    out = [0] * len(rows[0])
    for j, c in acc.items():
        if c:
            for i, r in enumerate(rows[j]):
                if r:
                    out[i] += c * r
    return tuple(out)


def verify_orthogonality(cls: ClassData, rows) -> None:
    """Exact row and column orthogonality plus the degree-square sum."""
    e = cls.exponent
    n = cls.group_order
    k = len(cls)
    if len(rows) != k:
        raise CharTableError(f"{len(rows)} rows for {k} classes")
    for row in rows:
        if len(row) != k:
            raise CharTableError("row length differs from the number of classes")
        for v in row:
            if e % v.n:
                raise CharTableError(f"value conductor {v.n} does not divide the exponent {e}")
    sparse = [[_sparse(v, e) for v in row] for row in rows]
    zero = (0,) * (len(_reduction_rows(e)[0]) - 1)
    for a in range(k):
        for b in range(a, k):
            acc: dict[int, object] = {}
            for c in range(k):
                size = cls.sizes[c]
                for i, x in sparse[a][c]:
                    for j, y in sparse[b][c]:
                        t = (i - j) % e
                        acc[t] = acc.get(t, 0) + size * x * y
            want = (n if a == b else 0,) + zero
            if _reduce_dense(acc, e) != want:
                raise CharTableError(f"row orthogonality fails for rows {a}, {b}")
    for c in range(k):
        for c2 in range(c, k):
            acc = {}
            for r in range(k):
                for i, x in sparse[r][c]:
                    for j, y in sparse[r][c2]:
                        t = (i - j) % e
                        acc[t] = acc.get(t, 0) + x * y
            want = (n // cls.sizes[c] if c == c2 else 0,) + zero
            if _reduce_dense(acc, e) != want:
                raise CharTableError(f"column orthogonality fails for classes {c}, {c2}")
    total = 0
    for row in rows:
        d = row[0].to_fraction()
        total += d * d
    if total != n:
        raise CharTableError(f"sum of squared degrees {total} != {n}")


# --- rational characters ---------------------------------------------------

@dataclass(frozen=True)
class RationalCharacter:
    member_rows: tuple[int, ...]
    schur_index: int
    values: tuple[int, ...]
    degree: int

    @property
    def representative(self) -> int:
        return self.member_rows[0]

    @property
    def orbit_size(self) -> int:
        return len(self.member_rows)

    @property
    def complex_degree(self) -> int:
        return self.degree // (self.schur_index * len(self.member_rows))

    def as_class_function(self, cls: ClassData) -> ClassFunction:
        return ClassFunction(cls, self.values)


def galois_orbits(table: CharTable) -> list[tuple[int, ...]]:
    cls = table.classes
    keys = [table.value_keys(i) for i in range(len(table))]
    lookup = {key: i for i, key in enumerate(keys)}
    seen = [False] * len(table)
    orbits = []
    for i in range(len(table)):
        if seen[i]:
            continue
        orbit = {i}
        for pm in cls.power_maps.values():
            j = lookup.get(tuple(keys[i][pm[c]] for c in range(len(cls))))
            if j is None:
                raise CharTableError("power map does not permute the table rows")
            orbit.add(j)
        for j in orbit:
            seen[j] = True
        orbits.append(tuple(sorted(orbit)))
    return orbits


def rational_characters(table: CharTable, schur_overrides: dict[int, int] | None = None
                        ) -> list[RationalCharacter]:
    """Galois-orbit sums scaled by the Schur index.

    The index is 2 for rows with Frobenius-Schur indicator -1 and 1 otherwise;
    ``schur_overrides`` maps a complex row index to a pinned index for its orbit.
    """
    overrides = dict(schur_overrides or {})
    out = []
    for orbit in galois_orbits(table):
        pinned = {overrides[i] for i in orbit if i in overrides}
        if len(pinned) > 1:
            raise CharTableError(f"conflicting Schur overrides inside orbit {orbit}")
        if pinned:
            m = pinned.pop()
            if m < 1:
                raise CharTableError("Schur index override must be positive")
        else:
            m = 2 if table.fs_indicators[orbit[0]] == -1 else 1
        values = []
        for c in range(len(table.classes)):
            total = sum((table.rows[i][c] for i in orbit), Cyclotomic(1))
            q = total.to_fraction() * m
            if q.denominator != 1:
                raise CharTableError("orbit sum is not integral")
            values.append(int(q))
        out.append(RationalCharacter(orbit, m, tuple(values), values[0]))
    triv = out.pop(0)
    out.sort(key=lambda r: (r.degree, r.values))
    return [triv] + out


# --- permutation characters ------------------------------------------------

def _class_counts(cls: ClassData, sub: SubgroupRecord) -> np.ndarray:
    return np.bincount(cls.class_of[np.asarray(sub.elements, dtype=np.intp)], minlength=len(cls))


def induced_trivial_character(group: PermGroup, sub: SubgroupRecord,
                              cls: ClassData | None = None) -> ClassFunction:
    """Permutation character of G on the cosets of ``sub``."""
    cls = cls or group.classes
    for g in sub.generators:
        if g not in group:
            raise ContainmentError("H is not contained in G")
    counts = _class_counts(cls, sub)
    n = cls.group_order
    values = []
    for c, size in enumerate(cls.sizes):
        v = Fraction(n * int(counts[c]), sub.order * size)
        if v.denominator != 1:
            raise CharTableError("induced character is not integral")
        values.append(int(v))
    return ClassFunction(cls, tuple(values))


def fixed_space_dim(chi: ClassFunction, sub: SubgroupRecord) -> Fraction:
    """``(1/|H|) sum_{h in H} chi(h)`` by summing over the elements of H."""
    cls = chi.classes
    total = 0
    for h in np.asarray(sub.elements, dtype=np.intp):
        total = total + chi.values[int(cls.class_of[h])]
    total = _as_rational(total)
    if isinstance(total, Cyclotomic):
        raise CharTableError("fixed-space dimension is not rational")
    return Fraction(total) / sub.order


# --- table files -----------------------------------------------------------

def format_chartable(table: CharTable, group_id: str) -> str:
    cls = table.classes
    lines = [
        "# chartable",
        f"group {group_id}",
        f"exponent {table.exponent}",
        f"classes {len(cls)}",
        " ".join(map(str, cls.sizes)),
        " ".join(map(str, cls.orders)),
    ]
    for d, row in zip(table.degrees, table.rows):
        lines.append(" ".join([str(d)] + [v.format(table.exponent) for v in row]))
    return "\n".join(lines) + "\n"


def parse_chartable(text: str, cls: ClassData, expected_group: str | None = None) -> CharTable:
    """Read a table file whose columns follow ``cls``'s class order, then validate it."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not (ln.startswith("#") and ln != "# chartable")]
    if not lines or lines[0] != "# chartable":
        raise CharTableError("missing '# chartable' header")

    def field(idx: int, name: str) -> str:
        if idx >= len(lines) or not lines[idx].startswith(name + " "):
            raise CharTableError(f"expected '{name} ...' on data line {idx + 1}")
        return lines[idx][len(name) + 1:].strip()

    group_id = field(1, "group")
    if expected_group is not None and group_id != expected_group:
        raise CharTableError(f"table is for group {group_id!r}, not {expected_group!r}")
    try:
        e = int(field(2, "exponent"))
        k = int(field(3, "classes"))
        sizes = tuple(int(t) for t in lines[4].split())
        orders = tuple(int(t) for t in lines[5].split())
    except (ValueError, IndexError) as exc:
        raise CharTableError(f"bad table header: {exc}") from None
    if e != cls.exponent or k != len(cls):
        raise CharTableError("exponent or class count disagrees with the group")
    if sizes != cls.sizes or orders != cls.orders:
        raise CharTableError("class sizes or orders disagree with the group's class order")
    body = lines[6:]
    if len(body) != k:
        raise CharTableError(f"expected {k} character rows, found {len(body)}")
    rows = []
    for ln in body:
        toks = ln.split()
        if len(toks) != k + 1:
            raise CharTableError(f"row has {len(toks) - 1} values, expected {k}: {ln!r}")
        try:
            row = [parse_cyclotomic(t, e) for t in toks[1:]]
        except ValueError as exc:
            raise CharTableError(str(exc)) from None
        if row[0] != int(toks[0]):
            raise CharTableError(f"stated degree {toks[0]} differs from the identity value")
        rows.append(row)
    return _finish(cls, rows, None)


__all__ = [
    "CharTable",
    "CharTableError",
    "ClassDataMismatch",
    "ClassFunction",
    "RationalCharacter",
    "character_table",
    "choose_prime",
    "fixed_space_dim",
    "format_chartable",
    "galois_orbits",
    "induced_trivial_character",
    "inner_product",
    "parse_chartable",
    "primitive_root",
    "rational_characters",
    "regular_character",
    "structure_constants",
    "trivial_character",
    "verify_orthogonality",
]
