"""Dense permutations on ``{0, ..., n-1}`` and disjoint-cycle notation.

Products compose left to right: ``(p * q)(x) = q(p(x))``.
Cycle notation in files is 1-based, e.g. ``(1,2)(3,4,5)``; ``()`` is the identity.
"""
from __future__ import annotations

import re
from math import lcm

import numpy as np

MAX_DEGREE = 20000


class MalformedPermutation(ValueError):
    """Raised for image arrays that are not bijections, or bad cycle syntax."""


class Permutation:
    __slots__ = ("images", "_hash")

    def __init__(self, images):
        imgs = tuple(int(i) for i in images)
        n = len(imgs)
        if n > MAX_DEGREE:
            raise MalformedPermutation(f"degree {n} exceeds the cap {MAX_DEGREE}")
        seen = bytearray(n)
        for i in imgs:
            if not 0 <= i < n or seen[i]:
                raise MalformedPermutation(f"not a bijection on {n} points: {imgs[:20]}")
            seen[i] = 1
        self.images = imgs
        self._hash = hash(imgs)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles, degree: int) -> Permutation:
        """Build from 0-based cycles."""
        imgs = list(range(degree))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if not 0 <= a < degree:
                    raise MalformedPermutation(f"point {a + 1} outside 1..{degree}")
                if a in seen:
                    raise MalformedPermutation(f"point {a + 1} repeated in cycles")
                seen.add(a)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                imgs[a] = b
        return cls(imgs)

    @classmethod
    def parse(cls, text: str, degree: int) -> Permutation:
        """Parse 1-based disjoint-cycle notation."""
        return cls.from_cycles(parse_cycles(text), degree)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        o = other.images
        return Permutation(o[i] for i in self.images)

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def __pow__(self, k: int) -> Permutation:
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Permutation.identity(self.degree)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point (0-based)."""
        seen = bytearray(self.degree)
        out = []
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                continue
            cyc = [start]
            seen[start] = 1
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen[j] = 1
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_lengths(self) -> list[int]:
        """Lengths of all cycles, fixed points included."""
        lengths = [len(c) for c in self.cycles()]
        return lengths + [1] * (self.degree - sum(lengths))

    def order(self) -> int:
        return lcm(1, *(len(c) for c in self.cycles()))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def to_cycle_string(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + ",".join(str(a + 1) for a in c) + ")" for c in cycles)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.images, dtype=np.int32)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.images < other.images

    def __repr__(self):
        return f"Permutation({self.to_cycle_string()!r}, degree={self.degree})"


_CYCLE = re.compile(r"\(\s*(\d+(?:\s*,\s*\d+)*)?\s*\)")


def parse_cycles(text: str) -> list[list[int]]:
    """Split ``(1,2)(3,4,5)`` into 0-based point lists."""
    s = text.strip()
    if not s:
        raise MalformedPermutation("empty permutation")
    cycles = []
    pos = 0
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = _CYCLE.match(s, pos)
        if m is None:
            raise MalformedPermutation(f"bad cycle syntax near {s[pos:pos + 20]!r}")
        if m.group(1):
            pts = [int(t) - 1 for t in m.group(1).split(",")]
            if any(p < 0 for p in pts):
                raise MalformedPermutation("points are 1-based")
            cycles.append(pts)
        pos = m.end()
    return cycles
