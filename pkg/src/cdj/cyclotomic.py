"""Exact arithmetic in cyclotomic fields Q(zeta_n).

A :class:`Cyclotomic` is a sparse rational combination of powers of
``zeta_n = exp(2 pi i / n)``. Values are kept unreduced; comparisons lift both
sides to a common conductor and reduce modulo the cyclotomic polynomial.
"""
from __future__ import annotations

import cmath
import re
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from numbers import Rational

Number = int | Fraction


def _poly_divide(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (lowest degree first, monic divisor)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divide(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """Row j holds x^j mod Phi_n in the basis 1, x, ..., x^(phi(n)-1)."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi[i]
    return tuple(rows)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


class Cyclotomic:
    __slots__ = ("n", "coeffs")
    # equal values may carry different conductors, so there is no cheap hash;
    # use key() for dict keys
    __hash__ = None

    def __init__(self, n: int, coeffs: dict[int, Number] | None = None):
        if n < 1:
            raise ValueError("conductor must be positive")
        self.n = n
        clean: dict[int, Number] = {}
        for j, c in (coeffs or {}).items():
            if c:
                j %= n
                v = clean.get(j, 0) + c
                if v:
                    clean[j] = v
                else:
                    clean.pop(j, None)
        self.coeffs = clean

    @classmethod
    def from_rational(cls, value: Number) -> Cyclotomic:
        return cls(1, {0: value})

    @classmethod
    def root(cls, n: int, k: int = 1) -> Cyclotomic:
        return cls(n, {k: 1})

    @staticmethod
    def coerce(value) -> Cyclotomic:
        if isinstance(value, Cyclotomic):
            return value
        if isinstance(value, (int, Rational)):
            return Cyclotomic(1, {0: value if isinstance(value, int) else Fraction(value)})
        raise TypeError(f"cannot treat {type(value).__name__} as a cyclotomic number")

    def lift(self, m: int) -> Cyclotomic:
        if m % self.n:
            raise ValueError(f"{m} is not a multiple of the conductor {self.n}")
        f = m // self.n
        return Cyclotomic(m, {j * f: c for j, c in self.coeffs.items()})

    def reduced(self, n: int | None = None) -> tuple[Number, ...]:
        """Coordinates in the power basis of Q(zeta_n), n a multiple of self.n."""
        x = self if n is None or n == self.n else self.lift(n)
        rows = _reduction_rows(x.n)
        out = [0] * len(rows[0])
        for j, c in x.coeffs.items():
            for i, r in enumerate(rows[j]):
                if r:
                    out[i] += c * r
        return tuple(out)

    def key(self, n: int | None = None) -> tuple[Number, ...]:
        """Hashable canonical form at conductor n (default: own conductor)."""
        return self.reduced(n)

    def _binary(self, other):
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return None, None, None
        m = lcm(self.n, other.n)
        return m, self.lift(m), other.lift(m)

    def __add__(self, other):
        m, a, b = self._binary(other)
        if m is None:
            return NotImplemented
        out = dict(a.coeffs)
        for j, c in b.coeffs.items():
            out[j] = out.get(j, 0) + c
        return Cyclotomic(m, out)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.n, {j: -c for j, c in self.coeffs.items()})

    def __sub__(self, other):
        try:
            return self + (-Cyclotomic.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, Cyclotomic):
            return Cyclotomic(self.n, {j: c * other for j, c in self.coeffs.items()})
        m, a, b = self._binary(other)
        if m is None:
            return NotImplemented
        out: dict[int, Number] = {}
        for i, c in a.coeffs.items():
            for j, d in b.coeffs.items():
                k = (i + j) % m
                out[k] = out.get(k, 0) + c * d
        return Cyclotomic(m, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, Cyclotomic):
            return Cyclotomic(self.n, {j: Fraction(c) / other for j, c in self.coeffs.items()})
        return NotImplemented

    def conjugate(self) -> Cyclotomic:
        return Cyclotomic(self.n, {-j: c for j, c in self.coeffs.items()})

    def galois(self, k: int) -> Cyclotomic:
        """Image under zeta_n -> zeta_n^k (k coprime to n)."""
        if gcd(k, self.n) != 1:
            raise ValueError(f"{k} is not a unit mod {self.n}")
        return Cyclotomic(self.n, {j * k: c for j, c in self.coeffs.items()})

    def __eq__(self, other):
        m, a, b = self._binary(other)
        if m is None:
            return NotImplemented
        return a.reduced() == b.reduced()

    def is_rational(self) -> bool:
        r = self.reduced()
        return not any(r[1:])

    def to_fraction(self) -> Fraction:
        r = self.reduced()
        if any(r[1:]):
            raise ValueError(f"{self} is not rational")
        return Fraction(r[0])

    def __complex__(self):
        return sum(
            (complex(c) * cmath.exp(2j * cmath.pi * j / self.n) for j, c in self.coeffs.items()),
            0j,
        )

    def format(self, n: int | None = None) -> str:
        """Render as a polynomial in ``z = zeta_n`` using the reduced basis."""
        coords = self.reduced(n)
        terms = []
        for j, c in enumerate(coords):
            if not c:
                continue
            mono = "" if j == 0 else ("z" if j == 1 else f"z^{j}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        if not terms:
            return "0"
        return "+".join(terms).replace("+-", "-")

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Cyclotomic({self.n}, {self.coeffs!r})"


_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*(\*?\s*z(?:\^(\d+))?)?")


def parse_cyclotomic(text: str, n: int) -> Cyclotomic:
    """Parse a polynomial in ``z`` (= zeta_n) such as ``-1+z^2`` or ``2*z^3``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty value")
    coeffs: dict[int, Number] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ValueError(f"bad cyclotomic term near {s[pos:]!r}")
        if pos > 0 and not m.group(1):
            raise ValueError(f"missing sign before {s[pos:]!r}")
        if m.group(3) and m.group(3).startswith("*") and not m.group(2):
            raise ValueError(f"dangling '*' in {s!r}")
        coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(1) == "-":
            coef = -coef
        power = 0
        if m.group(3):
            power = int(m.group(4)) if m.group(4) else 1
        if coef.denominator == 1:
            coef = int(coef)
        coeffs[power] = coeffs.get(power, 0) + coef
        pos = m.end()
    return Cyclotomic(n, coeffs)
