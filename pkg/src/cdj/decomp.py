"""Group algebra decomposition of JX and of intermediate quotients JX_H.

For each rational irreducible character psi_i (Schur index m_i, orbit of
complex characters chi_i) the factor B_i has

    dim B_i = <psi_i, chi_V> / 2,        multiplicity deg(chi_i) / m_i,

and in the quotient by H the multiplicity becomes <chi_i, rho_H> / m_i.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .chars import ClassFunction, RationalCharacter, induced_trivial_character, inner_product
from .covers import CoverAction, Signature
from .permgrp import SubgroupRecord, coset_action


class SchurPolicyViolation(ValueError):
    """A dimension or multiplicity came out non-integral."""


@dataclass(frozen=True, order=True)
class Factor:
    rat_char_index: int
    dim_b: int
    mult: int


@dataclass(frozen=True, eq=False)
class DecompositionRecord:
    group_id: str | None
    group_order: int
    signature: Signature
    vector: tuple[str, ...]
    genus: int
    factors: tuple[Factor, ...]
    completely_decomposable: bool
    family_dim: int
    cover: CoverAction | None = field(default=None, repr=False)
    rationals: tuple[RationalCharacter, ...] = field(default=(), repr=False)

    def multiplicities(self) -> str:
        return format_factors(self.factors)


@dataclass(frozen=True, eq=False)
class QuotientRecord:
    parent: DecompositionRecord = field(repr=False)
    subgroup: SubgroupRecord
    quotient_genus: int
    factors: tuple[Factor, ...]
    completely_decomposable: bool

    def multiplicities(self) -> str:
        return format_factors(self.factors)


@dataclass(frozen=True)
class Witness:
    offending: tuple[Factor, ...]
    killed: tuple[Factor, ...] = ()


def _integral(q: Fraction, what: str) -> int:
    if q.denominator != 1:
        raise SchurPolicyViolation(f"{what} = {q} is not an integer")
    return int(q)


def decompose(cover: CoverAction, rats) -> DecompositionRecord:
    cls = cover.chi_v.classes
    factors = []
    for i, rc in enumerate(rats):
        psi = ClassFunction(cls, rc.values)
        dim_b = _integral(inner_product(psi, cover.chi_v) / 2, f"dim B_{i}")
        mult = _integral(Fraction(rc.complex_degree, rc.schur_index), f"n_{i}")
        factors.append(Factor(i, dim_b, mult))
    total = sum(f.dim_b * f.mult for f in factors)
    if total != cover.genus:
        raise SchurPolicyViolation(f"factor dimensions sum to {total}, genus is {cover.genus}")
    factors = tuple(factors)
    return DecompositionRecord(
        group_id=cover.group.label,
        group_order=cover.group.order,
        signature=cover.sig,
        vector=tuple(g.to_cycle_string() for g in cover.vec),
        genus=cover.genus,
        factors=factors,
        completely_decomposable=all(f.dim_b <= 1 for f in factors),
        family_dim=cover.sig.family_dim,
        cover=cover,
        rationals=tuple(rats),
    )


def quotient_multiplicity(rc: RationalCharacter, rho: ClassFunction) -> Fraction:
    """``<chi, rho_H> / m`` for a member chi of the orbit.

    ``rho_H`` is rational, so every Galois conjugate pairs with it equally and
    ``<psi, rho_H> = m |orbit| <chi, rho_H>``.
    """
    psi = ClassFunction(rho.classes, rc.values)
    m = rc.schur_index
    return inner_product(psi, rho) / (m * m * rc.orbit_size)


def decompose_quotient(parent: DecompositionRecord, sub: SubgroupRecord) -> QuotientRecord:
    cover = parent.cover
    if cover is None:
        raise ValueError("parent record carries no cover data")
    cls = cover.chi_v.classes
    rho = induced_trivial_character(cover.group, sub, cls)
    factors = []
    for f, rc in zip(parent.factors, parent.rationals):
        mult = _integral(quotient_multiplicity(rc, rho), f"quotient n_{f.rat_char_index}")
        factors.append(Factor(f.rat_char_index, f.dim_b, mult))
    genus = sum(f.dim_b * f.mult for f in factors)
    expected = inner_product(rho, cover.chi_v) / 2
    if genus != expected:
        raise SchurPolicyViolation(f"quotient factors sum to {genus}, <rho_H, chi_V>/2 = {expected}")
    factors = tuple(factors)
    return QuotientRecord(
        parent=parent,
        subgroup=sub,
        quotient_genus=genus,
        factors=factors,
        completely_decomposable=all(f.dim_b <= 1 or f.mult == 0 for f in factors),
    )


def quotient_genus_oracle(cover: CoverAction, sub: SubgroupRecord) -> int:
    """Genus of X/H from Riemann-Hurwitz for the degree-[G:H] cover X/H -> X/G."""
    action = coset_action(cover.group, sub)
    et = cover.group.elements
    n = action.degree
    ram = 0
    for g in cover.vec:
        ram += n - len(action.image(et.index(g)).cycle_lengths())
    two_g = 2 + 2 * n * (cover.sig.g0 - 1) + ram
    if two_g % 2:
        raise ArithmeticError("odd total ramification")
    return two_g // 2


def is_completely_decomposable(record: DecompositionRecord | QuotientRecord) -> tuple[bool, Witness]:
    offending = tuple(f for f in record.factors if f.dim_b > 1 and f.mult > 0)
    killed: tuple[Factor, ...] = ()
    if isinstance(record, QuotientRecord):
        killed = tuple(
            pf for pf, qf in zip(record.parent.factors, record.factors)
            if pf.dim_b > 1 and qf.mult == 0
        )
    return not offending, Witness(offending, killed)


# --- rendering -------------------------------------------------------------

def elliptic_multiplicities(factors) -> list[int]:
    return sorted(f.mult for f in factors if f.dim_b == 1 and f.mult > 0)


def format_factors(factors) -> str:
    """Ascending multiplicities of the elliptic factors, then ``A{dim}^{mult}`` tokens."""
    text = ", ".join(map(str, elliptic_multiplicities(factors)))
    higher = sorted((f.dim_b, f.mult) for f in factors if f.dim_b > 1 and f.mult > 0)
    if higher:
        tokens = " ".join(f"A{d}^{m}" for d, m in higher)
        text = f"{text}; {tokens}" if text else tokens
    return text


_REPEAT = re.compile(r"^(\d+)\s*[×x]\s*(\d+)$")


def expand_multiplicities(text: str) -> list[int]:
    """Parse a list such as ``1,1,2,6×7`` (six repeated seven times) into integers."""
    out: list[int] = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        m = _REPEAT.match(tok)
        if m:
            out.extend([int(m.group(1))] * int(m.group(2)))
        else:
            out.append(int(tok))
    return sorted(out)


def same_multiplicities(a: str, b: str) -> bool:
    return expand_multiplicities(a) == expand_multiplicities(b)
