"""Brute-force reference implementations on plain tuples.

Permutations are image tuples and compose left to right: ``(p*q)[i] = q[p[i]]``.
Nothing here touches the package internals beyond reading generators.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import lcm


def mul(p, q):
    return tuple(q[i] for i in p)


def inv(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def order(p):
    seen, lengths = set(), []
    for s in range(len(p)):
        if s in seen:
            continue
        n, j = 0, s
        while j not in seen:
            seen.add(j)
            j = p[j]
            n += 1
        lengths.append(n)
    return lcm(1, *lengths)


def closure(gens, degree):
    ident = tuple(range(degree))
    out = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return out


def classes(elements):
    """Conjugacy classes as a set of frozensets."""
    left = set(elements)
    out = set()
    while left:
        x = next(iter(left))
        cl = frozenset(mul(mul(inv(t), x), t) for t in elements)
        out.add(cl)
        left -= cl
    return out


def generating_tuples(elements, periods):
    """Every tuple with the given element orders, product 1, generating everything."""
    n = len(elements)
    degree = len(next(iter(elements)))
    ident = tuple(range(degree))
    by_order = {}
    for x in elements:
        by_order.setdefault(order(x), []).append(x)
    out = set()
    for head in product(*(by_order.get(s, []) for s in periods[:-1])):
        acc = ident
        for x in head:
            acc = mul(acc, x)
        last = inv(acc)
        if order(last) != periods[-1]:
            continue
        tup = head + (last,)
        if len(closure(tup, degree)) == n:
            out.add(tup)
    return out


def subgroup_classes(elements, max_order):
    """Conjugacy classes of subgroups of order <= max_order, found by closing
    every subset of at most three elements (groups of order <= 8 need no more)."""
    elements = sorted(elements)
    degree = len(elements[0])
    subs = set()
    for k in (1, 2, 3):
        for gens in combinations(elements, k):
            h = closure(gens, degree)
            if len(h) <= max_order:
                subs.add(frozenset(h))
    subs.add(frozenset([tuple(range(degree))]))
    seen, reps = set(), []
    for h in sorted(subs, key=lambda s: (len(s), sorted(s))):
        if h in seen:
            continue
        conj = {frozenset(mul(mul(inv(t), x), t) for x in h) for t in elements}
        seen |= conj
        reps.append(h)
    return reps


def rh_genus(n, periods):
    g = 1 - n + Fraction(n, 2) * sum(1 - Fraction(1, s) for s in periods)
    assert g.denominator == 1
    return int(g)


def coset_genus(elements, sub, vector, g0=0):
    """Genus of X/H through the action of G on right cosets of H."""
    cosets = []
    index = {}
    for x in sorted(elements):
        if x in index:
            continue
        c = frozenset(mul(h, x) for h in sub)
        for y in c:
            index[y] = len(cosets)
        cosets.append(next(iter(c)))
    n = len(cosets)
    ram = 0
    for g in vector:
        perm = [index[mul(rep, g)] for rep in cosets]
        seen, cycles = set(), 0
        for s in range(n):
            if s in seen:
                continue
            cycles += 1
            j = s
            while j not in seen:
                seen.add(j)
                j = perm[j]
        ram += n - cycles
    two = 2 + 2 * n * (g0 - 1) + ram
    assert two % 2 == 0
    return two // 2


def hom_map(gens, images, degree):
    """Extend generator images to a map on the whole group by walking words."""
    ident = tuple(range(degree))
    img_ident = tuple(range(len(images[0])))
    out = {ident: img_ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g, h in zip(gens, images):
                y = mul(x, g)
                fy = mul(out[x], h)
                if y in out:
                    if out[y] != fy:
                        raise ValueError("images do not define a homomorphism")
                    continue
                out[y] = fy
                nxt.append(y)
        frontier = nxt
    return out
