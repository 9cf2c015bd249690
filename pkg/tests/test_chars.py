from fractions import Fraction

import pytest

from cdj.chars import (
    CharTableError,
    ClassDataMismatch,
    ClassFunction,
    choose_prime,
    character_table,
    fixed_space_dim,
    format_chartable,
    induced_trivial_character,
    inner_product,
    parse_chartable,
    primitive_root,
    rational_characters,
    regular_character,
    trivial_character,
)
from cdj.cyclotomic import Cyclotomic
from cdj.perm import Permutation
from cdj.permgrp import GroupTooLarge, build_group, subgroups_up_to_order

from helpers import TABLES, fixture_names, gap_table, load, table

SMALL = fixture_names(max_order=2000)


def q8():
    i = Permutation.parse("(1,2,4,7)(3,6,8,5)", 8)
    j = Permutation.parse("(1,3,4,8)(2,5,7,6)", 8)
    return build_group(8, [i, j], "Q8")


@pytest.mark.parametrize("name", SMALL)
def test_orthogonality(name):
    t = table(name)
    cls = t.classes
    k = len(cls)
    assert len(t) == k
    for a in range(k):
        for b in range(a, k):
            ip = inner_product(t.character(a), t.character(b))
            assert ip == (1 if a == b else 0)
    # columns: sum_chi chi(c) conj(chi(d)) = |C_G(c)| delta_cd
    for c in range(k):
        for d in range(c, k):
            s = sum((row[c] * row[d].conjugate() for row in t.rows), Cyclotomic(1))
            expect = cls.group_order // cls.sizes[c] if c == d else 0
            assert s == expect


@pytest.mark.parametrize("name", SMALL)
def test_degrees(name):
    t = table(name)
    n = t.classes.group_order
    assert sum(d * d for d in t.degrees) == n
    assert all(n % d == 0 for d in t.degrees)
    assert t.degrees[0] == 1 and all(v == 1 for v in t.rows[0])
    assert list(t.degrees) == sorted(t.degrees)


@pytest.mark.parametrize("name", SMALL)
def test_matches_independent_table(name):
    # fixtures/tables was produced by an independent system, columns in our class order
    ours, ref = table(name), gap_table(name)
    assert sorted(ours.value_keys(i) for i in range(len(ours))) == \
        sorted(ref.value_keys(i) for i in range(len(ref)))


@pytest.mark.parametrize("name", SMALL)
def test_frobenius_schur(name):
    t = table(name)
    cls = t.classes
    for i, row in enumerate(t.rows):
        total = sum((row[cls.power_class(c, 2)] * size for c, size in enumerate(cls.sizes)),
                    Cyclotomic(1))
        fs = total.to_fraction() / cls.group_order
        assert fs == t.fs_indicators[i]
        real = all(v == v.conjugate() for v in row)
        assert (fs != 0) == real


@pytest.mark.parametrize("name", SMALL)
def test_rational_characters(name):
    t = table(name)
    cls = t.classes
    rats = rational_characters(t)
    assert sorted(i for r in rats for i in r.member_rows) == list(range(len(t)))
    assert rats[0].values == (1,) * len(cls)
    fns = [r.as_class_function(cls) for r in rats]
    for a, ra in enumerate(rats):
        assert inner_product(fns[a], fns[a]) == ra.schur_index ** 2 * ra.orbit_size
        for b in range(a + 1, len(rats)):
            assert inner_product(fns[a], fns[b]) == 0
        assert ra.degree == ra.schur_index * ra.orbit_size * t.degrees[ra.representative]


def test_q8_schur_index():
    g = q8()
    t = character_table(g)
    rats = rational_characters(t)
    two = [r for r in rats if r.complex_degree == 2]
    assert len(two) == 1 and two[0].schur_index == 2 and two[0].degree == 4
    pinned = rational_characters(t, {two[0].representative: 1})
    assert [r for r in pinned if r.complex_degree == 2][0].schur_index == 1
    with pytest.raises(CharTableError):
        rational_characters(t, {two[0].representative: 0})


@pytest.mark.parametrize("name", ["g6_1", "g24_12", "g36_13", "g48_48", "g240_189", "g288_627"])
def test_frobenius_reciprocity(name):
    g = load(name)
    t = table(name)
    for h in subgroups_up_to_order(g, 8):
        rho = induced_trivial_character(g, h, t.classes)
        assert rho.values[0] * h.order == g.order
        for i in range(len(t)):
            chi = t.character(i)
            assert fixed_space_dim(chi, h) == inner_product(chi, rho)


def test_regular_and_trivial():
    t = table("g24_12")
    cls = t.classes
    reg = regular_character(cls)
    for i in range(len(t)):
        assert inner_product(reg, t.character(i)) == t.degrees[i]
    assert inner_product(trivial_character(cls), t.trivial()) == 1


def test_class_function_mismatch():
    a = trivial_character(load("g6_1").classes)
    b = trivial_character(load("g4_2").classes)
    with pytest.raises(ClassDataMismatch):
        inner_product(a, b)
    with pytest.raises(ClassDataMismatch):
        a + b


def test_modular_parameters():
    p = choose_prime(1092, 42)
    assert p % 42 == 1 and p * p > 4 * 1092 and 1092 % p
    r = primitive_root(p)
    assert len({pow(r, k, p) for k in range(1, p)}) == p - 1


@pytest.mark.parametrize("name", ["g1_1", "g2_1", "g24_12", "g324_69", "g1092_25"])
def test_format_parse_round_trip(name):
    g = load(name)
    t = table(name)
    back = parse_chartable(format_chartable(t, g.label), g.classes, g.label)
    assert [back.value_keys(i) for i in range(len(t))] == [t.value_keys(i) for i in range(len(t))]


def _table_lines(name):
    return (TABLES / f"{name}.chartable").read_text().splitlines()


def _parse(name, lines, label=None):
    g = load(name)
    return parse_chartable("\n".join(lines), g.classes, label or g.label)


def test_parse_rejects_bad_files():
    name = "g6_1"
    good = _table_lines(name)
    _parse(name, good)
    with pytest.raises(CharTableError):
        _parse(name, good[1:])
    with pytest.raises(CharTableError):
        _parse(name, good, label="(6,2)")
    sizes = good.copy()
    sizes[4] = "1 2 3"
    with pytest.raises(CharTableError):
        _parse(name, sizes)
    broken = good.copy()
    broken[-1] = broken[-1].rsplit(" ", 1)[0] + " 7"
    with pytest.raises(CharTableError):
        _parse(name, broken)
    with pytest.raises(CharTableError):
        _parse(name, good[:-1])


def test_external_table_for_large_group():
    g = load("g5760")
    t = gap_table("g5760")
    assert sum(d * d for d in t.degrees) == 5760
    assert len(t) == len(g.classes) == 27


def test_dixon_refuses_huge_groups():
    n = 8
    gens = [Permutation.parse("(1,2,3,4,5,6,7,8)", n), Permutation.parse("(1,2)", n)]
    with pytest.raises(GroupTooLarge):
        character_table(build_group(n, gens, "S8"))


def test_inner_product_fraction():
    cls = load("g6_1").classes
    f = ClassFunction(cls, (1, 0, 0))
    assert inner_product(f, f) == Fraction(1, 6)
