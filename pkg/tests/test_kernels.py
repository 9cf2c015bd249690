import numpy as np
import pytest
from hypothesis import given, strategies as st

from cdj import kernels
from cdj.kernels import python_backend as py

from helpers import load

compiled = kernels.compiled_backend
needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled kernels not built")

PRIME = 10007


def table_inputs(name):
    et = load(name).elements
    return et.perms, et.base, et._sorted_keys, et._key_order, et.radix


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")


@needs_compiled
@pytest.mark.parametrize("name", ["g6_1", "g24_12", "g288_627", "g1092_25"])
def test_cayley_table_parity(name):
    args = table_inputs(name)
    assert np.array_equal(py.cayley_table(*args), compiled.cayley_table(*args))


@needs_compiled
@pytest.mark.parametrize("name", ["g24_12", "g336_208"])
def test_orbit_and_closure_parity(name):
    g = load(name)
    et = g.elements
    maps = np.stack([et.conj_map(et.index(x)) for x in g.generators])
    assert np.array_equal(py.orbit_labels(maps), compiled.orbit_labels(maps))
    rng = np.random.default_rng(1)
    for _ in range(20):
        gens = rng.integers(0, et.n, size=2).astype(np.int32)
        for limit in (4, 12, et.n):
            a = py.closure(et.table, gens, limit)
            b = compiled.closure(et.table, gens, limit)
            assert (a is None and b is None) or np.array_equal(a, b)


@needs_compiled
def test_product_tuples_parity():
    et = load("g48_48").elements
    inv = et.inv
    order = et.order
    by = {k: np.flatnonzero(order == k).astype(np.int32) for k in (2, 4, 6)}
    for first in by[2][:3]:
        cands = [by[4], by[2]]
        a = py.product_tuples(et.table, inv, order, int(first), cands, 6)
        b = compiled.product_tuples(et.table, inv, order, int(first), cands, 6)
        assert np.array_equal(a, b)


matrices = st.integers(1, 7).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, PRIME - 1), min_size=n, max_size=n),
                       min_size=1, max_size=7)
)


@needs_compiled
@given(matrices)
def test_linear_algebra_parity(rows):
    a = np.asarray(rows, dtype=np.int64)
    r1, p1 = py.rref_mod(a, PRIME)
    r2, p2 = compiled.rref_mod(a, PRIME)
    assert np.array_equal(r1, r2) and list(p1) == list(p2)
    assert np.array_equal(py.nullspace_mod(a, PRIME), compiled.nullspace_mod(a, PRIME))
    if a.shape[0] == a.shape[1]:
        assert list(py.charpoly_mod(a, PRIME)) == list(compiled.charpoly_mod(a, PRIME))


@given(matrices)
def test_nullspace_is_kernel(rows):
    a = np.asarray(rows, dtype=np.int64)
    basis = kernels.nullspace_mod(a, PRIME)
    _, pivots = kernels.rref_mod(a, PRIME)
    assert basis.shape[0] == a.shape[1] - len(pivots)
    if basis.size:
        assert not np.any((a @ basis.T) % PRIME)


@given(st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, 50), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_charpoly_cayley_hamilton(rows):
    a = np.asarray(rows, dtype=object)
    coeffs = [int(c) for c in kernels.charpoly_mod(np.asarray(rows, dtype=np.int64), PRIME)]
    n = len(rows)
    assert len(coeffs) == n + 1 and coeffs[0] == 1
    acc = np.zeros((n, n), dtype=object)
    power = np.identity(n, dtype=object)
    for c in reversed(coeffs):
        acc = (acc + c * power) % PRIME
        power = (power @ a) % PRIME
    assert not np.any(acc % PRIME)
