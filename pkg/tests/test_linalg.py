from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from cyclochar.linalg import (
    INCONSISTENT,
    FreeVector,
    LinearSystem,
    kernel_and_rank,
    linear_combine,
    row_equivalent,
    solve_linear_system,
    tensor_product,
)

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)
vectors = st.dictionaries(st.sampled_from("abcdef"), fractions, max_size=5).map(FreeVector)
matrices = st.integers(1, 4).flatmap(
    lambda cols: st.lists(st.lists(st.integers(-3, 3), min_size=cols, max_size=cols), min_size=1, max_size=4)
)


def test_linear_combine_examples():
    assert linear_combine(1, FreeVector({"k": 1}), 1, FreeVector({"k": -1})) == FreeVector()
    assert linear_combine(2, FreeVector({"k": Fraction(1, 2)}), 0, FreeVector()) == FreeVector({"k": 1})
    assert linear_combine(1, FreeVector({"k1": 1}), 1, FreeVector({"k2": 1})) == FreeVector({"k1": 1, "k2": 1})


def test_free_vector_drops_zero_coefficients():
    v = FreeVector({"a": 0, "b": 2})
    assert v.keys() == ["b"]
    assert not (v - v)


def test_tensor_product_examples():
    x, y, one = ("X",), ("Y",), ()
    assert tensor_product(FreeVector({x: 1}), FreeVector({y: 1})) == FreeVector({(x, y): 1})
    got = tensor_product(FreeVector({x: 1, y: -1}), FreeVector({one: 1}))
    assert got == FreeVector({(x, one): 1, (y, one): -1})
    assert tensor_product(FreeVector(), FreeVector({x: 3})) == FreeVector()


def test_solve_examples():
    sys_ = LinearSystem(["x", "y"])
    sys_.add_equation({"x": 1, "y": -1})
    sys_.add_equation({"x": 1, "y": 1}, 2)
    sol = solve_linear_system(sys_)
    assert sol.particular == {"x": 1, "y": 1}
    assert sol.nullspace == []
    bad = LinearSystem(["x"])
    bad.add_equation({"x": 1}, 1)
    bad.add_equation({"x": 1}, 2)
    assert solve_linear_system(bad) == INCONSISTENT


def test_kernel_and_rank_examples():
    assert kernel_and_rank([[1, 0], [0, 1]]) == (2, [])
    rank, kernel = kernel_and_rank([[0, 0, 0]] * 3)
    assert rank == 0 and len(kernel) == 3


@given(vectors, vectors, fractions, fractions)
def test_linear_combine_is_bilinear(x, y, a, b):
    left = linear_combine(a, x, b, y)
    assert left == x.scale(a) + y.scale(b)
    assert linear_combine(a, x, b, y) == linear_combine(b, y, a, x)


@given(matrices)
@settings(max_examples=60)
def test_rank_nullity_and_kernel(matrix):
    cols = len(matrix[0])
    rank, kernel = kernel_and_rank(matrix)
    assert rank + len(kernel) == cols
    for vec in kernel:
        for row in matrix:
            assert sum(row[j] * vec.coeff(j) for j in range(cols)) == 0


@given(matrices, st.lists(st.integers(-3, 3), min_size=4, max_size=4))
@settings(max_examples=60)
def test_solutions_satisfy_the_system(matrix, rhs):
    cols = len(matrix[0])
    names = [f"x{j}" for j in range(cols)]
    sys_ = LinearSystem(names)
    for row, r in zip(matrix, rhs):
        sys_.add_equation(dict(zip(names, row)), r)
    sol = solve_linear_system(sys_)
    if sol == INCONSISTENT:
        return
    for params in ([0] * len(sol.nullspace), [1] * len(sol.nullspace)):
        assert all(v == 0 for v in sys_.substitute(sol.general(params)))


@given(matrices, st.integers(-3, 3).filter(bool))
def test_row_equivalence_under_scaling(matrix, s):
    assert row_equivalent(matrix, [[s * a for a in row] for row in matrix])
