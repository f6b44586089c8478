import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import mpolys, scalars, sympy_equal
from qgw.errors import DimensionMismatch
from qgw.linalg import (BLOCK9, Matrix, flip, inverse, kron, leg_embed, matrix_from_json, matrix_to_json,
                        rank, reorder)
from qgw.scalar import ONE, ZERO, Scalar, param

r, s, m = param("r"), param("s"), param("m")


def mat(n, draw_entries):
    return Matrix([[draw_entries[i * n + j] for j in range(n)] for i in range(n)])


square2 = st.lists(scalars(), min_size=4, max_size=4).map(lambda es: mat(2, es))
# polynomial entries keep the four-fold products small
poly2 = st.lists(mpolys(("r", "s")).map(lambda p: Scalar(p, 1)), min_size=4, max_size=4).map(lambda es: mat(2, es))


def test_kron_example():
    x = Matrix([[ONE, r], [ZERO, ONE]])
    y = Matrix([[s, ZERO], [ONE, ONE]])
    k = kron(x, y)
    assert k.shape == (4, 4)
    assert k[0, 2] == r * s and k[1, 3] == r and k[2, 0] == ZERO and k[3, 3] == ONE


def test_flip_is_an_involution():
    P = flip(3)
    assert P @ P == Matrix.identity(9)
    assert P[1, 3] == ONE  # e1(x)e2 -> e2(x)e1


def test_reorder_inverse():
    x = Matrix([[param("r") ** (i + 9 * j) for j in range(9)] for i in range(9)])
    assert reorder(reorder(x, BLOCK9), BLOCK9.inverse()) == x
    assert [tuple(l) for l in BLOCK9.labels()][:5] == [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3)]


def test_leg_embed_and_trace():
    R = Matrix([[ONE if i == j else ZERO for j in range(4)] for i in range(4)]).with_entry(0, 3, m)
    R12 = leg_embed(R, (1, 2), 2)
    assert R12.shape == (8, 8)
    assert R12.trace() == 8 * ONE
    # R (x) 1 is leg 12; its (1,3)-leg copy moves the last index to the third slot
    assert R12 == kron(R, Matrix.identity(2))
    assert leg_embed(R, (2, 3), 2) == kron(Matrix.identity(2), R)
    P = kron(Matrix.identity(2), flip(2))
    assert leg_embed(R, (1, 3), 2) == P @ R12 @ P
    with pytest.raises(DimensionMismatch):
        leg_embed(Matrix.identity(3), (1, 2), 2)


def test_rank_examples():
    assert rank(Matrix([[ONE, r], [r, r * r]])) == 1
    assert rank(Matrix([[ONE, r], [s, r * r]])) == 2
    assert rank(Matrix.zeros(3)) == 0
    assert rank(Matrix([[r - s, ONE], [ONE, 1 / (r - s)]])) == 1


def test_inverse():
    x = Matrix([[ONE, r], [s, ONE]])
    assert x @ inverse(x) == Matrix.identity(2)
    with pytest.raises(ZeroDivisionError):
        inverse(Matrix([[ONE, r], [ONE, r]]))


def test_json_roundtrip():
    x = Matrix([[ONE, r - 1 / r], [ZERO, m ** 2]])
    data = matrix_to_json(x, name="X")
    back, meta = matrix_from_json(data)
    assert back == x and meta == {"name": "X"}
    R = Matrix.identity(4)
    assert matrix_from_json(matrix_to_json(R))[1] == {"dim": 2}


@settings(max_examples=20, deadline=None)
@given(poly2, poly2, poly2, poly2)
def test_kron_mixed_product(a, b, c, d):
    assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)


@settings(max_examples=20, deadline=None)
@given(square2, square2)
def test_matmul_against_sympy(a, b):
    from conftest import to_sympy

    sa = sympy.Matrix(2, 2, lambda i, j: to_sympy(a[i, j]))
    sb = sympy.Matrix(2, 2, lambda i, j: to_sympy(b[i, j]))
    prod = a @ b
    expected = sa * sb
    assert all(sympy_equal(prod[i, j], expected[i, j]) for i in range(2) for j in range(2))


@settings(max_examples=20, deadline=None)
@given(square2)
def test_rank_against_sympy(a):
    from conftest import to_sympy

    sa = sympy.Matrix(2, 2, lambda i, j: sympy.cancel(to_sympy(a[i, j])))
    assert rank(a) == sa.rank(iszerofunc=lambda e: sympy.cancel(e) == 0)
