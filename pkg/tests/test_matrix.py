import json

import pytest
from hypothesis import given
import hypothesis.strategies as st

from gdrazin.errors import DimensionMismatchError, ParseError, SingularMatrixError
from gdrazin.matrix import BlockSpec, Matrix, inverse, mat_arith, nullspace, rank, rank_factorize, rref
from gdrazin.scalar import FLOAT, Scalar

from conftest import M, matrices


def test_nilpotent_annihilation():
    assert mat_arith(M([[0, 1], [0, 0]]), M([[1, 0], [0, 0]]), "mul") == Matrix.zeros(2)


def test_identity_plus_zero():
    assert mat_arith(Matrix.identity(2), Matrix.zeros(2), "add") == Matrix.identity(2)


def test_column_times_row():
    assert M([[1], [0]]) @ M([[1, 0]]) == M([[1, 0], [0, 0]])


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        M([[1, 2]]) @ M([[1, 2]])
    with pytest.raises(DimensionMismatchError):
        M([[1, 2]]) + M([[1], [2]])


def test_inverse_examples():
    assert inverse(Matrix.diag([2, 3])) == M([["1/2", 0], [0, "1/3"]])
    assert inverse(Matrix.identity(3)) == Matrix.identity(3)
    with pytest.raises(SingularMatrixError):
        inverse(M([[1, 1], [1, 1]]))


def test_rank_factorize_examples():
    b, c, r = rank_factorize(Matrix.identity(2))
    assert (b, c, r) == (Matrix.identity(2), Matrix.identity(2), 2)
    b, c, r = rank_factorize(Matrix.zeros(2))
    assert r == 0 and b.shape == (2, 0) and c.shape == (0, 2)
    assert b @ c == Matrix.zeros(2)
    b, c, r = rank_factorize(M([[1, 1], [1, 1]]))
    assert (b, c, r) == (M([[1], [1]]), M([[1, 1]]), 1)


def test_empty_products():
    assert Matrix.zeros(3, 0) @ Matrix.zeros(0, 2) == Matrix.zeros(3, 2)


def test_complex_entries():
    x = M([["i", 0], [0, "1+i"]])
    assert x @ inverse(x) == Matrix.identity(2)
    assert not x.is_real


@given(matrices(max_dim=5))
def test_rank_factorization_reproduces(x):
    b, c, r = rank_factorize(x)
    assert b @ c == x
    assert b.shape == (x.rows, r) and c.shape == (r, x.cols)
    assert rank(b) == r and rank(c) == r
    assert r == len(rref(x)[1])


@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), st.data())
def test_associativity(m, n, p, q, data):
    x = data.draw(matrices(m, n))
    y = data.draw(matrices(n, p))
    z = data.draw(matrices(p, q))
    assert (x @ y) @ z == x @ (y @ z)


@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), st.data())
def test_block_round_trip(r1, r2, c1, c2, data):
    x = data.draw(matrices(r1 + r2, c1 + c2))
    spec = BlockSpec((r1, r2), (c1, c2))
    assert spec.join(spec.split(x)) == x


@given(matrices(max_dim=4))
def test_json_round_trip_exact(x):
    text = json.dumps(x.to_json())
    assert Matrix.from_json(text) == x
    assert json.dumps(Matrix.from_json(text).to_json()) == text


def test_json_round_trip_float():
    x = M([["1/3", "i"], [2, 0]]).with_mode(FLOAT)
    assert Matrix.from_json(x.to_json()) == x


def test_json_errors():
    with pytest.raises(ParseError):
        Matrix.from_json({"rows": 2, "cols": 2, "mode": "exact", "data": ["1"]})
    with pytest.raises(ParseError):
        Matrix.from_json({"rows": 1, "cols": 1, "mode": "exact", "data": ["x"]})
    with pytest.raises(ParseError):
        Matrix.from_json({"rows": 1})


@given(matrices(max_dim=4))
def test_nullspace(x):
    ns = nullspace(x)
    assert x @ ns == Matrix.zeros(x.rows, ns.cols)
    assert ns.cols == x.cols - rank(x)


def test_float_rank_threshold():
    x = M([[1, 1], [1, 1]]).with_mode(FLOAT) + Matrix.from_rows([[1e-14, 0], [0, 0]], FLOAT)
    assert rank(x) == 1


def test_scalar_access():
    x = M([[1, "1/2"], [3, "i"]])
    assert x[0, 1] == Scalar.coerce("1/2")
    assert x.T[1, 0] == Scalar.coerce("1/2")


def test_max_abs_beyond_float_range_is_inf():
    big = M([[10 ** 400, 1], [0, 1]])
    assert big.max_abs() == float("inf")
    assert M([[Scalar(10 ** 400, 1)]]).max_abs() == float("inf")
