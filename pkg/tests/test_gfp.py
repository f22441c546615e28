import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exstructa import gfp


def random_matrix(draw, p, max_dim=5):
    rows = draw(st.integers(0, max_dim))
    cols = draw(st.integers(0, max_dim))
    data = draw(
        st.lists(
            st.lists(st.integers(0, p - 1), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
    return np.array(data, dtype=np.int64).reshape(rows, cols)


@st.composite
def matrices(draw, p):
    return random_matrix(draw, p)


@pytest.mark.parametrize("p", [2, 3])
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_rref_is_idempotent_and_rank(data, p):
    m = data.draw(matrices(p))
    r, pivots = gfp.rref(m, p)
    r2, pivots2 = gfp.rref(r, p)
    assert np.array_equal(r, r2)
    assert pivots == pivots2
    assert len(pivots) == gfp.rank(m, p)


@pytest.mark.parametrize("p", [2, 3])
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_nullspace_annihilates(data, p):
    m = data.draw(matrices(p))
    ns = gfp.nullspace(m, p)
    assert ns.shape[0] == m.shape[1] - gfp.rank(m, p)
    if ns.size and m.size:
        assert not ((m @ ns.T) % p).any()


@pytest.mark.parametrize("p", [2, 3])
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_solve_recovers_solution(data, p):
    m = data.draw(matrices(p))
    x = random_matrix(data.draw, p)
    if m.shape[1] != x.shape[0]:
        x = np.zeros((m.shape[1], 1), dtype=np.int64)
    rhs = (m @ x) % p
    sol = gfp.solve(m, rhs, p)
    assert sol is not None
    assert np.array_equal((m @ sol) % p, rhs % p)


def test_solve_detects_inconsistency():
    m = np.array([[1, 0], [1, 0]], dtype=np.int64)
    rhs = np.array([[1], [0]], dtype=np.int64)
    assert gfp.solve(m, rhs, 2) is None


@pytest.mark.parametrize(
    "dim,p,count",
    [(0, 2, 1), (1, 2, 2), (2, 2, 5), (3, 2, 16), (1, 3, 2), (2, 3, 6)],
)
def test_all_subspaces_counts(dim, p, count):
    subs = gfp.all_subspaces(dim, p)
    assert len(subs) == count
    keys = {gfp.row_space_key(s, p) for s in subs}
    assert len(keys) == count


def test_row_space_key_is_canonical():
    a = np.array([[1, 1, 0], [0, 1, 1]], dtype=np.int64)
    b = np.array([[1, 0, 1], [0, 1, 1]], dtype=np.int64)
    assert gfp.row_space_key(a, 2) == gfp.row_space_key(b, 2)


def test_span_vectors():
    basis = np.array([[1, 0], [0, 1]], dtype=np.int64)
    vecs = set(gfp.span_vectors(basis, 2))
    assert vecs == {(0, 0), (0, 1), (1, 0), (1, 1)}
