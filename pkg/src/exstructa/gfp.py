"""Dense linear algebra over a prime field GF(p), p in {2, 3}.

Matrices are numpy int64 arrays with entries reduced mod p; a map
f: V -> W is a (dim W, dim V) matrix acting on column vectors.
Subspaces are represented by their reduced row echelon basis, which is
canonical, so equality of subspaces is equality of byte strings.
"""

from __future__ import annotations

from itertools import product

import numpy as np

_INV = {2: {1: 1}, 3: {1: 1, 2: 2}}


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def asmat(rows, p: int) -> np.ndarray:
    m = np.array(rows, dtype=np.int64) % p
    if m.ndim != 2:
        raise ValueError("matrix data must be two-dimensional")
    return m


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (a @ b) % p


def rref(mat: np.ndarray, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = mat.copy() % p
    n_rows, n_cols = m.shape
    pivots = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        pivot = None
        for i in range(r, n_rows):
            if m[i, c] % p:
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != r:
            m[[r, pivot]] = m[[pivot, r]]
        inv = _INV[p][int(m[r, c]) % p]
        m[r] = (m[r] * inv) % p
        for i in range(n_rows):
            if i != r and m[i, c] % p:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        pivots.append(c)
        r += 1
    return m[:r].copy(), tuple(pivots)


def rank(mat: np.ndarray, p: int) -> int:
    if mat.size == 0:
        return 0
    return rref(mat, p)[0].shape[0]


def row_space_key(mat: np.ndarray, p: int) -> bytes:
    """Canonical byte key of the row space (RREF bytes + column count)."""
    r, _ = rref(mat, p)
    return r.shape[1].to_bytes(4, "little") + r.astype(np.int8).tobytes()


def nullspace(mat: np.ndarray, p: int) -> np.ndarray:
    """Canonical basis (rows) of {x : mat @ x = 0}."""
    n_cols = mat.shape[1]
    if n_cols == 0:
        return zeros(0, 0)
    if mat.shape[0] == 0:
        return eye(n_cols)
    r, pivots = rref(mat, p)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = zeros(len(free), n_cols)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-r[i, fc]) % p
    return basis


def solve(mat: np.ndarray, rhs: np.ndarray, p: int) -> np.ndarray | None:
    """One solution x of mat @ x = rhs (column-stacked rhs), or None."""
    n_rows, n_cols = mat.shape
    rhs = np.asarray(rhs) % p
    if rhs.ndim == 1:
        rhs = rhs.reshape(-1, 1)
    if rhs.shape[0] != n_rows:
        raise ValueError("rhs row count does not match the matrix")
    if n_rows == 0:
        return zeros(n_cols, rhs.shape[1])
    aug = np.hstack([mat % p, rhs])
    r, pivots = rref(aug, p)
    k = rhs.shape[1]
    for row in r:
        if not row[:n_cols].any() and row[n_cols:].any():
            return None
    x = zeros(n_cols, k)
    for i, pc in enumerate(pivots):
        if pc >= n_cols:
            return None
        x[pc] = r[i, n_cols:]
    return x


def in_row_space(vec: np.ndarray, basis: np.ndarray, p: int) -> bool:
    if not (vec % p).any():
        return True
    if basis.shape[0] == 0:
        return False
    stacked = np.vstack([basis, vec.reshape(1, -1)])
    return rank(stacked, p) == rank(basis, p)


def row_space_contains(small: np.ndarray, big: np.ndarray, p: int) -> bool:
    if small.shape[0] == 0:
        return True
    r_big = rank(big, p)
    return rank(np.vstack([big, small]), p) == r_big


def all_subspaces(dim: int, p: int) -> list[np.ndarray]:
    """All subspaces of GF(p)^dim as canonical RREF row bases.

    Enumerated by pivot-column sets plus free entries, so each subspace
    appears exactly once and the order is deterministic.
    """
    out = [zeros(0, dim)]
    for k in range(1, dim + 1):
        for pivs in _pivot_sets(dim, k):
            free_pos = [
                (i, c)
                for i in range(k)
                for c in range(dim)
                if c > pivs[i] and c not in pivs
            ]
            for fill in product(range(p), repeat=len(free_pos)):
                m = zeros(k, dim)
                for i, c in enumerate(pivs):
                    m[i, c] = 1
                for (i, c), v in zip(free_pos, fill):
                    m[i, c] = v
                out.append(m)
    return out


def _pivot_sets(dim: int, k: int):
    def rec(start, left):
        if left == 0:
            yield ()
            return
        for c in range(start, dim - left + 1):
            for rest in rec(c + 1, left - 1):
                yield (c,) + rest

    yield from rec(0, k)


# -- bit-packed GF(2) fast path ----------------------------------------------


def pack_rows(mat: np.ndarray) -> list[int]:
    """Rows of a 0/1 matrix as integers, bit j = column j."""
    out = []
    for row in mat:
        acc = 0
        for j, x in enumerate(row):
            if x & 1:
                acc |= 1 << j
        out.append(acc)
    return out


def rank2(rows) -> int:
    """Rank over GF(2) of packed rows."""
    pivots: dict[int, int] = {}
    for vec in rows:
        while vec:
            h = vec.bit_length() - 1
            if h in pivots:
                vec ^= pivots[h]
            else:
                pivots[h] = vec
                break
    return len(pivots)


def rank2_extend(pivots: dict, vec: int) -> int:
    """Reduce vec against pivot rows; install and report 1 if independent."""
    while vec:
        h = vec.bit_length() - 1
        if h in pivots:
            vec ^= pivots[h]
        else:
            pivots[h] = vec
            return 1
    return 0


def reduce2(vec: int, pivots: dict) -> int:
    """Residue of vec after elimination against pivot rows."""
    while vec:
        h = vec.bit_length() - 1
        if h not in pivots:
            return vec
        vec ^= pivots[h]
    return 0


def pivots_of(rows) -> dict:
    out: dict[int, int] = {}
    for vec in rows:
        rank2_extend(out, vec)
    return out


def mul_packed(rows: list[int], op_rows: list[int]) -> list[int]:
    """Apply a packed matrix to packed row vectors: out = rows @ op^T."""
    out = []
    for r in rows:
        acc = 0
        for j, op in enumerate(op_rows):
            if (r & op).bit_count() & 1:
                acc |= 1 << j
        out.append(acc)
    return out


def span_bits(rows: list[int]) -> int:
    """Bitmask over all vectors (coded as ints) in the packed row span."""
    vecs = [0]
    for r in rows:
        vecs += [v ^ r for v in vecs]
    acc = 0
    for v in vecs:
        acc |= 1 << v
    return acc


def span_vectors(basis: np.ndarray, p: int) -> list[tuple[int, ...]]:
    """Every vector in the row span, as tuples (deterministic order)."""
    k, dim = basis.shape
    out = []
    for coeffs in product(range(p), repeat=k):
        v = zeros(1, dim)[0]
        for c, row in zip(coeffs, basis):
            v = (v + c * row) % p
        out.append(tuple(int(x) for x in v))
    return out
