"""Exact linear algebra over F_p.

Dense routines work on ``int64`` numpy arrays with entries in ``[0, p)``; with
``p < 2**31`` every product fits before reduction.  :class:`SparseEchelon` keeps
rows as dicts and is used where the column space is large but rows are sparse.
"""

from __future__ import annotations

import numpy as np


def as_matrix(rows, p: int, ncols: int | None = None) -> np.ndarray:
    A = np.array(rows, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(0 if A.size == 0 else 1, -1) if ncols is None else A.reshape(-1, ncols)
    if ncols is not None and A.size == 0:
        A = np.zeros((len(rows), ncols), dtype=np.int64)
    return A % p


def rref(A: np.ndarray, p: int):
    """Reduced row echelon form.  Returns ``(R, pivot_columns)``."""
    R = np.array(A, dtype=np.int64) % p
    m, n = R.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        inv = pow(int(R[r, c]), -1, p)
        R[r] = R[r] * inv % p
        col = R[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            R[nzr] = (R[nzr] - np.outer(col[nzr], R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank(A, p: int) -> int:
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return 0
    # eliminate along the shorter side
    if A.shape[0] > A.shape[1]:
        A = A.T
    return len(rref(A, p)[1])


def nullspace(A, p: int) -> np.ndarray:
    """Basis of ``{v : A v = 0}`` as the rows of the returned array."""
    A = np.asarray(A, dtype=np.int64) % p
    m, n = A.shape
    if m == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref(A, p)
    free = [c for c in range(n) if c not in set(piv)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for r, c in enumerate(piv):
            basis[k, c] = (-R[r, f]) % p
    return basis


def solve(A, b, p: int):
    """One solution of ``A x = b`` or ``None``."""
    A = np.asarray(A, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1) % p
    m, n = A.shape
    R, piv = rref(np.hstack([A, b]), p)
    if n in piv:
        return None
    x = np.zeros(n, dtype=np.int64)
    for r, c in enumerate(piv):
        x[c] = R[r, n]
    return x


def matmul(A, B, p: int) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    # split to keep intermediate sums inside int64
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    step = 8
    for k in range(0, A.shape[1], step):
        out = (out + A[:, k:k + step] @ B[k:k + step, :]) % p
    return out


def common_kernel(mats, n: int, p: int) -> np.ndarray:
    """Basis (rows) of the vectors killed by every matrix in ``mats`` (each ``? x n``)."""
    if not mats:
        return np.eye(n, dtype=np.int64)
    return nullspace(np.vstack([np.asarray(M, dtype=np.int64) for M in mats]), p)


class SparseEchelon:
    """Incremental semi-echelon form over F_p with a caller-supplied pivot rule.

    Rows are dicts ``{column: coeff}``.  ``pivot_key`` picks the pivot column of a
    row (the max under the key).  Each stored row is monic at its pivot and no
    stored row has another row's pivot as its own pivot.
    """

    def __init__(self, p: int, pivot_key):
        self.p = p
        self.key = pivot_key
        self.rows = {}  # pivot column -> row

    def reduce(self, row: dict) -> dict:
        p = self.p
        row = {c: v % p for c, v in row.items() if v % p}
        while row:
            c = max(row, key=self.key)
            piv = self.rows.get(c)
            if piv is None:
                return row
            f = row[c]
            for cc, v in piv.items():
                w = (row.get(cc, 0) - f * v) % p
                if w:
                    row[cc] = w
                else:
                    row.pop(cc, None)
        return row

    def add(self, row: dict) -> bool:
        """Insert a row; return True when it was independent of the stored rows."""
        row = self.reduce(row)
        if not row:
            return False
        c = max(row, key=self.key)
        inv = pow(row[c], -1, self.p)
        self.rows[c] = {cc: v * inv % self.p for cc, v in row.items()}
        return True

    def __len__(self):
        return len(self.rows)

    def pivots(self):
        return self.rows.keys()
