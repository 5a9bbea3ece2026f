"""Exact dense linear algebra over F_p or Q on numpy arrays.

Elimination is delegated to FLINT (``nmod_mat`` / ``fmpq_mat``); this module
only converts between numpy arrays and FLINT matrices and derives kernels.
"""

from __future__ import annotations

from fractions import Fraction

import flint
import numpy as np

from .field import Field


def _to_flint(A: np.ndarray, field: Field):
    m, n = A.shape
    if field.p is not None:
        return flint.nmod_mat(m, n, (A % field.p).ravel().tolist(), field.p)
    flat = [flint.fmpq(int(x.numerator), int(x.denominator)) for x in (Fraction(v) for v in A.ravel())]
    return flint.fmpq_mat(m, n, flat)


def _from_flint(M, field: Field, rows: int | None = None) -> np.ndarray:
    m, n = M.nrows(), M.ncols()
    if rows is not None:
        m = rows
    if field.p is not None:
        vals = [int(x) for x in M.entries()]
        return np.array(vals, dtype=np.int64).reshape(M.nrows(), n)[:m]
    out = np.empty((M.nrows(), n), dtype=object)
    for idx, x in enumerate(M.entries()):
        out.flat[idx] = Fraction(int(x.p), int(x.q))
    return out[:m]


def rref(A: np.ndarray, field: Field) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form: (nonzero rows, pivot columns)."""
    A = np.asarray(A)
    m, n = A.shape
    if m == 0 or n == 0:
        return field.zeros((0, n)), []
    R, r = _to_flint(A, field).rref()
    R = _from_flint(R, field, rows=r)
    pivots = []
    for i in range(r):
        nz = np.flatnonzero(R[i])
        pivots.append(int(nz[0]))
    return R, pivots


def rank(A: np.ndarray, field: Field) -> int:
    A = np.asarray(A)
    if A.shape[0] == 0 or A.shape[1] == 0:
        return 0
    return int(_to_flint(A, field).rank())


def nullspace(A: np.ndarray, field: Field) -> np.ndarray:
    """Basis (as rows) of ``{v : A v = 0}``."""
    A = np.asarray(A)
    m, n = A.shape
    if n == 0:
        return field.zeros((0, 0))
    if m == 0:
        return field.array(np.eye(n, dtype=np.int64)) if field.p is not None else _identity(n, field)
    R, pivots = rref(A, field)
    free = [j for j in range(n) if j not in set(pivots)]
    K = field.zeros((len(free), n))
    if not free:
        return K
    K[np.arange(len(free)), free] = field.one
    if pivots:
        K[:, pivots] = field.mod(-R[:, free].T)
    return K


def _identity(n: int, field: Field) -> np.ndarray:
    out = field.zeros((n, n))
    for i in range(n):
        out[i, i] = field.one
    return out


def reduce_rows(V: np.ndarray, R: np.ndarray, pivots: list[int], field: Field) -> np.ndarray:
    """Reduce the rows of ``V`` modulo the row space of an RREF matrix ``R``."""
    if not pivots or V.shape[0] == 0:
        return V
    return field.mod(V - V[:, pivots] @ R)


def complement_rows(R_big: np.ndarray, piv_big: list[int], piv_small: list[int]) -> list[int]:
    """Rows of an RREF basis whose pivots are not lead columns of a subspace.

    If ``W`` is a subspace of ``U`` then the pivots of RREF(W) are pivots of
    RREF(U), and the RREF(U) rows at the remaining pivots complete any basis
    of ``W`` to a basis of ``U``.
    """
    small = set(piv_small)
    return [i for i, p in enumerate(piv_big) if p not in small]


def stack(blocks: list[np.ndarray], ncols: int, field: Field) -> np.ndarray:
    blocks = [b for b in blocks if b.shape[0]]
    if not blocks:
        return field.zeros((0, ncols))
    return np.vstack(blocks)
