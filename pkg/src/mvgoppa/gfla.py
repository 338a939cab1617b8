"""Dense exact linear algebra over a :class:`~mvgoppa.gf.Field`.

Matrices are 2-D ``int64`` numpy arrays of element codes; every function takes
the field as its first argument. Row spaces are the basic currency: codes are
compared, intersected and tested for containment through their RREF.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .errors import FieldMismatch, ShapeMismatch, ZeroCode
from .gf import Field


def as_matrix(M, cols: int | None = None) -> np.ndarray:
    A = np.asarray(M, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size or cols is None else A.reshape(0, cols)
    if A.ndim != 2:
        raise ShapeMismatch(f"expected a matrix, got shape {A.shape}")
    return A


def rref(field: Field, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns. Zero rows are kept at the bottom."""
    R = as_matrix(M).copy()
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = field.mul(R[r], field.inv(int(R[r, c])))
        col = R[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            R[hit] = field.sub(R[hit], field.mul(col[hit, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R, pivots


def row_basis(field: Field, M) -> np.ndarray:
    """The nonzero rows of ``rref(M)``: the canonical basis of the row space."""
    R, piv = rref(field, M)
    return R[: len(piv)]


def rank(field: Field, M) -> int:
    return len(rref(field, M)[1])


def kernel(field: Field, M) -> np.ndarray:
    """Basis (as rows) of the right null space ``{v : M v^T = 0}``."""
    A = as_matrix(M)
    cols = A.shape[1]
    R, piv = rref(field, A)
    free = [c for c in range(cols) if c not in set(piv)]
    K = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        K[i, f] = 1
        for r, pc in enumerate(piv):
            K[i, pc] = field.neg(int(R[r, f]))
    return K


def kronecker(field: Field, A, B) -> np.ndarray:
    """Block Kronecker product: entry ``(i*r2 + k, j*c2 + l) = A[i, j] * B[k, l]``."""
    A, B = as_matrix(A), as_matrix(B)
    r1, c1 = A.shape
    r2, c2 = B.shape
    P = field.mul(A[:, None, :, None], B[None, :, None, :])
    return np.asarray(P, dtype=np.int64).reshape(r1 * r2, c1 * c2)


def inverse(field: Field, M) -> np.ndarray:
    A = as_matrix(M)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ShapeMismatch("inverse of a non-square matrix")
    R, piv = rref(field, np.hstack([A, np.eye(n, dtype=np.int64)]))
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return R[:, n:]


def _check_cols(A: np.ndarray, B: np.ndarray):
    if A.shape[1] != B.shape[1]:
        raise ShapeMismatch(f"column counts differ: {A.shape[1]} vs {B.shape[1]}")


def rowspace_equal(field: Field, A, B) -> bool:
    A, B = as_matrix(A), as_matrix(B)
    _check_cols(A, B)
    RA, RB = row_basis(field, A), row_basis(field, B)
    return RA.shape == RB.shape and bool(np.array_equal(RA, RB))


def rowspace_contains(field: Field, A, B) -> bool:
    """True when rowspace(B) is a subspace of rowspace(A)."""
    A, B = as_matrix(A), as_matrix(B)
    _check_cols(A, B)
    return rank(field, np.vstack([A, B])) == rank(field, A)


def rowspace_sum(field: Field, A, B) -> np.ndarray:
    A, B = as_matrix(A), as_matrix(B)
    _check_cols(A, B)
    return row_basis(field, np.vstack([A, B]))


def rowspace_intersect(field: Field, A, B) -> np.ndarray:
    """Basis of rowspace(A) ∩ rowspace(B), computed as ``(A^⊥ + B^⊥)^⊥``."""
    A, B = as_matrix(A), as_matrix(B)
    _check_cols(A, B)
    stacked = np.vstack([kernel(field, A), kernel(field, B)])
    return row_basis(field, kernel(field, stacked))


# -- minimum distance ----------------------------------------------------------

def _dependent_subsets(field: Field, H: np.ndarray, subsets: np.ndarray) -> np.ndarray:
    """For each row of ``subsets`` (column index tuples), whether those columns of H are dependent."""
    M = H[:, subsets].transpose(1, 0, 2).copy()  # (batch, rows, w)
    batch, rows, w = M.shape
    rk = np.zeros(batch, dtype=np.int64)
    used = np.zeros((batch, rows), dtype=bool)
    ar = np.arange(batch)
    for c in range(w):
        cand = (M[:, :, c] != 0) & ~used
        has = cand.any(axis=1)
        if not has.any():
            continue
        piv = cand.argmax(axis=1)
        b = ar[has]
        pr = piv[has]
        prow = field.mul(M[b, pr, :], field.inv(M[b, pr, c])[:, None])
        fac = M[b, :, c].copy()
        fac[np.arange(b.size), pr] = 0
        M[b] = field.sub(M[b], field.mul(fac[:, :, None], prow[:, None, :]))
        M[b, pr] = prow
        used[b, pr] = True
        rk[b] += 1
    return rk < w


def _min_weight_enumeration(field: Field, G: np.ndarray) -> int:
    k, n = G.shape
    q = field.q
    best = n
    total = q**k
    chunk = max(1, min(total, 1 << 16))
    for lo in range(1, total, chunk):
        idx = np.arange(lo, min(total, lo + chunk), dtype=np.int64)
        coeffs = (idx[:, None] // (q ** np.arange(k, dtype=np.int64))[None, :]) % q
        words = field.matmul(coeffs, G)
        best = min(best, int((words != 0).sum(axis=1).min()))
        if best == 1:
            break
    return best


def min_weight_by_enumeration(field: Field, G) -> int:
    """Minimum nonzero weight by listing every codeword (oracle; use for small q^k only)."""
    B = row_basis(field, G)
    if B.shape[0] == 0:
        raise ZeroCode("the zero code has no minimum distance")
    return _min_weight_enumeration(field, B)


def min_distance(
    field: Field,
    G,
    cap: int | None = None,
    *,
    enum_limit: int = 1 << 22,
    work_limit: int = 60_000_000,
    chunk: int = 50_000,
) -> tuple[int, bool]:
    """Minimum distance of the row space of ``G``.

    Returns ``(d, True)`` when exact. When the search stops early, either
    because ``cap`` was reached or the subset budget ran out, returns
    ``(w + 1, False)`` where every set of ``w`` parity-check columns was proved
    independent, so ``w + 1`` is a certified lower bound.

    The search runs over a parity-check matrix H: d > w exactly when every
    ``w`` columns of H are independent. Small codes (``q^k`` below 2^12, or
    once the subset budget is spent and ``q^k <= enum_limit``) are handled by
    enumerating every codeword instead.
    """
    Gb = row_basis(field, G)
    k, n = Gb.shape
    if k == 0:
        raise ZeroCode("the zero code has no minimum distance")
    q = field.q
    small = k * math.log2(q) <= 12
    if small:
        d = _min_weight_enumeration(field, Gb)
        return (cap + 1, False) if cap is not None and d > cap else (d, True)
    H = kernel(field, Gb)
    singleton = n - k + 1
    limit = singleton if cap is None else min(cap, singleton)
    work = 0
    proved = 0
    for w in range(1, limit + 1):
        count = math.comb(n, w)
        if work + count > work_limit:
            break
        work += count
        combos = itertools.combinations(range(n), w)
        found = False
        while True:
            block = np.fromiter(
                itertools.chain.from_iterable(itertools.islice(combos, chunk)), dtype=np.int64
            )
            if block.size == 0:
                break
            if _dependent_subsets(field, H, block.reshape(-1, w)).any():
                found = True
                break
        if found:
            return w, True
        proved = w
    if cap is not None and proved >= cap:
        return proved + 1, False
    if q**k <= enum_limit:
        d = _min_weight_enumeration(field, Gb)
        if cap is not None and d > cap:
            return cap + 1, False
        return d, True
    return proved + 1, False


# -- JSON ----------------------------------------------------------------------

def matrix_to_dict(field: Field, M) -> dict:
    A = as_matrix(M)
    return {"field": field.to_dict(), "rows": int(A.shape[0]), "cols": int(A.shape[1]), "data": A.tolist()}


def matrix_from_dict(d: dict) -> tuple[Field, np.ndarray]:
    field = Field.from_dict(d["field"])
    A = np.asarray(d["data"], dtype=np.int64).reshape(int(d["rows"]), int(d["cols"]))
    if A.size and (A.min() < 0 or A.max() >= field.q):
        raise FieldMismatch("matrix entries out of range for the field")
    return field, A
