"""Exact linear algebra over the local rings Z/p^k.

Every nonzero residue is ``p^v * unit``; the routines below always pivot on an
entry of least valuation, so each elimination step divides exactly.  Matrices
are int64 numpy arrays with entries in ``[0, p^k)``; moduli must stay below
2^31 so that products fit.
"""

from __future__ import annotations

import numpy as np

from .errors import InternalVerificationFailure


def valuations(a, p: int, k: int) -> np.ndarray:
    """p-adic valuation of each residue, with 0 mapped to k."""
    a = np.asarray(a, dtype=np.int64) % p ** k
    v = np.zeros(a.shape, dtype=np.int64)
    pe = 1
    for _ in range(k):
        pe *= p
        v += a % pe == 0
    return v


def howell_form(rows, p: int, k: int, ncols: int | None = None) -> np.ndarray:
    """Canonical Howell form of the row module spanned by ``rows`` over Z/p^k.

    The result is in echelon form with pivots equal to powers of p, entries
    above each pivot reduced modulo it, and the Howell property: the elements
    of the module vanishing on the first j columns are spanned by the rows
    whose pivot lies beyond column j.  Two generating sets of the same module
    give identical output.
    """
    q = p ** k
    pool = np.asarray(rows, dtype=np.int64)
    if ncols is None:
        ncols = pool.shape[1] if pool.ndim == 2 else 0
    pool = pool.reshape(-1, ncols) % q
    pool = pool[pool.any(axis=1)]
    pivots: list[np.ndarray] = []
    pivot_cols: list[int] = []
    pivot_pows: list[int] = []
    for c in range(ncols):
        if not len(pool):
            break
        col = pool[:, c]
        nz = np.flatnonzero(col)
        if not nz.size:
            continue
        vals = valuations(col[nz], p, k)
        j = int(np.argmin(vals))
        v, r = int(vals[j]), int(nz[j])
        pe = p ** v
        piv = pool[r] * pow(int(col[r]) // pe, -1, q) % q
        others = nz[nz != r]
        if others.size:
            t = pool[others, c] // pe
            pool[others] = (pool[others] - t[:, None] * piv) % q
        pool = np.delete(pool, r, axis=0)
        if v:
            annihilated = piv * p ** (k - v) % q
            if annihilated.any():
                pool = np.vstack([pool, annihilated])
        for row in pivots:
            e = int(row[c])
            if e >= pe:
                row -= (e // pe) * piv
                row %= q
        pivots.append(piv)
        pivot_cols.append(c)
        pivot_pows.append(pe)
        pool = pool[pool.any(axis=1)]
    if not pivots:
        return np.zeros((0, ncols), dtype=np.int64)
    return np.array(pivots, dtype=np.int64)


def pivot_data(H: np.ndarray, p: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Pivot columns and pivot valuations of a Howell form."""
    cols = np.array([int(np.flatnonzero(row)[0]) for row in H], dtype=np.int64)
    vals = valuations(H[np.arange(len(H)), cols], p, k) if len(H) else np.zeros(0, np.int64)
    return cols, vals


def module_order_exponent(H: np.ndarray, p: int, k: int) -> int:
    """log_p of the size of the module whose Howell form is ``H``."""
    _, vals = pivot_data(H, p, k)
    return int(np.sum(k - vals))


def kernel(A, p: int, k: int, ncols: int | None = None) -> np.ndarray:
    """Howell form of the solution module ``{x : A x = 0}`` over Z/p^k."""
    A = np.asarray(A, dtype=np.int64)
    if ncols is None:
        ncols = A.shape[1]
    A = A.reshape(-1, ncols)
    H = howell_form(A, p, k, ncols)
    r = len(H)
    augmented = np.hstack([H.T, np.eye(ncols, dtype=np.int64)])
    W = howell_form(augmented, p, k, r + ncols)
    sol = W[~W[:, :r].any(axis=1), r:]
    return sol


def coordinates(H: np.ndarray, vectors, p: int, k: int) -> np.ndarray:
    """Express module elements in terms of the Howell rows ``H``.

    Raises InternalVerificationFailure if some vector is not in the module.
    """
    q = p ** k
    W = np.array(vectors, dtype=np.int64).reshape(-1, H.shape[1]) % q
    cols, vals = pivot_data(H, p, k)
    coeffs = np.zeros((len(W), len(H)), dtype=np.int64)
    for i, (c, v) in enumerate(zip(cols, vals)):
        pe = p ** int(v)
        entry = W[:, c]
        if (entry % pe).any():
            raise InternalVerificationFailure("vector lies outside the module (pivot divisibility)")
        t = entry // pe
        coeffs[:, i] = t
        W = (W - t[:, None] * H[i]) % q
    if W.any():
        raise InternalVerificationFailure("vector lies outside the module (nonzero remainder)")
    return coeffs


def quotient_exponents(relations, ncols: int, p: int, k: int) -> list[int]:
    """Exponents e with ``(Z/p^k)^ncols / span(relations) = sum of Z/p^e``.

    Diagonalizes the relation matrix (Smith form over the local ring); trivial
    summands are dropped and the list is sorted ascending.
    """
    q = p ** k
    M = np.array(relations, dtype=np.int64).reshape(-1, ncols) % q
    exps: list[int] = []
    free = ncols
    while M.size and M.any():
        rows, cols = np.nonzero(M)
        vals = valuations(M[rows, cols], p, k)
        j = int(np.argmin(vals))
        i, c, v = int(rows[j]), int(cols[j]), int(vals[j])
        pe = p ** v
        piv = M[i] * pow(int(M[i, c]) // pe, -1, q) % q
        t = M[:, c] // pe
        t[i] = 0
        M = (M - t[:, None] * piv) % q
        M = np.delete(np.delete(M, i, axis=0), c, axis=1)
        free -= 1
        if v:
            exps.append(v)
    exps += [k] * free
    return sorted(exps)


def subquotient_exponents(H: np.ndarray, extra, p: int, k: int) -> list[int]:
    """Exponents of ``A / B`` where ``H`` is the Howell form of A and ``extra`` spans B ⊆ A."""
    q = p ** k
    r = len(H)
    if r == 0:
        return []
    cols, vals = pivot_data(H, p, k)
    rels = []
    for i in range(r):
        scale = p ** (k - int(vals[i]))
        row = np.zeros(r, dtype=np.int64)
        if scale < q:
            row -= coordinates(H, H[i] * scale % q, p, k)[0]
        row[i] += scale
        rels.append(row % q)
    extra = np.asarray(extra, dtype=np.int64).reshape(-1, H.shape[1])
    if len(extra):
        rels.extend(coordinates(H, extra, p, k))
    return quotient_exponents(np.array(rels), r, p, k)
