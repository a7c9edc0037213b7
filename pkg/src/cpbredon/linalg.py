"""Exact linear algebra: Gaussian elimination over F_p and integer Smith forms.

Matrices are lists of rows of Python ints.  Everything here is exact; the
matrices coming out of the cell complexes are tiny, so no attempt is made
to be clever about fill-in or pivot growth.
"""

from __future__ import annotations


def fp_rank(rows: list[list[int]], p: int) -> int:
    """Rank of a matrix over F_p."""
    if not rows or not rows[0]:
        return 0
    m = [[x % p for x in row] for row in rows]
    nrows, ncols = len(m), len(m[0])
    rank = 0
    for c in range(ncols):
        pivot = next((r for r in range(rank, nrows) if m[r][c]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][c], -1, p)
        m[rank] = [(x * inv) % p for x in m[rank]]
        for r in range(nrows):
            if r != rank and m[r][c]:
                f = m[r][c]
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def integer_snf_diagonal(mat: list[list[int]]) -> list[int]:
    """Nonzero diagonal entries of a diagonalization of an integer matrix.

    Row/column operations only (unimodular), so the multiset of prime-power
    parts of the entries is the invariant-factor data of the cokernel.  The
    divisibility chain is not enforced; primary parts do not depend on it.
    """
    diag, _, _ = integer_snf(mat, transforms=False)
    return diag


def integer_snf(mat, transforms=True):
    """Diagonalize an integer matrix by unimodular row/column operations.

    Returns (diag, U, V) with U*M*V diagonal, diag the list of nonzero
    diagonal entries (positive).  U is nrows x nrows, V is ncols x ncols;
    both are None when transforms=False.
    """
    m = [list(row) for row in mat]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    U = [[int(i == j) for j in range(nrows)] for i in range(nrows)] if transforms else None
    V = [[int(i == j) for j in range(ncols)] for i in range(ncols)] if transforms else None

    def row_op(i, j, q):  # row_i -= q * row_j
        m[i] = [a - q * b for a, b in zip(m[i], m[j])]
        if U is not None:
            U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in m:
            row[i] -= q * row[j]
        if V is not None:
            for row in V:
                row[i] -= q * row[j]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    t = 0
    limit = min(nrows, ncols)
    while t < limit:
        pivot = None
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                v = abs(m[i][j])
                if v and (best is None or v < best):
                    best, pivot = v, (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        clean = True
        for i in range(t + 1, nrows):
            if m[i][t]:
                row_op(i, t, m[i][t] // m[t][t])
                if m[i][t]:
                    clean = False
        for j in range(t + 1, ncols):
            if m[t][j]:
                col_op(j, t, m[t][j] // m[t][t])
                if m[t][j]:
                    clean = False
        if clean:
            if m[t][t] < 0:
                m[t] = [-x for x in m[t]]
                if U is not None:
                    U[t] = [-x for x in U[t]]
            t += 1
    diag = [m[i][i] for i in range(min(nrows, ncols)) if m[i][i]]
    return diag, U, V


def kernel_lattice_mod(mat: list[list[int]], modulus: int) -> list[list[int]]:
    """Basis (columns) of the lattice {z in Z^n : M z == 0 mod modulus}.

    Returned as a list of integer vectors spanning the full-rank lattice.
    """
    ncols = len(mat[0]) if mat else 0
    if ncols == 0:
        return []
    if not mat:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    diag, _, V = integer_snf(mat)
    r = len(diag)
    from math import gcd

    basis = []
    for j in range(ncols):
        scale = modulus // gcd(diag[j], modulus) if j < r else 1
        basis.append([V[i][j] * scale for i in range(ncols)])
    return basis


def fp_rank_of_stack(blocks: list[list[list[int]]], p: int) -> int:
    """Rank over F_p of the matrix whose columns are all columns of the blocks.

    Each block is a list of column vectors of common length.
    """
    cols = [col for block in blocks for col in block]
    if not cols:
        return 0
    rows = [[col[i] for col in cols] for i in range(len(cols[0]))]
    return fp_rank(rows, p)
