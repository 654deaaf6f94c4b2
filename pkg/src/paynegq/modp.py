"""Dense linear algebra mod a prime p on list-of-list matrices.

Sizes here are tiny (dimensions up to a few dozen), so plain Gaussian
elimination is all we need.
"""


def _inv_mod(a, p):
    return pow(a, p - 2, p)


def rref(matrix, p):
    """Reduced row echelon form mod p. Returns (rref_rows, pivot_columns)."""
    rows = [list(r) for r in matrix]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if rows[i][c] % p:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = _inv_mod(rows[r][c] % p, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] % p:
                f = rows[i][c] % p
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def solve(matrix, rhs, p):
    """One solution x of matrix·x = rhs mod p, or None if inconsistent.

    matrix is a list of rows; rhs a list of the same length as matrix.
    """
    aug = [list(row) + [b % p] for row, b in zip(matrix, rhs)]
    rows, pivots = rref(aug, p)
    ncols = len(matrix[0])
    if ncols in pivots:
        return None
    x = [0] * ncols
    for r, c in enumerate(pivots):
        x[c] = rows[r][-1] % p
    return x


def nullspace(matrix, p):
    """Basis of the kernel of matrix mod p, as a list of vectors."""
    rows, pivots = rref(matrix, p)
    ncols = len(matrix[0]) if matrix else 0
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, c in enumerate(pivots):
            v[c] = (-rows[r][fc]) % p
        basis.append(v)
    return basis


def rank(matrix, p):
    _, pivots = rref(matrix, p)
    return len(pivots)
