"""Small exact linear solvers over field-like coefficient rings."""

from .errors import VerificationFailed

__all__ = ["solve_square", "solve_overdetermined"]


def _eliminate(rows, ncols, ops, pivot_cols):
    """In-place forward elimination; returns list of (row, col) pivots."""
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if not ops.is_zero(rows[i][c]):
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ops.inv(rows[r][c])
        rows[r] = [ops.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not ops.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [ops.sub(x, ops.mul(f, y))
                           for x, y in zip(rows[i], rows[r])]
        pivots.append((r, c))
        pivot_cols.add(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def solve_square(A, b, ops):
    """Solve A x = b for square nonsingular A; raises if singular."""
    n = len(A)
    rows = [list(A[i]) + [b[i]] for i in range(n)]
    pivot_cols = set()
    pivots = _eliminate(rows, n, ops, pivot_cols)
    if len(pivots) < n:
        raise VerificationFailed("singular linear system")
    x = [ops.zero if not isinstance(ops.zero, type(None)) else None] * n
    for r, c in pivots:
        x[c] = rows[r][n]
    return x


def solve_overdetermined(A, b, ops, ncols):
    """Solve a consistent (possibly tall) system exactly; verifies residuals."""
    rows = [list(A[i]) + [b[i]] for i in range(len(A))]
    pivot_cols = set()
    pivots = _eliminate(rows, ncols, ops, pivot_cols)
    if len(pivot_cols) < ncols:
        raise VerificationFailed("underdetermined system")
    x = [ops.zero] * ncols
    for r, c in pivots:
        x[c] = rows[r][ncols]
    for i in range(len(rows)):
        if i not in {r for r, _ in pivots}:
            if not ops.is_zero(rows[i][ncols]):
                raise VerificationFailed("inconsistent linear system")
    return x
