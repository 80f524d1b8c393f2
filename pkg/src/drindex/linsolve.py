"""Exact Gaussian elimination over the rationals for small dense systems."""

from fractions import Fraction


class RankDeficient(ArithmeticError):
    """The system does not determine a unique solution."""


def solve_exact(rows, rhs):
    """Solve A x = b exactly, where A may have more rows than columns.

    Returns the unique solution as a list of Fractions, or None when the
    (overdetermined) system is inconsistent.  Raises RankDeficient when the
    columns are linearly dependent.
    """
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    piv_rows = []
    r = 0
    for col in range(n):
        piv = None
        for i in range(r, m):
            if a[i][col] != 0:
                piv = i
                break
        if piv is None:
            raise RankDeficient("column %d is dependent" % col)
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][col]
        a[r] = [v * inv for v in a[r]]
        for i in range(m):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [a[i][j] - f * a[r][j] for j in range(n + 1)]
        piv_rows.append(col)
        r += 1
    # consistency of the leftover rows
    for i in range(r, m):
        if a[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, col in enumerate(piv_rows):
        x[col] = a[i][n]
    return x
