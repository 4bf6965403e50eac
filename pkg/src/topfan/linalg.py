"""Exact linear algebra over the rationals and the integers.

All routines operate on plain lists of lists holding ``Fraction`` or ``int``
entries and never touch floating point.  Everything downstream (cone
membership, dual bases, graded ranks, labeling searches) relies on that
exactness, so keep it that way.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd


def to_fractions(rows):
    return [[Fraction(x) for x in row] for row in rows]


def identity_matrix(n):
    return [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def transpose(rows):
    return [list(col) for col in zip(*rows)]


def mat_mul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a, x):
    return [sum(r * v for r, v in zip(row, x)) for row in a]


def rref(rows):
    """Reduced row echelon form.

    Returns ``(reduced, pivot_columns)`` where ``reduced`` keeps the original
    number of rows (zero rows at the bottom).  Deterministic: pivots are the
    leftmost nonzero columns, scanned top to bottom.
    """
    m = to_fractions(rows)
    if not m:
        return [], []
    nrows, ncols = len(m), len(m[0])
    pivots = []
    r = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if m[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = Fraction(1) / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(rows):
    return len(rref(rows)[1])


def det(rows):
    """Determinant over the rationals (fraction Gaussian elimination)."""
    m = to_fractions(rows)
    n = len(m)
    result = Fraction(1)
    for col in range(n):
        pivot_row = None
        for i in range(col, n):
            if m[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            m[col], m[pivot_row] = m[pivot_row], m[col]
            result = -result
        result *= m[col][col]
        inv = Fraction(1) / m[col][col]
        for i in range(col + 1, n):
            if m[i][col] != 0:
                f = m[i][col] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return result


def int_det(rows):
    """Determinant of an integer matrix via fraction-free (Bareiss) elimination."""
    a = [[int(x) for x in row] for row in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = None
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    swap = i
                    break
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def inverse(rows):
    """Inverse of a square rational matrix; raises ValueError when singular."""
    n = len(rows)
    aug = [list(map(Fraction, row)) + identity_matrix(n)[i] for i, row in enumerate(rows)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red[:n]]


def kernel_basis(rows):
    """Basis of the right kernel {x : A x = 0}, one vector per free column."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for r, p in enumerate(pivots):
            vec[p] = -red[r][f]
        basis.append(vec)
    return basis


def solve_unique_columns(cols, target):
    """Solve ``sum_i x_i * cols[i] = target`` when the columns are independent.

    Returns the coefficient list, or None when the system is inconsistent.
    Raises ValueError if the columns are dependent (solution not unique).
    """
    ncols = len(cols)
    nrows = len(target)
    aug = [[Fraction(cols[j][i]) for j in range(ncols)] + [Fraction(target[i])]
           for i in range(nrows)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    if pivots != list(range(ncols)):
        raise ValueError("columns are linearly dependent")
    return [red[i][ncols] for i in range(ncols)]


def vec_gcd(values):
    g = 0
    for v in values:
        g = gcd(g, abs(int(v)))
    return g


def is_primitive(vec):
    return vec_gcd(vec) == 1


def maximal_minor_gcd(int_rows, size):
    """gcd of all size x size minors of an integer matrix (rows x cols)."""
    nrows = len(int_rows)
    ncols = len(int_rows[0]) if int_rows else 0
    g = 0
    for ri in combinations(range(nrows), size):
        for ci in combinations(range(ncols), size):
            minor = [[int_rows[i][j] for j in ci] for i in ri]
            g = gcd(g, abs(int_det(minor)))
            if g == 1:
                return 1
    return g


def clear_denominators(vec):
    """Scale a rational vector to a primitive integer vector (same ray)."""
    fracs = [Fraction(x) for x in vec]
    lcm = 1
    for f in fracs:
        lcm = lcm * f.denominator // gcd(lcm, f.denominator)
    ints = [int(f * lcm) for f in fracs]
    g = vec_gcd(ints)
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def parse_rational(value):
    """Parse a JSON rational: an int, or a string like ``"-3/4"`` or ``"5"``."""
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise ValueError(f"not a rational: {value!r}")


def format_rational(value):
    return str(Fraction(value))
