"""Small exact linear algebra over a CoefficientField, plus CRT and
rational reconstruction for the multi-prime lifting path.

Matrices are lists of row lists of field elements.  Everything here is
dense and desk-scale; determinism matters more than speed.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt


def rref(rows: list, field) -> tuple[list, list]:
    """Reduced row echelon form.  Returns (rows, pivot_columns); zero rows
    are dropped and each pivot entry is 1."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(rank, len(rows)):
            if rows[i][col]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        inv = field.inv(rows[rank][col])
        rows[rank] = [field.mul(inv, v) for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [field.sub(a, field.mul(factor, b)) for a, b in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    return rows[:rank], pivots


def reduce_vector(vec: list, echelon_rows: list, pivots: list, field) -> list:
    """Reduce vec modulo the row space of an RREF basis: the result has
    zero entries at every pivot column (the canonical coset representative)."""
    vec = list(vec)
    for row, col in zip(echelon_rows, pivots):
        if vec[col]:
            factor = vec[col]
            vec = [field.sub(a, field.mul(factor, b)) for a, b in zip(vec, row)]
    return vec


def solve(matrix: list, rhs: list, field):
    """One solution x of matrix @ x = rhs, or None if inconsistent.
    Free variables are set to zero, so the result is deterministic."""
    if not matrix:
        return None if any(rhs) else []
    ncols = len(matrix[0])
    augmented = [list(row) + [b] for row, b in zip(matrix, rhs)]
    rows, pivots = rref(augmented, field)
    x = [field.zero()] * ncols
    for row, col in zip(rows, pivots):
        if col == ncols:
            return None  # pivot in the constant column: inconsistent
        x[col] = row[-1]
    return x


# ----------------------------------------------------------------------
# multi-prime lifting


def crt_pair(a1: int, m1: int, a2: int, m2: int) -> tuple[int, int]:
    """Combine x = a1 mod m1, x = a2 mod m2 for coprime moduli."""
    m = m1 * m2
    x = (a1 * m2 * pow(m2, -1, m1) + a2 * m1 * pow(m1, -1, m2)) % m
    return x, m


def crt(residues: list, moduli: list) -> tuple[int, int]:
    a, m = residues[0] % moduli[0], moduli[0]
    for r, p in zip(residues[1:], moduli[1:]):
        a, m = crt_pair(a, m, r % p, p)
    return a, m


def rational_reconstruction(a: int, m: int):
    """The unique n/d = a mod m with |n|, d <= sqrt(m/2), or None.

    Half-extended Euclid; standard Wang-style reconstruction used to lift
    finite-field search results back to Q (always re-verified exactly).
    """
    a %= m
    bound = isqrt(m // 2)
    r0, r1 = m, a
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if r1 == 0 or abs(t1) > bound:
        return None
    from math import gcd

    if gcd(r1, t1) != 1:
        return None
    if t1 < 0:
        r1, t1 = -r1, -t1
    return Fraction(r1, t1)
