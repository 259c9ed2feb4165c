"""Sylvester resultants with polynomial entries.

Determinants are computed by fraction-free Bareiss elimination; the exact
divisions it needs stay inside the polynomial ring, so no coefficient ever
leaves QQ (or the active prime field).
"""

from __future__ import annotations

from .arith import NotDivisible, exact_div
from .poly import MultiPoly, PolyRing


def _coeff_list(p: MultiPoly, var: str) -> list:
    """Coefficients [c_d, ..., c_0] of p in var, highest degree first."""
    d = p.degree_in(var)
    return [p.coefficient_of(var, k) for k in range(d, -1, -1)]


def sylvester_matrix(p: MultiPoly, q: MultiPoly, var: str) -> list:
    m = p.degree_in(var)
    n = q.degree_in(var)
    if m <= 0 or n <= 0:
        raise ValueError("sylvester_matrix needs positive degrees in the variable")
    ring = p.ring
    pc = _coeff_list(p, var)
    qc = _coeff_list(q, var)
    size = m + n
    rows = []
    for i in range(n):
        row = [ring.zero()] * i + pc + [ring.zero()] * (size - i - m - 1)
        rows.append(row)
    for i in range(m):
        row = [ring.zero()] * i + qc + [ring.zero()] * (size - i - n - 1)
        rows.append(row)
    return rows


def det_bareiss(matrix) -> MultiPoly:
    """Determinant of a square matrix of MultiPoly via Bareiss elimination."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    ring = matrix[0][0].ring
    m = [row[:] for row in matrix]
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return ring.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = exact_div(num, prev) if not num.is_zero() else ring.zero()
            m[i][k] = ring.zero()
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Sylvester resultant with respect to var.

    Degenerate degrees follow the classical convention Res(p, q) =
    lc(p)^deg(q) * ... : for deg p = deg q = 0 the empty products give 1,
    and for a single constant argument c against degree d the result is c^d.
    The zero polynomial against anything gives 0.
    """
    ring = p.ring
    if p.is_zero() or q.is_zero():
        return ring.zero()
    m = p.degree_in(var)
    n = q.degree_in(var)
    if m <= 0 and n <= 0:
        return ring.one()
    if m <= 0:
        return p ** n
    if n <= 0:
        return q ** m
    return det_bareiss(sylvester_matrix(p, q, var))


def _minor(matrix, drop_row: int, drop_col: int):
    return [
        [e for j, e in enumerate(row) if j != drop_col]
        for i, row in enumerate(matrix)
        if i != drop_row
    ]


def resultant_with_cofactors(p: MultiPoly, q: MultiPoly, var: str):
    """(res, A, B) with A*p + B*q == res, so res lies in the ideal <p, q>.

    A and B are built from last-column cofactors of the Sylvester matrix
    (Cramer's rule on the row-combination system).  Intended for modest
    sizes; every entry is an exact polynomial.
    """
    m = p.degree_in(var)
    n = q.degree_in(var)
    if m <= 0 or n <= 0:
        raise ValueError("cofactor construction needs positive degrees")
    ring = p.ring
    s = sylvester_matrix(p, q, var)
    size = m + n
    res = det_bareiss(s)
    x = ring.var(var)
    a = ring.zero()
    b = ring.zero()
    for i in range(size):
        cof = det_bareiss(_minor(s, i, size - 1))
        if (i + size - 1) % 2 == 1:
            cof = -cof
        if cof.is_zero():
            continue
        # row i of the Sylvester matrix is var^(shift) * (p or q)
        if i < n:
            a = a + cof * x ** (n - 1 - i)
        else:
            b = b + cof * x ** (m - 1 - (i - n))
    return res, a, b


def discriminant_binary(p: MultiPoly, u: str) -> MultiPoly:
    """Res_u(p, dp/du); vanishes iff p has a repeated root away from u-infinity
    (the repeated-root-at-infinity case is the caller's v**2 divisibility check)."""
    return resultant(p, p.derivative(u), u)
