"""Ambient toric bundles over P^1: weight matrices, well-forming, adjunction.

Two shapes occur: the main P(1,1,1,2)-bundle with columns (u,v,x,y,z,w) and
its P(1,1,1,2,2) enlargement with an extra fiber-degree-2 column s.  A third
fixed matrix (the blow-up ambient over a half-point chart) is kept as a
template for the link machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .polycore import Bidegree, MultiPoly, weighted_degree


@dataclass(frozen=True)
class DivisorClass:
    """m*M + f*F in the rank-2 Picard basis of a model."""

    m: Fraction
    f: Fraction

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.m + other.m, self.f + other.f)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.m - other.m, self.f - other.f)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-self.m, -self.f)

    def scale(self, k) -> "DivisorClass":
        return DivisorClass(self.m * k, self.f * k)

    def as_tuple(self):
        return (self.m, self.f)

    def __repr__(self):
        return f"({self.m}M + {self.f}F)"


def bidegree_to_class(d: Bidegree) -> DivisorClass:
    """A form of bidegree (base, fiber) cuts out fiber*M + base*F."""
    return DivisorClass(d.fiber, d.base)


@dataclass(frozen=True)
class ScrollWeights:
    """Normalised scroll data (a, b, c) plus the hypersurface twist ell."""

    a: int
    b: int
    c: int
    ell: int

    def __post_init__(self):
        if not 0 <= self.a <= self.b:
            raise ValueError(f"need 0 <= a <= b, got a={self.a}, b={self.b}")
        if self.ell - 2 * self.c < 0:
            raise ValueError(
                f"need ell - 2c >= 0, got ell={self.ell}, c={self.c}"
            )

    @property
    def n_fibers(self) -> int:
        """Degree of the w^2 coefficient, ell - 2c."""
        return self.ell - 2 * self.c


MAIN_VARIABLES = ("u", "v", "x", "y", "z", "w")


@dataclass(frozen=True)
class WeightMatrix:
    """Two-row integer grading with the irrelevant-ideal bipartition."""

    variables: tuple
    rows: tuple  # (row0, row1), each a tuple of ints
    blocks: tuple  # (block0 variable names, block1 variable names)

    def __post_init__(self):
        n = len(self.variables)
        if any(len(r) != n for r in self.rows) or len(self.rows) != 2:
            raise ValueError("rows must be two integer vectors matching the variables")
        b0, b1 = self.blocks
        if not b0 or not b1 or set(b0) & set(b1):
            raise ValueError("blocks must be nonempty and disjoint")
        if set(b0) | set(b1) != set(self.variables):
            raise ValueError("blocks must partition the variables")

    def column(self, name: str):
        i = self.variables.index(name)
        return (self.rows[0][i], self.rows[1][i])

    def weighted_degree(self, p: MultiPoly):
        if p.ring.variables != self.variables:
            raise ValueError(
                f"polynomial variables {p.ring.variables} != matrix columns {self.variables}"
            )
        return weighted_degree(p, self.rows)


def main_scroll(w: ScrollWeights) -> WeightMatrix:
    return WeightMatrix(
        MAIN_VARIABLES,
        ((1, 1, 0, w.a, w.b, w.c), (0, 0, 1, 1, 1, 2)),
        (("u", "v"), ("x", "y", "z", "w")),
    )


def enlarged_scroll(w: ScrollWeights, size_i: int) -> WeightMatrix:
    """Ambient of the model indexed by a subset of size ``size_i``."""
    n = w.n_fibers
    if not 0 <= size_i <= n:
        raise ValueError(f"subset size {size_i} outside 0..{n}")
    return WeightMatrix(
        MAIN_VARIABLES + ("s",),
        (
            (1, 1, 0, w.a, w.b, w.c + size_i, w.c + n - size_i),
            (0, 0, 1, 1, 1, 2, 2),
        ),
        (("u", "v"), ("x", "y", "z", "w", "s")),
    )


def halfpoint_blowup_template() -> WeightMatrix:
    """The fixed local blow-up ambient over a half-point chart (raw form)."""
    return WeightMatrix(
        ("u", "x", "y", "z", "w", "ubar"),
        ((0, 1, 1, 1, 2, 0), (2, 1, 1, 1, 0, -2)),
        (("u", "x", "y", "z"), ("w", "ubar")),
    )


def canonical_class(w: ScrollWeights) -> DivisorClass:
    """Adjunction on the scroll: every model of these weights has this class."""
    return DivisorClass(Fraction(-1), Fraction(w.ell - 2 - w.a - w.b - w.c))


# -- well-forming ----------------------------------------------------------


class RankError(ValueError):
    """The weight rows are linearly dependent."""


def _xgcd(a: int, b: int):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def _row_hnf_2xn(rows):
    """Canonical Hermite basis (H0, H1) of the lattice spanned by two rows."""
    r0, r1 = list(rows[0]), list(rows[1])
    n = len(r0)
    # first pivot column: leftmost column where some row is nonzero
    p0 = next(j for j in range(n) if r0[j] or r1[j])
    if r0[p0] == 0:
        r0, r1 = r1, r0
    while r1[p0]:
        if abs(r1[p0]) < abs(r0[p0]):
            r0, r1 = r1, r0
        q = r0[p0] // r1[p0]
        r0 = [a - q * b for a, b in zip(r0, r1)]
        if not any(r0):
            raise RankError("rows are linearly dependent")
        if r0[p0] == 0:
            r0, r1 = r1, r0
    if r0[p0] < 0:
        r0 = [-a for a in r0]
    p1 = next(j for j in range(n) if r1[j])
    if r1[p1] < 0:
        r1 = [-a for a in r1]
    q = r0[p1] // r1[p1]  # floor: leaves 0 <= r0[p1] < r1[p1]
    r0 = [a - q * b for a, b in zip(r0, r1)]
    return tuple(r0), tuple(r1)


def smith_invariants_2xn(rows):
    """Invariant factors (d1, d2) of a rank-2 integer 2 x n matrix."""
    entries = [e for row in rows for e in row]
    d1 = 0
    for e in entries:
        d1 = gcd(d1, e)
    minors = 0
    r0, r1 = rows
    for i in range(len(r0)):
        for j in range(i + 1, len(r0)):
            minors = gcd(minors, r0[i] * r1[j] - r0[j] * r1[i])
    if d1 == 0 or minors == 0:
        raise RankError("rows are linearly dependent")
    return d1, minors // d1


def _saturate(rows):
    """(B0, B1, witness, index): basis of the saturated row lattice.

    The saturation of the row lattice in Z^n is dual to the lattice spanned
    by the columns in Z^2: with C a Hermite basis of the column lattice,
    the rows of C^-1 * W are integral and span the saturation.  witness is
    the 2x2 Fraction matrix C^-1 (witness * rows == (B0, B1)); index is the
    column-lattice index |det C|.
    """
    r0, r1 = rows
    n = len(r0)
    p = 0
    for e in r0:
        p = gcd(p, e)
    if p == 0:
        raise RankError("first row is zero")
    # an element (p, q0) of the column lattice: combine columns via xgcd
    acc, lam = 0, [0] * n
    for j in range(n):
        g, s_, t_ = _xgcd(acc, r0[j])
        lam = [s_ * m for m in lam]
        lam[j] = t_
        acc = g
        if acc == p:
            break
    q0 = sum(l * e for l, e in zip(lam, r1))
    r = 0
    for j in range(n):
        r = gcd(r, r1[j] - (r0[j] // p) * q0)
    if r == 0:
        raise RankError("rows are linearly dependent")
    r = abs(r)
    q = q0 % r
    # C = [[p, 0], [q, r]], C^-1 = [[1/p, 0], [-q/(p r), 1/r]]
    witness = (
        (Fraction(1, p), Fraction(0)),
        (Fraction(-q, p * r), Fraction(1, r)),
    )
    b0 = tuple(v // p for v in r0)
    b1_frac = [witness[1][0] * a + witness[1][1] * b for a, b in zip(r0, r1)]
    assert all(v.denominator == 1 for v in b1_frac)
    b1 = tuple(int(v) for v in b1_frac)
    return b0, b1, witness, p * r


def _mat2_mul(m, w):
    return (
        (m[0][0] * w[0][0] + m[0][1] * w[1][0], m[0][0] * w[0][1] + m[0][1] * w[1][1]),
        (m[1][0] * w[0][0] + m[1][1] * w[1][0], m[1][0] * w[0][1] + m[1][1] * w[1][1]),
    )


@dataclass(frozen=True)
class WellFormResult:
    matrix: WeightMatrix
    witness: tuple  # 2x2 Fractions, witness * input rows == pre-permutation rows
    pre_permutation_rows: tuple
    saturation_index: int
    column_permutation: tuple  # variable names in output order
    branch: str  # "scroll" or "lattice"

    @property
    def unimodular(self) -> bool:
        return self.saturation_index == 1


def well_form(wm: WeightMatrix) -> WellFormResult:
    """Normalise a weight matrix.

    Scroll-shaped matrices (a row direction vanishing on the first block)
    are brought to the (1,1,0,a,b,c)/(0,0,1,1,1,2) shape with 0 <= a <= b,
    permuting only fiber-weight-1 columns.  Other matrices get the canonical
    Hermite basis of the saturated row lattice, slot- and sign-normalised.
    The witness satisfies witness * input_rows == output_rows before the
    column permutation; its determinant is +-1/saturation_index.
    """
    r0, r1 = wm.rows
    b0, b1, sat_witness, index = _saturate(wm.rows)
    nvars = len(wm.variables)
    block0_idx = [wm.variables.index(v) for v in wm.blocks[0]]
    block1_idx = [wm.variables.index(v) for v in wm.blocks[1]]

    # Branch A: a (unique up to sign) lattice direction vanishing on block0
    m0 = [b0[j] for j in block0_idx]
    m1 = [b1[j] for j in block0_idx]
    pivot = next((k for k in range(len(m0)) if m0[k] or m1[k]), None)
    fib_coeff = None
    if pivot is not None:
        alpha, beta = m1[pivot], -m0[pivot]
        if (alpha, beta) != (0, 0):
            ok = all(alpha * m0[k] + beta * m1[k] == 0 for k in range(len(m0)))
            if ok:
                g = gcd(alpha, beta)
                fib_coeff = (alpha // g, beta // g)

    if fib_coeff is not None:
        alpha, beta = fib_coeff
        v_fib = [alpha * a + beta * b for a, b in zip(b0, b1)]
        coeff_fib = (alpha, beta)
        lead = next(v for v in v_fib if v)
        if lead < 0:
            v_fib = [-v for v in v_fib]
            coeff_fib = (-coeff_fib[0], -coeff_fib[1])
        # lattice complement: det [[gamma, delta], [alpha, beta]] = -1
        _, s_, t_ = _xgcd(*coeff_fib)
        coeff_base = (-t_, s_)
        v_base = [coeff_base[0] * a + coeff_base[1] * b for a, b in zip(b0, b1)]
        # sign first (v_fib vanishes on block0, so the k-shift below keeps it)
        lead_idx = next(
            (j for j in block0_idx if v_base[j]),
            next((j for j in range(nvars) if v_base[j]), None),
        )
        if lead_idx is not None and v_base[lead_idx] < 0:
            v_base = [-v for v in v_base]
            coeff_base = (-coeff_base[0], -coeff_base[1])
        weight1 = [j for j in block1_idx if v_fib[j] == 1]
        if weight1:
            k = min(v_base[j] for j in weight1)
            if k:
                v_base = [a - k * f for a, f in zip(v_base, v_fib)]
                coeff_base = (
                    coeff_base[0] - k * coeff_fib[0],
                    coeff_base[1] - k * coeff_fib[1],
                )
        # permute fiber-weight-1 columns ascending by base weight (stable)
        perm = list(range(nvars))
        w1_sorted = sorted(weight1, key=lambda j: (v_base[j],))
        for slot, j in zip(weight1, w1_sorted):
            perm[slot] = j
        combiner = (coeff_base, coeff_fib)
        pre_perm = (tuple(v_base), tuple(v_fib))
        out_rows = (tuple(v_base[j] for j in perm), tuple(v_fib[j] for j in perm))
        new_vars = tuple(wm.variables[j] for j in perm)
        new_blocks = (
            tuple(v for v in new_vars if v in wm.blocks[0]),
            tuple(v for v in new_vars if v in wm.blocks[1]),
        )
        witness = _mat2_mul(combiner, sat_witness)
        matrix = WeightMatrix(new_vars, out_rows, new_blocks)
        return WellFormResult(matrix, witness, pre_perm, index, new_vars, "scroll")

    # Branch B: canonical Hermite basis with slot and sign normalisation
    h0, h1 = _row_hnf_2xn((b0, b1))
    p0 = next(j for j in range(nvars) if h0[j])
    p1 = next(j for j in range(nvars) if h1[j])

    def in_h_coords(row):
        # h1 vanishes at the first pivot column, h0 has positive pivot there
        aa = Fraction(row[p0], h0[p0])
        bb = Fraction(row[p1] - aa * h0[p1], h1[p1])
        return aa, bb

    a0, b0c = in_h_coords(r0)
    first, second = (h0, h1) if abs(a0) >= abs(b0c) else (h1, h0)
    lead = next(v for v in first if v)
    o0 = tuple(-v for v in first) if lead < 0 else tuple(first)
    dot = sum(a * b for a, b in zip(second, o0))
    nrm = sum(a * a for a in o0)
    shift = (2 * dot + nrm) // (2 * nrm)  # nearest integer, ties downward
    o1 = tuple(a - shift * b for a, b in zip(second, o0))
    last = next(v for v in reversed(o1) if v)
    if last < 0:
        o1 = tuple(-v for v in o1)

    def in_sat_coords(vec):
        # solve vec = aa*b0 + bb*b1 using two independent columns
        j0 = next(j for j in range(nvars) if b0[j] or b1[j])
        for j1 in range(nvars):
            det = b0[j0] * b1[j1] - b0[j1] * b1[j0]
            if det:
                aa = Fraction(vec[j0] * b1[j1] - vec[j1] * b1[j0], det)
                bb = Fraction(b0[j0] * vec[j1] - b0[j1] * vec[j0], det)
                return aa, bb
        raise RankError("saturated basis degenerate")

    witness = _mat2_mul((in_sat_coords(o0), in_sat_coords(o1)), sat_witness)
    matrix = WeightMatrix(wm.variables, (o0, o1), wm.blocks)
    return WellFormResult(matrix, witness, (o0, o1), index, wm.variables, "lattice")


def scroll_shape(wm: WeightMatrix):
    """(a, b, c) if the matrix has the normalised main-scroll shape, else None."""
    if len(wm.variables) != 6:
        return None
    r0, r1 = wm.rows
    if r1 != (0, 0, 1, 1, 1, 2) or r0[:3] != (1, 1, 0):
        return None
    a, b, c = r0[3], r0[4], r0[5]
    if not 0 <= a <= b:
        return None
    return a, b, c


@dataclass(frozen=True)
class MembershipReport:
    ok: bool
    degree: object  # Bidegree, DegreeOfZero or InhomogeneityReport
    expected: Bidegree
    warnings: tuple = ()

    def __bool__(self):
        return self.ok


def validate_membership(p: MultiPoly, wm: WeightMatrix, expected: Bidegree) -> MembershipReport:
    """Homogeneity of the expected bidegree, with per-term diagnostics."""
    deg = wm.weighted_degree(p)
    warnings = []
    if isinstance(deg, Bidegree) and deg == expected:
        w2 = [v for v, fw in zip(wm.variables, wm.rows[1]) if fw == 2]
        if expected.fiber == 4 and w2 and p.degree_in(w2[0]) < 2:
            warnings.append(
                f"no {w2[0]}^2 term: equation has f = 0, not a fibration of this shape"
            )
        return MembershipReport(True, deg, expected, tuple(warnings))
    return MembershipReport(False, deg, expected)
