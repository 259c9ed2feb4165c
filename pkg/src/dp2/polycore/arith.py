"""Exact division, univariate gcd and squarefree tests.

Everything here stays in exact arithmetic over QQ or a prime field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as int_gcd

from .poly import MultiPoly, PolyRing, PrimeField, grevlex_key


class NotDivisible(ArithmeticError):
    """Exact division was requested but the divisor does not divide."""


def exact_div(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Quotient f/g when g divides f exactly; raises NotDivisible otherwise."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ring = f.ring
    dom = ring.domain
    p = dom.p if isinstance(dom, PrimeField) else None
    ge, gc = g.leading()
    gc_inv = dom.inv(gc)
    quotient = {}
    work = dict(f.terms)
    while work:
        e = max(work, key=grevlex_key)
        c = work.pop(e)
        if any(i < j for i, j in zip(e, ge)):
            raise NotDivisible(f"{g!r} does not divide {f!r}")
        q = tuple(i - j for i, j in zip(e, ge))
        factor = c * gc_inv
        if p is not None:
            factor %= p
        quotient[q] = factor
        for te, tc in g.terms.items():
            if te == ge:
                continue
            ne = tuple(i + j for i, j in zip(te, q))
            s = work.get(ne, 0) - factor * tc
            if p is not None:
                s %= p
            if s:
                work[ne] = s
            else:
                work.pop(ne, None)
    return MultiPoly(ring, quotient)


def divides(g: MultiPoly, f: MultiPoly) -> bool:
    if g.is_zero():
        return f.is_zero()
    try:
        exact_div(f, g)
        return True
    except NotDivisible:
        return False


# -- univariate views ------------------------------------------------------


def univariate_coeffs(f: MultiPoly, var: str) -> list:
    """Dense constant-coefficient list [c0, c1, ...]; f must use only var."""
    used = f.variables_used()
    if used not in ((), (var,)):
        raise ValueError(f"{f!r} is not univariate in {var}")
    i = f.ring.index(var)
    if f.is_zero():
        return []
    out = [f.ring.domain.coerce(0)] * (f.degree_in(var) + 1)
    for e, c in f.terms.items():
        out[e[i]] = c
    return out


def from_univariate_coeffs(ring: PolyRing, var: str, coeffs) -> MultiPoly:
    i = ring.index(var)
    terms = {}
    for k, c in enumerate(coeffs):
        c = ring.domain.coerce(c)
        if c:
            e = [0] * ring.nvars
            e[i] = k
            terms[tuple(e)] = c
    return MultiPoly(ring, terms)


def _trim(cs):
    while cs and not cs[-1]:
        cs.pop()
    return cs


def univariate_divmod(num, den, dom):
    """Coefficient-list division over a field; returns (quot, rem)."""
    num = list(num)
    den = _trim(list(den))
    if not den:
        raise ZeroDivisionError("univariate division by zero")
    p = dom.p if isinstance(dom, PrimeField) else None
    inv_lead = dom.inv(den[-1])
    quot = [dom.coerce(0)] * max(0, len(num) - len(den) + 1)
    rem = list(num)
    for k in range(len(num) - len(den), -1, -1):
        c = rem[k + len(den) - 1] * inv_lead
        if p is not None:
            c %= p
        if not c:
            continue
        quot[k] = c
        for j, d in enumerate(den):
            rem[k + j] = rem[k + j] - c * d
            if p is not None:
                rem[k + j] %= p
    return _trim(quot), _trim(rem[: len(den) - 1])


def univariate_gcd(a, b, dom):
    """Monic gcd of coefficient lists over a field."""
    a = _trim(list(a))
    b = _trim(list(b))
    p = dom.p if isinstance(dom, PrimeField) else None
    while b:
        _, r = univariate_divmod(a, b, dom)
        a, b = b, r
    if not a:
        return []
    inv = dom.inv(a[-1])
    out = [c * inv for c in a]
    if p is not None:
        out = [c % p for c in out]
    return out


def poly_gcd_univariate(f: MultiPoly, g: MultiPoly, var: str) -> MultiPoly:
    dom = f.ring.domain
    cs = univariate_gcd(univariate_coeffs(f, var), univariate_coeffs(g, var), dom)
    return from_univariate_coeffs(f.ring, var, cs)


# -- binary forms ----------------------------------------------------------


def binary_form_vars(f: MultiPoly):
    """The (at most two) variables of a univariate poly or binary form."""
    used = f.variables_used()
    if len(used) > 2:
        raise ValueError(f"{f!r} uses more than two variables")
    return used


@dataclass(frozen=True)
class SquarefreeReport:
    squarefree: bool
    reason: str

    def __bool__(self):
        return self.squarefree


def squarefree(f: MultiPoly) -> SquarefreeReport:
    """Squarefree test for a univariate polynomial or a binary form over QQ.

    The zero polynomial is not squarefree (with explanation); nonzero
    constants are.  Criterion: gcd(f, f') is constant, with the two
    variable-power factors of a binary form checked separately so the roots
    at 0 and infinity are covered.
    """
    used = binary_form_vars(f)
    if f.is_zero():
        return SquarefreeReport(False, "zero polynomial")
    if not used:
        return SquarefreeReport(True, "nonzero constant")
    if len(used) == 2:
        u, v = used
        au = min(e[f.ring.index(u)] for e in f.terms)
        av = min(e[f.ring.index(v)] for e in f.terms)
        if au >= 2:
            return SquarefreeReport(False, f"divisible by {u}^{au}")
        if av >= 2:
            return SquarefreeReport(False, f"divisible by {v}^{av}")
        core = f
        for _ in range(au):
            core = exact_div(core, f.ring.var(u))
        for _ in range(av):
            core = exact_div(core, f.ring.var(v))
        # core has no root at (0:1) or (1:0); its t-dehomogenisation at v=1
        # keeps the full degree, so the affine gcd test is conclusive
        affine = core.substitute({v: core.ring.one()})
        if affine.is_constant():
            return SquarefreeReport(True, "monomial with exponents <= 1")
        g = poly_gcd_univariate(affine, affine.derivative(u), u)
        if g.is_constant():
            return SquarefreeReport(True, "gcd(f, f') constant")
        return SquarefreeReport(False, f"repeated factor {g!r}")
    (u,) = used
    g = poly_gcd_univariate(f, f.derivative(u), u)
    if g.is_constant():
        return SquarefreeReport(True, "gcd(f, f') constant")
    return SquarefreeReport(False, f"repeated factor {g!r}")


def squarefree_decomposition(f: MultiPoly, var: str):
    """Yun decomposition over QQ: list of (multiplicity, factor), factors monic.

    f must be univariate in var with rational coefficients.
    """
    dom = f.ring.domain
    cs = univariate_coeffs(f, var)
    if len(cs) <= 1:
        return []
    inv = dom.inv(cs[-1])
    cs = [c * inv for c in cs]
    d = _trim([k * c for k, c in enumerate(cs)][1:])
    a = univariate_gcd(cs, d, dom)
    b, _ = univariate_divmod(cs, a, dom)
    c, _ = univariate_divmod(d, a, dom)
    out = []
    m = 1
    max_iter = len(cs) + 1  # multiplicities cannot exceed the degree
    while _trim(list(b)) not in ([], [dom.coerce(1)]):
        if m > max_iter:
            raise RuntimeError("squarefree decomposition did not terminate")
        db = _trim([k * x for k, x in enumerate(b)][1:])
        diff = _trim([ci - (db[i] if i < len(db) else dom.coerce(0)) for i, ci in enumerate(c)]
                     + [-x for x in db[len(c):]])
        g = univariate_gcd(b, diff, dom)
        if len(g) > 1:
            out.append((m, from_univariate_coeffs(f.ring, var, g)))
        b, _ = univariate_divmod(b, g, dom)
        c, _ = univariate_divmod(diff, g, dom)
        m += 1
    return out


# -- integer normalisation -------------------------------------------------


def primitive_integer_coeffs(f: MultiPoly):
    """(content, terms) with integer coefficients, gcd 1, positive leading.

    Only meaningful over QQ: content * primitive == f.
    """
    if f.is_zero():
        return Fraction(0), {}
    den_lcm = 1
    for c in f.terms.values():
        den_lcm = den_lcm * c.denominator // int_gcd(den_lcm, c.denominator)
    nums = {e: c.numerator * (den_lcm // c.denominator) for e, c in f.terms.items()}
    g = 0
    for n in nums.values():
        g = int_gcd(g, abs(n))
    lead = nums[max(nums, key=grevlex_key)]
    sign = -1 if lead < 0 else 1
    content = Fraction(g * sign, den_lcm)
    return content, {e: n // (g * sign) for e, n in nums.items()}


def primitive_part(f: MultiPoly):
    """(content, primitive MultiPoly) over QQ."""
    content, terms = primitive_integer_coeffs(f)
    if not terms:
        return content, f.ring.zero()
    return content, f.ring.from_terms((c, e) for e, c in terms.items())
