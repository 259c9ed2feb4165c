"""Buchberger engine for ideal-triviality tests.

Graded reverse lexicographic order throughout (the ring's variable order is
fixed globally, see poly.VARIABLE_PRECEDENCE).  The engine is tuned for the
question "is 1 in the ideal": it stops the moment a unit enters the basis.
A step budget guards against runaway cases; exceeding it raises
BudgetExceeded so callers can report "inconclusive" instead of guessing.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .poly import CoefficientError, MultiPoly, PrimeField, grevlex_key

DEFAULT_STEP_BUDGET = 200_000
#: Default verification primes, all above 2**15.
DEFAULT_PRIMES = (32771, 32779, 32783)


class BudgetExceeded(RuntimeError):
    """The reduction-step budget ran out before the basis stabilised."""


def step_budget() -> int:
    raw = os.environ.get("DP2_STEP_BUDGET", "")
    if raw.strip():
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return DEFAULT_STEP_BUDGET


def _divides(ea, eb) -> bool:
    return all(i <= j for i, j in zip(ea, eb))


def _quotient_exp(eb, ea):
    return tuple(j - i for i, j in zip(ea, eb))


def _lcm_exp(ea, eb):
    return tuple(max(i, j) for i, j in zip(ea, eb))


class _Budget:
    __slots__ = ("left", "start")

    def __init__(self, steps: int):
        self.left = steps
        self.start = steps

    def spend(self):
        self.left -= 1
        if self.left < 0:
            raise BudgetExceeded("Groebner step budget exceeded")

    @property
    def used(self) -> int:
        return self.start - self.left


def normal_form(f: MultiPoly, basis, budget: _Budget | None = None) -> MultiPoly:
    """Full remainder of f on division by the basis (top-reduction loop)."""
    ring = f.ring
    dom = ring.domain
    p = dom.p if isinstance(dom, PrimeField) else None
    if budget is None:
        budget = _Budget(step_budget())
    leads = [(g.leading()[0], g.leading()[1], g) for g in basis if g.terms]
    remainder = {}
    work = dict(f.terms)
    while work:
        e = max(work, key=grevlex_key)
        c = work.pop(e)
        for le, lc, g in leads:
            if _divides(le, e):
                budget.spend()
                q = _quotient_exp(e, le)
                factor = c * dom.inv(lc)
                if p is not None:
                    factor %= p
                for ge, gc in g.terms.items():
                    if ge == le:
                        continue  # cancels the popped leading term exactly
                    ne = tuple(i + j for i, j in zip(ge, q))
                    s = work.get(ne, 0) - factor * gc
                    if p is not None:
                        s %= p
                    if s:
                        work[ne] = s
                    else:
                        work.pop(ne, None)
                break
        else:
            # no lead divides e; e is larger than everything still in work,
            # so it can move to the remainder permanently
            remainder[e] = c
    return MultiPoly(ring, remainder)


def s_polynomial(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    ef, cf = f.leading()
    eg, cg = g.leading()
    dom = f.ring.domain
    lcm = _lcm_exp(ef, eg)
    mf = f.ring.monomial(_quotient_exp(lcm, ef), dom.inv(cf))
    mg = g.ring.monomial(_quotient_exp(lcm, eg), dom.inv(cg))
    return mf * f - mg * g


@dataclass
class GroebnerResult:
    basis: list
    trivial: bool
    steps_used: int


def groebner_basis(generators, max_steps: int | None = None) -> GroebnerResult:
    """Reduced monic Groebner basis (grevlex) of the given generators.

    Uses normal pair selection and the coprime-lead criterion.  Elements of
    the returned basis are monic and pairwise tail-reduced.
    """
    gens = [g for g in generators if g is not None and g.terms]
    if not gens:
        return GroebnerResult([], False, 0)
    ring = gens[0].ring
    budget = _Budget(max_steps if max_steps is not None else step_budget())

    basis = []
    for g in gens:
        if g.is_constant():
            return GroebnerResult([ring.one()], True, 0)
        basis.append(g.monic())

    pairs = {(j, i) for i in range(len(basis)) for j in range(i)}

    def lead(i):
        return basis[i].leading()[0]

    while pairs:
        i, j = min(
            pairs, key=lambda ij: grevlex_key(_lcm_exp(lead(ij[0]), lead(ij[1])))
        )
        pairs.discard((i, j))
        li, lj = lead(i), lead(j)
        if all(min(a, b) == 0 for a, b in zip(li, lj)):
            continue  # coprime leading monomials: S-polynomial reduces to zero
        r = normal_form(s_polynomial(basis[i], basis[j]), basis, budget)
        if r.terms:
            if r.is_constant():
                return GroebnerResult([ring.one()], True, budget.used)
            basis.append(r.monic())
            new = len(basis) - 1
            for k in range(new):
                pairs.add((k, new))

    # minimalise: drop elements whose lead is divisible by another lead
    order = sorted(range(len(basis)), key=lambda i: grevlex_key(lead(i)))
    kept = []
    for i in order:
        if any(_divides(k.leading()[0], lead(i)) for k in kept):
            continue
        kept.append(basis[i])
    # tail-reduce against each other
    reduced = []
    for i, g in enumerate(kept):
        others = kept[:i] + kept[i + 1:]
        r = normal_form(g, others, budget) if others else g
        if r.terms:
            reduced.append(r.monic())
    reduced.sort(key=lambda g: grevlex_key(g.leading()[0]), reverse=True)
    trivial = len(reduced) == 1 and reduced[0].is_constant()
    if trivial:
        reduced = [ring.one()]
    return GroebnerResult(reduced, trivial, budget.used)


def buchberger_trivial(generators, field=None, max_steps: int | None = None) -> bool:
    """True iff 1 lies in the ideal generated over the given field.

    Empty (or all-zero) generator lists give False.  If ``field`` is a
    prime field and the generators live over QQ they are reduced first.
    """
    gens = [g for g in generators if g is not None and g.terms]
    if not gens:
        return False
    if (
        field is not None
        and getattr(field, "is_prime_field", False)
        and gens[0].ring.domain != field
    ):
        gens = [g.reduce_mod(field.p) for g in gens]
        gens = [g for g in gens if g.terms]
        if not gens:
            return False
    return groebner_basis(gens, max_steps=max_steps).trivial


@dataclass
class TrivialityVerdict:
    """Multi-prime ideal-triviality verdict.

    status is one of "trivial", "nontrivial", "inconclusive".  probabilistic
    is True for prime-field runs: agreement of several primes, not a QQ proof.
    """

    status: str
    probabilistic: bool
    primes: tuple = ()
    per_prime: dict = field(default_factory=dict)
    detail: str = ""

    @property
    def trivial(self) -> bool:
        return self.status == "trivial"


def ideal_triviality(
    generators,
    primes=DEFAULT_PRIMES,
    exact: bool = False,
    max_steps: int | None = None,
) -> TrivialityVerdict:
    """Triviality of an ideal given over QQ.

    Default mode reduces modulo several primes (> 2**15) and requires all
    verdicts to agree; the result is flagged probabilistic.  ``exact=True``
    runs a single QQ computation instead.  A nonzero constant generator
    short-circuits immediately.
    """
    gens = [g for g in generators if g is not None and g.terms]
    if not gens:
        return TrivialityVerdict("nontrivial", False, detail="empty generator list")
    for g in gens:
        if g.is_constant():
            return TrivialityVerdict("trivial", False, detail="constant generator")

    if exact:
        try:
            res = groebner_basis(gens, max_steps=max_steps)
        except BudgetExceeded:
            return TrivialityVerdict("inconclusive", False, detail="budget exceeded (QQ)")
        return TrivialityVerdict("trivial" if res.trivial else "nontrivial", False)

    verdicts = {}
    used = []
    for p in primes:
        try:
            gp = [g.reduce_mod(p) for g in gens]
        except CoefficientError:
            continue  # p divides a denominator: bad prime, skip it
        gp = [g for g in gp if g.terms]
        try:
            verdicts[p] = groebner_basis(gp, max_steps=max_steps).trivial if gp else False
        except BudgetExceeded:
            return TrivialityVerdict(
                "inconclusive", True, tuple(used) + (p,), verdicts, "budget exceeded"
            )
        used.append(p)
    if not used:
        return TrivialityVerdict("inconclusive", True, detail="no usable prime")
    values = set(verdicts.values())
    if len(values) > 1:
        return TrivialityVerdict(
            "inconclusive", True, tuple(used), verdicts, "primes disagree"
        )
    status = "trivial" if values.pop() else "nontrivial"
    return TrivialityVerdict(status, True, tuple(used), verdicts)
