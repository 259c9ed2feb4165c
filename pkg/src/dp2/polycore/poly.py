"""Sparse multivariate polynomials with exact coefficients.

Coefficients live in QQ (``fractions.Fraction``) or in a prime field F_p
(ints reduced mod p).  Exponent vectors are dense tuples aligned with the
ring's variable list.  No zero coefficient is ever stored, and no floating
point number enters anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Coeff = Union[Fraction, int]

#: Canonical precedence of the geometric variables.  Rings built through
#: :func:`ring` order their variables by this table first, which pins the
#: graded reverse lexicographic order globally.
VARIABLE_PRECEDENCE = ("u", "v", "x", "y", "z", "w", "s", "t", "ubar")


class CoefficientError(ValueError):
    """A coefficient cannot be represented in the requested field."""


class Domain:
    """Coefficient field interface: QQ or a prime field."""

    is_prime_field = False

    def coerce(self, value):  # pragma: no cover - overridden
        raise NotImplementedError

    def inv(self, value):  # pragma: no cover - overridden
        raise NotImplementedError


class RationalField(Domain):
    name = "QQ"

    def coerce(self, value) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        raise CoefficientError(f"cannot coerce {value!r} into QQ")

    def inv(self, value: Fraction) -> Fraction:
        return 1 / value

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField(Domain):
    is_prime_field = True

    def __init__(self, p: int):
        if p < 2:
            raise ValueError("prime field characteristic must be >= 2")
        self.p = p
        self.name = f"GF({p})"

    def coerce(self, value) -> int:
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise CoefficientError(
                    f"denominator of {value} vanishes mod {self.p}"
                )
            return value.numerator * pow(den, self.p - 2, self.p) % self.p
        if isinstance(value, str):
            return self.coerce(Fraction(value))
        raise CoefficientError(f"cannot coerce {value!r} into GF({self.p})")

    def inv(self, value: int) -> int:
        value %= self.p
        if value == 0:
            raise ZeroDivisionError(f"0 is not invertible in GF({self.p})")
        return pow(value, self.p - 2, self.p)

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def _precedence_key(name: str):
    try:
        return (0, VARIABLE_PRECEDENCE.index(name))
    except ValueError:
        return (1, name)


@dataclass(frozen=True)
class PolyRing:
    """A polynomial ring: ordered variable names over a coefficient field."""

    variables: tuple
    domain: Domain

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variables in {self.variables}")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        return self.variables.index(name)

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def one(self) -> "MultiPoly":
        return self.const(1)

    def const(self, value) -> "MultiPoly":
        c = self.domain.coerce(value)
        if not c:
            return self.zero()
        return MultiPoly(self, {(0,) * self.nvars: c})

    def var(self, name: str) -> "MultiPoly":
        exp = [0] * self.nvars
        exp[self.index(name)] = 1
        return MultiPoly(self, {tuple(exp): self.domain.coerce(1)})

    def gens(self) -> tuple:
        return tuple(self.var(v) for v in self.variables)

    def monomial(self, exponents: Sequence[int], coeff=1) -> "MultiPoly":
        if len(exponents) != self.nvars:
            raise ValueError(
                f"exponent vector length {len(exponents)} != {self.nvars} variables"
            )
        c = self.domain.coerce(coeff)
        if not c:
            return self.zero()
        return MultiPoly(self, {tuple(int(e) for e in exponents): c})

    def from_terms(self, terms: Iterable) -> "MultiPoly":
        """Build from (coeff, exponent-vector) pairs, merging duplicates."""
        acc = {}
        for coeff, exps in terms:
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.nvars:
                raise ValueError(
                    f"exponent vector {exps} has wrong length for {self.variables}"
                )
            c = acc.get(exps, 0) + self.domain.coerce(coeff)
            if c:
                acc[exps] = c
            else:
                acc.pop(exps, None)
        return MultiPoly(self, acc)

    def extend(self, extra: Sequence[str]) -> "PolyRing":
        return PolyRing(self.variables + tuple(extra), self.domain)

    def change_domain(self, domain: Domain) -> "PolyRing":
        return PolyRing(self.variables, domain)


def ring(*names: str, domain: Domain = QQ) -> PolyRing:
    """Ring with the given variables, sorted by the global precedence."""
    ordered = tuple(sorted(names, key=_precedence_key))
    return PolyRing(ordered, domain)


def grevlex_key(exps: tuple):
    """Sort key under which the grevlex-largest monomial compares greatest."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


class MultiPoly:
    """Immutable sparse polynomial.  Terms map exponent tuple -> coefficient."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring_: PolyRing, terms: Mapping):
        object.__setattr__(self, "ring", ring_)
        object.__setattr__(self, "terms", dict(terms))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):
        raise AttributeError("MultiPoly is immutable")

    # -- basic predicates ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.domain.coerce(0))

    def is_unit_constant(self) -> bool:
        return len(self.terms) == 1 and not any(next(iter(self.terms)))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(
                self, "_hash", hash((self.ring, frozenset(self.terms.items())))
            )
        return self._hash

    # -- arithmetic ------------------------------------------------------

    def _coerce_other(self, other):
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise ValueError("operands live in different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce_other(other)
        res = dict(self.terms)
        for e, c in other.terms.items():
            s = res.get(e, 0) + c
            if s:
                res[e] = s
            else:
                res.pop(e, None)
        return MultiPoly(self.ring, res)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce_other(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, str)):
            c0 = self.ring.domain.coerce(other)
            if not c0:
                return self.ring.zero()
            return MultiPoly(self.ring, {e: c * c0 for e, c in self.terms.items()})
        other = self._coerce_other(other)
        if len(self.terms) > len(other.terms):
            a, b = other, self
        else:
            a, b = self, other
        res = {}
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                e = tuple(i + j for i, j in zip(ea, eb))
                s = res.get(e, 0) + ca * cb
                if s:
                    res[e] = s
                else:
                    res.pop(e, None)
        if isinstance(self.ring.domain, PrimeField):
            p = self.ring.domain.p
            res = {e: c % p for e, c in res.items() if c % p}
        return MultiPoly(self.ring, res)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, c) -> "MultiPoly":
        return self * c

    # -- structure -------------------------------------------------------

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        if not self.terms:
            return -1
        i = self.ring.index(name)
        return max(e[i] for e in self.terms)

    def coefficient_of(self, name: str, power: int) -> "MultiPoly":
        """Coefficient of name**power, as a polynomial with that variable dropped to 0."""
        i = self.ring.index(name)
        res = {}
        for e, c in self.terms.items():
            if e[i] == power:
                res[e[:i] + (0,) + e[i + 1:]] = c
        return MultiPoly(self.ring, res)

    def variables_used(self) -> tuple:
        used = [False] * self.ring.nvars
        for e in self.terms:
            for i, ei in enumerate(e):
                if ei:
                    used[i] = True
        return tuple(v for v, u in zip(self.ring.variables, used) if u)

    def leading(self):
        """(exponent, coefficient) of the grevlex-leading term; None if zero."""
        if not self.terms:
            return None
        e = max(self.terms, key=grevlex_key)
        return e, self.terms[e]

    def monic(self) -> "MultiPoly":
        lead = self.leading()
        if lead is None:
            return self
        inv = self.ring.domain.inv(lead[1])
        return self * inv

    def sorted_terms(self):
        """Terms sorted grevlex-descending, for canonical output."""
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def derivative(self, name: str) -> "MultiPoly":
        i = self.ring.index(name)
        res = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                s = res.get(ne, 0) + c * e[i]
                if isinstance(self.ring.domain, PrimeField):
                    s %= self.ring.domain.p
                if s:
                    res[ne] = s
                else:
                    res.pop(ne, None)
        return MultiPoly(self.ring, res)

    # -- maps --------------------------------------------------------

    def substitute(self, assignments: Mapping[str, "MultiPoly"]) -> "MultiPoly":
        """Exact composite; variables absent from the map stay themselves."""
        target = None
        for img in assignments.values():
            if isinstance(img, MultiPoly):
                target = img.ring
                break
        if target is None:
            target = self.ring
        images = []
        for v in self.ring.variables:
            img = assignments.get(v)
            if img is None:
                img = target.var(v)
            elif not isinstance(img, MultiPoly):
                img = target.const(img)
            elif img.ring != target:
                raise ValueError("assignment images live in different rings")
            images.append(img)
        result = target.zero()
        pow_cache = [{0: target.one()} for _ in images]
        for e, c in self.terms.items():
            term = target.const(c if not isinstance(c, int) else c)
            for i, ei in enumerate(e):
                if ei:
                    cache = pow_cache[i]
                    if ei not in cache:
                        cache[ei] = images[i] ** ei
                    term = term * cache[ei]
            result = result + term
        return result

    def lift(self, target: PolyRing) -> "MultiPoly":
        """Reinterpret in a ring whose variables contain this ring's."""
        pos = [target.index(v) for v in self.ring.variables]
        res = {}
        for e, c in self.terms.items():
            ne = [0] * target.nvars
            for p_, ei in zip(pos, e):
                ne[p_] = ei
            res[tuple(ne)] = target.domain.coerce(c)
        return MultiPoly(target, {e: c for e, c in res.items() if c})

    def drop_to(self, target: PolyRing) -> "MultiPoly":
        """Reinterpret in a smaller ring; fails if a dropped variable occurs."""
        pos = {}
        for i, v in enumerate(self.ring.variables):
            pos[i] = target.index(v) if v in target.variables else None
        res = {}
        for e, c in self.terms.items():
            ne = [0] * target.nvars
            for i, ei in enumerate(e):
                if ei:
                    if pos[i] is None:
                        raise ValueError(
                            f"variable {self.ring.variables[i]} occurs but is dropped"
                        )
                    ne[pos[i]] = ei
            res[tuple(ne)] = target.domain.coerce(c)
        return MultiPoly(target, {e: c for e, c in res.items() if c})

    def reduce_mod(self, p: int) -> "MultiPoly":
        """Image in GF(p); raises CoefficientError if p divides a denominator."""
        gf = GF(p)
        target = self.ring.change_domain(gf)
        res = {}
        for e, c in self.terms.items():
            cc = gf.coerce(c)
            if cc:
                res[e] = cc
        return MultiPoly(target, res)

    def evaluate(self, values: Mapping[str, Coeff]):
        """Full evaluation; every used variable must receive a value."""
        dom = self.ring.domain
        vals = [values.get(v) for v in self.ring.variables]
        total = dom.coerce(0)
        for e, c in self.terms.items():
            acc = c
            for i, ei in enumerate(e):
                if ei:
                    if vals[i] is None:
                        raise ValueError(f"no value for {self.ring.variables[i]}")
                    acc = acc * dom.coerce(vals[i]) ** ei
            total = total + acc
        if isinstance(dom, PrimeField):
            total %= dom.p
        return total

    # -- grading -----------------------------------------------------

    def weighted_degrees(self, weight_rows: Sequence[Sequence[int]]):
        """Set of weight-vector degrees over all terms (tuples, one per row)."""
        degs = set()
        for e in self.terms:
            degs.add(tuple(sum(w * ei for w, ei in zip(row, e)) for row in weight_rows))
        return degs

    # -- display -----------------------------------------------------

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for v, ei in zip(self.ring.variables, e):
                if ei == 1:
                    factors.append(v)
                elif ei:
                    factors.append(f"{v}^{ei}")
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")


# -- degree bookkeeping against a weight matrix ---------------------------


@dataclass(frozen=True)
class Bidegree:
    """Degree under a two-row weight matrix: base row and fiber row."""

    base: int
    fiber: int

    def __add__(self, other: "Bidegree") -> "Bidegree":
        return Bidegree(self.base + other.base, self.fiber + other.fiber)

    def __repr__(self):
        return f"(base {self.base}, fiber {self.fiber})"


class DegreeOfZero:
    """Distinguished degree of the zero polynomial (never -infinity arithmetic)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "degree-of-zero"


DEGREE_OF_ZERO = DegreeOfZero()


@dataclass(frozen=True)
class InhomogeneityReport:
    """Terms that break homogeneity, with their individual bidegrees."""

    degrees_seen: tuple
    offending_terms: tuple  # ((exponent tuple, Bidegree), ...)

    def __repr__(self):
        offenders = ", ".join(f"{e} at {d}" for e, d in self.offending_terms)
        return f"inhomogeneous: {offenders}"


def weighted_degree(poly: MultiPoly, weight_rows: Sequence[Sequence[int]]):
    """Common Bidegree of all terms, DEGREE_OF_ZERO, or an InhomogeneityReport.

    ``weight_rows`` is (base row, fiber row), aligned with the ring variables.
    """
    base_row, fiber_row = weight_rows
    if len(base_row) != poly.ring.nvars or len(fiber_row) != poly.ring.nvars:
        raise ValueError("weight rows do not match the ring's variables")
    if poly.is_zero():
        return DEGREE_OF_ZERO
    seen = {}
    for e in poly.terms:
        d = Bidegree(
            sum(w * ei for w, ei in zip(base_row, e)),
            sum(w * ei for w, ei in zip(fiber_row, e)),
        )
        seen.setdefault(d, []).append(e)
    if len(seen) == 1:
        return next(iter(seen))
    majority = max(seen, key=lambda d: len(seen[d]))
    offenders = tuple(
        (e, d) for d, exps in seen.items() if d != majority for e in exps
    )
    return InhomogeneityReport(tuple(seen), offenders)
