"""Exact scalar arithmetic.

The coefficient domain of the whole package: arbitrary-precision rationals
(stdlib ``Fraction``), multivariate Laurent polynomials in the fixed formal
parameter set {q, zeta, kp, km, ep, em, pt}, and their fraction field
(``Scalar``).

Equality of scalars is decided by cross multiplication, so no multivariate
gcd is ever needed; representatives are only reduced by monomial content,
which keeps growth bounded and the denominator a true polynomial.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import (
    DivisionByZero,
    EvaluationSingular,
    NotPolynomialInVariable,
    PoleAtZero,
)

#: Fixed, ordered set of formal variables.  Monomials are exponent tuples
#: over this order and are compared lexicographically.
VARS = ("q", "zeta", "kp", "km", "ep", "em", "pt")
_VAR_INDEX = {v: i for i, v in enumerate(VARS)}
_UNIT_MONO = (0,) * len(VARS)

Monomial = tuple


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


class LaurentPoly:
    """Laurent polynomial: finite map monomial -> Fraction, no zero values."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff:
                    clean[tuple(mono)] = coeff
        self.terms = clean

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def const(value) -> "LaurentPoly":
        return LaurentPoly({_UNIT_MONO: Fraction(value)})

    @staticmethod
    def var(name: str, power: int = 1) -> "LaurentPoly":
        mono = [0] * len(VARS)
        mono[_VAR_INDEX[name]] = power
        return LaurentPoly({tuple(mono): Fraction(1)})

    # -- ring structure -----------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = out.get(mono, 0) + coeff
            if acc:
                out[mono] = acc
            else:
                out.pop(mono, None)
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _mono_mul(m1, m2)
                acc = out.get(mono, 0) + c1 * c2
                if acc:
                    out[mono] = acc
                else:
                    out.pop(mono, None)
        return LaurentPoly(out)

    def scale(self, value) -> "LaurentPoly":
        value = Fraction(value)
        if not value:
            return LaurentPoly()
        return LaurentPoly({m: c * value for m, c in self.terms.items()})

    def mono_shift(self, mono: Monomial) -> "LaurentPoly":
        return LaurentPoly({_mono_mul(m, mono): c for m, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    # -- structure queries --------------------------------------------

    def min_exp(self, var: str) -> int:
        i = _VAR_INDEX[var]
        return min((m[i] for m in self.terms), default=0)

    def max_exp(self, var: str) -> int:
        i = _VAR_INDEX[var]
        return max((m[i] for m in self.terms), default=0)

    def split_by(self, var: str) -> dict:
        """Group terms by the exponent of one variable (exponent zeroed out)."""
        i = _VAR_INDEX[var]
        out: dict = {}
        for mono, coeff in self.terms.items():
            rest = list(mono)
            e = rest[i]
            rest[i] = 0
            out.setdefault(e, {})[tuple(rest)] = coeff
        return {e: LaurentPoly(t) for e, t in out.items()}

    def substitute(self, assignment: Mapping[str, Fraction]) -> "LaurentPoly":
        """Homomorphic substitution of some variables by rationals.

        A variable assigned 0 must not occur with a negative exponent.
        """
        if not assignment:
            return self
        idx = {(_VAR_INDEX[v]): Fraction(val) for v, val in assignment.items()}
        out: dict = {}
        for mono, coeff in self.terms.items():
            new = list(mono)
            for i, val in idx.items():
                e = new[i]
                new[i] = 0
                if e == 0:
                    continue
                if val == 0:
                    if e < 0:
                        raise PoleAtZero(
                            f"{VARS[i]}^{e} evaluated at {VARS[i]}=0"
                        )
                    coeff = Fraction(0)
                    break
                coeff = coeff * val**e
            if coeff:
                key = tuple(new)
                acc = out.get(key, 0) + coeff
                if acc:
                    out[key] = acc
                else:
                    out.pop(key, None)
        return LaurentPoly(out)

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self):
        return f"LaurentPoly({render_poly(self)!r})"


_LP_ZERO = LaurentPoly()
_LP_ONE = LaurentPoly.const(1)


def render_poly(p: LaurentPoly) -> str:
    """Canonical text: terms in ascending monomial order."""
    if p.is_zero:
        return "0"
    parts = []
    for mono, coeff in p.sorted_terms():
        factors = [f"({coeff})"]
        for var, e in zip(VARS, mono):
            if e == 0:
                continue
            factors.append(var if e == 1 else f"{var}^{e}")
        parts.append("*".join(factors))
    return " + ".join(parts)


class Scalar:
    """Element of the fraction field of the Laurent-polynomial ring.

    The stored (num, den) pair is normalised so that both are honest
    polynomials (no negative exponents) with no common monomial factor,
    and the lexicographically smallest denominator term has coefficient 1.
    Full gcd reduction is deliberately not performed; equality is decided
    by cross multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = _LP_ONE):
        if den.is_zero:
            raise DivisionByZero("zero denominator")
        if num.is_zero:
            self.num = _LP_ZERO
            self.den = _LP_ONE
            return
        shift = [0] * len(VARS)
        for i, var in enumerate(VARS):
            low = min(num.min_exp(var), den.min_exp(var))
            if low != 0:
                shift[i] = -low
        if any(shift):
            mono = tuple(shift)
            num = num.mono_shift(mono)
            den = den.mono_shift(mono)
        lead = den.terms[min(den.terms)]
        if lead != 1:
            num = num.scale(Fraction(1) / lead)
            den = den.scale(Fraction(1) / lead)
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------

    @staticmethod
    def const(value) -> "Scalar":
        return Scalar(LaurentPoly.const(value))

    @staticmethod
    def var(name: str, power: int = 1) -> "Scalar":
        return Scalar(LaurentPoly.var(name, power))

    @staticmethod
    def zero() -> "Scalar":
        return Scalar(_LP_ZERO)

    @staticmethod
    def one() -> "Scalar":
        return Scalar(_LP_ONE)

    # -- field structure ----------------------------------------------

    def __add__(self, other: "Scalar") -> "Scalar":
        if self.den == other.den:
            return Scalar(self.num + other.num, self.den)
        return Scalar(self.num * other.den + other.num * self.den,
                      self.den * other.den)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return self + (-other)

    def __neg__(self) -> "Scalar":
        return Scalar(-self.num, self.den)

    def __mul__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "Scalar") -> "Scalar":
        if other.is_zero:
            raise DivisionByZero("division by zero scalar")
        return Scalar(self.num * other.den, self.den * other.num)

    def inverse(self) -> "Scalar":
        if self.is_zero:
            raise DivisionByZero("inverse of zero scalar")
        return Scalar(self.den, self.num)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_one(self) -> bool:
        return self.num == self.den

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        # not canonical per representative; only safe because normalisation
        # is deterministic for values produced the same way.  Scalars are
        # never used as dict keys in this package.
        return hash((self.num, self.den))

    # -- operations ----------------------------------------------------

    def substitute(self, assignment: Mapping[str, Fraction]) -> "Scalar":
        num = self.num.substitute(assignment)
        den = self.den.substitute(assignment)
        if den.is_zero:
            raise EvaluationSingular(
                f"denominator {render_poly(self.den)} vanishes under {assignment}"
            )
        return Scalar(num, den)

    def extract_order(self, var: str, n: int) -> "Scalar":
        """Coefficient of ``var**n``, all other variables kept formal.

        Requires the value, with its denominator cleared of ``var``, to be
        polynomial in ``var``; the denominator must not depend on ``var``
        beyond an overall monomial factor (removed by normalisation).
        """
        if self.den.min_exp(var) != 0 or self.den.max_exp(var) != 0:
            raise NotPolynomialInVariable(
                f"denominator depends on {var}: {render_poly(self.den)}"
            )
        if self.num.min_exp(var) < 0:
            raise NotPolynomialInVariable(
                f"negative powers of {var} in {render_poly(self.num)}"
            )
        part = self.num.split_by(var).get(n, _LP_ZERO)
        return Scalar(part, self.den)

    def as_fraction(self) -> Fraction:
        """Value of a constant scalar (raises if formal variables remain)."""
        num = self.num.terms
        den = self.den.terms
        if (num and set(num) != {_UNIT_MONO}) or set(den) != {_UNIT_MONO}:
            raise ValueError("scalar is not constant")
        return (num.get(_UNIT_MONO, Fraction(0))) / den[_UNIT_MONO]

    def __repr__(self):
        return f"Scalar({scalar_str(self)!r})"


ZERO = Scalar.zero()
ONE = Scalar.one()


def rat(value, den=None) -> Scalar:
    return Scalar.const(Fraction(value) if den is None else Fraction(value, den))


def var(name: str, power: int = 1) -> Scalar:
    return Scalar.var(name, power)


def qpow(n: int) -> Scalar:
    """q**n as a scalar."""
    return Scalar.var("q", n) if n else ONE


def scalar_str(x: Scalar) -> str:
    """Canonical serialization, e.g. ``(1/2)*q^-1*kp + (-1/2)*q*kp``.

    A pure-monomial denominator is folded into the numerator (Laurent
    form); a genuinely polynomial denominator is appended as `` over``.
    """
    if len(x.den.terms) == 1:
        (mono, coeff), = x.den.terms.items()
        num = x.num.mono_shift(tuple(-e for e in mono))
        if coeff != 1:
            num = num.scale(Fraction(1) / coeff)
        return render_poly(num)
    return f"{render_poly(x.num)} over {render_poly(x.den)}"


def parse_scalar(text: str) -> Scalar:
    """Inverse of :func:`scalar_str` for matrix import round trips."""
    text = text.strip()
    if " over " in text:
        num_s, den_s = text.split(" over ", 1)
        return Scalar(_parse_poly(num_s), _parse_poly(den_s))
    return Scalar(_parse_poly(text))


def _parse_poly(text: str) -> LaurentPoly:
    text = text.strip()
    if text == "0":
        return LaurentPoly()
    terms: dict = {}
    for chunk in text.split(" + "):
        factors = chunk.strip().split("*")
        head = factors[0]
        if not (head.startswith("(") and head.endswith(")")):
            raise ValueError(f"malformed coefficient in {chunk!r}")
        coeff = Fraction(head[1:-1])
        mono = [0] * len(VARS)
        for fac in factors[1:]:
            if "^" in fac:
                name, _, exp = fac.partition("^")
                mono[_VAR_INDEX[name]] += int(exp)
            else:
                mono[_VAR_INDEX[fac]] += 1
        key = tuple(mono)
        terms[key] = terms.get(key, 0) + coeff
    return LaurentPoly(terms)


def generic_point(seed: int,
                  pinned: Mapping[str, Fraction] | None = None,
                  reject: Iterable[Scalar] = ()) -> dict:
    """Deterministic random rational assignment for all variables.

    Values are distinct, with |value| not in {0, 1} (so q is automatically
    not a root of unity).  Any scalar in ``reject`` whose denominator or
    value would vanish at the sample triggers a resample.
    """
    rng = random.Random(seed)
    pinned = dict(pinned or {})
    for _ in range(64):
        used = set()
        assignment = dict(pinned)
        ok = True
        for name in VARS:
            if name in assignment:
                continue
            for _ in range(64):
                val = Fraction(rng.randint(2, 19), rng.randint(1, 9))
                if val != 1 and val not in used:
                    break
            else:
                ok = False
                break
            used.add(val)
            assignment[name] = val
        if not ok:
            continue
        try:
            if any(s.substitute(assignment).is_zero for s in reject):
                continue
        except EvaluationSingular:
            continue
        return assignment
    raise EvaluationSingular("could not find a non-singular generic point")
