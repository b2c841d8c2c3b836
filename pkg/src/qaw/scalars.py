"""Exact scalar arithmetic in the formal variable s, where q = s**2.

Every quantity downstream (PBW coefficients, weight-module matrix entries,
R-matrix series terms) lives in the field Q(s) of rational functions with
integer coefficients.  Working in s instead of q keeps all exponents
integral: half-integer weights contribute odd powers of s, and the diagonal
q**(2*m1*m2) factors never require symbolic square roots.

Two value types implement the field:

  LaurentPoly -- sparse integer-coefficient Laurent polynomial in s
  RatFunc     -- canonical quotient of two LaurentPoly values

Both are immutable and hashable.  The RatFunc canonical form (numerator and
denominator coprime, denominator with minimal exponent 0 and positive
leading coefficient) makes equality a structural check.

A :class:`ScalarDomain` selects between the symbolic field and exact
rational evaluation at a fixed admissible point s0 (used for randomized
Schwartz-Zippel style identity testing).  All algebra and representation
code is written against the domain interface, so an entire verification
suite can run either symbolically or over plain Fractions.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import lru_cache


class ForbiddenPointError(ValueError):
    """Raised for evaluation points where q = s**2 is degenerate (q**4 = 1)."""


class PoleError(ZeroDivisionError):
    """Raised when a denominator vanishes at the requested sample point."""


# ---------------------------------------------------------------------------
# dense helpers for the ordinary-polynomial layer (used by gcd / divexact)
# ---------------------------------------------------------------------------

def _dense_trim(coeffs: list[int]) -> list[int]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _dense_content(coeffs: list[int]) -> int:
    g = 0
    for c in coeffs:
        g = math.gcd(g, c)
        if g == 1:
            break
    return g


def _dense_primitive(coeffs: list[int]) -> list[int]:
    ct = _dense_content(coeffs)
    if ct > 1:
        return [c // ct for c in coeffs]
    return coeffs[:]


def _dense_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of a by b (b nonzero), over Z[x]."""
    r = _dense_trim(a[:])
    db = len(b) - 1
    lb = b[-1]
    while r and len(r) - 1 >= db:
        lead = r[-1]
        off = len(r) - 1 - db
        r = [lb * c for c in r]
        for i, cb in enumerate(b):
            r[off + i] -= lead * cb
        _dense_trim(r)
    return r


def _dense_gcd(a: list[int], b: list[int]) -> list[int]:
    """Full gcd over Z[x] (content included), positive leading coefficient."""
    a = _dense_trim(a[:])
    b = _dense_trim(b[:])
    if not a:
        a, b = b, a
    if not b:
        if not a:
            return []
        return a if a[-1] > 0 else [-c for c in a]
    ct = math.gcd(_dense_content(a), _dense_content(b))
    a = _dense_primitive(a)
    b = _dense_primitive(b)
    while b:
        r = _dense_prem(a, b)
        a, b = b, _dense_primitive(_dense_trim(r))
    if a[-1] < 0:
        a = [-c for c in a]
    return [ct * c for c in a]


def _dense_divexact(a: list[int], b: list[int]) -> list[int]:
    """Exact quotient a // b over Z[x]; raises if the division is not exact."""
    a = _dense_trim(a[:])
    b = _dense_trim(b[:])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return []
    if len(a) < len(b):
        raise ArithmeticError("inexact polynomial division")
    out = [0] * (len(a) - len(b) + 1)
    lb = b[-1]
    for i in reversed(range(len(out))):
        c = a[len(b) - 1 + i]
        if c:
            q, rem = divmod(c, lb)
            if rem:
                raise ArithmeticError("inexact polynomial division")
            out[i] = q
            for j, cb in enumerate(b):
                a[i + j] -= q * cb
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return out


# ---------------------------------------------------------------------------
# LaurentPoly
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Integer-coefficient Laurent polynomial in s, stored sparsely.

    The term map never stores zero coefficients, so structural equality of
    the maps is equality of polynomials.  Instances are immutable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: dict[int, int] | None = None):
        t: dict[int, int] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    t[e] = c
        object.__setattr__(self, "_terms", t)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors

    @classmethod
    def zero(cls) -> LaurentPoly:
        return _P_ZERO

    @classmethod
    def one(cls) -> LaurentPoly:
        return _P_ONE

    @classmethod
    def constant(cls, c: int) -> LaurentPoly:
        return cls({0: c})

    @classmethod
    def s_power(cls, k: int) -> LaurentPoly:
        return cls({k: 1})

    @classmethod
    def q_power(cls, k: int) -> LaurentPoly:
        """q**k as a polynomial in s, i.e. s**(2k)."""
        return cls({2 * k: 1})

    # -- inspection

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def min_exp(self) -> int:
        if not self._terms:
            return 0
        return min(self._terms)

    def max_exp(self) -> int:
        if not self._terms:
            return 0
        return max(self._terms)

    def leading_coefficient(self) -> int:
        if not self._terms:
            return 0
        return self._terms[self.max_exp()]

    def content(self) -> int:
        return _dense_content(list(self._terms.values()))

    def term_count(self) -> int:
        return len(self._terms)

    # -- arithmetic

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(tuple(sorted(self._terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            elif e in out:
                del out[e]
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return _P_ZERO
            return LaurentPoly({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self._terms or not other._terms:
            return _P_ZERO
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                elif e in out:
                    del out[e]
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) == 1:
                (e, c), = self._terms.items()
                if c in (1, -1):
                    return LaurentPoly({e * n: 1 if c == 1 else (-1) ** (n & 1)})
            raise ValueError("negative power of a non-unit Laurent polynomial")
        result = _P_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shifted(self, k: int) -> LaurentPoly:
        """Multiply by s**k."""
        if k == 0 or not self._terms:
            return self
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def evaluate(self, s0: Fraction) -> Fraction:
        total = Fraction(0)
        for e, c in self._terms.items():
            total += c * s0 ** e
        return total

    # -- serialization

    def text(self) -> str:
        """Canonical text, ascending exponents: ``"3*s^-2 + 1*s^4"``."""
        if not self._terms:
            return "0"
        return " + ".join(f"{self._terms[e]}*s^{e}" for e in sorted(self._terms))

    def __repr__(self) -> str:
        return f"LaurentPoly({self.text()!r})"


_P_ZERO = LaurentPoly()
_P_ONE = LaurentPoly({0: 1})


def _as_poly(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.constant(x)
    raise TypeError(f"cannot interpret {x!r} as a Laurent polynomial")


def laurent_divexact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact quotient of Laurent polynomials (raises if not exact)."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return _P_ZERO
    av, bv = a.min_exp(), b.min_exp()
    ad = [0] * (a.max_exp() - av + 1)
    for e, c in a._terms.items():
        ad[e - av] = c
    bd = [0] * (b.max_exp() - bv + 1)
    for e, c in b._terms.items():
        bd[e - bv] = c
    qd = _dense_divexact(ad, bd)
    shift = av - bv
    return LaurentPoly({i + shift: c for i, c in enumerate(qd) if c})


def laurent_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Gcd up to units s**k, normalized to minimal exponent 0 and positive lead."""
    if a.is_zero() and b.is_zero():
        return _P_ZERO
    if a.is_zero():
        return b.shifted(-b.min_exp()) if b.leading_coefficient() > 0 else (-b).shifted(-b.min_exp())
    if b.is_zero():
        return a.shifted(-a.min_exp()) if a.leading_coefficient() > 0 else (-a).shifted(-a.min_exp())
    av = a.min_exp()
    ad = [0] * (a.max_exp() - av + 1)
    for e, c in a._terms.items():
        ad[e - av] = c
    bv = b.min_exp()
    bd = [0] * (b.max_exp() - bv + 1)
    for e, c in b._terms.items():
        bd[e - bv] = c
    g = _dense_gcd(ad, bd)
    return LaurentPoly({i: c for i, c in enumerate(g) if c})


# ---------------------------------------------------------------------------
# RatFunc
# ---------------------------------------------------------------------------

class RatFunc:
    """Canonical fraction of two Laurent polynomials: the scalar field.

    Canonical form: numerator and denominator share no nonconstant factor
    and no integer content, the denominator has minimal exponent 0 (powers
    of s are shifted into the numerator) and positive leading coefficient.
    Equality is therefore structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        num, den = _canonical_pair(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> RatFunc:
        # Bypass canonicalization for inputs already in canonical form.
        self = object.__new__(cls)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", None)
        return self

    # -- inspection

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_polynomial(self) -> bool:
        return self.den == _P_ONE

    def term_count(self) -> int:
        return self.num.term_count() + self.den.term_count()

    # -- arithmetic

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, LaurentPoly)):
            other = RatFunc(other)
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.num, self.den))
            object.__setattr__(self, "_hash", h)
        return h

    def __add__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if self.den == _P_ONE and other.den == _P_ONE:
            return RatFunc._raw(self.num + other.num, _P_ONE)
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if self.den == _P_ONE and other.den == _P_ONE:
            return RatFunc._raw(self.num * other.num, _P_ONE)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.num.is_zero():
            raise ZeroDivisionError("inverting the zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFunc(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = RatFunc._raw(_P_ONE, _P_ONE)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def evaluate(self, s0: Fraction) -> Fraction:
        d = self.den.evaluate(s0)
        if d == 0:
            raise PoleError(f"denominator vanishes at s = {s0}")
        return self.num.evaluate(s0) / d

    # -- serialization

    def text(self) -> str:
        """Canonical text ``"(num)/(den)"``."""
        return f"({self.num.text()})/({self.den.text()})"

    def __repr__(self) -> str:
        return f"RatFunc({self.text()!r})"


def _canonical_pair(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if num.is_zero():
        return _P_ZERO, _P_ONE
    shift = den.min_exp()
    if shift:
        den = den.shifted(-shift)
        num = num.shifted(-shift)
    if den == _P_ONE:
        return num, den
    if den.term_count() == 1:
        # Denominator is an integer constant: content and sign only.
        d = den._terms[0]
        g = math.gcd(num.content(), d)
        if g > 1:
            num = LaurentPoly({e: c // g for e, c in num._terms.items()})
            d //= g
        if d < 0:
            num, d = -num, -d
        return num, LaurentPoly.constant(d)
    g = laurent_gcd(num, den)
    if g != _P_ONE:
        num = laurent_divexact(num, g)
        den = laurent_divexact(den, g)
    ct = math.gcd(num.content(), den.content())
    if ct > 1:
        num = LaurentPoly({e: c // ct for e, c in num._terms.items()})
        den = LaurentPoly({e: c // ct for e, c in den._terms.items()})
    if den.leading_coefficient() < 0:
        num, den = -num, -den
    return num, den


_R_ZERO = RatFunc(0)
_R_ONE = RatFunc(1)


# ---------------------------------------------------------------------------
# q-integers, q-factorials and the R-matrix series coefficients
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def q_integer(n: int) -> LaurentPoly:
    """The q-number [n]_q = (q^n - q^-n)/(q - q^-1) as a polynomial in s.

    Expands to q^(n-1) + q^(n-3) + ... + q^(1-n); negative n gives -[-n]_q.
    """
    if n < 0:
        return -q_integer(-n)
    return LaurentPoly({2 * (n - 1 - 2 * i): 1 for i in range(n)})


@lru_cache(maxsize=None)
def q_factorial(n: int) -> LaurentPoly:
    """[n]_q! = [n]_q [n-1]_q ... [1]_q, with [0]_q! = 1."""
    if n < 0:
        raise ValueError("q-factorial of a negative integer")
    if n == 0:
        return _P_ONE
    return q_factorial(n - 1) * q_integer(n)


@lru_cache(maxsize=None)
def r_series_coefficient(n: int) -> RatFunc:
    """Coefficient a_n = (q - q^-1)^n q^(n(n-1)/2) / [n]_q! of the R-matrix series."""
    if n < 0:
        raise ValueError("series coefficient of a negative index")
    qdiff = LaurentPoly({2: 1, -2: -1})
    num = (qdiff ** n).shifted(n * (n - 1))
    return RatFunc(num, q_factorial(n))


# ---------------------------------------------------------------------------
# exact evaluation
# ---------------------------------------------------------------------------

def check_admissible_point(s0: Fraction) -> Fraction:
    """Validate a sample point: s0 not in {0, 1, -1} and s0**4 != 1."""
    s0 = Fraction(s0)
    if s0 == 0 or s0 ** 4 == 1:
        raise ForbiddenPointError(f"s = {s0} makes q = s**2 degenerate")
    return s0


def evaluate_scalar(x, s0: Fraction) -> Fraction:
    """Exact value of a LaurentPoly or RatFunc at an admissible rational point."""
    s0 = check_admissible_point(s0)
    if isinstance(x, LaurentPoly):
        return x.evaluate(s0)
    if isinstance(x, RatFunc):
        return x.evaluate(s0)
    raise TypeError(f"cannot evaluate {x!r}")


def random_admissible_point(rng: random.Random) -> Fraction:
    """Sample s0 = p/r with 2 <= p, r <= 97 and p != r (so s0 is admissible)."""
    while True:
        p = rng.randint(2, 97)
        r = rng.randint(2, 97)
        if p != r:
            return Fraction(p, r)


# ---------------------------------------------------------------------------
# scalar domains
# ---------------------------------------------------------------------------

class ScalarDomain:
    """Factory interface for the scalars a computation runs over.

    ``SYMBOLIC`` produces exact RatFunc values; ``PointDomain(s0)`` produces
    plain Fractions obtained by substituting s = s0.  Values from either
    domain support +, -, *, /, ==, and are falsy exactly when zero, which is
    all the algebra and matrix layers rely on.
    """

    mode: str

    def s(self, k: int):
        raise NotImplementedError

    def q(self, k: int):
        return self.s(2 * k)

    def integer(self, c: int):
        raise NotImplementedError

    def from_laurent(self, p: LaurentPoly):
        raise NotImplementedError

    def from_ratio(self, num: LaurentPoly, den: LaurentPoly):
        raise NotImplementedError

    @property
    def zero(self):
        return self.integer(0)

    @property
    def one(self):
        return self.integer(1)

    def q_int(self, n: int):
        return self.from_laurent(q_integer(n))

    def q_fact(self, n: int):
        return self.from_laurent(q_factorial(n))

    def series_coeff(self, n: int):
        a = r_series_coefficient(n)
        return self.from_ratio(a.num, a.den)

    def describe(self) -> str:
        raise NotImplementedError


class SymbolicDomain(ScalarDomain):
    """Exact computation over the field Q(s)."""

    mode = "exact"

    def s(self, k: int):
        return RatFunc._raw(LaurentPoly.s_power(k), _P_ONE)

    def integer(self, c: int):
        if c == 0:
            return _R_ZERO
        if c == 1:
            return _R_ONE
        return RatFunc._raw(LaurentPoly.constant(c), _P_ONE)

    def from_laurent(self, p: LaurentPoly):
        return RatFunc._raw(p, _P_ONE)

    def from_ratio(self, num: LaurentPoly, den: LaurentPoly):
        return RatFunc(num, den)

    def describe(self) -> str:
        return "exact"

    def __eq__(self, other) -> bool:
        return isinstance(other, SymbolicDomain)

    def __hash__(self) -> int:
        return hash(SymbolicDomain)

    def __repr__(self) -> str:
        return "SymbolicDomain()"


class PointDomain(ScalarDomain):
    """Exact rational arithmetic at a fixed admissible point s = s0."""

    mode = "eval"

    def __init__(self, s0: Fraction):
        self.s0 = check_admissible_point(s0)

    def s(self, k: int):
        return self.s0 ** k

    def integer(self, c: int):
        return Fraction(c)

    def from_laurent(self, p: LaurentPoly):
        return p.evaluate(self.s0)

    def from_ratio(self, num: LaurentPoly, den: LaurentPoly):
        d = den.evaluate(self.s0)
        if d == 0:
            raise PoleError(f"denominator vanishes at s = {self.s0}")
        return num.evaluate(self.s0) / d

    def describe(self) -> str:
        return f"s={self.s0}"

    def __eq__(self, other) -> bool:
        return isinstance(other, PointDomain) and self.s0 == other.s0

    def __hash__(self) -> int:
        return hash((PointDomain, self.s0))

    def __repr__(self) -> str:
        return f"PointDomain({self.s0!r})"


SYMBOLIC = SymbolicDomain()
