"""Rational functions of q with exact coefficients.

The canonical representative has coprime numerator and denominator and a
denominator whose lowest-order nonzero coefficient equals one, so series
like q/(1+q)^2 print with the denominator expanded exactly as written.
Equality is plain structural comparison of canonical forms.

Besides field arithmetic the module provides the operations that the
series checks are built from: substitution q -> 1/q, the operator q d/dq,
the functional-equation test F(1/q) == sign * q^(-d) * F(q), and the
divisibility test confining poles to q = 0 and roots of 1 - (-q)^m.
"""

from __future__ import annotations

from fractions import Fraction

from .fields import Field, field
from .polynomial import Polynomial


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial):
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        f = num.field
        if f.tag != den.field.tag:
            raise TypeError("numerator and denominator over different fields")
        if num.is_zero:
            num, den = Polynomial.zero(f), Polynomial.one(f)
        else:
            g = Polynomial.gcd(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
            low = den.coeffs[den.valuation]
            if low != f.one:
                inv = 1 / low
                num = num.scale(inv)
                den = den.scale(inv)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def _from_canonical(cls, num: Polynomial,
                        den: Polynomial) -> "RationalFunction":
        # Internal: num/den must already be coprime with the denominator's
        # lowest-order nonzero coefficient equal to one.  Used where that
        # is known structurally, to avoid a Euclidean pass whose
        # intermediate coefficients blow up over the parameter fields.
        obj = object.__new__(cls)
        object.__setattr__(obj, "num", num)
        object.__setattr__(obj, "den", den)
        return obj

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, f) -> "RationalFunction":
        f = field(f) if isinstance(f, str) else f
        return cls(Polynomial.zero(f), Polynomial.one(f))

    @classmethod
    def one(cls, f) -> "RationalFunction":
        f = field(f) if isinstance(f, str) else f
        return cls(Polynomial.one(f), Polynomial.one(f))

    @classmethod
    def const(cls, f, c) -> "RationalFunction":
        f = field(f) if isinstance(f, str) else f
        return cls(Polynomial.const(f, c), Polynomial.one(f))

    @classmethod
    def q(cls, f) -> "RationalFunction":
        f = field(f) if isinstance(f, str) else f
        return cls(Polynomial.q(f), Polynomial.one(f))

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "RationalFunction":
        return cls(p, Polynomial.one(p.field))

    # -- structure -----------------------------------------------------------

    @property
    def field(self) -> Field:
        return self.num.field

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __bool__(self):
        return not self.is_zero

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        raise TypeError("RationalFunction is not hashable")

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        return RationalFunction(self.num * o.den + o.num * self.den,
                                self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            return (RationalFunction.one(self.field) / self) ** (-n)
        return RationalFunction(self.num ** n, self.den ** n)

    def scale_monomial(self, c, k: int = 0) -> "RationalFunction":
        """Multiply by c * q**k without a Euclidean pass.

        A nonzero scalar preserves coprimality, and a power of q cancels
        directly against whichever side carries the factor q, so the
        canonical form can be assembled outright.  This keeps scalar and
        monomial multiplication cheap over the parameter fields, whose
        coefficients do not simplify.
        """
        f = self.field
        c = f.coerce(c)
        if self.is_zero or c == f.zero:
            return RationalFunction.zero(f)
        num, den = self.num.scale(c), self.den
        if k > 0:
            t = min(k, den.valuation)
            num = num.shift(k - t)
            if t:
                den = Polynomial(f, den.coeffs[t:])
        elif k < 0:
            t = min(-k, num.valuation)
            if t:
                num = Polynomial(f, num.coeffs[t:])
            den = den.shift(-k - t)
        return RationalFunction._from_canonical(num, den)

    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction.from_polynomial(other)
        return RationalFunction.const(self.field, other)

    # -- display -------------------------------------------------------------

    def to_str(self, var: str = "q") -> str:
        ns = self.num.to_str(var)
        if self.den.degree == 0:
            return ns
        return f"({ns})/({self.den.to_str(var)})"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"RationalFunction[{self.field.tag}]({self.to_str()})"


def rf_make(num, den) -> RationalFunction:
    """Canonical rational function from a numerator/denominator pair."""
    if not isinstance(num, Polynomial):
        raise TypeError("rf_make expects Polynomial arguments")
    return RationalFunction(num, den)


def invert_q(F: RationalFunction) -> RationalFunction:
    """Exact substitution q -> 1/q, cleared back to polynomial form.

    The reversal of a polynomial has nonzero constant term, so the
    reversals of a coprime pair are again coprime and the result is
    assembled in canonical form directly.
    """
    if F.is_zero:
        return F
    f = F.field
    num, den = F.num.reversed_(), F.den.reversed_()
    e = F.den.degree - F.num.degree
    if e >= 0:
        num = num.shift(e)
    else:
        den = den.shift(-e)
    low = den.coeffs[den.valuation]
    if low != f.one:
        inv = 1 / low
        num, den = num.scale(inv), den.scale(inv)
    return RationalFunction._from_canonical(num, den)


def q_ddq(F: RationalFunction) -> RationalFunction:
    """The operator q d/dq applied exactly."""
    num = F.num.deriv() * F.den - F.num * F.den.deriv()
    return RationalFunction(num.shift(1), F.den * F.den)


def fe_check(F: RationalFunction, d_beta: int, sign: int) -> bool:
    """Does F satisfy F(1/q) == sign * q**(-d_beta) * F(q) exactly?

    Decided by cross multiplication: writing F = N/D with degrees n, m
    and revP = q**deg(P) * P(1/q), the identity is equivalent to the
    polynomial identity q**(m-n+d_beta) * revN * D == sign * N * revD
    (the power of q moves to the right-hand side when the exponent is
    negative).  No cancellation is attempted, so the test stays cheap
    over the parameter fields.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if F.is_zero:
        return True
    lhs = F.num.reversed_() * F.den
    rhs = F.num * F.den.reversed_()
    if sign == -1:
        rhs = -rhs
    e = F.den.degree - F.num.degree + d_beta
    if e >= 0:
        lhs = lhs.shift(e)
    else:
        rhs = rhs.shift(-e)
    return lhs == rhs


def pole_check(F: RationalFunction, d: int) -> bool:
    """True when the denominator divides q**a * prod_{m<=d} (1-(-q)**m)**b_m.

    Equivalently: every pole of F lies at q = 0 or at a root of some
    1 - (-q)**m with m <= d.  Decided by repeatedly dividing out
    gcd(den, q * prod(1 - (-q)**m)); no factorization is needed.
    """
    if d < 1:
        raise ValueError("d must be a positive integer")
    f = F.field
    allowed = Polynomial.q(f)
    for m in range(1, d + 1):
        factor = Polynomial.one(f) - Polynomial.monomial(f, (-1) ** m, m)
        allowed = allowed * factor
    den = F.den
    while den.degree > 0:
        g = Polynomial.gcd(den, allowed)
        if g.degree < 1:
            return False
        den = den.exact_div(g)
    return True


# ---------------------------------------------------------------------------
# small expression parser for command-line rational-function input


class RFParseError(ValueError):
    """Rational-function syntax error, with the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (position {pos})")
        self.pos = pos


class _RFParser:
    """Recursive descent over: rationals, q, + - * / ^ and parentheses."""

    def __init__(self, text: str, f: Field):
        self.text = text
        self.f = f
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> RationalFunction:
        value = self._expr()
        if self._peek():
            raise RFParseError(f"unexpected {self._peek()!r}", self.pos)
        return value

    def _expr(self) -> RationalFunction:
        ch = self._peek()
        negate = False
        if ch in ("+", "-"):
            self.pos += 1
            negate = ch == "-"
        value = self._term()
        if negate:
            value = -value
        while self._peek() in ("+", "-"):
            op = self._peek()
            self.pos += 1
            rhs = self._term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _term(self) -> RationalFunction:
        value = self._factor()
        while self._peek() in ("*", "/"):
            op = self._peek()
            self.pos += 1
            rhs = self._factor()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero:
                    raise RFParseError("division by zero", self.pos)
                value = value / rhs
        return value

    def _factor(self) -> RationalFunction:
        value = self._atom()
        while self._peek() == "^":
            self.pos += 1
            value = value ** self._int()
        return value

    def _atom(self) -> RationalFunction:
        ch = self._peek()
        if ch == "(":
            self.pos += 1
            value = self._expr()
            if self._peek() != ")":
                raise RFParseError("expected ')'", self.pos)
            self.pos += 1
            return value
        if ch == "-":
            self.pos += 1
            return -self._atom()
        if ch == "q":
            self.pos += 1
            return RationalFunction.q(self.f)
        if ch.isdigit():
            return RationalFunction.const(self.f, Fraction(self._int()))
        raise RFParseError(f"unexpected {ch!r}" if ch else "unexpected end of input",
                           self.pos)

    def _int(self) -> int:
        self._skip_ws()
        sign = 1
        if self._peek() == "-":
            sign = -1
            self.pos += 1
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise RFParseError("expected an integer", self.pos)
        return sign * int(self.text[start:self.pos])


def parse_rf(text: str, f: Field | str = "Q") -> RationalFunction:
    """Parse expressions like "q*(1+q^2)/(1+q)^2" into canonical form."""
    f = field(f) if isinstance(f, str) else f
    return _RFParser(text, f).parse()
