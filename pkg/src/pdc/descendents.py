"""The descendent algebra of projective 3-space.

Generators are ch_i(c) with subscript i >= 0 and a cohomology class c from
{1, H, L, p}, where H is the hyperplane, L = H^2 the line class and p the
point class; an extra class token p0 names the torus-fixed point insertion
used by the equivariant series table.  Elements are finite sums of
monomials in the generators with exact rational coefficients; no relations
are imposed until normalize is applied.

normalize implements the boundary conventions: each factor ch_0(p) turns
into the scalar -1, while ch_0 of any lower class and every ch_1 kill the
monomial.  The tau labels used for series are related by
tau_k(c) = ch_{k+2}(c).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple

from .fields import rat

CLASS_NAMES = ("1", "H", "L", "p", "p0")
_CLASS_INDEX = {name: k for k, name in enumerate(CLASS_NAMES)}


class Generator(NamedTuple):
    i: int
    cls: int

    def __str__(self):
        return f"ch{self.i}({CLASS_NAMES[self.cls]})"


def gen(i: int, cls: int | str) -> Generator:
    """Build the generator ch_i of the given class."""
    if isinstance(cls, str):
        cls = _CLASS_INDEX[cls]
    if i < 0:
        raise ValueError("generator subscript must be nonnegative")
    if not 0 <= cls < len(CLASS_NAMES):
        raise ValueError(f"no cohomology class with index {cls}")
    return Generator(i, cls)


def from_tau(k: int, cls: int | str) -> Generator:
    """The generator for the descendent tau_k(c); shifts the subscript by 2."""
    if k < 0:
        raise ValueError("tau subscript must be nonnegative")
    return gen(k + 2, cls)


def class_degree(cls: int) -> int:
    """Complex degree of the class: 0,1,2,3 for 1,H,L,p and 3 for p0."""
    return 3 if cls >= 3 else cls


def generator_degree(g: Generator) -> int:
    return g.i + class_degree(g.cls) - 3


Monomial = tuple  # sorted tuple of Generators


def monomial(factors: Iterable[Generator]) -> Monomial:
    return tuple(sorted(factors))


def monomial_degree(factors: Monomial) -> int:
    return sum(generator_degree(g) for g in factors)


class DescElement:
    """Finite rational combination of generator monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        clean = {}
        for factors, c in (terms or {}).items():
            c = rat(c)
            if c:
                clean[monomial(factors)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("DescElement is immutable")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls) -> "DescElement":
        return cls({})

    @classmethod
    def constant(cls, c) -> "DescElement":
        return cls({(): rat(c)})

    @classmethod
    def of(cls, *gens: Generator, coeff=1) -> "DescElement":
        return cls({monomial(gens): rat(coeff)})

    # -- structure --------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return not self.is_zero

    def __eq__(self, other):
        if not isinstance(other, DescElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        raise TypeError("DescElement is not hashable")

    # -- arithmetic ---------------------------------------------------------------

    def __add__(self, other: "DescElement") -> "DescElement":
        out = dict(self.terms)
        for factors, c in other.terms.items():
            s = out.get(factors, 0) + c
            if s:
                out[factors] = s
            elif factors in out:
                del out[factors]
        return DescElement(out)

    def __neg__(self) -> "DescElement":
        return DescElement({factors: -c for factors, c in self.terms.items()})

    def __sub__(self, other: "DescElement") -> "DescElement":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, DescElement):
            return self.scale(other)
        out: dict = {}
        for fa, ca in self.terms.items():
            for fb, cb in other.terms.items():
                key = monomial(fa + fb)
                s = out.get(key, 0) + ca * cb
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
        return DescElement(out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "DescElement":
        c = rat(c)
        return DescElement({f: c * v for f, v in self.terms.items()})

    def mul_monomial(self, extra: Monomial) -> "DescElement":
        """Formal product with a coefficient-one monomial."""
        if not extra:
            return self
        return DescElement({monomial(f + tuple(extra)): c
                            for f, c in self.terms.items()})

    # -- display -----------------------------------------------------------------

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"DescElement({format_element(self)})"


def normalize(e: DescElement) -> DescElement:
    """Apply the boundary conventions to every monomial.

    ch_0(p) factors become the scalar -1; ch_0 of the classes 1, H, L and
    every ch_1 annihilate the monomial.  Idempotent.
    """
    out: dict = {}
    for factors, c in e.terms.items():
        coeff = c
        kept = []
        dead = False
        for g in factors:
            if g.i == 1:
                dead = True
                break
            if g.i == 0:
                if g.cls == 3:
                    coeff = -coeff
                elif g.cls < 3:
                    dead = True
                    break
                else:
                    kept.append(g)  # fixed-point class: no convention applies
            else:
                kept.append(g)
        if dead:
            continue
        key = monomial(kept)
        s = out.get(key, 0) + coeff
        if s:
            out[key] = s
        elif key in out:
            del out[key]
    return DescElement(out)


def kunneth_pairs(j: int) -> list[tuple[int, int]]:
    """Class-degree pairs (dL, dR) in the diagonal decomposition of H^j."""
    if not 0 <= j <= 3:
        raise ValueError("class power out of range")
    return [(r + j, 3 - r) for r in range(4 - j)]


def kunneth_expand(a: int, b: int, j: int) -> DescElement:
    """ch_a ch_b of H^j pushed through the diagonal of the 3-fold squared."""
    out = DescElement.zero()
    for dl, dr in kunneth_pairs(j):
        out = out + DescElement.of(gen(a, dl), gen(b, dr))
    return out


# ---------------------------------------------------------------------------
# text syntax: "ch3(p)", "tau1(L)", products with '*', sums with '+'/'-',
# rational coefficients like 3/4


class DescParseError(ValueError):
    """Descendent syntax error, with the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (position {pos})")
        self.pos = pos


class _DescParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> DescElement:
        value = self._sum()
        if self._peek():
            raise DescParseError(f"unexpected {self._peek()!r}", self.pos)
        return value

    def _sum(self) -> DescElement:
        value = self._signed_term()
        while self._peek() in ("+", "-"):
            op = self._peek()
            self.pos += 1
            rhs = self._product()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _signed_term(self) -> DescElement:
        negate = False
        if self._peek() == "-":
            negate = True
            self.pos += 1
        elif self._peek() == "+":
            self.pos += 1
        value = self._product()
        return -value if negate else value

    def _product(self) -> DescElement:
        value = self._factor()
        while self._peek() == "*":
            self.pos += 1
            value = value * self._factor()
        return value

    def _factor(self) -> DescElement:
        ch = self._peek()
        if ch.isdigit():
            return DescElement.constant(self._rational())
        if ch.isalpha():
            return DescElement.of(self._generator())
        raise DescParseError(
            f"unexpected {ch!r}" if ch else "unexpected end of input", self.pos)

    def _rational(self) -> Fraction:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        numerator = int(self.text[start:self.pos])
        if self._peek() != "/":
            return Fraction(numerator)
        mark = self.pos
        self.pos += 1
        if not self._peek().isdigit():
            self.pos = mark
            return Fraction(numerator)
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        denominator = int(self.text[start:self.pos])
        if denominator == 0:
            raise DescParseError("zero denominator", start)
        return Fraction(numerator, denominator)

    def _generator(self) -> Generator:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        name = self.text[start:self.pos]
        if name not in ("ch", "tau"):
            raise DescParseError(f"unknown symbol {name!r}", start)
        digits_start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits_start:
            raise DescParseError(f"{name} needs a subscript", self.pos)
        sub = int(self.text[digits_start:self.pos])
        if self._peek() != "(":
            raise DescParseError("expected '('", self.pos)
        self.pos += 1
        self._skip_ws()
        cls_start = self.pos
        while (self.pos < len(self.text)
               and (self.text[self.pos].isalnum())):
            self.pos += 1
        cls_name = self.text[cls_start:self.pos]
        if cls_name not in _CLASS_INDEX:
            raise DescParseError(f"unknown class {cls_name!r}", cls_start)
        if self._peek() != ")":
            raise DescParseError("expected ')'", self.pos)
        self.pos += 1
        if name == "tau":
            return from_tau(sub, cls_name)
        return gen(sub, cls_name)


def parse_element(text: str) -> DescElement:
    """Parse descendent syntax; accepts both ch and tau labels."""
    return _DescParser(text).parse()


def format_monomial(factors: Monomial) -> str:
    if not factors:
        return "1"
    return "*".join(str(g) for g in factors)


def format_element(e: DescElement) -> str:
    """Canonical printing; parse_element(format_element(e)) == e."""
    if e.is_zero:
        return "0"
    parts = []
    for factors in sorted(e.terms):
        c = e.terms[factors]
        body = format_monomial(factors)
        if not factors:
            body = str(abs(c))
        elif abs(c) != 1:
            body = f"{abs(c)}*{body}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)
