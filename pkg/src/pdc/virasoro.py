"""Virasoro-type operators on the descendent algebra.

An operator is a sum of terms (coefficient, multiplier monomial,
derivation), where the derivation slot holds either the identity or one of
the weighted shift derivations (written R_k here, k >= -1).  A term acts
on an element E as derivation(multiplier * E): the multiplication happens
first, on formal symbols, the derivation is applied by the product rule
treating every generator (including ch_0 and ch_1) as free, and only then
is the result normalized.  That ordering matters: R_{-1}(ch_1(p) * D)
contributes ch_0(p) * D, which normalizes to -D, and the degree-0
constraint operator depends on exactly this contribution.

R_k multiplies a generator of degree x by the rising factorial
x (x+1) ... (x+k) while shifting the subscript by k; R_{-1} is the plain
downward shift, with subscripts below zero giving zero.

The quadratic operators combine the diagonal expansion of the hyperplane
class square with factorial weights, a point-class square term and R_k;
the full constraint operators add a shifted point-class multiplication
followed by the downward shift.  The commutator is computed symbolically:
the derivation-derivation bracket is [R_k, R_m] = (m-k) R_{k+m}, a
derivation moves past a multiplication by acting on the multiplier, and
multiplications commute.  (Composing two shift derivations directly would
NOT reproduce the bracket on the boundary of the algebra: subscripts below
zero are truncated away, so the double application loses the terms that
pass through negative subscripts.  The symbolic bracket uses the algebraic
relation instead, which is the relation the constraint theory asserts.)
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import NamedTuple

from .descendents import (DescElement, Generator, Monomial, class_degree,
                          gen, kunneth_pairs, monomial, normalize,
                          format_monomial)


class Term(NamedTuple):
    coeff: Fraction
    mult: Monomial
    deriv: int | None  # None for identity, k for the shift derivation R_k


def _deriv_key(deriv: int | None) -> tuple:
    return (0, 0) if deriv is None else (1, deriv)


class VirasoroOperator:
    __slots__ = ("terms",)

    def __init__(self, terms):
        merged: dict = {}
        for coeff, mult, deriv in terms:
            coeff = Fraction(coeff)
            if deriv is not None and deriv < -1:
                raise ValueError("derivation index below -1: malformed operator")
            key = (mult, deriv)
            s = merged.get(key, 0) + coeff
            if s:
                merged[key] = s
            elif key in merged:
                del merged[key]
        ordered = sorted(merged, key=lambda k: (_deriv_key(k[1]), k[0]))
        object.__setattr__(self, "terms",
                           tuple(Term(merged[k], k[0], k[1]) for k in ordered))

    def __setattr__(self, name, value):
        raise AttributeError("VirasoroOperator is immutable")

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "VirasoroOperator") -> "VirasoroOperator":
        return VirasoroOperator(self.terms + other.terms)

    def __sub__(self, other: "VirasoroOperator") -> "VirasoroOperator":
        return self + other.scale(-1)

    def scale(self, c) -> "VirasoroOperator":
        c = Fraction(c)
        return VirasoroOperator([Term(c * t.coeff, t.mult, t.deriv)
                                 for t in self.terms])

    def compose_mult(self, extra: Monomial) -> "VirasoroOperator":
        """The operator following multiplication by a monomial."""
        extra = tuple(extra)
        return VirasoroOperator([Term(t.coeff, monomial(t.mult + extra),
                                      t.deriv) for t in self.terms])

    def __eq__(self, other):
        if not isinstance(other, VirasoroOperator):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        raise TypeError("VirasoroOperator is not hashable")

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for coeff, mult, deriv in self.terms:
            pieces = []
            if deriv is not None:
                pieces.append(f"R_{deriv}")
            if mult:
                pieces.append(format_monomial(mult))
            body = " ".join(pieces)
            if not body:
                body = str(abs(coeff))
            elif abs(coeff) != 1:
                body = f"{abs(coeff)}*{body}"
            if not parts:
                parts.append(("-" if coeff < 0 else "") + body)
            else:
                parts.append(("- " if coeff < 0 else "+ ") + body)
        return " ".join(parts)

    __repr__ = __str__


def identity_op() -> VirasoroOperator:
    return VirasoroOperator([Term(Fraction(1), (), None)])


def multiplication_op(factors: Monomial, coeff=1) -> VirasoroOperator:
    """Multiplication by a fixed monomial, as an operator."""
    return VirasoroOperator([Term(Fraction(coeff), monomial(factors), None)])


def shift_op(k: int) -> VirasoroOperator:
    """The bare shift derivation R_k, as an operator."""
    return VirasoroOperator([Term(Fraction(1), (), k)])


def shift_weight(k: int, g: Generator) -> int:
    """Rising-factorial weight x(x+1)...(x+k) at x = the generator degree."""
    x = g.i + class_degree(g.cls) - 3
    w = 1
    for n in range(k + 1):
        w *= x + n
    return w


def apply_shift(k: int, e: DescElement) -> DescElement:
    """The shift derivation R_k: product rule over factors; scalars die."""
    if k < -1:
        raise ValueError("the shift derivation needs k >= -1")
    acc: dict = {}
    for factors, c in e.terms.items():
        for idx, g in enumerate(factors):
            w = shift_weight(k, g)
            if not w:
                continue
            ni = g.i + k
            if ni < 0:
                continue  # subscripts below zero vanish
            shifted = monomial(factors[:idx] + (gen(ni, g.cls),)
                               + factors[idx + 1:])
            s = acc.get(shifted, 0) + c * w
            if s:
                acc[shifted] = s
            elif shifted in acc:
                del acc[shifted]
    return DescElement(acc)


def apply_op(op: VirasoroOperator, e: DescElement) -> DescElement:
    """Apply the operator: multiply, derive on formal symbols, normalize."""
    total = DescElement.zero()
    for coeff, mult, deriv in op.terms:
        x = e.mul_monomial(mult)
        if deriv is not None:
            x = apply_shift(deriv, x)
        total = total + normalize(x).scale(coeff)
    return total


def _fact_or_zero(n: int) -> int:
    return factorial(n) if n >= 0 else 0


def build_quadratic(k: int) -> VirasoroOperator:
    """The weighted quadratic operator of index k >= -1 (written L_k).

    Sum of: -2 times the diagonal expansion of ch_a ch_b of the hyperplane
    class over a+b = k+2, each Kunneth piece weighted by factorials of the
    shifted subscripts (negative-argument factorials vanish); the
    point-class square terms a! b! ch_a(p) ch_b(p) over a+b = k; and the
    shift derivation R_k.
    """
    if k < -1:
        raise ValueError("operator index must be at least -1")
    terms = []
    for a in range(k + 3):
        b = k + 2 - a
        for dl, dr in kunneth_pairs(1):
            w = _fact_or_zero(a + dl - 3) * _fact_or_zero(b + dr - 3)
            if not w:
                continue
            sign = (-1) ** (dl * dr)
            terms.append(Term(Fraction(-2 * sign * w),
                              monomial((gen(a, dl), gen(b, dr))), None))
    for a in range(k + 1):
        b = k - a
        terms.append(Term(Fraction(factorial(a) * factorial(b)),
                          monomial((gen(a, 3), gen(b, 3))), None))
    terms.append(Term(Fraction(1), (), k))
    return VirasoroOperator(terms)


def build_constraint(k: int) -> VirasoroOperator:
    """The full constraint operator: the quadratic operator plus
    (k+1)! R_{-1} following multiplication by ch_{k+1}(p)."""
    extra = Term(Fraction(factorial(k + 1)), (gen(k + 1, 3),), -1)
    return VirasoroOperator(build_quadratic(k).terms + (extra,))


def build_constraint_composed(k: int) -> VirasoroOperator:
    """The same constraint operator assembled through the identity
    "quadratic(k) + (k+1)! quadratic(-1) after multiplication by
    ch_{k+1}(p)"; must act identically to build_constraint(k)."""
    tail = build_quadratic(-1).compose_mult((gen(k + 1, 3),))
    return build_quadratic(k) + tail.scale(factorial(k + 1))


def commutator(A: VirasoroOperator, B: VirasoroOperator) -> VirasoroOperator:
    """Symbolic commutator [A, B], canonically merged.

    Uses [R_k, R_m] = (m-k) R_{k+m}, moves derivations past
    multiplications by acting on the multiplier, and drops
    multiplication-multiplication pairs.  Raises if a term would leave
    the closed term class (which signals a construction bug).
    """
    out = []
    for c1, x, d1 in A.terms:
        for c2, y, d2 in B.terms:
            c = c1 * c2
            if d1 is not None and d2 is not None and d1 != d2:
                if d1 + d2 < -1:
                    raise ValueError("commutator left the operator class")
                out.append(Term((d2 - d1) * c, monomial(x + y), d1 + d2))
            if d1 is not None and y:
                for factors, cf in apply_shift(d1,
                                               DescElement({y: 1})).terms.items():
                    out.append(Term(c * cf, monomial(x + factors), d2))
            if d2 is not None and x:
                for factors, cf in apply_shift(d2,
                                               DescElement({x: 1})).terms.items():
                    out.append(Term(-c * cf, monomial(y + factors), d1))
    return VirasoroOperator(out)


def generator_monomials(gen_bound: int, max_factors: int,
                        classes=(0, 1, 2, 3), min_sub: int = 0) -> list[Monomial]:
    """Every monomial with at most max_factors factors over the given
    classes, with subscripts between min_sub and gen_bound."""
    gens = [gen(i, cls) for i in range(min_sub, gen_bound + 1)
            for cls in classes]
    out: list[Monomial] = [()]
    level: list[tuple[Monomial, int]] = [((), 0)]
    for _ in range(max_factors):
        grown = []
        for factors, start in level:
            for idx in range(start, len(gens)):
                grown.append((factors + (gens[idx],), idx))
        level = grown
        out.extend(monomial(m) for m, _ in level)
    return out


def bracket_check(k: int, m: int, gen_bound: int) -> bool:
    """Compare the symbolic bracket of two quadratic operators with
    (m-k) times the quadratic operator of index k+m.

    Both sides are applied to every monomial with at most two factors and
    subscripts up to gen_bound; actions are compared after normalization.
    """
    if k < -1 or m < -1:
        raise ValueError("bracket indices must be at least -1")
    lhs = commutator(build_quadratic(k), build_quadratic(m))
    if k == m:
        rhs = VirasoroOperator(())  # the bracket of an operator with itself
    else:
        rhs = build_quadratic(k + m).scale(m - k)
    for factors in generator_monomials(gen_bound, 2):
        e = DescElement({factors: 1})
        if apply_op(lhs, e) != apply_op(rhs, e):
            return False
    return True
