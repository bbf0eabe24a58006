"""Laurent series with explicit truncation tracking.

A series knows its variable (q or u), the exponent of its first possibly
nonzero term, a coefficient window, and the first exponent that is no
longer known exactly.  Arithmetic is exact on the known window and the
truncation bound is propagated conservatively.

Two expansion engines live here: laurent_expand turns a rational function
into its q-expansion by long division, and u_expand performs the exact
variable change q = -exp(i*u) together with the prefactor
exp(-i*d_beta*u/2), producing a series over the Gaussian rationals whose
pole order at u = 0 equals the pole order of the input at q = -1.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .fields import GaussianRational, field
from .ratfun import RationalFunction


class LaurentSeries:
    __slots__ = ("var", "min_exp", "coeffs", "order", "field")

    def __init__(self, var: str, min_exp: int, coeffs, order: int, f="Q"):
        if var not in ("q", "u"):
            raise ValueError("series variable must be 'q' or 'u'")
        f = field(f) if isinstance(f, str) else f
        cs = [f.coerce(c) for c in coeffs]
        if min_exp + len(cs) != order:
            raise ValueError("coefficient window does not match order")
        while cs and not cs[0]:
            cs.pop(0)
            min_exp += 1
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "min_exp", min_exp)
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "field", f)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentSeries is immutable")

    # -- access ---------------------------------------------------------------

    def coeff(self, n: int):
        """Exact coefficient of var**n; n must lie below the truncation order."""
        if n >= self.order:
            raise ValueError(f"coefficient of exponent {n} is beyond order {self.order}")
        if n < self.min_exp:
            return self.field.zero
        return self.coeffs[n - self.min_exp]

    def as_dict(self) -> dict:
        return {self.min_exp + k: c for k, c in enumerate(self.coeffs) if c}

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def _check_compatible(self, other: "LaurentSeries"):
        if self.var != other.var or self.field.tag != other.field.tag:
            raise ValueError("series in different variables or fields")

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        self._check_compatible(other)
        order = min(self.order, other.order)
        lo = min(self.min_exp if self.coeffs else order,
                 other.min_exp if other.coeffs else order)
        coeffs = [self.coeff(n) + other.coeff(n) for n in range(lo, order)]
        return LaurentSeries(self.var, lo, coeffs, order, self.field)

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries(self.var, self.min_exp, [-c for c in self.coeffs],
                             self.order, self.field)

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        # a series with empty window has min_exp == order, so the bounds
        # below cover vanishing factors as well
        self._check_compatible(other)
        lo = self.min_exp + other.min_exp
        order = min(self.order + other.min_exp, other.order + self.min_exp)
        coeffs = [self.field.zero] * (order - lo)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if not b:
                    continue
                n = self.min_exp + i + other.min_exp + j
                if n < order:
                    coeffs[n - lo] = coeffs[n - lo] + a * b
        return LaurentSeries(self.var, lo, coeffs, order, self.field)

    def scale(self, c) -> "LaurentSeries":
        c = self.field.coerce(c)
        if not c:
            return LaurentSeries(self.var, self.order, [], self.order, self.field)
        return LaurentSeries(self.var, self.min_exp,
                             [a * c for a in self.coeffs], self.order, self.field)

    def substitute_negated(self) -> "LaurentSeries":
        """The series S(-x) for series variable x."""
        coeffs = [c if (self.min_exp + k) % 2 == 0 else -c
                  for k, c in enumerate(self.coeffs)]
        return LaurentSeries(self.var, self.min_exp, coeffs, self.order, self.field)

    def conjugate(self) -> "LaurentSeries":
        if self.field.tag != "Qi":
            return self
        return LaurentSeries(self.var, self.min_exp,
                             [c.conjugate() for c in self.coeffs],
                             self.order, self.field)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.var == other.var and self.field.tag == other.field.tag
                and self.min_exp == other.min_exp and self.order == other.order
                and self.coeffs == other.coeffs)

    def __hash__(self):
        raise TypeError("LaurentSeries is not hashable")

    # -- display ----------------------------------------------------------------

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            n = self.min_exp + k
            cs = self.field.coeff_str(c)
            plain = all(ch in "0123456789/" for ch in cs.lstrip("-"))
            if plain:
                neg = cs.startswith("-")
                body = cs.lstrip("-")
            else:
                neg = False
                body = f"({cs})"
            if n != 0:
                power = self.var if n == 1 else f"{self.var}^{n}"
                body = power if body == "1" else f"{body}*{power}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        head = " ".join(parts) if parts else "0"
        return f"{head} + O({self.var}^{self.order})"

    __repr__ = __str__


# ---------------------------------------------------------------------------
# power series helpers on plain coefficient lists (index = exponent)


def _ps_mul(a: list, b: list, n: int, zero) -> list:
    out = [zero] * n
    for i, x in enumerate(a):
        if not x or i >= n:
            continue
        for j, y in enumerate(b):
            if i + j >= n:
                break
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def _ps_inv(a: list, n: int, one) -> list:
    """Reciprocal of a power series with invertible constant term."""
    if not a or not a[0]:
        raise ZeroDivisionError("series reciprocal needs a unit constant term")
    inv0 = one / a[0]
    out = [inv0] + [one * 0 for _ in range(n - 1)]
    zero = one * 0
    for k in range(1, n):
        acc = zero
        for j in range(1, min(k, len(a) - 1) + 1):
            if a[j]:
                acc = acc + a[j] * out[k - j]
        out[k] = -inv0 * acc
    return out


def laurent_expand(F: RationalFunction, max_exp: int) -> LaurentSeries:
    """Expand a rational function around q = 0 through the given exponent."""
    f = F.field
    order = max_exp + 1
    if F.is_zero:
        return LaurentSeries("q", order, [], order, f)
    vn, vd = F.num.valuation, F.den.valuation
    lo = vn - vd
    count = order - lo
    if count <= 0:
        return LaurentSeries("q", order, [], order, f)
    num_unit = list(F.num.coeffs[vn:])
    den_unit = list(F.den.coeffs[vd:])
    inv_den = _ps_inv(den_unit, count, f.one)
    coeffs = _ps_mul(num_unit, inv_den, count, f.zero)
    return LaurentSeries("q", lo, coeffs, order, f)


def _exp_series(c: GaussianRational, n: int) -> list:
    """Power series of exp(c*u) through u**(n-1), over the Gaussian rationals."""
    out = [GaussianRational(1)]
    power = GaussianRational(1)
    for k in range(1, n):
        power = power * c
        out.append(power / factorial(k))
    return out


def _substitute_neg_exp(poly, n: int) -> list:
    """Power series in u of p(-exp(i*u)) through u**(n-1)."""
    qi = field("Qi")
    out = [qi.zero] * n
    for k, c in enumerate(poly.coeffs):
        if not c:
            continue
        ck = qi.coerce(c) * ((-1) ** k)
        for idx, e in enumerate(_exp_series(GaussianRational(0, k), n)):
            out[idx] = out[idx] + ck * e
    return out


def u_expand(F: RationalFunction, d_beta: int, max_exp: int) -> LaurentSeries:
    """Laurent expansion at u = 0 of exp(-i*d_beta*u/2) * F(-exp(i*u)).

    The result lives over the Gaussian rationals.  Coefficients through
    u**max_exp are exact; the prefactor implements (-q)**(-d_beta/2) for
    either parity of d_beta without any branch choice.
    """
    if F.field.tag not in ("Q", "Qi"):
        raise TypeError("u_expand needs numeric coefficients (Q or Qi)")
    qi = field("Qi")
    order = max_exp + 1
    if F.is_zero:
        return LaurentSeries("u", order, [], order, qi)
    # enough working terms that the denominator window stays exact past the
    # deepest possible vanishing at u = 0 (order at most deg den)
    work = max(0, max_exp) + 2 * F.den.degree + F.num.degree + 2
    num_s = _substitute_neg_exp(F.num, work)
    den_s = _substitute_neg_exp(F.den, work)
    val_d = next(k for k, c in enumerate(den_s) if c)
    val_n = next((k for k, c in enumerate(num_s) if c), None)
    if val_n is None or val_n - val_d > max_exp:
        return LaurentSeries("u", order, [], order, qi)
    lo = val_n - val_d
    count = order - lo
    inv_den = _ps_inv(den_s[val_d:], count, qi.one)
    quotient = _ps_mul(num_s[val_n:], inv_den, count, qi.zero)
    prefactor = _exp_series(GaussianRational(0, Fraction(-d_beta, 2)), count)
    coeffs = _ps_mul(quotient, prefactor, count, qi.zero)
    return LaurentSeries("u", lo, coeffs, order, qi)
