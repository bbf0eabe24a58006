"""Exact coefficient fields for the series calculus.

Four fields are supported, as a closed enumeration:

    Q         rational numbers (fractions.Fraction)
    Qi        Gaussian rationals a + b*i
    Q_s       rational functions in the tangent weights s1, s2, s3
    Q_lambda  rational functions in the torus weights lam0 .. lam3

Elements of the two parameter fields are stored as ratios of multivariate
polynomials over the integers.  A canonical representative clears the
integer content jointly from numerator and denominator and fixes the sign
of the denominator's lexicographically leading term; equality is decided
by cross multiplication, so no polynomial gcd is ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm


def rat(x: int | str | Fraction) -> Fraction:
    """Coerce an int, a string like "3/4", or a Fraction to a Fraction."""
    return x if isinstance(x, Fraction) else Fraction(x)


class GaussianRational:
    """Exact complex scalar re + im*i with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", rat(re))
        object.__setattr__(self, "im", rat(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def of(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x)
        raise TypeError(f"cannot coerce {x!r} to a Gaussian rational")

    def __add__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.of(other))

    def __rsub__(self, other):
        return GaussianRational.of(other) + (-self)

    def __mul__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussianRational.of(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.of(other) * self.inverse()

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = GaussianRational.of(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __str__(self):
        if not self.im:
            return str(self.re)
        tail = f"{abs(self.im)}*i"
        if not self.re:
            return tail if self.im > 0 else "-" + tail
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{tail}"

    __repr__ = __str__


I = GaussianRational(0, 1)


def parse_gaussian(s: str) -> GaussianRational:
    """Parse "3/4", "3/4+1/2*i", "-2*i", "0-2/3*i" back to an element."""
    t = s.replace(" ", "")
    if "i" not in t:
        return GaussianRational(Fraction(t))
    # any '+' or '-' past position 0 separates the real and imaginary parts,
    # since the rational parts themselves contain only digits and '/'
    split = None
    for pos in range(1, len(t)):
        if t[pos] in "+-":
            split = pos
            break
    if split is None:
        re_part, im_part = "0", t
    else:
        re_part, im_part = t[:split], t[split:]
    im_part = im_part.rstrip("i").rstrip("*")
    if im_part in ("", "+"):
        im = Fraction(1)
    elif im_part == "-":
        im = Fraction(-1)
    else:
        im = Fraction(im_part)
    return GaussianRational(Fraction(re_part), im)


# ---------------------------------------------------------------------------
# multivariate polynomial helpers: dict mapping exponent tuple -> Fraction

def _mv_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        elif e in out:
            del out[e]
    return out


def _mv_neg(a: dict) -> dict:
    return {e: -c for e, c in a.items()}


def _mv_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(e, 0) + ca * cb
            if s:
                out[e] = s
            elif e in out:
                del out[e]
    return out


def _mv_canonical(num: dict, den: dict, nvars: int) -> tuple[dict, dict]:
    if not den:
        raise ZeroDivisionError("division by zero in parameter field")
    unit = (0,) * nvars
    if not num:
        return {}, {unit: Fraction(1)}
    # strip the common monomial factor
    keys = list(num) + list(den)
    shift = tuple(min(k[t] for k in keys) for t in range(nvars))
    if any(shift):
        num = {tuple(x - s for x, s in zip(k, shift)): c for k, c in num.items()}
        den = {tuple(x - s for x, s in zip(k, shift)): c for k, c in den.items()}
    # clear to integer coefficients, then remove the joint integer content
    scale = 1
    for c in list(num.values()) + list(den.values()):
        scale = lcm(scale, c.denominator)
    content = 0
    for c in list(num.values()) + list(den.values()):
        content = gcd(content, abs(c.numerator * (scale // c.denominator)))
    factor = Fraction(scale, content)
    if factor != 1:
        num = {e: c * factor for e, c in num.items()}
        den = {e: c * factor for e, c in den.items()}
    # fix the sign of the denominator's lexicographically leading term
    if den[max(den)] < 0:
        num = _mv_neg(num)
        den = _mv_neg(den)
    return num, den


@dataclass(frozen=True, eq=False)
class ParamRational:
    """Ratio of multivariate polynomials in a parameter field."""

    tag: str
    num: dict
    den: dict

    @classmethod
    def make(cls, tag: str, num: dict, den: dict) -> "ParamRational":
        nvars = len(FIELD_VARS[tag])
        n, d = _mv_canonical(num, den, nvars)
        return cls(tag, n, d)

    @classmethod
    def const(cls, tag: str, c) -> "ParamRational":
        nvars = len(FIELD_VARS[tag])
        unit = (0,) * nvars
        c = rat(c)
        return cls.make(tag, {unit: c} if c else {}, {unit: Fraction(1)})

    @classmethod
    def gen(cls, tag: str, name: str) -> "ParamRational":
        names = FIELD_VARS[tag]
        idx = names.index(name)
        e = tuple(1 if t == idx else 0 for t in range(len(names)))
        unit = (0,) * len(names)
        return cls(tag, {e: Fraction(1)}, {unit: Fraction(1)})

    def _of(self, x) -> "ParamRational":
        if isinstance(x, ParamRational):
            if x.tag != self.tag:
                raise TypeError(f"mixed parameter fields {self.tag}/{x.tag}")
            return x
        if isinstance(x, (int, Fraction)):
            return ParamRational.const(self.tag, x)
        raise TypeError(f"cannot coerce {x!r} into {self.tag}")

    def __add__(self, other):
        o = self._of(other)
        num = _mv_add(_mv_mul(self.num, o.den), _mv_mul(o.num, self.den))
        return ParamRational.make(self.tag, num, _mv_mul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return ParamRational(self.tag, _mv_neg(self.num), self.den)

    def __sub__(self, other):
        return self + (-self._of(other))

    def __rsub__(self, other):
        return self._of(other) + (-self)

    def __mul__(self, other):
        o = self._of(other)
        return ParamRational.make(self.tag, _mv_mul(self.num, o.num),
                                  _mv_mul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._of(other)
        if not o.num:
            raise ZeroDivisionError("division by zero in parameter field")
        return ParamRational.make(self.tag, _mv_mul(self.num, o.den),
                                  _mv_mul(self.den, o.num))

    def __rtruediv__(self, other):
        return self._of(other) / self

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        try:
            o = self._of(other)
        except TypeError:
            return NotImplemented
        return _mv_mul(self.num, o.den) == _mv_mul(o.num, self.den)

    def __hash__(self):
        raise TypeError("ParamRational is not hashable")

    def _poly_str(self, poly: dict) -> str:
        names = FIELD_VARS[self.tag]
        parts = []
        for e in sorted(poly, reverse=True):
            c = poly[e]
            mono = "*".join(
                n if k == 1 else f"{n}^{k}"
                for n, k in zip(names, e) if k)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts) if parts else "0"

    def __str__(self):
        unit = (0,) * len(FIELD_VARS[self.tag])
        ns = self._poly_str(self.num)
        if self.den == {unit: Fraction(1)}:
            return ns
        ds = self._poly_str(self.den)
        if len(self.num) > 1:
            ns = f"({ns})"
        if len(self.den) > 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    __repr__ = __str__


FIELD_VARS = {
    "Q": (),
    "Qi": (),
    "Q_s": ("s1", "s2", "s3"),
    "Q_lambda": ("lam0", "lam1", "lam2", "lam3"),
}


def _mono_key(e: tuple, names: tuple) -> str:
    parts = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k]
    return "*".join(parts) if parts else "1"


def _mono_from_key(key: str, names: tuple) -> tuple:
    e = [0] * len(names)
    if key != "1":
        for part in key.split("*"):
            name, _, power = part.partition("^")
            e[names.index(name)] = int(power) if power else 1
    return tuple(e)


@dataclass(frozen=True)
class Field:
    """One of the four coefficient fields, with coercion and serialization."""

    tag: str

    @property
    def var_names(self) -> tuple:
        return FIELD_VARS[self.tag]

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def coerce(self, x):
        if self.tag == "Q":
            if isinstance(x, (int, Fraction)):
                return rat(x)
            raise TypeError(f"cannot coerce {x!r} into Q")
        if self.tag == "Qi":
            return GaussianRational.of(x)
        if isinstance(x, ParamRational):
            if x.tag != self.tag:
                raise TypeError(f"mixed parameter fields {self.tag}/{x.tag}")
            return x
        return ParamRational.const(self.tag, x)

    def gen(self, name: str):
        return ParamRational.gen(self.tag, name)

    def gens(self) -> tuple:
        return tuple(self.gen(n) for n in self.var_names)

    def coeff_str(self, c) -> str:
        return str(c)

    def coeff_to_json(self, c):
        if self.tag in ("Q", "Qi"):
            return str(c)
        names = self.var_names
        return {
            "num": {_mono_key(e, names): str(v) for e, v in sorted(c.num.items())},
            "den": {_mono_key(e, names): str(v) for e, v in sorted(c.den.items())},
        }

    def coeff_from_json(self, v):
        if self.tag == "Q":
            return Fraction(v)
        if self.tag == "Qi":
            return parse_gaussian(v)
        names = self.var_names
        num = {_mono_from_key(k, names): Fraction(c) for k, c in v["num"].items()}
        den = {_mono_from_key(k, names): Fraction(c) for k, c in v["den"].items()}
        return ParamRational.make(self.tag, num, den)


FIELDS = {tag: Field(tag) for tag in FIELD_VARS}


def field(tag: str) -> Field:
    """Look up a coefficient field by its tag."""
    try:
        return FIELDS[tag]
    except KeyError:
        raise ValueError(f"unknown coefficient field {tag!r}") from None


Q = FIELDS["Q"]
QI = FIELDS["Qi"]
QS = FIELDS["Q_s"]
QLAMBDA = FIELDS["Q_lambda"]
