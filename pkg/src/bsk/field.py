"""Exact scalars and a univariate rational-function field over Q.

Rationals are plain :class:`fractions.Fraction` values.  ``UniRatFun`` is a
reduced quotient of two ``UniPoly`` values with a monic denominator; every
arithmetic result is re-canonicalized, so equality is structural.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

Rat = Fraction


class PoleAtPoint(ArithmeticError):
    """A denominator vanished at the requested evaluation point."""


class IndeterminateAtPoint(ArithmeticError):
    """Reserved: cannot occur for canonical rational functions."""


class HigherOrderPole(ArithmeticError):
    """Residue requested at a pole of order two or more."""


class DivisionByZero(ZeroDivisionError):
    pass


def as_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rat(x)
    raise TypeError(f"not an exact rational: {x!r}")


def parse_rat(text: str) -> Fraction:
    text = text.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", text):
        raise ValueError(f"bad rational literal {text!r}")
    value = Fraction(text)
    return value


def format_rat(x) -> str:
    x = as_rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------- polynomials

def _trim(coeffs: list) -> tuple:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class UniPoly:
    """Dense polynomial with ``Fraction`` coefficients, lowest degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        self.c = _trim([as_rat(a) for a in coeffs])

    @classmethod
    def _raw(cls, coeffs: tuple) -> "UniPoly":
        p = object.__new__(cls)
        p.c = coeffs
        return p

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def lead(self) -> Fraction:
        return self.c[-1]

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"UniPoly({[format_rat(a) for a in self.c]})"

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, x in enumerate(b):
            out[k] += x
        return UniPoly._raw(_trim(out))

    def __neg__(self):
        return UniPoly._raw(tuple(-a for a in self.c))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.c, other.c
        if not a or not b:
            return UniPoly._raw(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return UniPoly._raw(_trim(out))

    def scale(self, k) -> "UniPoly":
        k = as_rat(k)
        if k == 0:
            return UniPoly._raw(())
        return UniPoly._raw(tuple(a * k for a in self.c))

    def divmod(self, other: "UniPoly"):
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.c)
        db = other.degree
        lb = other.lead()
        if len(rem) <= db:
            return UniPoly._raw(()), self
        quo = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            q = rem[k + db] / lb
            quo[k] = q
            if q:
                for t, b in enumerate(other.c):
                    rem[k + t] -= q * b
        return UniPoly._raw(_trim(quo)), UniPoly._raw(_trim(rem[:db]))

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self.scale(1 / self.lead())

    def __call__(self, a):
        """Horner evaluation at any ring element supporting + and *."""
        acc = 0
        for coef in reversed(self.c):
            acc = acc * a + coef
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly._raw(_trim([k * a for k, a in enumerate(self.c)][1:]))


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


_ONE = UniPoly._raw((Fraction(1),))


# ------------------------------------------------------------ rational functions

class UniRatFun:
    """Canonical quotient num/den: gcd 1 and den monic."""

    __slots__ = ("num", "den", "_h")

    def __init__(self, num, den=None, _canonical=False):
        if not isinstance(num, UniPoly):
            num = UniPoly(num)
        if den is None:
            den = _ONE
        elif not isinstance(den, UniPoly):
            den = UniPoly(den)
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num = num
        self.den = den
        self._h = None

    # constructors
    @classmethod
    def x(cls) -> "UniRatFun":
        return cls(UniPoly._raw((Fraction(0), Fraction(1))), _ONE, True)

    @classmethod
    def const(cls, a) -> "UniRatFun":
        a = as_rat(a)
        return cls(UniPoly._raw((a,) if a else ()), _ONE, True)

    # structure
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_const(self) -> bool:
        return self.den.degree == 0 and self.num.degree <= 0

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError("not a constant")
        return self.num.c[0] if self.num.c else Fraction(0)

    def __hash__(self):
        if self._h is None:
            self._h = hash((self.num.c, self.den.c))
        return self._h

    def __eq__(self, other):
        if isinstance(other, UniRatFun):
            return self.num.c == other.num.c and self.den.c == other.den.c
        if isinstance(other, (int, Fraction)):
            return self.is_const() and self.const_value() == other
        return NotImplemented

    def __repr__(self):
        return f"UniRatFun({format_rf(self)!r})"

    def __str__(self):
        return format_rf(self)

    # arithmetic
    @staticmethod
    def _coerce(other):
        if isinstance(other, UniRatFun):
            return other
        if isinstance(other, (int, Fraction)):
            return UniRatFun.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return UniRatFun(self.num + o.num, self.den)
        return UniRatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return UniRatFun(-self.num, self.den, True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_const():
            k = o.const_value()
            if k == 0:
                return UniRatFun.const(0)
            return UniRatFun(self.num.scale(k), self.den, True)
        # cross-cancel before multiplying keeps degrees low
        g1 = poly_gcd(self.num, o.den)
        g2 = poly_gcd(o.num, self.den)
        n1, d2 = self.num.divmod(g1)[0], o.den.divmod(g1)[0]
        n2, d1 = o.num.divmod(g2)[0], self.den.divmod(g2)[0]
        num, den = n1 * n2, d1 * d2
        lc = den.lead()
        return UniRatFun(num.scale(1 / lc), den.scale(1 / lc), True)

    __rmul__ = __mul__

    def inverse(self) -> "UniRatFun":
        if self.is_zero():
            raise DivisionByZero("division by the zero function")
        lc = self.num.lead()
        return UniRatFun(self.den.scale(1 / lc), self.num.scale(1 / lc), True)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = UniRatFun.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # analysis
    def __call__(self, a):
        return rf_eval(self, a)

    def subs(self, a):
        """Substitute any scalar (Rat, UniRatFun, float) for the indeterminate."""
        if isinstance(a, (int, Fraction)):
            return rf_eval(self, a)
        d = self.den(a)
        if d == 0:
            raise PoleAtPoint(f"denominator vanishes at {a}")
        return self.num(a) / d

    def derivative(self) -> "UniRatFun":
        n, d = self.num, self.den
        return UniRatFun(n.derivative() * d - n * d.derivative(), d * d)


def _canonicalize(num: UniPoly, den: UniPoly):
    if den.is_zero():
        raise DivisionByZero("zero denominator")
    if num.is_zero():
        return UniPoly._raw(()), _ONE
    g = poly_gcd(num, den)
    if g.degree > 0:
        num = num.divmod(g)[0]
        den = den.divmod(g)[0]
    lc = den.lead()
    if lc != 1:
        num, den = num.scale(1 / lc), den.scale(1 / lc)
    return num, den


def rf_arith(a: UniRatFun, b: UniRatFun, op: str) -> UniRatFun:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def rf_eval(f: UniRatFun, a) -> Fraction:
    a = as_rat(a)
    d = f.den(a)
    if d == 0:
        raise PoleAtPoint(f"pole at x = {format_rat(a)}")
    return f.num(a) / d


def rf_limit_at(f: UniRatFun, a) -> Fraction:
    # canonical form has no removable singularities left
    return rf_eval(f, a)


def rf_residue_at(f: UniRatFun, a) -> Fraction:
    a = as_rat(a)
    if f.den(a) != 0:
        return Fraction(0)
    lin = UniPoly._raw((-a, Fraction(1)))
    rest, rem = f.den.divmod(lin)
    if rest(a) == 0:
        raise HigherOrderPole(f"pole of order >= 2 at {format_rat(a)}")
    return f.num(a) / rest(a)


def rf_limit_infinity_scaled(f: UniRatFun, k: int = 1) -> Fraction:
    """lim x^k f(x) as x -> infinity; raises if it diverges."""
    deg = f.num.degree + k - f.den.degree if not f.is_zero() else -1
    if f.is_zero() or deg < 0:
        return Fraction(0)
    if deg > 0:
        raise PoleAtPoint("diverges at infinity")
    return f.num.lead()


# ------------------------------------------------------------------ text forms

def _format_poly(p: UniPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k, a in enumerate(p.c):
        if a == 0:
            continue
        if k == 0:
            parts.append(format_rat(a))
        elif k == 1:
            parts.append(f"{format_rat(a)}*x")
        else:
            parts.append(f"{format_rat(a)}*x^{k}")
    return " + ".join(parts)


def format_rf(f: UniRatFun) -> str:
    return f"({_format_poly(f.num)})/({_format_poly(f.den)})"


_TERM = re.compile(r"^([+-]?\d+(?:/\d+)?)(?:\*x(?:\^(\d+))?)?$")


def _parse_poly(text: str) -> UniPoly:
    text = text.replace(" ", "")
    if text == "0":
        return UniPoly()
    text = re.sub(r"(?<=[\d*x^])-", "+-", text)
    coeffs: dict[int, Fraction] = {}
    for term in text.split("+"):
        if not term:
            continue
        m = _TERM.match(term)
        if not m:
            raise ValueError(f"bad polynomial term {term!r}")
        deg = 0 if "x" not in term else int(m.group(2) or 1)
        coeffs[deg] = coeffs.get(deg, Fraction(0)) + Fraction(m.group(1))
    top = max(coeffs) if coeffs else -1
    return UniPoly(coeffs.get(k, 0) for k in range(top + 1))


def parse_rf(text: str) -> UniRatFun:
    m = re.fullmatch(r"\s*\((.*)\)\s*/\s*\((.*)\)\s*", text)
    if not m:
        raise ValueError(f"bad rational function literal {text!r}")
    return UniRatFun(_parse_poly(m.group(1)), _parse_poly(m.group(2)))


# ------------------------------------------------------------ scalar helpers

def is_exact_rat(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def sort_key(x):
    """Total order usable for mixed scalar collections (memo keys)."""
    if isinstance(x, (int, Fraction)):
        return (0, Fraction(x), "")
    if isinstance(x, float):
        return (0, Fraction(x), "")
    return (1, Fraction(0), str(x))


def det(matrix: Sequence[Sequence]) -> object:
    """Exact determinant by Gaussian elimination over the scalar field."""
    m = [list(row) for row in matrix]
    size = len(m)
    out = 1
    for col in range(size):
        piv = next((r for r in range(col, size) if m[r][col] != 0), None)
        if piv is None:
            return 0 * out
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            out = -out
        p = m[col][col]
        out = out * p
        for r in range(col + 1, size):
            if m[r][col] != 0:
                q = m[r][col] / p
                row, prow = m[r], m[col]
                for k in range(col + 1, size):
                    row[k] = row[k] - q * prow[k]
    return out
