"""Elementary rational functions, the Omega weight, partitions and the
coefficient functions of the action and recurrence formulas.

Colored collections are plain tuples of tuples, one inner tuple per color
``s = 0..n-1``.  Every evaluator accepts exact rationals, ``UniRatFun`` values
or floats; purely rational inputs go through the integer kernels.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import kernels
from .field import PoleAtPoint, as_rat, sort_key

KINDS = ("f", "frak_f", "g", "h", "gamma")


class InfeasibleProfile(ValueError):
    pass


class IndexOutOfRange(ValueError):
    pass


# ------------------------------------------------------------ collections

@dataclass(frozen=True)
class BetheCollection:
    rank: int
    coupling: Fraction
    sets: tuple

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be >= 1")
        if len(self.sets) != self.rank:
            raise ValueError(f"expected {self.rank} colors, got {len(self.sets)}")
        if self.coupling == 0:
            raise ValueError("coupling must be nonzero")
        for s, part in enumerate(self.sets):
            if len(set(part)) != len(part):
                raise ValueError(f"repeated parameter in color {s}")

    @classmethod
    def of(cls, sets, coupling) -> "BetheCollection":
        return cls(len(sets), as_rat(coupling), tuple(tuple(p) for p in sets))

    @property
    def sizes(self) -> tuple:
        return tuple(len(p) for p in self.sets)

    def is_generic(self) -> bool:
        """No two parameters differ by a half-integer multiple of c up to (n+1)c."""
        c = self.coupling
        bad = {k * c / 2 for k in range(-2 * self.rank - 2, 2 * self.rank + 3)}
        pts = [x for part in self.sets for x in part]
        for a, b in itertools.combinations(pts, 2):
            if a - b in bad:
                return False
        return True


def canon(coll) -> tuple:
    """Sorted per-color tuples, used as memo keys."""
    return tuple(tuple(sorted(part, key=sort_key)) for part in coll)


def empty(n: int) -> tuple:
    return ((),) * n


def union(a, b) -> tuple:
    return tuple(tuple(x) + tuple(y) for x, y in zip(a, b))


def shifted(z, s: int, c):
    """z_s = z - c(s - 1/2)."""
    return z - c * Fraction(2 * s - 1, 2)


def sigma(i: int) -> int:
    return -1 if i < 1 else 1


def kappa(n: int) -> Fraction:
    return Fraction(2 * n - 1, 2)


# ------------------------------------------------------------ products

def _spec(kind: str, c, s: int):
    """(constant per factor, numerator shifts, denominator shifts)."""
    if kind == "f":
        return 1, (c,), (0,)
    if kind == "frak_f" or (kind == "gamma" and s == 0):
        return 1, (c / 2,), (0,)
    if kind == "g":
        return c, (), (0,)
    if kind == "h":
        return 1 / c, (c,), ()
    if kind == "gamma":
        return -c * c, (), (0, -c)
    raise ValueError(f"unknown kind {kind!r}")


def _as_seq(x):
    if isinstance(x, (tuple, list)):
        return x
    return (x,)


class Product:
    """Accumulates numerator and denominator of a product of kinematic factors.

    Rational inputs are kept as an unreduced integer pair until ``value``.
    Zero denominators raise ``PoleAtPoint`` immediately.
    """

    __slots__ = ("c", "num", "den", "exact")

    def __init__(self, c):
        self.c = c
        self.num = 1
        self.den = 1
        self.exact = True

    def mul(self, kind: str, xs, ys, s: int = 0, power: int = 1) -> "Product":
        xs, ys = _as_seq(xs), _as_seq(ys)
        if not xs or not ys:
            return self
        const, nums, dens = _spec(kind, self.c, s)
        if power < 0:
            const, nums, dens = 1 / Fraction(const), dens, nums
        k = len(xs) * len(ys)
        exact = self.exact and all(
            isinstance(v, (int, Fraction)) for v in itertools.chain(xs, ys))
        if exact:
            vals = [Fraction(v) for v in itertools.chain(xs, ys, nums, dens)]
            scale = math.lcm(*(v.denominator for v in vals))
            sx = [int(v * scale) for v in xs]
            sy = [int(v * scale) for v in ys]
            sa = [int(v * scale) for v in nums]
            sb = [int(v * scale) for v in dens]
            try:
                n, d = kernels.pair_products(sx, sy, sa, sb)
            except ZeroDivisionError:
                raise PoleAtPoint(f"{kind} factor has a pole") from None
            const = Fraction(const) ** k
            extra = (len(dens) - len(nums)) * k
            if extra >= 0:
                n *= scale ** extra
            else:
                d *= scale ** (-extra)
            self.num *= n * const.numerator
            self.den *= d * const.denominator
            return self
        self._to_generic()
        num, den = 1, 1
        for x in xs:
            for y in ys:
                d = x - y
                for a in nums:
                    num = num * (d + a)
                for b in dens:
                    t = d + b
                    if t == 0:
                        raise PoleAtPoint(f"{kind} factor has a pole")
                    den = den * t
        self.num = self.num * num * (const ** k)
        self.den = self.den * den
        return self

    def times(self, value) -> "Product":
        if self.exact and isinstance(value, (int, Fraction)):
            value = Fraction(value)
            self.num *= value.numerator
            self.den *= value.denominator
        else:
            self._to_generic()
            self.num = self.num * value
        return self

    def _to_generic(self):
        if self.exact:
            self.exact = False
            self.num = Fraction(self.num, self.den)
            self.den = 1

    def value(self):
        if self.exact:
            return Fraction(self.num, self.den)
        if self.den == 1:
            return self.num
        return self.num / self.den


def kin(kind: str, xs, ys, c, s: int = 0):
    """Product of ``kind`` over all pairs; scalars are treated as singletons."""
    return Product(as_rat(c)).mul(kind, xs, ys, s).value()


def kin_eval(kind: str, u, v, c, s: int = 0):
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    return kin(kind, u, v, c, s)


def f(x, y, c):
    return kin("f", x, y, c)


def frak_f(x, y, c):
    return kin("frak_f", x, y, c)


def g(x, y, c):
    return kin("g", x, y, c)


def h(x, y, c):
    return kin("h", x, y, c)


def gamma(s, x, y, c):
    return kin("gamma", x, y, c, s)


# ------------------------------------------------------------ Omega

def omega_into(acc: Product, x, y, bx=(), by=()) -> Product:
    """Multiply acc by Omega(x|y); colour-n sets are bx and by."""
    n = len(x)
    for s in range(n):
        xs, ys = x[s], y[s]
        x_up = x[s + 1] if s + 1 < n else bx
        y_up = y[s + 1] if s + 1 < n else by
        acc.mul("gamma", xs, ys, s)
        acc.mul("h", y_up, xs)
        acc.mul("g", x_up, ys, power=-1)
    return acc


def omega(x, y, c, boundary_x_n=(), boundary_y_n=()):
    if isinstance(x, BetheCollection):
        x = x.sets
    if isinstance(y, BetheCollection):
        y = y.sets
    if len(x) != len(y):
        raise ValueError("rank mismatch")
    return omega_into(Product(as_rat(c)), x, y, boundary_x_n, boundary_y_n).value()


# ------------------------------------------------------------ partitions

@dataclass(frozen=True)
class CardinalityProfile:
    """Per color (|I|, |III|); |II| is whatever remains."""

    blocks: tuple

    def feasible(self, sizes: Sequence[int]) -> bool:
        return all(a + b <= m for (a, b), m in zip(self.blocks, sizes))


def split2(seq: Sequence, k: int) -> Iterator[tuple]:
    """All (I, II) with |I| = k, lexicographic in the chosen indices."""
    m = len(seq)
    if k < 0 or k > m:
        return
    for idx in itertools.combinations(range(m), k):
        chosen = set(idx)
        yield (tuple(seq[i] for i in idx),
               tuple(seq[i] for i in range(m) if i not in chosen))


def split3(seq: Sequence, k1: int, k3: int) -> Iterator[tuple]:
    """All (I, II, III) with |I| = k1, |III| = k3."""
    for first, rest in split2(seq, k1):
        for third, second in split2(rest, k3):
            yield first, second, third


def enum_partitions(sets, profile) -> Iterator[tuple]:
    """Yield per-color (I, II, III) triples matching the profile."""
    blocks = profile.blocks if isinstance(profile, CardinalityProfile) else profile
    if len(blocks) != len(sets):
        raise ValueError("profile length does not match the number of colors")
    if not all(a + b <= len(p) for (a, b), p in zip(blocks, sets)):
        raise InfeasibleProfile(f"profile {blocks} exceeds sizes {[len(p) for p in sets]}")
    per_color = [list(split3(p, a, b)) for (a, b), p in zip(blocks, sets)]
    for combo in itertools.product(*per_color):
        yield combo


def unzip(combo) -> tuple:
    """Per-color triples to the three block collections."""
    return tuple(tuple(t[k] for t in combo) for k in range(3))


def enum_blocks(sets, blocks) -> Iterator[tuple]:
    """Like enum_partitions but yields (I, II, III) collections; empty if infeasible."""
    if not all(a + b <= len(p) for (a, b), p in zip(blocks, sets)):
        return
    per_color = [list(split3(p, a, b)) for (a, b), p in zip(blocks, sets)]
    for combo in itertools.product(*per_color):
        yield unzip(combo)


def enum_joint(v, u) -> Iterator[tuple]:
    """Joint two-block splits of v and u with |v_I| = |u_I| per color.

    Yields (vI, vII, uI, uII) collections.
    """
    per_color = []
    for vs, us in zip(v, u):
        opts = []
        for k in range(min(len(vs), len(us)) + 1):
            for vi, vii in split2(vs, k):
                for ui, uii in split2(us, k):
                    opts.append((vi, vii, ui, uii))
        per_color.append(opts)
    for combo in itertools.product(*per_color):
        yield tuple(tuple(t[k] for t in combo) for k in range(4))


# ------------------------------------------------------------ profiles

def _check(n: int, *idx):
    for i in idx:
        if not -n <= i <= n:
            raise IndexOutOfRange(f"index {i} outside -{n}..{n}")


def profile_action(i: int, j: int, n: int, sizes: Sequence[int]):
    """Block sizes of w^(s) = u^(s) + {z, z_s}; None when the term is discarded.

    ``sizes`` are the sizes of the extended sets.
    """
    _check(n, i, j)
    blocks = []
    for s in range(n):
        k1 = 2 if s < i else (1 if -s <= i else 0)
        k3 = 0 if s < j else (1 if -s <= j else 2)
        if k1 + k3 > sizes[s]:
            return None
        blocks.append((k1, k3))
    return CardinalityProfile(tuple(blocks))


def _rec_table(lo: int, hi: int, ell: int, n: int) -> CardinalityProfile:
    _check(n, lo, hi)
    if not (lo <= ell < hi) or not 0 <= ell < n:
        raise IndexOutOfRange(f"need {lo} <= {ell} < {hi}")
    blocks = []
    for s in range(n):
        if s < ell:
            k1 = 2 if lo < -s else (1 if lo <= s else 0)
            k3 = 0
        elif s == ell:
            k1 = 1 if lo < -ell else 0
            k3 = 0
        else:
            k1 = 1 if lo < -s else 0
            k3 = 1 if s < hi else 0
        blocks.append((k1, k3))
    return CardinalityProfile(tuple(blocks))


def profile_recB(i: int, j: int, ell: int, n: int) -> CardinalityProfile:
    return _rec_table(i, j, ell, n)


def profile_recC(j: int, i: int, ell: int, n: int) -> CardinalityProfile:
    return _rec_table(j, i, ell, n)


# ------------------------------------------------------------ Phi and Psi

def phi_ij(wI, wII, wIII, u0, z, c, i: int, j: int):
    """Coefficient of the action formula; u0 is the original color-0 set."""
    n = len(wI)
    c = as_rat(c)
    acc = Product(c)
    acc.times(Fraction(-sigma(i) * sigma(-j)) / kappa(n))
    acc.mul("g", shifted(z, 1, c), u0)
    acc.mul("h", z, u0, power=-1)
    bI, bII, bIII = (shifted(z, n, c),), (), (z,)
    omega_into(acc, wI, wII, bI, bII)
    omega_into(acc, wII, wIII, bII, bIII)
    omega_into(acc, wI, wIII, bI, bIII)
    return acc.value()


def psi_into(acc: Product, uI, uII, uIII, z, ell: int, lo: int) -> Product:
    """Multiply acc by Psi^(ell)_{lo,hi}(u, z); u = I + II + III."""
    n = len(uI)
    c = acc.c
    u = tuple(a + b + d for a, b, d in zip(uI, uII, uIII))
    up = u[ell + 1] if ell + 1 < n else ()
    up3 = uIII[ell + 1] if ell + 1 < n else ()
    acc.times(sigma(lo + 1))
    if ell > 0:
        acc.mul("g", z, uI[ell - 1])
        acc.mul("h", uI[ell], z)
        acc.mul("g", up3, z)
        acc.mul("g", z, u[ell - 1], power=-1)
        acc.mul("h", z, u[ell], power=-1)
        acc.mul("h", u[ell], z, power=-1)
        acc.mul("g", up, z, power=-1)
    else:
        z0 = shifted(z, 0, c)
        acc.mul("g", z0, uI[0])
        acc.mul("g", up3, z)
        acc.mul("g", z0, u[0], power=-1)
        acc.mul("h", z, u[0], power=-1)
        acc.mul("g", up, z, power=-1)
    omega_into(acc, uI, uII)
    omega_into(acc, union(uI, uII), uIII)
    return acc


def psi_ij_ell(uI, uII, uIII, z, c, ell: int, i: int, j: int):
    n = len(uI)
    _check(n, i, j)
    return psi_into(Product(as_rat(c)), uI, uII, uIII, z, ell, i).value()
