"""Gaudin matrix, its determinant, the Korepin criteria and the norm limit."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .field import UniRatFun, as_rat, det, rf_limit_at
from .kinematics import BetheCollection, Product, gamma
from .scalar_product import FunctionAlpha, Model, onshell_alpha, scalar_sum


class LimitPathFailure(ArithmeticError):
    pass


@dataclass(frozen=True)
class GaudinData:
    """Bethe parameters u (per color) and one X value per parameter."""

    u: tuple
    X: tuple
    coupling: Fraction

    @classmethod
    def of(cls, u, X, coupling) -> "GaudinData":
        if isinstance(u, BetheCollection):
            coupling = u.coupling if coupling is None else coupling
            u = u.sets
        u = tuple(tuple(as_rat(x) for x in part) for part in u)
        X = tuple(tuple(as_rat(x) for x in part) for part in X)
        if [len(p) for p in u] != [len(p) for p in X]:
            raise ValueError("one X value per Bethe parameter is required")
        return cls(u, X, as_rat(coupling))

    @property
    def rank(self) -> int:
        return len(self.u)

    def index(self) -> list:
        return [(s, j) for s, part in enumerate(self.u) for j in range(len(part))]


def K(s: int, x, y, c):
    """2 c_s c / ((x-y)^2 - c_s^2) with c_0 = c/2 and c_s = c otherwise."""
    cs = c / 2 if s == 0 else c
    d = x - y
    return 2 * cs * c / (d * d - cs * cs)


def I(x, y, c):  # noqa: E743
    """c^2 / ((x-y+c)(x-y))."""
    d = x - y
    return c * c / ((d + c) * d)


def _row(data: GaudinData, s: int, j: int) -> list:
    c, u, X = data.coupling, data.u, data.X
    n = data.rank
    uj = u[s][j]
    out = []
    for p, k in data.index():
        if abs(p - s) > 1:
            out.append(Fraction(0))
        elif p == s - 1:
            out.append(-I(uj, u[p][k], c))
        elif p == s + 1:
            out.append(-I(u[p][k], uj, c))
        elif k != j:
            out.append(K(s, uj, u[s][k], c))
        else:
            diag = X[s][j]
            for m, y in enumerate(u[s]):
                if m != j:
                    diag = diag - K(s, uj, y, c)
            if s > 0:
                for y in u[s - 1]:
                    diag = diag + I(uj, y, c)
            if s + 1 < n:
                for y in u[s + 1]:
                    diag = diag + I(y, uj, c)
            out.append(diag)
    return out


def gaudin_matrix(data: GaudinData) -> list:
    return [_row(data, s, j) for s, j in data.index()]


def gaudin_det(data: GaudinData):
    m = gaudin_matrix(data)
    if not m:
        return Fraction(1)
    if all(isinstance(x, (int, Fraction)) for row in m for x in row):
        scale = math.lcm(*(Fraction(x).denominator for row in m for x in row))
        rows = [[int(Fraction(x) * scale) for x in row] for row in m]
        return Fraction(kernels.bareiss_det(rows), scale ** len(m))
    return det(m)


def _with_X(data: GaudinData, s: int, j: int, value) -> GaudinData:
    X = [list(p) for p in data.X]
    X[s][j] = value
    return GaudinData(data.u, tuple(tuple(p) for p in X), data.coupling)


def reduced_data(data: GaudinData, s: int, j: int) -> GaudinData:
    """Drop u^(s)_j and shift the X values of same and neighbouring colors."""
    c, u = data.coupling, data.u
    uj = u[s][j]
    new_u, new_X = [], []
    for p, (part, xs) in enumerate(zip(u, data.X)):
        nu, nx = [], []
        for k, (y, x) in enumerate(zip(part, xs)):
            if p == s and k == j:
                continue
            if p == s:
                x = x - K(s, uj, y, c)
            elif p == s + 1:
                x = x + I(y, uj, c)
            elif p == s - 1:
                x = x + I(uj, y, c)
            nu.append(y)
            nx.append(x)
        new_u.append(tuple(nu))
        new_X.append(tuple(nx))
    return GaudinData(tuple(new_u), tuple(new_X), c)


# ------------------------------------------------------------ Korepin criteria

def _random_data(rng: random.Random, sizes, c) -> GaudinData:
    while True:
        u = tuple(tuple(Fraction(rng.randint(-400, 400), rng.randint(1, 9)) for _ in range(r))
                  for r in sizes)
        X = tuple(tuple(Fraction(rng.randint(-50, 50), rng.randint(1, 5)) for _ in range(r))
                  for r in sizes)
        try:
            if BetheCollection.of(u, c).is_generic():
                return GaudinData(u, X, as_rat(c))
        except ValueError:  # repeated point
            continue


def korepin_suite(F, profiles, coupling=1, seed: int = 0, trials: int = 3) -> dict:
    """Check the five Korepin criteria for F(data) on random exact instances."""
    c = as_rat(coupling)
    rng = random.Random(seed)
    points = {k: True for k in ("symmetry", "affine", "base_case", "derivative", "zero")}
    for sizes in profiles:
        for _ in range(trials):
            d = _random_data(rng, sizes, c)
            val = F(d)
            # 1: exchange two parameters of one color together with their X
            for s, part in enumerate(d.u):
                if len(part) >= 2:
                    u = list(d.u)
                    X = list(d.X)
                    u[s] = (part[1], part[0]) + part[2:]
                    X[s] = (d.X[s][1], d.X[s][0]) + d.X[s][2:]
                    if F(GaudinData(tuple(u), tuple(X), c)) != val:
                        points["symmetry"] = False
            for s, j in d.index():
                f0, f1, f2 = (F(_with_X(d, s, j, Fraction(t))) for t in (0, 1, 3))
                # 2: collinear in each X
                if (f2 - f0) != 3 * (f1 - f0):
                    points["affine"] = False
                # 4: slope equals F on the reduced, shifted profile
                if f1 - f0 != F(reduced_data(d, s, j)):
                    points["derivative"] = False
            # 5: vanishes at X = 0
            zero = GaudinData(d.u, tuple(tuple(Fraction(0) for _ in p) for p in d.X), c)
            if F(zero) != 0:
                points["zero"] = False
    # 3: one parameter in any single color
    n = len(profiles[0]) if profiles else 1
    for s in range(n):
        x = Fraction(rng.randint(-50, 50), 7)
        u = tuple((Fraction(3, 5),) if p == s else () for p in range(n))
        X = tuple((x,) if p == s else () for p in range(n))
        if F(GaudinData(u, X, c)) != x:
            points["base_case"] = False
    return {"pass": all(points.values()), "points": points}


# ------------------------------------------------------------ norm

def norm_prefactor(u, coupling):
    """prod_s prod_{k!=l} gamma_s(u_k,u_l) * prod_{s>=1} h(u^(s),u^(s-1))/g(u^(s),u^(s-1))."""
    c = as_rat(coupling)
    acc = Product(c)
    for s, part in enumerate(u):
        for k, x in enumerate(part):
            for m, y in enumerate(part):
                if k != m:
                    acc.times(gamma(s, x, y, c))
        if s > 0:
            acc.mul("h", part, u[s - 1]).mul("g", part, u[s - 1], power=-1)
    return acc.value()


def default_direction(u) -> tuple:
    """Distinct small integer offsets, ascending in (color, index)."""
    out, t = [], 1
    for part in u:
        row = []
        for _ in part:
            row.append(Fraction(t))
            t += 1
        out.append(tuple(row))
    return tuple(out)


def _line_model(base: Model, u, X, direction, eps, c) -> tuple:
    """v = u + eps*d with alpha(v_k) = alpha(u_k) (1 - X_k eps d_k / c)."""
    n = len(u)
    v = tuple(tuple(x + eps * d for x, d in zip(u[s], direction[s])) for s in range(n))
    alphas = []
    for s in range(n):
        table = {}
        for k, x in enumerate(u[s]):
            a0 = base.alpha(s, x)
            table[v[s][k]] = a0 * (1 - X[s][k] * eps * direction[s][k] / c)

        def fn(p, s=s, table=table):
            hit = table.get(p)
            return hit if hit is not None else base.alpha(s, p)

        alphas.append(FunctionAlpha(fn))
    return v, Model(n, c, alphas)


def norm_limit(u, X, direction=None, coupling=None, model: Model | None = None,
               float_check: bool = True) -> dict:
    """lim_{v -> u} S(v|u) on shell, against prefactor * det G.

    The limit is taken exactly along the line v = u + eps*direction with eps
    the rational-function indeterminate.  The on-shell model comes from the
    Bethe equations unless given.
    """
    if coupling is None and not isinstance(u, BetheCollection):
        coupling = model.coupling if model is not None else 1
    data = GaudinData.of(u, X, coupling)
    c, u, X = data.coupling, data.u, data.X
    base = model or onshell_alpha(u, X, c)
    d = tuple(tuple(as_rat(x) for x in p) for p in direction) if direction else default_direction(u)
    eps = UniRatFun.x()
    v, m = _line_model(base, u, X, d, eps, c)
    s_eps = UniRatFun._coerce(scalar_sum(v, u, m).value)
    try:
        limit = rf_limit_at(s_eps, 0)
    except ArithmeticError as e:
        raise LimitPathFailure(str(e)) from e
    det_g = gaudin_det(data)
    predicted = norm_prefactor(u, c) * det_g
    out = {"pass": limit == predicted, "limit": limit, "predicted": predicted,
           "det": det_g, "direction": d}
    if float_check:
        errs = []
        for delta in (Fraction(1, 1000), Fraction(1, 10000)):
            vd, md = _line_model(base, u, X, d, delta, c)
            val = scalar_sum(vd, u, md).value
            errs.append(abs(float(val) - float(limit)))
        scale = max(1.0, abs(float(limit)))
        out["float_errors"] = errs
        # relative O(delta) agreement, within 10*delta
        out["float_ok"] = all(e <= 10 * dl * scale for e, dl in zip(errs, (1e-3, 1e-4)))
        out["pass"] = out["pass"] and out["float_ok"]
    return out


__all__ = [
    "LimitPathFailure", "GaudinData", "K", "I", "gaudin_matrix", "gaudin_det",
    "reduced_data", "korepin_suite", "norm_prefactor", "default_direction", "norm_limit",
]
