"""Scalar products of Bethe vectors in the generalized model.

A model is a list of per-color alpha functionals.  Three kinds are
supported: value tables (the generalized model's alpha is free, so a table
at the finitely many needed points is faithful), Drinfeld polynomials, and
alphas read off a concrete spin chain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .field import (PoleAtPoint, UniRatFun, as_rat, format_rat, parse_rat,
                    rf_limit_at, sort_key)
from .highest_coefficient import HcSession
from .kinematics import (BetheCollection, Product, canon, enum_blocks, enum_joint,
                         gamma, kin, omega, omega_into, phi_ij, profile_action,
                         profile_recC, psi_into, shifted)


class MissingAlphaValue(KeyError):
    def __init__(self, color, point):
        super().__init__(f"no alpha_{color} value at {point}")
        self.color = color
        self.point = point


# ------------------------------------------------------------ alpha kinds

@dataclass
class TableAlpha:
    values: dict
    xvalues: dict = field(default_factory=dict)
    kind = "table"

    def __call__(self, x):
        try:
            return self.values[x]
        except (KeyError, TypeError):
            raise MissingAlphaValue(None, x) from None

    def has(self, x) -> bool:
        return x in self.values

    def x_value(self, x):
        try:
            return self.xvalues[x]
        except KeyError:
            raise MissingAlphaValue(None, x) from None


@dataclass
class DrinfeldAlpha:
    """alpha(u) = P(u + shift)/P(u) for the monic P with the given roots."""

    roots: tuple
    shift: Fraction
    kind = "drinfeld"

    def _p(self, x):
        out = Fraction(1)
        for r in self.roots:
            out = out * (x - r)
        return out

    def __call__(self, x):
        den = self._p(x)
        if den == 0:
            raise PoleAtPoint(f"Drinfeld alpha has a pole at {x}")
        return self._p(x + self.shift) / den

    def has(self, x) -> bool:
        return True

    def x_value(self, x):
        # X = -c d/dx ln alpha, with c the shift scale recovered by the caller
        s = Fraction(0)
        for r in self.roots:
            s = s + Fraction(1) / (x + self.shift - r) - Fraction(1) / (x - r)
        return s


@dataclass
class ChainAlpha:
    chain: object
    color: int
    kind = "chain"

    def __call__(self, x):
        return self.chain.alpha(self.color, x)

    def has(self, x) -> bool:
        return True


@dataclass
class FunctionAlpha:
    fn: Callable
    kind = "function"

    def __call__(self, x):
        return self.fn(x)

    def has(self, x) -> bool:
        return True


@dataclass
class Model:
    rank: int
    coupling: Fraction
    alphas: list

    def alpha(self, s: int, x):
        try:
            return self.alphas[s](x)
        except MissingAlphaValue:
            raise MissingAlphaValue(s, x) from None

    def alpha_prod(self, s: int, xs):
        out = Fraction(1)
        for x in xs:
            out = out * self.alpha(s, x)
        return out

    def require(self, s: int, points) -> None:
        for x in points:
            if not self.alphas[s].has(x):
                raise MissingAlphaValue(s, x)

    def x_value(self, s: int, x):
        a = self.alphas[s]
        if isinstance(a, DrinfeldAlpha):
            return -self.coupling * a.x_value(x)
        return a.x_value(x)


def table_model(rank, coupling, tables, xtables=None) -> Model:
    xtables = xtables or [{} for _ in range(rank)]
    conv = lambda d: {as_rat(k): as_rat(v) for k, v in d.items()}  # noqa: E731
    return Model(rank, as_rat(coupling),
                 [TableAlpha(conv(t), conv(x)) for t, x in zip(tables, xtables)])


def drinfeld_model(rank, coupling, roots) -> Model:
    c = as_rat(coupling)
    return Model(rank, c, [DrinfeldAlpha(tuple(as_rat(r) for r in rs), c / 2 if s == 0 else c)
                           for s, rs in enumerate(roots)])


def chain_model(ch) -> Model:
    return Model(ch.n, ch.c, [ChainAlpha(ch, s) for s in range(ch.n)])


def model_from_json(obj) -> Model:
    n, c = int(obj["rank"]), parse_rat(str(obj["c"]))
    specs = obj["alphas"]
    if specs and specs[0].get("kind") == "chain":
        from .fock_oracle import chain
        return chain_model(chain(n, c, [parse_rat(str(x)) for x in specs[0]["xis"]]))
    alphas = []
    for s, spec in enumerate(specs):
        kind = spec["kind"]
        if kind == "table":
            vals = {parse_rat(k): parse_rat(str(v)) for k, v in spec.get("values", {}).items()}
            xs = {parse_rat(k): parse_rat(str(v)) for k, v in spec.get("X", {}).items()}
            alphas.append(TableAlpha(vals, xs))
        elif kind == "drinfeld":
            roots = tuple(parse_rat(str(r)) for r in spec.get("roots", []))
            alphas.append(DrinfeldAlpha(roots, c / 2 if s == 0 else c))
        else:
            raise ValueError(f"unknown alpha kind {kind!r}")
    if len(alphas) != n:
        raise ValueError(f"expected {n} alpha entries, got {len(alphas)}")
    return Model(n, c, alphas)


def model_to_json(model: Model) -> dict:
    out = []
    for a in model.alphas:
        if isinstance(a, TableAlpha):
            out.append({"kind": "table",
                        "values": {format_rat(k): format_rat(v) for k, v in a.values.items()},
                        "X": {format_rat(k): format_rat(v) for k, v in a.xvalues.items()}})
        elif isinstance(a, DrinfeldAlpha):
            out.append({"kind": "drinfeld", "roots": [format_rat(r) for r in a.roots]})
        elif isinstance(a, ChainAlpha):
            out = [{"kind": "chain", "xis": [format_rat(x) for x in a.chain.spec.xis]}]
            break
        else:
            raise ValueError("function-valued alphas cannot be serialized")
    return {"rank": model.rank, "c": format_rat(model.coupling), "alphas": out}


# ------------------------------------------------------------ sum formula

@dataclass
class ScalarReport:
    value: object
    term_count: int
    trace: list | None = None
    hit_rate: float = 0.0


def _sets(x):
    return x.sets if isinstance(x, BetheCollection) else tuple(tuple(p) for p in x)


def w_coefficient(vI, vII, uI, uII, coupling, session: HcSession | None = None):
    """W = Omega(u_I|u_II) Omega(v_II|v_I) Z(v_I|u_I) Z(u_II|v_II)."""
    c = as_rat(coupling)
    sess = session or HcSession(c)
    om = omega_into(omega_into(Product(c), uI, uII), vII, vI).value()
    if om == 0:
        return om
    return om * sess.z(vI, uI) * sess.z(uII, vII)


def scalar_sum(v, u, model: Model, trace: bool = False) -> ScalarReport:
    v, u = _sets(v), _sets(u)
    if len(v) != len(u) or len(u) != model.rank:
        raise ValueError("rank mismatch")
    sizes_v = [len(p) for p in v]
    sizes_u = [len(p) for p in u]
    if sizes_v != sizes_u:
        return ScalarReport(Fraction(0), 0, [] if trace else None)
    c = model.coupling
    sess = HcSession(c)
    total = 0
    count = 0
    tr = [] if trace else None
    for vI, vII, uI, uII in enum_joint(v, u):
        count += 1
        w = w_coefficient(vI, vII, uI, uII, c, sess)
        if w == 0:
            continue
        a = Fraction(1)
        for s in range(model.rank):
            a = a * model.alpha_prod(s, vI[s]) * model.alpha_prod(s, uII[s])
        total = total + w * a
        if tr is not None:
            tr.append({"vI": vI, "uI": uI, "W": w})
    assert count == math.prod(math.comb(2 * r, r) for r in sizes_u)
    return ScalarReport(total, count, tr, sess.hit_rate)


# ------------------------------------------------------------ recurrence

def required_points(v, u, z, ell: int, c) -> list:
    """Per color, every point the recurrence will evaluate alpha_s at."""
    n = len(u)
    out = []
    for s in range(n):
        pts = set(u[s]) | set(v[s]) | {z, shifted(z, s, c)}
        out.append(sorted(pts, key=sort_key))
    return out


def _rec_terms(v, u, z, ell, model: Model, alpha):
    n, c = model.rank, model.coupling
    w = tuple(u[s] + (z, shifted(z, s, c)) for s in range(n))
    sizes = [len(p) for p in w]
    total = 0
    inv = Fraction(1)
    for s in range(ell + 1, n):
        inv = inv * alpha(s, z)
    sub = Model(n, c, [FunctionAlpha(lambda x, s=s: alpha(s, x)) for s in range(n)])
    for j in range(-n, ell + 1):
        for i in range(ell + 1, n + 1):
            wprof = profile_action(i, j, n, sizes)
            if wprof is None:
                continue
            vprof = profile_recC(j, i, ell, n)
            for vI, vII, vIII in enum_blocks(v, vprof.blocks):
                acc = Product(c)
                for s in range(ell + 1, i):
                    for x in vIII[s]:
                        acc.times(alpha(s, x))
                psi_into(acc, vI, vII, vIII, z, ell, j)
                psi = acc.value()
                if psi == 0:
                    continue
                for wI, wII, wIII in enum_blocks(w, wprof.blocks):
                    phi = phi_ij(wI, wII, wIII, u[0], z, c, i, j)
                    if phi == 0:
                        continue
                    for s in range(n):
                        for x in wIII[s]:
                            phi = phi * alpha(s, x)
                    total = total + phi * psi * scalar_sum(vII, wII, sub).value
    return total / inv


def scalar_rec(v_plus_z, ell: int, u, model: Model):
    """S(v, z|u) by peeling z = last color-ell entry of the first argument."""
    vz, u = canon(_sets(v_plus_z)), canon(_sets(u))
    c = model.coupling
    if not vz[ell]:
        raise ValueError(f"color {ell} of the first collection is empty")
    if [len(p) for p in vz] != [len(p) for p in u]:
        return Fraction(0)
    z = vz[ell][-1]
    v = vz[:ell] + (vz[ell][:-1],) + vz[ell + 1:]
    for s, pts in enumerate(required_points(v, u, z, ell, c)):
        model.require(s, pts)
    try:
        return _rec_terms(v, u, z, ell, model, model.alpha)
    except (PoleAtPoint, ZeroDivisionError):
        pass
    # Colliding shifted points: run with a symbolic z, alpha values frozen
    # at the numeric point, and take the limit.
    x = UniRatFun.x()
    offset = x - z

    def alpha(s, p):
        if isinstance(p, UniRatFun):
            return model.alpha(s, p.subs(z))
        return model.alpha(s, p)

    zs = z + offset
    return rf_limit_at(UniRatFun._coerce(_rec_terms(v, u, zs, ell, model, alpha)), z)


# ------------------------------------------------------------ modified models

def modified_model(model: Model, u_pk, p: int, form: str = "omega") -> Model:
    """alpha with the color-p parameter u_pk absorbed into the neighbours.

    ``form="omega"`` multiplies alpha_s(z) by Omega(u_pk|z^(s))/Omega(z^(s)|u_pk);
    ``form="displayed"`` uses the explicit products with f(z,u_pk) on color
    p-1 and 1/f(u_pk,z) on color p+1.  The two differ by swapping those
    neighbour factors; only the omega form satisfies the residue identity.
    """
    c = model.coupling
    n = model.rank
    u_pk = as_rat(u_pk)
    alphas = list(model.alphas)

    def wrap(s, factor):
        base = model.alphas[s]
        return FunctionAlpha(lambda x: base(x) * factor(x))

    if form == "omega":
        up = _single(n, p, u_pk)
        for s in range(max(0, p - 1), min(n, p + 2)):
            alphas[s] = wrap(s, lambda x, s=s: omega(up, _single(n, s, x), c)
                             / omega(_single(n, s, x), up, c))
    elif form == "displayed":
        if p - 1 >= 0:
            alphas[p - 1] = wrap(p - 1, lambda x: kin("f", x, u_pk, c))
        alphas[p] = wrap(p, lambda x: gamma(p, u_pk, x, c) / gamma(p, x, u_pk, c))
        if p + 1 < n:
            alphas[p + 1] = wrap(p + 1, lambda x: 1 / kin("f", u_pk, x, c))
    else:
        raise ValueError(f"unknown form {form!r}")
    return Model(n, c, alphas)


def _pop(coll, p, k):
    return tuple(part if s != p else part[:k] + part[k + 1:] for s, part in enumerate(coll))


def _single(n, p, x):
    return tuple((x,) if s == p else () for s in range(n))


def scalar_residue_check(v, u, p: int, k: int, model: Model, form: str = "omega") -> dict:
    """Coefficient of -c alpha_p'(u_pk) in lim_{v_pk -> u_pk} S(v|u)."""
    v, u = _sets(v), _sets(u)
    n, c = model.rank, model.coupling
    upk = u[p][k]
    a0 = model.alpha(p, upk)
    x = UniRatFun.x()
    v_sym = tuple(part if s != p else part[:k] + (x,) + part[k + 1:] for s, part in enumerate(v))

    def limit_with_slope(a1):
        alphas = list(model.alphas)
        base = model.alphas[p]

        def ap(pt, base=base):
            if isinstance(pt, UniRatFun):
                return a0 + a1 * (pt - upk)
            return base(pt)

        alphas[p] = FunctionAlpha(ap)
        val = scalar_sum(v_sym, u, Model(n, c, alphas)).value
        return rf_limit_at(UniRatFun._coerce(val), upk)

    coeff = (limit_with_slope(1) - limit_with_slope(0)) / (-c)
    u_ring, v_ring = _pop(u, p, k), _pop(v, p, k)
    single = _single(n, p, upk)
    s_mod = scalar_sum(v_ring, u_ring, modified_model(model, upk, p, form)).value
    predicted = omega(u_ring, single, c) * omega(v_ring, single, c) * s_mod
    return {"pass": coeff == predicted, "coefficient": coeff, "predicted": predicted}


# ------------------------------------------------------------ on-shell tables

def bae_rhs(u, s: int, k: int, c):
    """Right-hand side of the Bethe equation for u^(s)_k."""
    n = len(u)
    x = u[s][k]
    others = u[s][:k] + u[s][k + 1:]
    up = u[s + 1] if s + 1 < n else ()
    acc = Product(c)
    if s == 0:
        acc.mul("frak_f", x, others).mul("f", up, x).mul("frak_f", others, x, power=-1)
    else:
        acc.mul("f", x, others).mul("f", up, x)
        acc.mul("f", others, x, power=-1).mul("f", x, u[s - 1], power=-1)
    return acc.value()


def onshell_alpha(u, X_values=None, coupling=None) -> Model:
    """Table model whose alphas at the points of u satisfy the Bethe equations."""
    if isinstance(u, BetheCollection):
        c = u.coupling
        u = u.sets
    else:
        c = as_rat(coupling)
        u = _sets(u)
    n = len(u)
    tables, xtables = [], []
    for s in range(n):
        tables.append({x: bae_rhs(u, s, k, c) for k, x in enumerate(u[s])})
        xs = X_values[s] if X_values else [0] * len(u[s])
        xtables.append({x: as_rat(xv) for x, xv in zip(u[s], xs)})
    return Model(n, c, [TableAlpha(t, xt) for t, xt in zip(tables, xtables)])


def alpha_dependence_check(v, u, model_a: Model, model_b: Model) -> dict:
    a = scalar_sum(v, u, model_a).value
    b = scalar_sum(v, u, model_b).value
    return {"pass": a == b, "a": a, "b": b}


__all__ = [
    "MissingAlphaValue", "TableAlpha", "DrinfeldAlpha", "ChainAlpha", "FunctionAlpha",
    "Model", "table_model", "drinfeld_model", "chain_model", "model_from_json",
    "model_to_json", "ScalarReport", "w_coefficient", "scalar_sum", "required_points",
    "scalar_rec", "modified_model", "scalar_residue_check", "bae_rhs", "onshell_alpha",
    "alpha_dependence_check",
]
