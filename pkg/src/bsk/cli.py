"""Command line front end: hc, scalar, norm, izergin and verify.

Every command writes a JSON report; exact values are rational strings.
Exit status is 0 when all checks pass, 1 on a failed check and 2 on bad
input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from fractions import Fraction

from .field import UniRatFun, format_rat, parse_rat

SUITES = ("kinematics", "hc", "izergin", "residue", "gln_reduction", "korepin", "norm", "oracle")


class InputError(ValueError):
    pass


# ------------------------------------------------------------ parsing

def _rat(x, where: str) -> Fraction:
    if isinstance(x, bool):
        raise InputError(f"{where}: expected a rational, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return parse_rat(x)
        except ValueError:
            raise InputError(f"{where}: bad rational {x!r}") from None
    raise InputError(f"{where}: expected a rational, got {x!r}")


def _json(text: str, where: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{where}: line {e.lineno} column {e.colno}: {e.msg}") from None


def parse_collection(obj, rank: int | None, where: str) -> tuple:
    if isinstance(obj, str):
        obj = _json(obj, where)
    if not isinstance(obj, list) or not all(isinstance(p, list) for p in obj):
        raise InputError(f"{where}: expected a list of per-color lists")
    if rank is not None and len(obj) != rank:
        raise InputError(f"{where}: expected {rank} colors, got {len(obj)}")
    return tuple(tuple(_rat(x, f"{where}[{s}][{k}]") for k, x in enumerate(p))
                 for s, p in enumerate(obj))


def parse_list(obj, where: str) -> tuple:
    if isinstance(obj, str):
        obj = _json(obj, where)
    if not isinstance(obj, list):
        raise InputError(f"{where}: expected a list")
    return tuple(_rat(x, f"{where}[{k}]") for k, x in enumerate(obj))


def to_json(x):
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return format_rat(x)
    if isinstance(x, UniRatFun):
        return str(x)
    if isinstance(x, float):
        return x
    if isinstance(x, dict):
        return {str(k): to_json(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_json(v) for v in x]
    return str(x)


def _result(name, ok=None, value=None, details=None) -> dict:
    out = {"name": name}
    if value is not None:
        out["value"] = format_rat(value) if isinstance(value, int) else to_json(value)
    if ok is not None:
        out["pass"] = bool(ok)
    if details is not None:
        out["details"] = to_json(details)
    return out


# ------------------------------------------------------------ random instances

def _points(rng: random.Random, sizes, c, rank) -> tuple:
    from .kinematics import BetheCollection
    while True:
        out = tuple(tuple(Fraction(rng.randint(-400, 400), rng.randint(1, 9)) for _ in range(r))
                    for r in sizes)
        try:
            if BetheCollection.of(out, c).is_generic():
                return out
        except ValueError:  # repeated point
            continue


def _pair(rng, sizes, c):
    both = _points(rng, [2 * r for r in sizes], c, len(sizes))
    return (tuple(p[: len(p) // 2] for p in both), tuple(p[len(p) // 2:] for p in both))


# ------------------------------------------------------------ suites

def suite_kinematics(args, rng):
    from .kinematics import (f, frak_f, g, gamma, h, omega, enum_partitions,
                             CardinalityProfile)
    c = Fraction(1)
    res = [
        _result("f(3,1)", f(3, 1, c) == Fraction(3, 2), f(3, 1, c)),
        _result("g(3,1)", g(3, 1, c) == Fraction(1, 2), g(3, 1, c)),
        _result("h(3,1)", h(3, 1, c) == 3, h(3, 1, c)),
        _result("frak_f(3,1)", frak_f(3, 1, c) == Fraction(5, 4), frak_f(3, 1, c)),
        _result("gamma_1(3,1)", gamma(1, 3, 1, c) == Fraction(-1, 2), gamma(1, 3, 1, c)),
        _result("omega_n1", omega(((3,),), ((1,),), c) == Fraction(5, 4)),
    ]
    count = sum(1 for _ in enum_partitions(((1, 2, 3, 4),), CardinalityProfile(((1, 2),))))
    res.append(_result("partition_count", count == 12, count))
    return res


def suite_hc(args, rng):
    from .highest_coefficient import hc, hc_alt, hc_o3_closed
    c = Fraction(1)
    res = [_result("Z({0}|{2})", hc(((0,),), ((2,),), c) == Fraction(1, 2), hc(((0,),), ((2,),), c))]
    ok_alt = ok_peel = True
    for sizes in [(1,), (2,), (1, 1), (2, 1), (1, 1, 1), (2, 2, 1)]:
        u, v = _pair(rng, sizes, c)
        a = hc(u, v, c)
        ok_alt &= a == hc_alt(u, v, c)
        ok_peel &= a == hc(u, v, c, peel="lowest")
    res.append(_result("hc_equals_hc_alt", ok_alt))
    res.append(_result("peel_order", ok_peel))
    ok = True
    for r in (1, 2, 3):
        u, v = _pair(rng, (r,), c)
        ok &= hc(u, v, c) == hc_o3_closed(u[0], v[0], c)
    res.append(_result("o3_closed_form", ok))
    return res


def suite_izergin(args, rng):
    from .highest_coefficient import gl2_rec_check, izergin, izergin_rec_check
    c = Fraction(1)
    res = [_result("K_2({4,5}|{0,2})", izergin((4, 5), (0, 2), c) == Fraction(1, 4),
                   izergin((4, 5), (0, 2), c))]
    ok1 = ok2 = True
    for r in range(4):
        pts = _points(rng, (2 * r + 2,), c, 1)[0]
        u, v, z = pts[: r + 1], pts[r + 1: 2 * r + 1], pts[-1]
        ok1 &= izergin_rec_check(v, u, z, c)["pass"]
        if r < 3:
            ok2 &= gl2_rec_check(u, v, z, c)["pass"]
    res.append(_result("izergin_recurrences", ok1))
    res.append(_result("gl2_recurrences", ok2))
    return res


def suite_residue(args, rng):
    from .highest_coefficient import hc_residue_check
    from .scalar_product import drinfeld_model, scalar_residue_check
    c = Fraction(1)
    ok = True
    for sizes in [(1,), (2,), (1, 1), (2, 1)]:
        u, v = _pair(rng, sizes, c)
        for p, part in enumerate(u):
            for k in range(len(part)):
                ok &= hc_residue_check(u, v, p, k, c)["pass"]
    res = [_result("hc_residue", ok)]
    ok = True
    for sizes in [(1,), (2,), (1, 1), (2, 1)]:
        u, v = _pair(rng, sizes, c)
        roots = [[Fraction(rng.randint(-99, 99), 11)] for _ in sizes]
        m = drinfeld_model(len(sizes), c, roots)
        for p, part in enumerate(u):
            for k in range(len(part)):
                ok &= scalar_residue_check(v, u, p, k, m)["pass"]
    res.append(_result("scalar_residue", ok))
    return res


def suite_gln_reduction(args, rng):
    from .highest_coefficient import tilde_rec_check
    c = Fraction(1)
    ok = True
    for sizes in [(0, 1), (0, 2), (0, 1, 1), (0, 2, 1), (0, 1, 2)]:
        u, v = _pair(rng, sizes, c)
        for ell in range(1, len(sizes)):
            if sizes[ell]:
                ok &= tilde_rec_check(u, v, ell, c)["pass"]
    return [_result("tilde_recurrences", ok)]


def suite_korepin(args, rng):
    from .gaudin import gaudin_det, korepin_suite
    out = []
    for profiles in ([(1,), (2,), (3,)], [(1, 1), (2, 1)], [(1, 1, 1), (2, 1, 1)]):
        r = korepin_suite(gaudin_det, profiles, seed=rng.randint(0, 10 ** 6), trials=2)
        out.append(_result(f"korepin_n{len(profiles[0])}", r["pass"], details=r["points"]))
    return out


def suite_norm(args, rng):
    from .fock_oracle import chain
    from .gaudin import norm_limit
    from .scalar_product import chain_model, table_model
    c = Fraction(1)
    x = Fraction(rng.randint(-50, 50), 7)
    r1 = norm_limit(((Fraction(1, 3),),), ((x,),), model=table_model(1, c, [{Fraction(1, 3): 1}]))
    r2 = norm_limit(((Fraction(0),),), ((Fraction(-8),),), model=chain_model(chain(1, c, [0, 0])))
    u = _points(rng, (1, 1), c, 2)
    X = ((Fraction(rng.randint(-20, 20), 3),), (Fraction(rng.randint(-20, 20), 3),))
    r3 = norm_limit(u, X, coupling=c)
    return [_result("norm_rank1", r1["pass"] and r1["limit"] == x, r1["limit"]),
            _result("norm_chain_o3", r2["pass"] and r2["limit"] == -8, r2["limit"]),
            _result("norm_n2", r3["pass"], r3["limit"], {"predicted": r3["predicted"]})]


def suite_oracle(args, rng):
    from .field import UniRatFun as URF
    from .fock_oracle import (centrality_scalar, chain, commutator_check, coproduct_check,
                              frt_check, lam_consistency, transfer_eigencheck,
                              yang_baxter_check, zero_mode_check)
    from .scalar_product import chain_model, scalar_sum
    c = Fraction(1)
    ranks = [args.rank] if args.rank else [1, 2]
    out = []
    for n in ranks:
        lengths = [args.length] if args.length else ([1, 2] if n == 1 else [1])
        for L in lengths:
            xis = [Fraction(rng.randint(-30, 30), 7) for _ in range(L)]
            ch = chain(n, c, xis, cap=args.cap)
            tag = f"n{n}_L{L}"
            # off-lattice points keep z, w and z - w away from R-matrix poles
            z = Fraction(3 * rng.randint(-40, 40) + 1, 3)
            w = Fraction(5 * rng.randint(-40, 40) + 2, 5) + Fraction(1, 7)
            out.append(_result(f"frt_{tag}", frt_check(ch, z, w)))
            out.append(_result(f"yang_baxter_{tag}", yang_baxter_check(z, w, n, c)))
            out.append(_result(f"commutator_{tag}",
                               commutator_check(ch, z, w, 0, 1, 1, 0)
                               and commutator_check(ch, z, w, -n, n, n, -n)))
            out.append(_result(f"centrality_{tag}", isinstance(centrality_scalar(ch), URF)))
            out.append(_result(f"lambda_constraint_{tag}",
                               lam_consistency(ch.vacuum_and_lambdas()[1], n, c)["pass"]))
            profiles = [(1,), (2,)] if n == 1 else [(1, 0), (0, 1), (1, 1)]
            ok_sc = ok_zm = True
            for sizes in profiles:
                u, v = _pair(rng, sizes, c)
                ok_sc &= ch.scalar(v, u) == scalar_sum(v, u, chain_model(ch)).value
                ok_zm &= zero_mode_check(u, ch)["pass"]
            out.append(_result(f"oracle_scalar_{tag}", ok_sc))
            out.append(_result(f"zero_modes_{tag}", ok_zm))
            if L >= 2:
                u, _ = _pair(rng, profiles[0], c)
                out.append(_result(f"coproduct_{tag}", coproduct_check(u, 1, ch)["pass"]))
    if 1 in ranks:
        r = transfer_eigencheck(((Fraction(0),),), Fraction(7, 3), chain(1, c, [0, 0]))
        out.append(_result("transfer_eigencheck_u0", r["pass"], r["tau"]))
    return out


SUITE_FUNCS = {name: globals()[f"suite_{name}"] for name in SUITES}


# ------------------------------------------------------------ commands

def cmd_hc(args):
    from .highest_coefficient import hc, hc_alt
    c = _rat(args.c, "--c")
    first = parse_collection(args.first, args.rank, "--first")
    second = parse_collection(args.second, args.rank, "--second")
    val = (hc_alt if args.alt else hc)(first, second, c)
    return {"first": first, "second": second}, [_result("hc", value=val)]


def _model(args, rank, c):
    from .scalar_product import drinfeld_model, model_from_json
    if args.input:
        obj = _json(_read(args.input), args.input)
        try:
            return model_from_json(obj.get("model", obj))
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"{args.input}: {e}") from None
    return drinfeld_model(rank, c, [[] for _ in range(rank)])


def cmd_scalar(args):
    from .scalar_product import scalar_sum
    c = _rat(args.c, "--c")
    v = parse_collection(args.first, args.rank, "--first")
    u = parse_collection(args.second, args.rank, "--second")
    rank = args.rank or len(u)
    model = _model(args, rank, c)
    rep = scalar_sum(v, u, model)
    return ({"first": v, "second": u},
            [_result("scalar", value=rep.value,
                     details={"term_count": rep.term_count, "hit_rate": round(rep.hit_rate, 6)})])


def cmd_norm(args):
    from .gaudin import norm_limit
    c = _rat(args.c, "--c")
    if args.input:
        obj = _json(_read(args.input), args.input)
        u = parse_collection(obj.get("u"), args.rank, f"{args.input}:u")
        X = parse_collection(obj.get("X"), args.rank, f"{args.input}:X")
        d = obj.get("direction")
        d = parse_collection(d, args.rank, f"{args.input}:direction") if d else None
    else:
        u = parse_collection(args.first, args.rank, "--first")
        X = parse_collection(args.X, args.rank, "--X")
        d = None
    if [len(p) for p in u] != [len(p) for p in X]:
        raise InputError("X: one value per Bethe parameter is required")
    r = norm_limit(u, X, d, coupling=c)
    return ({"u": u, "X": X},
            [_result("norm", r["pass"], r["limit"],
                     {"predicted": r["predicted"], "det": r["det"],
                      "float_errors": r.get("float_errors")})])


def cmd_izergin(args):
    from .highest_coefficient import izergin
    c = _rat(args.c, "--c")
    v = parse_list(args.first, "--first")
    u = parse_list(args.second, "--second")
    if len(u) != len(v):
        raise InputError("--first and --second must have equal length")
    return {"v": v, "u": u}, [_result("izergin", value=izergin(v, u, c))]


def cmd_verify(args):
    names = []
    for item in args.suite or ["all"]:
        names.extend(x.strip() for x in item.split(",") if x.strip())
    if "all" in names:
        names = list(SUITES)
    bad = [x for x in names if x not in SUITES]
    if bad:
        raise InputError(f"--suite: unknown suite(s) {bad}; choose from {list(SUITES)}")
    out = []
    for name in names:
        rng = random.Random(f"{args.seed}:{name}")
        for r in SUITE_FUNCS[name](args, rng):
            r["name"] = f"{name}.{r['name']}"
            out.append(r)
    return {"suites": names, "seed": args.seed, "rank": args.rank, "length": args.length}, out


COMMANDS = {"hc": cmd_hc, "scalar": cmd_scalar, "norm": cmd_norm,
            "izergin": cmd_izergin, "verify": cmd_verify}


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bsk", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--rank", type=int, default=None)
        sp.add_argument("--c", default="1")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--input", default=None, metavar="FILE")
        sp.add_argument("--output", default=None, metavar="FILE")
        sp.add_argument("--cap", type=int, default=None, metavar="DIM")
        sp.add_argument("--no-timing", action="store_true",
                        help="write elapsed_ms as null so reports are byte-identical")

    sp = sub.add_parser("hc", help="highest coefficient Z(first|second)")
    common(sp)
    sp.add_argument("--first", required=True)
    sp.add_argument("--second", required=True)
    sp.add_argument("--alt", action="store_true", help="use the first-argument recurrence")

    sp = sub.add_parser("scalar", help="scalar product S(first|second) by the sum formula")
    common(sp)
    sp.add_argument("--first", required=True)
    sp.add_argument("--second", required=True)

    sp = sub.add_parser("norm", help="on-shell norm limit against the Gaudin determinant")
    common(sp)
    sp.add_argument("--first", default=None, help="Bethe parameters u")
    sp.add_argument("--X", default=None, help="X values, same shape as u")

    sp = sub.add_parser("izergin", help="Izergin determinant K(first|second)")
    common(sp)
    sp.add_argument("--first", required=True)
    sp.add_argument("--second", required=True)

    sp = sub.add_parser("verify", help="run verification suites")
    common(sp)
    sp.add_argument("--suite", action="append", help=f"one of {', '.join(SUITES)} or all")
    sp.add_argument("--length", type=int, default=None)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "norm" and not args.input and (args.first is None or args.X is None):
        parser.error("norm needs --input FILE or both --first and --X")
    t0 = time.perf_counter()
    try:
        inputs, results = COMMANDS[args.command](args)
    except InputError as e:
        print(f"bsk: error: {e}", file=sys.stderr)
        return 2
    elapsed = round((time.perf_counter() - t0) * 1000)
    digest = hashlib.sha256(json.dumps(to_json(inputs), sort_keys=True).encode()).hexdigest()
    # Fraction inputs hash via their string form, so 1/1 and 1 agree
    report = {"command": args.command, "inputs_digest": digest, "results": results,
              "elapsed_ms": None if args.no_timing else elapsed}
    text = json.dumps(report, indent=2, sort_keys=False) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    ok = all(r.get("pass", True) for r in results)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
