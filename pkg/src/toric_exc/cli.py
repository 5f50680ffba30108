"""``toric-exc`` command line."""
from __future__ import annotations

import argparse
import sys

from . import __version__
from .jsonio import (decode_class, decode_divisor, dumps, encode_class, fan_to_json, load_fan,
                     load_json, wrap_report)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _emit(args, command, inputs, result, summary=None, stream=None):
    stream = stream or sys.stdout
    report = wrap_report(command, inputs, result)
    stream.write(dumps(report, pretty=args.pretty) + "\n")
    if args.pretty and summary:
        sys.stderr.write(summary + "\n")


def _inputs(args, **extra):
    out = {k: v for k, v in vars(args).items() if k not in ("func", "pretty", "output")}
    out.update(extra)
    return out


def cmd_fan(args):
    from .fan import primitive_collections, validate_fan
    ctx = load_fan(args.fan)
    if args.action == "validate":
        rep = validate_fan(ctx.fan)
        res = rep.to_json()
        _emit(args, "fan validate", _inputs(args, fan=ctx.fan.to_json()), res,
              f"smooth={rep.smooth} pseudo_manifold={rep.pseudo_manifold}")
        return EXIT_OK if rep.smooth and rep.pseudo_manifold else EXIT_FAIL
    prims = [list(p) for p in primitive_collections(ctx.fan)]
    _emit(args, "fan prims", _inputs(args, fan=ctx.fan.to_json()), {"prims": prims},
          f"{len(prims)} primitive collections")
    return EXIT_OK


def cmd_build(args):
    from .batyrev import BatyrevParams, FamilyParams, build_batyrev, build_family
    if args.kind == "family":
        if args.n is None or args.r is None:
            raise ValueError("build family needs --n and --r")
        params = FamilyParams(args.n, args.r, (args.b or [0])[0], tuple(args.c or ()))
        var = build_family(params)
        out = fan_to_json(var.fan, family=params)
    else:
        if args.p is None:
            raise ValueError("build batyrev needs --p")
        params = BatyrevParams(tuple(args.p), tuple(args.c or ()), tuple(args.b or ()))
        var = build_batyrev(params)
        out = fan_to_json(var.fan, batyrev=params)
    out["groups"] = [list(g) for g in var.groups]
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(dumps(out, pretty=True) + "\n")
    else:
        sys.stdout.write(dumps(out, pretty=args.pretty) + "\n")
    return EXIT_OK


def cmd_homology(args):
    from .homology import PrimComplex, is_acyclic_complex, snf_homology
    data = load_json(args.complex)
    c = PrimComplex.from_json(data)
    betti = snf_homology(c)
    res = betti.to_json()
    res["acyclic"] = betti.acyclic
    if args.method == "reduce":
        res["acyclic_by_reduction"] = is_acyclic_complex(c)
    _emit(args, "homology", _inputs(args, complex=data), res, f"nonzero degrees {betti.nonzero_degrees()}")
    return EXIT_OK


def cmd_forbidden(args):
    from .fan import primitive_collections
    from .homology import forbidden_sets, forbidden_sets_picard3
    ctx = load_fan(args.fan)
    if args.closed_form:
        sets = forbidden_sets_picard3(primitive_collections(ctx.fan), ctx.fan.n_rays)
    else:
        sets = forbidden_sets(ctx.fan, args.method)
    _emit(args, "forbidden", _inputs(args, fan=ctx.fan.to_json()), {"forbidden": [list(s) for s in sets]},
          f"{len(sets)} forbidden sets")
    return EXIT_OK


def cmd_acyclic(args):
    from .cohomology import is_acyclic
    ctx = load_fan(args.fan)
    data = load_json(args.cls)
    cls = decode_class(ctx, data)
    ok = is_acyclic(ctx.fan, cls, ctx.basis_rays)
    _emit(args, "acyclic", _inputs(args, fan=ctx.fan.to_json(), cls=data),
          {"class": encode_class(ctx, cls), "acyclic": ok}, f"acyclic={ok}")
    return EXIT_OK


def cmd_cohom(args):
    from .cohomology import cohomology_dims
    ctx = load_fan(args.fan)
    data = load_json(args.cls)
    cls = decode_class(ctx, data)
    table = cohomology_dims(ctx.fan, cls, ctx.basis_rays)
    _emit(args, "cohom", _inputs(args, fan=ctx.fan.to_json(), cls=data),
          {"class": encode_class(ctx, cls), "cohomology": table.to_json()}, f"h = {list(table.dims)}")
    return EXIT_OK


def cmd_ext(args):
    from .cohomology import ext_vanishing
    ctx = load_fan(args.fan)
    d1, d2 = load_json(args.L1), load_json(args.L2)
    rep = ext_vanishing(ctx.fan, decode_class(ctx, d1), decode_class(ctx, d2), ctx.basis_rays)
    _emit(args, "ext", _inputs(args, fan=ctx.fan.to_json(), L1=d1, L2=d2), rep.to_json())
    return EXIT_OK


def cmd_frobenius(args):
    from .frobenius import bondal_split, thomsen_split
    ctx = load_fan(args.fan)
    data = load_json(args.div)
    div = decode_divisor(ctx, data)
    enc = lambda c: encode_class(ctx, c)  # noqa: E731
    res = {"m": args.m}
    status = EXIT_OK
    if args.method in ("thomsen", "both"):
        th = thomsen_split(ctx.fan, div, args.m, args.anchor, ctx.basis_rays)
        res["thomsen"] = th.to_json(enc)
    if args.method in ("bondal", "both"):
        bo = bondal_split(ctx.fan, div, args.m, ctx.basis_rays)
        res["bondal"] = bo.to_json(enc)
    if args.method == "both":
        res["equal"] = th == bo
        status = EXIT_OK if res["equal"] else EXIT_FAIL
    _emit(args, "frobenius", _inputs(args, fan=ctx.fan.to_json(), div=data), res)
    return status


def cmd_bondal_image(args):
    from .frobenius import bondal_image
    ctx = load_fan(args.fan)
    im = bondal_image(ctx.fan, args.window, args.m_max, ctx.basis_rays)
    _emit(args, "bondal-image", _inputs(args, fan=ctx.fan.to_json()),
          im.to_json(lambda c: encode_class(ctx, c)), f"{len(im.classes)} classes")
    return EXIT_OK


def cmd_bprime(args):
    from .frobenius import b_prime, bondal_image
    ctx = load_fan(args.fan)
    im = bondal_image(ctx.fan, args.window, args.m_max, ctx.basis_rays)
    classes = b_prime(ctx.fan, im, ctx.basis_rays)
    _emit(args, "bprime", _inputs(args, fan=ctx.fan.to_json()),
          {"classes": [encode_class(ctx, c) for c in classes]}, f"{len(classes)} classes")
    return EXIT_OK


def cmd_col(args):
    from .batyrev import FamilyParams, build_family
    from .exceptional import (build_col, build_diff, col_rank_check, family_verify,
                              koszul_generation_check, pairwise_differences,
                              verify_strongly_exceptional)
    data = load_json(args.params)
    params = FamilyParams.from_json(data.get("family", data))
    coll = build_col(params, args.col2_mode)
    inputs = _inputs(args, params=params.to_json())
    if args.action == "build":
        diff = build_diff(params)
        size, formula, cones = col_rank_check(params, coll)
        res = {"collection": coll.to_json(), "size": size, "formula": formula, "max_cones": cones,
               "diff_matches": pairwise_differences(coll) == set(diff.all)}
        _emit(args, "col build", inputs, res, f"|Col|={size}")
        return EXIT_OK
    if args.action == "verify":
        if args.oracle == "family":
            rep = family_verify(params, coll)
        else:
            var = build_family(params)
            rep = verify_strongly_exceptional(var.fan, coll, (var.t, var.y, var.v[0]))
        size, formula, cones = col_rank_check(params, coll)
        res = rep.to_json()
        res["rank"] = {"size": size, "formula": formula, "max_cones": cones}
        _emit(args, "col verify", inputs, res, f"pass={rep.passed}")
        return EXIT_OK if rep.passed else EXIT_FAIL
    rep = koszul_generation_check(params, coll, args.window)
    _emit(args, "col koszul", inputs, rep.to_json(),
          f"covered {rep.generated_in_window}/{rep.window_size}")
    return EXIT_OK if rep.covered else EXIT_FAIL


def cmd_counterexample(args):
    from .counterexample import counterexample_report, k_family_bondal_box
    rep = counterexample_report(args.k)
    res = rep.to_json()
    if args.bondal_box:
        res["bondal_box"] = k_family_bondal_box(args.k).to_json()
    _emit(args, "counterexample", _inputs(args), res,
          f"k={args.k} inequality_holds={rep.inequality_holds} pairs={rep.pair_count}")
    return EXIT_OK


def cmd_sweep(args):
    from .sweep import SweepConfig, run_sweep
    data = load_json(args.config)
    if args.output:
        data["output"] = args.output
    if args.parallelism:
        data["parallelism"] = args.parallelism
    cfg = SweepConfig.from_json(data)
    report, timing = run_sweep(cfg)
    sys.stdout.write(dumps(report, pretty=args.pretty) + "\n")
    s = report["summary"]
    if args.pretty:
        sys.stderr.write(f"{s['passed']}/{s['points']} passed in {timing['total_seconds']:.2f}s\n")
    return EXIT_OK if s["failed"] == 0 else EXIT_FAIL


def build_parser():
    p = argparse.ArgumentParser(prog="toric-exc", description=__doc__)
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="indented JSON plus a summary on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("fan", parents=[common], help="validate a fan or list primitive collections")
    s.add_argument("action", choices=["validate", "prims"])
    s.add_argument("fan", help="fan JSON file or builtin name (P2, P1xP1, F1, family(2,1,0))")
    s.set_defaults(func=cmd_fan)

    s = sub.add_parser("build", parents=[common], help="construct a Picard-3 fan")
    s.add_argument("kind", choices=["family", "batyrev"])
    s.add_argument("--n", type=int)
    s.add_argument("--r", type=int)
    s.add_argument("--p", type=int, nargs=5)
    s.add_argument("--b", type=int, nargs="*", default=None)
    s.add_argument("--c", type=int, nargs="*", default=None)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("homology", parents=[common], help="reduced homology of a complex")
    s.add_argument("complex")
    s.add_argument("--method", choices=["snf", "reduce"], default="snf")
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("forbidden", parents=[common], help="forbidden subsets of rays")
    s.add_argument("fan")
    s.add_argument("--closed-form", action="store_true")
    s.add_argument("--method", choices=["reduce", "snf"], default="reduce")
    s.set_defaults(func=cmd_forbidden)

    for name, func, help_ in (("acyclic", cmd_acyclic, "acyclicity of a line bundle"),
                              ("cohom", cmd_cohom, "all cohomology dimensions")):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("fan")
        s.add_argument("cls", metavar="class")
        s.set_defaults(func=func)

    s = sub.add_parser("ext", parents=[common], help="Ext groups between two line bundles")
    s.add_argument("fan")
    s.add_argument("L1")
    s.add_argument("L2")
    s.set_defaults(func=cmd_ext)

    s = sub.add_parser("frobenius", parents=[common], help="Frobenius push-forward summands")
    s.add_argument("fan")
    s.add_argument("div")
    s.add_argument("-m", type=int, required=True)
    s.add_argument("--method", choices=["thomsen", "bondal", "both"], default="both")
    s.add_argument("--anchor", type=int, default=0)
    s.set_defaults(func=cmd_frobenius)

    for name, func in (("bondal-image", cmd_bondal_image), ("bprime", cmd_bprime)):
        s = sub.add_parser(name, parents=[common], help="torus image B" if name == "bondal-image" else "the set B'")
        s.add_argument("fan")
        s.add_argument("--window", type=int, default=4)
        s.add_argument("--m-max", type=int, default=64)
        s.set_defaults(func=func)

    s = sub.add_parser("col", parents=[common], help="the ordered collection on a family variety")
    s.add_argument("action", choices=["build", "verify", "koszul"])
    s.add_argument("params", help="JSON with n, r, b, c")
    s.add_argument("--window", type=int, default=4)
    s.add_argument("--col2-mode", choices=["eq6", "thm"], default="eq6")
    s.add_argument("--oracle", choices=["generic", "family"], default="generic")
    s.set_defaults(func=cmd_col)

    s = sub.add_parser("counterexample", parents=[common], help="pair-counting report")
    s.add_argument("-k", type=int, required=True)
    s.add_argument("--bondal-box", action="store_true")
    s.set_defaults(func=cmd_counterexample)

    s = sub.add_parser("sweep", parents=[common], help="run checks over a parameter grid")
    s.add_argument("config")
    s.add_argument("-o", "--output")
    s.add_argument("-j", "--parallelism", type=int)
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError, KeyError) as exc:
        sys.stderr.write(f"toric-exc: error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
