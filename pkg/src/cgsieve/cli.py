"""Command-line interface: plan, classgroup, pip, verify, regions."""

import argparse
import hashlib
import json
import logging
import os
import sys
from fractions import Fraction

from . import __version__
from . import ideals as I
from .errors import (
    BudgetExhausted,
    CGSError,
    HashMismatch,
    InputError,
    NotPrincipalInLattice,
    OracleDomain,
    RankDeficient,
)
from .factorbase import build_factor_base
from .forms import field_class_number
from .numfield import load_field
from .params import (
    ClassDescriptor,
    classify,
    desk_scale_plan,
    regime_params,
    regions_csv,
    strategy,
)
from .pip import PipContext, solve_pip
from .pipeline import default_config, run_classgroup
from .sieve import read_db

log = logging.getLogger("cgsieve")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_NOT_PRINCIPAL, EXIT_BUDGET, EXIT_RANK = 0, 1, 2, 3, 4, 5


def field_hash(field):
    return hashlib.sha256(json.dumps(list(field.T)).encode()).hexdigest()


def _provenance(args, field=None, **config):
    out = {"version": __version__, "command": args.command, "seed": args.seed,
           "config": config}
    if field is not None:
        out["field"] = {"T": list(field.T), "hash": field_hash(field)}
    return out


def _emit(args, payload, text=None):
    blob = json.dumps(payload, sort_keys=True, indent=2)
    if args.out:
        with open(args.out, "w") as f:
            f.write(blob + "\n")
    if args.json or text is None:
        print(blob)
    else:
        print(text)


# ------------------------------------------------------------------- plan


def cmd_plan(args):
    field = load_field(args.field) if args.field else None
    hint = None
    if args.alpha is not None or args.gamma is not None:
        if args.alpha is None or args.gamma is None:
            raise InputError("--alpha and --gamma go together")
        hint = ClassDescriptor(args.n0, args.d0, args.alpha, args.gamma)
    if field is None and hint is None:
        raise InputError("plan needs --field or a hint (--alpha, --gamma)")
    desc = classify(field, hint) if field is not None else hint
    gamma_f = args.gamma_f if args.gamma_f is not None else min(desc.gamma, 1.0)
    gamma_f = max(gamma_f, 1 - desc.alpha)
    dec = strategy(_frac(desc.alpha), _frac(desc.gamma), _frac(min(gamma_f, desc.gamma)))
    absd = field.abs_disc if field is not None else None
    rp = regime_params(desc, absd if absd and absd >= 16 else None, field.n if field else None)
    payload = {
        "regime": rp.regime,
        "constants": {"c_b": rp.c_b, "c_s": rp.c_s, "c_t": rp.c_t},
        "exponent": [float(dec.exponent), rp.exponent[1]],
        "strategy": dec.action,
        "desk_scale": desc.desk_scale if field is not None else False,
        "descriptor": {"n0": desc.n0, "d0": desc.d0, "alpha": desc.alpha, "gamma": desc.gamma},
    }
    if field is not None:
        plan = desk_scale_plan(field, desc)
        payload["concrete"] = {"B": plan.B, "t": plan.t, "S": plan.S}
        payload["plan_source"] = plan.source
        payload["desk_scale"] = desc.desk_scale
    payload["provenance"] = _provenance(args, field, alpha=args.alpha, gamma=args.gamma)
    _emit(args, payload)
    return EXIT_OK


def _frac(x):
    return Fraction(x).limit_denominator(10**6)


# ------------------------------------------------------------- classgroup


def cmd_classgroup(args):
    field = load_field(args.field)
    cfg = default_config(field, B=args.bound, t=args.deg, S=args.coeff, target=args.target,
                         budget=args.budget, threads=args.threads)
    db = args.db or (args.out + ".rels" if args.out else None)
    run = run_classgroup(field, cfg, db_path=db, resume=args.resume)
    res = run.result
    if args.oracle:
        res.certified = field_class_number(field) == res.h
    payload = res.to_json()
    payload["provenance"] = _provenance(args, field, **run.config.to_json())
    payload["provenance"]["fb_hash"] = run.fb.fb_hash
    text = f"h = {res.h}  invariants = {res.invariants}  stabilized = {res.stabilized}"
    _emit(args, payload, text)
    return EXIT_OK


# -------------------------------------------------------------------- pip


def _read_ideal(field, path):
    try:
        with open(path) as f:
            data = json.load(f)
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot read ideal file {path}: {exc}") from exc
    if isinstance(data, dict) and "generators" in data:
        return I.ideal_from_generators(field, data["generators"])
    if isinstance(data, dict) and "hnf" in data:
        return I.ideal_from_hnf(field, data["hnf"])
    raise InputError("ideal file needs a 'generators' or 'hnf' key")


def cmd_pip(args):
    field = load_field(args.field)
    a = _read_ideal(field, args.ideal)
    if args.db:
        header, rels = read_db(args.db)
        if list(header.get("T", [])) != list(field.T):
            raise InputError("relation database belongs to another field")
        fb = build_factor_base(field, header["B"])
        if header.get("fb_hash") != fb.fb_hash:
            raise HashMismatch("relation database was built over another factor base")
    else:
        run = run_classgroup(field, default_config(field, threads=args.threads))
        fb, rels = run.fb, run.relations.relations
    ctx = PipContext(field, fb, rels)
    wit = solve_pip(ctx, a, seed=args.seed, budget=args.budget or 200)
    payload = wit.to_json()
    payload["provenance"] = _provenance(args, field, budget=args.budget, db=args.db)
    _emit(args, payload)
    return EXIT_OK


# ----------------------------------------------------------------- verify


def cmd_verify(args):
    field = load_field(args.field)
    if args.result:
        try:
            with open(args.result) as f:
                result = json.load(f)
            h = int(result["h"])
        except (OSError, ValueError, KeyError) as exc:
            raise InputError(f"cannot read result {args.result}: {exc}") from exc
    elif args.h is not None:
        result, h = {}, args.h
    else:
        raise InputError("verify needs --result or --h")
    if args.expect_h is not None:
        oracle, expected = "expected", args.expect_h
    else:
        try:
            oracle, expected = "reduced-forms", field_class_number(field)
        except OracleDomain:
            raise OracleDomain("field is not imaginary quadratic; pass --expect-h")
    ok = expected == h
    report = {"oracle": oracle, "oracle_h": str(expected), "h": str(h), "certified": ok,
              "provenance": _provenance(args, field)}
    if args.result and args.out:
        result["certified"] = ok
        with open(args.out, "w") as f:
            json.dump(result, f, sort_keys=True, indent=2)
            f.write("\n")
    print(json.dumps(report, sort_keys=True, indent=None if not args.json else 2))
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------- regions


def cmd_regions(args):
    text = regions_csv(args.step)
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ------------------------------------------------------------------ main


def build_parser():
    p = argparse.ArgumentParser(prog="cgsieve", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, field_required=True):
        sp.add_argument("--field", required=field_required, help="field JSON file {\"T\": [...]}")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", help="write the JSON output here")
        sp.add_argument("--json", action="store_true", help="print full JSON")
        sp.add_argument("--threads", type=int, default=1)

    sp = sub.add_parser("plan", help="classify the field and choose parameters")
    common(sp, field_required=False)
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--gamma", type=float, help="gamma_0 of the hint")
    sp.add_argument("--gamma-f", type=float, dest="gamma_f")
    sp.add_argument("--n0", type=float, default=1.0)
    sp.add_argument("--d0", type=float, default=1.0)
    sp.set_defaults(func=cmd_plan)

    sp = sub.add_parser("classgroup", help="sieve relations and compute the class group")
    common(sp)
    sp.add_argument("--bound", type=int, help="factor base bound B")
    sp.add_argument("--deg", type=int, help="degree bound t")
    sp.add_argument("--coeff", type=int, help="initial coefficient bound S")
    sp.add_argument("--target", type=int, help="relations before the first determinant check")
    sp.add_argument("--budget", type=int, help="maximum number of candidates tested")
    sp.add_argument("--resume", help="relation database to continue from")
    sp.add_argument("--db", help="relation database to write (default: OUT.rels)")
    sp.add_argument("--oracle", action="store_true", help="certify with the reduced-forms oracle")
    sp.set_defaults(func=cmd_classgroup)

    sp = sub.add_parser("pip", help="find a generator of a principal ideal")
    common(sp)
    sp.add_argument("--ideal", required=True, help="JSON file with 'generators' or 'hnf'")
    sp.add_argument("--db", help="relation database from classgroup")
    sp.add_argument("--budget", type=int, help="descent attempts")
    sp.set_defaults(func=cmd_pip)

    sp = sub.add_parser("verify", help="compare a class number with an oracle")
    common(sp)
    sp.add_argument("--result", help="classgroup JSON output")
    sp.add_argument("--h", type=int, help="class number to check instead of --result")
    sp.add_argument("--expect-h", type=int, dest="expect_h", help="expected h for other fields")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("regions", help="dump the strategy regions grid as CSV")
    sp.add_argument("--step", type=float, default=0.01)
    sp.add_argument("--out")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_regions)
    return p


def _exit_code(exc):
    if isinstance(exc, InputError):
        return EXIT_INPUT
    if isinstance(exc, NotPrincipalInLattice):
        return EXIT_NOT_PRINCIPAL
    if isinstance(exc, BudgetExhausted):
        return EXIT_BUDGET
    if isinstance(exc, RankDeficient):
        return EXIT_RANK
    return EXIT_FAIL


def main(argv=None):
    logging.basicConfig(
        level=getattr(logging, os.environ.get("CGS_LOG", "WARNING").upper(), logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CGSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _exit_code(exc)


if __name__ == "__main__":
    sys.exit(main())
