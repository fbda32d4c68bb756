"""Command-line entry point: ``unitgen <subcommand> ...``.

Exit codes: 0 success, 1 a check or theory violation fired (details on
stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .exactmath import BudgetExceeded, FieldError, Matrix, field_of_order, parse_field
from .mualg import AlgebraAxiomError, derivation_algebra, load_algebra
from .unitary import (
    TheoryViolation, check_witness, classify, dims, explicit_generators, identity_suite,
    make_model, orbit_data, general_dim_Zr,
)

SCHEMA_VERSION = 1


class CheckFailed(Exception):
    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload or {}


def _digest(obj) -> str:
    text = json.dumps(obj, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(text.encode()).hexdigest()


def _now():
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


# -- subcommands ------------------------------------------------------------
# each returns (result dict, human-readable text, digest source)

def cmd_dims(args):
    rec = dims(args.n, args.r, args.char)
    bound, exact = general_dim_Zr(rec.dim_G, orbit_data(args.n), args.r)
    result = rec.to_dict()
    result["orbit_bound"] = {"value": bound, "exact": exact}
    lines = [f"n={args.n} r={args.r}: dim Z = {rec.dim_Z} in ambient {rec.ambient}, c_A = {rec.c_A}"]
    for i, v in rec.dim_X.items():
        lines.append(f"  dim X{i} = {v}")
    tag = "" if rec.dim_Ybar_exact else " (upper bound)"
    lines.append(f"  dim Ybar = {rec.dim_Ybar}{tag}")
    if rec.dim_Yprimebar is not None:
        lines.append(f"  dim Y'bar = {rec.dim_Yprimebar}")
    lines.append(f"  components: {', '.join(rec.components)}")
    lines.append(f"  orbit bound = {bound} ({'exact' if exact else 'upper bound'})")
    return result, "\n".join(lines)


def cmd_bounds(args):
    from .bounds import (bounds_table, lower_bound_examples, n1_analysis, noetherian_bound,
                         table_csv, upper_bound)
    result = {}
    lines = []
    if args.n == 1:
        result["n1"] = n1_analysis(args.d)
        lines.append(f"n=1: least r with r > d is {result['n1']['least_r']} "
                     "(not covered by the floor formula)")
    else:
        ub = upper_bound(args.n, args.d)
        if not ub.agrees:
            raise CheckFailed("floor formula and least-r check disagree",
                              {"n": args.n, "d": args.d, "upper": ub.value, "least_r": ub.least_r})
        lb = lower_bound_examples(args.n, args.d)
        result.update(upper=ub.value, least_r=ub.least_r, lower=lb["value"],
                      lower_hypothesis=lb["hypothesis"])
        lines.append(f"n={args.n} d={args.d}: upper {ub.value} (least r with c_A(r) > d: "
                     f"{ub.least_r}), lower {lb['value']} ({lb['hypothesis']})")
    nb = noetherian_bound(args.d)
    result["noetherian"] = nb["value"]
    lines.append(f"noetherian bound d+1 = {nb['value']} (excludes {nb['excludes']})")
    if args.table:
        nmax, dmax = args.table
        rows = bounds_table(nmax, dmax)
        bad = [r for r in rows if r["upper"] != r["least_r"] or r["lower"] > r["upper"]]
        if bad:
            raise CheckFailed("bounds grid check failed", {"rows": bad[:10]})
        text = table_csv(rows)
        if args.csv:
            Path(args.csv).write_text(text)
            lines.append(f"wrote {len(rows)} rows to {args.csv}")
        else:
            lines.append(text.rstrip())
        result["table"] = {"nmax": nmax, "dmax": dmax, "rows": len(rows), "csv_sha256":
                           hashlib.sha256(text.encode()).hexdigest()}
    return result, "\n".join(lines)


def cmd_identities(args):
    F = parse_field(args.field)
    rep = identity_suite(args.n, F)
    result = {"n": args.n, "field": F.spec, "checked": rep.checked,
              "failures": [list(f) for f in rep.failures], "passed": rep.passed}
    if not rep.passed:
        raise CheckFailed("identity failures", result)
    total = sum(rep.checked.values())
    return result, f"n={args.n} over {F.spec}: {total} identity checks passed"


def _generator_jobs(args, F):
    n = args.n
    if args.kind:
        return [dict(kind=args.kind, k=args.k, alpha=args.alpha, q=args.q, d=args.d)]
    jobs = [dict(kind="full"), dict(kind="orthogonal")]
    if n >= 2:
        jobs += [dict(kind="AV", k=k, alpha=args.alpha) for k in range(1, n)]
        jobs.append(dict(kind="BI"))
    if n % 2 == 0 and n > 2:
        jobs += [dict(kind="BOmega"), dict(kind="symplectic")]
    if F.is_finite and F.k == 1 and n >= 2:
        jobs.append(dict(kind="unitary-finite", q=F.order))
    return jobs


def cmd_verify_generators(args):
    F = parse_field(args.field)
    out, lines, failed = [], [], []
    for job in _generator_jobs(args, F):
        kind = job.pop("kind")
        kw = {k: v for k, v in job.items() if v is not None}
        gs = explicit_generators(kind, args.n, F, **kw)
        rec = {"kind": kind, "field": gs.field.spec, "closure_dim": gs.closure_dim,
               "target_dim": gs.target_dim, "matches_target": gs.matches_target,
               "escalated": gs.escalated, "params": gs.params, "ok": gs.ok}
        out.append(rec)
        lines.append(f"{kind:15s} over {gs.field.spec:6s} closure {gs.closure_dim:3d} / "
                     f"{gs.target_dim:3d}  {'ok' if gs.ok else 'FAIL'}"
                     + ("  (escalated)" if gs.escalated else ""))
        if not gs.ok:
            failed.append(rec)
    result = {"n": args.n, "field": F.spec, "generators": out}
    if failed:
        raise CheckFailed("generator check failed", {"failed": failed})
    return result, "\n".join(lines)


def _read_tuple(path, n, field):
    data = json.loads(Path(path).read_text())
    if int(data.get("n", n)) != n:
        raise ValueError(f"tuple file has n={data['n']}, expected {n}")
    F = parse_field(data.get("field", field))
    if F.spec != parse_field(field).spec:
        raise ValueError(f"tuple file field {F.spec} differs from --field {field}")
    pairs = [(Matrix(F, a), Matrix(F, b)) for a, b in data["pairs"]]
    for a, b in pairs:
        if a.shape != (n, n) or b.shape != (n, n):
            raise ValueError("every matrix in the tuple must be n x n")
    return F, pairs


def cmd_classify(args):
    F, pairs = _read_tuple(args.tuple, args.n, args.field)
    model = make_model(args.n, F)
    ws = classify(model, pairs, all_witnesses=args.all_witnesses, max_ext=args.max_ext)
    for w in ws:
        if not check_witness(pairs, w):
            raise CheckFailed("a witness failed re-verification", {"witness": w.to_dict()})
    result = {"n": args.n, "field": F.spec, "witnesses": [w.to_dict() for w in ws]}
    lines = []
    for w in ws:
        d = w.to_dict()
        if d["type"] == "generates":
            lines.append("generates")
        elif d["type"] == "invariant-subspace":
            lines.append(f"invariant subspace of dim {d['dim']} over {d['field']}: {d['basis']}")
        else:
            lines.append(f"conjugator ({d['kind']}) over {d['field']}: {d['p']}")
    return result, "\n".join(lines)


def cmd_census(args):
    from .census import run_exhaustive, run_sampled
    if args.mode == "exhaustive":
        rep = run_exhaustive(args.n, args.r, args.q, classify=args.classify, workers=args.workers,
                             budget=args.budget, checkpoint=args.checkpoint)
    else:
        rep = run_sampled(args.n, args.r, args.q, args.samples, seed=args.seed,
                          classify=args.classify, workers=args.workers)
    result = rep.to_dict()
    lines = [f"n={rep.n} r={rep.r} q={rep.q} {rep.mode}: N = {rep.nongen} of {rep.total}"]
    if rep.exponent is not None:
        lines.append(f"  log_q N = {rep.exponent:.4f} (predicted dim {rep.predicted_dim})")
    lines.append(f"  frequency = {rep.frequency:.6g}, Wilson 95% "
                 f"[{rep.wilson95[0]:.6g}, {rep.wilson95[1]:.6g}], "
                 f"frequency * q^{rep.c_A} = {rep.scaled_frequency:.4f}")
    if rep.classes:
        lines.append("  classes: " + ", ".join(f"{k}={v}" for k, v in rep.classes.items()))
    return result, "\n".join(lines), rep.content()


def cmd_derivations(args):
    if args.algebra:
        A = load_algebra(args.algebra)
        label = args.algebra
    else:
        F = parse_field(args.field)
        A = make_model(args.n, F).algebra
        label = f"A_{args.n} over {F.spec}"
    der = derivation_algebra(A)
    result = {"algebra": label, "dim": der.dim, "informational": der.informational}
    if args.n and not args.algebra:
        result["expected"] = args.n * args.n - 1
        if not der.informational and der.dim != args.n * args.n - 1:
            raise CheckFailed("derivation dimension differs from n^2 - 1", result)
    note = " (characteristic p: informational only)" if der.informational else ""
    return result, f"{label}: dim Der = {der.dim}{note}"


def cmd_validate_algebra(args):
    A = load_algebra(args.file)
    result = {"dim": A.dim, "field": A.field.spec, "fingerprint": A.fingerprint()}
    return result, f"valid: dim {A.dim} over {A.field.spec}, fingerprint {A.fingerprint()}"


COMMANDS = {
    "dims": cmd_dims, "bounds": cmd_bounds, "identities": cmd_identities,
    "verify-generators": cmd_verify_generators, "classify": cmd_classify, "census": cmd_census,
    "derivations": cmd_derivations, "validate-algebra": cmd_validate_algebra,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="unitgen", description="Generation of algebras with "
                                     "unitary involution: exact checks and point counts.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--json", nargs="?", const="-", metavar="PATH",
                       help="write the JSON result to PATH (stdout when PATH is omitted)")
        return p

    p = add("dims", "dimension formulas for the non-generating locus")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--char", type=int, default=0, help="field characteristic (default 0)")

    p = add("bounds", "generator-count bounds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--table", type=int, nargs=2, metavar=("NMAX", "DMAX"))
    p.add_argument("--csv", metavar="PATH")

    p = add("identities", "check the shift / symmetric-unit matrix identities")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--field", default="Q")

    p = add("verify-generators", "verify explicit generators by closure")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--field", default="Q")
    p.add_argument("--kind", choices=["full", "AV", "BI", "BOmega", "BOmega2", "unitary-finite",
                                      "orthogonal", "symplectic"])
    p.add_argument("--k", type=int)
    p.add_argument("--alpha")
    p.add_argument("--q", type=int)
    p.add_argument("--d", nargs="+", help="diagonal entries for orthogonal")

    p = add("classify", "certify why a tuple does or does not generate")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--tuple", required=True, metavar="FILE")
    p.add_argument("--all-witnesses", action="store_true")
    p.add_argument("--max-ext", type=int)

    p = add("census", "count non-generating tuples over F_q")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    p.add_argument("--samples", type=int, default=10**5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--classify", action="store_true")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--checkpoint", metavar="PATH")
    p.add_argument("--budget", type=int, help="overrides UNITGEN_BUDGET")

    p = add("derivations", "dimension of the derivation algebra")
    p.add_argument("--n", type=int)
    p.add_argument("--field", default="Q")
    p.add_argument("--algebra", metavar="FILE")

    p = add("validate-algebra", "validate an algebra file and print its fingerprint")
    p.add_argument("file")
    return parser


def _field_label(args):
    if getattr(args, "field", None):
        return parse_field(args.field).spec
    if getattr(args, "q", None):
        return field_of_order(args.q).spec
    return None


def _params(args) -> dict:
    return {k: v for k, v in vars(args).items() if k not in ("json", "command")}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "derivations" and not (args.n or args.algebra):
        print("unitgen derivations: error: needs --n or --algebra", file=sys.stderr)
        return 2
    started = _now()
    try:
        out = COMMANDS[args.command](args)
    except (TheoryViolation, CheckFailed) as exc:
        payload = exc.serialize() if isinstance(exc, TheoryViolation) else json.dumps(
            {"error": "check-failed", "message": str(exc), **exc.payload}, sort_keys=True,
            default=str)
        print(payload, file=sys.stderr)
        return 1
    except AlgebraAxiomError as exc:
        print(json.dumps({"error": "axiom-violation", "message": str(exc),
                          "basis_indices": list(exc.witness)}), file=sys.stderr)
        return 1
    except (BudgetExceeded, FieldError, ValueError, FileNotFoundError) as exc:
        print(f"unitgen {args.command}: error: {exc}", file=sys.stderr)
        return 2
    result, text = out[0], out[1]
    digest_source = out[2] if len(out) > 2 else result
    manifest = {
        "subcommand": args.command, "params": _params(args), "version": __version__,
        "field": _field_label(args),
        "seed": getattr(args, "seed", None), "started": started, "finished": _now(),
        "output_digest": _digest(digest_source),
    }
    doc = {"schema_version": SCHEMA_VERSION, "subcommand": args.command, "result": result,
           "manifest": manifest}
    if args.json == "-":
        print(json.dumps(doc, indent=2, sort_keys=True, default=str))
    else:
        print(text)
        if args.json:
            Path(args.json).write_text(json.dumps(doc, indent=2, sort_keys=True, default=str))
    return 0


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
