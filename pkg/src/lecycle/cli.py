"""Command-line front end.

    lecycle <command> --vars v0,v1,... [--format json|text] [--seed N]
            [--verify] [--max-steps N] [--max-degree N] "<polynomial>"

The order of ``--vars`` is the coordinate order z_0, ..., z_n (z_0 is the
first slicing variable).  JSON goes to stdout and is byte-deterministic;
wall-clock timing goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from . import __version__
from .errors import InternalInconsistency, LecycleError, ParseError
from .ideal import NOT_ZERO_DIMENSIONAL, Context, Limits
from .lenumbers import (
    LeResult,
    critical_data,
    existence_check,
    iomdine_polynomial,
    le_numbers,
    polar_curve_report,
    restrict_to_hyperplane,
)
from .oracle import NOT_STABILIZED, stabilized_local_multiplicity
from .parsing import parse_polynomial
from .polyring import Ring
from .topology import (
    HomologyProfile,
    join_homology,
    le_iomdine_predict,
    milnor_fiber_report,
    milnor_number,
    restriction_predict,
    sebastiani_thom_milnor,
)

COMMANDS = ("milnor", "le", "euler", "betti", "join", "iomdine", "restrict", "check", "oracle-dim")


@dataclass
class ResultDocument:
    command: str
    input: list
    variables: list
    result: dict
    shear: dict | None = None
    warnings: list = field(default_factory=list)
    version: str = __version__

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "input": self.input,
            "variables": self.variables,
            "shear": self.shear,
            "result": self.result,
            "warnings": self.warnings,
            "version": self.version,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ResultDocument":
        return cls(**json.loads(text))


class Verifier:
    """Re-checks every zero-dimensional local multiplicity with the oracle."""

    def __init__(self):
        self.checked = 0

    def __call__(self, ideal, value):
        if value is NOT_ZERO_DIMENSIONAL:
            return
        expected = stabilized_local_multiplicity(ideal, max(3, value + 2))
        self.checked += 1
        if expected == NOT_STABILIZED or expected != value:
            raise InternalInconsistency(
                f"oracle mismatch on {ideal!r}: engine {value}, oracle {expected}"
            )


def _le_payload(le: LeResult) -> dict:
    out = {"s": le.s, "n": le.n, "valid": le.valid}
    if le.valid:
        out["lambda"] = list(le.lambdas)
        if le.gammas is not None:
            out["gamma"] = [None] + list(le.gammas[1:])
        if le.existence:
            out["existence"] = list(le.existence)
    if le.predicted:
        out["predicted"] = True
    return out


def _shear_payload(le: LeResult, seed: int):
    if le.shear is None:
        return None
    return {"matrix": le.shear.to_lists(), "seed": seed}


def _report_payload(rep) -> dict:
    return {
        "n": rep.n,
        "s": rep.s,
        "chain_ranks": list(rep.chain_ranks),
        "euler_characteristic": rep.euler_characteristic,
        "betti_bounds": {str(d): b for d, b in rep.betti_bounds},
        "connectivity": rep.connectivity,
        "attaching_bound": rep.attaching_bound,
        "notes": list(rep.notes),
    }


def _ring(vars_text: str) -> Ring:
    names = [v.strip() for v in vars_text.split(",") if v.strip()]
    if not names:
        raise ParseError("--vars must list at least one variable", 1, 1)
    if len(set(names)) != len(names):
        raise ParseError(f"--vars has duplicate names: {vars_text}", 1, 1)
    return Ring(tuple(names))


def _attaching_number(f, ctx):
    try:
        return polar_curve_report(critical_data(f, ctx)).with_f
    except LecycleError:
        return None


def execute(args) -> ResultDocument:
    """Run one parsed command and build its result document."""
    ctx = Context(Limits(max_steps=args.max_steps, max_degree=args.max_degree))
    verifier = None
    if args.verify:
        verifier = Verifier()
        ctx.observers.append(verifier)
    ring = _ring(args.vars)
    cmd = args.command
    texts = args.polynomial[:1] if cmd == "join" else args.polynomial
    polys = [parse_polynomial(text, ring) for text in texts]
    if cmd not in ("oracle-dim", "join") and len(polys) != 1:
        raise ParseError(f"{cmd} takes exactly one polynomial", 1, 1)
    if cmd == "join":
        polys = polys[:1]
    f = polys[0]
    doc = ResultDocument(cmd, [p.to_str() for p in polys], list(ring.names), {})

    if cmd == "milnor":
        doc.result = {"milnor_number": milnor_number(f, ctx)}
    elif cmd in ("le", "euler", "betti"):
        le = le_numbers(f, seed=args.seed, ctx=ctx)
        doc.shear = _shear_payload(le, args.seed)
        doc.warnings = list(le.warnings)
        doc.result = _le_payload(le)
        if cmd != "le" and le.valid:
            attach = _attaching_number(f, ctx) if cmd == "betti" else None
            rep = milnor_fiber_report(le, attaching_number=attach)
            if cmd == "euler":
                doc.result["euler_characteristic"] = rep.euler_characteristic
            else:
                doc.result["report"] = _report_payload(rep)
    elif cmd == "check":
        cd = critical_data(f, ctx)
        rep = existence_check(cd)
        doc.warnings = list(rep.warnings)
        doc.result = {"s": cd.s, "existence": list(rep.flags), "all_exist": rep.ok}
        try:
            pc = polar_curve_report(cd)
            doc.result["teissier"] = {
                "gamma1_dot_f": pc.with_f,
                "gamma1_dot_z0": pc.with_z0,
                "gamma1_dot_df0": pc.with_df0,
                "identity_holds": pc.identity_holds,
                "strict_inequality_holds": pc.strict_inequality_holds,
            }
        except LecycleError as exc:
            doc.warnings.append(f"Teissier report unavailable: {exc}")
    elif cmd == "iomdine":
        le = le_numbers(f, seed=args.seed, ctx=ctx)
        pred = le_iomdine_predict(le, args.j)
        doc.shear = _shear_payload(le, args.seed)
        doc.result = {"j": args.j, "source": _le_payload(le), "predicted": _le_payload(pred)}
        if args.verify:
            direct = le_numbers(iomdine_polynomial(f, args.j), seed=args.seed, ctx=ctx)
            doc.result["direct"] = _le_payload(direct)
            if (direct.s, direct.lambdas) != (pred.s, pred.lambdas):
                raise InternalInconsistency("Lê-Iomdine prediction disagrees with direct computation")
    elif cmd == "restrict":
        le = le_numbers(f, seed=args.seed, ctx=ctx)
        pred = restriction_predict(le)
        doc.shear = _shear_payload(le, args.seed)
        doc.result = {"source": _le_payload(le), "predicted": _le_payload(pred)}
        if args.verify:
            direct = le_numbers(restrict_to_hyperplane(f), seed=args.seed, ctx=ctx)
            doc.result["direct"] = _le_payload(direct)
            if (direct.s, direct.lambdas) != (pred.s, pred.lambdas):
                raise InternalInconsistency("restriction prediction disagrees with direct computation")
    elif cmd == "join":
        if args.vars2 is None or len(args.polynomial) != 2:
            raise ParseError("join needs --vars2 and two polynomials f and g", 1, 1)
        ring_g = _ring(args.vars2)
        g = parse_polynomial(args.polynomial[1], ring_g)
        doc.input = [f.to_str(), g.to_str()]
        doc.variables = [list(ring.names), list(ring_g.names)]
        mu_f, mu_g = milnor_number(f, ctx), milnor_number(g, ctx)
        n_f, n_g = ring.nvars - 1, ring_g.nvars - 1
        A = HomologyProfile.bouquet(mu_f, n_f)
        B = HomologyProfile.bouquet(mu_g, n_g)
        degree, rank = sebastiani_thom_milnor(mu_f, n_f, mu_g, n_g)
        doc.result = {
            "milnor_numbers": [mu_f, mu_g],
            "join_homology": join_homology(A, B).to_json(),
            "sebastiani_thom": {"degree": degree, "rank": rank},
        }
        if args.verify:
            both = Ring(ring.names + ring_g.names)
            if len(set(both.names)) != both.nvars:
                raise ParseError("f and g must use disjoint variables", 1, 1)
            h = parse_polynomial(f"({args.polynomial[0]}) + ({args.polynomial[1]})", both)
            mu_h = milnor_number(h, ctx)
            doc.result["direct_milnor_number"] = mu_h
            if mu_h != rank:
                raise InternalInconsistency("Sebastiani-Thom product disagrees with direct Milnor number")
    elif cmd == "oracle-dim":
        value = stabilized_local_multiplicity(polys, args.n_max)
        doc.result = {"local_multiplicity": value, "n_max": args.n_max}
    if verifier is not None:
        doc.result["verified_multiplicities"] = verifier.checked
    return doc


def _text(doc: ResultDocument) -> str:
    lines = [f"{doc.command}: {' ; '.join(doc.input)}  [vars {doc.variables}]"]
    res = doc.result

    def le_table(payload, title=None):
        if title:
            lines.append(title)
        lines.append(f"  s = {payload['s']}")
        if not payload.get("valid", True):
            lines.append("  (Lê numbers undefined)")
            return
        gam = payload.get("gamma")
        for k, lam in enumerate(payload["lambda"]):
            g = "-" if gam is None or gam[k] is None else gam[k]
            lines.append(f"  k={k}:  lambda^{k} = {lam:<6} gamma^{k} = {g}")

    if doc.command in ("le", "euler", "betti"):
        le_table(res)
        if "euler_characteristic" in res:
            lines.append(f"  Euler characteristic = {res['euler_characteristic']}")
        if "report" in res:
            rep = res["report"]
            lines.append(f"  Euler characteristic = {rep['euler_characteristic']}")
            lines.append(f"  connectivity: {rep['connectivity']}-connected")
            for d, b in rep["betti_bounds"].items():
                lines.append(f"  rank H~^{d} <= {b}")
            if rep["attaching_bound"] is not None:
                lines.append(f"  b_n <= {rep['attaching_bound']}")
    elif doc.command in ("iomdine", "restrict"):
        le_table(res["source"], "source:")
        le_table(res["predicted"], "predicted:")
        if "direct" in res:
            le_table(res["direct"], "direct:")
    else:
        for k in sorted(res):
            lines.append(f"  {k} = {res[k]}")
    if doc.shear and any(
        doc.shear["matrix"][i][j] != int(i == j)
        for i in range(len(doc.shear["matrix"]))
        for j in range(len(doc.shear["matrix"]))
    ):
        lines.append(f"  shear: {doc.shear['matrix']} (seed {doc.shear['seed']})")
    for w in doc.warnings:
        lines.append(f"  warning: {w}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--vars", required=True, help="comma-separated coordinates z0,...,zn")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--verify", action="store_true", help="cross-check with the oracle")
    common.add_argument("--max-steps", type=int, default=50_000)
    common.add_argument("--max-degree", type=int, default=200)
    common.add_argument("polynomial", nargs="+")

    parser = argparse.ArgumentParser(prog="lecycle", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("milnor", parents=[common], help="Milnor number (isolated case)")
    sub.add_parser("le", parents=[common], help="Lê and polar numbers")
    sub.add_parser("euler", parents=[common], help="Euler characteristic of the Milnor fiber")
    sub.add_parser("betti", parents=[common], help="Betti bounds and connectivity")
    p = sub.add_parser("join", parents=[common], help="Sebastiani-Thom join of f and g")
    p.add_argument("--vars2", help="coordinates of the second polynomial")
    p = sub.add_parser("iomdine", parents=[common], help="Lê-Iomdine prediction for f + z0^j")
    p.add_argument("-j", type=int, required=True)
    sub.add_parser("restrict", parents=[common], help="prediction for f restricted to V(z0)")
    sub.add_parser("check", parents=[common], help="existence flags and Teissier identity")
    p = sub.add_parser("oracle-dim", parents=[common], help="oracle local multiplicity of an ideal")
    p.add_argument("--n-max", type=int, default=16)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors (2), --help and --version (0)
        return exc.code if isinstance(exc.code, int) else 2
    start = time.perf_counter()
    try:
        doc = execute(args)
    except LecycleError as exc:
        print(f"lecycle: error: {exc}", file=stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"lecycle: error: {exc}", file=stderr)
        return 2
    elapsed = time.perf_counter() - start
    if args.format == "json":
        print(doc.to_json(), file=stdout)
        print(json.dumps({"timing": {"seconds": round(elapsed, 6)}}), file=stderr)
    else:
        print(_text(doc), file=stdout)
        print(f"  ({elapsed:.3f} s)", file=stderr)
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
