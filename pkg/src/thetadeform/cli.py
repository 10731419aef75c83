"""Command line: relation tables, Hopf and coaction checks, fixed points, export.

Exit codes: 0 pass, 1 fail with witness, 2 undecided at the degree bound,
64 usage error.
"""

from __future__ import annotations

import argparse
import cmath
import json
import sys
from collections.abc import Sequence
from pathlib import Path

from .algebra import AlgebraContext, Presentation
from .catalog import build_torus_group, lookup, parse_matrix
from .coaction import (
    BUILTIN_SPECS,
    ExtensionStatus,
    builtin_spec,
    check_coaction_axioms,
    check_extension,
    fixed_points,
    match_presentation,
)
from .errors import ThetaDeformError
from .hopf import MatrixQuantumGroup, check_coproduct_homomorphism, hopf_report
from .phase import DeformationMatrix, PhaseExponent, parse_form
from .report import Status, combine
from .serialize import load_json, presentation_from_json, presentation_to_json, spec_from_json

EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- argument helpers -------------------------------------------------------------


def _params(items: Sequence[str] | None) -> dict:
    out = {}
    for item in items or ():
        for part in item.split(","):
            if not part.strip():
                continue
            if "=" not in part:
                raise UsageError(f"--params expects name=value, got {part!r}")
            name, value = part.split("=", 1)
            out[name.strip()] = parse_form(value)
    return out


def _resolve_algebra(name: str, matrix: str | None, params: dict):
    """A catalog entry (``su:n``, ``sphere:n``, ``torus:n``) or a JSON presentation file."""
    if name.endswith(".json") or Path(name).is_file():
        pres = presentation_from_json(load_json(name))
        return pres.substitute(params) if params else pres
    found = lookup(name, matrix)
    return found.substitute(params) if params else found


def _presentation(obj) -> Presentation:
    return obj.presentation if isinstance(obj, MatrixQuantumGroup) else obj


def _resolve_spec(name: str, params: dict):
    if name.endswith(".json") or Path(name).is_file():
        spec = spec_from_json(load_json(name))
    else:
        spec = builtin_spec(name)
    return spec.substitute(params) if params else spec


def _phase_value(p: PhaseExponent, approx: bool) -> str:
    if not approx:
        return str(p)
    if p.params:
        raise UsageError(f"--approx needs numeric values for {', '.join(p.params)} (use --params)")
    z = cmath.exp(2j * cmath.pi * float(p.constant))
    real, imag = round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0
    return f"{real:.12g}{imag:+.12g}j"


def _emit(args, text_lines: list[str], payload: dict, latex_lines: list[str] | None = None) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    elif args.format == "latex":
        print("\n".join(latex_lines if latex_lines is not None else ["\\begin{verbatim}", *text_lines, "\\end{verbatim}"]))
    else:
        print("\n".join(text_lines))


# -- commands ---------------------------------------------------------------------


def cmd_relations(args) -> int:
    obj = _resolve_algebra(args.algebra, args.matrix, _params(args.params))
    pres = _presentation(obj)
    relations = pres.exchange_relations(include_commutators=True, include_stars=args.with_stars)
    structural = args.structural
    if structural is None:
        structural = not isinstance(obj, MatrixQuantumGroup)
    text = []
    for r in relations:
        if args.approx and not r.is_commutator:
            text.append(f"{r.left.label} {r.right.label} = ({_phase_value(r.phase, True)}) {r.right.label} {r.left.label}")
        else:
            text.append(str(r))
    latex = ["\\begin{align*}"] + [f"&{r.latex()} \\\\" for r in relations]
    payload = {
        "algebra": pres.name,
        "parameters": list(pres.params),
        "relations": [
            dict(r.to_json(), text=str(r), **({"value": _phase_value(r.phase, True)} if args.approx else {}))
            for r in relations
        ],
    }
    if structural:
        text += [f"{label}: {rel} = 0" for label, rel in zip(pres.labels, pres.relations)]
        latex += [f"&{rel.latex()} = 0 \\\\" for rel in pres.relations]
        payload["structural"] = [
            {"label": label, "text": f"{rel} = 0", "element": rel.to_json()}
            for label, rel in zip(pres.labels, pres.relations)
        ]
    latex.append("\\end{align*}")
    _emit(args, text, payload, latex)
    return 0


def _generic_full(Q: MatrixQuantumGroup, spec: str) -> AlgebraContext:
    dim = 2 * Q.K.dim
    if spec.startswith("generic"):
        if spec not in ("generic", f"generic{dim}"):
            raise UsageError(f"{Q.name} needs a {dim}x{dim} matrix, not {spec}")
        theta = DeformationMatrix.symbolic(dim, "t")
    else:
        theta = parse_matrix(spec, dim)
    return AlgebraContext(theta, Q.context.generators, f"{Q.name} with theta-full")


def cmd_hopf_check(args) -> int:
    obj = _resolve_algebra(args.algebra, args.matrix, _params(args.params))
    if not isinstance(obj, MatrixQuantumGroup):
        if obj.family == "torus":
            obj = build_torus_group(obj.context.theta, obj.context.dim)
        else:
            raise UsageError(f"{args.algebra} is not a quantum group (use su:n or torus:n)")
    if args.theta_full:
        if obj.family != "su":
            raise UsageError("--theta-full applies to su:n")
        report, constraints = check_coproduct_homomorphism(_generic_full(obj, args.theta_full), obj.grid)
        text = report.lines() + ["  " + line for line in constraints.lines()]
        _emit(args, text, report.to_json())
        return report.status.exit_code
    report = hopf_report(obj, args.degree_bound)
    _emit(args, report.lines(), report.to_json())
    return report.status.exit_code


def cmd_act_check(args) -> int:
    spec = _resolve_spec(args.spec, _params(args.params))
    report = check_extension(spec, args.degree_bound, structural=args.structural)
    payload = {"spec": spec.name, **report.to_json()}
    text = [f"coaction {spec.name}"] + report.lines()
    status = Status.FAIL if report.status is ExtensionStatus.FAILS_IDENTICALLY else Status.PASS
    if args.structural:
        status = report.check_status
    if args.axioms and report.status is not ExtensionStatus.FAILS_IDENTICALLY:
        axioms = check_coaction_axioms(spec.substitute(report.solution))
        text += axioms.lines()
        payload["axioms"] = axioms.to_json()
        status = combine([status, axioms.status])
    if report.inconclusive:
        status = combine([status, Status.UNDECIDED])
    _emit(args, text, payload)
    return status.exit_code


def cmd_fixed_points(args) -> int:
    spec = _resolve_spec(args.spec, _params(args.params))
    result = fixed_points(spec, args.degree_bound)
    payload = result.to_json()
    text = result.lines()
    statuses = [Status.PASS if result.closed else Status.UNDECIDED]
    if result.constraints.status is ExtensionStatus.FAILS_IDENTICALLY:
        text.insert(0, "the coaction does not extend; no fixed points computed")
        statuses = [Status.FAIL]
    elif result.generators and not args.no_match and all(g.degree() == 1 for g in result.generators):
        match = match_presentation(result.generators, result.spec.A)
        payload["match"] = match.to_json()
        text += match.lines()
        statuses.append(match.status)
    _emit(args, text, payload)
    return combine(statuses).exit_code


def cmd_export(args) -> int:
    obj = _resolve_algebra(args.algebra, args.matrix, _params(args.params))
    pres = _presentation(obj)
    data = presentation_to_json(pres)
    if args.approx:
        values = {}
        for r in pres.exchange_relations(include_commutators=True):
            values[f"{r.left.label},{r.right.label}"] = _phase_value(r.phase, True)
        data["approximate_phases"] = values
    if args.format == "json":
        out = json.dumps(data, indent=2)
    elif args.format == "latex":
        lines = ["\\begin{align*}"]
        lines += [f"&{r.latex()} \\\\" for r in pres.exchange_relations()]
        lines += [f"&{rel.latex()} = 0 \\\\" for rel in pres.relations]
        lines.append("\\end{align*}")
        out = "\n".join(lines)
    else:
        out = "\n".join([f"{pres.name}: {len(pres.context.generators)} generators"] + pres.describe())
    if args.output:
        Path(args.output).write_text(out + "\n")
    else:
        print(out)
    return 0


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="thetadeform", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, algebra: bool = True):
        p.add_argument("--format", choices=("text", "json", "latex"), default="text")
        p.add_argument("--params", action="append", metavar="K=V", help="substitute parameters (rational or symbol)")
        if algebra:
            p.add_argument(
                "--matrix", "--K", "--lambda", dest="matrix", metavar="M",
                help='deformation matrix: "0", a scalar, "thetaprime" or "12=a, 13=b, ..."',
            )

    p = sub.add_parser("relations", help="exchange relations of a catalog algebra")
    p.add_argument("algebra", help="su:n, sphere:n, torus:n or a presentation JSON file")
    common(p)
    p.add_argument("--with-stars", action="store_true", help="include pairs with starred generators")
    p.add_argument("--structural", action="store_true", default=None, help="also print structural relations")
    p.add_argument("--no-structural", action="store_false", dest="structural")
    p.add_argument("--approx", action="store_true", help="print phases as floating-point numbers")
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("hopf-check", help="Hopf axioms, unitarity and Haar identities")
    p.add_argument("algebra", help="su:n or torus:n")
    common(p)
    p.add_argument("--degree-bound", type=int, default=None)
    p.add_argument("--theta-full", metavar="M", help='test the coproduct against a full matrix ("generic4" or entries)')
    p.set_defaults(func=cmd_hopf_check)

    specs = ", ".join(sorted(BUILTIN_SPECS)) + ", identity[:algebra]"
    p = sub.add_parser("act-check", help="when a coaction extends to a *-homomorphism")
    p.add_argument("spec", help=f"built-in spec ({specs}) or a spec JSON file")
    common(p, algebra=False)
    p.add_argument("--degree-bound", type=int, default=None)
    p.add_argument("--structural", action="store_true", help="check the defining relations of the algebra")
    p.add_argument("--axioms", action="store_true", help="check the coaction axioms after solving")
    p.set_defaults(func=cmd_act_check)

    p = sub.add_parser("fixed-points", help="invariant subalgebra up to a degree bound")
    p.add_argument("spec", help=f"built-in spec ({specs}) or a spec JSON file")
    common(p, algebra=False)
    p.add_argument("--degree-bound", type=int, default=2)
    p.add_argument("--no-match", action="store_true", help="skip matching the invariants to a sphere")
    p.set_defaults(func=cmd_fixed_points)

    p = sub.add_parser("export", help="write a presentation as JSON or LaTeX")
    p.add_argument("algebra", help="su:n, sphere:n, torus:n or a presentation JSON file")
    common(p)
    p.set_defaults(format="json")
    p.add_argument("--approx", action="store_true", help="add floating-point phase values")
    p.add_argument("-o", "--output", metavar="FILE")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "degree_bound", None) is not None and args.degree_bound < 1:
        parser.error("--degree-bound must be positive")
    try:
        return args.func(args)
    except (UsageError, ThetaDeformError, ValueError) as exc:
        print(f"thetadeform: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
