"""``bjortho`` command line: JSON verdicts on stdout.

Exit codes: 0 decided (predicate true), 1 decided negative, 2 input error,
3 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import jsonio
from .bs_property import (
    bs_check_2d,
    build_counterexample,
    check_bs_instance,
    corollary_pn_bs,
    midpoint_pair,
)
from .errors import BJError, ConditionViolation, CounterexampleError, InputError, UnsupportedInstance
from .operators import (
    image_classes,
    mt_projective_components,
    norm_attainment_set,
    op_bj_oracle,
    op_is_bj_orthogonal,
    op_norm,
)
from .orthogonality import (
    bj_oracle,
    covers,
    has_property_pn,
    in_minus_set,
    in_plus_set,
    is_bj_orthogonal,
    min_covering_number,
    normal_cone_2d,
    ortho_set,
)
from .repro import SCENARIOS, resolve, run_scenario, select
from .space import validate

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class Run:
    """Collects inputs, certificates and verdicts for one RunReport."""

    def __init__(self, command: str):
        self.command = command
        self.inputs: dict = {}
        self.certificates: dict = {}
        self.verdicts: dict = {}
        self.code = EXIT_OK

    def record(self, name: str, ref: str, text: str | None = None):
        self.inputs[name] = {"ref": ref if len(ref) <= 200 else ref[:200] + "...", "sha256": jsonio.digest(text or ref)}

    def space(self, ref: str, name: str = "space"):
        S, text = jsonio.load_space(ref)
        self.record(name, ref, text)
        return S

    def operator(self, ref: str, name: str = "operator"):
        T, text = jsonio.load_operator(ref)
        self.record(name, ref, text)
        return T

    def vector(self, text: str, name: str):
        v = jsonio.parse_vector(json.loads(text) if text.lstrip().startswith("[") else text, f"--{name}")
        self.record(name, text)
        return v

    def family(self, text: str):
        self.record("family", text)
        if text.lstrip().startswith("["):
            return jsonio.parse_matrix(json.loads(text), "--family")
        return tuple(
            jsonio.parse_vector(part, f"--family[{i}]") for i, part in enumerate(text.split(";"))
        )


# ---------------------------------------------------------------------------
# handlers


def cmd_space_validate(run: Run, args):
    S = run.space(args.space)
    problems = validate(S)
    run.verdicts = {"valid": not problems, "violations": problems}
    run.code = EXIT_OK if not problems else EXIT_NEGATIVE


def cmd_space_facets(run: Run, args):
    S = run.space(args.space)
    run.certificates["space"] = jsonio.space_to_doc(S)
    run.verdicts = {"vertices": len(S.vertices), "facets": len(S.facets)}


def cmd_space_norm(run: Run, args):
    S = run.space(args.space)
    x = run.vector(args.x, "x")
    run.verdicts = {"norm": jsonio.rat_str(S.norm(x)), "squared": S.norm_is_squared}


def cmd_ortho_test(run: Run, args):
    S = run.space(args.space)
    x, y = run.vector(args.x, "x"), run.vector(args.y, "y")
    orth = is_bj_orthogonal(S, x, y)
    if bj_oracle(S, x, y) != orth:
        raise BJError("norming-face test and direct oracle disagree")
    run.certificates["one_sided"] = {"plus": in_plus_set(S, x, y), "minus": in_minus_set(S, x, y)}
    run.verdicts = {"orthogonal": orth}
    run.code = EXIT_OK if orth else EXIT_NEGATIVE


def cmd_ortho_set(run: Run, args):
    S = run.space(args.space)
    x = run.vector(args.x, "x")
    run.certificates["ortho_set"] = jsonio.certificate_doc(ortho_set(S, x))
    if S.dim == 2 and x in S.vertex_index:
        run.certificates["normal_cone"] = jsonio.certificate_doc(normal_cone_2d(S, x))
    run.verdicts = {"active_functionals": len(run.certificates["ortho_set"]["active_functionals"])}


def cmd_ortho_cover(run: Run, args):
    S = run.space(args.space)
    cert = covers(S, run.family(args.family))
    run.certificates["coverage"] = jsonio.certificate_doc(cert)
    run.verdicts = {"covered": cert.covered}
    run.code = EXIT_OK if cert.covered else EXIT_NEGATIVE


def cmd_ortho_pn(run: Run, args):
    S = run.space(args.space)
    cert = has_property_pn(S, args.n)
    run.certificates["pn"] = jsonio.certificate_doc(cert)
    run.verdicts = {"has_pn": cert.has_pn}
    if cert.covering_family is not None:
        run.verdicts["family"] = jsonio.to_jsonable(cert.covering_family)
    run.code = EXIT_OK if cert.has_pn else EXIT_NEGATIVE


def cmd_ortho_mincover(run: Run, args):
    S = run.space(args.space)
    m, fam = min_covering_number(S)
    run.verdicts = {"m": m, "family": jsonio.to_jsonable(fam)}


def cmd_op_norm(run: Run, args):
    T = run.operator(args.op)
    run.verdicts = {"op_norm": jsonio.rat_str(op_norm(T)), "squared": T.codomain.norm_is_squared}


def cmd_op_mt(run: Run, args):
    T = run.operator(args.op)
    M = norm_attainment_set(T)
    run.certificates["mt"] = jsonio.certificate_doc(M)
    run.verdicts = {
        "op_norm": jsonio.rat_str(M.op_norm),
        "maximal_cells": len(M.maximal_cells),
        "finite": M.is_finite,
        "constant_images": M.all_constant,
        "image_classes": [
            {"point": jsonio.to_jsonable(w), "multiplicity": k} for w, k in image_classes(T, M)
        ],
    }


def cmd_op_components(run: Run, args):
    T = run.operator(args.op)
    sphere, projective = mt_projective_components(T)
    run.verdicts = {"count_sphere": sphere, "count_projective": projective}


def cmd_op_ortho(run: Run, args):
    T, A = run.operator(args.op), run.operator(args.a, "a")
    orth = op_is_bj_orthogonal(T, A)
    if op_bj_oracle(T, A) != orth:
        raise BJError("active-pair test and direct oracle disagree")
    run.verdicts = {"orthogonal": orth}
    run.code = EXIT_OK if orth else EXIT_NEGATIVE


def cmd_op_witness(run: Run, args):
    T, A = run.operator(args.op), run.operator(args.a, "a")
    verdict = check_bs_instance(T, A)
    run.verdicts = {
        "t_orth_a": verdict.t_orth_a,
        "witness": jsonio.to_jsonable(verdict.witness),
        "conclusion": verdict.conclusion,
    }
    run.code = EXIT_OK if verdict.witness is not None else EXIT_NEGATIVE


def cmd_op_counterexample(run: Run, args):
    T = run.operator(args.op)
    spec, text = jsonio.load_spec(args.spec)
    run.record("spec", args.spec, text)
    con = build_counterexample(T, spec)
    run.certificates["construction"] = jsonio.certificate_doc(con)
    run.certificates["operator"] = jsonio.operator_to_doc(
        con.operator, jsonio.space_to_doc(T.domain), jsonio.space_to_doc(T.codomain)
    )
    run.verdicts = {"verified": all(con.checks.values()), "bs_property": False}


def cmd_op_bs2d(run: Run, args):
    T = run.operator(args.op)
    sphere, projective = mt_projective_components(T)
    ok = bs_check_2d(T)
    pair = midpoint_pair(T)
    run.certificates["components"] = {"count_sphere": sphere, "count_projective": projective}
    run.certificates["midpoint_pair"] = jsonio.to_jsonable(pair)
    run.verdicts = {"bs_property": ok}
    run.code = EXIT_OK if ok else EXIT_NEGATIVE


def cmd_op_corollary(run: Run, args):
    T = run.operator(args.op)
    spec, text = jsonio.load_spec(args.spec)
    run.record("spec", args.spec, text)
    res = corollary_pn_bs(T, args.m, spec)
    run.certificates["corollary"] = jsonio.certificate_doc(res)
    run.verdicts = {"status": res.status}
    if res.violates:
        run.verdicts["bs_property"] = False
        run.code = EXIT_OK
    else:
        run.code = EXIT_INCONCLUSIVE


def cmd_repro(run: Run, args):
    if args.scenario == "all":
        names = select(args.filter)
        if not names:
            raise InputError(f"no scenario matches filter {args.filter!r}")
    else:
        try:
            names = [resolve(args.scenario)]
        except KeyError:
            raise InputError(
                f"unknown scenario {args.scenario!r}; choose from {', '.join(SCENARIOS)} or all"
            ) from None
    run.record("scenario", args.scenario + (f" --filter {args.filter}" if args.filter else ""))
    results = [run_scenario(n) for n in names]
    table = []
    for r in results:
        table.append({"scenario": r.name, "passed": r.passed, "timing_ms": r.timing_ms})
        if r.error:
            table[-1]["error"] = r.error
    failed = [r.name for r in results if not r.passed]
    if len(results) == 1:
        r = results[0]
        run.certificates["checks"] = r.checks
        details = {k: v for k, v in r.details.items() if k not in ("traceback", "bs_property")}
        run.certificates["details"] = jsonio.to_jsonable(details)
        if r.error:
            run.certificates["traceback"] = r.details.get("traceback")
    run.certificates["table"] = table
    run.verdicts = {"passed": not failed, "failed": failed}
    if len(results) == 1 and "bs_property" in results[0].details:
        run.verdicts["bs_property"] = results[0].details["bs_property"]
    run.code = EXIT_OK if not failed else EXIT_NEGATIVE
    for row in table:
        mark = "PASS" if row["passed"] else "FAIL"
        print(f"{mark}  {row['scenario']:<22} {row['timing_ms']:>7} ms", file=sys.stderr)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bjortho", description="Exact orthogonality and norm-attainment checks; JSON verdicts on stdout.")
    p.add_argument("--approx", action="store_true", help="add decimal approximations of every rational")
    groups = p.add_subparsers(dest="group", required=True)

    def late_approx(q):
        # also accepted after the subcommand; SUPPRESS keeps the global value otherwise
        q.add_argument("--approx", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)

    def sub(group, name, handler, help_text):
        q = group.add_parser(name, help=help_text)
        q.set_defaults(handler=handler)
        late_approx(q)
        return q

    sp = groups.add_parser("space", help="inspect normed spaces").add_subparsers(dest="action", required=True)
    for name, handler, text in (
        ("validate", cmd_space_validate, "check every space invariant"),
        ("facets", cmd_space_facets, "print vertices and facet functionals"),
        ("norm", cmd_space_norm, "evaluate the norm (squared for Euclidean spaces)"),
    ):
        q = sub(sp, name, handler, text)
        q.add_argument("--space", required=True, help="builtin:NAME, inline JSON or a file")
        if name == "norm":
            q.add_argument("--x", required=True)

    op_ = groups.add_parser("ortho", help="point orthogonality").add_subparsers(dest="action", required=True)
    q = sub(op_, "test", cmd_ortho_test, "decide whether x is orthogonal to y")
    q.add_argument("--space", required=True)
    q.add_argument("--x", required=True)
    q.add_argument("--y", required=True)
    q = sub(op_, "set", cmd_ortho_set, "describe the orthogonality set of x")
    q.add_argument("--space", required=True)
    q.add_argument("--x", required=True)
    q = sub(op_, "cover", cmd_ortho_cover, "decide whether a family's orthogonality sets cover")
    q.add_argument("--space", required=True)
    q.add_argument("--family", required=True, help="'1,1,1;1,-1,1' or a JSON list of points")
    q = sub(op_, "pn", cmd_ortho_pn, "decide Property P_n")
    q.add_argument("--space", required=True)
    q.add_argument("--n", type=int, required=True)
    q = sub(op_, "mincover", cmd_ortho_mincover, "smallest covering family of vertex classes")
    q.add_argument("--space", required=True)

    ops = groups.add_parser("op", help="operators").add_subparsers(dest="action", required=True)
    for name, handler, text, extra in (
        ("norm", cmd_op_norm, "operator norm", ()),
        ("mt", cmd_op_mt, "norm attainment set", ()),
        ("components", cmd_op_components, "components of M_T (2-dimensional domain)", ()),
        ("ortho", cmd_op_ortho, "decide whether T is orthogonal to A", ("--a",)),
        ("witness", cmd_op_witness, "search M_T for a witness for the pair (T, A)", ("--a",)),
        ("counterexample", cmd_op_counterexample, "build and verify a counterexample operator", ("--spec",)),
        ("bs2d", cmd_op_bs2d, "BS property for a 2-dimensional domain", ()),
        ("corollary-pn", cmd_op_corollary, "constructive BS failure from Property P_m", ("--spec",)),
    ):
        q = sub(ops, name, handler, text)
        q.add_argument("--op", required=True, help="operator JSON document (inline or file)")
        for flag in extra:
            q.add_argument(flag, required=True)
        if name == "corollary-pn":
            q.add_argument("--m", type=int, required=True)

    q = groups.add_parser("repro", help="rebuild a worked example or covering result")
    q.add_argument("scenario", help=f"one of {', '.join(SCENARIOS)} or 'all'")
    q.add_argument("--filter", help="with 'all': run only scenarios whose name or tag matches")
    q.set_defaults(handler=cmd_repro)
    late_approx(q)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    command = args.group + (f" {args.action}" if getattr(args, "action", None) else "")
    run = Run(command)
    start = time.perf_counter()
    error = None
    try:
        args.handler(run, args)
    except InputError as exc:
        error, run.code = exc, EXIT_INPUT
    except (ConditionViolation, UnsupportedInstance, CounterexampleError) as exc:
        error, run.code = exc, EXIT_INCONCLUSIVE
    except BJError as exc:
        error, run.code = exc, EXIT_INCONCLUSIVE
    report = {
        "command": command,
        "inputs": run.inputs,
        "timing_ms": int((time.perf_counter() - start) * 1000),
    }
    if error is not None:
        report["error"] = {"type": type(error).__name__, "message": str(error)}
    if run.certificates:
        report["certificates"] = jsonio.to_jsonable(run.certificates)
    verdicts = jsonio.to_jsonable(run.verdicts)
    if args.approx:
        report["approx"] = jsonio.approximate(
            {"certificates": report.get("certificates", {}), "verdicts": verdicts}
        )
    report["verdicts"] = verdicts
    print(jsonio.dumps(report))
    return run.code


if __name__ == "__main__":
    sys.exit(main())
