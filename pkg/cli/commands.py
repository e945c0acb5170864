"""
pqsaddle command line.

Usage:
  python pqsaddle.py quantities data/example5.sys --level 3
  python pqsaddle.py integral data/rev_example5.sys --degree 12
  python pqsaddle.py reversible data/rev_example5.sys
  python pqsaddle.py sibirsky data/example5.sys --level 3 --check-stable
  python pqsaddle.py implicitize data/example5.sys --check-against sibirsky --level 3
  python pqsaddle.py membership data/example5.sys "2*a21 - b21" --level 3
  python pqsaddle.py groebner data/twisted_cubic.txt --order degrevlex --eliminate t
  python pqsaddle.py oracle data/rev_example5.sys --degree 9

Results go to stdout; tagged progress lines go to stderr; --json PATH writes a RunReport.
Exit codes: 0 success, 1 negative mathematical verdict, 2 input error.
"""

from __future__ import annotations

# Settings first: loads .env before any module reads its PQSADDLE_* tunables.
from cli.settings import Settings, load_settings

import argparse
import sys
import time
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from cli.report import (
    RunReport,
    family_model,
    inputs_digest,
    polynomial_model,
    polynomial_models,
    write_report,
)
from cli.system_file import read_system_file
from groebner.buchberger import buchberger
from groebner.ideals import eliminate, ideal_equal, ideal_membership, implicitize, sort_generators
from integral.first_integral import METHODS, compute_first_integral, quantities_from_table
from integral.oracle import compare_with_recursion
from polyring.orders import MonomialOrder
from polyring.parser import infer_ring, parse_poly, parse_poly_list
from polyring.variables import VariableSet
from reversibility.criterion import is_time_reversible, symmetry_check
from reversibility.sibirsky import sibirsky_generators, sibirsky_stabilizes

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2

# (exit code, family or None, result dict, extra input texts)
Outcome = Tuple[int, Any, Dict[str, Any], List[str]]


def _log(command: str, msg: str) -> None:
    print(f"[pqsaddle:{command}] {msg}", file=sys.stderr)


def _out(line: str = "") -> None:
    print(line)


def _yes(flag: bool) -> str:
    return "true" if flag else "false"


def _level(args: Dict[str, Any], settings: Settings) -> int:
    return args.get("level") if args.get("level") is not None else settings.level


def _degree(args: Dict[str, Any], settings: Settings) -> int:
    return args.get("degree") if args.get("degree") is not None else settings.degree


def _workers(settings: Settings) -> Optional[int]:
    return settings.gb_workers or None


def cmd_quantities(args: Dict[str, Any], settings: Settings) -> Outcome:
    family, text = read_system_file(args["file"])
    K = _level(args, settings)
    if K < 1:
        raise ValueError("--level must be >= 1")
    p, q = family.p, family.q
    table = compute_first_integral(family, (K + 1) * (p + q), args.get("method"), settings.progress)
    quantities = quantities_from_table(table, K).g
    _log("quantities", f"family={family.describe()} K={K} method={table.method}")
    for k, gk in enumerate(quantities, start=1):
        _out(f"g_{k} = {gk.to_text()}")
    result = {"level": K, "method": table.method, "quantities": polynomial_models(quantities)}
    return EXIT_OK, family, result, [text]


def cmd_integral(args: Dict[str, Any], settings: Settings) -> Outcome:
    family, text = read_system_file(args["file"])
    D = _degree(args, settings)
    table = compute_first_integral(family, D, args.get("method"), settings.progress)
    _log("integral", f"family={family.describe()} D={D} method={table.method} stored={len(table.v)}")
    coeffs = []
    for k1, k2 in sorted(table.v, key=lambda ij: (ij[0] + ij[1], -ij[0])):
        c = table.v[(k1, k2)]
        _out(f"v({k1},{k2}) = {c.to_text()}")
        coeffs.append({"index": [k1, k2], "value": polynomial_model(c).model_dump()})
    gs = []
    for k in sorted(table.g):
        _out(f"g_{k} = {table.g[k].to_text()}")
        gs.append({"level": k, "value": polynomial_model(table.g[k]).model_dump()})
    result = {"degree": D, "method": table.method, "coefficients": coeffs, "quantities": gs}
    return EXIT_OK, family, result, [text]


def cmd_reversible(args: Dict[str, Any], settings: Settings) -> Outcome:
    family, text = read_system_file(args["file"])
    report = is_time_reversible(family)
    _out(f"reversible: {_yes(report.reversible)}")
    for v in report.violations:
        _out(f"  {v.describe()}")
    result: Dict[str, Any] = {
        "reversible": report.reversible,
        "violations": [v.describe() for v in report.violations],
    }
    if report.reversible and args.get("degree") is not None:
        sym = symmetry_check(compute_first_integral(family, args["degree"], progress=settings.progress))
        _out(f"symmetric: {_yes(sym.ok)} ({sym.checked} pairs)")
        for failure in sym.failures:
            _out(f"  {failure}")
        result["symmetry"] = {"ok": sym.ok, "checked": sym.checked, "failures": sym.failures}
        if not sym.ok:
            return EXIT_NEGATIVE, family, result, [text]
    return (EXIT_OK if report.reversible else EXIT_NEGATIVE), family, result, [text]


def cmd_sibirsky(args: Dict[str, Any], settings: Settings) -> Outcome:
    family, text = read_system_file(args["file"])
    K = _level(args, settings)
    gens = sibirsky_generators(family, K)
    _log("sibirsky", f"family={family.describe()} K={K} generators={len(gens)}")
    for g in gens.generators:
        _out(g.to_text())
    result: Dict[str, Any] = {
        "level": K,
        "generators": polynomial_models(gens.generators),
        "representatives": [list(e.nu) for e in gens.entries],
    }
    code = EXIT_OK
    if args.get("check_stable"):
        stable = sibirsky_stabilizes(family, K)
        _out(f"stable: {_yes(stable)}")
        result["stable"] = stable
        code = EXIT_OK if stable else EXIT_NEGATIVE
    return code, family, result, [text]


def cmd_implicitize(args: Dict[str, Any], settings: Settings) -> Outcome:
    family, text = read_system_file(args["file"])
    inner = MonomialOrder.parse(args.get("order") or settings.inner_order)
    param_order = args.get("param_order") or settings.param_order
    t0 = time.perf_counter()
    gens = implicitize(family, inner, param_order, _workers(settings))
    _log("implicitize", f"family={family.describe()} order={inner} generators={len(gens)} in {time.perf_counter() - t0:.2f}s")
    for g in gens:
        _out(g.to_text())
    result: Dict[str, Any] = {"order": str(inner), "param_order": param_order, "generators": polynomial_models(gens)}
    code = EXIT_OK
    if args.get("check_against") == "sibirsky":
        K = _level(args, settings)
        equal = ideal_equal(gens, sibirsky_generators(family, K).generators)
        _out(f"ideals equal: {_yes(equal)}")
        result["check_against"] = {"kind": "sibirsky", "level": K, "equal": equal}
        code = EXIT_OK if equal else EXIT_NEGATIVE
    return code, family, result, [text]


def cmd_membership(args: Dict[str, Any], settings: Settings) -> Outcome:
    family, text = read_system_file(args["file"])
    K = _level(args, settings)
    f = parse_poly(args["poly"], family.symbolic().ring)
    member = ideal_membership(f, sibirsky_generators(family, K).generators)
    _out(f"member: {_yes(member)}")
    result = {"level": K, "polynomial": polynomial_model(f).model_dump(), "member": member}
    return (EXIT_OK if member else EXIT_NEGATIVE), family, result, [text]


def _read_poly_file(path: str, elim: Sequence[str]):
    text = Path(path).read_text(encoding="utf-8")
    names: Optional[List[str]] = None
    body: List[str] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line.startswith("vars ") or line == "vars":
            names = line.split()[1:]
            continue
        body.append(line)
    ring = VariableSet(names) if names is not None else infer_ring("\n".join(body), list(elim))
    return parse_poly_list(body, ring), text


def cmd_groebner(args: Dict[str, Any], settings: Settings) -> Outcome:
    elim = [v.strip() for v in (args.get("eliminate") or "").split(",") if v.strip()]
    polys, text = _read_poly_file(args["file"], elim)
    order = MonomialOrder.parse(args.get("order") or "degrevlex")
    if elim:
        basis = sort_generators(eliminate(polys, elim, order, workers=_workers(settings)))
    else:
        basis = list(buchberger(polys, order, _workers(settings)).elements)
    _log("groebner", f"inputs={len(polys)} order={order} eliminate={elim or '-'} basis={len(basis)}")
    for g in basis:
        _out(g.to_text(order))
    result = {"order": str(order), "eliminate": elim, "basis": polynomial_models(basis)}
    return EXIT_OK, None, result, [text]


def cmd_oracle(args: Dict[str, Any], settings: Settings) -> Outcome:
    family, text = read_system_file(args["file"])
    D = _degree(args, settings)
    report = compare_with_recursion(family, D, args.get("method"))
    _out(f"oracle agrees: {_yes(report.ok)}")
    for m in report.mismatches:
        _out(f"  {m}")
    result = {"degree": D, "ok": report.ok, "mismatches": report.mismatches}
    return (EXIT_OK if report.ok else EXIT_NEGATIVE), family, result, [text]


COMMANDS: Dict[str, Callable[[Dict[str, Any], Settings], Outcome]] = {
    "quantities": cmd_quantities,
    "integral": cmd_integral,
    "reversible": cmd_reversible,
    "sibirsky": cmd_sibirsky,
    "implicitize": cmd_implicitize,
    "membership": cmd_membership,
    "groebner": cmd_groebner,
    "oracle": cmd_oracle,
}


def _parse_cli_args(argv: List[str]) -> Dict[str, Any]:
    ap = argparse.ArgumentParser(prog="pqsaddle", description="Exact computer algebra for p:-q resonant saddles")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, file_help: str = "System file (resonance/term lines)") -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("file", help=file_help)
        sp.add_argument("--json", default=None, help="Write a JSON RunReport to this path")
        return sp

    sp = add("quantities", "Saddle quantities g_1..g_K")
    sp.add_argument("--level", type=int, default=None, help="Number of quantities K (default PQSADDLE_LEVEL or 3)")
    sp.add_argument("--method", choices=METHODS, default=None, help="Recursion variant (default uv)")

    sp = add("integral", "First-integral coefficients up to total degree D")
    sp.add_argument("--degree", type=int, default=None, help="Truncation degree D (default PQSADDLE_DEGREE or 12)")
    sp.add_argument("--method", choices=METHODS, default=None, help="Recursion variant (default uv)")

    sp = add("reversible", "Time-reversibility check of a numeric system")
    sp.add_argument("--degree", type=int, default=None, help="Also check v(qt1,pt2) = v(qt2,pt1) up to degree D")

    sp = add("sibirsky", "Sibirsky binomial generators up to a level")
    sp.add_argument("--level", type=int, default=None, help="Monoid level bound K (default PQSADDLE_LEVEL or 3)")
    sp.add_argument("--check-stable", action="store_true", help="Check that levels K and K+1 give the same ideal")

    sp = add("implicitize", "Sibirsky ideal by elimination from the ideal H")
    sp.add_argument("--order", default=None, help="Inner elimination order: lex|deglex|degrevlex (default lex)")
    sp.add_argument("--param-order", choices=("canonical", "sorted"), default=None, help="Parameter block order (default canonical)")
    sp.add_argument("--check-against", choices=("sibirsky",), default=None, help="Compare with the binomial generators")
    sp.add_argument("--level", type=int, default=None, help="Level bound for --check-against sibirsky")

    sp = add("membership", "Membership of a polynomial in the Sibirsky ideal")
    sp.add_argument("poly", help="Polynomial in the family parameters, e.g. '2*a21 - b21'")
    sp.add_argument("--level", type=int, default=None, help="Monoid level bound K (default PQSADDLE_LEVEL or 3)")

    sp = add("groebner", "Reduced Groebner basis of a polynomial file", "Polynomial file ('vars' line optional, one polynomial per line)")
    sp.add_argument("--order", default=None, help="lex|deglex|degrevlex|block(k,outer,inner) (default degrevlex)")
    sp.add_argument("--eliminate", default=None, help="Comma-separated leading variables to eliminate")

    sp = add("oracle", "Compare the recursion with an independent sympy series solve")
    sp.add_argument("--degree", type=int, default=None, help="Truncation degree D (default PQSADDLE_DEGREE or 12)")
    sp.add_argument("--method", choices=METHODS, default=None, help="Recursion variant (default uv)")

    return vars(ap.parse_args(argv))


def run(args: Dict[str, Any], settings: Optional[Settings] = None) -> int:
    command = args["command"]
    t0 = time.perf_counter()
    try:
        settings = settings or load_settings()
        code, family, result, texts = COMMANDS[command](args, settings)
    except (ValueError, OSError) as e:
        _log(command, f"error: {e}")
        return EXIT_INPUT
    millis = int((time.perf_counter() - t0) * 1000)
    _log(command, f"exit={code} in {millis} ms")
    if args.get("json"):
        normalized = {k: v for k, v in args.items() if k not in ("json", "file")}
        report = RunReport(
            command=command,
            inputs_digest=inputs_digest(texts, normalized),
            family=family_model(family) if family is not None else None,
            result=result,
            millis=millis,
        )
        try:
            write_report(report, args["json"])
        except OSError as e:
            _log(command, f"error writing {args['json']}: {e}")
            return EXIT_INPUT
    return code


def main(argv: Optional[List[str]] = None) -> int:
    args = _parse_cli_args(sys.argv[1:] if argv is None else argv)
    return run(args)


if __name__ == "__main__":
    raise SystemExit(main())
