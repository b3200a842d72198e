"""Command-line front end.

Each subcommand loads one ring file, calls into the library and prints a
versioned report (canonical JSON by default). Exit codes: 0 success,
2 input error, 3 soundness window exhausted, 1 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__
from .dim1 import EXACT, dim1_bound, torsion_gap
from .errors import InputError, SocleProbeError
from .gorprobe import FAMILY_COLUMNS, family_xy, format_family_table, gorenstein_dim1, probe_ell
from .idealcalc import gamma_torsion, quotient_socle
from .limits import DEFAULT_WINDOW, limit_closure, power_quotient_system, verify_ps_consequence
from .localring import RingModel, RingSpec, load_ring, monomial_str, require_certified

SCHEMA_VERSION = "1"
SEED_ENV = "SOCLE_PROBE_SEED"
RING_FIELDS = ("char", "ideal", "vars")


def parse_ring_file(text: str) -> RingSpec:
    """Read a ring document: a JSON object with exactly ``vars``, ``char`` and ``ideal``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"ring file is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError("ring file must hold a JSON object")
    missing = [k for k in RING_FIELDS if k not in doc]
    extra = sorted(set(doc) - set(RING_FIELDS))
    if missing or extra:
        raise InputError(f"ring file fields: missing {missing}, unexpected {extra}")
    vars_, char, ideal = doc["vars"], doc["char"], doc["ideal"]
    if not isinstance(vars_, list) or not all(isinstance(v, str) for v in vars_):
        raise InputError("vars must be a list of names")
    if not vars_:
        raise InputError("vars must not be empty")
    if not isinstance(char, int) or isinstance(char, bool):
        raise InputError("char must be an integer")
    if not isinstance(ideal, list) or not all(isinstance(g, str) for g in ideal):
        raise InputError("ideal must be a list of monomial strings")
    return RingSpec.from_strings(vars_, ideal, char)


def format_ring_file(spec: RingSpec) -> str:
    doc = {"vars": list(spec.vars), "char": spec.char, "ideal": spec.ideal_strings()}
    return json.dumps(doc, sort_keys=True) + "\n"


def build_report(command: str, inputs: dict, results: dict, certification: dict, timing=None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "results": results,
        "certification": certification,
        "timing": timing,
    }


def _flatten(prefix: str, value, out: list):
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else k, value[k], out)
    elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, json.dumps(value) if not isinstance(value, str) else value))


def emit_report(report: dict, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    if fmt != "table":
        raise InputError(f"unknown format {fmt!r}")
    lines = [f"schema_version: {report['schema_version']}", f"command: {report['command']}"]
    rows = report.get("results", {}).get("rows")
    if report["command"] == "family-xy" and rows:
        lines.append(format_family_table([_Row(r) for r in rows], FAMILY_COLUMNS).rstrip("\n"))
        rest = {k: v for k, v in report["results"].items() if k != "rows"}
    else:
        rest = report.get("results", {})
    for section, body in (("results", rest), ("certification", report.get("certification", {})), ("inputs", report.get("inputs", {}))):
        flat: list = []
        _flatten("", body, flat)
        if flat:
            lines.append(f"[{section}]")
            width = max(len(k) for k, _ in flat)
            lines.extend(f"  {k.ljust(width)}  {v}" for k, v in flat)
    if report.get("error"):
        lines.append(f"error: {report['error']['type']}: {report['error']['message']}")
    return "\n".join(lines) + "\n"


class _Row:
    def __init__(self, d):
        self.__dict__.update(d)


def _split(text: str) -> list[str]:
    parts = [t.strip() for t in text.split(",")]
    if not all(parts):
        raise InputError(f"empty entry in generator list {text!r}")
    return parts


def _sop(ring: RingModel, text: str, truncation):
    from .localring import certify_sop

    sop = certify_sop(ring, [ring.element(t) for t in _split(text)], truncation)
    return require_certified(ring, sop)


def _strs(elements) -> list[str]:
    return [str(e) for e in elements]


# command handlers: (ring, args) -> (results, certification)


def cmd_dim(ring, args):
    cover = [ring.spec.vars[t] for t in ring.min_cover]
    return {"dim": ring.dim, "nvars": ring.n, "min_cover": cover}, {"dim": EXACT}


def cmd_hilbert(ring, args):
    if args.upto < 0:
        raise InputError("--upto must be nonnegative")
    N = max(args.upto + 1, ring.default_truncation(args.truncation))
    alg = ring.algebra(N)
    return {"hilbert": list(alg.hilbert()[: args.upto + 1]), "truncation": N}, {"hilbert": EXACT}


def cmd_invariants(ring, args):
    inv = dim1_bound(ring, seed=args.seed)
    results = {
        "c": inv.c,
        "c_witness": str(inv.c_witness),
        "g": inv.g,
        "n": inv.bound_n,
        "gamma_dim": inv.gamma_dim,
    }
    cert = {"c": inv.c_certainty, "g": EXACT, "n": EXACT if inv.c_certainty == EXACT else inv.c_certainty}
    return results, cert


def cmd_gamma(ring, args):
    dim, basis = gamma_torsion(ring)
    names = ring.spec.vars
    results = {
        "dim": dim,
        "basis": [monomial_str(u, names) for u in basis],
        "max_degree": max((sum(u) for u in basis), default=None),
    }
    if ring.dim == 1:
        results["torsion_gap"] = torsion_gap(ring)
    return results, {"dim": EXACT, "basis": EXACT}


def cmd_socle(ring, args):
    sop = _sop(ring, args.ideal, args.truncation)
    soc = quotient_socle(ring.algebra(max(ring.default_truncation(args.truncation), sop.artinian_degree + 2)), sop)
    results = {
        "ideal": _strs(sop.elements),
        "artinian_degree": sop.artinian_degree,
        "socle_dim": soc.dim,
        "basis": _strs(soc.basis),
        "socle_degrees": {str(d): n for d, n in sorted(soc.degrees.items())},
        "truncation": sop.truncation,
    }
    return results, {"socle_dim": EXACT, "artinian_degree": EXACT}


def cmd_irreducible(ring, args):
    sop = _sop(ring, args.ideal, args.truncation)
    soc = quotient_socle(ring.algebra(max(ring.default_truncation(args.truncation), sop.artinian_degree + 2)), sop)
    results = {"ideal": _strs(sop.elements), "irreducible": soc.dim == 1, "socle_dim": soc.dim}
    return results, {"irreducible": EXACT, "socle_dim": EXACT}


def cmd_gorenstein(ring, args):
    v = gorenstein_dim1(ring, seed=args.seed)
    results = {
        "gorenstein": v.gorenstein,
        "depth_ok": v.depth_ok,
        "type": v.type,
        "witness": str(v.witness) if v.witness is not None else None,
    }
    return results, {"gorenstein": EXACT, "depth_ok": EXACT, "type": EXACT}


def _system_results(rep):
    return {
        "sop": _strs(rep.sop.elements),
        "i_max": rep.i_max,
        "reference_stage": rep.reference_stage,
        "window": rep.window,
        "socle_dims": list(rep.socle_dims),
        "image_dims": list(rep.image_dims),
        "stable_socle_dim": rep.stable_socle_dim,
        "surjectivity_index": rep.surjectivity_index,
        "stage1_socle_kernel_dim": rep.stage_socle_kernel_dim(1),
        "truncation": rep.truncation,
    }


def _system_cert(rep):
    flag = "exact" if rep.certified else "empirical-window"
    return {"certification": rep.certification, "stable_socle_dim": flag, "surjectivity_index": flag}


def cmd_limit_socle(ring, args):
    sop = _sop(ring, args.sop, args.truncation)
    rep = power_quotient_system(ring, sop, args.imax, args.window)
    return _system_results(rep), _system_cert(rep)


def cmd_limit_closure(ring, args):
    sop = _sop(ring, args.sop, args.truncation)
    lc = limit_closure(ring, sop, args.nmax)
    results = {
        "sop": _strs(sop.elements),
        "n_max": lc.n_max,
        "horizon": lc.horizon,
        "chain_dims": list(lc.chain_dims),
        "stabilized": lc.stabilized,
        "quotient_dim": lc.quotient_dim,
        "quotient_basis": _strs(lc.basis()),
        "socle_dim": lc.socle_dim,
        "truncation": lc.truncation,
    }
    flag = "exact" if lc.certified else "empirical-window"
    return results, {"closure": flag, "stabilized": flag}


def cmd_ps_check(ring, args):
    sop = _sop(ring, args.sop, args.truncation)
    chk = verify_ps_consequence(ring, sop, args.s, args.imax, args.window)
    results = {
        "s": chk.s,
        "surjective_from_s": chk.surjective_from_s,
        "least_index": chk.least_index,
        "failing_stages": list(chk.failing_stages),
        "hypothesis": "asserted by caller, not verified",
        "system": _system_results(chk.report),
    }
    return results, _system_cert(chk.report)


def cmd_probe(ring, args):
    rep = probe_ell(ring, args.power, args.samples, args.seed)
    results = {
        "L": rep.L,
        "samples": rep.samples,
        "deterministic_tried": rep.deterministic_tried,
        "tested": rep.tested,
        "sop_failures": rep.sop_failures,
        "irreducible_found": [list(c) for c in rep.irreducible_found],
        "irreducible_count": len(rep.irreducible_found),
        "all_reducible": rep.all_reducible,
        "ell_lower_bound": rep.ell_lower_bound,
        "ell_upper_bound": rep.ell_upper_bound,
        "gorenstein": rep.gorenstein,
    }
    cert = {
        "all_reducible": "empirical" if rep.all_reducible else EXACT,
        "ell_lower_bound": EXACT if rep.ell_lower_bound is not None else None,
        "ell_upper_bound": EXACT if rep.ell_upper_bound is not None else None,
    }
    return results, cert


def cmd_family_xy(args):
    if args.a_min < 1 or args.a_max < args.a_min:
        raise InputError("need 1 <= --a-min <= --a-max")
    rows = family_xy(range(args.a_min, args.a_max + 1), p=args.char or 32003, samples=args.samples, seed=args.seed)
    out = []
    for r in rows:
        d = dict(r.__dict__)
        d["socle_basis"] = list(r.socle_basis)
        d["mismatches"] = {k: [got, exp] if not isinstance(got, tuple) else [list(got), list(exp)] for k, (got, exp) in r.mismatches().items()}
        out.append(d)
    results = {"rows": out, "all_match": not any(r["mismatches"] for r in out)}
    cert = {
        "c": sorted({r.c_certainty for r in rows}),
        "g": EXACT,
        "index": sorted({r.index_certification for r in rows}),
        "probe_all_reducible": "empirical",
    }
    return results, cert


COMMANDS = {
    "dim": cmd_dim,
    "hilbert": cmd_hilbert,
    "invariants": cmd_invariants,
    "gamma": cmd_gamma,
    "socle": cmd_socle,
    "irreducible": cmd_irreducible,
    "gorenstein": cmd_gorenstein,
    "limit-socle": cmd_limit_socle,
    "limit-closure": cmd_limit_closure,
    "ps-check": cmd_ps_check,
    "probe": cmd_probe,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--ring", help="ring file (JSON with vars, char, ideal)")
    common.add_argument("--char", type=int, help="override the ring file's characteristic")
    common.add_argument("--truncation", type=int, help="minimum truncation degree N")
    common.add_argument("--seed", type=int, help=f"random seed (default ${SEED_ENV} or 0)")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--timing", action="store_true", help="include wall-clock timing (breaks byte-identical output)")

    parser = _Parser(prog="socleprobe", description="Socle and Gorenstein computations for monomial quotient rings.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("dim", parents=[common], help="Krull dimension")
    sub.add_parser("hilbert", parents=[common], help="Hilbert function").add_argument("--upto", type=int, required=True)
    sub.add_parser("invariants", parents=[common], help="c, g and max{c,g}+1 (dimension 1)")
    sub.add_parser("gamma", parents=[common], help="m-torsion Gamma_m(R)")
    for name in ("socle", "irreducible"):
        sub.add_parser(name, parents=[common]).add_argument("--ideal", required=True, help="comma-separated generators")
    sub.add_parser("gorenstein", parents=[common], help="Gorenstein test (dimension 1)")
    p = sub.add_parser("limit-socle", parents=[common], help="socle images in the parameter-power direct system")
    p.add_argument("--sop", required=True)
    p.add_argument("--imax", type=int)
    p.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    p = sub.add_parser("limit-closure", parents=[common])
    p.add_argument("--sop", required=True)
    p.add_argument("--nmax", type=int)
    p = sub.add_parser("ps-check", parents=[common], help="socle surjectivity from stage s")
    p.add_argument("--sop", required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--imax", type=int)
    p.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    p = sub.add_parser("probe", parents=[common], help="search for irreducible parameter ideals in m^L")
    p.add_argument("--power", type=int, required=True)
    p.add_argument("--samples", type=int, default=50)
    p = sub.add_parser("family-xy", parents=[common], help="k[x,y]/(x^{a+1}, x y^a) for a range of a")
    p.add_argument("--a-min", type=int, default=1)
    p.add_argument("--a-max", type=int, default=4)
    p.add_argument("--samples", type=int, default=200)
    return parser


def _resolve_seed(seed):
    if seed is not None:
        return seed
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise InputError(f"{SEED_ENV} must be an integer, got {env!r}") from None


def _load(args) -> tuple[RingModel, dict]:
    if not args.ring:
        raise InputError("--ring is required for this command")
    try:
        with open(args.ring, encoding="utf-8") as fh:
            spec = parse_ring_file(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read ring file: {exc}") from None
    if args.char is not None:
        spec = RingSpec(spec.vars, args.char, spec.ideal_gens)
    return load_ring(spec), json.loads(format_ring_file(spec))


def run_command(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    fmt = "json"
    command = argv[0] if argv else None
    inputs: dict = {"argv": list(argv)}
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        command = args.command
        args.seed = _resolve_seed(args.seed)
        started = time.perf_counter()
        if command == "family-xy":
            results, cert = cmd_family_xy(args)
            N = None
        else:
            ring, ring_doc = _load(args)
            inputs["ring"] = ring_doc
            N = ring.default_truncation(args.truncation)
            results, cert = COMMANDS[command](ring, args)
        inputs.update({"seed": args.seed, "char": args.char or inputs.get("ring", {}).get("char", 32003)})
        inputs["truncation"] = results.get("truncation", N)
        timing = {"wall_ms": round((time.perf_counter() - started) * 1000)} if args.timing else None
        stdout.write(emit_report(build_report(command, inputs, results, cert, timing), fmt))
        return 0
    except SocleProbeError as exc:
        report = build_report(command or "", inputs, {}, {})
        report["error"] = {"type": type(exc).__name__, "message": str(exc), "exit_code": exc.exit_code}
        stderr.write(f"socleprobe: {exc}\n")
        stdout.write(emit_report(report, fmt))
        return exc.exit_code
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
