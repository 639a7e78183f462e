"""Command-line surface: tables, cone systems, audits, builds, verification.

Every artifact is a JSON document {"manifest": ..., "payload": ...} written
in canonical form; LaTeX output carries the manifest as a leading comment.
Reruns with identical inputs produce identical bytes.

Exit codes: 0 success, 1 verification failure (first counterexample
reported), 2 usage or malformed input, 3 search budget exhausted.  The
environment variable DIHEDRALCALC_BUDGET overrides enumeration budgets.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any

from .algebra import AlgebraContext
from .building import ChamberGraph, WeightedConfiguration, bar_step, \
    find_antipodal_tuple, graph_metrics, min_slope_scan, slope_at
from .cones import DominantWeight, a1_product_system, audit_to_json, \
    cone_equal, equality_to_json, gen_km, gen_sti, gen_wti, is_member, \
    redundancy_audit, system_to_json, system_to_latex, theta_system
from .errors import BudgetExceededError, DomainError, InvalidParameterError, \
    UnsupportedModeError, VerificationError
from .field import field_init
from .filtration import ConcaveWeighting, gr_table_json, limit_table_json, \
    subalgebra_table_json
from .manifest import canonical_bytes, make_manifest, wrap

BUDGET_ENV = "DIHEDRALCALC_BUDGET"

SYSTEM_CHOICES = ("wti", "sti", "km", "bk", "a1")


def _budget(default: int | None) -> int | None:
    value = os.environ.get(BUDGET_ENV)
    if value is None:
        return default
    try:
        return int(value)
    except ValueError:
        raise InvalidParameterError(
            f"{BUDGET_ENV} must be an integer, got {value!r}")


def system_from_spec(spec: str, n: int, m: int):
    """Resolve a system name (optionally theta:-twisted) to m slots."""
    name, twist = spec, False
    if name.startswith("theta:"):
        twist, name = True, name[len("theta:"):]
    if name == "wti":
        built = gen_wti(n, m)
    elif name == "sti":
        built = gen_sti(n, m, budget=_budget(64))
    elif name == "km" or name == "bk":
        if m < 2:
            raise InvalidParameterError(f"{name} systems need m >= 2")
        built = gen_km(n, m - 1, "at" if name == "km" else "gr-b")
    elif name == "a1":
        if n != 2:
            raise InvalidParameterError("the a1 product oracle fixes n = 2")
        built = a1_product_system(m)
    else:
        raise InvalidParameterError(
            f"unknown system {spec!r}; choose from "
            f"{', '.join(SYSTEM_CHOICES)} with optional theta: prefix")
    return theta_system(built) if twist else built


# -- input/output helpers --------------------------------------------------------

def _finite(value: Any) -> Any:
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    if isinstance(value, dict):
        return {k: _finite(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_finite(v) for v in value]
    return value


def _read_json(path: str) -> tuple[dict, str]:
    data = Path(path).read_bytes()
    return json.loads(data), hashlib.sha256(data).hexdigest()


def _parse_weights(doc: dict) -> list[DominantWeight]:
    try:
        raw = doc["weights"]
        return [DominantWeight(Fraction(str(a)), Fraction(str(b)))
                for a, b in raw]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidParameterError(f"malformed weights: {exc}")


def _write(dest: str | None, data: bytes) -> None:
    if dest is None:
        sys.stdout.write(data.decode("ascii"))
    else:
        Path(dest).write_bytes(data)


def _emit_json(args, command: str, parameters: dict, payload: Any, *,
               seed: int | None = None, field: dict | None = None,
               dest: str | None = None) -> None:
    document = wrap(command, parameters, payload, seed=seed, field=field)
    _write(dest if dest is not None else args.dest, canonical_bytes(document))


# -- subcommands -------------------------------------------------------------------

def _cmd_mult_table(args) -> int:
    descr = field_init(args.n)
    alg = AlgebraContext(descr)
    if args.algebra == "at":
        payload = alg.table_json()
    elif args.algebra == "gr":
        payload = gr_table_json(ConcaveWeighting.full(alg))
    elif args.algebra == "limit":
        payload = limit_table_json(ConcaveWeighting.full(alg))
    else:
        payload = subalgebra_table_json(alg, args.side)
    parameters = {"n": args.n, "algebra": args.algebra}
    if args.algebra == "bi":
        parameters["side"] = args.side
    _emit_json(args, "mult-table", parameters, payload, field=descr.to_json())
    return 0


def _cmd_cone(args) -> int:
    built = system_from_spec(args.system, args.n, args.m)
    parameters = {"system": args.system, "n": args.n, "m": args.m,
                  "format": args.out}
    payload = system_to_json(built)
    dest = args.dest
    if dest is None:
        stem = args.system.replace(":", "-")
        ext = "json" if args.out == "json" else "tex"
        dest = f"{stem}-n{args.n}-m{args.m}.{ext}"
    if args.out == "json":
        _emit_json(args, "cone", parameters, payload,
                   field=field_init(args.n).to_json(), dest=dest)
    else:
        manifest = make_manifest("cone", parameters, {"payload": payload},
                                 field=field_init(args.n).to_json())
        text = "% manifest: " \
            + canonical_bytes(manifest.to_json()).decode("ascii").strip() \
            + "\n" + system_to_latex(built) + "\n"
        _write(dest, text.encode("ascii"))
    print(dest, file=sys.stderr)
    return 0


def _cmd_member(args) -> int:
    built = system_from_spec(args.system, args.n, args.m)
    doc, sha = _read_json(args.point)
    weights = _parse_weights(doc)
    verdict = is_member(built, weights)
    payload: dict[str, Any] = {"member": verdict.member}
    if not verdict.member:
        payload["violated"] = verdict.violated.tag.to_json()
        payload["violated_key"] = list(verdict.violated.key)
        payload["value"] = verdict.value.to_json()
    parameters = {"system": args.system, "n": args.n, "m": args.m,
                  "point_sha256": sha}
    _emit_json(args, "member", parameters, payload,
               field=field_init(args.n).to_json())
    if args.dest is not None:
        print("member" if verdict.member else "not-member")
    return 0


def _cmd_audit(args) -> int:
    built = system_from_spec(args.system, args.n, args.m)
    report = redundancy_audit(built)
    payload = audit_to_json(built, report)
    parameters = {"system": args.system, "n": args.n, "m": args.m}
    _emit_json(args, "audit", parameters, payload,
               field=field_init(args.n).to_json())
    return 0


def _cmd_equal(args) -> int:
    sys_a = system_from_spec(args.a, args.n, args.m)
    sys_b = system_from_spec(args.b, args.n, args.m)
    cert = cone_equal(sys_a, sys_b, cache={})
    payload = equality_to_json(sys_a, sys_b, cert)
    parameters = {"a": args.a, "b": args.b, "n": args.n, "m": args.m}
    _emit_json(args, "equal", parameters, payload,
               field=field_init(args.n).to_json())
    if not cert.equal:
        entry = cert.counterexample
        print(f"cones differ: inequality {entry.inequality.key} of one "
              "system is not implied by the other", file=sys.stderr)
        return 1
    return 0


def _cmd_build(args) -> int:
    graph = ChamberGraph.apartment(args.n, seed=args.seed)
    tup = find_antipodal_tuple(graph, args.m, budget=_budget(None))
    graph = tup.graph
    stages = [_finite(graph_metrics(graph))]
    for _ in range(args.stages):
        graph = bar_step(graph, cap=args.cap).graph
        stages.append(_finite(graph_metrics(graph)))
    payload = {"n": args.n, "chambers": [list(c) for c in tup.chambers],
               "metrics": stages, "graph": graph.to_json()}
    parameters = {"n": args.n, "stages": args.stages, "m": args.m,
                  "cap": args.cap}
    _emit_json(args, "build", parameters, payload, seed=args.seed,
               field=field_init(args.n).to_json())
    return 0


def _load_graph(doc: dict) -> ChamberGraph:
    if "payload" in doc and isinstance(doc["payload"], dict):
        doc = doc["payload"]
    if "graph" in doc:
        doc = doc["graph"]
    return ChamberGraph.from_json(doc)


def _cmd_slope(args) -> int:
    graph_doc, graph_sha = _read_json(args.graph)
    graph = _load_graph(graph_doc)
    config_doc, config_sha = _read_json(args.config)
    try:
        chambers = [tuple(c) for c in config_doc["chambers"]]
    except (KeyError, TypeError) as exc:
        raise InvalidParameterError(f"malformed config: {exc}")
    weights = _parse_weights(config_doc)
    config = WeightedConfiguration(graph, chambers, weights)
    n = graph.n
    within = args.within if args.within is not None else n
    if args.eta is not None:
        payload: dict[str, Any] = {
            "eta": args.eta, "slope": slope_at(config, args.eta).to_json()}
    else:
        payload = {"within": within}
        for l in (1, 2):
            scan = min_slope_scan(config, l, within=within)
            payload[f"grassmannian_{l}"] = None if scan is None else {
                "vertex": scan.vertex, "value": scan.value.to_json()}
    parameters = {"graph_sha256": graph_sha, "config_sha256": config_sha,
                  "eta": args.eta, "within": within}
    _emit_json(args, "slope", parameters, payload,
               field=field_init(n).to_json())
    return 0


def _cmd_verify(args) -> int:
    from .acceptance import SUITES, run_all, run_suite

    if args.suite == "all":
        results = run_all()
    else:
        results = [run_suite(args.suite)]
    for result in results:
        print(result.line())
    failed = [r for r in results if not r.passed]
    payload = [r.to_json() for r in results]
    if args.dest is not None:
        _emit_json(args, "verify", {"suite": args.suite}, payload)
    if failed:
        print(f"{len(failed)} of {len(results)} suites failed",
              file=sys.stderr)
        return 1
    return 0


# -- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dihedralcalc",
        description="Exact dihedral intersection calculus: multiplication "
                    "tables, stability-cone systems, building constructions, "
                    "and verification suites.",
        epilog=f"Set {BUDGET_ENV} to override enumeration budgets.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, system: bool = False):
        if system:
            p.add_argument("--system", required=True,
                           help="wti|sti|km|bk|a1, optional theta: prefix")
        p.add_argument("--n", type=int, required=True,
                       help="dihedral parameter (angle pi/n)")
        p.add_argument("--m", type=int, required=True,
                       help="number of weight slots of the system")
        p.add_argument("--dest", help="output file (default: stdout)")

    p = sub.add_parser("mult-table", help="multiplication table export")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--algebra", required=True,
                   choices=("at", "gr", "limit", "bi"))
    p.add_argument("--side", type=int, default=1, choices=(1, 2),
                   help="one-sided basis for --algebra bi")
    p.add_argument("--dest", help="output file (default: stdout)")
    p.set_defaults(handler=_cmd_mult_table)

    p = sub.add_parser("cone", help="generate a deduplicated system file")
    common(p, system=True)
    p.add_argument("--out", choices=("json", "latex"), default="json",
                   help="output format")
    p.set_defaults(handler=_cmd_cone)

    p = sub.add_parser("member", help="membership test for a weight tuple")
    common(p, system=True)
    p.add_argument("--point", required=True,
                   help='JSON file {"weights": [[a, b], ...]}')
    p.set_defaults(handler=_cmd_member)

    p = sub.add_parser("audit", help="facet/redundancy certificates")
    common(p, system=True)
    p.set_defaults(handler=_cmd_audit)

    p = sub.add_parser("equal", help="mutual-implication cone equality")
    p.add_argument("--a", required=True, help="first system spec")
    p.add_argument("--b", required=True, help="second system spec")
    common(p)
    p.set_defaults(handler=_cmd_equal)

    p = sub.add_parser("build", help="grow a seeded chamber graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--stages", type=int, required=True,
                   help="number of growth rounds")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--m", type=int, default=3,
                   help="size of the antipodal chamber tuple")
    p.add_argument("--cap", type=int, default=64,
                   help="per-round join cap")
    p.add_argument("--dest", help="output file (default: stdout)")
    p.set_defaults(handler=_cmd_build)

    p = sub.add_parser("slope", help="slope scan of a weighted configuration")
    p.add_argument("--graph", required=True, help="graph JSON file")
    p.add_argument("--config", required=True,
                   help='JSON file {"chambers": ..., "weights": ...}')
    p.add_argument("--eta", type=int, help="evaluate at one vertex")
    p.add_argument("--within", type=int,
                   help="scan radius around the chambers (default n)")
    p.add_argument("--dest", help="output file (default: stdout)")
    p.set_defaults(handler=_cmd_slope)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite", help="suite name or 'all'")
    p.add_argument("--dest", help="also write a results artifact")
    p.set_defaults(handler=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except BudgetExceededError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 3
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except (InvalidParameterError, UnsupportedModeError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
