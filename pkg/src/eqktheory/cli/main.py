"""``eqk``: run verification checks from a preset or a YAML configuration.

Exit codes: 0 when every check passes, 1 when some check fails, 2 for
usage, configuration and budget errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from .._util import BudgetError
from ..algebra import GroupError, RingError, make_galois_gring
from ..galois import (GaloisError, assembly_map_k0, check_galois, galois_field_extension,
                      theta_matrix_iso)
from ..ktheory import K0Error, k0_gring, mackey_check
from ..rectify.models import ModelError
from . import checks
from .config import ConfigError, load_config, load_preset, preset_names

SKELETON_MAX_RANK = 2
EXPECTED_ERRORS = (ConfigError, BudgetError, GaloisError, K0Error, RingError, GroupError,
                   ModelError)


def _jsonable(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    raise TypeError(f"not JSON serializable: {type(x).__name__}")


def report(command, cfg, check_list, result=None, timing=False):
    out = {"command": command, "passed": all(c.verdict for c in check_list),
           "config": cfg.as_dict(), "checks": [c.as_dict(timing) for c in check_list]}
    if result is not None:
        out["result"] = result
    return out


def to_json(rep):
    return json.dumps(rep, indent=2, default=_jsonable)


# subcommands: each returns (checks, result)

def _field_override(args):
    given = [v is not None for v in (args.p, args.dtotal)]
    if any(given) and not all(given):
        raise ConfigError("--p and --dtotal go together", "<flags>")
    return all(given)


def cmd_h1(cfg, args):
    if _field_override(args):
        GR = make_galois_gring(args.p, args.dtotal, args.dsub)
    else:
        GR = cfg.gring()
    c = checks.h1_check(GR, args.n, cfg.elements)
    result = {"gring": GR.name, "n": args.n, "cocycle_count": c.counts["cocycle_count"],
              "class_count": c.counts["class_count"], "representatives": c.witnesses}
    return [c], result


def cmd_k0(cfg, args):
    GR = cfg.gring()
    t = time.perf_counter()
    T = k0_gring(GR, cfg.truncation, budget=cfg.elements)
    table = T.as_dict()
    rep = mackey_check(T)
    c = checks.Check("mackey", rep.passes,
                     {"checked": len(rep.checked), "skipped": len(rep.skipped)},
                     [repr(f) for f in rep.failures], seconds=time.perf_counter() - t)
    return [c], table


def _extension(cfg, args):
    if _field_override(args):
        return galois_field_extension(args.p, args.dtotal, args.dsub)
    return cfg.extension()


def cmd_galois(cfg, args):
    ext = _extension(cfg, args)
    t = time.perf_counter()
    r = check_galois(ext)
    out = [checks.Check("galois", r.is_galois,
                        {"tensor_size": r.tensor_size, "product_size": r.product_size},
                        [r.counterexample] if r.counterexample else [],
                        seconds=time.perf_counter() - t)]
    result = {"extension": ext.name, **r.as_dict()}
    if r.is_galois:
        t = time.perf_counter()
        th = theta_matrix_iso(ext, require_galois=False)
        counts = {"source": th.source_size, "target": th.target_size,
                  "bijective": th.bijective, "ring_map": th.ring_map}
        out.append(checks.Check("theta", th.bijective and th.ring_map, counts,
                                seconds=time.perf_counter() - t))
        result["theta"] = counts
    return out, result


def cmd_assembly(cfg, args):
    ext = _extension(cfg, args)
    t = time.perf_counter()
    rep = assembly_map_k0(ext, max(cfg.truncation, 1))
    c = checks.Check("assembly", bool(rep.pseudo_ok) and rep.total_dimension,
                     {"source": rep.source_labels, "target": rep.target_labels,
                      "matrix": rep.matrix.tolist()}, seconds=time.perf_counter() - t)
    return [c], rep.as_dict()


def cmd_strictify(cfg, args):
    t = time.perf_counter()
    ok, counts, bad = checks.strictify_suite(cfg.seed, args.count, cfg.objects)
    return [checks.Check("strictification", ok, counts, bad, seconds=time.perf_counter() - t)], None


def cmd_skeleton(cfg, args):
    N = min(cfg.truncation, SKELETON_MAX_RANK)
    c = checks.skeleton_check(cfg.gring(), N, cfg.objects)
    c.counts["max_rank"] = N
    return [c], None


def cmd_suite(cfg, args):
    return checks.run_suite(cfg), None


COMMANDS = {"h1": cmd_h1, "k0": cmd_k0, "galois-check": cmd_galois, "assembly": cmd_assembly,
            "strictify-test": cmd_strictify, "skeleton-test": cmd_skeleton, "suite": cmd_suite}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--preset", help="named configuration (default f4-c2)")
    src.add_argument("--config", help="path to a YAML configuration")
    common.add_argument("--max-rank", type=int, help="truncation rank N")
    common.add_argument("--seed", type=int, help="random seed")
    common.add_argument("--budget-objects", type=int, help="object budget for derived categories")
    common.add_argument("--json", action="store_true", help="emit the JSON report")
    common.add_argument("--timing", action="store_true", help="include wall times in the report")

    field = argparse.ArgumentParser(add_help=False)
    field.add_argument("--p", type=int, help="characteristic")
    field.add_argument("--dtotal", type=int, help="degree of the top field over F_p")
    field.add_argument("--dsub", type=int, default=1, help="degree of the fixed field over F_p")

    parser = argparse.ArgumentParser(prog="eqk", description=__doc__.splitlines()[0])
    parser.add_argument("--list-presets", action="store_true", help="print preset names and exit")
    sub = parser.add_subparsers(dest="command")
    h1 = sub.add_parser("h1", parents=[common, field], help="nonabelian H^1(G; GL_n(R))")
    h1.add_argument("--n", type=int, default=1, help="matrix size")
    sub.add_parser("k0", parents=[common], help="K_0 Mackey table")
    sub.add_parser("galois-check", parents=[common, field], help="Galois criterion and theta")
    sub.add_parser("assembly", parents=[common, field], help="assembly map at K_0")
    st = sub.add_parser("strictify-test", parents=[common], help="randomized strictification suite")
    st.add_argument("--count", type=int, default=100, help="number of random instances")
    sub.add_parser("skeleton-test", parents=[common], help="equivariant skeleta")
    sub.add_parser("suite", parents=[common], help="all acceptance checks")
    return parser


def load(args):
    if args.config:
        cfg = load_config(args.config)
    else:
        cfg = load_preset(args.preset or "f4-c2")
    return cfg.with_flags(args.max_rank, args.seed, args.budget_objects)


def text_report(rep):
    lines = [f"{rep['command']}: {'PASS' if rep['passed'] else 'FAIL'}  (config {rep['config']['name']})"]
    for c in rep["checks"]:
        t = f"  [{c['seconds']:.2f}s]" if "seconds" in c else ""
        lines.append(f"  {c['verdict'].upper():4}  {c['name']}{t}")
        for k, v in c["counts"].items():
            lines.append(f"        {k}: {json.dumps(v, default=_jsonable)}")
    if "result" in rep:
        lines.append("result:")
        lines.extend("  " + ln for ln in to_json(rep["result"]).splitlines())
    return "\n".join(lines)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.list_presets:
        print("\n".join(preset_names()))
        return 0
    if args.command is None:
        parser.print_usage(sys.stderr)
        print("eqk: error: a subcommand is required", file=sys.stderr)
        return 2
    try:
        cfg = load(args)
        if getattr(args, "n", 1) < 0 or getattr(args, "count", 1) < 1:
            raise ConfigError("--n must be >= 0 and --count >= 1", "<flags>")
        check_list, result = COMMANDS[args.command](cfg, args)
    except EXPECTED_ERRORS as e:
        print(f"eqk: error: {e}", file=sys.stderr)
        return 2
    rep = report(args.command, cfg, check_list, result, timing=args.timing)
    print(to_json(rep) if args.json else text_report(rep))
    return 0 if rep["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
