"""Command-line entry point.

Subcommands run the verification suites and print machine-readable
JSON (or human-readable tables with --pretty).  Exit codes: 0 when
every executed check passes, 1 when any check fails, 2 on usage
errors.  Report entries follow a fixed schema (versioned through the
"schema" field) so downstream tooling can rely on the shape.
"""

import argparse
import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

log = logging.getLogger("nshecke")

SCHEMA = 1

GRID_CHECKS = ("quadratic", "braid", "coproduct", "antipode", "theta",
               "hopf", "span", "irreps", "cellular", "gram", "u1")


# ---------------------------------------------------------------------------
# individual checks: each returns (status, witness, value)
# ---------------------------------------------------------------------------

def _run_check(check, m, k):
    from . import tensor
    if check == "quadratic":
        ok, witness = tensor.check_quadratic(m, k)
        return ("pass" if ok else "fail"), witness, None
    if check == "braid":
        ok, witness = tensor.check_braid(m, k)
        return ("pass" if ok else "fail"), witness, None
    if check == "coproduct":
        for k_l in range(1, k):
            ok, witness = tensor.check_coproduct_split(m, k, k_l, k - k_l)
            if not ok:
                witness = dict(witness or {}, k_l=k_l)
                return "fail", witness, None
        return "pass", None, {"splits": k - 1}
    if check == "antipode":
        ok, witness = tensor.check_antipode(m)
        return ("pass" if ok else "fail"), witness, None
    if check == "theta":
        ok, witness = tensor.check_theta_involutions(m, k)
        return ("pass" if ok else "fail"), witness, None
    if check == "hopf":
        ok, witness = tensor.check_h2_hopf(m)
        return ("pass" if ok else "fail"), witness, None
    if check == "span":
        from .reps import dimension_census
        rank, sat_len = tensor.span_dimension(m, k)
        census = dimension_census(m, k)
        status = "pass" if rank == census else "fail"
        return status, None, {"rank": rank, "census": census,
                              "saturation_length": sat_len}
    if check == "irreps":
        from .reps import irreducible_catalog
        reps = irreducible_catalog(m, k)   # asserts its own consistency
        return "pass", None, {"count": len(reps),
                              "labels": [r.label for r in reps]}
    if check == "cellular":
        from .cellular import build_cellular_basis, verify_cellularity
        basis = build_cellular_basis(m, k)
        ok, failures = verify_cellularity(basis)
        return ("pass" if ok else "fail"), (failures or None), \
            {"size": len(basis.keys)}
    if check == "gram":
        from .cellular import build_cellular_basis, gram_form
        basis = build_cellular_basis(m, k)
        ranks = {}
        for label in basis.poset.labels():
            g = gram_form(basis, label)   # asserts the closed form
            ranks[basis.poset.label_str(label)] = g.u1_rank()
        return "pass", None, {"u1_ranks": ranks}
    if check == "u1":
        from .cellular import u1_analysis
        rep = u1_analysis(m, k)
        status = "pass" if rep["ok"] else "fail"
        return status, (None if rep["ok"] else rep), _json_safe(rep)
    raise ValueError(f"unknown check {check!r}")


def _check_applicable(check, m, k):
    if check == "coproduct":
        return k >= 2
    if check == "u1" and m % 2 == 0:
        # the modified-basis analysis needs a sine-flavoured stratum
        return k >= 2
    return True


def _json_safe(obj):
    """Recursively coerce report payloads to JSON-encodable values."""
    if isinstance(obj, dict):
        return {str(key): _json_safe(v) for key, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    return repr(obj)


def _entry(check, m, k):
    t0 = time.monotonic()
    try:
        status, witness, value = _run_check(check, m, k)
    except Exception as exc:                      # noqa: BLE001
        log.debug("check %s (m=%s, k=%s) raised", check, m, k,
                  exc_info=True)
        status, witness, value = "fail", {"error": repr(exc)}, None
    out = {"schema": SCHEMA, "check": check, "m": m, "k": k,
           "status": status}
    if witness is not None:
        out["witness"] = _json_safe(witness)
    if value is not None:
        out["value"] = _json_safe(value)
    out["elapsed_ms"] = int((time.monotonic() - t0) * 1000)
    return out


def _run_grid(checks, ms, ks, jobs):
    grid = [(check, m, k) for check in checks for m in ms for k in ks
            if _check_applicable(check, m, k)]
    if jobs > 1 and len(grid) > 1:
        workers = min(jobs, os.cpu_count() or 1, len(grid))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_entry_star, grid))
    return [_entry(*item) for item in grid]


def _entry_star(item):
    return _entry(*item)


# ---------------------------------------------------------------------------
# output plumbing
# ---------------------------------------------------------------------------

def _emit(payload, args):
    if getattr(args, "pretty", False) and isinstance(payload, list) \
            and payload and all(isinstance(e, dict) and "check" in e
                                for e in payload):
        lines = [f"{'check':<12} {'m':>3} {'k':>3} {'status':<6} "
                 f"{'elapsed_ms':>10}"]
        for e in payload:
            lines.append(f"{e['check']:<12} {e['m']:>3} {e['k']:>3} "
                         f"{e['status']:<6} {e['elapsed_ms']:>10}")
        text = "\n".join(lines)
    elif getattr(args, "pretty", False):
        text = json.dumps(payload, indent=2, sort_keys=False)
    else:
        text = json.dumps(payload, sort_keys=False)
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _exit_code(entries):
    return 0 if all(e["status"] == "pass" for e in entries) else 1


def _parse_ints(text):
    return [int(v) for v in text.split(",") if v != ""]


def _parse_comp(text):
    """A signed composition '2,1' or '2,1^1' (sine-flavoured)."""
    from .compositions import SignedCompClass
    sup1 = False
    if text.endswith("^1"):
        sup1 = True
        text = text[:-2]
    vec = tuple(int(v) for v in text.split(","))
    return SignedCompClass(vec, superscript1=sup1)


def _require_mk(parser, ms, ks):
    for m in ms:
        if m < 3:
            parser.error(f"--m must be >= 3 (got {m})")
    for k in ks:
        if k < 1:
            parser.error(f"--k must be >= 1 (got {k})")


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_verify(parser, args):
    ms, ks = _parse_ints(args.m), _parse_ints(args.k)
    _require_mk(parser, ms, ks)
    if args.check == "coproduct" and any(k < 2 for k in ks):
        parser.error("coproduct needs --k >= 2")
    entries = _run_grid([args.check], ms, ks, args.jobs)
    _emit(entries, args)
    return _exit_code(entries)


def _cmd_report(parser, args):
    ms, ks = _parse_ints(args.m), _parse_ints(args.k)
    _require_mk(parser, ms, ks)
    if args.checks == "all":
        checks = list(GRID_CHECKS)
    else:
        checks = [c.strip() for c in args.checks.split(",")]
        for c in checks:
            if c not in GRID_CHECKS:
                parser.error(f"unknown check {c!r}")
    entries = _run_grid(checks, ms, ks, args.jobs)
    _emit(entries, args)
    return _exit_code(entries)


def _cmd_irreps(parser, args):
    from .reps import irreducible_catalog, TwoDimRep
    from .serialize import tower_to_json
    _require_mk(parser, [args.m_single], [args.k_single])
    out = []
    for rep in irreducible_catalog(args.m_single, args.k_single):
        if isinstance(rep, TwoDimRep):
            out.append({"type": "2dim", "label": rep.label,
                        "c": tower_to_json(rep.c)})
        else:
            out.append({"type": "1dim", "label": rep.label,
                        "values": [tower_to_json(v) for v in rep.values]})
    _emit(out, args)
    return 0


def _cmd_decompose(parser, args):
    from .reps import decompose_catalog, TwoDimRep
    from .serialize import tower_to_json
    _require_mk(parser, [args.m_single], [args.kl, args.kr])
    cls_l = _parse_comp(args.comp_l)
    cls_r = _parse_comp(args.comp_r)
    result, expected = decompose_catalog(args.m_single, args.kl, cls_l,
                                         args.kr, cls_r)
    summands = []
    for rep in result.summands:
        if isinstance(rep, TwoDimRep):
            summands.append({"type": "2dim", "label": rep.label,
                             "c": tower_to_json(rep.c)})
        else:
            summands.append({"type": "1dim", "label": rep.label,
                             "values": [tower_to_json(v)
                                        for v in rep.values]})
    payload = {
        "case": result.case,
        "summands": summands,
        "expected_classes": None if expected is None
        else [repr(c) for c in expected],
        "change_of_basis": [[tower_to_json(v) for v in row]
                            for row in result.change_of_basis],
    }
    _emit(payload, args)
    return 0


def _cmd_comps(parser, args):
    from .compositions import enumerate_classes, count_closed_form
    if args.n_vars < 1 or args.k_single < 0:
        parser.error("need --n >= 1 and --k >= 0")
    mode = "upto" if args.upto else "exact"
    classes = enumerate_classes(args.n_vars, args.k_single, mode)
    payload = {
        "n": args.n_vars, "k": args.k_single, "mode": mode,
        "classes": [list(c.canonical) for c in classes],
        "count": len(classes),
    }
    if mode == "exact":
        payload["closed_form"] = count_closed_form(args.n_vars,
                                                   args.k_single)
    _emit(payload, args)
    return 0


def _cmd_cheb(parser, args):
    from .chebyshev import (cheb_T, cheb_T1, cheb_multi,
                            verify_addition_identity)
    from .serialize import cheb_to_json
    if args.identity:
        if not (args.kl_comp and args.kr_comp):
            parser.error("--identity needs --kl and --kr")
        kl = tuple(_parse_ints(args.kl_comp))
        kr = tuple(_parse_ints(args.kr_comp))
        if len(kl) != len(kr):
            parser.error("--kl and --kr need the same number of parts")
        ok, witness = verify_addition_identity(kl, kr)
        payload = {"identity": "T/T1 addition", "kl": list(kl),
                   "kr": list(kr),
                   "status": "pass" if ok else "fail"}
        if witness is not None:
            payload["witness"] = _json_safe(witness)
        _emit(payload, args)
        return 0 if ok else 1
    if args.comp:
        vec = tuple(_parse_ints(args.comp))
        poly = cheb_multi(vec, args.kind)
    elif args.uni is not None:
        poly = cheb_T(args.uni) if args.kind == "T" else cheb_T1(args.uni)
    else:
        parser.error("need one of --comp, --uni, --identity")
    _emit(cheb_to_json(poly), args)
    return 0


def _cmd_cellular(parser, args):
    from .cellular import build_cellular_basis, poset_dot, \
        verify_cellularity
    _require_mk(parser, [args.m_single], [args.k_single])
    basis = build_cellular_basis(args.m_single, args.k_single,
                                 modified=args.modified)
    poset = basis.poset
    payload = {
        "m": args.m_single, "k": args.k_single,
        "modified": args.modified,
        "labels": [poset.label_str(lab) for lab in poset.labels()],
        "basis_size": len(basis.keys),
        "keys": [[poset.label_str(lab), s, t]
                 for (lab, s, t) in basis.keys],
    }
    code = 0
    if args.verify:
        ok, failures = verify_cellularity(basis)
        payload["status"] = "pass" if ok else "fail"
        if failures:
            payload["failures"] = _json_safe(failures)
        code = 0 if ok else 1
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(poset_dot(poset))
        payload["dot"] = args.dot
    _emit(payload, args)
    return code


def _cmd_gram(parser, args):
    from .cellular import build_cellular_basis, gram_form
    from .serialize import tower_to_json
    _require_mk(parser, [args.m_single], [args.k_single])
    basis = build_cellular_basis(args.m_single, args.k_single)
    label = None
    if args.stratum in ("eps+", "eps-", "eps1", "eps2"):
        if args.stratum not in basis.poset.labels():
            parser.error(f"label {args.stratum!r} not in the poset")
        label = args.stratum
    else:
        cls = _parse_comp(args.stratum)
        for lab in basis.poset.lambda2:
            if lab == cls:
                label = lab
                break
        if label is None:
            parser.error(f"stratum {args.stratum!r} not present "
                         f"at this (m, k)")
    g = gram_form(basis, label)
    payload = {
        "m": args.m_single, "k": args.k_single,
        "stratum": basis.poset.label_str(label),
        "matrix": [[tower_to_json(v) for v in row] for row in g.matrix],
        "u1_rank": g.u1_rank(),
    }
    _emit(payload, args)
    return 0


def _cmd_decomp_matrix(parser, args):
    from .cellular import u1_analysis
    _require_mk(parser, [args.m_single], [args.k_single])
    if args.at_u != 1:
        parser.error("only the u = 1 specialization is supported")
    if args.m_single % 2 == 0:
        parser.error("the decomposition matrix is computed for odd m; "
                     "even m has the modified-basis module analysis "
                     "(see `report --checks u1`)")
    rep = u1_analysis(args.m_single, args.k_single)
    payload = {
        "m": args.m_single, "k": args.k_single, "at_u": 1,
        "row_labels": rep["decomposition_rows"],
        "column_labels": rep["decomposition_cols"],
        "matrix": rep["decomposition"],
        "ranks": rep["ranks"],
        "status": "pass" if rep["ok"] else "fail",
    }
    _emit(payload, args)
    return 0 if rep["ok"] else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_common(sub, grid=False):
    sub.add_argument("--out", help="write output to this file")
    sub.add_argument("--pretty", action="store_true",
                     help="human-readable output")
    if grid:
        sub.add_argument("--m", required=True,
                         help="comma-separated list of m values (>= 3)")
        sub.add_argument("--k", required=True,
                         help="comma-separated list of k values (>= 1)")
        sub.add_argument("--jobs", type=int, default=1,
                         help="parallel worker processes")
    else:
        sub.add_argument("--m", dest="m_single", type=int, required=True,
                         help="dihedral parameter m (>= 3)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="nshecke",
        description="exact verification suite for nonstandard dihedral "
                    "Hecke algebras")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("verify", help="run one verification suite")
    sub.add_argument("check", choices=["quadratic", "braid", "coproduct",
                                       "antipode", "theta", "hopf",
                                       "span"])
    _add_common(sub, grid=True)
    sub.set_defaults(func=_cmd_verify)

    sub = subs.add_parser("report", help="run a batch of checks")
    _add_common(sub, grid=True)
    sub.add_argument("--checks", default="all",
                     help="'all' or a comma-separated subset of: "
                          + ",".join(GRID_CHECKS))
    sub.set_defaults(func=_cmd_report)

    sub = subs.add_parser("irreps",
                          help="list the irreducible representations")
    _add_common(sub)
    sub.add_argument("--k", dest="k_single", type=int, required=True)
    sub.set_defaults(func=_cmd_irreps)

    sub = subs.add_parser("decompose",
                          help="decompose a tensor product of "
                               "two-dimensional representations")
    _add_common(sub)
    sub.add_argument("--kl", type=int, required=True)
    sub.add_argument("--kr", type=int, required=True)
    sub.add_argument("--comp-l", dest="comp_l", required=True,
                     help="left signed composition, e.g. 1,0 or 2,1^1")
    sub.add_argument("--comp-r", dest="comp_r", required=True)
    sub.set_defaults(func=_cmd_decompose)

    sub = subs.add_parser("comps", help="enumerate composition classes")
    sub.add_argument("--n", dest="n_vars", type=int, required=True)
    sub.add_argument("--k", dest="k_single", type=int, required=True)
    sub.add_argument("--upto", action="store_true",
                     help="weights up to k instead of exactly k")
    sub.add_argument("--out")
    sub.add_argument("--pretty", action="store_true")
    sub.set_defaults(func=_cmd_comps)

    sub = subs.add_parser("cheb",
                          help="print Chebyshev polynomials and check "
                               "addition identities")
    sub.add_argument("--comp", help="multivariate index, e.g. 2,1")
    sub.add_argument("--uni", type=int, help="univariate index")
    sub.add_argument("--kind", choices=["T", "T1"], default="T")
    sub.add_argument("--identity", action="store_true",
                     help="check the addition identity for --kl/--kr")
    sub.add_argument("--kl", dest="kl_comp")
    sub.add_argument("--kr", dest="kr_comp")
    sub.add_argument("--out")
    sub.add_argument("--pretty", action="store_true")
    sub.set_defaults(func=_cmd_cheb)

    sub = subs.add_parser("cellular", help="build the cellular basis")
    _add_common(sub)
    sub.add_argument("--k", dest="k_single", type=int, required=True)
    sub.add_argument("--verify", action="store_true",
                     help="also check the cellular axioms")
    sub.add_argument("--modified", action="store_true",
                     help="use the modified (sigma-free diagonal) basis")
    sub.add_argument("--dot", help="write the poset diagram as DOT")
    sub.set_defaults(func=_cmd_cellular)

    sub = subs.add_parser("gram", help="Gram matrix of a cell module")
    _add_common(sub)
    sub.add_argument("--k", dest="k_single", type=int, required=True)
    sub.add_argument("--stratum", required=True,
                     help="composition class like 2,1 (optionally ^1) "
                          "or a character label like eps+")
    sub.set_defaults(func=_cmd_gram)

    sub = subs.add_parser("decomp-matrix",
                          help="decomposition matrix at u = 1")
    _add_common(sub)
    sub.add_argument("--k", dest="k_single", type=int, required=True)
    sub.add_argument("--at-u", dest="at_u", type=int, default=1)
    sub.set_defaults(func=_cmd_decomp_matrix)

    return parser


def main(argv=None):
    level = os.environ.get("NSHECKE_LOG", "error").lower()
    levels = {"error": logging.ERROR, "info": logging.INFO,
              "debug": logging.DEBUG}
    logging.basicConfig(level=levels.get(level, logging.ERROR),
                        format="%(levelname)s %(name)s: %(message)s")
    if level not in levels:
        log.error("NSHECKE_LOG must be one of %s", sorted(levels))
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(parser, args)


if __name__ == "__main__":
    sys.exit(main())
