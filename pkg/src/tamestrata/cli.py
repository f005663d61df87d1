"""Command-line surface and the JSON document wire format.

Documents are {"schema_version": ..., "kind": ..., "payload": ...} with a
deterministic field order.  Exact values only: rationals are [numerator,
denominator] pairs, residue-field elements are coefficient vectors over
F_p.  Pretty unicode rendering is opt-in via --human and never part of the
wire format.

Exit codes: 0 success, 2 verification failure, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import corpus, minimal, oracle, strata, tame, translate, verifysuite
from .errors import INPUT_ERRORS, TameStrataError, VerificationError
from .ffq import FqField

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_VERIFICATION = 2
EXIT_INPUT = 3


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _frac(x) -> list:
    x = Fraction(x)
    return [x.numerator, x.denominator]


def _unfrac(pair) -> Fraction:
    return Fraction(pair[0], pair[1])


def document(kind: str, payload) -> dict:
    return {"schema_version": SCHEMA_VERSION, "kind": kind, "payload": payload}


def emit_tower(tower: tame.Tower) -> dict:
    return document("tower", {
        "p": tower.base.p,
        "base_degree": tower.base.f,
        "base_modulus": list(tower.base.modulus),
        "e": tower.e,
        "f": tower.f,
        "residue_modulus": list(tower.k.modulus),
        "zeta": list(tower.zeta.coeffs),
        "levels": [sorted([[g.frob_power, list(g.twist.coeffs)] for g in H])
                   for H in tower.chain],
    })


def parse_tower(doc) -> tame.Tower:
    payload = _payload(doc, "tower")
    # omitted moduli fall back to the deterministic defaults
    base = FqField(payload["p"], payload["base_degree"],
                   payload.get("base_modulus"))
    residue = FqField(payload["p"], payload["base_degree"] * payload["f"],
                      payload.get("residue_modulus"))
    zeta = residue.elem(payload["zeta"])
    levels = tuple(
        frozenset(tame.GaloisElement(j, residue.elem(coeffs))
                  for j, coeffs in H)
        for H in payload["levels"])
    return tame.tower_make(tame.TowerSpec(base, payload["e"], payload["f"],
                                          residue, zeta, levels))


def emit_series(a: tame.TameSeries) -> dict:
    return {
        "level": a.level,
        "terms": [[_frac(Fraction(k, a.tower.e)), list(c.coeffs)]
                  for k, c in a.terms],
        "prec": None if a.prec_k is None else _frac(a.prec()),
    }


def parse_series(tower: tame.Tower, payload) -> tame.TameSeries:
    terms = [(_unfrac(exp), tower.k.elem(coeffs))
             for exp, coeffs in payload["terms"]]
    prec = None if payload.get("prec") is None else _unfrac(payload["prec"])
    return tower.series(payload.get("level", 0), terms, prec)


def emit_c_list(order, c_list) -> dict:
    return document("c_list", {
        "tower": emit_tower(order.tower)["payload"],
        "N": order.N,
        "blocks": [[lvl, emit_series(c)] for lvl, c in c_list],
    })


def emit_bk(bk: translate.BKDatumSkeleton) -> dict:
    order = bk.order
    payload = {
        "tower": emit_tower(order.tower)["payload"],
        "N": order.N,
        "kind": bk.kind,
        "notes": dict(bk.notes),
    }
    if bk.kind == "a":
        seq = bk.seq
        payload["blocks"] = [[e.level, emit_series(e.c)] for e in seq.entries]
        payload["n"] = seq.n
        payload["r"] = [e.r for e in seq.entries]
        payload["case"] = seq.case
        payload["theta_factors"] = [
            {"level": cf.level, "c": emit_series(cf.c), "depth": _frac(cf.depth),
             "det_domain": [[l, m] for l, m, _ in cf.det_domain],
             "psi_domain": [[l, m] for l, m, _ in cf.psi_domain]}
            for cf in bk.theta_factors]
    return document("bk_datum", payload)


def parse_bk(doc) -> translate.BKDatumSkeleton:
    payload = _payload(doc, "bk_datum")
    tower = parse_tower(document("tower", payload["tower"]))
    order = strata.make_order(tower, payload["N"])
    if payload.get("kind", "a") == "b":
        return translate.make_bk_datum_b(order)
    c_list = [(lvl, parse_series(tower, ser)) for lvl, ser in payload["blocks"]]
    return translate.make_bk_datum(order, c_list)


def emit_yu(yu: translate.YuDatumSkeleton) -> dict:
    order = yu.point
    return document("yu_datum", {
        "tower": emit_tower(order.tower)["payload"],
        "N": order.N,
        "dims": list(yu.dims),
        "depths": [_frac(r) for r in yu.depths],
        "case": yu.case,
        "characters": [
            [lvl, None if c is None else emit_series(c), _frac(r)]
            for lvl, c, r in yu.characters],
        "rho_slot": yu.rho_slot,
    })


def parse_yu(doc) -> translate.YuDatumSkeleton:
    payload = _payload(doc, "yu_datum")
    tower = parse_tower(document("tower", payload["tower"]))
    order = strata.make_order(tower, payload["N"])
    characters = tuple(
        (lvl, None if ser is None else parse_series(tower, ser), _unfrac(r))
        for lvl, ser, r in payload["characters"])
    return translate.YuDatumSkeleton(
        order, tuple(payload["dims"]),
        tuple(_unfrac(r) for r in payload["depths"]),
        characters, payload["case"])


def emit_table(table: translate.FiltrationTable) -> dict:
    return {"name": table.name,
            "factors": [[l, m, lab] for l, m, lab in table.factors]}


def _payload(doc, kind):
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {doc.get('schema_version')}")
    if doc.get("kind") != kind:
        raise ValueError(f"expected a {kind} document, got {doc.get('kind')}")
    return doc["payload"]


# ---------------------------------------------------------------------------
# human rendering
# ---------------------------------------------------------------------------

def _human_series(tower, payload) -> str:
    bits = []
    for exp, coeffs in payload["terms"]:
        e = _unfrac(exp)
        coeff = "+".join(f"{c}w^{i}" if i else str(c)
                         for i, c in enumerate(coeffs) if c) or "0"
        bits.append(f"({coeff})*s^{e}")
    out = " + ".join(bits) if bits else "0"
    if payload.get("prec") is not None:
        out += f" + O(s^{_unfrac(payload['prec'])})"
    return out


def _render_human(doc) -> str:
    lines = [f"kind: {doc['kind']}"]

    def walk(obj, indent=0):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k, v in obj.items():
                if k == "tower":
                    lines.append(f"{pad}tower: p={v['p']} e={v['e']} f={v['f']}")
                elif isinstance(v, (dict, list)) and k != "terms":
                    lines.append(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {v}")
        elif isinstance(obj, list):
            for v in obj:
                if isinstance(v, (dict, list)):
                    walk(v, indent)
                else:
                    lines.append(f"{pad}- {v}")
    walk(doc["payload"])
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# command implementations
# ---------------------------------------------------------------------------

def _load_tower(args) -> tame.Tower:
    name = args.tower
    if name in ("desk5", "desk3", "desk2", "desk2b", "deep5"):
        tower = corpus.named_tower(name)
    else:
        with open(name) as fh:
            tower = parse_tower(json.load(fh))
    prec = _apply_prec(args)
    if prec is not None:
        tower.default_prec_k = int(prec * tower.e)
    return tower


def _load_element(tower, text) -> tame.TameSeries:
    data = json.loads(text)
    if isinstance(data, dict):
        return parse_series(tower, data)
    return parse_series(tower, {"level": 0, "terms": data, "prec": None})


def _apply_prec(args):
    prec = getattr(args, "prec", None)
    if prec is None:
        prec = os.environ.get("TAMESTRATA_PREC")
    return None if prec is None else Fraction(prec)


def cmd_check_minimal(args):
    tower = _load_tower(args)
    c = _load_element(tower, args.element)
    report = minimal.is_minimal(c, args.upper, args.lower)
    return EXIT_OK, document("report", {
        "operation": "check-minimal",
        "upper": args.upper, "lower": args.lower,
        "element": emit_series(c),
        "minimal": report.minimal,
        "cond_generates": report.cond_generates,
        "cond_gcd": report.cond_gcd,
        "cond_residue": report.cond_residue,
        "via_sr": report.via_sr,
        "via_galois": report.via_galois,
        "depth": _frac(report.depth),
        "consistent": report.consistent,
    })


def cmd_ge1(args):
    tower = _load_tower(args)
    c = _load_element(tower, args.element)
    report = minimal.ge1_check(c, args.upper, args.lower)
    return EXIT_OK, document("report", {
        "operation": "ge1",
        "passed": report.passed,
        "depth": _frac(report.depth),
        "pairs": [
            [[g.frob_power, list(g.twist.coeffs)],
             [h.frob_power, list(h.twist.coeffs)],
             None if o is None else _frac(o)]
            for g, h, o in report.pairs],
    })


def cmd_sr(args):
    tower = _load_tower(args)
    c = _load_element(tower, args.element)
    mono = tame.sr_standard_rep(c)
    payload = emit_series(mono.to_series(tower))
    payload["coeff"] = list(mono.coeff.coeffs)
    payload["exponent"] = _frac(mono.exponent)
    return EXIT_OK, document("element", payload)


def cmd_decompose(args):
    tower = _load_tower(args)
    order = strata.make_order(tower, args.N)
    beta = _load_element(tower, args.element)
    c_list = strata.decompose_split_form(order, beta)
    return EXIT_OK, emit_c_list(order, c_list)


def cmd_defseq(args):
    tower = _load_tower(args)
    order = strata.make_order(tower, args.N)
    beta = _load_element(tower, args.element)
    c_list = strata.decompose_split_form(order, beta)
    bk = translate.make_bk_datum(order, c_list)
    return EXIT_OK, emit_bk(bk)


def cmd_bk2yu(args):
    with open(args.datum) as fh:
        bk = parse_bk(json.load(fh))
    return EXIT_OK, emit_yu(translate.bk_to_yu(bk))


def cmd_yu2bk(args):
    with open(args.datum) as fh:
        yu = parse_yu(json.load(fh))
    return EXIT_OK, emit_bk(translate.yu_to_bk(yu))


def cmd_tables(args):
    with open(args.datum) as fh:
        doc = json.load(fh)
    if doc.get("kind") == "bk_datum":
        bk = parse_bk(doc)
        yu = translate.bk_to_yu(bk)
    else:
        yu = parse_yu(doc)
        bk = translate.yu_to_bk(yu)
    model = None
    if args.oracle in ("on", "check") and bk.order.N <= 8 and bk.kind == "a":
        model = oracle.model_build(bk.order)
    payload = {"bk": {}, "yu": {}, "comparisons": {}}
    if bk.kind == "a":
        tabs = translate.h_group_table(bk.seq)
        ytabs = translate.yu_group_table(yu)
        payload["bk"] = {k: emit_table(t) for k, t in tabs.items()}
        payload["yu"] = {k: emit_table(t) for k, t in ytabs.items()}
        use = model if args.oracle == "check" else None
        payload["comparisons"] = {
            "H1=Kd+": translate.table_compare(tabs["H1"], ytabs["Kd+"], use),
            "J0=oKd": translate.table_compare(tabs["J0"], ytabs["oKd"], use),
        }
    code = EXIT_OK if all(payload["comparisons"].values()) else EXIT_VERIFICATION
    return code, document("table", payload)


def cmd_ledger(args):
    with open(args.datum) as fh:
        doc = json.load(fh)
    if doc.get("kind") == "bk_datum":
        bk = parse_bk(doc)
        yu = translate.bk_to_yu(bk)
    else:
        yu = parse_yu(doc)
        bk = translate.yu_to_bk(yu)
    model = None
    if args.oracle in ("on", "check") and bk.order.N <= 8:
        model = oracle.model_build(bk.order)
    entries, verdicts = translate.ledger_indices(bk, yu, model)
    ok = all(v for v in verdicts.values() if v is not None)
    return (EXIT_OK if ok else EXIT_VERIFICATION), document("ledger", {
        "indices": [{"name": e.name, "log_p": e.value,
                     "provenance": e.provenance} for e in entries],
        "verdicts": verdicts,
    })


def cmd_verify(args):
    if args.corpus:
        results = _verify_user_corpus(args.corpus, args.oracle)
    else:
        names = None if args.suite == "all" else args.suite.split(",")
        results = verifysuite.run_suites(names, oracle_mode=args.oracle)
    ok = all(passed for _, passed, _ in results)
    payload = {"suites": [{"name": n, "passed": p, "detail": d}
                          for n, p, d in results]}
    for n, p, d in results:
        print(f"{'PASS' if p else 'FAIL'} {n}: {d}", file=sys.stderr)
    return (EXIT_OK if ok else EXIT_VERIFICATION), document("report", payload)


def _verify_user_corpus(path, oracle_mode):
    """Datum-level checks over a user-supplied list of datum documents."""
    with open(path) as fh:
        docs = json.load(fh)
    results = []
    for idx, doc in enumerate(docs):
        if doc.get("kind") == "bk_datum":
            bk = parse_bk(doc)
            yu = translate.bk_to_yu(bk)
        else:
            yu = parse_yu(doc)
            bk = translate.yu_to_bk(yu)
        name = f"corpus[{idx}]"
        ok = translate.skeletons_agree(bk, translate.yu_to_bk(yu)) and \
            translate.skeletons_agree(yu, translate.bk_to_yu(bk))
        detail = "round trip"
        if bk.kind == "a":
            model = None
            if oracle_mode != "off" and bk.order.N <= 8:
                model = oracle.model_build(bk.order)
            tabs = translate.h_group_table(bk.seq)
            ytabs = translate.yu_group_table(yu)
            use = model if oracle_mode == "check" else None
            ok = ok and translate.table_compare(tabs["H1"], ytabs["Kd+"], use)
            ok = ok and translate.table_compare(tabs["J0"], ytabs["oKd"], use)
            detail += ", tables"
            if model is not None:
                _, verdicts = translate.ledger_indices(bk, yu, model)
                ok = ok and all(v for v in verdicts.values() if v is not None)
                detail += ", ledger"
        results.append((name, ok, detail))
    return results


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _build_parser():
    parser = argparse.ArgumentParser(
        prog="tamestrata",
        description="exact arithmetic for tame towers of local fields")
    parser.add_argument("--human", action="store_true",
                        help="pretty-print instead of emitting JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        return p

    def tower_opts(p, element=True):
        p.add_argument("--tower", required=True,
                       help="tower file or builtin name (desk5/desk3/desk2/deep5)")
        p.add_argument("--prec", default=None, help="precision override")
        if element:
            p.add_argument("--element", required=True,
                           help="JSON term list [[[kn,kd],[coeffs]],...]")

    p = add("check-minimal", cmd_check_minimal, help="minimality report")
    tower_opts(p)
    p.add_argument("--upper", type=int, required=True)
    p.add_argument("--lower", type=int, required=True)

    p = add("ge1", cmd_ge1, help="genericity condition on embedding pairs")
    tower_opts(p)
    p.add_argument("--upper", type=int, required=True)
    p.add_argument("--lower", type=int, required=True)

    p = add("sr", cmd_sr, help="standard representative monomial")
    tower_opts(p)

    p = add("decompose", cmd_decompose, help="split into minimal blocks")
    tower_opts(p)
    p.add_argument("--N", type=int, required=True, help="dim_F V")

    p = add("defseq", cmd_defseq, help="build and verify a defining sequence")
    tower_opts(p)
    p.add_argument("--N", type=int, required=True)

    p = add("bk2yu", cmd_bk2yu, help="translate a BK skeleton")
    p.add_argument("--datum", required=True)

    p = add("yu2bk", cmd_yu2bk, help="translate a Yu skeleton")
    p.add_argument("--datum", required=True)

    p = add("tables", cmd_tables, help="filtration group tables")
    p.add_argument("--datum", required=True)
    p.add_argument("--oracle", choices=["on", "off", "check"], default="off")

    p = add("ledger", cmd_ledger, help="index ledger")
    p.add_argument("--datum", required=True)
    p.add_argument("--oracle", choices=["on", "off", "check"], default="on")

    p = add("verify", cmd_verify, help="run the property suites")
    p.add_argument("--suite", default="all",
                   help="comma-separated suite names or 'all'")
    p.add_argument("--oracle", choices=["on", "off", "check"], default="check")
    p.add_argument("--corpus", default=None,
                   help="JSON list of datum documents to check instead of "
                        "the built-in corpus")
    return parser


def run(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except VerificationError as exc:
        return EXIT_VERIFICATION, document("error", {
            "error": type(exc).__name__, "message": str(exc)})
    except INPUT_ERRORS as exc:
        return EXIT_INPUT, document("error", {
            "error": type(exc).__name__, "message": str(exc)})
    except (OSError, json.JSONDecodeError, KeyError, ValueError, TypeError) as exc:
        return EXIT_INPUT, document("error", {
            "error": type(exc).__name__, "message": str(exc)})
    except TameStrataError as exc:
        return EXIT_INPUT, document("error", {
            "error": type(exc).__name__, "message": str(exc)})


def main(argv=None) -> int:
    args_list = list(sys.argv[1:] if argv is None else argv)
    code, doc = run(args_list)
    if "--human" in args_list:
        print(_render_human(doc))
    else:
        print(json.dumps(doc, sort_keys=True, separators=(",", ":")))
    return code


if __name__ == "__main__":
    sys.exit(main())
