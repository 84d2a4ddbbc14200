"""Batch front end.

    forcelab compute --rule z --stat th --omega 1/1 --input graphs.g6
    forcelab enumerate-family --rule zplus --kind product --k 2
    forcelab verify --theorem product-sum-z --max-order 7 --workers 4
    forcelab check-axioms --rule zplus --axiom local --max-order 4

Every unit of work produces one JSON line.  Output order is the input order
(or census order) regardless of ``--workers``.  Exit status is 0 on success,
1 if a verification found a counterexample, 2 on malformed input or usage
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import verify as V
from .axioms import AXIOMS, declared_axioms, falsify_axiom, replay_witness
from .forbidden import (FamilyError, enumerate_product_family, enumerate_weighted_family,
                        minimalize)
from .graph import (MAX_INTERNAL_ORDER, Graph6Error, census, parse_graph6, to_graph6)
from .propagation import INF
from .rules import RuleError, bootstrap, k_forcing, parse_rule
from .throttling import (forcing_number, pt_at_size, size_at_pt_certificate,
                         throttle_product, throttle_weighted)

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_BAD_INPUT = 0, 1, 2

STATS = ("th", "weighted", "product", "forcing", "pt-at-size", "size-at-pt")
THEOREMS = ("product-sum-z", "psd-product-part1", "savings-lemma", "witness-lemma",
            "induced-path-chains", "max-chain", "synchronous-optimality", "axiom-flags",
            "product-proof-claims")

# rules each theorem is stated for, used when --rule is not given
THEOREM_RULES = {
    "synchronous-optimality": ("z", "zplus", "skew", "kforce:2", "boot:2"),
    "induced-path-chains": ("z", "skew", "kforce:1"),
    "max-chain": ("boot:1", "boot:2", "boot:3"),
    "witness-lemma": ("z", "zplus"),
    "axiom-flags": ("z", "zplus", "skew", "hop", "kforce:1", "kforce:2", "kforce:3",
                    "boot:1", "boot:2", "boot:3"),
}


class UsageError(Exception):
    pass


def parse_omega(text: str) -> Fraction:
    """Nonnegative rational written as p/q (or an integer)."""
    try:
        num, _, den = text.partition("/")
        w = Fraction(int(num), int(den) if den else 1)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"omega must be a rational p/q, got {text!r}") from None
    if w < 0:
        raise argparse.ArgumentTypeError("omega must be nonnegative")
    return w


def _rule_from_args(args, selector=None):
    sel = selector or args.rule
    if sel is None:
        raise UsageError("--rule is required")
    if sel in ("boot", "kforce"):
        par = args.r if sel == "boot" else args.k
        if par is None:
            raise UsageError(f"rule {sel!r} needs --{'r' if sel == 'boot' else 'k'} or {sel}:<n>")
        return bootstrap(par) if sel == "boot" else k_forcing(par)
    return parse_rule(sel)


# ---------------------------------------------------------------------------
# input

def _load_graphs(args, errors):
    """(label, graph) pairs from --input or the internal census."""
    if args.input:
        out = []
        with open(args.input) as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                try:
                    out.append((lineno, parse_graph6(line)))
                except Graph6Error as exc:
                    errors.append(dict(error="malformed graph6", line=lineno, detail=str(exc)))
                    if args.strict:
                        return out
        return out
    top = args.max_order
    if top is None:
        raise UsageError("give --input FILE or --max-order N")
    if top > MAX_INTERNAL_ORDER and args.census_source == "internal":
        raise UsageError(f"internal census stops at order {MAX_INTERNAL_ORDER}; "
                         "use --census-source catalog")
    return [(None, g) for g in census(top, args.min_order, args.census_source)]


# ---------------------------------------------------------------------------
# units of work (module level so worker processes can import them)

def _compute_unit(payload):
    g6, sel, stat, omega, k, p = payload
    g = parse_graph6(g6)
    rule = parse_rule(sel)
    if stat in ("th", "weighted"):
        cert = throttle_weighted(rule, g, 1 if stat == "th" else omega)
    elif stat == "product":
        cert = throttle_product(rule, g)
    elif stat == "forcing":
        cert = forcing_number(rule, g)
    elif stat == "size-at-pt":
        cert = size_at_pt_certificate(rule, g, p)
    else:
        # no blue set of size k on fewer than k vertices
        val = pt_at_size(rule, g, k) if k <= g.n else INF
        return dict(graph6=g6, rule=sel, stat=stat, parameter=k, objective=V.fmt_value(val))
    par = cert.parameter
    return dict(graph6=g6, rule=sel, stat=stat,
                parameter=None if par is None else V.fmt_value(par),
                objective=V.fmt_value(cert.objective), blue=cert.blue_list,
                pt=V.fmt_value(cert.pt),
                schedule=None if cert.schedule is None else cert.schedule.to_text())


def _verify_unit(payload):
    theorem, key, params = payload
    if theorem == "product-proof-claims":
        kind, n, seed = key
        return V.check_proof_claims(kind, n, seed, parse_rule(params["rule"]), params["k"],
                                    params["samples"])
    if theorem == "axiom-flags":
        return V.check_axiom_flags(key, params["max_order"])
    g = parse_graph6(key)
    rules = [parse_rule(s) for s in params.get("rules", ())]
    if theorem == "product-sum-z":
        return V.check_product_sum_z(g)
    if theorem == "psd-product-part1":
        out = []
        for k in params["ks"]:
            fam = _family_cache(params["rules"][0], k)
            out.append(V.check_product_part1(g, fam))
        return dict(graph6=key, rule=params["rules"][0], checks=out, ok=all(c["ok"] for c in out))
    if theorem == "savings-lemma":
        return V.check_savings(g, rules[0], params["omegas"], params["ks"])
    if theorem == "witness-lemma":
        return V.check_witness(g, rules, params["omegas"], params["ks"])
    if theorem == "induced-path-chains":
        return V.check_induced_chains(g, rules)
    if theorem == "max-chain":
        return V.check_max_chain(g, rules)
    if theorem == "synchronous-optimality":
        return V.check_synchronous(g, rules)
    raise UsageError(f"unknown theorem {theorem!r}")


_FAMILIES = {}


def _family_cache(sel, k):
    if (sel, k) not in _FAMILIES:
        _FAMILIES[sel, k] = V.product_family(parse_rule(sel), k)
    return _FAMILIES[sel, k]


def _timed(fn, payload):
    t0 = time.perf_counter()
    rec = fn(payload)
    return rec, time.perf_counter() - t0


def _run_units(fn, payloads, workers):
    if workers <= 1 or len(payloads) < 2:
        return [_timed(fn, p) for p in payloads]
    chunk = max(1, len(payloads) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(_timed, [fn] * len(payloads), payloads, chunksize=chunk))


# ---------------------------------------------------------------------------
# output

def _dump(rec) -> str:
    return json.dumps(rec, separators=(",", ":"), default=str)


class _Sink:
    def __init__(self, path):
        self.fh = open(path, "w") if path else sys.stdout

    def write(self, rec):
        self.fh.write(_dump(rec) + "\n")

    def close(self):
        if self.fh is not sys.stdout:
            self.fh.close()
        else:
            self.fh.flush()


def _report_errors(errors):
    for e in errors:
        print(f"forcelab: line {e['line']}: {e['error']}: {e['detail']}", file=sys.stderr)


# ---------------------------------------------------------------------------
# subcommands

def cmd_compute(args) -> int:
    rule = _rule_from_args(args)
    if args.stat == "weighted" and args.omega is None:
        raise UsageError("--stat weighted needs --omega p/q")
    if args.stat == "pt-at-size" and args.k is None:
        raise UsageError("--stat pt-at-size needs --k")
    if args.stat == "size-at-pt" and args.p is None:
        raise UsageError("--stat size-at-pt needs --p")
    errors = []
    graphs = _load_graphs(args, errors)
    # th with an explicit omega is the weighted number
    stat = args.stat
    if stat == "th" and args.omega is not None and args.omega != 1:
        stat = "weighted"
    payloads = [(to_graph6(g), rule.selector, stat, args.omega, args.k, args.p) for _, g in graphs]
    results = _run_units(_compute_unit, payloads, args.workers)
    sink = _Sink(args.output)
    for (label, _), (rec, dt) in zip(graphs, results):
        if label is not None:
            rec = {"line": label, **rec}
        if args.timing:
            rec["wall_time"] = round(dt, 6)
        sink.write(rec)
    sink.close()
    _report_errors(errors)
    return EXIT_BAD_INPUT if errors else EXIT_OK


def cmd_enumerate_family(args) -> int:
    rule = _rule_from_args(args)
    if args.kind == "weighted":
        if args.omega is None or args.k is None:
            raise UsageError("weighted families need --k and --omega")
        cap = args.max_order if args.max_order is not None else MAX_INTERNAL_ORDER
        fam = enumerate_weighted_family(rule, args.k, args.omega, cap, args.census_source)
        if fam.truncated and not args.allow_truncated:
            raise UsageError(f"order bound {fam.order_bound} exceeds the enumerable order {cap}; "
                             "pass --allow-truncated to keep the capped family")
    else:
        if args.k is None:
            raise UsageError("product families need --k")
        cap = args.max_order if args.max_order is not None else MAX_INTERNAL_ORDER
        fam = enumerate_product_family(rule, args.k, args.census_source, max_order=cap)
    if args.minimal:
        fam = minimalize(fam, allow_truncated=args.allow_truncated)
    text = fam.to_text()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if fam.truncated:
        print(f"forcelab: family truncated at order {fam.order_cap} "
              f"(bound {fam.order_bound})", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    th = args.theorem
    omegas = [args.omega] if args.omega is not None else list(V.DEFAULT_OMEGAS)
    ks = [args.k] if args.k is not None else list(V.DEFAULT_KS)
    sels = [args.rule] if args.rule else list(THEOREM_RULES.get(th, ()))
    for s in sels:
        parse_rule(s)
    errors = []
    labels = None
    if th == "axiom-flags":
        top = args.max_order if args.max_order is not None else 5
        payloads = [(th, s, dict(max_order=top)) for s in sels]
    elif th == "product-proof-claims":
        sel = args.rule or "zplus"
        k = args.k if args.k is not None else 2
        keys = V.structured_corpus(args.count, args.min_n, args.max_n, args.seed)
        payloads = [(th, key, dict(rule=sel, k=k, samples=args.samples)) for key in keys]
    else:
        if th == "psd-product-part1":
            sels = [args.rule or "zplus"]
            ks = [args.k] if args.k is not None else [1, 2]
            params = dict(rules=sels, ks=ks)
        elif th == "savings-lemma":
            sels = [args.rule or "z"]
            params = dict(rules=sels, omegas=omegas, ks=ks)
        else:
            params = dict(rules=sels, omegas=omegas, ks=ks)
        graphs = _load_graphs(args, errors)
        labels = [lab for lab, _ in graphs]
        payloads = [(th, to_graph6(g), params) for _, g in graphs]
    results = _run_units(_verify_unit, payloads, args.workers)
    sink = _Sink(args.output)
    checked = failed = 0
    for i, (rec, dt) in enumerate(results):
        recs = rec if isinstance(rec, list) else [rec]
        for r in recs:
            if labels is not None and labels[i] is not None:
                r = {"line": labels[i], **r}
            if args.timing:
                r["wall_time"] = round(dt, 6)
            checked += 1
            failed += not r["ok"]
            sink.write(r)
    sink.write(dict(summary=th, checked=checked, counterexamples=failed,
                    malformed=len(errors), ok=failed == 0 and not errors))
    sink.close()
    _report_errors(errors)
    if errors:
        return EXIT_BAD_INPUT
    return EXIT_COUNTEREXAMPLE if failed else EXIT_OK


def cmd_check_axioms(args) -> int:
    rule = _rule_from_args(args)
    axioms = [args.axiom] if args.axiom else declared_axioms(rule)
    errors = []
    if args.input:
        corpus = [g for _, g in _load_graphs(args, errors)]
    else:
        corpus = census(args.max_order if args.max_order is not None else 5)
    sink = _Sink(args.output)
    for ax in axioms:
        rep = falsify_axiom(rule, ax, corpus, budget=args.budget)
        rec = rep.to_record()
        if rep.falsified:
            rec["replays"] = replay_witness(rule, rep)
        sink.write(rec)
    sink.close()
    _report_errors(errors)
    return EXIT_BAD_INPUT if errors else EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rule", help="z, zplus, skew, hop, kforce:<k>, boot:<r>")
    common.add_argument("--k", type=int)
    common.add_argument("--r", type=int, help="bootstrap threshold when --rule boot")
    common.add_argument("--omega", type=parse_omega, help="weight as p/q")
    common.add_argument("--max-order", type=int)
    common.add_argument("--min-order", type=int, default=0)
    common.add_argument("--input", help="graph6 file (one graph per line, '#' comments)")
    common.add_argument("--output", help="write records here instead of stdout")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--strict", action="store_true", help="stop at the first malformed line")
    common.add_argument("--census-source", default="internal",
                        help="internal, catalog (FORCELAB_CENSUS_DIR) or a graph6 file")
    common.add_argument("--timing", action="store_true", help="add wall_time to each record")

    ap = argparse.ArgumentParser(prog="forcelab", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="throttling parameters per graph")
    p.add_argument("--stat", choices=STATS, default="th")
    p.add_argument("--p", type=int, help="target propagation time for size-at-pt")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("enumerate-family", parents=[common], help="forbidden subgraph family")
    p.add_argument("--kind", choices=("weighted", "product"), default="weighted")
    p.add_argument("--minimal", action="store_true")
    p.add_argument("--allow-truncated", action="store_true")
    p.set_defaults(func=cmd_enumerate_family)

    p = sub.add_parser("verify", parents=[common], help="check a statement over a census")
    p.add_argument("--theorem", choices=THEOREMS, required=True)
    p.add_argument("--count", type=int, default=50, help="structured graphs (proof claims)")
    p.add_argument("--samples", type=int, default=200, help="forcing sets per graph (proof claims)")
    p.add_argument("--min-n", type=int, default=97)
    p.add_argument("--max-n", type=int, default=120)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("check-axioms", parents=[common], help="search for rule property violations")
    p.add_argument("--axiom", choices=AXIOMS)
    p.add_argument("--budget", type=int, help="maximum number of graphs to examine")
    p.set_defaults(func=cmd_check_axioms)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.workers < 1:
        ap.error("--workers must be positive")
    try:
        return args.func(args)
    except (UsageError, RuleError, FamilyError, Graph6Error, OSError) as exc:
        print(f"forcelab: error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
