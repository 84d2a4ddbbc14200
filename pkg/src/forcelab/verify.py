"""Per-graph verification units used by the census driver and the test suite.

Each ``check_*`` function takes a graph plus plain parameters and returns a
JSON-ready record whose ``ok`` field says whether the statement held on that
graph.  Records carry enough data (graph6, blue sets, schedules) to replay.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .axioms import declared_axioms, falsify_axiom, negated_axioms, replay_witness
from .forbidden import (ForbiddenFamily, enumerate_product_family, make_standard_witness,
                        max_savings, minimalize, product_proof_claims)
from .graph import (Graph, bits, census, cycle_graph, grid_graph, path_graph, popcount,
                    random_tree, to_graph6, to_mask)
from .propagation import (INF, chains, closure, enumerate_schedules, exhaustive_pt, induces_path,
                          find_uniform_schedule, is_uniformly_fastest, longest_chain_length,
                          min_propagation_time, propagation_time, uniformly_fastest)
from .rules import Z, ZPLUS, Rule, bootstrap, parse_rule
from .throttling import (as_weight, size_at_pt_certificate, throttle_product,
                         throttle_weighted)

DEFAULT_OMEGAS = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2))
DEFAULT_KS = (0, 1, 2)


def fmt_value(x):
    """JSON-friendly number: ints stay ints, fractions become 'p/q', infinity 'inf'."""
    if x == INF:
        return "inf"
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x


def _forcing_sets(rule, g):
    for b in range(1 << g.n):
        if closure(rule, g, b) == g.vertices:
            yield b


# ---------------------------------------------------------------------------
# throttling survey

def check_product_sum_z(g: Graph) -> dict:
    """th*_Z(G) = k_Z(G,1) when a proper forcing subset exists, and k_Z(G,1) >= n/2."""
    prod = throttle_product(Z, g)
    k1 = size_at_pt_certificate(Z, g, 1)
    ok = True
    if prod.objective != INF:
        ok = prod.objective == k1.objective
    if k1.objective != INF:
        ok = ok and k1.objective >= math.ceil(g.n / 2)
    return dict(graph6=to_graph6(g), rule="z", objective=fmt_value(prod.objective),
                blue=prod.blue_list, pt=fmt_value(prod.pt),
                schedule=None if prod.schedule is None else prod.schedule.to_text(),
                k_at_pt1=fmt_value(k1.objective), k_blue=k1.blue_list, ok=ok)


# ---------------------------------------------------------------------------
# forbidden families

def check_product_part1(g: Graph, family: ForbiddenFamily) -> dict:
    """Containing a member of the product family forces th* <= n - k."""
    hit = family.contained_in(g)
    rec = dict(graph6=to_graph6(g), rule=family.rule.selector, k=family.k,
               contains=None if hit is None else to_graph6(hit[0]),
               embedding=None if hit is None else list(hit[1]))
    if hit is None:
        rec["ok"] = True
        return rec
    cert = throttle_product(family.rule, g)
    rec.update(objective=fmt_value(cert.objective), blue=cert.blue_list, pt=fmt_value(cert.pt),
               ok=cert.objective <= g.n - family.k)
    return rec


def product_family(rule: Rule, k: int) -> ForbiddenFamily:
    return minimalize(enumerate_product_family(rule, k))


def check_savings(g: Graph, rule: Rule = Z, omegas=DEFAULT_OMEGAS, ks=DEFAULT_KS,
                  exhaustive_upto: int = 5) -> dict:
    """th^w(G) < n - k iff some forcing set and pt-realizing schedule save more than k."""
    rows, ok = [], True
    for om in omegas:
        om = as_weight(om)
        th = throttle_weighted(rule, g, om)
        best, blue, sched = max_savings(rule, g, om, exhaustive=g.n <= exhaustive_upto)
        for k in ks:
            below = th.objective < g.n - k
            good = below == (best > k)
            ok = ok and good
            rows.append(dict(omega=fmt_value(om), k=k, th=fmt_value(th.objective),
                             max_savings=fmt_value(best), ok=good))
    return dict(graph6=to_graph6(g), rule=rule.selector, cases=rows, ok=ok)


def check_witness(g: Graph, rules=(Z, ZPLUS), omegas=DEFAULT_OMEGAS, ks=DEFAULT_KS) -> dict:
    """Every forcing set below the n - k threshold yields a standard witness."""
    instances = failures = 0
    first_bad = None
    for rule in rules:
        for b in _forcing_sets(rule, g):
            pt, sched = min_propagation_time(rule, g, b)
            for om in omegas:
                om = as_weight(om)
                for k in ks:
                    if popcount(b) + om * pt >= g.n - k:
                        continue
                    instances += 1
                    w = make_standard_witness(rule, g, b, sched, om, k)
                    if not w.is_standard:
                        failures += 1
                        if first_bad is None:
                            first_bad = dict(rule=rule.selector, blue=list(bits(b)),
                                             omega=fmt_value(om), k=k,
                                             witness_blue=list(bits(w.blue)))
    return dict(graph6=to_graph6(g), rules=[r.selector for r in rules], instances=instances,
                failures=failures, counterexample=first_bad, ok=failures == 0)


# ---------------------------------------------------------------------------
# schedule lemmas

def check_synchronous(g: Graph, rules) -> dict:
    """Synchronous pt equals the exhaustive minimum, and the uniformly fastest
    schedule colors each vertex no later than any enumerated schedule."""
    checked, bad = 0, []
    for rule in rules:
        for b in range(1 << g.n):
            pt = propagation_time(rule, g, b)
            if pt == INF:
                if exhaustive_pt(rule, g, b) != INF:
                    bad.append(dict(rule=rule.selector, blue=list(bits(b)), claim="pt"))
                continue
            checked += 1
            scheds = enumerate_schedules(rule, g, b) if b != g.vertices else []
            ex = min((s.pt for s in scheds), default=0)
            if ex != pt:
                bad.append(dict(rule=rule.selector, blue=list(bits(b)), claim="pt",
                                synchronous=pt, exhaustive=fmt_value(ex)))
                continue
            if rule.synchronous and not is_uniformly_fastest(uniformly_fastest(rule, g, b), scheds):
                bad.append(dict(rule=rule.selector, blue=list(bits(b)), claim="uniform"))
    return dict(graph6=to_graph6(g), rules=[r.selector for r in rules], instances=checked,
                counterexamples=bad, ok=not bad)


def _bad_chain(g, s):
    return next((c for c in chains(s)[0] if not induces_path(g, c)), None)


def check_induced_chains(g: Graph, rules) -> dict:
    """Every chain of every uniformly fastest schedule induces a path."""
    checked, bad = 0, []
    for rule in rules:
        for b in _forcing_sets(rule, g):
            checked += 1
            s = find_uniform_schedule(rule, g, b, lambda s: _bad_chain(g, s) is not None)
            if s is not None:
                bad.append(dict(rule=rule.selector, blue=list(bits(b)), schedule=s.to_text(),
                                chain=list(_bad_chain(g, s))))
    return dict(graph6=to_graph6(g), rules=[r.selector for r in rules], instances=checked,
                counterexamples=bad, ok=not bad)


def check_max_chain(g: Graph, rules) -> dict:
    """pt equals the longest chain of the most-recent-source schedule."""
    checked, bad = 0, []
    for rule in rules:
        for b in _forcing_sets(rule, g):
            checked += 1
            s = uniformly_fastest(rule, g, b)
            ell = longest_chain_length(s)
            if ell != s.pt:
                bad.append(dict(rule=rule.selector, blue=list(bits(b)), pt=s.pt, ell=ell))
    return dict(graph6=to_graph6(g), rules=[r.selector for r in rules], instances=checked,
                counterexamples=bad, ok=not bad)


# ---------------------------------------------------------------------------
# rule properties

def check_axiom_flags(selector: str, max_order: int = 5) -> list[dict]:
    """Declared flags survive the census; declared negations are falsified."""
    rule = parse_rule(selector)
    corpus = census(max_order)
    out = []
    for ax in declared_axioms(rule):
        rep = falsify_axiom(rule, ax, corpus)
        out.append(dict(rep.to_record(), expected="no-counterexample-found",
                        ok=not rep.falsified))
    for ax in negated_axioms(rule):
        rep = falsify_axiom(rule, ax, corpus)
        out.append(dict(rep.to_record(), expected="falsified",
                        ok=rep.falsified and replay_witness(rule, rep)))
    return out


# ---------------------------------------------------------------------------
# large structured graphs

def structured_graph(kind: str, n: int, seed: int = 0) -> Graph:
    if kind == "path":
        return path_graph(n)
    if kind == "cycle":
        return cycle_graph(n)
    if kind == "grid":
        return grid_graph(2, n // 2)
    if kind == "tree":
        return random_tree(n, random.Random(seed))
    if kind == "clique":
        # K_m plus isolated vertices: induced-P3-free and induced-2K2-free
        m = n // 2
        return Graph(n, [(i, j) for i in range(m) for j in range(i + 1, m)])
    raise ValueError(f"unknown structured graph kind {kind!r}")


def structured_corpus(count: int = 50, lo: int = 97, hi: int = 120, seed: int = 0):
    """``count`` descriptors (kind, n, seed) cycling through paths, cycles,
    2 x m grids and random trees with lo <= n <= hi."""
    rng = random.Random(seed)
    kinds = ("path", "cycle", "grid", "tree")
    out = []
    for i in range(count):
        kind = kinds[i % 4]
        n = rng.randint(lo, hi)
        if kind == "grid":
            n -= n % 2
            if n < lo:
                n += 2
        out.append((kind, n, rng.randrange(2**31)))
    return out


def sample_forcing_set(rule: Rule, g: Graph, rng: random.Random) -> int:
    """Random seed set grown by random white vertices until it forces."""
    density = rng.choice((0.02, 0.05, 0.1, 0.2, 0.35))
    b = to_mask(v for v in range(g.n) if rng.random() < density)
    while True:
        final = closure(rule, g, b)
        if final == g.vertices:
            return b
        white = [v for v in range(g.n) if not final >> v & 1]
        b |= 1 << rng.choice(white)


def check_proof_claims(kind: str, n: int, seed: int, rule: Rule = ZPLUS, k: int = 2,
                       samples: int = 200, family: ForbiddenFamily | None = None) -> dict:
    """Long chains and crowded steps on a uniformly fastest schedule must come
    with a family member; on family-free graphs they must not occur."""
    g = structured_graph(kind, n, seed)
    family = family or product_family(rule, k)
    hit = family.contained_in(g)
    free = hit is None
    rng = random.Random(seed)
    violations = []
    long_chains = big_steps = max_chain = max_step = 0
    for _ in range(samples):
        b = sample_forcing_set(rule, g, rng)
        res = product_proof_claims(rule, g, b, k, family_free=free)
        long_chains += res.long_chains
        big_steps += res.big_steps
        max_chain = max(max_chain, res.max_chain_vertices)
        max_step = max(max_step, res.max_step_forces)
        if res.violations and len(violations) < 3:
            violations.append(dict(blue=list(bits(b)), what=[list(map(str, v)) for v in res.violations[:3]]))
    return dict(kind=kind, n=n, seed=seed, rule=rule.selector, k=k, samples=samples,
                family_free=free, contains=None if free else to_graph6(hit[0]),
                long_chains=long_chains, big_steps=big_steps, max_chain_vertices=max_chain,
                max_step_forces=max_step, violations=violations, ok=not violations)
