"""Forbidden induced subgraph families for weighted and product throttling.

Weighted kind: graphs H with th^w(H) < |V(H)| - k up to the order bound
``2(k+1) + 2w(k+1)/(1 - frac(w))``.  Product kind: graphs on at most 2k
vertices with a forcing set that colors exactly k vertices in one step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import (Graph, bits, canonical_form, canonical_graph, census, find_induced,
                    parse_graph6, popcount, subsets_of_size, to_graph6, to_mask)
from .propagation import (INF, ForceSchedule, PreconditionError, chains,
                          enumerate_schedules, min_propagation_time, propagation_time,
                          uniformly_fastest)
from .rules import WELL_BEHAVED, Rule, parse_rule
from .throttling import as_weight, throttle_product, throttle_weighted, weight_parts


class FamilyError(ValueError):
    pass


# ---------------------------------------------------------------------------
# savings and standard witnesses

def savings(schedule: ForceSchedule, omega, n: int | None = None) -> Fraction:
    """Sum over time steps of (|F^(i)| - omega)."""
    if schedule is None or (n is not None and schedule.final != (1 << n) - 1):
        raise ValueError("savings needs a complete schedule")
    omega = as_weight(omega)
    return sum((len(step) - omega for step in schedule.steps), Fraction(0))


def max_savings(rule: Rule, g: Graph, omega, exhaustive: bool = False):
    """Largest savings over forcing sets B and schedules realizing pt(G; B).

    Returns ``(value, blue, schedule)``.  With ``exhaustive`` every enumerated
    schedule of matching propagation time is scored, not just the one found
    by the propagation search.
    """
    omega = as_weight(omega)
    best = (None, None, None)
    for b in range(1 << g.n):
        pt, sched = min_propagation_time(rule, g, b)
        if sched is None:
            continue
        cands = [sched]
        if exhaustive and b != g.vertices:
            cands += [s for s in enumerate_schedules(rule, g, b) if s.pt == pt]
        for s in cands:
            val = savings(s, omega)
            if best[0] is None or val > best[0]:
                best = (val, b, s)
    return best


@dataclass(frozen=True)
class WitnessRecord:
    blue: int
    schedule: ForceSchedule
    omega: Fraction
    k: int
    is_standard: bool
    passes: int = 1


def is_standard_witness(g: Graph, blue: int, schedule: ForceSchedule, omega, k: int) -> bool:
    omega = as_weight(omega)
    if schedule is None or schedule.initial != blue or schedule.final != g.vertices:
        return False
    if any(len(step) - omega <= 0 for step in schedule.steps):
        return False
    return popcount(blue) + omega * schedule.pt < g.n - k


def make_standard_witness(rule: Rule, g: Graph, blue: int, schedule: ForceSchedule | None,
                          omega, k: int) -> WitnessRecord:
    """Absorb every time step with |F^(i)| <= omega into the initial set.

    The absorbed set is re-propagated; if the new schedule again has a
    deficient step the absorption is repeated (each pass lowers pt).
    """
    if WELL_BEHAVED not in rule.flags:
        raise PreconditionError(f"rule {rule} is not declared well behaved")
    omega = as_weight(omega)
    pt, best = min_propagation_time(rule, g, blue)
    if best is None or popcount(blue) + omega * pt >= g.n - k:
        raise PreconditionError("initial set does not beat the n - k threshold")
    if schedule is None or schedule.pt != pt:
        schedule = best
    passes = 0
    while True:
        passes += 1
        absorbed = 0
        for i, step in enumerate(schedule.steps, 1):
            if len(step) - omega <= 0:
                absorbed |= schedule.targets(i)
        if not absorbed:
            break
        blue |= absorbed
        _, schedule = min_propagation_time(rule, g, blue)
    ok = is_standard_witness(g, blue, schedule, omega, k)
    return WitnessRecord(blue, schedule, omega, k, ok, passes)


# ---------------------------------------------------------------------------
# family membership

def weighted_order_bound(k: int, omega) -> Fraction:
    omega = as_weight(omega)
    _, frac = weight_parts(omega)
    return 2 * (k + 1) + 2 * omega * (k + 1) / (1 - frac)


def in_weighted_family(rule: Rule, g: Graph, k: int, omega) -> bool:
    return throttle_weighted(rule, g, omega).objective < g.n - k


def product_witness(rule: Rule, g: Graph, k: int) -> int | None:
    """A forcing set B with |B| = n - k and pt(G; B) = 1, if g has one."""
    if k < 1 or g.n - k < 0:
        return None
    for b in subsets_of_size(g.n, g.n - k):
        if propagation_time(rule, g, b) == 1:
            return b
    return None


def in_product_family(rule: Rule, g: Graph, k: int) -> bool:
    return g.n <= 2 * k and product_witness(rule, g, k) is not None


@dataclass
class ForbiddenFamily:
    rule: Rule
    kind: str                       # weighted | product
    k: int
    omega: Fraction | None
    members: list[Graph] = field(default_factory=list)
    order_bound: int = 0
    order_cap: int = 0
    minimal: bool = False
    truncated: bool = False

    def keys(self) -> list[str]:
        return [canonical_form(h) for h in self.members]

    def __contains__(self, g: Graph) -> bool:
        return canonical_form(g) in set(self.keys())

    def __len__(self):
        return len(self.members)

    def contained_in(self, g: Graph):
        """First member that is an induced subgraph of g, with its embedding."""
        for h in self.members:
            if h.n > g.n:
                continue
            phi = find_induced(h, g)
            if phi is not None:
                return h, phi
        return None

    def header(self) -> str:
        om = "none" if self.omega is None else f"{self.omega.numerator}/{self.omega.denominator}"
        return (f"# rule={self.rule.selector} kind={self.kind} k={self.k} omega={om} "
                f"minimal={str(self.minimal).lower()} order_bound={self.order_bound}")

    def to_text(self) -> str:
        return self.header() + "\n" + "".join(k + "\n" for k in sorted(self.keys()))

    @classmethod
    def from_text(cls, text: str) -> "ForbiddenFamily":
        lines = text.splitlines()
        if not lines or not lines[0].startswith("# "):
            raise FamilyError("family file must start with a '# rule=...' header")
        meta = dict(item.split("=", 1) for item in lines[0][2:].split())
        omega = None if meta["omega"] == "none" else Fraction(meta["omega"])
        fam = cls(parse_rule(meta["rule"]), meta["kind"], int(meta["k"]), omega,
                  order_bound=int(meta["order_bound"]), minimal=meta["minimal"] == "true")
        fam.members = [parse_graph6(ln) for ln in lines[1:] if ln.strip() and not ln.startswith("#")]
        fam.order_cap = max((h.n for h in fam.members), default=0)
        return fam

    def save(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_text())

    @classmethod
    def load(cls, path) -> "ForbiddenFamily":
        with open(path) as fh:
            return cls.from_text(fh.read())


def _sorted_canonical(graphs):
    keyed = {canonical_form(h): canonical_graph(h) for h in graphs}
    return [keyed[key] for key in sorted(keyed, key=lambda s: (len(s), s))]


def enumerate_weighted_family(rule: Rule, k: int, omega, order_cap: int,
                              source="internal") -> ForbiddenFamily:
    """All graphs of order <= min(order_cap, bound) with th^w < n - k."""
    omega = as_weight(omega)
    bound = math.floor(weighted_order_bound(k, omega))
    top = min(order_cap, bound)
    members = [h for h in census(top, 0, source) if in_weighted_family(rule, h, k, omega)]
    return ForbiddenFamily(rule, "weighted", k, omega, _sorted_canonical(members),
                           order_bound=bound, order_cap=top, truncated=top < bound)


def enumerate_product_family(rule: Rule, k: int, source="internal",
                             max_order: int = 8) -> ForbiddenFamily:
    """All graphs on at most 2k vertices with a forcing set coloring exactly k
    vertices in a single step."""
    if k < 1:
        raise FamilyError("product families need k >= 1")
    if 2 * k > max_order:
        raise FamilyError(f"2k = {2 * k} exceeds the census limit {max_order}")
    members = [h for h in census(2 * k, k + 1, source) if product_witness(rule, h, k) is not None]
    return ForbiddenFamily(rule, "product", k, None, _sorted_canonical(members),
                           order_bound=2 * k, order_cap=2 * k)


def minimalize(family: ForbiddenFamily, allow_truncated: bool = False) -> ForbiddenFamily:
    """Members that contain no other member as a proper induced subgraph.

    A truncated family (order cap below the theoretical bound) is refused
    unless ``allow_truncated``: the result is then minimal only among graphs
    up to the cap, which is still exact for any census below the cap.
    """
    if family.truncated and not allow_truncated:
        raise FamilyError(
            f"family is truncated at order {family.order_cap} < bound {family.order_bound}; "
            "minimality beyond the cap is unknown")
    keep = []
    for h in sorted(family.members, key=lambda x: (x.n, canonical_form(x))):
        if not any(m.n < h.n and find_induced(m, h) is not None for m in keep):
            keep.append(h)
    return ForbiddenFamily(family.rule, family.kind, family.k, family.omega,
                           _sorted_canonical(keep), family.order_bound, family.order_cap,
                           minimal=True, truncated=family.truncated)


# ---------------------------------------------------------------------------
# characterization checks

@dataclass
class CharacterizationReport:
    rule: str
    kind: str
    k: int
    omega: Fraction | None
    census_max: int
    family_size: int
    checked: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def verify_characterization(rule: Rule, k: int, omega=None, census_max: int = 6,
                            kind: str | None = None, family: ForbiddenFamily | None = None,
                            source="internal") -> CharacterizationReport:
    """Check the family against direct computation on every census graph.

    Weighted kind: [G contains a member] iff [th^w(G) < n - k].  Product
    kind: [G contains a member] implies [th*(G) <= n - k].  Graphs with
    n < k are outside the statement and skipped.
    """
    kind = kind or ("product" if omega is None else "weighted")
    if family is None:
        if kind == "weighted":
            family = minimalize(enumerate_weighted_family(rule, k, omega, census_max, source),
                                allow_truncated=True)
        else:
            family = minimalize(enumerate_product_family(rule, k, source))
    omega = None if kind == "product" else as_weight(omega)
    rep = CharacterizationReport(rule.selector, kind, k, omega, census_max, len(family))
    for g in census(census_max, max(k, 0), source):
        hit = family.contained_in(g)
        rep.checked += 1
        if kind == "weighted":
            cert = throttle_weighted(rule, g, omega)
            below = cert.objective < g.n - k
            if below != (hit is not None):
                rep.counterexamples.append(dict(
                    graph6=to_graph6(g), contains=None if hit is None else to_graph6(hit[0]),
                    embedding=None if hit is None else hit[1], objective=str(cert.objective),
                    blue=cert.blue_list, pt=cert.pt))
        elif hit is not None:
            cert = throttle_product(rule, g)
            if not cert.objective <= g.n - k:
                rep.counterexamples.append(dict(
                    graph6=to_graph6(g), contains=to_graph6(hit[0]), embedding=hit[1],
                    objective=cert.objective, blue=cert.blue_list, pt=cert.pt))
    return rep


def savings_lemma_holds(rule: Rule, g: Graph, omega, k: int, exhaustive: bool = False) -> bool:
    """[th^w(G) < n - k] iff [some forcing set has savings > k]."""
    below = throttle_weighted(rule, g, omega).objective < g.n - k
    best, _, _ = max_savings(rule, g, omega, exhaustive)
    return below == (best > k)


# ---------------------------------------------------------------------------
# product theorem proof claims on single instances

@dataclass
class ProofClaimResult:
    long_chains: int = 0
    big_steps: int = 0
    max_chain_vertices: int = 0
    max_step_forces: int = 0
    violations: list = field(default_factory=list)


def product_proof_claims(rule: Rule, g: Graph, b: int, k: int,
                         family_free: bool) -> ProofClaimResult:
    """Per-instance claims behind the product throttling theorems.

    On a uniformly fastest schedule from ``b``: a chain with 3k-1 vertices
    must yield an induced matching on 2k vertices colored in one step from
    every third vertex, and a step with k forces must yield a family member
    from k of its forces and their sources.  If ``family_free``, neither may
    occur at all (chains <= 3k-2 vertices, steps <= k-1 forces).
    """
    res = ProofClaimResult()
    s = uniformly_fastest(rule, g, b)
    found, _ = chains(s)
    width = 3 * k - 1
    for c in found:
        res.max_chain_vertices = max(res.max_chain_vertices, len(c))
        if len(c) < width:
            continue
        res.long_chains += 1
        if family_free:
            res.violations.append(("chain", c))
            continue
        for start in range(len(c) - width + 1):
            window = c[start:start + width]
            keep = [x for i, x in enumerate(window, 1) if i % 3]
            seeds = [x for i, x in enumerate(window, 1) if i % 3 == 1]
            h, old = g.induced(keep)
            pos = {v: i for i, v in enumerate(old)}
            hb = to_mask(pos[x] for x in seeds)
            if not (h.n == 2 * k and propagation_time(rule, h, hb) == 1):
                res.violations.append(("chain-witness", window))
    for i, step in enumerate(s.steps, 1):
        res.max_step_forces = max(res.max_step_forces, len(step))
        if len(step) < k:
            continue
        res.big_steps += 1
        if family_free:
            res.violations.append(("step", i))
            continue
        part = sorted(step, key=lambda f: f[1])[:k]
        u1 = to_mask(u for u, _ in part)
        f1 = to_mask(w for _, w in part)
        h, old = g.induced(u1 | f1)
        pos = {v: j for j, v in enumerate(old)}
        hb = to_mask(pos[x] for x in bits(u1))
        if not (h.n <= 2 * k and h.n - popcount(hb) == k and propagation_time(rule, h, hb) == 1):
            res.violations.append(("step-witness", i))
    return res
