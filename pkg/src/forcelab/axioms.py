"""Counterexample search for color change rule properties.

Nothing here certifies a property; a search either returns a replayable
witness or reports that no counterexample was found within the corpus.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph, bits, parse_graph6, popcount, to_graph6, to_mask
from .propagation import (ForceSchedule, enumerate_schedules, is_forcing_set,
                          min_propagation_time, propagation_time)
from .rules import Rule, RuleState, apply_forces, force_list

FALSIFIED = "falsified"
NONE_FOUND = "no-counterexample-found"

SUPERSET = "superset"
FORCE_COUNT = "force-count"
SPENT_REMOVABLE = "spent-removable"
TERMINUS_SUFFICIENT = "terminus-sufficient"

SCHEDULE_AXIOMS = (SUPERSET, FORCE_COUNT, SPENT_REMOVABLE, TERMINUS_SUFFICIENT)
COLORING_AXIOMS = ("local", "symmetric", "simple", "infectious", "co-local", "co-symmetric")
AXIOMS = SCHEDULE_AXIOMS + COLORING_AXIOMS

# declared flag -> axioms it stands for
FLAG_AXIOMS = {
    "well-behaved": SCHEDULE_AXIOMS,
    "nearly-well-behaved": (SUPERSET, FORCE_COUNT),
    **{a: (a,) for a in COLORING_AXIOMS},
}


@dataclass
class AxiomReport:
    rule: str
    axiom: str
    verdict: str
    witness: dict | None = None
    instances: int = 0
    quantification: str = ""

    @property
    def falsified(self) -> bool:
        return self.verdict == FALSIFIED

    def to_record(self) -> dict:
        return dict(rule=self.rule, axiom=self.axiom, verdict=self.verdict,
                    instances=self.instances, quantification=self.quantification,
                    witness=self.witness)


# ---------------------------------------------------------------------------
# single-instance predicates (shared by search and replay)

def _valid(rule, g, blue, spent=0):
    return set(force_list(rule, g, blue, spent))


def locality_violation(rule, g, force, blue, other, around) -> bool:
    """Colorings agree on ``around`` yet validity of ``force`` differs."""
    return (blue & around) == (other & around) and \
        ((force in _valid(rule, g, blue)) != (force in _valid(rule, g, other)))


def symmetry_violation(rule, g, blue, v) -> bool:
    white = g.adj[v] & ~blue
    can = {w for u, w in _valid(rule, g, blue) if u == v and white >> w & 1}
    return bool(can) and len(can) != popcount(white)


def cosymmetry_violation(rule, g, blue, w) -> bool:
    if blue >> w & 1:
        return False
    nb = g.adj[w] & blue
    can = {u for u, x in _valid(rule, g, blue) if x == w and nb >> u & 1}
    return bool(can) and len(can) != popcount(nb)


def simplicity_violation(rule, g, blue, spent, f1, f2) -> bool:
    valid = _valid(rule, g, blue, spent)
    if f1 not in valid or f2 not in valid or f1[1] == f2[1]:
        return False
    after = apply_forces(RuleState(blue, spent), [f1])
    return f2 not in _valid(rule, g, after.blue, after.spent)


def infection_violation(rule, g, blue, force) -> bool:
    return force in _valid(rule, g, blue) and not blue >> force[0] & 1


def _forces_subgraph(rule, g, removed, blue):
    h, old = g.delete(removed)
    pos = {v: i for i, v in enumerate(old)}
    hb = to_mask(pos[v] for v in bits(blue & ~removed))
    return is_forcing_set(rule, h, hb), old


def check_well_behaved(rule: Rule, g: Graph, blue: int, schedule: ForceSchedule) -> dict:
    """Evaluate the four well-behaved properties on one instance.

    Returns ``{axiom: (holds, detail)}``.
    """
    if schedule is None or schedule.final != g.vertices:
        raise ValueError("well-behaved checks need a schedule with finite propagation time")
    out = {}
    bad = next((v for v in bits(g.vertices & ~blue)
                if not is_forcing_set(rule, g, blue | (1 << v))), None)
    out[SUPERSET] = (bad is None, None if bad is None else {"added": bad})
    bad = next((i for i in range(1, schedule.pt + 1)
                if popcount(schedule.sources(i)) > popcount(schedule.targets(i))), None)
    out[FORCE_COUNT] = (bad is None, None if bad is None else {"step": bad})
    detail = None
    for i in range(schedule.pt + 1):
        used = schedule.sources_by(i)
        ok, old = _forces_subgraph(rule, g, used, schedule.blue_after(i))
        if not ok:
            detail = {"step": i, "removed": list(bits(used)), "relabel": list(old)}
            break
    out[SPENT_REMOVABLE] = (detail is None, detail)
    used = schedule.sources_by(schedule.pt)
    ok, old = _forces_subgraph(rule, g, blue & ~used, used)
    out[TERMINUS_SUFFICIENT] = (ok, None if ok else
                                {"removed": list(bits(blue & ~used)), "relabel": list(old)})
    return out


# ---------------------------------------------------------------------------
# corpus search

def _schedules_for(rule, g, b, all_schedules):
    pt, best = min_propagation_time(rule, g, b)
    if best is None:
        return []
    if b == g.vertices:
        return [best]
    scheds = enumerate_schedules(rule, g, b)
    if not all_schedules:
        scheds = [s for s in scheds if s.pt == pt]
    return scheds or [best]


def falsify_axiom(rule: Rule, axiom: str, corpus, budget: int | None = None,
                  all_schedules_upto: int = 4) -> AxiomReport:
    """Search ``corpus`` (iterable of graphs) for a violation of ``axiom``.

    Schedule-based properties use every schedule on graphs with at most
    ``all_schedules_upto`` vertices and pt-realizing schedules above that.
    """
    if axiom not in AXIOMS:
        raise ValueError(f"unknown axiom {axiom!r}; expected one of {AXIOMS}")
    rep = AxiomReport(rule.selector, axiom, NONE_FOUND)
    if axiom in SCHEDULE_AXIOMS:
        rep.quantification = (f"all schedules for n <= {all_schedules_upto}, "
                              "pt-realizing schedules above")
    else:
        rep.quantification = "all colorings" + (" (spent = empty)" if rule.stateful else "")

    def hit(g, **w):
        rep.verdict = FALSIFIED
        rep.witness = {"graph6": to_graph6(g), **w}
        return rep

    for g in corpus:
        if budget is not None and rep.instances >= budget:
            break
        n = g.n
        rep.instances += 1
        if axiom in ("local", "co-local"):
            valid = [_valid(rule, g, b) for b in range(1 << n)]
            for v in range(n):
                for w in range(n):
                    if v == w:
                        continue
                    around = g.closed_nbhd(v if axiom == "local" else w)
                    seen = {}
                    for b in range(1 << n):
                        key = b & around
                        val = (v, w) in valid[b]
                        if key in seen and seen[key][0] != val:
                            return hit(g, force=[v, w], blue=list(bits(seen[key][1])),
                                       other_blue=list(bits(b)), around=list(bits(around)))
                        seen.setdefault(key, (val, b))
        elif axiom == "symmetric":
            for b in range(1 << n):
                for v in range(n):
                    if symmetry_violation(rule, g, b, v):
                        return hit(g, blue=list(bits(b)), source=v)
        elif axiom == "co-symmetric":
            for b in range(1 << n):
                for w in range(n):
                    if cosymmetry_violation(rule, g, b, w):
                        return hit(g, blue=list(bits(b)), target=w)
        elif axiom == "simple":
            for b in range(1 << n):
                valid = sorted(_valid(rule, g, b))
                for f1 in valid:
                    for f2 in valid:
                        if simplicity_violation(rule, g, b, 0, f1, f2):
                            return hit(g, blue=list(bits(b)), force=list(f1), other_force=list(f2))
        elif axiom == "infectious":
            for b in range(1 << n):
                for f in sorted(_valid(rule, g, b)):
                    if not b >> f[0] & 1:
                        return hit(g, blue=list(bits(b)), force=list(f))
        else:
            for b in range(1 << n):
                if propagation_time(rule, g, b) == float("inf"):
                    continue
                scheds = _schedules_for(rule, g, b, n <= all_schedules_upto)
                if axiom == SUPERSET:
                    scheds = scheds[:1]
                for s in scheds:
                    holds, detail = check_well_behaved(rule, g, b, s)[axiom]
                    if not holds:
                        return hit(g, blue=list(bits(b)), schedule=s.to_text(), detail=detail)
    return rep


def replay_witness(rule: Rule, report: AxiomReport) -> bool:
    """True iff the report's witness really violates its axiom."""
    if report.witness is None:
        return False
    w = report.witness
    g = parse_graph6(w["graph6"])
    ax = report.axiom
    if ax in ("local", "co-local"):
        return locality_violation(rule, g, tuple(w["force"]), to_mask(w["blue"]),
                                  to_mask(w["other_blue"]), to_mask(w["around"]))
    if ax == "symmetric":
        return symmetry_violation(rule, g, to_mask(w["blue"]), w["source"])
    if ax == "co-symmetric":
        return cosymmetry_violation(rule, g, to_mask(w["blue"]), w["target"])
    if ax == "simple":
        return simplicity_violation(rule, g, to_mask(w["blue"]), 0,
                                    tuple(w["force"]), tuple(w["other_force"]))
    if ax == "infectious":
        return infection_violation(rule, g, to_mask(w["blue"]), tuple(w["force"]))
    s = ForceSchedule.from_text(w["schedule"])
    return not check_well_behaved(rule, g, to_mask(w["blue"]), s)[ax][0]


def declared_axioms(rule: Rule) -> list[str]:
    out = []
    for flag in sorted(rule.flags):
        for ax in FLAG_AXIOMS.get(flag, ()):
            if ax not in out:
                out.append(ax)
    return out


def negated_axioms(rule: Rule) -> list[str]:
    return [ax for flag in sorted(rule.not_flags) for ax in FLAG_AXIOMS.get(flag, ())]
