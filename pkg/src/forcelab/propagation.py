"""Force schedules and propagation time.

A :class:`ForceSchedule` is a set of forces together with its time-step
partition: ``steps[i-1]`` holds the forces whose targets turn blue at time
step ``i``.  Stateless simple rules are propagated by synchronous saturation
(every valid force, every step); zero forcing with hopping is searched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .graph import Graph, bits, full_mask, popcount, to_mask
from .rules import (CO_LOCAL, CO_SYMMETRIC, INFECTIOUS, LOCAL, NEARLY_WELL_BEHAVED,
                    SIMPLE, SYMMETRIC, Force, Rule, RuleState, apply_forces, force_list,
                    one_step_targets)

INF = math.inf


class ScheduleError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class ForceSchedule:
    initial: int
    steps: tuple[tuple[Force, ...], ...]

    @property
    def pt(self) -> int:
        return len(self.steps)

    @property
    def forces(self) -> frozenset:
        return frozenset(f for step in self.steps for f in step)

    def targets(self, i: int) -> int:
        """F^(i) as a bitmask; F^(0) is the initial set."""
        if i == 0:
            return self.initial
        return to_mask(w for _, w in self.steps[i - 1])

    def sources(self, i: int) -> int:
        """U^(i) as a bitmask; U^(0) is empty."""
        if i == 0:
            return 0
        return to_mask(u for u, _ in self.steps[i - 1])

    def blue_after(self, i: int) -> int:
        """F^[i]."""
        m = self.initial
        for step in self.steps[:i]:
            for _, w in step:
                m |= 1 << w
        return m

    def sources_by(self, i: int) -> int:
        """U^[i]."""
        m = 0
        for step in self.steps[:i]:
            for u, _ in step:
                m |= 1 << u
        return m

    @property
    def final(self) -> int:
        return self.blue_after(self.pt)

    def step_sizes(self) -> list[int]:
        return [len(s) for s in self.steps]

    def times(self) -> dict[int, int]:
        t = {v: 0 for v in bits(self.initial)}
        for i, step in enumerate(self.steps, 1):
            for _, w in step:
                t[w] = i
        return t

    def to_text(self) -> str:
        lines = ["B: " + ", ".join(map(str, bits(self.initial))) if self.initial else "B:"]
        for i, step in enumerate(self.steps, 1):
            lines.append(f"t={i}: " + ", ".join(f"{u}->{w}" for u, w in step))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ForceSchedule":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("B:"):
            raise ScheduleError("schedule text must start with 'B:'")
        body = lines[0][2:].strip()
        initial = to_mask(int(x) for x in body.split(",")) if body else 0
        steps = []
        for i, ln in enumerate(lines[1:], 1):
            head, _, rest = ln.partition(":")
            if head.strip() != f"t={i}":
                raise ScheduleError(f"expected 't={i}:' but found {ln!r}")
            step = []
            for item in rest.split(","):
                u, _, w = item.strip().partition("->")
                step.append((int(u), int(w)))
            steps.append(tuple(sorted(step)))
        return cls(initial, tuple(steps))


def _schedule(initial, steps):
    return ForceSchedule(initial, tuple(tuple(sorted(s)) for s in steps))


# ---------------------------------------------------------------------------
# replay

def replay(rule: Rule, g: Graph, schedule: ForceSchedule, complete: bool = True) -> int:
    """Re-validate every force at its recorded step; returns the final coloring.

    Each force must be valid for the state at the start of its step, targets
    must be distinct, and performing the step's forces one after another must
    keep each remaining force valid (so the step is performable at once).
    """
    state = RuleState(schedule.initial, 0)
    for i, step in enumerate(schedule.steps, 1):
        if not step:
            raise ScheduleError(f"step {i} is empty")
        valid = set(force_list(rule, g, state.blue, state.spent))
        targets = set()
        for f in step:
            if f not in valid:
                raise ScheduleError(f"force {f[0]}->{f[1]} is not valid at step {i}")
            if f[1] in targets:
                raise ScheduleError(f"vertex {f[1]} forced twice at step {i}")
            targets.add(f[1])
        seq = state
        for j, f in enumerate(step):
            if j and f not in set(force_list(rule, g, seq.blue, seq.spent)):
                raise ScheduleError(f"forces at step {i} cannot be performed simultaneously")
            seq = apply_forces(seq, [f])
        state = seq
    if complete and state.blue != g.vertices:
        raise ScheduleError("schedule does not color every vertex")
    return state.blue


# ---------------------------------------------------------------------------
# closure and propagation time

def _sync_layers(rule, g, b):
    blue, layers = b, []
    while True:
        new = one_step_targets(rule, g, blue)
        if not new:
            return blue, layers
        layers.append(new)
        blue |= new


def _hop_batches(g, rule, blue, spent):
    valid = force_list(rule, g, blue, spent)
    by_target = {}
    for u, w in valid:
        by_target.setdefault(w, []).append(u)
    targets = sorted(by_target)
    out = []

    def rec(i, used, chosen):
        if i == len(targets):
            if not chosen:
                return
            # maximal: no skipped target still has an unused source
            for w in targets:
                if not any(f[1] == w for f in chosen) and any(not used >> u & 1 for u in by_target[w]):
                    return
            out.append(tuple(chosen))
            return
        w = targets[i]
        for u in by_target[w]:
            if not used >> u & 1:
                rec(i + 1, used | (1 << u), chosen + [(u, w)])
        rec(i + 1, used, chosen)

    rec(0, 0, [])
    return out


def _hop_search(rule, g, b):
    full = g.vertices
    memo = {}

    def best(blue, spent):
        if blue == full:
            return 0, None
        key = (blue, spent)
        if key in memo:
            return memo[key]
        memo[key] = (INF, None)  # guards against revisiting (state strictly grows anyway)
        res = (INF, None)
        for batch in _hop_batches(g, rule, blue, spent):
            nb, ns = apply_forces(RuleState(blue, spent), batch)
            t, _ = best(nb, ns)
            if t + 1 < res[0]:
                res = (t + 1, batch)
        memo[key] = res
        return res

    t, _ = best(b, 0)
    if t == INF:
        return INF, None
    steps, blue, spent = [], b, 0
    while blue != full:
        _, batch = memo[(blue, spent)]
        steps.append(batch)
        blue, spent = apply_forces(RuleState(blue, spent), batch)
    return t, _schedule(b, steps)


def closure(rule: Rule, g: Graph, b: int) -> int:
    """X final coloring of ``b``.  For hopping, the largest reachable one."""
    if rule.synchronous:
        return _sync_layers(rule, g, b)[0]
    memo = {}

    def dfs(blue, spent):
        key = (blue, spent)
        if key in memo:
            return memo[key]
        res = blue
        for u, w in force_list(rule, g, blue, spent):
            fin = dfs(blue | (1 << w), spent | (1 << u))
            if popcount(fin) > popcount(res):
                res = fin
            if res == g.vertices:
                break
        memo[key] = res
        return res

    return dfs(b, 0)


def is_forcing_set(rule: Rule, g: Graph, b: int) -> bool:
    return closure(rule, g, b) == g.vertices


def propagation_time(rule: Rule, g: Graph, b: int):
    """pt_X(G; B), ``INF`` when ``b`` is not a forcing set."""
    if rule.synchronous:
        final, layers = _sync_layers(rule, g, b)
        return len(layers) if final == g.vertices else INF
    return _hop_search(rule, g, b)[0]


def min_propagation_time(rule: Rule, g: Graph, b: int):
    """``(pt, schedule)``; the schedule is None when pt is infinite."""
    if rule.synchronous:
        final, layers = _sync_layers(rule, g, b)
        if final != g.vertices:
            return INF, None
        return len(layers), uniformly_fastest(rule, g, b)
    return _hop_search(rule, g, b)


# ---------------------------------------------------------------------------
# uniformly fastest schedules

def uniformly_fastest(rule: Rule, g: Graph, b: int) -> ForceSchedule:
    """Synchronous saturation with one in-force per new vertex.

    Among the valid sources of a target the lowest index wins; for
    co-symmetric infection rules the most recently forced source is
    preferred first, so every force goes from step i-1 to step i when it can.
    """
    if not rule.has(SIMPLE, NEARLY_WELL_BEHAVED) or rule.stateful:
        raise PreconditionError(f"rule {rule} is not simple and nearly well behaved")
    recent_first = rule.has(CO_SYMMETRIC, INFECTIOUS)
    time = {v: 0 for v in bits(b)}
    blue, steps = b, []
    while blue != g.vertices:
        chosen = {}
        for u, w in force_list(rule, g, blue):
            key = (-time.get(u, -1) if recent_first else 0, u)
            if w not in chosen or key < chosen[w][0]:
                chosen[w] = (key, u)
        chosen = {w: ku[1] for w, ku in chosen.items()}
        if not chosen:
            raise PreconditionError("initial set is not a forcing set")
        t = len(steps) + 1
        for w in chosen:
            time[w] = t
            blue |= 1 << w
        steps.append([(u, w) for w, u in chosen.items()])
    return _schedule(b, steps)


def uniform_choices(rule: Rule, g: Graph, b: int) -> list[dict[int, list[int]]]:
    """Per synchronous step, the valid in-force sources of each new vertex.

    Every uniformly fastest set of forces picks one source per vertex from
    these lists, and every such pick is uniformly fastest.
    """
    if not rule.synchronous:
        raise PreconditionError(f"rule {rule} is not simple and stateless")
    blue, out = b, []
    while blue != g.vertices:
        cand = {}
        for u, w in force_list(rule, g, blue):
            cand.setdefault(w, []).append(u)
        if not cand:
            raise PreconditionError("initial set is not a forcing set")
        out.append(cand)
        for w in cand:
            blue |= 1 << w
    return out


def find_uniform_schedule(rule: Rule, g: Graph, b: int, accept, limit: int = 100_000):
    """First uniformly fastest schedule (in lexicographic source order) for
    which ``accept(schedule)`` holds, or None.  Gives up after ``limit``
    candidates and returns None."""
    layers = uniform_choices(rule, g, b)
    slots = [(i, w, srcs) for i, cand in enumerate(layers) for w, srcs in sorted(cand.items())]
    steps = [[] for _ in layers]
    tried = 0

    def rec(j):
        nonlocal tried
        if j == len(slots):
            tried += 1
            s = _schedule(b, steps)
            return s if accept(s) else None
        i, w, srcs = slots[j]
        for u in srcs:
            if tried >= limit:
                return None
            steps[i].append((u, w))
            found = rec(j + 1)
            steps[i].pop()
            if found is not None:
                return found
        return None

    return rec(0)


def induced_path_schedule(rule: Rule, g: Graph, b: int, limit: int = 100_000):
    """A uniformly fastest schedule whose forcing chains all induce paths."""
    return find_uniform_schedule(rule, g, b, lambda s: all(induces_path(g, c) for c in chains(s)[0]),
                                 limit)


# ---------------------------------------------------------------------------
# exhaustive schedule oracle

def schedule_of_force_set(rule: Rule, g: Graph, b: int, forces) -> ForceSchedule | None:
    """Time-step partition of a set of forces: at each step every force of the
    set that is valid for the current coloring fires.  None if it stalls."""
    pending = set(forces)
    state = RuleState(b, 0)
    steps = []
    while pending:
        valid = set(force_list(rule, g, state.blue, state.spent))
        step = [f for f in pending if f in valid]
        if not step:
            return None
        pending.difference_update(step)
        state = apply_forces(state, step)
        steps.append(step)
    if state.blue != g.vertices:
        return None
    return _schedule(b, steps)


def enumerate_force_sets(rule: Rule, g: Graph, b: int) -> list[frozenset]:
    """Every set of forces arising from a chronological list that colors all
    of V(G) (brute force; meant for n <= 6)."""
    full = g.vertices
    seen = set()
    out = set()

    def dfs(blue, spent, fs):
        if fs in seen:
            return
        seen.add(fs)
        valid = force_list(rule, g, blue, spent)
        if not valid:
            if blue == full:
                out.add(fs)
            return
        for u, w in valid:
            dfs(blue | (1 << w), spent | (1 << u), fs | {(u, w)})

    dfs(b, 0, frozenset())
    return sorted(out, key=sorted)


def enumerate_schedules(rule: Rule, g: Graph, b: int) -> list[ForceSchedule]:
    out = []
    for fs in enumerate_force_sets(rule, g, b):
        s = schedule_of_force_set(rule, g, b, fs)
        if s is not None:
            out.append(s)
    return out


def exhaustive_pt(rule: Rule, g: Graph, b: int):
    """Minimum propagation time over all enumerated schedules."""
    if b == g.vertices:
        return 0
    return min((s.pt for s in enumerate_schedules(rule, g, b)), default=INF)


def is_uniformly_fastest(schedule: ForceSchedule, others) -> bool:
    mine = schedule.times()
    for s in others:
        for v, t in s.times().items():
            if mine.get(v, INF) > t:
                return False
    return True


# ---------------------------------------------------------------------------
# chains

def chains(schedule: ForceSchedule) -> tuple[list[tuple[int, ...]], int]:
    """Maximal forcing chains and the longest chain length (in forces)."""
    out_edges = {}
    pred = {}
    for u, w in sorted(schedule.forces):
        out_edges.setdefault(u, []).append(w)
        pred[w] = u
    if not out_edges:
        return [], 0
    starts = [u for u in sorted(out_edges) if u not in pred]
    reach = set()
    stack = list(starts)
    while stack:
        v = stack.pop()
        if v in reach:
            continue
        reach.add(v)
        stack.extend(out_edges.get(v, ()))
    # sources not reachable from a root lie on a force cycle (skew forcing)
    starts += [u for u in sorted(out_edges) if u not in reach]
    found = []

    def walk(path, on):
        nxt = [w for w in out_edges.get(path[-1], ()) if w not in on]
        if not nxt:
            found.append(tuple(path))
            return
        for w in nxt:
            path.append(w)
            on.add(w)
            walk(path, on)
            on.discard(w)
            path.pop()

    for s in starts:
        walk([s], {s})
    found = [c for c in found if len(c) > 1 and (c[0] not in pred or pred[c[0]] in c)]
    return sorted(set(found)), max((len(c) - 1 for c in found), default=0)


def longest_chain_length(schedule: ForceSchedule) -> int:
    return chains(schedule)[1]


def induces_path(g: Graph, chain) -> bool:
    for i, j in combinations(range(len(chain)), 2):
        if g.has_edge(chain[i], chain[j]) != (j - i == 1):
            return False
    return True


def check_internally_independent(rule: Rule, g: Graph, schedule: ForceSchedule):
    """``(ok, bad_chain)``: ok iff every maximal chain induces a path in g."""
    if not rule.has(LOCAL, SYMMETRIC, SIMPLE):
        raise PreconditionError(f"rule {rule} is not local, symmetric and simple")
    for c in chains(schedule)[0]:
        if not induces_path(g, c):
            return False, c
    return True, None


# ---------------------------------------------------------------------------
# terminus and reversal

def terminus(schedule: ForceSchedule, n: int) -> int:
    """Vertices that perform no force."""
    return full_mask(n) & ~schedule.sources_by(schedule.pt)


def reversal(rule: Rule, g: Graph, b: int) -> int:
    pt, schedule = min_propagation_time(rule, g, b)
    if schedule is None:
        raise ValueError("initial set is not a forcing set")
    return terminus(schedule, g.n)


def max_chain_equals_pt(rule: Rule, g: Graph, b: int) -> bool:
    if not rule.has(NEARLY_WELL_BEHAVED, CO_LOCAL, CO_SYMMETRIC, SIMPLE, INFECTIOUS):
        raise PreconditionError(f"rule {rule} lacks the co-local chain hypotheses")
    s = uniformly_fastest(rule, g, b)
    return longest_chain_length(s) == s.pt
