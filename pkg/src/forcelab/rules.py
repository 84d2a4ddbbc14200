"""Color change rules.

A rule decides which forces ``v -> w`` are valid for a coloring.  Forces are
plain ``(source, target)`` tuples; a coloring is a :class:`RuleState` holding
the blue bitmask and, for stateful rules, the bitmask of vertices that have
already performed a force.

Built-in selectors: ``z``, ``zplus``, ``skew``, ``kforce:<k>``, ``boot:<r>``,
``hop``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .graph import Graph, bits, popcount

Force = tuple[int, int]

LOCAL = "local"
SYMMETRIC = "symmetric"
SIMPLE = "simple"
INFECTIOUS = "infectious"
CO_LOCAL = "co-local"
CO_SYMMETRIC = "co-symmetric"
WELL_BEHAVED = "well-behaved"
NEARLY_WELL_BEHAVED = "nearly-well-behaved"

ALL_FLAGS = (LOCAL, SYMMETRIC, SIMPLE, INFECTIOUS, CO_LOCAL, CO_SYMMETRIC,
             WELL_BEHAVED, NEARLY_WELL_BEHAVED)


class RuleError(ValueError):
    pass


class RuleState(NamedTuple):
    blue: int
    spent: int = 0


@dataclass(frozen=True)
class Rule:
    name: str
    parameter: int | None = None
    flags: frozenset = field(default=frozenset(), compare=False)
    not_flags: frozenset = field(default=frozenset(), compare=False)
    stateful: bool = field(default=False, compare=False)

    @property
    def selector(self) -> str:
        return self.name if self.parameter is None else f"{self.name}:{self.parameter}"

    def has(self, *flags: str) -> bool:
        return all(f in self.flags for f in flags)

    @property
    def synchronous(self) -> bool:
        """Propagation time is computed by performing every valid force each step."""
        return not self.stateful and SIMPLE in self.flags

    def __str__(self):
        return self.selector


_Z_FLAGS = frozenset({LOCAL, SYMMETRIC, SIMPLE, INFECTIOUS, WELL_BEHAVED, NEARLY_WELL_BEHAVED})

Z = Rule("z", None, _Z_FLAGS)
ZPLUS = Rule("zplus", None, frozenset({SIMPLE, INFECTIOUS, WELL_BEHAVED, NEARLY_WELL_BEHAVED}),
             frozenset({LOCAL}))
SKEW = Rule("skew", None, frozenset({LOCAL, SYMMETRIC, SIMPLE, NEARLY_WELL_BEHAVED}),
            frozenset({INFECTIOUS}))
HOP = Rule("hop", None, frozenset({SYMMETRIC}), frozenset({SIMPLE}), stateful=True)


def k_forcing(k: int) -> Rule:
    if k < 1:
        raise RuleError("k-forcing needs k >= 1")
    return Rule("kforce", k, frozenset({LOCAL, SYMMETRIC, SIMPLE, INFECTIOUS, NEARLY_WELL_BEHAVED}))


def bootstrap(r: int) -> Rule:
    if r < 1:
        raise RuleError("r-bootstrap percolation needs r >= 1")
    return Rule("boot", r, frozenset({CO_LOCAL, CO_SYMMETRIC, SIMPLE, INFECTIOUS, NEARLY_WELL_BEHAVED}))


def parse_rule(selector: str) -> Rule:
    s = selector.strip().lower()
    name, _, arg = s.partition(":")
    fixed = {"z": Z, "zplus": ZPLUS, "skew": SKEW, "hop": HOP}
    if name in fixed:
        if arg:
            raise RuleError(f"rule {name!r} takes no parameter")
        return fixed[name]
    if name in ("kforce", "boot"):
        if not arg:
            raise RuleError(f"rule {name!r} needs a parameter, e.g. {name}:2")
        try:
            p = int(arg)
        except ValueError:
            raise RuleError(f"bad parameter in rule selector {selector!r}") from None
        return k_forcing(p) if name == "kforce" else bootstrap(p)
    raise RuleError(f"unknown rule selector {selector!r}")


def builtin_rules(max_param: int = 3) -> list[Rule]:
    out = [Z, ZPLUS, SKEW, HOP]
    out += [k_forcing(k) for k in range(1, max_param + 1)]
    out += [bootstrap(r) for r in range(1, max_param + 1)]
    return out


def rule_flags(rule: Rule) -> frozenset:
    """Declared positive property flags of a built-in rule."""
    if rule.name not in ("z", "zplus", "skew", "hop", "kforce", "boot"):
        raise RuleError(f"unknown rule {rule.name!r}")
    return rule.flags


# ---------------------------------------------------------------------------
# per-rule force generation

def _z(g, blue, spent):
    out = []
    adj = g.adj
    for v in bits(blue):
        white = adj[v] & ~blue
        if white and not white & (white - 1):
            out.append((v, white.bit_length() - 1))
    return out


def _zplus(g, blue, spent):
    white = g.vertices & ~blue
    if not white:
        return []
    out = []
    adj = g.adj
    comps = g.components(white)
    for v in bits(blue):
        wn = adj[v] & white
        if not wn:
            continue
        for c in comps:
            x = wn & c
            if x and not x & (x - 1):
                out.append((v, x.bit_length() - 1))
    return out


def _skew(g, blue, spent):
    out = []
    adj = g.adj
    for v in range(g.n):
        white = adj[v] & ~blue
        if white and not white & (white - 1):
            out.append((v, white.bit_length() - 1))
    return out


def _kforce(g, blue, spent, k):
    out = []
    adj = g.adj
    for v in bits(blue):
        white = adj[v] & ~blue
        if white and popcount(white) <= k:
            out.extend((v, w) for w in bits(white))
    return out


def _boot(g, blue, spent, r):
    out = []
    adj = g.adj
    for w in bits(g.vertices & ~blue):
        b = adj[w] & blue
        if popcount(b) >= r:
            out.extend((v, w) for v in bits(b))
    return out


def _hop(g, blue, spent):
    out = _z(g, blue, spent)
    white = g.vertices & ~blue
    if white:
        adj = g.adj
        for v in bits(blue & ~spent):
            if not adj[v] & white:
                out.extend((v, w) for w in bits(white))
    return out


def force_list(rule: Rule, g: Graph, blue: int, spent: int = 0) -> list[Force]:
    """Valid forces as a list (sorted by source, then target)."""
    name = rule.name
    if name == "z":
        return _z(g, blue, spent)
    if name == "zplus":
        return _zplus(g, blue, spent)
    if name == "skew":
        return _skew(g, blue, spent)
    if name == "kforce":
        return _kforce(g, blue, spent, rule.parameter)
    if name == "boot":
        return sorted(_boot(g, blue, spent, rule.parameter))
    if name == "hop":
        return sorted(set(_hop(g, blue, spent)))
    raise RuleError(f"unknown rule {name!r}")


def valid_forces(rule: Rule, g: Graph, state: RuleState | int) -> set[Force]:
    if isinstance(state, int):
        state = RuleState(state)
    if state.blue >> g.n:
        raise ValueError("blue set is not a subset of V(G)")
    if rule.parameter is None and rule.name in ("kforce", "boot"):
        raise RuleError(f"rule {rule.name!r} is missing its parameter")
    return set(force_list(rule, g, state.blue, state.spent))


def is_valid(rule: Rule, g: Graph, state: RuleState, force: Force) -> bool:
    return force in valid_forces(rule, g, state)


def apply_forces(state: RuleState, forces) -> RuleState:
    blue, spent = state
    for u, w in forces:
        blue |= 1 << w
        spent |= 1 << u
    return RuleState(blue, spent)


def one_step_targets(rule: Rule, g: Graph, blue: int) -> int:
    """Bitmask of vertices turned blue by performing every valid force once.

    Only meaningful for stateless simple rules.
    """
    name = rule.name
    adj = g.adj
    new = 0
    if name == "z" or name == "skew":
        src = blue if name == "z" else g.vertices
        for v in bits(src):
            white = adj[v] & ~blue
            if white and not white & (white - 1):
                new |= white
        return new
    if name == "kforce":
        k = rule.parameter
        for v in bits(blue):
            white = adj[v] & ~blue
            if white and popcount(white) <= k:
                new |= white
        return new
    if name == "boot":
        r = rule.parameter
        for w in bits(g.vertices & ~blue):
            if popcount(adj[w] & blue) >= r:
                new |= 1 << w
        return new
    for _, w in force_list(rule, g, blue):
        new |= 1 << w
    return new
