"""Exact optimisation over initial blue sets.

All searches walk subsets by increasing size and, within a size, in
lexicographic order of the sorted vertex lists; the first optimum met is
returned, so results are deterministic.  Weights are exact :class:`fractions.Fraction` values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .graph import Graph, bits, subsets_by_size, subsets_of_size
from .propagation import INF, ForceSchedule, min_propagation_time, propagation_time
from .rules import Rule, bootstrap


def as_weight(w) -> Fraction:
    """Nonnegative rational weight from an int, Fraction, ``"p/q"`` string or float."""
    if isinstance(w, float):
        w = Fraction(w).limit_denominator(10**6)
    else:
        w = Fraction(w)
    if w < 0:
        raise ValueError("weight must be nonnegative")
    return w


def weight_parts(w) -> tuple[int, Fraction]:
    """(integer part, fractional part) with 0 <= fractional part < 1."""
    w = as_weight(w)
    whole = math.floor(w)
    return whole, w - whole


@dataclass(frozen=True)
class ThrottlingCertificate:
    kind: str            # sum | weighted | product | forcing-number | pt-at-size | size-at-pt
    objective: object    # int, Fraction or INF
    blue: int | None
    pt: object
    schedule: ForceSchedule | None
    parameter: object = None
    exact: bool = True

    @property
    def blue_list(self) -> list[int]:
        return [] if self.blue is None else list(bits(self.blue))


def _objective(kind, size, pt, parameter):
    if kind == "product":
        return size * pt
    if kind in ("weighted", "sum"):
        return size + parameter * pt
    if kind in ("forcing-number", "size-at-pt"):
        return size
    if kind == "pt-at-size":
        return pt
    raise ValueError(f"unknown certificate kind {kind!r}")


def replay_certificate(rule: Rule, g: Graph, cert: ThrottlingCertificate) -> bool:
    """Recompute pt of the witnessing set and check the objective is reproduced."""
    if cert.blue is None:
        return cert.objective == INF
    pt, _ = min_propagation_time(rule, g, cert.blue)
    if pt != cert.pt:
        return False
    return _objective(cert.kind, bin(cert.blue).count("1"), pt, cert.parameter) == cert.objective


def _certify(rule, g, kind, objective, blue, parameter=None):
    if blue is None:
        return ThrottlingCertificate(kind, INF, None, INF, None, parameter)
    pt, schedule = min_propagation_time(rule, g, blue)
    return ThrottlingCertificate(kind, objective, blue, pt, schedule, parameter)


@lru_cache(maxsize=8192)
def pt_table(rule: Rule, g: Graph) -> tuple:
    """pt_X(G; B) for every B, indexed by bitmask (intended for n <= 12)."""
    return tuple(propagation_time(rule, g, b) for b in range(1 << g.n))


def forcing_number(rule: Rule, g: Graph) -> ThrottlingCertificate:
    for b in subsets_by_size(g.n):
        if propagation_time(rule, g, b) != INF:
            return _certify(rule, g, "forcing-number", bin(b).count("1"), b)
    return _certify(rule, g, "forcing-number", INF, None)


def pt_at_size(rule: Rule, g: Graph, k: int):
    """Least pt over forcing sets of size exactly k (INF if there are none)."""
    if not 0 <= k <= g.n:
        raise ValueError("size out of range")
    best = INF
    for b in subsets_of_size(g.n, k):
        best = min(best, propagation_time(rule, g, b))
    return best


def size_at_pt(rule: Rule, g: Graph, p: int):
    """Least |B| over forcing sets with pt exactly p (INF if unattainable)."""
    if p < 0:
        raise ValueError("propagation time must be nonnegative")
    for b in subsets_by_size(g.n):
        if propagation_time(rule, g, b) == p:
            return bin(b).count("1")
    return INF


def size_at_pt_certificate(rule: Rule, g: Graph, p: int) -> ThrottlingCertificate:
    for b in subsets_by_size(g.n):
        if propagation_time(rule, g, b) == p:
            return _certify(rule, g, "size-at-pt", bin(b).count("1"), b, p)
    return _certify(rule, g, "size-at-pt", INF, None, p)


def throttle_weighted(rule: Rule, g: Graph, omega=1) -> ThrottlingCertificate:
    """min |B| + omega * pt(G; B) over all B, with a witnessing set."""
    omega = as_weight(omega)
    n = g.n
    best, best_b = INF, None
    for size in range(n + 1):
        # pt >= 0, so nothing of this size can beat the incumbent strictly
        if size >= best:
            break
        for b in subsets_of_size(n, size):
            pt = propagation_time(rule, g, b)
            if pt == INF:
                continue
            obj = size + omega * pt
            if obj < best:
                best, best_b = obj, b
    kind = "sum" if omega == 1 else "weighted"
    obj = int(best) if best.denominator == 1 else best
    return _certify(rule, g, kind, obj, best_b, omega)


def throttling_number(rule: Rule, g: Graph) -> ThrottlingCertificate:
    return throttle_weighted(rule, g, 1)


def throttle_product(rule: Rule, g: Graph) -> ThrottlingCertificate:
    """min |B| * pt(G; B) over forcing sets B that are proper subsets of V(G).

    INF (with an empty certificate) when V(G) is the only forcing set.
    """
    n = g.n
    best, best_b = INF, None
    for size in range(n):
        # proper subsets have pt >= 1, so the product is at least |B|
        if size >= best:
            break
        for b in subsets_of_size(n, size):
            pt = propagation_time(rule, g, b)
            if pt == INF:
                continue
            obj = size * pt
            if obj < best:
                best, best_b = obj, b
    return _certify(rule, g, "product", best, best_b)


def bootstrap_throttle(g: Graph, r: int) -> ThrottlingCertificate:
    """Throttling number for r-bootstrap percolation."""
    return throttle_weighted(bootstrap(r), g, 1)


def brute_force_weighted(rule: Rule, g: Graph, omega=1):
    """Unpruned min over all subsets, for cross-checking the pruned search."""
    omega = as_weight(omega)
    table = pt_table(rule, g)
    return min(bin(b).count("1") + omega * table[b] for b in range(1 << g.n) if table[b] != INF)
