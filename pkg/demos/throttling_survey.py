"""Throttling numbers over every graph on at most six vertices."""

from collections import Counter
from fractions import Fraction

from forcelab import Z, ZPLUS, census, throttle_product, throttle_weighted
from forcelab.graph import path_graph
from forcelab.throttling import size_at_pt

# paths first: th_Z(P_n) grows like sqrt(n)
for n in (4, 9, 16, 25):
    cert = throttle_weighted(Z, path_graph(n), 1)
    print(f"P{n}: th_Z = {cert.objective}  (|B| = {len(cert.blue_list)}, pt = {cert.pt})")

# product throttling equals the smallest one-step forcing set, when finite
ties = Counter()
for g in census(6):
    prod = throttle_product(Z, g).objective
    if prod != float("inf"):
        ties[prod == size_at_pt(Z, g, 1)] += 1
print("th*_Z == k_Z(G,1):", dict(ties))

# heavier time weight pushes the optimum towards bigger sets
g = path_graph(8)
for w in (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(4)):
    c = throttle_weighted(ZPLUS, g, w)
    print(f"omega={w}: objective {c.objective}, |B| = {len(c.blue_list)}, pt = {c.pt}")
