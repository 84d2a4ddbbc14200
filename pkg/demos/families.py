"""Forbidden induced subgraph families and what they predict."""

from forcelab import Z, ZPLUS, census
from forcelab.forbidden import (enumerate_product_family, enumerate_weighted_family,
                                minimalize, verify_characterization)
from forcelab.graph import cycle_graph

fam = minimalize(enumerate_product_family(ZPLUS, 2))
print(fam.to_text())

fam = enumerate_weighted_family(Z, 0, 1, 4)
print("Z, k=0, omega=1:", fam.keys())

# a member inside C6 means th_Z(C6) < 6
hit = fam.contained_in(cycle_graph(6))
print("C6 contains", hit[0].edges(), "at", hit[1])

rep = verify_characterization(Z, 0, 1, census_max=6, family=fam)
print(f"checked {rep.checked} graphs, counterexamples: {len(rep.counterexamples)}")

# how many census graphs each family member is responsible for
first = [fam.contained_in(g) for g in census(6)]
for h in fam.members:
    print(h.edges(), sum(1 for hit in first if hit and hit[0] == h))
