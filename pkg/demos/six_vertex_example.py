"""Walk through a small zero forcing run: synchronous saturation, the
uniformly fastest schedule, and its forcing chains."""

from forcelab import Graph, Z, chains, propagation_time, uniformly_fastest
from forcelab.graph import to_mask
from forcelab.propagation import find_uniform_schedule

# x1..x6 become 0..5
g = Graph(6, [(0, 1), (1, 2), (3, 4), (4, 5), (0, 4), (2, 4), (0, 3), (1, 4), (2, 5)])
b = to_mask([0, 3])

print("pt_Z(G; {x1, x4}) =", propagation_time(Z, g, b))

s = uniformly_fastest(Z, g, b)
print(s.to_text())
found, ell = chains(s)
print("chains:", found, "longest:", ell)

# x6 has two possible sources at the last step; both choices are uniformly fastest
seen = []
find_uniform_schedule(Z, g, b, lambda sch: seen.append(sch) and False)
for sch in seen:
    print(sch.steps[-1], "-> ell =", chains(sch)[1])
