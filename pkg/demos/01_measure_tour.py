"""A tour of the eight centrality measures on small named graphs.

Builds a path, a star, a cycle with a chord, and a small random graph,
then prints every measure side by side. Things to look for: the star's
hub dominates everything; the cycle's chord breaks vertex-transitivity;
betweenness is zero everywhere on a complete graph.
"""

from graphbench import Graph, all_measures, centrality_csv, erdos_renyi
from graphbench.centrality import MEASURES, SHORT_LABELS

GRAPHS = {
    "path P5": Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)]),
    "star S5": Graph(5, [(0, 1), (0, 2), (0, 3), (0, 4)]),
    "cycle C6 + chord": Graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (0, 3)]),
    "complete K4": Graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)]),
    "random n=12 p=0.4": erdos_renyi(12, 0.4, seed=42),
}

for name, g in GRAPHS.items():
    print(f"\n=== {name}  (n={g.n}, m={g.m}) ===")
    vectors = all_measures(g)
    header = "vertex " + " ".join(f"{SHORT_LABELS[m]:>10s}" for m in MEASURES)
    print(header)
    for v in range(g.n):
        row = " ".join(f"{vectors[m].values[v]:10.4f}" for m in MEASURES)
        print(f"{v:6d} {row}")

print("\nThe same numbers as the 6-decimal CSV interchange format:")
print(centrality_csv(all_measures(GRAPHS["path P5"])))
