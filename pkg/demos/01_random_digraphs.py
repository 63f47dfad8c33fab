"""
Random digraphs and the feedforward/feedback split
==================================================

Sample a directed Erdos-Renyi graph, count arcs above and below the diagonal
under the identity ordering, and see what renumbering does to the counts.
"""
from fasratio.graph import VertexOrdering, arc_split, format_edge_list, relabel, sample_digraph

d = sample_digraph(n=8, p=0.4, seed=1)
print(d)
print(format_edge_list(d))

# X: arcs i -> j with i < j, Y: arcs with i > j
split = arc_split(d)
print("identity ordering:", split)

# reversing the ordering swaps the two counts
rev = VertexOrdering.identity(d.n).reversed()
print("reversed ordering:", arc_split(d, rev))

# renumbering the vertices materialises the permuted adjacency matrix
order = VertexOrdering((3, 0, 7, 1, 6, 2, 5, 4))
moved = relabel(d, order)
print("split under", order.ranks, "=", arc_split(d, order))
print("same split after relabel:", arc_split(moved))
