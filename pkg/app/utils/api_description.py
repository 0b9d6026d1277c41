

def getDescription():
    description = """
Application Overview:

This service clusters undirected graphs by maximizing a ratio objective: every cluster C scores
lambda + 2|E(C)| / w(C), where w is a positive vertex weight and lambda rewards the number of clusters.
With degree weights the objective is normalized associations, so it also optimizes normalized cut and
normalized modularity; with unit weights it maximizes the sum of edge densities.

Endpoints:

- POST /clusterings: clusters a posted edge list. Algorithms are the randomized linear-time pipeline
  (random bipartization followed by a greedy capacitated assignment, with best-of-N seeds),
  a merge-based agglomerative baseline, pairing along a maximum spanning forest, and an exact
  oracle for graphs of at most 12 vertices. The report lists the clusters, the objective and the
  related metrics, and optionally a certified interval for the optimum.

- POST /bounds: the spanning-forest certificate. M is the weight of a maximum spanning forest under
  W(u, v) = 1 / max(deg u, deg v); the optimal objective (degree weights, lambda = 0) lies in
  [M / (3 sqrt n) - 1/3, 2M].

Errors:

Rejected input (self-loops, duplicate edges, missing or non-positive weights, lambda outside [0, 1] for
the pipeline, graphs too large for the oracle) returns 400 with {"error": code, "message": text}.
The same codes are printed by the command-line tool, which exits with status 1 in that case.
"""
    return description
