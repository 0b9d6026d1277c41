from builtins import bool, int, list, range


class DisjointSet:
    """Union by rank with path compression over vertices 0..n-1."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, node: int) -> int:
        root = node
        while self.parent[root] != root:
            root = self.parent[root]
        # path compression
        while self.parent[node] != root:
            self.parent[node], node = root, self.parent[node]
        return root

    def union(self, u: int, v: int) -> bool:
        """Merge the sets of u and v; False if they were already joined."""
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            return False
        # Attach smaller rank tree under root of high rank tree
        if self.rank[ru] < self.rank[rv]:
            ru, rv = rv, ru
        self.parent[rv] = ru
        if self.rank[ru] == self.rank[rv]:
            self.rank[ru] += 1
        return True
