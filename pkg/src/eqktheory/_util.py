"""Small shared helpers: errors, budgets and a union-find."""

from __future__ import annotations

DEFAULT_MULT_BUDGET = 10**7
DEFAULT_OBJECT_BUDGET = 10**6


class BudgetError(RuntimeError):
    """An enumeration would exceed its configured bound."""

    def __init__(self, what, needed, budget):
        self.what = what
        self.needed = needed
        self.budget = budget
        super().__init__(f"{what}: needs {needed} > budget {budget}")


def check_budget(what, needed, budget):
    if budget is not None and needed > budget:
        raise BudgetError(what, needed, budget)


class UnionFind:
    def __init__(self, items=()):
        self.parent = {}
        self.rank = {}
        for x in items:
            self.add(x)

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x
            self.rank[x] = 0

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x
        return True

    def classes(self):
        """Blocks as lists, in order of first appearance."""
        blocks = {}
        for x in self.parent:
            blocks.setdefault(self.find(x), []).append(x)
        return list(blocks.values())

    def __len__(self):
        return sum(1 for x in self.parent if self.parent[x] == x)
