"""Exact integer transportation solver (score-maximizing).

Small successive-shortest-path min-cost flow over the bipartite supply ->
demand graph.  All arithmetic is integer, so optima are exact; this is the
engine behind the signature-based challenger search.
"""

from __future__ import annotations

from .errors import SolverError

_INF = float("inf")


class _FlowNet:
    def __init__(self, n: int):
        self.n = n
        self.adj: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []
        self.cost: list[int] = []

    def add(self, u: int, v: int, cap: int, cost: int) -> int:
        e = len(self.to)
        self.adj[u].append(e)
        self.to.append(v)
        self.cap.append(cap)
        self.cost.append(cost)
        self.adj[v].append(e + 1)
        self.to.append(u)
        self.cap.append(0)
        self.cost.append(-cost)
        return e

    def min_cost_flow(self, src: int, dst: int, need: int) -> int | None:
        """Push ``need`` units from src to dst; return total cost or None."""
        total_cost = 0
        pushed = 0
        while pushed < need:
            dist = [_INF] * self.n
            in_queue = [False] * self.n
            prev_edge = [-1] * self.n
            dist[src] = 0
            queue = [src]
            in_queue[src] = True
            while queue:
                u = queue.pop(0)
                in_queue[u] = False
                du = dist[u]
                for e in self.adj[u]:
                    if self.cap[e] <= 0:
                        continue
                    v = self.to[e]
                    nd = du + self.cost[e]
                    if nd < dist[v]:
                        dist[v] = nd
                        prev_edge[v] = e
                        if not in_queue[v]:
                            queue.append(v)
                            in_queue[v] = True
            if dist[dst] == _INF:
                return None
            # bottleneck along the shortest path
            bottleneck = need - pushed
            v = dst
            while v != src:
                e = prev_edge[v]
                bottleneck = min(bottleneck, self.cap[e])
                v = self.to[e ^ 1]
            v = dst
            while v != src:
                e = prev_edge[v]
                self.cap[e] -= bottleneck
                self.cap[e ^ 1] += bottleneck
                v = self.to[e ^ 1]
            pushed += bottleneck
            total_cost += bottleneck * dist[dst]
        return total_cost


def solve_transport(
    supply: list[int],
    demand: list[int],
    score: list[list[int]],
    caps: dict[tuple[int, int], int] | None = None,
) -> tuple[int, list[list[int]]] | None:
    """Maximize sum(score[i][j] * x[i][j]) over exact transportation plans.

    Row sums of x must equal ``supply``, column sums ``demand``; optional
    ``caps`` bound individual cells.  Returns (best score, plan), or None
    when no feasible plan exists (only possible with caps).
    """
    m, n = len(supply), len(demand)
    if sum(supply) != sum(demand):
        raise SolverError(
            f"unbalanced transportation: supply {sum(supply)} != demand {sum(demand)}"
        )
    total = sum(supply)
    if total == 0:
        return 0, [[0] * n for _ in range(m)]
    net = _FlowNet(m + n + 2)
    src, dst = m + n, m + n + 1
    for i, su in enumerate(supply):
        if su:
            net.add(src, i, su, 0)
    cell_edges: dict[tuple[int, int], int] = {}
    for i in range(m):
        if not supply[i]:
            continue
        for j in range(n):
            if not demand[j]:
                continue
            cap = min(supply[i], demand[j])
            if caps and (i, j) in caps:
                cap = min(cap, caps[(i, j)])
            if cap > 0:
                cell_edges[(i, j)] = net.add(i, m + j, cap, -score[i][j])
    for j, de in enumerate(demand):
        if de:
            net.add(m + j, dst, de, 0)
    cost = net.min_cost_flow(src, dst, total)
    if cost is None:
        return None
    plan = [[0] * n for _ in range(m)]
    for (i, j), e in cell_edges.items():
        plan[i][j] = net.cap[e ^ 1]  # flow equals reverse-edge capacity
    return -cost, plan
