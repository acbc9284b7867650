"""Maximum flow / minimum s-v cut by Dinic's blocking-flow method"""
import math
from collections import deque
from typing import List

from src.models.flow import CapacityGraph, Cut
from src.models.graph import node_set
from src.utils.errors import ValidationError
from src.utils.logger import get_logger

logger = get_logger(__name__)


class ResidualNetwork:
    """
    Arc-list residual network

    Each undirected edge becomes arcs 2k and 2k+1, opposed and each carrying the
    edge capacity; pushing f along one arc frees f on its twin.
    """

    def __init__(self, n: int):
        self.n = n
        self.head: List[List[int]] = [[] for _ in range(n)]
        self.to: List[int] = []
        self.cap: List[float] = []

    def add_edge(self, u: int, v: int, capacity: float) -> None:
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(capacity)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(capacity)

    def levels(self, s: int) -> List[int]:
        """BFS distance from s along arcs with residual capacity (-1 = unreached)"""
        level = [-1] * self.n
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for arc in self.head[u]:
                v = self.to[arc]
                if level[v] < 0 and self.cap[arc] > 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level

    def _augment(self, s: int, t: int, level: List[int], pointer: List[int]) -> float:
        """Find and push one s-t path in the level graph (iterative DFS)"""
        path: List[int] = []
        u = s
        while True:
            if u == t:
                pushed = min(self.cap[arc] for arc in path)
                for arc in path:
                    self.cap[arc] -= pushed
                    self.cap[arc ^ 1] += pushed
                return pushed
            arcs = self.head[u]
            advanced = False
            while pointer[u] < len(arcs):
                arc = arcs[pointer[u]]
                v = self.to[arc]
                if self.cap[arc] > 0 and level[v] == level[u] + 1:
                    path.append(arc)
                    u = v
                    advanced = True
                    break
                pointer[u] += 1
            if not advanced:
                if not path:
                    return 0.0
                # dead end: prune u from this phase
                level[u] = -1
                arc = path.pop()
                u = self.to[arc ^ 1]
                pointer[u] += 1

    def max_flow(self, s: int, t: int) -> float:
        flow = 0.0
        while True:
            level = self.levels(s)
            if level[t] < 0:
                return flow
            pointer = [0] * self.n
            while True:
                pushed = self._augment(s, t, level, pointer)
                if pushed <= 0:
                    break
                flow += pushed


def min_st_cut(cg: CapacityGraph, s: int, v: int) -> Cut:
    """
    Minimum s-v cut of an undirected capacitated graph

    Infinite capacities are replaced by (sum of finite capacities) + 1, which no
    finite minimum cut can contain. The source side is the set reachable from s
    in the final residual network (the minimum cut nearest s).

    Returns:
        Cut; its value is math.inf when no finite cut separates s and v
    """
    g = cg.base
    n = g.node_count
    if not (0 <= s < n and 0 <= v < n):
        raise ValidationError(f"Terminals ({s}, {v}) out of range for {n} vertices")
    if s == v:
        raise ValidationError(f"Source and sink coincide ({s})")

    big = cg.finite_total() + 1.0
    network = ResidualNetwork(n)
    for a, b in g.edges():
        c = cg.capacity(a, b)
        network.add_edge(a, b, big if math.isinf(c) else c)

    flow = network.max_flow(s, v)
    reachable = [lvl >= 0 for lvl in network.levels(s)]
    source_side = node_set(i for i in range(n) if reachable[i])
    sink_side = node_set(i for i in range(n) if not reachable[i])

    value = 0.0
    for a, b in g.edges():
        if reachable[a] != reachable[b]:
            value += cg.capacity(a, b)
    if flow >= big:
        value = math.inf
        logger.debug(f"No finite cut separates {s} and {v}")
    return Cut(source_side=source_side, sink_side=sink_side, value=value, source=s, sink=v)
