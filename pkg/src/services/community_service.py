"""Divisive community detection bound to sample vertices"""
import time
from typing import Iterable, List, Optional, Tuple

import numpy as np

from src.models.flow import INFINITE, CapacityGraph
from src.models.graph import Graph, NodeSet, node_set
from src.models.partition import AcceptedSplit, CommunityParams, ExpandedPartition, Partition
from src.models.results import KatzParams
from src.services.measures_service import (
    jaccard_communities,
    katz_centrality,
    modularity,
    modularity_contribution,
)
from src.services.mincut_service import min_st_cut
from src.utils.errors import DisconnectedGraphError, UnsplittableCommunityError, ValidationError
from src.utils.logger import get_logger

logger = get_logger(__name__)

# Modularity reported for a community that cannot be split; below the -1/2 floor
UNSPLITTABLE_MODULARITY = -1.0
# Minimum gain for a split to count as a modularity increase
MODULARITY_EPS = 1e-12


class CommunityService:
    """Community detection pipeline: split, accept, join, expand"""

    def __init__(
        self,
        params: CommunityParams = CommunityParams(),
        katz: KatzParams = KatzParams()
    ):
        self.params = params
        self.katz = katz
        self.last_log: List[AcceptedSplit] = []

    def split_net(self, g: Graph, community: Iterable[int], W: Iterable[int]) -> Tuple[NodeSet, NodeSet]:
        """
        Split a community by a minimum cut between its two most central samples

        Katz centrality is evaluated on the community's induced subgraph. Every
        edge has capacity 1, except edges from s (resp. v) to a neighbour that is
        neither v (resp. s) nor a neighbour of v (resp. s), which are pinned at
        infinite capacity.

        Args:
            g: Graph
            community: Vertices of the community
            W: Sample vertices (those outside the community are ignored)

        Returns:
            Tuple (c1, c2) with the more central sample in c1

        Raises:
            UnsplittableCommunityError: fewer than two samples in the community
            DisconnectedGraphError: the community's induced subgraph is disconnected
        """
        members = node_set(community, g.node_count)
        member_set = set(members)
        samples = [w for w in node_set(W) if w in member_set]
        if len(samples) < 2:
            raise UnsplittableCommunityError(
                f"Community of {len(members)} vertices holds {len(samples)} sample(s)"
            )
        sub, mapping = g.induced_subgraph(members)
        if not sub.is_connected():
            raise DisconnectedGraphError(f"Community of {len(members)} vertices is disconnected")

        centrality = katz_centrality(sub, self.katz)
        ranked = sorted(mapping.to_local(samples), key=lambda w: (-centrality[w], w))
        s, v = ranked[0], ranked[1]

        capacities = CapacityGraph(sub)
        ns, nv = set(sub.neighbors[s]), set(sub.neighbors[v])
        for u in ns:
            if u not in nv and u != v:
                capacities.set_capacity(s, u, INFINITE)
        for u in nv:
            if u not in ns and u != s:
                capacities.set_capacity(v, u, INFINITE)

        cut = min_st_cut(capacities, s, v)
        if cut.is_infinite:
            raise UnsplittableCommunityError("No finite cut separates the selected samples")
        c1 = mapping.to_global(cut.source_side)
        c2 = mapping.to_global(cut.sink_side)
        for side in (c1, c2):
            if not g.induced_subgraph(side)[0].is_connected():
                logger.warning(f"Split produced an internally disconnected side of {len(side)} vertices")
        logger.debug(
            f"split_net: s={mapping.local_to_global[s]} v={mapping.local_to_global[v]} "
            f"cut={cut.value:g} sizes=({len(c1)}, {len(c2)})"
        )
        return c1, c2

    def find_partition(
        self,
        g: Graph,
        p: Partition,
        community: Iterable[int],
        W: Iterable[int],
        current_q: Optional[float] = None
    ) -> Tuple[Partition, float]:
        """
        Candidate partition with `community` replaced by its two split halves

        When current_q (the modularity of p) is given, the candidate's modularity
        is updated incrementally from the three affected community terms.

        Returns:
            Tuple (p', Q'); (p, -1) when the community cannot be split
        """
        community = node_set(community)
        try:
            index = p.communities.index(community)
        except ValueError:
            raise ValidationError("Community is not a member of the partition")
        try:
            c1, c2 = self.split_net(g, community, W)
        except (UnsplittableCommunityError, DisconnectedGraphError) as e:
            logger.debug(f"find_partition: community {index} skipped ({e})")
            return p, UNSPLITTABLE_MODULARITY

        candidate = p.replace(index, (c1, c2))
        if current_q is None:
            return candidate, modularity(g, candidate)
        q = (current_q - modularity_contribution(g, community)
             + modularity_contribution(g, c1) + modularity_contribution(g, c2))
        return candidate, q

    def detect_communities(self, g: Graph, W: Iterable[int]) -> Tuple[Partition, ExpandedPartition]:
        """
        Iteratively split communities while the count stays within |W| and Q grows

        Each pass walks a snapshot of the partition taken at pass start; any split
        whose modularity beats the current Q is accepted at once. The result is
        then cleaned of small communities and expanded into overlapping ones.

        Returns:
            Tuple (disjoint partition, expanded partition)
        """
        W = node_set(W, g.node_count)
        if not W:
            raise ValidationError("At least one sample vertex is required")
        if not g.is_connected():
            raise DisconnectedGraphError("Community detection requires a connected graph")

        started = time.perf_counter()
        self.last_log = []
        partition = Partition([tuple(range(g.node_count))])
        if g.edge_count == 0:
            return partition, self.expand_communities(g, partition)

        q_prev = -1.0
        q = modularity(g, partition)
        pass_index = 0
        while len(partition) <= len(W) and q_prev < q:
            q_prev = q
            for community in list(partition.communities):
                candidate, q_i = self.find_partition(g, partition, community, W, current_q=q)
                if q_i > q + MODULARITY_EPS:
                    index = partition.communities.index(community)
                    partition = candidate
                    q = modularity(g, partition)
                    sizes = tuple(len(c) for c in partition.communities[index:index + 2])
                    self.last_log.append(AcceptedSplit(pass_index, index, sizes, q, len(partition), partition))
                    logger.info(
                        f"Pass {pass_index}: split community {index} into {sizes}, "
                        f"Q={q:.6f}, communities={len(partition)}"
                    )
            pass_index += 1

        logger.info(
            f"Divisive loop finished after {pass_index} pass(es): {len(partition)} communities, "
            f"Q={q:.6f} ({time.perf_counter() - started:.2f}s)"
        )
        partition = self.join_communities(g, partition)
        expanded = self.expand_communities(g, partition)
        return partition, expanded

    def join_communities(
        self,
        g: Graph,
        p: Partition,
        small_fraction: Optional[float] = None
    ) -> Partition:
        """
        Merge every small community into the most Jaccard-similar big one

        A community is small when it holds fewer than small_fraction * n vertices.
        Ties go to the lowest-indexed big community; when every community is small
        the largest one is treated as big.
        """
        fraction = self.params.small_fraction if small_fraction is None else small_fraction
        threshold = fraction * g.node_count
        communities = list(p.communities)
        if len(communities) <= 1:
            return Partition(communities)

        def is_big(c: NodeSet) -> bool:
            return len(c) >= threshold

        if not any(is_big(c) for c in communities):
            largest = max(range(len(communities)), key=lambda i: (len(communities[i]), -i))
            promoted = {largest}
        else:
            promoted = set()

        while True:
            big = [i for i, c in enumerate(communities) if is_big(c) or i in promoted]
            small = [i for i in range(len(communities)) if i not in big]
            if not small or not big:
                break
            target = small[0]
            scores = [jaccard_communities(g, communities[target], communities[i]) for i in big]
            best = big[int(np.argmax(scores))]
            logger.debug(
                f"Merging small community {target} ({len(communities[target])} vertices) "
                f"into {best} (J={max(scores):.4f})"
            )
            communities[best] = node_set(communities[best] + communities[target])
            del communities[target]
            promoted = {i - 1 if i > target else i for i in promoted}
        return Partition(communities)

    def expand_communities(self, g: Graph, p: Partition) -> ExpandedPartition:
        """
        Grow each community by hop balls around its members

        A member whose share of in-community neighbours is below r contributes
        its dmax-ball, any other member its dmin-ball; balls are measured in the
        full graph.
        """
        params = self.params
        expanded: List[NodeSet] = []
        for community in p.communities:
            inside = np.zeros(g.node_count, dtype=bool)
            inside[list(community)] = True
            boundary, interior = [], []
            for v in community:
                neighbours = g.neighbors[v]
                n_in = int(np.count_nonzero(inside[list(neighbours)])) if neighbours else 0
                (boundary if n_in < params.r * len(neighbours) else interior).append(v)
            grown = inside.copy()
            if boundary:
                grown |= g.reach_mask(boundary, params.dmax)
            if interior:
                grown |= g.reach_mask(interior, params.dmin)
            expanded.append(tuple(int(v) for v in np.flatnonzero(grown)))
        return ExpandedPartition(expanded, p)
