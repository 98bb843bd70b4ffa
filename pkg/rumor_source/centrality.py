#!/usr/bin/env python

import logging
import math
from dataclasses import dataclass
from enum import IntEnum

from scipy.special import gammaln

from .exceptions import ArgumentError, ShapeError
from .topology import bfs_tree

logger = logging.getLogger(__name__)


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class CentralityEntry:
    node: int
    centrality: int
    log_centrality: float
    subtree_size: int

    @property
    def comparison_key(self):
        return self.centrality


@dataclass(frozen=True)
class LocalCenterVerdict:
    is_center: bool
    tied_neighbor: object = None


class CentralityReport(object):
    """
    Rumor centrality of every node of a tree snapshot.

    ``subtree_size`` of an entry is measured with ``root`` (the lowest node
    id) as the source.
    """
    def __init__(self, root, n, entries):
        self.root = root
        self.n = n
        self.entries = entries

    def __getitem__(self, node):
        return self.entries[node]

    def __contains__(self, node):
        return node in self.entries

    def __len__(self):
        return len(self.entries)

    def centrality(self, node):
        return self.entries[node].centrality

    def argmax(self, candidates=None):
        candidates = sorted(self.entries if candidates is None else candidates)
        best = max(self.entries[u].comparison_key for u in candidates)
        return [u for u in candidates if self.entries[u].comparison_key == best]

    def rows(self):
        for node in sorted(self.entries):
            entry = self.entries[node]
            yield node, entry.subtree_size, entry.log_centrality


def _require_tree(snap, *nodes):
    for u in nodes:
        if u not in snap:
            raise ArgumentError('node {u} is not in the snapshot', u=u)
    if not snap.is_tree():
        raise ShapeError('exact rumor centrality needs a tree snapshot; BFS-tree it first')


def rumor_centrality(snap, root):
    """
    n! / prod_u |T_u^root|: the number of infection orders of the snapshot
    that start at ``root``.
    """
    _require_tree(snap, root)
    sizes = snap.subtree_sizes(root)
    return math.factorial(snap.n) // math.prod(sizes.values())


def log_rumor_centrality(snap, root):
    _require_tree(snap, root)
    sizes = snap.subtree_sizes(root)
    return float(gammaln(snap.n + 1)) - math.fsum(math.log(s) for s in sizes.values())


def centrality_all(snap):
    """
    All centralities from one rooted pass, then
    R(child) = R(parent) * |T_child| / (n - |T_child|) down the tree.
    """
    root = min(snap.nodes)
    _require_tree(snap, root)
    n = snap.n
    order, parent = snap.bfs(root)
    sizes = snap.subtree_sizes(root)

    value = {root: math.factorial(n) // math.prod(sizes.values())}
    log_value = {root: float(gammaln(n + 1)) - math.fsum(math.log(s) for s in sizes.values())}
    for u in order[1:]:
        p, s = parent[u], sizes[u]
        value[u] = value[p] * s // (n - s)
        log_value[u] = log_value[p] + math.log(s) - math.log(n - s)

    entries = {
        u: CentralityEntry(u, value[u], log_value[u], sizes[u]) for u in order
    }
    return CentralityReport(root, n, entries)


def local_rumor_center(snap, omega, sub_neighborhood):
    _require_tree(snap, omega, *sub_neighborhood)
    nbrs = set(snap.neighbors(omega))
    outside = [u for u in sub_neighborhood if u not in nbrs]
    if outside:
        raise ArgumentError('{nodes} are not neighbors of {omega}', nodes=sorted(outside), omega=omega)

    sizes = snap.subtree_sizes(omega)
    n = snap.n
    is_center = all(2 * sizes[u] <= n for u in sub_neighborhood)
    tied = [u for u in sub_neighborhood if 2 * sizes[u] == n]
    return LocalCenterVerdict(is_center, tied[0] if len(tied) == 1 else None)


def compare_centrality(snap, u, v):
    """
    Order R(u) against R(v) exactly through the product of
    |T_w^u| / (n - |T_w^u|) over the path from u to v.
    """
    _require_tree(snap, u, v)
    if u == v:
        return Ordering.EQUAL
    n = snap.n
    sizes = snap.subtree_sizes(u)
    _, parent = snap.bfs(u)
    num = den = 1
    w = v
    while w != u:
        num *= sizes[w]
        den *= n - sizes[w]
        w = parent[w]
    # R(v) / R(u) = num / den
    if num > den:
        return Ordering.LESS
    if num < den:
        return Ordering.GREATER
    return Ordering.EQUAL


def bfs_heuristic_centrality(g, snap_nodes, s):
    tree = bfs_tree(g, s, snap_nodes)
    return rumor_centrality(tree, s)
