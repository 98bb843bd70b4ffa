#!/usr/bin/env python

import logging
import threading
from collections import deque

from .exceptions import (
    ArgumentError, CapacityError, NoPathError, ParseError, ValidationError
)

logger = logging.getLogger(__name__)

MAX_NODES = 10000000


class Graph(object):
    """
    Undirected simple graph over non-negative integer node ids.

    Two kinds exist. An explicit graph holds its whole adjacency. A lazy
    regular graph is the infinite ``delta``-regular tree: node 0 is the
    origin and a node gets its missing neighbors (fresh dense ids) the first
    time ``neighbors`` is asked for it.
    """
    EXPLICIT = 'explicit'
    LAZY_REGULAR = 'lazy-regular'

    def __init__(self, adjacency=None, kind=EXPLICIT, delta=None, max_nodes=MAX_NODES):
        self.kind = kind
        self.delta = delta
        self.max_nodes = max_nodes
        self._adj = {}
        self._expanded = set()
        self._lock = threading.Lock()
        for u, nbrs in (adjacency or {}).items():
            self._adj[u] = sorted(nbrs)

    @classmethod
    def from_edges(cls, edges, max_nodes=MAX_NODES):
        adjacency = {}
        for u, v in edges:
            if u < 0 or v < 0:
                raise ValidationError('negative node id in edge ({u}, {v})', u=u, v=v)
            if u == v:
                raise ValidationError('self-loop on node {u}', u=u)
            adjacency.setdefault(u, set()).add(v)
            adjacency.setdefault(v, set()).add(u)
        if len(adjacency) > max_nodes:
            raise CapacityError('graph has {count} nodes, limit is {limit}',
                                count=len(adjacency), limit=max_nodes)
        return cls(adjacency, max_nodes=max_nodes)

    @classmethod
    def lazy_regular(cls, delta, max_nodes=MAX_NODES):
        if delta < 2:
            raise ArgumentError('regular tree degree must be >= 2, got {delta}', delta=delta)
        graph = cls(kind=cls.LAZY_REGULAR, delta=delta, max_nodes=max_nodes)
        graph._adj[0] = []
        return graph

    @property
    def is_lazy(self):
        return self.kind == self.LAZY_REGULAR

    @property
    def origin(self):
        return 0 if self.is_lazy else None

    def __contains__(self, u):
        return u in self._adj

    def __len__(self):
        return len(self._adj)

    def nodes(self):
        return sorted(self._adj)

    def neighbors(self, u):
        if u not in self._adj:
            raise ArgumentError('node {u} is not in the graph', u=u)
        if self.is_lazy and u not in self._expanded:
            self._expand(u)
        return self._adj[u]

    def known_neighbors(self, u):
        """
        Neighbors materialized so far; never grows a lazy graph.
        """
        if u not in self._adj:
            raise ArgumentError('node {u} is not in the graph', u=u)
        return self._adj[u]

    def degree(self, u):
        return len(self.neighbors(u))

    def edges(self):
        for u in sorted(self._adj):
            for v in self._adj[u]:
                if u < v:
                    yield u, v

    def edge_count(self):
        return sum(len(nbrs) for nbrs in self._adj.values()) // 2

    def is_tree(self):
        if self.is_lazy:
            return True
        if not self._adj:
            return False
        if self.edge_count() != len(self._adj) - 1:
            return False
        return len(_reachable(self.known_neighbors, min(self._adj))) == len(self._adj)

    def _expand(self, u):
        with self._lock:
            if u in self._expanded:
                return
            nbrs = self._adj[u]
            missing = self.delta - len(nbrs)
            if len(self._adj) + missing > self.max_nodes:
                raise CapacityError('lazy regular tree would exceed {limit} nodes', limit=self.max_nodes)
            for _ in range(missing):
                v = len(self._adj)
                self._adj[v] = [u]
                nbrs.append(v)
            self._expanded.add(u)

    def materialize(self, radius):
        """
        Expand every node closer than ``radius`` to the origin.
        """
        frontier = [self.origin]
        for _ in range(radius):
            next_frontier = []
            for u in frontier:
                next_frontier.extend(v for v in self.neighbors(u) if v > u)
            frontier = next_frontier
        return self

    def freeze(self):
        return Graph({u: list(nbrs) for u, nbrs in self._adj.items()},
                     delta=self.delta, max_nodes=self.max_nodes)

    def to_networkx(self):
        import networkx as nx
        graph = nx.Graph()
        graph.add_nodes_from(self._adj)
        graph.add_edges_from(self.edges())
        return graph


class Snapshot(object):
    """
    The observed infected set G_n on a host graph.

    Without ``parent_of`` the snapshot's edges are the host edges induced by
    ``nodes``. With ``parent_of`` (a root has been fixed) the edges are the
    parent links only, which makes it a tree even on a cyclic host.
    """
    def __init__(self, host, nodes, root=None, parent_of=None, source=None, sequence=None):
        self.host = host
        self.nodes = frozenset(nodes)
        self.root = root
        self.parent_of = dict(parent_of) if parent_of is not None else None
        self.source = source
        self.sequence = tuple(sequence) if sequence is not None else None
        if not self.nodes:
            raise ValidationError('a snapshot needs at least one node')
        self._adj = self._build_adjacency()

    def _build_adjacency(self):
        adj = {u: [] for u in self.nodes}
        if self.parent_of is not None:
            for child, parent in self.parent_of.items():
                adj[child].append(parent)
                adj[parent].append(child)
        else:
            for u in self.nodes:
                adj[u] = [v for v in self.host.known_neighbors(u) if v in self.nodes]
        for u in adj:
            adj[u].sort()
        return adj

    @property
    def n(self):
        return len(self.nodes)

    def __len__(self):
        return len(self.nodes)

    def __contains__(self, u):
        return u in self.nodes

    def __iter__(self):
        return iter(sorted(self.nodes))

    def neighbors(self, u):
        if u not in self._adj:
            raise ArgumentError('node {u} is not in the snapshot', u=u)
        return self._adj[u]

    def edge_count(self):
        return sum(len(nbrs) for nbrs in self._adj.values()) // 2

    def is_connected(self):
        return len(_reachable(self.neighbors, min(self.nodes))) == self.n

    def is_tree(self):
        if self.parent_of is not None:
            return True
        return self.edge_count() == self.n - 1 and self.is_connected()

    def bfs(self, root):
        """
        Level order and parent map from ``root``; among equal-depth parents
        the lowest id wins.
        """
        return _bfs_levels(self.neighbors, root, lambda v: True)

    def subtree_sizes(self, root):
        """
        |T_u^root| for every node u.
        """
        order, parent = self.bfs(root)
        sizes = dict.fromkeys(order, 1)
        for u in reversed(order):
            if u in parent:
                sizes[parent[u]] += sizes[u]
        return sizes

    def __repr__(self):
        return '<Snapshot n={} root={} source={}>'.format(self.n, self.root, self.source)


class SuspectSet(object):
    ALL = 'all'
    CONNECTED = 'connected'
    TWO = 'two'
    GENERAL = 'general'

    PATTERNS = (ALL, CONNECTED, TWO, GENERAL)

    def __init__(self, members, pattern=GENERAL, param=None, prior=None):
        self.members = frozenset(members)
        self.pattern = pattern
        self.param = param
        if not self.members:
            raise ValidationError('suspect set is empty')
        if pattern not in self.PATTERNS:
            raise ArgumentError('unknown suspect pattern {pattern}', pattern=pattern)
        if pattern == self.TWO and len(self.members) != 2:
            raise ValidationError('pattern two needs exactly 2 members, got {count}', count=len(self.members))
        if pattern == self.CONNECTED and param != len(self.members):
            raise ValidationError('pattern connected({k}) has {count} members', k=param, count=len(self.members))
        if prior is not None:
            values = set(prior.get(s) for s in self.members)
            if len(values) != 1 or set(prior) != set(self.members):
                raise ValidationError('only a uniform prior over the suspects is supported')

    @property
    def k(self):
        return len(self.members)

    def prior(self):
        from fractions import Fraction
        return {s: Fraction(1, self.k) for s in self.members}

    def __contains__(self, u):
        return u in self.members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def label(self):
        if self.param is None:
            return self.pattern
        return '{}({})'.format(self.pattern, self.param)

    def __repr__(self):
        return '<SuspectSet {} k={}>'.format(self.label(), self.k)


def regular_tree_size(delta, radius):
    if delta == 2:
        return 2 * radius + 1
    return 1 + delta * ((delta - 1) ** radius - 1) // (delta - 2)


def regular_tree(delta, radius, max_nodes=MAX_NODES):
    if delta < 2:
        raise ArgumentError('regular tree degree must be >= 2, got {delta}', delta=delta)
    if radius < 0:
        raise ArgumentError('radius must be >= 0, got {radius}', radius=radius)
    size = regular_tree_size(delta, radius)
    if size > max_nodes:
        raise CapacityError('regular tree ({delta}, {radius}) has {size} nodes, limit is {limit}',
                            delta=delta, radius=radius, size=size, limit=max_nodes)
    return Graph.lazy_regular(delta, max_nodes=max_nodes).materialize(radius).freeze()


def load_edge_list(text, max_nodes=MAX_NODES):
    """
    Parse ``u v`` lines; ``#`` lines and blank lines are skipped.
    """
    lines = text.splitlines() if isinstance(text, str) else text
    edges = []
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError('expected two node ids, got {count} tokens', line=lineno, count=len(tokens))
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError('node ids must be integers: {text!r}', line=lineno, text=line)
        if u < 0 or v < 0:
            raise ParseError('node ids must be non-negative: {text!r}', line=lineno, text=line)
        if u == v:
            raise ValidationError('line {line}: self-loop on node {u}', line=lineno, u=u)
        edges.append((u, v))
    return Graph.from_edges(edges, max_nodes=max_nodes)


def shortest_path(g, u, v):
    """
    BFS path over the materialized edges. On a lazy tree every node between
    two materialized nodes is an ancestor of one of them, so the path never
    needs an expansion and the graph does not grow.
    """
    for w in (u, v):
        if w not in g:
            raise ArgumentError('node {w} is not in the graph', w=w)
    if u == v:
        return [u]
    parent = {u: None}
    queue = deque([u])
    while queue:
        w = queue.popleft()
        for x in g.known_neighbors(w):
            if x in parent:
                continue
            parent[x] = w
            if x == v:
                path = [v]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return path[::-1]
            queue.append(x)
    raise NoPathError('no path between {u} and {v}', u=u, v=v)


def distance(g, u, v):
    return len(shortest_path(g, u, v)) - 1


def bfs_tree(g, root, restrict):
    restrict = frozenset(restrict)
    if root not in restrict:
        raise ArgumentError('root {root} is not in the restricted set', root=root)
    order, parent = _bfs_levels(g.known_neighbors, root, restrict.__contains__)
    if len(order) != len(restrict):
        raise ValidationError('restricted set is not connected ({reached} of {count} reached)',
                              reached=len(order), count=len(restrict))
    return Snapshot(g, restrict, root=root, parent_of=parent)


def walk_away(g, start, hops):
    """
    Node ``hops`` steps from ``start`` on a tree, always stepping to the
    lowest-id neighbor that is not the one just left.
    """
    if not g.is_tree():
        raise ArgumentError('walk_away needs a tree host')
    previous, current = None, start
    for _ in range(hops):
        choices = [v for v in g.neighbors(current) if v != previous]
        if not choices:
            raise CapacityError('tree ends {hops} hops short of the requested distance', hops=hops)
        previous, current = current, choices[0]
    return current


def _bfs_levels(neighbors, root, allowed):
    order = [root]
    parent = {}
    seen = {root}
    level = [root]
    while level:
        next_level = []
        for u in sorted(level):
            for v in neighbors(u):
                if v in seen or not allowed(v):
                    continue
                seen.add(v)
                parent[v] = u
                next_level.append(v)
        next_level.sort()
        order.extend(next_level)
        level = next_level
    return order, parent


def _reachable(neighbors, start):
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in neighbors(u):
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen
