#!/usr/bin/env python

import heapq
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from .exceptions import ArgumentError, BackendError, CapacityError, ShapeError
from .topology import Snapshot

logger = logging.getLogger(__name__)

EXPONENTIAL_CLOCKS = 'exponential-clocks'
UNIFORM_BOUNDARY = 'uniform-boundary'


def trial_stream(seed, index=None):
    """
    Counter-based generator for ``(seed, index)``; streams for different
    indices are independent whatever order they are consumed in.
    """
    if seed < 0:
        raise ArgumentError('seed must be non-negative, got {seed}', seed=seed)
    spawn_key = () if index is None else (index,)
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=spawn_key)))


@dataclass(frozen=True)
class SpreadConfig:
    source: int
    n: int
    backend: str = UNIFORM_BOUNDARY
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ArgumentError('n must be >= 1, got {n}', n=self.n)
        if self.backend not in BACKENDS:
            raise BackendError('unknown backend {backend}', backend=self.backend)


class RumorBoundary(object):
    """
    Susceptible nodes next to the infected set, each paired with the
    infected node it would catch the rumor from.
    """
    def __init__(self):
        self.frontier = []

    def __len__(self):
        return len(self.frontier)

    def extend(self, infected, candidates):
        self.frontier.extend((v, infected) for v in candidates)

    def draw(self, u):
        """
        Remove and return the entry at uniform position ``u`` in [0, 1).
        """
        i = int(u * len(self.frontier))
        entry = self.frontier[i]
        self.frontier[i] = self.frontier[-1]
        self.frontier.pop()
        return entry


class BaseSpreadBackend(ABC):
    name = None

    @abstractmethod
    def spread(self, g, source, n, rng):
        """
        Return the infection sequence, source first.
        """
        raise NotImplementedError()

    def check(self, g):
        pass

    def run(self, g, cfg, rng=None):
        if cfg.source not in g:
            raise ArgumentError('source {source} is not in the graph', source=cfg.source)
        self.check(g)
        if rng is None:
            rng = trial_stream(cfg.seed)
        sequence = self.spread(g, cfg.source, cfg.n, rng)
        return Snapshot(g, sequence, source=cfg.source, sequence=sequence)


class UniformBoundaryBackend(BaseSpreadBackend):
    name = UNIFORM_BOUNDARY

    def check(self, g):
        if not g.is_tree():
            raise BackendError('{name} backend only runs on trees', name=self.name)

    def spread(self, g, source, n, rng):
        sequence = [source]
        infected = {source}
        boundary = RumorBoundary()
        boundary.extend(source, g.neighbors(source))
        for u in rng.random(n - 1):
            if not boundary:
                raise CapacityError('component of {source} has only {count} nodes, {n} requested',
                                    source=source, count=len(sequence), n=n)
            node, _ = boundary.draw(u)
            infected.add(node)
            sequence.append(node)
            boundary.extend(node, [v for v in g.neighbors(node) if v not in infected])
        return sequence


class ExponentialClocksBackend(BaseSpreadBackend):
    name = EXPONENTIAL_CLOCKS

    def spread(self, g, source, n, rng):
        sequence = [source]
        infected = {source}
        pending = []
        self._arm(g, source, 0.0, infected, pending, rng)
        while len(sequence) < n:
            if not pending:
                raise CapacityError('component of {source} has only {count} nodes, {n} requested',
                                    source=source, count=len(sequence), n=n)
            at, node, _ = heapq.heappop(pending)
            if node in infected:
                continue
            infected.add(node)
            sequence.append(node)
            self._arm(g, node, at, infected, pending, rng)
        return sequence

    @staticmethod
    def _arm(g, node, at, infected, pending, rng):
        targets = [v for v in g.neighbors(node) if v not in infected]
        if not targets:
            return
        for v, delay in zip(targets, rng.standard_exponential(len(targets))):
            heapq.heappush(pending, (at + float(delay), v, node))


BACKENDS = {
    UNIFORM_BOUNDARY: UniformBoundaryBackend(),
    EXPONENTIAL_CLOCKS: ExponentialClocksBackend(),
}


def simulate_si(g, cfg, rng=None):
    snap = BACKENDS[cfg.backend].run(g, cfg, rng=rng)
    logger.debug('simulated %d infections from %d with %s', cfg.n, cfg.source, cfg.backend)
    return snap


def subtree_counts(snap, root, include_empty=False):
    """
    Sizes |T_v^root| for the neighbors v of ``root`` inside the snapshot.

    With ``include_empty`` every host neighbor of ``root`` gets an entry, in
    host order, zero when it is not infected.
    """
    if root not in snap:
        raise ArgumentError('node {root} is not in the snapshot', root=root)
    if not snap.is_tree():
        raise ShapeError('subtree counts need a tree snapshot')
    sizes = snap.subtree_sizes(root)
    if include_empty:
        return [sizes[v] if v in snap else 0 for v in snap.host.neighbors(root)]
    return [sizes[v] for v in snap.neighbors(root)]
