#!/usr/bin/env python

import logging
from collections import deque
from dataclasses import dataclass

from .centrality import bfs_heuristic_centrality, centrality_all
from .exceptions import ArgumentError, CapacityError, NoCandidateError, ValidationError
from .spread import trial_stream
from .topology import SuspectSet, distance

logger = logging.getLogger(__name__)

TREE_EXACT = 'tree-exact'
BFS_HEURISTIC = 'bfs-heuristic'


@dataclass(frozen=True)
class Estimate:
    chosen: int
    argmax_set: frozenset
    method: str
    tie_broken: bool

    def to_dict(self):
        return {
            'chosen': self.chosen,
            'argmax_set': sorted(self.argmax_set),
            'method': self.method,
            'tie_broken': self.tie_broken,
        }


def map_estimate(snap, suspects, tie_seed=0):
    """
    MAP source under a uniform prior: the suspect in the snapshot with the
    largest rumor centrality, ties settled by a fair draw from ``tie_seed``.

    Non-tree snapshots are scored on the BFS tree rooted at each candidate.
    """
    candidates = sorted(suspects.members & snap.nodes)
    if not candidates:
        raise NoCandidateError('no suspect is among the {n} infected nodes', n=snap.n)

    if snap.is_tree():
        argmax = _exact_argmax(snap, candidates)
        method = TREE_EXACT
    else:
        logger.warning('snapshot of %d nodes has cycles, using the BFS heuristic', snap.n)
        scores = {s: bfs_heuristic_centrality(snap.host, snap.nodes, s) for s in candidates}
        best = max(scores.values())
        argmax = [s for s in candidates if scores[s] == best]
        method = BFS_HEURISTIC

    if len(argmax) == 1:
        return Estimate(argmax[0], frozenset(argmax), method, False)
    pick = int(trial_stream(tie_seed).integers(len(argmax)))
    return Estimate(argmax[pick], frozenset(argmax), method, True)


def _exact_argmax(snap, candidates):
    if len(candidates) == 1:
        return candidates
    return centrality_all(snap).argmax(candidates)


def make_suspects_all(snap):
    return SuspectSet(snap.nodes, SuspectSet.ALL)


def make_suspects_connected(g, anchor, k):
    if k < 1:
        raise ArgumentError('k must be >= 1, got {k}', k=k)
    if anchor not in g:
        raise ArgumentError('anchor {anchor} is not in the graph', anchor=anchor)
    members = [anchor]
    seen = {anchor}
    queue = deque([anchor])
    while queue and len(members) < k:
        u = queue.popleft()
        for v in g.neighbors(u):
            if v in seen:
                continue
            seen.add(v)
            members.append(v)
            queue.append(v)
            if len(members) == k:
                break
    if len(members) < k:
        raise CapacityError('only {count} nodes reachable from {anchor}, {k} requested',
                            count=len(members), anchor=anchor, k=k)
    return SuspectSet(members, SuspectSet.CONNECTED, k)


def make_suspects_two(g, a, b):
    if a == b:
        raise ValidationError('the two suspects must differ, got {a} twice', a=a)
    return SuspectSet((a, b), SuspectSet.TWO, distance(g, a, b))
