#!/usr/bin/env python

import csv
import io
import json

from .exceptions import ParseError, ValidationError
from .topology import Graph, Snapshot

REPORT_COLUMNS = (
    'scenario', 'delta', 'n', 'k', 'd', 'trials', 'seed',
    'empirical_pc', 'ci_low', 'ci_high', 'exact_pc', 'exact_method', 'asymptotic_pc',
)

CENTRALITY_COLUMNS = ('node', 'subtree_size', 'log_centrality')


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=2)


def loads(text):
    try:
        return json.loads(text)
    except ValueError as e:
        raise ParseError('invalid JSON: {error}', line=getattr(e, 'lineno', None), error=e.msg)


def snapshot_to_dict(snap):
    edges = sorted((u, v) for u in snap.nodes for v in snap.neighbors(u) if u < v)
    return {
        'n': snap.n,
        'source': snap.source,
        'nodes': sorted(snap.nodes),
        'edges': [list(e) for e in edges],
        'sequence': list(snap.sequence) if snap.sequence is not None else None,
    }


def snapshot_from_dict(doc):
    """
    Rebuild a snapshot whose host is exactly the stored infected subgraph.
    """
    if not isinstance(doc, dict):
        raise ValidationError('snapshot document must be an object, got {kind}', kind=type(doc).__name__)
    for key in ('nodes', 'edges'):
        if not isinstance(doc.get(key), list):
            raise ValidationError('snapshot document needs a list {key!r}', key=key)
    adjacency = {_node_id(u): set() for u in doc['nodes']}
    for edge in doc['edges']:
        if not isinstance(edge, list) or len(edge) != 2:
            raise ValidationError('edge {edge!r} must be a pair of node ids', edge=edge)
        u, v = _node_id(edge[0]), _node_id(edge[1])
        if u not in adjacency or v not in adjacency:
            raise ValidationError('edge ({u}, {v}) leaves the node set', u=u, v=v)
        if u == v:
            raise ValidationError('self-loop on node {u}', u=u)
        adjacency[u].add(v)
        adjacency[v].add(u)
    if not adjacency:
        raise ValidationError('snapshot document lists no nodes')
    if 'n' in doc and doc['n'] != len(adjacency):
        raise ValidationError('n={n} but {count} distinct nodes listed', n=doc['n'], count=len(adjacency))
    source = doc.get('source')
    if source is not None and _node_id(source) not in adjacency:
        raise ValidationError('source {source} is not a listed node', source=source)
    sequence = doc.get('sequence')
    if sequence is not None:
        if not isinstance(sequence, list) or sorted(_node_id(u) for u in sequence) != sorted(adjacency):
            raise ValidationError('sequence must list every node exactly once')
        sequence = [_node_id(u) for u in sequence]
    host = Graph(adjacency)
    snap = Snapshot(host, adjacency, source=None if source is None else _node_id(source), sequence=sequence)
    if not snap.is_connected():
        raise ValidationError('snapshot is not connected')
    return snap


def _node_id(value):
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ValidationError('node ids must be non-negative integers, got {value!r}', value=value)
    return value


def report_rows_to_csv(rows):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=REPORT_COLUMNS, extrasaction='ignore', lineterminator='\n')
    writer.writeheader()
    for row in rows:
        writer.writerow({key: _cell(row.get(key)) for key in REPORT_COLUMNS})
    return buf.getvalue()


def centrality_rows_to_csv(report):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(CENTRALITY_COLUMNS)
    for node, size, log_value in report.rows():
        writer.writerow((node, size, repr(log_value)))
    return buf.getvalue()


def _cell(value):
    if value is None:
        return ''
    if isinstance(value, float):
        return repr(value)
    return value
