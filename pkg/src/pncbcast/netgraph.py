"""Topology model, standard topologies, qualified cuts, and minimum
qualified vertex-cut computation.

A cut (V1, V2) splits the nodes with the source X in V1.  Its vertex-cut
size is the number of V1 nodes that border V2.  The cut is *qualified* when
X itself does not border V2, i.e. V2 contains no neighbor of X.  The
minimum qualified vertex-cut size n drives the broadcast throughput bound
n/(n+1).

Two independent routes compute the minimum:

* brute force over all V2 subsets (graphs up to 14 nodes), and
* per-target vertex-split max-flow (Menger), with an articulation-point
  screen for the n=1 case and an early exit at the resulting lower bound.

Node ids are dense integers 0..n-1 with the source fixed at id 0, so
serialized topologies stay stable.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from itertools import combinations

_INF = 10**9


class NoQualifiedCutError(ValueError):
    """The network is trivial (every node neighbors X): no qualified cut."""


@dataclass(frozen=True)
class Cut:
    """A cut identified by its source-free side V2 (V1 is the complement)."""

    v2: frozenset


class Network:
    """Undirected, loopless, connected graph with a designated source."""

    def __init__(self, node_count: int, edges, source: int = 0, meta: dict | None = None):
        if node_count < 2:
            raise ValueError("need at least two nodes")
        if source != 0:
            raise ValueError("the source is fixed at node id 0")
        adj = [set() for _ in range(node_count)]
        seen = set()
        for u, v in edges:
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise ValueError(f"edge ({u},{v}) out of range")
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                continue
            seen.add(key)
            adj[u].add(v)
            adj[v].add(u)
        self.node_count = node_count
        self.source = source
        self.adj = tuple(frozenset(s) for s in adj)
        self.meta = dict(meta or {})
        self._edge_list = tuple(sorted(seen))
        if not self._connected():
            raise ValueError("graph is not connected")

    def _connected(self) -> bool:
        seen = {0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for v in self.adj[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return len(seen) == self.node_count

    def neighbors(self, k: int) -> frozenset:
        if not 0 <= k < self.node_count:
            raise ValueError(f"unknown node {k}")
        return self.adj[k]

    def edges(self):
        return self._edge_list

    def bfs_distances(self, start: int) -> list:
        dist = [None] * self.node_count
        dist[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in self.adj[u]:
                if dist[v] is None:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        return dist

    def to_json(self) -> str:
        payload = {
            "nodes": self.node_count,
            "edges": [list(e) for e in self._edge_list],
            "source": self.source,
        }
        if self.meta:
            meta = dict(self.meta)
            if "coord_of" in meta:
                meta["coord_of"] = [list(rc) for rc in meta["coord_of"]]
            if "source_pos" in meta:
                meta["source_pos"] = list(meta["source_pos"])
            payload["meta"] = meta
        return json.dumps(payload)

    @classmethod
    def from_json(cls, blob: str) -> "Network":
        d = json.loads(blob)
        meta = d.get("meta") or {}
        if "coord_of" in meta:
            meta["coord_of"] = tuple(tuple(rc) for rc in meta["coord_of"])
        if "source_pos" in meta:
            meta["source_pos"] = tuple(meta["source_pos"])
        return cls(int(d["nodes"]), [tuple(e) for e in d["edges"]], int(d["source"]), meta)

    def __repr__(self) -> str:  # pragma: no cover
        kind = self.meta.get("kind", "net")
        return f"Network({kind}, n={self.node_count}, m={len(self._edge_list)})"


def from_edges(node_count: int, edges, meta: dict | None = None) -> Network:
    return Network(node_count, edges, 0, meta)


# ---------------------------------------------------------------------------
# Standard topologies
# ---------------------------------------------------------------------------

def make_line(n: int) -> Network:
    """Path of n nodes with the source at one end."""
    if n < 2:
        raise ValueError("line needs n >= 2")
    return from_edges(n, [(i, i + 1) for i in range(n - 1)], {"kind": "line"})


def make_ring(n: int) -> Network:
    """Cycle of n nodes."""
    if n < 3:
        raise ValueError("ring needs n >= 3")
    edges = [(i, (i + 1) % n) for i in range(n)]
    return from_edges(n, edges, {"kind": "ring"})


def make_chord_ring_fig10() -> Network:
    """The 6-node chord ring: K6 minus the perfect matching X-3, 1-4, 2-5."""
    missing = {(0, 3), (1, 4), (2, 5)}
    edges = [e for e in combinations(range(6), 2) if e not in missing]
    return from_edges(6, edges, {"kind": "chord_ring"})


def make_grid(M: int, N: int, source_pos) -> Network:
    """M x N grid with the source at the given (row, col).

    The source cell gets id 0; remaining cells are numbered row-major.
    """
    if M < 2 or N < 2:
        raise ValueError("grid needs M, N >= 2")
    sr, sc = source_pos
    if not (0 <= sr < M and 0 <= sc < N):
        raise ValueError(f"source position {source_pos} outside {M}x{N} grid")
    coord_of = [(sr, sc)]
    for r in range(M):
        for c in range(N):
            if (r, c) != (sr, sc):
                coord_of.append((r, c))
    id_of = {rc: i for i, rc in enumerate(coord_of)}
    edges = []
    for r in range(M):
        for c in range(N):
            if r + 1 < M:
                edges.append((id_of[(r, c)], id_of[(r + 1, c)]))
            if c + 1 < N:
                edges.append((id_of[(r, c)], id_of[(r, c + 1)]))
    meta = {
        "kind": "grid",
        "M": M,
        "N": N,
        "source_pos": (sr, sc),
        "coord_of": tuple(coord_of),
    }
    return from_edges(M * N, edges, meta)


def make_fig2() -> Network:
    """Six-node network whose throughput cannot reach the 2/3 bound.

    Reconstructed from the slot-set feasibility constraints it must induce:
    the source X has exactly two neighbors (ids 1, 2), a shared relay (id 3)
    is adjacent to both of them and to nothing else, and each source
    neighbor feeds one further relay (ids 4, 5) which are adjacent to each
    other.
    """
    edges = [(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 5), (4, 5)]
    meta = {
        "kind": "fig2",
        "names": {0: "X", 1: "X0", 2: "X1", 3: "1", 4: "2", 5: "3"},
    }
    return from_edges(6, edges, meta)


# ---------------------------------------------------------------------------
# Cuts
# ---------------------------------------------------------------------------

def _check_cut(net: Network, cut: Cut) -> None:
    if not cut.v2:
        raise ValueError("V2 must be nonempty")
    if net.source in cut.v2:
        raise ValueError("V2 must not contain the source")
    for v in cut.v2:
        if not 0 <= v < net.node_count:
            raise ValueError(f"unknown node {v} in V2")


def is_trivial(net: Network) -> bool:
    """True when every node is a neighbor of the source."""
    return len(net.adj[net.source]) == net.node_count - 1


def vertex_cut_size(net: Network, cut: Cut) -> int:
    """|V1'|: number of V1 nodes adjacent to some V2 node."""
    _check_cut(net, cut)
    v2 = cut.v2
    return sum(
        1
        for u in range(net.node_count)
        if u not in v2 and not net.adj[u].isdisjoint(v2)
    )


def is_qualified(net: Network, cut: Cut) -> bool:
    """True iff the source does not border V2."""
    _check_cut(net, cut)
    return net.adj[net.source].isdisjoint(cut.v2)


# ---------------------------------------------------------------------------
# Minimum qualified vertex-cut, route 1: brute force
# ---------------------------------------------------------------------------

def min_qualified_vertex_cut_brute(net: Network, max_nodes: int = 14) -> int:
    """Enumerate every qualified V2; exact oracle for small graphs."""
    if is_trivial(net):
        raise NoQualifiedCutError("trivial network: no qualified cut exists")
    if net.node_count > max_nodes:
        raise ValueError(f"brute force capped at {max_nodes} nodes")
    x = net.source
    pool = sorted(set(range(net.node_count)) - {x} - net.adj[x])
    best = _INF
    for mask in range(1, 1 << len(pool)):
        v2 = {pool[i] for i in range(len(pool)) if mask >> i & 1}
        size = sum(
            1
            for u in range(net.node_count)
            if u not in v2 and not net.adj[u].isdisjoint(v2)
        )
        if size < best:
            best = size
    return best


# ---------------------------------------------------------------------------
# Minimum qualified vertex-cut, route 2: vertex-split max-flow
# ---------------------------------------------------------------------------

def _has_non_source_articulation(net: Network) -> bool:
    """Iterative Tarjan articulation-point scan, ignoring the source.

    A qualified cut of size 1 exists iff some non-source node is an
    articulation point (its removal leaves a component without X, which
    then contains no neighbor of X and so forms a qualified V2).
    """
    n = net.node_count
    disc = [0] * n
    low = [0] * n
    timer = 1
    root = 0
    stack = [(root, -1, iter(net.adj[root]))]
    disc[root] = low[root] = timer
    timer += 1
    root_children = 0
    while stack:
        u, parent, it = stack[-1]
        advanced = False
        for v in it:
            if v == parent:
                continue
            if disc[v]:
                low[u] = min(low[u], disc[v])
            else:
                disc[v] = low[v] = timer
                timer += 1
                if u == root:
                    root_children += 1
                stack.append((v, u, iter(net.adj[v])))
                advanced = True
                break
        if not advanced:
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[u])
                if p != root and low[u] >= disc[p] and p != net.source:
                    return True
    if root == net.source:
        return False
    return root_children > 1  # pragma: no cover - root is always the source


class _SplitFlow:
    """Max-flow on the vertex-split digraph, reused across targets.

    Node u becomes u_in=2u -> u_out=2u+1 with capacity 1 (infinite for the
    two terminals); each undirected edge {a,b} becomes infinite-capacity
    arcs a_out->b_in and b_out->a_in.  The max flow from X_out to v_in
    equals the minimum X-v vertex separator for non-adjacent X, v.
    """

    def __init__(self, net: Network):
        self.net = net
        n = net.node_count
        self.head = [[] for _ in range(2 * n)]
        self.to = []
        self.cap = []
        self.node_arc = [0] * n
        for u in range(n):
            self.node_arc[u] = self._add_arc(2 * u, 2 * u + 1, 1)
        for u, v in net.edges():
            self._add_arc(2 * u + 1, 2 * v, _INF)
            self._add_arc(2 * v + 1, 2 * u, _INF)
        self._base_cap = list(self.cap)

    def _add_arc(self, frm: int, to: int, cap: int) -> int:
        idx = len(self.to)
        self.to.append(to)
        self.cap.append(cap)
        self.head[frm].append(idx)
        self.to.append(frm)
        self.cap.append(0)
        self.head[to].append(idx + 1)
        return idx

    def min_separator(self, s: int, t: int, cap_limit: int) -> int:
        self.cap[:] = self._base_cap
        self.cap[self.node_arc[s]] = _INF
        self.cap[self.node_arc[t]] = _INF
        src, sink = 2 * s + 1, 2 * t
        flow = 0
        parent = [-1] * len(self.head)
        while flow < cap_limit:
            for i in range(len(parent)):
                parent[i] = -1
            parent[src] = src
            queue = deque([src])
            found = False
            while queue and not found:
                u = queue.popleft()
                for aid in self.head[u]:
                    if self.cap[aid] > 0 and parent[self.to[aid]] == -1:
                        parent[self.to[aid]] = aid
                        if self.to[aid] == sink:
                            found = True
                            break
                        queue.append(self.to[aid])
            if not found:
                break
            # unit augmentation along the found path
            v = sink
            while v != src:
                aid = parent[v]
                self.cap[aid] -= 1
                self.cap[aid ^ 1] += 1
                v = self.to[aid ^ 1]
            flow += 1
        return flow


def min_qualified_vertex_cut(net: Network) -> int:
    """Minimum vertex-cut size over all qualified cuts (max-flow route)."""
    if is_trivial(net):
        raise NoQualifiedCutError("trivial network: no qualified cut exists")
    x = net.source
    if _has_non_source_articulation(net):
        return 1
    dist = net.bfs_distances(x)
    targets = sorted(
        (v for v in range(net.node_count) if v != x and v not in net.adj[x]),
        key=lambda v: -dist[v],
    )
    flow = _SplitFlow(net)
    best = _INF
    for v in targets:
        f = flow.min_separator(x, v, cap_limit=best)
        if f < best:
            best = f
        if best <= 2:
            break  # no articulation point other than X, so 2 is a lower bound
    return best
