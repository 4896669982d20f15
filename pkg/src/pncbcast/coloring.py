"""Vertex colorings, colored graphs, color-cut sizes, and the
Hamiltonian-cycle 3-coloring of grid networks.

The grid construction builds a comb-shaped Hamiltonian cycle (top row,
serpentine teeth over columns 1..N-1, return along column 0) and numbers
the non-source cells 1..K along it starting at the source's cycle
successor, so node k gets color k mod 3.  When both dimensions are odd no
Hamiltonian cycle exists (the grid is bipartite with odd imbalance), so
two adjacent serpentine rows are fused into a pair of equal-length
parallel branches visited simultaneously: each branch-A node k has a
branch-B twin k* carrying the same number and color.

The source must not sit inside the fused block, so the builder searches
fuse-row placements middle-out and falls back to transposed / mirrored
orientations.  The single unrescuable case, a 3x3 grid with a centered
source, uses a fork: the cycle splits at node 1 into two parallel
three-node branches around the source and merges at node 5.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .netgraph import Cut, Network, make_grid

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Hamiltonian numbering of grids
# ---------------------------------------------------------------------------

@dataclass
class HamiltonianNumbering:
    """Numbering 1..K of a grid's non-source cells along a (pseudo)
    Hamiltonian cycle.

    ``order[i]`` is the coordinate of node number i+1; ``twins`` maps a
    number k to the coordinate of its parallel twin k* (empty unless both
    grid dimensions are odd).  Node 1 and node K are the two cycle
    neighbors of the source (the virtual sources X0 and X1).
    """

    M: int
    N: int
    source_pos: tuple
    order: tuple
    twins: dict = field(default_factory=dict)

    def __post_init__(self):
        self._validate()

    # -- structure checks ----------------------------------------------

    def _validate(self) -> None:
        M, N, src = self.M, self.N, self.source_pos
        cells = {(r, c) for r in range(M) for c in range(N)}
        covered = [src, *self.order, *self.twins.values()]
        if len(covered) != M * N or set(covered) != cells:
            raise ValueError("numbering must cover every cell exactly once")
        K = len(self.order)

        def adjacent(a, b):
            return abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1

        if not (adjacent(src, self.order[0]) and adjacent(src, self.order[-1])):
            raise ValueError("node 1 and node K must neighbor the source")
        for i in range(K - 1):
            if not adjacent(self.order[i], self.order[i + 1]):
                raise ValueError(f"numbers {i + 1} and {i + 2} not adjacent")
        for k, twin in self.twins.items():
            # a twin chain runs parallel to the main path between the same
            # split and merge nodes
            prev = self.twins.get(k - 1, self.order[k - 2])
            nxt = self.twins.get(k + 1, self.order[k] if k < K else None)
            if prev is None or nxt is None or not (
                adjacent(prev, twin) and adjacent(twin, nxt)
            ):
                raise ValueError(f"twin {k}* breaks the parallel-branch structure")

    # -- views -----------------------------------------------------------

    @property
    def last_number(self) -> int:
        return len(self.order)

    def network(self) -> Network:
        return make_grid(self.M, self.N, self.source_pos)

    def number_of_coord(self) -> dict:
        """coord -> number (twins share their main node's number)."""
        out = {rc: k + 1 for k, rc in enumerate(self.order)}
        out.update({rc: k for k, rc in self.twins.items()})
        return out

    def label_of_coord(self) -> dict:
        """coord -> display label ('7' for main, '7*' for a twin)."""
        out = {rc: str(k + 1) for k, rc in enumerate(self.order)}
        out.update({rc: f"{k}*" for k, rc in self.twins.items()})
        return out

    def to_jsonable(self) -> dict:
        return {
            "M": self.M,
            "N": self.N,
            "source_pos": list(self.source_pos),
            "order": [list(rc) for rc in self.order],
            "twins": {str(k): list(rc) for k, rc in self.twins.items()},
        }


def _comb_cycle(M: int, N: int):
    """Hamiltonian cycle over an MxN grid, M even: top row, serpentine
    teeth over columns 1..N-1, return up column 0."""
    path = [(0, c) for c in range(N)]
    for r in range(1, M):
        cols = range(N - 1, 0, -1) if r % 2 == 1 else range(1, N)
        path.extend((r, c) for c in cols)
    path.extend((r, 0) for r in range(M - 1, 0, -1))
    return path


def _split_merge_cycle(M: int, N: int, rp: int):
    """Pseudo-Hamiltonian cycle for odd x odd grids: serpentine rows rp and
    rp+1 are fused into one pass of two parallel branches.

    Returns (main_path, twin_at) where twin_at maps a main-path index to
    the twin coordinate visited in parallel with it.
    """
    if not (M % 2 == 1 and N % 2 == 1 and 1 <= rp <= M - 2):
        raise ValueError("split-merge needs odd dims and 1 <= rp <= M-2")
    main = [(0, c) for c in range(N)]
    twin_at = {}
    right_to_left = True
    r = 1
    while r < M:
        if r == rp:
            if right_to_left:
                main.append((r, N - 1))  # split
                for i, c in enumerate(range(N - 2, 0, -1)):
                    twin_at[len(main)] = (r + 1, N - 1 - i)
                    main.append((r, c))
                main.append((r + 1, 1))  # merge
            else:
                main.append((r, 1))
                for i, c in enumerate(range(2, N)):
                    twin_at[len(main)] = (r + 1, 1 + i)
                    main.append((r, c))
                main.append((r + 1, N - 1))
            r += 2
        else:
            cols = range(N - 1, 0, -1) if right_to_left else range(1, N)
            main.extend((r, c) for c in cols)
            r += 1
        right_to_left = not right_to_left
    main.extend((r0, 0) for r0 in range(M - 1, 0, -1))
    return main, twin_at


def _number_from_cycle(M, N, source_pos, main, twin_at):
    idx = main.index(source_pos)
    L = len(main)
    order = tuple(main[(idx + k) % L] for k in range(1, L))
    twins = {(i - idx) % L: rc for i, rc in twin_at.items()}
    return HamiltonianNumbering(M, N, source_pos, order, twins)


def _middle_out(lo: int, hi: int, start: int):
    """lo..hi ordered by distance from start."""
    vals = sorted(range(lo, hi + 1), key=lambda v: (abs(v - start), v))
    return vals


_FORK_ORDER = ((0, 1), (0, 0), (1, 0), (2, 0), (2, 1))
_FORK_TWINS = {2: (0, 2), 3: (1, 2), 4: (2, 2)}


def build_hamiltonian(M: int, N: int, source_pos) -> HamiltonianNumbering:
    """Comb-cycle numbering of the MxN grid with the source at source_pos."""
    if M < 2 or N < 2:
        raise ValueError("grid needs M, N >= 2")
    sr, sc = source_pos
    if not (0 <= sr < M and 0 <= sc < N):
        raise ValueError(f"source {source_pos} outside {M}x{N} grid")

    if M % 2 == 0:
        main = _comb_cycle(M, N)
        return _number_from_cycle(M, N, source_pos, main, {})
    if N % 2 == 0:
        flipped = build_hamiltonian(N, M, (sc, sr))
        return HamiltonianNumbering(
            M, N, source_pos,
            tuple((c, r) for r, c in flipped.order),
            {k: (c, r) for k, (r, c) in flipped.twins.items()},
        )

    # both odd: split-merge; the source must stay off the fused block
    # (rows rp, rp+1 at columns >= 1)
    for transform, inverse in _grid_transforms(M, N):
        tr, tc = transform(sr, sc)
        for rp in _middle_out(1, M - 2, M // 2):
            if tc == 0 or tr not in (rp, rp + 1):
                main, twin_at = _split_merge_cycle(M, N, rp)
                hn = _number_from_cycle(M, N, (tr, tc), main, twin_at)
                return HamiltonianNumbering(
                    M, N, source_pos,
                    tuple(inverse(r, c) for r, c in hn.order),
                    {k: inverse(r, c) for k, (r, c) in hn.twins.items()},
                )
    # only reachable for the 3x3 grid with a centered source
    if (M, N) == (3, 3) and (sr, sc) == (1, 1):
        return HamiltonianNumbering(3, 3, (1, 1), _FORK_ORDER, dict(_FORK_TWINS))
    raise ValueError(f"no numbering found for {M}x{N} source {source_pos}")


def _grid_transforms(M: int, N: int):
    """Symmetries of the MxN grid (square grids also get the transpose),
    as (forward, inverse) coordinate maps."""
    out = [
        (lambda r, c: (r, c), lambda r, c: (r, c)),
        (lambda r, c: (r, N - 1 - c), lambda r, c: (r, N - 1 - c)),
        (lambda r, c: (M - 1 - r, c), lambda r, c: (M - 1 - r, c)),
        (lambda r, c: (M - 1 - r, N - 1 - c), lambda r, c: (M - 1 - r, N - 1 - c)),
    ]
    if M == N:
        out.append((lambda r, c: (c, r), lambda r, c: (c, r)))
    return out


def flip_horizontal(hn: HamiltonianNumbering) -> HamiltonianNumbering:
    """Mirror a numbering left-right (column c -> N-1-c, source included).

    The result numbers the mirrored source position; composing the builder
    at the mirrored source with this flip yields an alternative numbering
    for the original source, used as the fallback when the disjoint-path
    check fails.
    """
    N = hn.N
    return HamiltonianNumbering(
        hn.M, N,
        (hn.source_pos[0], N - 1 - hn.source_pos[1]),
        tuple((r, N - 1 - c) for r, c in hn.order),
        {k: (r, N - 1 - c) for k, (r, c) in hn.twins.items()},
    )


def flipped_numbering(M: int, N: int, source_pos) -> HamiltonianNumbering:
    """The mirror-image construction for the *same* source position."""
    sr, sc = source_pos
    return flip_horizontal(build_hamiltonian(M, N, (sr, N - 1 - sc)))


# ---------------------------------------------------------------------------
# Colorings and colored graphs
# ---------------------------------------------------------------------------

@dataclass
class Coloring:
    """Color per non-source node; the source is uncolored (it transmits in
    every slot, so its edges survive in the colored graph)."""

    palette_size: int
    f: dict

    def color(self, node: int):
        return self.f[node]


def hamiltonian_coloring(hn: HamiltonianNumbering, net: Network | None = None) -> Coloring:
    """f(k) = k mod 3 on the numbering's grid (twins inherit k)."""
    net = net or hn.network()
    id_of = {rc: i for i, rc in enumerate(net.meta["coord_of"])}
    f = {}
    for k, rc in hn.number_of_coord().items():
        pass  # placeholder replaced below
    f = {id_of[rc]: k % 3 for rc, k in hn.number_of_coord().items()}
    return Coloring(palette_size=3, f=f)


class ColoredGraph:
    """A network plus a coloring, with same-color edges removed."""

    def __init__(self, base: Network, coloring: Coloring):
        missing = set(range(base.node_count)) - {base.source} - set(coloring.f)
        if missing:
            raise ValueError(f"nodes without a color: {sorted(missing)}")
        self.base = base
        self.coloring = coloring
        x = base.source
        f = coloring.f
        ef = []
        adj = [set() for _ in range(base.node_count)]
        for u, v in base.edges():
            if u == x or v == x or f[u] != f[v]:
                ef.append((u, v))
                adj[u].add(v)
                adj[v].add(u)
        self.ef = tuple(ef)
        self.adj = tuple(frozenset(s) for s in adj)

    def neighbors(self, k: int) -> frozenset:
        return self.adj[k]


def colored_graph(net: Network, coloring: Coloring) -> ColoredGraph:
    return ColoredGraph(net, coloring)


# ---------------------------------------------------------------------------
# Color cuts
# ---------------------------------------------------------------------------

def _gf2_rank(rows) -> int:
    """Rank over GF(2) of rows given as bit-packed ints."""
    rank = 0
    pivots = []
    for row in rows:
        for p in pivots:
            row = min(row, row ^ p)
        if row:
            pivots.append(row)
            pivots.sort(reverse=True)
            rank += 1
    return rank


def _rational_rank(matrix) -> int:
    if not matrix or not matrix[0]:
        return 0
    return int(np.linalg.matrix_rank(np.array(matrix, dtype=float)))


def _cut_sides(cg: ColoredGraph, cut: Cut):
    """V1' and V2' of the cut, both w.r.t. the colored graph."""
    base = cg.base
    v2 = cut.v2
    if not v2:
        raise ValueError("V2 must be nonempty")
    if base.source in v2:
        raise ValueError("V2 must not contain the source")
    v1p = sorted(
        u for u in range(base.node_count)
        if u not in v2 and not cg.adj[u].isdisjoint(v2)
    )
    v2p = sorted(v for v in v2 if not cg.adj[v].issubset(v2))
    return v1p, v2p


def is_qualified_colored(cg: ColoredGraph, cut: Cut) -> bool:
    """Qualified on the colored graph: X has no colored edge into V2."""
    v1p, _ = _cut_sides(cg, cut)
    return cg.base.source not in v1p


def _group_matrix(cg: ColoredGraph, v1p, v2p, c):
    rows = []
    for u in v1p:
        if cg.coloring.f.get(u) == c:
            rows.append([1 if v in cg.base.adj[u] else 0 for v in v2p])
    return rows


def color_group_cut_size(cg: ColoredGraph, cut: Cut, c) -> int:
    """GF(2) rank of the color-c biadjacency block of the cut boundary.

    Rows are the color-c nodes of V1', columns V2' (both on the colored
    graph); an entry is 1 iff the pair is adjacent in the *base* graph.
    """
    if not is_qualified_colored(cg, cut):
        raise ValueError("cut is not qualified on the colored graph")
    v1p, v2p = _cut_sides(cg, cut)
    rows = _group_matrix(cg, v1p, v2p, c)
    return _gf2_rank([int("".join(map(str, r)), 2) if r else 0 for r in rows])


def color_group_cut_size_rational(cg: ColoredGraph, cut: Cut, c) -> int:
    """Rank of the same block over the rationals, for comparison; logs when
    it disagrees with the GF(2) value."""
    gf2 = color_group_cut_size(cg, cut, c)
    v1p, v2p = _cut_sides(cg, cut)
    rat = _rational_rank(_group_matrix(cg, v1p, v2p, c))
    if rat != gf2:
        logger.info("rank mismatch for color %s: GF(2)=%d rational=%d", c, gf2, rat)
    return rat


def color_cut_size(cg: ColoredGraph, cut: Cut) -> int:
    """Sum of the color-group cut sizes over all colors."""
    if not is_qualified_colored(cg, cut):
        raise ValueError("cut is not qualified on the colored graph")
    v1p, v2p = _cut_sides(cg, cut)
    colors = {cg.coloring.f[u] for u in v1p}
    total = 0
    for c in colors:
        rows = _group_matrix(cg, v1p, v2p, c)
        total += _gf2_rank([int("".join(map(str, r)), 2) if r else 0 for r in rows])
    return total


def min_color_cut(cg: ColoredGraph, max_nodes: int = 16) -> int:
    """Minimum color-cut size over all qualified cuts, by enumeration.

    Grids with the Hamiltonian coloring should use grid_min_color_cut;
    exhaustive search is capped at max_nodes nodes.
    """
    base = cg.base
    x = base.source
    if len(cg.adj[x]) == base.node_count - 1:
        raise ValueError("no qualified cut exists (source borders every node)")
    if base.node_count > max_nodes:
        raise ValueError(f"enumeration capped at {max_nodes} nodes")
    pool = sorted(set(range(base.node_count)) - {x} - cg.adj[x])
    best = None
    for mask in range(1, 1 << len(pool)):
        v2 = frozenset(pool[i] for i in range(len(pool)) if mask >> i & 1)
        size = color_cut_size(cg, Cut(v2))
        if best is None or size < best:
            best = size
    return best


def grid_min_color_cut(hn: HamiltonianNumbering) -> int:
    """Minimum color-cut size of a Hamiltonian-colored grid.

    The established value is 2.  This verifies the upper-bound witness on
    the given numbering: the far corner's two grid neighbors are its cycle
    neighbors, whose numbers differ by one, so they land in two different
    color groups and each contributes a rank-1 singleton block.
    """
    net = hn.network()
    cg = ColoredGraph(net, hamiltonian_coloring(hn, net))
    dist = net.bfs_distances(net.source)
    id_of = {rc: i for i, rc in enumerate(net.meta["coord_of"])}
    corners = [
        id_of[(r, c)]
        for r in (0, hn.M - 1)
        for c in (0, hn.N - 1)
        if id_of[(r, c)] not in net.adj[net.source] and id_of[(r, c)] != net.source
    ]
    witness = max(corners, key=lambda v: dist[v])
    size = color_cut_size(cg, Cut(frozenset({witness})))
    if size != 2:
        raise AssertionError(
            f"far-corner witness produced color-cut {size}, expected 2"
        )
    return 2
