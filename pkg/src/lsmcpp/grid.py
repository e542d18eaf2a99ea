"""Weighted 2D grid terrain graphs and their doubled-resolution decomposition.

A terrain graph is a 4-connected grid of cells with nonnegative edge
weights.  Every cell splits into four subcells on a grid of twice the
resolution; coverage paths live on that decomposed graph.  Edge weights on
the decomposed graph are derived by spreading each cell's accumulated
incident weight evenly over its four subcells: an edge (u, v) between
subcells weighs one eighth of the summed incident terrain weights of the
two parent cells.

Both graph classes are immutable after construction and safe to share
across threads read-only.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable, Mapping

from .errors import DisconnectedGraphError, GridError

TerrainCoord = tuple[int, int]  # (col, row), origin at the top-left
SubCellCoord = tuple[int, int]  # (col, row) on the doubled grid

# Subcell positions inside a cell, in clockwise order starting top-left.
NW, NE, SE, SW = 0, 1, 2, 3
POS_OFFSETS = ((0, 0), (1, 0), (1, 1), (0, 1))
_POS_OF_OFFSET = {off: pos for pos, off in enumerate(POS_OFFSETS)}

# 4-neighborhood deltas in a fixed scan order (up, right, down, left).
ADJ4 = ((0, -1), (1, 0), (0, 1), (-1, 0))

WEIGHT_EPS = 1e-9  # absolute tolerance for weight comparisons in control flow


def coord_key(c: tuple[int, int]) -> tuple[int, int]:
    """Row-major sort key: reading order on the grid."""
    return (c[1], c[0])


def parent_cell(v: SubCellCoord) -> TerrainCoord:
    """Terrain cell that owns subcell ``v``."""
    return (v[0] // 2, v[1] // 2)


def subcell(cell: TerrainCoord, pos: int) -> SubCellCoord:
    """Subcell of ``cell`` at clockwise position ``pos`` (NW/NE/SE/SW)."""
    dx, dy = POS_OFFSETS[pos]
    return (2 * cell[0] + dx, 2 * cell[1] + dy)


def subcell_pos(v: SubCellCoord) -> int:
    """Clockwise position of subcell ``v`` within its parent cell."""
    return _POS_OF_OFFSET[(v[0] % 2, v[1] % 2)]


def edge_key(u: tuple[int, int], v: tuple[int, int]):
    """Canonical (row-major sorted) form of an undirected edge."""
    return (u, v) if coord_key(u) <= coord_key(v) else (v, u)


class TerrainGraph:
    """4-connected grid graph of terrain cells with weighted edges.

    Edges exist between every pair of 4-adjacent present cells.  Weights
    default to ``default_weight`` and can be overridden per edge via
    ``edge_weights`` (keys are cell-coordinate pairs in either order).
    """

    def __init__(
        self,
        width: int,
        height: int,
        cells: Iterable[TerrainCoord],
        edge_weights: Mapping | None = None,
        default_weight: float = 1.0,
    ):
        if width <= 0 or height <= 0:
            raise GridError(f"grid dimensions must be positive, got {width}x{height}")
        self.width = width
        self.height = height
        cellset = frozenset(cells)
        for c in cellset:
            if not (0 <= c[0] < width and 0 <= c[1] < height):
                raise GridError(f"cell {c} outside the {width}x{height} grid")
        self.cells = cellset

        edges: dict[tuple[TerrainCoord, TerrainCoord], float] = {}
        for c in cellset:
            for dx, dy in ((1, 0), (0, 1)):  # east + south covers each pair once
                n = (c[0] + dx, c[1] + dy)
                if n in cellset:
                    edges[edge_key(c, n)] = float(default_weight)
        if edge_weights:
            for pair, w in edge_weights.items():
                a, b = pair
                key = edge_key(tuple(a), tuple(b))
                if key not in edges:
                    raise GridError(f"no terrain edge between {a} and {b}")
                edges[key] = float(w)
        for key, w in edges.items():
            if not math.isfinite(w) or w < 0.0:
                raise GridError(f"edge {key} has invalid weight {w}")
        self.edge_weights = edges

        vw: dict[TerrainCoord, float] = {c: 0.0 for c in cellset}
        for (a, b), w in edges.items():
            vw[a] += w
            vw[b] += w
        self._vertex_weights = vw
        self.max_edge_weight = max(edges.values(), default=0.0)

    def has_cell(self, cell: TerrainCoord) -> bool:
        return cell in self.cells

    def neighbors(self, cell: TerrainCoord) -> list[TerrainCoord]:
        """Present 4-neighbors of ``cell`` in up/right/down/left order."""
        out = []
        for dx, dy in ADJ4:
            n = (cell[0] + dx, cell[1] + dy)
            if n in self.cells:
                out.append(n)
        return out

    def edge_weight(self, a: TerrainCoord, b: TerrainCoord) -> float:
        try:
            return self.edge_weights[edge_key(a, b)]
        except KeyError:
            raise GridError(f"no terrain edge between {a} and {b}") from None

    def vertex_weight(self, cell: TerrainCoord) -> float:
        """Sum of the weights of all terrain edges incident to ``cell``."""
        try:
            return self._vertex_weights[cell]
        except KeyError:
            raise GridError(f"cell {cell} is not present in the terrain") from None

    def sorted_cells(self) -> list[TerrainCoord]:
        return sorted(self.cells, key=coord_key)

    def __eq__(self, other):
        return (
            isinstance(other, TerrainGraph)
            and self.width == other.width
            and self.height == other.height
            and self.cells == other.cells
            and self.edge_weights == other.edge_weights
        )

    def __repr__(self):
        return (
            f"TerrainGraph({self.width}x{self.height}, {len(self.cells)} cells, "
            f"{len(self.edge_weights)} edges)"
        )


def terrain_vertex_weight(g: TerrainGraph, cell: TerrainCoord) -> float:
    """Accumulated incident edge weight of a terrain cell."""
    return g.vertex_weight(cell)


class DecomposedGraph:
    """Doubled-resolution grid graph whose vertices are subcells.

    Subcells may be missing (blocked), which makes their parent cell
    *incomplete*.  Edges join 4-adjacent present subcells; their weights
    derive from the parents' accumulated terrain weights and are never
    stored explicitly.
    """

    def __init__(self, terrain: TerrainGraph, vertices: Iterable[SubCellCoord]):
        self.terrain = terrain
        vset = frozenset(vertices)
        for v in vset:
            if parent_cell(v) not in terrain.cells:
                raise GridError(f"subcell {v} has no present parent cell")
        self.vertices = vset
        self._w8 = {c: terrain.vertex_weight(c) * 0.125 for c in terrain.cells}

    def neighbors(self, v: SubCellCoord) -> list[SubCellCoord]:
        out = []
        for dx, dy in ADJ4:
            n = (v[0] + dx, v[1] + dy)
            if n in self.vertices:
                out.append(n)
        return out

    def adjacent(self, u: SubCellCoord, v: SubCellCoord) -> bool:
        return abs(u[0] - v[0]) + abs(u[1] - v[1]) == 1

    def edge_weight(self, u: SubCellCoord, v: SubCellCoord) -> float:
        """Weight of the decomposed edge (u, v)."""
        return self._w8[parent_cell(u)] + self._w8[parent_cell(v)]

    def cell_subcells(self, cell: TerrainCoord) -> list[SubCellCoord]:
        """Present subcells of ``cell`` in clockwise position order."""
        return [s for p in range(4) if (s := subcell(cell, p)) in self.vertices]

    def covered_cells(self) -> list[TerrainCoord]:
        """Cells contributing at least one subcell, in reading order."""
        seen = {parent_cell(v) for v in self.vertices}
        return sorted(seen, key=coord_key)

    def is_complete(self, cell: TerrainCoord) -> bool:
        """True iff all four subcells of ``cell`` are present."""
        if cell not in self.terrain.cells:
            raise GridError(f"cell {cell} is not present in the terrain")
        return all(subcell(cell, p) in self.vertices for p in range(4))

    def is_complete_graph(self) -> bool:
        return all(self.is_complete(c) for c in self.terrain.cells)

    def replace_vertices(self, vertices: Iterable[SubCellCoord]) -> "DecomposedGraph":
        """New graph over the same terrain with a different vertex set."""
        return DecomposedGraph(self.terrain, vertices)

    def __eq__(self, other):
        return (
            isinstance(other, DecomposedGraph)
            and self.terrain == other.terrain
            and self.vertices == other.vertices
        )

    def __repr__(self):
        return f"DecomposedGraph({len(self.vertices)} subcells of {self.terrain!r})"


def connected_components(
    vertices: Iterable[tuple[int, int]],
    neighbors: Callable[[tuple[int, int]], Iterable[tuple[int, int]]],
) -> list[list[tuple[int, int]]]:
    """Partition ``vertices`` into maximal connected components.

    ``neighbors`` may return vertices outside the set; they are ignored.
    Components are sorted by their smallest contained coordinate (reading
    order), and each component is itself sorted.
    """
    remaining = set(vertices)
    comps = []
    for seed in sorted(remaining, key=coord_key):
        if seed not in remaining:
            continue
        comp = [seed]
        remaining.discard(seed)
        queue = [seed]
        while queue:
            cur = queue.pop()
            for n in neighbors(cur):
                if n in remaining:
                    remaining.discard(n)
                    comp.append(n)
                    queue.append(n)
        comps.append(sorted(comp, key=coord_key))
    comps.sort(key=lambda c: coord_key(c[0]))
    return comps


def build_decomposed_graph(
    g: TerrainGraph,
    blocked: Iterable[SubCellCoord] = (),
    require_connected: bool = True,
) -> DecomposedGraph:
    """Decompose a terrain graph into its subcell grid graph.

    Every present cell contributes its four subcells minus the ``blocked``
    ones.  Raises :class:`DisconnectedGraphError` when the result is not
    connected and ``require_connected`` is set; the error carries the
    components for diagnostics.
    """
    if not g.cells:
        raise GridError("terrain graph has no cells")
    blockedset = set()
    for b in blocked:
        b = tuple(b)
        if parent_cell(b) not in g.cells:
            raise GridError(f"blocked subcell {b} has no present parent cell")
        blockedset.add(b)
    vertices = {
        subcell(c, p) for c in g.cells for p in range(4) if subcell(c, p) not in blockedset
    }
    d = DecomposedGraph(g, vertices)
    if require_connected:
        comps = connected_components(d.vertices, d.neighbors)
        if len(comps) > 1:
            raise DisconnectedGraphError(
                f"decomposed graph splits into {len(comps)} components "
                f"(sizes {[len(c) for c in comps]})",
                components=comps,
            )
    return d
