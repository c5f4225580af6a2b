"""Equitable partitions, distance partitions, and the symmetrized quotient.

A partition is equitable when every vertex of cell j sends the same total
edge weight d[j][k] into cell k. The symmetrized quotient replaces the m
cells by a weighted graph with B[j,k] = sqrt(d[j,k]*d[k,j]) and loops
B[j,j] = d[j,j]; transfer amplitude magnitudes between a vertex and its
antipode survive this collapse, which is what makes quotients useful for
state-transfer analysis.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import InvalidArgumentError, NotConnectedError, NotEquitableError
from .graphs import Graph, distance_matrix
from .spectral import eigendecompose, fidelity

__all__ = [
    "EquitablePartition",
    "QuotientGraph",
    "is_equitable",
    "distance_partition",
    "coarsest_equitable_refinement",
    "quotient_symmetrized",
    "collapse_fidelity_check",
    "format_cells",
]

Cells = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class EquitablePartition:
    """Ordered disjoint cells covering V, plus the cell-degree matrix."""

    cells: Cells
    degrees: np.ndarray  # degrees[j, k]: weight from any vertex of cell j into cell k

    @property
    def m(self) -> int:
        return len(self.cells)

    def cell_of(self, v: int) -> int:
        for j, cell in enumerate(self.cells):
            if v in cell:
                return j
        raise InvalidArgumentError(f"vertex {v} not covered by partition")


@dataclass(frozen=True)
class QuotientGraph:
    graph: Graph
    cell_map: Tuple[int, ...]


def _normalize_cells(g: Graph, cells: Sequence[Sequence[int]]) -> Cells:
    seen: set = set()
    out: List[Tuple[int, ...]] = []
    for cell in cells:
        cl = tuple(sorted(int(v) for v in cell))
        if not cl:
            raise InvalidArgumentError("empty cell in partition")
        for v in cl:
            if v < 0 or v >= g.n:
                raise InvalidArgumentError(f"vertex {v} out of range")
            if v in seen:
                raise InvalidArgumentError(f"vertex {v} appears in two cells")
            seen.add(v)
        out.append(cl)
    if len(seen) != g.n:
        raise InvalidArgumentError("cells do not cover every vertex")
    return tuple(out)


def _equitable_tol(g: Graph) -> float:
    return 1e-10 * (1.0 + float(np.max(np.abs(g.adj))))


def is_equitable(g: Graph, cells: Sequence[Sequence[int]]) -> Optional[EquitablePartition]:
    """Degree matrix of the partition if it is equitable, else None.

    Malformed cell lists (overlap, gaps, out-of-range vertices) raise; a
    well-formed but non-equitable partition just returns None.
    """
    cs = _normalize_cells(g, cells)
    tol = _equitable_tol(g)
    m = len(cs)
    d = np.zeros((m, m))
    for j, cell in enumerate(cs):
        for k, other in enumerate(cs):
            sums = g.adj[np.ix_(cell, other)].sum(axis=1)
            d[j, k] = sums[0]
            if np.max(np.abs(sums - sums[0])) > tol:
                return None
    return EquitablePartition(cs, d)


def distance_partition(
    g: Graph, a: int, require_antipode: bool = False
) -> Optional[EquitablePartition]:
    """Partition of V by distance from a, if it is equitable.

    With require_antipode, the farthest cell must be a single vertex.
    Raises NotConnectedError when some vertex is unreachable from a.
    """
    g.check_vertex(a)
    dist = distance_matrix(g)[a]
    if np.any(np.isinf(dist)):
        raise NotConnectedError("distance partition needs a connected graph")
    radius = int(np.max(dist))
    cells = [tuple(int(v) for v in np.nonzero(dist == r)[0]) for r in range(radius + 1)]
    part = is_equitable(g, cells)
    if part is None:
        return None
    if require_antipode and len(part.cells[-1]) != 1:
        return None
    return part


def coarsest_equitable_refinement(
    g: Graph, initial_cells: Sequence[Sequence[int]]
) -> EquitablePartition:
    """Iteratively split cells by weighted neighbor-count signatures until the
    partition is equitable; the result refines the input and is the coarsest
    such refinement. Cells come out ordered by smallest contained vertex."""
    cells = [list(c) for c in _normalize_cells(g, initial_cells)]
    while True:
        changed = False
        new_cells: List[List[int]] = []
        for cell in cells:
            sigs = {}
            for u in cell:
                sig = tuple(
                    round(float(g.adj[u, other].sum()), 9) for other in cells
                )
                sigs.setdefault(sig, []).append(u)
            if len(sigs) > 1:
                changed = True
            new_cells.extend(sorted(sigs.values(), key=min))
        cells = sorted(new_cells, key=min)
        if not changed:
            break
    part = is_equitable(g, cells)
    if part is None:  # pragma: no cover - refinement fixpoint is equitable
        raise NotEquitableError("refinement failed to reach an equitable partition")
    return part


def quotient_symmetrized(g: Graph, partition: EquitablePartition) -> QuotientGraph:
    """Weighted quotient graph with B[j,k] = sqrt(d[j,k]*d[k,j]), B[j,j]=d[j,j]."""
    check = is_equitable(g, partition.cells)
    if check is None:
        raise NotEquitableError("partition is not equitable on this graph")
    d = check.degrees
    m = len(partition.cells)
    b = np.zeros((m, m))
    for j in range(m):
        b[j, j] = d[j, j]
        for k in range(j + 1, m):
            b[j, k] = b[k, j] = sqrt(d[j, k] * d[k, j])
    cell_map = [0] * g.n
    for j, cell in enumerate(check.cells):
        for v in cell:
            cell_map[v] = j
    return QuotientGraph(Graph(b), tuple(cell_map))


def collapse_fidelity_check(g: Graph, a: int, b: int, t_grid: Sequence[float]) -> float:
    """Max over the grid of | |F_G(a->b)| - |F_quotient| |.

    Requires the distance partition from a to be equitable with b as its
    singleton antipodal cell; raises NotEquitableError otherwise.
    """
    g.check_vertex(a)
    g.check_vertex(b)
    part = distance_partition(g, a, require_antipode=True)
    if part is None:
        raise NotEquitableError("distance partition from source is not usable")
    if part.cells[-1] != (b,):
        raise NotEquitableError(
            f"vertex {b} is not the antipodal cell of the distance partition"
        )
    quot = quotient_symmetrized(g, part)
    dec_g = eigendecompose(g)
    dec_q = eigendecompose(quot.graph)
    ts = np.asarray(list(t_grid), dtype=float)
    f_full = np.abs(fidelity(dec_g, a, b, ts))
    f_quot = np.abs(fidelity(dec_q, 0, part.m - 1, ts))
    return float(np.max(np.abs(f_full - f_quot)))


def format_cells(partition: EquitablePartition) -> str:
    lines = [
        f"cell {j}: " + " ".join(str(v) for v in cell)
        for j, cell in enumerate(partition.cells)
    ]
    return "\n".join(lines) + "\n"
