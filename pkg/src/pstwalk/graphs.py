"""Weighted undirected graphs with optional self-loops.

A graph is a real symmetric adjacency matrix; the diagonal holds self-loop
weights.  All builders return immutable `Graph` objects, and adjacency
symmetry is exact (bitwise equal entries), never merely approximate.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    GraphFormatError,
    InvalidArgumentError,
    InvalidSizeError,
    SelfLoopError,
    UnsupportedGraphError,
)

__all__ = [
    "Graph",
    "complete",
    "empty_graph",
    "path_graph",
    "cycle",
    "circulant",
    "hypercube",
    "complement",
    "join",
    "scale",
    "regular_degree",
    "distance_matrix",
    "is_connected",
    "parse_graph",
    "serialize_graph",
]


class Graph:
    """Immutable weighted graph on vertices 0..n-1.

    Equality compares adjacency matrices exactly (labels are cosmetic).
    """

    __slots__ = ("adj", "labels")

    def __init__(self, adj, labels: Optional[Sequence[str]] = None):
        a = np.array(adj, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InvalidArgumentError("adjacency must be a square matrix")
        if a.shape[0] < 1:
            raise InvalidSizeError("graphs need at least one vertex")
        if not np.array_equal(a, a.T):
            raise InvalidArgumentError("adjacency must be exactly symmetric")
        if not np.all(np.isfinite(a)):
            raise InvalidArgumentError("adjacency entries must be finite")
        a.setflags(write=False)
        object.__setattr__(self, "adj", a)
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != a.shape[0]:
                raise InvalidArgumentError("label count must match vertex count")
        object.__setattr__(self, "labels", labels)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Graph is immutable")

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    def weight(self, u: int, v: int) -> float:
        return float(self.adj[u, v])

    def degrees(self) -> np.ndarray:
        """Weighted degrees: row sums (a loop contributes its weight once)."""
        return self.adj.sum(axis=1)

    def is_unweighted(self) -> bool:
        return bool(np.all((self.adj == 0.0) | (self.adj == 1.0)))

    def has_loops(self) -> bool:
        return bool(np.any(np.diag(self.adj) != 0.0))

    def check_vertex(self, v: int) -> int:
        v = int(v)
        if not 0 <= v < self.n:
            raise InvalidArgumentError(f"vertex {v} out of range [0, {self.n})")
        return v

    def relabelled(self, labels: Optional[Sequence[str]]) -> "Graph":
        return Graph(self.adj, labels)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.adj.shape == other.adj.shape and np.array_equal(self.adj, other.adj)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.n, self.adj.tobytes()))

    def __repr__(self):
        kind = "weighted" if not self.is_unweighted() else "unweighted"
        return f"Graph(n={self.n}, {kind}, edges={int(np.count_nonzero(np.triu(self.adj)))})"


# ---------------------------------------------------------------------------
# constructors


def complete(n: int) -> Graph:
    """K_n: all distinct vertex pairs adjacent with weight 1."""
    if n < 1:
        raise InvalidSizeError("complete(n) needs n >= 1")
    a = np.ones((n, n)) - np.eye(n)
    return Graph(a)


def empty_graph(n: int) -> Graph:
    """K̄_n: n isolated vertices."""
    if n < 1:
        raise InvalidSizeError("empty_graph(n) needs n >= 1")
    return Graph(np.zeros((n, n)))


def path_graph(weights: Sequence[float], loops=None) -> Graph:
    """Path on len(weights)+1 vertices with given edge weights and loops.

    `loops` may be None (no loops), a scalar applied to every vertex, or a
    sequence of per-vertex loop weights whose length must match.
    """
    w = [float(x) for x in weights]
    n = len(w) + 1
    if loops is None:
        lo = [0.0] * n
    elif np.isscalar(loops):
        lo = [float(loops)] * n
    else:
        lo = [float(x) for x in loops]
        if len(lo) != n:
            raise InvalidArgumentError(
                f"got {len(w)} edge weights (path on {n} vertices) but {len(lo)} loop weights"
            )
    a = np.zeros((n, n))
    for i, x in enumerate(w):
        a[i, i + 1] = a[i + 1, i] = x
    for i, x in enumerate(lo):
        a[i, i] = x
    return Graph(a)


def cycle(n: int) -> Graph:
    """C_n for n >= 3."""
    if n < 3:
        raise InvalidSizeError("cycle(n) needs n >= 3")
    return circulant(n, [1])


def circulant(n: int, jumps: Iterable[int]) -> Graph:
    """Circ(n, S): j ~ k iff (k - j) mod n lies in S ∪ (n - S).

    The connection set must avoid 0 (no loops) and stay below n.
    """
    if n < 1:
        raise InvalidSizeError("circulant(n, S) needs n >= 1")
    a = np.zeros((n, n))
    for s in jumps:
        s = int(s)
        if s == 0:
            raise SelfLoopError("connection set must not contain 0 (self-loop)")
        if s < 0 or s >= n:
            raise InvalidArgumentError(f"connection {s} outside 1..{n - 1}")
        for j in range(n):
            k = (j + s) % n
            a[j, k] = a[k, j] = 1.0
    return Graph(a)


def hypercube(d: int) -> Graph:
    """Q_d: binary strings of length d, edges at Hamming distance one."""
    if d < 1:
        raise InvalidSizeError("hypercube(d) needs d >= 1")
    m = 1 << d
    a = np.zeros((m, m))
    for i in range(m):
        for bit in range(d):
            a[i, i ^ (1 << bit)] = 1.0
    labels = [format(i, f"0{d}b") for i in range(m)]
    return Graph(a, labels)


def complement(g: Graph) -> Graph:
    """Complement of an unweighted loop-free graph."""
    if not g.is_unweighted() or g.has_loops():
        raise UnsupportedGraphError("complement is defined for unweighted loop-free graphs")
    a = np.ones((g.n, g.n)) - np.eye(g.n) - g.adj
    return Graph(a)


def join(g: Graph, h: Graph) -> Graph:
    """Join: disjoint union of g and h plus all edges between the parts.

    Vertices of g come first.
    """
    n, m = g.n, h.n
    a = np.zeros((n + m, n + m))
    a[:n, :n] = g.adj
    a[n:, n:] = h.adj
    a[:n, n:] = 1.0
    a[n:, :n] = 1.0
    labels = None
    if g.labels is not None and h.labels is not None:
        labels = list(g.labels) + list(h.labels)
    return Graph(a, labels)


def scale(g: Graph, c: float) -> Graph:
    """Multiply every weight (edges and loops) by c."""
    return Graph(g.adj * float(c), g.labels)


# ---------------------------------------------------------------------------
# queries


def regular_degree(g: Graph) -> Optional[float]:
    """The common weighted degree if g is regular, else None."""
    d = g.degrees()
    tol = 1e-12 * g.n * (1.0 + float(np.max(np.abs(g.adj))))
    if np.max(d) - np.min(d) <= tol:
        return float(d[0])
    return None


def distance_matrix(g: Graph) -> np.ndarray:
    """Hop-count distances along nonzero edges; loops ignored.

    Unreachable pairs get +inf.
    """
    n = g.n
    nbrs = [np.nonzero(g.adj[u])[0] for u in range(n)]
    out = np.full((n, n), np.inf)
    for s in range(n):
        out[s, s] = 0.0
        q = deque([s])
        while q:
            u = q.popleft()
            for v in nbrs[u]:
                if v != u and out[s, v] == np.inf:
                    out[s, v] = out[s, u] + 1.0
                    q.append(v)
    return out

def is_connected(g: Graph) -> bool:
    n = g.n
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    q = deque([0])
    count = 1
    while q:
        u = q.popleft()
        for v in np.nonzero(g.adj[u])[0]:
            if not seen[v]:
                seen[v] = True
                count += 1
                q.append(int(v))
    return count == n


# ---------------------------------------------------------------------------
# serialization
#
# Text format, line oriented:
#   pstgraph 1
#   n <count>
#   label <i> <string>          (optional)
#   edge <u> <v> <weight>       (u <= v; u == v is a self-loop)
# Weights are printed with 17 significant digits so round-trips are exact.

FORMAT_HEADER = "pstgraph 1"


def serialize_graph(g: Graph) -> str:
    lines = [FORMAT_HEADER, f"n {g.n}"]
    if g.labels is not None:
        for i, s in enumerate(g.labels):
            lines.append(f"label {i} {s}")
    for u in range(g.n):
        for v in range(u, g.n):
            w = g.adj[u, v]
            if w != 0.0:
                lines.append(f"edge {u} {v} {w:.17g}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    lines = text.splitlines()
    body = [(i + 1, ln.strip()) for i, ln in enumerate(lines)]
    body = [(no, ln) for no, ln in body if ln and not ln.startswith("#")]
    if not body or body[0][1] != FORMAT_HEADER:
        raise GraphFormatError(f"missing '{FORMAT_HEADER}' header line")
    if len(body) < 2 or not body[1][1].startswith("n "):
        raise GraphFormatError("second line must be 'n <count>'")
    try:
        n = int(body[1][1].split()[1])
    except (IndexError, ValueError):
        raise GraphFormatError("second line must be 'n <count>'")
    if n < 1:
        raise GraphFormatError("vertex count must be >= 1")
    a = np.zeros((n, n))
    labels: dict[int, str] = {}
    seen: dict[tuple[int, int], float] = {}
    for no, ln in body[2:]:
        parts = ln.split(maxsplit=2)
        if parts[0] == "label":
            if len(parts) != 3:
                raise GraphFormatError(f"line {no}: label lines are 'label <i> <string>'")
            try:
                i = int(parts[1])
            except ValueError:
                raise GraphFormatError(f"line {no}: bad label index")
            if not 0 <= i < n:
                raise GraphFormatError(f"line {no}: label index {i} out of range")
            labels[i] = parts[2]
        elif parts[0] == "edge":
            fields = ln.split()
            if len(fields) != 4:
                raise GraphFormatError(f"line {no}: edge lines are 'edge <u> <v> <weight>'")
            try:
                u, v, w = int(fields[1]), int(fields[2]), float(fields[3])
            except ValueError:
                raise GraphFormatError(f"line {no}: bad edge fields")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"line {no}: edge ({u},{v}) out of range")
            key = (min(u, v), max(u, v))
            if key in seen and seen[key] != w:
                raise GraphFormatError(
                    f"line {no}: duplicate edge {key} with conflicting weight {w} (had {seen[key]})"
                )
            seen[key] = w
            a[u, v] = a[v, u] = w
        else:
            raise GraphFormatError(f"line {no}: unknown directive '{parts[0]}'")
    lab = None
    if labels:
        lab = [labels.get(i, str(i)) for i in range(n)]
    return Graph(a, lab)
