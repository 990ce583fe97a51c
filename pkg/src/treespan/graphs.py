"""Undirected simple graphs, rooted trees, and the embedding verifier.

Vertex ids are dense integers 0..n-1.  Graphs are backed by a boolean
adjacency matrix so that dense hosts (thousands of vertices) stay cheap to
query; small-graph work (enumeration, backtracking) uses per-vertex bitmasks
derived on demand.  All types are treated as immutable after construction.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np


class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    __slots__ = ("n", "adj", "_degrees", "_bits")

    def __init__(self, n: int, adj: np.ndarray):
        if adj.shape != (n, n):
            raise ValueError(f"adjacency shape {adj.shape} does not match n={n}")
        self.n = n
        self.adj = adj
        self._degrees: np.ndarray | None = None
        self._bits: list[int] | None = None

    # -- construction -------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            adj[u, v] = True
            adj[v, u] = True
        return cls(n, adj)

    @classmethod
    def from_adjacency(cls, adj: np.ndarray) -> "Graph":
        adj = adj.astype(bool)
        if adj.shape[0] != adj.shape[1]:
            raise ValueError("adjacency matrix must be square")
        if adj.diagonal().any():
            raise ValueError("self-loops are not allowed")
        if not (adj == adj.T).all():
            raise ValueError("adjacency matrix must be symmetric")
        return cls(adj.shape[0], adj)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        adj = np.ones((n, n), dtype=bool)
        np.fill_diagonal(adj, False)
        return cls(n, adj)

    # -- queries ------------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u, v])

    def neighbors(self, v: int) -> np.ndarray:
        return np.flatnonzero(self.adj[v])

    def degree(self, v: int) -> int:
        return int(self.degrees[v])

    @property
    def degrees(self) -> np.ndarray:
        if self._degrees is None:
            self._degrees = self.adj.sum(axis=1)
        return self._degrees

    @property
    def edge_count(self) -> int:
        return int(self.degrees.sum()) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        us, vs = np.nonzero(np.triu(self.adj, 1))
        return zip(us.tolist(), vs.tolist())

    def min_degree(self) -> int:
        if self.n == 0:
            return 0
        return int(self.degrees.min())

    def universal_vertices(self) -> list[int]:
        return np.flatnonzero(self.degrees == self.n - 1).tolist()

    def adjacency_bits(self) -> list[int]:
        """Per-vertex neighbor bitmasks; built once, for small-graph search."""
        if self._bits is None:
            bits = []
            for v in range(self.n):
                mask = 0
                for u in np.flatnonzero(self.adj[v]).tolist():
                    mask |= 1 << u
                bits.append(mask)
            self._bits = bits
        return self._bits

    def degree_into(self, v: int, target: np.ndarray) -> int:
        """Number of neighbors of v inside a boolean target mask."""
        return int(np.count_nonzero(self.adj[v] & target))

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = np.zeros(self.n, dtype=bool)
        seen[0] = True
        frontier = np.zeros(self.n, dtype=bool)
        frontier[0] = True
        while frontier.any():
            nxt = self.adj[frontier].any(axis=0) & ~seen
            seen |= nxt
            frontier = nxt
        return bool(seen.all())

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and bool((self.adj == other.adj).all())
        )

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count})"

    # -- serialization (edge-list text format) ------------------------

    def to_text(self) -> str:
        lines = [f"{self.n} {self.edge_count}"]
        lines.extend(f"{u} {v}" for u, v in self.edges())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        n, m = map(int, lines[0].split())
        edges = [tuple(map(int, ln.split())) for ln in lines[1 : m + 1]]
        if len(edges) != m:
            raise ValueError(f"expected {m} edges, found {len(edges)}")
        return cls.from_edges(n, edges)  # type: ignore[arg-type]


class RootedTree:
    """Tree with a designated root, stored as a parent array (root slot -1)."""

    __slots__ = ("n", "root", "parent", "_children", "_depth", "_order")

    def __init__(self, parent: Sequence[int], root: int):
        n = len(parent)
        if not (0 <= root < n) or parent[root] != -1:
            raise ValueError("root must have parent sentinel -1")
        self.n = n
        self.root = root
        self.parent = list(parent)
        self._children: list[list[int]] | None = None
        self._depth: list[int] | None = None
        self._order: list[int] | None = None
        self._validate()

    def _validate(self) -> None:
        children: list[list[int]] = [[] for _ in range(self.n)]
        for v, p in enumerate(self.parent):
            if v == self.root:
                continue
            if not (0 <= p < self.n):
                raise ValueError(f"vertex {v} has invalid parent {p}")
            children[p].append(v)
        # check the parent relation spans all vertices without cycles
        depth = [-1] * self.n
        depth[self.root] = 0
        stack = [self.root]
        seen = 1
        while stack:
            v = stack.pop()
            for c in children[v]:
                depth[c] = depth[v] + 1
                seen += 1
                stack.append(c)
        if seen != self.n:
            raise ValueError("parent relation does not span all vertices (cycle or disconnect)")
        self._children = children
        self._depth = depth

    @property
    def edge_count(self) -> int:
        return self.n - 1

    def children(self, v: int) -> list[int]:
        assert self._children is not None
        return self._children[v]

    def depth(self, v: int) -> int:
        assert self._depth is not None
        return self._depth[v]

    def preorder(self) -> list[int]:
        """Root-first traversal; children visited in ascending vertex id."""
        if self._order is None:
            order = []
            stack = [self.root]
            while stack:
                v = stack.pop()
                order.append(v)
                stack.extend(sorted(self.children(v), reverse=True))
            self._order = order
        return self._order

    def edges(self) -> Iterator[tuple[int, int]]:
        for v, p in enumerate(self.parent):
            if v != self.root:
                yield (p, v)

    def leaves(self) -> list[int]:
        """Childless non-root vertices (the root counts only in the 1-vertex tree)."""
        if self.n == 1:
            return [self.root]
        return [v for v in range(self.n) if v != self.root and not self.children(v)]

    def bipartition(self) -> tuple[list[int], list[int]]:
        """Even-depth and odd-depth classes, in this order."""
        even = [v for v in range(self.n) if self.depth(v) % 2 == 0]
        odd = [v for v in range(self.n) if self.depth(v) % 2 == 1]
        return even, odd

    def subtree_sizes(self) -> list[int]:
        sizes = [1] * self.n
        for v in reversed(self.preorder()):
            if v != self.root:
                sizes[self.parent[v]] += sizes[v]
        return sizes

    def rerooted(self, new_root: int) -> "RootedTree":
        """Same underlying tree, rooted at new_root."""
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for p, v in self.edges():
            adj[p].append(v)
            adj[v].append(p)
        parent = [-1] * self.n
        seen = [False] * self.n
        seen[new_root] = True
        stack = [new_root]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if not seen[u]:
                    seen[u] = True
                    parent[u] = v
                    stack.append(u)
        return RootedTree(parent, new_root)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, RootedTree)
            and self.root == other.root
            and self.parent == other.parent
        )

    def __repr__(self) -> str:
        return f"RootedTree(n={self.n}, root={self.root})"

    # -- serialization (JSON tree format) ------------------------------

    def to_json(self) -> str:
        return json.dumps({"root": self.root, "parent": self.parent})

    @classmethod
    def from_json(cls, text: str) -> "RootedTree":
        obj = json.loads(text)
        return cls(obj["parent"], obj["root"])


@dataclass(frozen=True)
class Verdict:
    """Outcome of an embedding check; `detail` names the first violation."""

    ok: bool
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


Embedding = dict[int, int]  # partial injective map: tree vertex -> host vertex


def verify_embedding(
    g: Graph, t: RootedTree, phi: Embedding, require_total: bool = False
) -> Verdict:
    """Check that phi is injective and maps mapped tree edges onto host edges.

    This is the oracle every embedder in the package is audited against, so it
    recomputes everything from raw adjacency and trusts nothing.
    """
    seen_images: dict[int, int] = {}
    for v, img in phi.items():
        if not (0 <= v < t.n):
            return Verdict(False, f"tree vertex {v} out of range")
        if not (0 <= img < g.n):
            return Verdict(False, f"host vertex {img} out of range (image of {v})")
        if img in seen_images:
            return Verdict(False, f"not injective: {seen_images[img]} and {v} both map to {img}")
        seen_images[img] = v
    if require_total:
        for v in range(t.n):
            if v not in phi:
                return Verdict(False, f"tree vertex {v} not embedded")
    for p, v in t.edges():
        if p in phi and v in phi and not g.has_edge(phi[p], phi[v]):
            return Verdict(False, f"tree edge ({p},{v}) maps to non-edge ({phi[p]},{phi[v]})")
    return Verdict(True)


def min_degree(g: Graph) -> int:
    return g.min_degree()


def universal_vertices(g: Graph) -> list[int]:
    return g.universal_vertices()
