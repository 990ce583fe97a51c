"""Exact brute-force oracles: subtree containment, enumeration, conjecture scans.

Everything here is complete (no heuristics): `tree_contains` returns an
embedding iff one exists, the enumerators produce one representative per
isomorphism class, and `conjecture_scan` checks every generated pair.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .generators import HostProfile, gen_host, gen_tree
from .graphs import Embedding, Graph, RootedTree, verify_embedding

# -- containment ------------------------------------------------------


def tree_contains(g: Graph, t: RootedTree) -> Embedding | None:
    """Complete backtracking search for an injective homomorphism of t into g.

    Tree vertices are tried in DFS order from a maximum-degree vertex, host
    candidates in descending degree; pruning compares degrees and the free
    space left for the unplaced subtree.
    """
    nt, nh = t.n, g.n
    if nt > nh:
        return None
    # undirected tree adjacency and degrees
    tadj: list[list[int]] = [[] for _ in range(nt)]
    for p, v in t.edges():
        tadj[p].append(v)
        tadj[v].append(p)
    tdeg = [len(a) for a in tadj]
    start = max(range(nt), key=lambda v: tdeg[v])
    order = [start]
    parent_of = [-1] * nt
    seen = [False] * nt
    seen[start] = True
    stack = [start]
    while stack:
        v = stack.pop()
        for u in tadj[v]:
            if not seen[u]:
                seen[u] = True
                parent_of[u] = v
                order.append(u)
                stack.append(u)
    # children still unplaced below each vertex, for a free-degree prune
    pending = [len(tadj[v]) - (0 if v == start else 1) for v in range(nt)]
    bits = g.adjacency_bits()
    hdeg = g.degrees
    host_by_degree = sorted(range(nh), key=lambda v: -int(hdeg[v]))
    image = [-1] * nt
    used = 0

    def place(i: int) -> bool:
        nonlocal used
        if i == nt:
            return True
        v = order[i]
        if i == 0:
            candidates = host_by_degree
        else:
            pimg = image[parent_of[v]]
            candidates = sorted(
                (u for u in range(nh) if (bits[pimg] >> u) & 1),
                key=lambda u: -int(hdeg[u]),
            )
        need = tdeg[v]
        for u in candidates:
            if (used >> u) & 1:
                continue
            if int(hdeg[u]) < need:
                continue
            free_around = bin(bits[u] & ~used).count("1")
            if free_around < pending[v]:
                continue
            image[v] = u
            used |= 1 << u
            if place(i + 1):
                return True
            used &= ~(1 << u)
            image[v] = -1
        return False

    if not place(0):
        return None
    phi = {v: image[v] for v in range(nt)}
    assert verify_embedding(g, t, phi, require_total=True).ok
    return phi


def naive_contains(g: Graph, t: RootedTree) -> bool:
    """Independent oracle: try every injective vertex placement directly."""
    if t.n > g.n:
        return False
    tedges = list(t.edges())
    for perm in itertools.permutations(range(g.n), t.n):
        if all(g.has_edge(perm[a], perm[b]) for a, b in tedges):
            return True
    return False


# -- canonical forms --------------------------------------------------


def _rooted_code(adj: list[list[int]], root: int, parent: int) -> str:
    codes = sorted(
        _rooted_code(adj, c, root) for c in adj[root] if c != parent
    )
    return "(" + "".join(codes) + ")"


def tree_canonical_code(n: int, edges: list[tuple[int, int]]) -> str:
    """Canonical string of an unrooted tree: min over centroid rootings."""
    if n == 1:
        return "()"
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    # find centroid(s) by repeatedly stripping leaves
    degree = [len(a) for a in adj]
    layer = [v for v in range(n) if degree[v] <= 1]
    removed = 0
    alive = [True] * n
    while n - removed > 2:
        nxt = []
        for v in layer:
            alive[v] = False
            removed += 1
            for u in adj[v]:
                if alive[u]:
                    degree[u] -= 1
                    if degree[u] == 1:
                        nxt.append(u)
        layer = nxt
    centroids = [v for v in range(n) if alive[v]]
    return min(_rooted_code(adj, c, -1) for c in centroids)


def _edge_bitmap(n: int, adj_bits: list[int], perm: tuple[int, ...]) -> int:
    pos = 0
    out = 0
    for i in range(n):
        pi = perm[i]
        row = adj_bits[pi]
        for j in range(i + 1, n):
            if (row >> perm[j]) & 1:
                out |= 1 << pos
            pos += 1
    return out


def _refine_colors(n: int, bits: list[int]) -> list[int]:
    colors = [bin(bits[v]).count("1") for v in range(n)]
    while True:
        sig = []
        for v in range(n):
            neigh = sorted(colors[u] for u in range(n) if (bits[v] >> u) & 1)
            sig.append((colors[v], tuple(neigh)))
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if new == colors:
            return colors
        colors = new


def graph_canonical_form(g: Graph) -> tuple[int, int]:
    """(n, canonical edge bitmap), minimized over color-respecting relabelings.

    Intended for small graphs (n <= 10); refinement keeps the permutation
    search tractable except for highly symmetric inputs.
    """
    n = g.n
    bits = g.adjacency_bits()
    colors = _refine_colors(n, bits)
    classes: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        classes.setdefault(c, []).append(v)
    ordered_classes = [classes[c] for c in sorted(classes)]
    best: int | None = None
    for parts in itertools.product(*(itertools.permutations(cl) for cl in ordered_classes)):
        perm = tuple(v for part in parts for v in part)
        bm = _edge_bitmap(n, bits, perm)
        if best is None or bm < best:
            best = bm
    assert best is not None
    return (n, best)


# -- enumeration ------------------------------------------------------


def enumerate_trees(m: int) -> list[RootedTree]:
    """One representative per isomorphism class of trees with m edges.

    Grown by leaf attachment with canonical-code deduplication at every size;
    representatives are rooted at vertex 0.
    """
    reps: list[list[tuple[int, int]]] = [[]]  # single-vertex tree
    for size in range(1, m + 1):
        seen: dict[str, list[tuple[int, int]]] = {}
        for edges in reps:
            for attach in range(size):
                new_edges = edges + [(attach, size)]
                code = tree_canonical_code(size + 1, new_edges)
                if code not in seen:
                    seen[code] = new_edges
        reps = [seen[c] for c in sorted(seen)]
    out = []
    for edges in reps:
        adj: list[list[int]] = [[] for _ in range(m + 1)]
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        parent = [-1] * (m + 1)
        stack = [0]
        seen_v = [False] * (m + 1)
        seen_v[0] = True
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if not seen_v[u]:
                    seen_v[u] = True
                    parent[u] = v
                    stack.append(u)
        out.append(RootedTree(parent, 0))
    return out


def _graphs_with_max_degree(n: int, cap: int) -> list[Graph]:
    """All isomorphism classes of n-vertex graphs with max degree <= cap."""
    levels: list[list[list[int]]] = [[[0]]]  # graphs as adjacency bitmask lists
    for k in range(1, n):
        nxt: dict[tuple[int, int], list[int]] = {}
        for bits in levels[-1]:
            degs = [bin(b).count("1") for b in bits]
            open_slots = [v for v in range(k) if degs[v] < cap]
            for r in range(0, min(cap, len(open_slots)) + 1):
                for comb in itertools.combinations(open_slots, r):
                    new_bits = list(bits) + [0]
                    for v in comb:
                        new_bits[v] |= 1 << k
                        new_bits[k] |= 1 << v
                    gk = Graph.from_edges(
                        k + 1,
                        [(u, v) for u in range(k + 1) for v in range(u + 1, k + 1)
                         if (new_bits[u] >> v) & 1],
                    )
                    key = graph_canonical_form(gk)
                    if key not in nxt:
                        nxt[key] = new_bits
        levels.append(list(nxt.values()))
    out = []
    for bits in levels[-1]:
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if (bits[u] >> v) & 1]
        out.append(Graph.from_edges(n, edges))
    return out


def enumerate_hosts(m: int, mode: str = "exhaustive", count: int = 100,
                    rng_seed: int = 0) -> Iterator[Graph]:
    """Hosts on m+1 vertices with a universal vertex and min degree floor(2m/3).

    Exhaustive mode (m <= 7): every compliant host is the join of a universal
    vertex with an m-vertex graph of min degree floor(2m/3)-1, so those are
    enumerated via their degree-capped complements and deduplicated.
    Random mode: seeded sampled hosts from the generator profile.
    """
    if mode == "random":
        profile = HostProfile("random-min-degree-universal")
        for i in range(count):
            yield gen_host(m, profile, rng_seed + i)
        return
    if m > 7:
        raise ValueError("exhaustive host enumeration supported for m <= 7 only")
    need = (2 * m) // 3 - 1  # min degree of G - w
    cap = (m - 1) - need     # max degree of the complement of G - w
    seen: set[tuple[int, int]] = set()
    for comp in _graphs_with_max_degree(m, cap):
        inner_edges = [
            (u, v) for u in range(m) for v in range(u + 1, m) if not comp.has_edge(u, v)
        ]
        if m > 0:
            inner = Graph.from_edges(m, inner_edges)
            if m > 1 and inner.min_degree() < need:
                continue
        edges = [(u + 1, v + 1) for u, v in inner_edges] + [(0, v) for v in range(1, m + 1)]
        g = Graph.from_edges(m + 1, edges)
        key = graph_canonical_form(g)
        if key in seen:
            continue
        seen.add(key)
        yield g


# -- conjecture scan --------------------------------------------------


@dataclass
class ScanFailure:
    m: int
    host_text: str
    tree_json: str
    reason: str


@dataclass
class ScanReport:
    mode: str
    m_values: list[int]
    trees_tested: int = 0
    hosts_tested: int = 0
    pairs_tested: int = 0
    failures: list[ScanFailure] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def all_passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "m_values": self.m_values,
            "trees_tested": self.trees_tested,
            "hosts_tested": self.hosts_tested,
            "pairs_tested": self.pairs_tested,
            "failures": [
                {"m": f.m, "host": f.host_text, "tree": f.tree_json, "reason": f.reason}
                for f in self.failures
            ],
            "elapsed": self.elapsed,
        }


def check_pair(g: Graph, t: RootedTree) -> str | None:
    """None if t embeds in g, otherwise a failure reason."""
    phi = tree_contains(g, t)
    if phi is None:
        return "no embedding found by complete search"
    verdict = verify_embedding(g, t, phi, require_total=True)
    if not verdict.ok:
        return f"solver returned invalid embedding: {verdict.detail}"
    return None


def conjecture_scan(
    m_values: list[int],
    mode: str = "exhaustive",
    budget: int = 10_000,
    rng_seed: int = 0,
    threads: int = 1,
    on_item=None,
) -> ScanReport:
    """Scan (host, tree) pairs for containment counterexamples.

    Exhaustive mode pairs every compliant host class with every tree class for
    each m; random mode samples `budget` pairs across the given m values.
    Failures are counterexamples to the small-m statement and are reported,
    never suppressed.
    """
    start = time.monotonic()
    report = ScanReport(mode=mode, m_values=list(m_values))
    items: list[tuple[int, Graph, RootedTree]] = []
    if mode == "exhaustive":
        for m in m_values:
            hosts = list(enumerate_hosts(m))
            trees = enumerate_trees(m)
            report.hosts_tested += len(hosts)
            report.trees_tested += len(trees)
            items.extend((m, g, t) for g in hosts for t in trees)
    elif mode == "random":
        rng = np.random.Generator(np.random.PCG64(rng_seed))
        profile = HostProfile("random-min-degree-universal")
        per_m = max(1, budget // max(1, len(m_values)))
        for m in m_values:
            for i in range(per_m):
                g = gen_host(m, profile, int(rng.integers(0, 2**31)))
                t = gen_tree(m, "uniform", int(rng.integers(0, 2**31)))
                items.append((m, g, t))
            report.hosts_tested += per_m
            report.trees_tested += per_m
    else:
        raise ValueError(f"unknown scan mode {mode!r}")

    def run_item(item: tuple[int, Graph, RootedTree]) -> tuple[int, Graph, RootedTree, str | None]:
        m, g, t = item
        return (m, g, t, check_pair(g, t))

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_item, items))
    else:
        results = [run_item(it) for it in items]

    for m, g, t, reason in results:
        report.pairs_tested += 1
        if reason is not None:
            report.failures.append(
                ScanFailure(m=m, host_text=g.to_text(), tree_json=t.to_json(), reason=reason)
            )
        if on_item is not None:
            on_item(m, g, t, reason)
    report.elapsed = time.monotonic() - start
    return report
