"""Seedable instance generators: hosts with degree constraints, rooted trees.

Generation is a pure function of (parameters, rng_seed).  Host profiles cover
the extremal examples (regular graphs, disjoint cliques), the dense hosts with
a universal vertex that the conjecture speaks about, near-tripartite "special"
hosts, and the structured five-part hosts consumed by the structured embedder.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from .graphs import Graph, RootedTree

HOST_KINDS = (
    "random-min-degree-universal",
    "gamma-special",
    "tripartite-structured",
    "disjoint-cliques",
    "regular",
)

TREE_PROFILES = ("uniform", "caterpillar", "broom", "bad-heavy")


@dataclass(frozen=True)
class HostProfile:
    kind: str
    params: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in HOST_KINDS:
            raise ValueError(f"unknown host kind {self.kind!r}")


class InfeasibleProfile(ValueError):
    """Requested host parameters cannot be realized."""


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _fill_bipartite(adj: np.ndarray, a: np.ndarray, b: np.ndarray,
                    density: float, rng: np.random.Generator) -> None:
    """Realize the pair (a, b) as a random bipartite graph with exact edge count."""
    total = len(a) * len(b)
    count = int(round(density * total))
    if count <= 0:
        return
    if count >= total:
        adj[np.ix_(a, b)] = True
        adj[np.ix_(b, a)] = True
        return
    chosen = rng.choice(total, size=count, replace=False)
    ia, ib = np.divmod(chosen, len(b))
    adj[a[ia], b[ib]] = True
    adj[b[ib], a[ia]] = True


def _min_degree_universal(m: int, params: dict, rng: np.random.Generator) -> Graph:
    """(m+1)-vertex host, min degree >= floor(2m/3), vertex 0 universal."""
    n = m + 1
    target = (2 * m) // 3
    density = float(params.get("density", 0.75))
    adj = np.zeros((n, n), dtype=bool)
    if n > 1:
        us, vs = np.triu_indices(n, 1)
        mask = rng.random(len(us)) < density
        adj[us[mask], vs[mask]] = True
        adj[vs[mask], us[mask]] = True
    adj[0, 1:] = True
    adj[1:, 0] = True
    # repair deficient vertices by adding edges to their non-neighbors
    for v in range(n):
        deg = int(adj[v].sum())
        if deg >= target:
            continue
        candidates = np.flatnonzero(~adj[v])
        candidates = candidates[candidates != v]
        add = rng.choice(candidates, size=target - deg, replace=False)
        adj[v, add] = True
        adj[add, v] = True
    return Graph(n, adj)


def _gamma_special(m: int, params: dict, rng: np.random.Generator) -> tuple[Graph, dict]:
    """Host carrying a planted gamma-special witness tripartition.

    X1-X2 stays empty (trivially under the gamma^10 budget); all other pairs
    are dense so the min-degree side of desk-scale tests stays plausible.
    """
    gamma = Fraction(params.get("gamma", Fraction(1, 10)))
    n = m + 1
    third = n // 3
    sizes = [third, third, n - 2 * third]
    lo = Fraction(m, 3) - 3 * gamma * m
    hi = Fraction(m, 3) + 3 * gamma * m
    if not all(lo <= s <= hi for s in sizes):
        raise InfeasibleProfile(f"cannot fit near-equal thirds within [{lo},{hi}] for m={m}")
    perm = rng.permutation(n)
    x1 = np.sort(perm[: sizes[0]])
    x2 = np.sort(perm[sizes[0] : sizes[0] + sizes[1]])
    x3 = np.sort(perm[sizes[0] + sizes[1] :])
    dense = float(params.get("density", 0.9))
    adj = np.zeros((n, n), dtype=bool)
    _fill_bipartite(adj, x1, x3, dense, rng)
    _fill_bipartite(adj, x2, x3, dense, rng)
    for part in (x1, x2, x3):
        k = len(part)
        if k > 1:
            iu, ju = np.triu_indices(k, 1)
            mask = rng.random(len(iu)) < dense
            adj[part[iu[mask]], part[ju[mask]]] = True
            adj[part[ju[mask]], part[iu[mask]]] = True
    witness = {"X1": x1.tolist(), "X2": x2.tolist(), "X3": x3.tolist(), "gamma": gamma}
    return Graph(n, adj), witness


def _tripartite_structured(m: int, params: dict, rng: np.random.Generator) -> tuple[Graph, dict]:
    """Five-part host for the structured embedder, compliant by construction.

    H1,H2,H3 are equal near-thirds with cross-degree >= 99/100 achieved by
    deleting a capped number of cross edges per vertex; every H4 vertex sees at
    least two fifths of H2, every H5 vertex at least two fifths of H3; vertex w
    (inside H4 when possible) is universal.
    """
    n = m + 1
    n3 = int(params.get("core_size", -(-33 * m // 100)))
    if 3 * n3 > n:
        raise InfeasibleProfile(f"core parts of size {n3} do not fit in {n} vertices")
    rest = n - 3 * n3
    h5 = min(int(params.get("h5_size", rest // 3)), rest // 3)
    h4 = rest - h5
    if h5 > h4 // 2:
        raise InfeasibleProfile("|H5| must be at most |H4|/2")
    ids = np.arange(n)
    h1, h2, h3 = ids[:n3], ids[n3 : 2 * n3], ids[2 * n3 : 3 * n3]
    h4_ids, h5_ids = ids[3 * n3 : 3 * n3 + h4], ids[3 * n3 + h4 :]
    adj = np.zeros((n, n), dtype=bool)
    for a, b in ((h1, h2), (h1, h3), (h2, h3)):
        adj[np.ix_(a, b)] = True
        adj[np.ix_(b, a)] = True
    # sprinkle deletions; every vertex keeps >= 99/100 of each opposite core part
    budget = n3 // 100
    if budget > 0:
        miss: dict[tuple[int, int], int] = {}
        for a, b, pa, pb in ((h1, h2, 1, 2), (h1, h3, 1, 3), (h2, h3, 2, 3)):
            trials = int(float(params.get("delete_fraction", 0.3)) * len(a) * budget)
            for _ in range(trials):
                u = int(a[rng.integers(len(a))])
                v = int(b[rng.integers(len(b))])
                if not adj[u, v]:
                    continue
                if miss.get((u, pb), 0) >= budget or miss.get((v, pa), 0) >= budget:
                    continue
                adj[u, v] = adj[v, u] = False
                miss[(u, pb)] = miss.get((u, pb), 0) + 1
                miss[(v, pa)] = miss.get((v, pa), 0) + 1
    frac45 = float(params.get("h45_fraction", 0.5))
    for x in h4_ids:
        take = rng.choice(h2, size=max(int(frac45 * n3), -(-2 * n3 // 5)), replace=False)
        adj[x, take] = True
        adj[take, x] = True
    for x in h5_ids:
        take = rng.choice(h3, size=max(int(frac45 * n3), -(-2 * n3 // 5)), replace=False)
        adj[x, take] = True
        adj[take, x] = True
    w = int(h4_ids[0]) if len(h4_ids) else int(h1[0])
    adj[w, :] = True
    adj[:, w] = True
    adj[w, w] = False
    witness = {
        "H1": h1.tolist(), "H2": h2.tolist(), "H3": h3.tolist(),
        "H4": h4_ids.tolist(), "H5": h5_ids.tolist(), "w": w,
    }
    return Graph(n, adj), witness


def _disjoint_cliques(params: dict) -> Graph:
    clique_size = int(params["clique_size"])
    copies = int(params["copies"])
    if clique_size < 1 or copies < 1:
        raise InfeasibleProfile("clique_size and copies must be positive")
    n = clique_size * copies
    adj = np.zeros((n, n), dtype=bool)
    for c in range(copies):
        lo = c * clique_size
        adj[lo : lo + clique_size, lo : lo + clique_size] = True
    np.fill_diagonal(adj, False)
    return Graph(n, adj)


def _regular(m: int, params: dict) -> Graph:
    """Circulant d-regular graph on m+1 vertices (deterministic)."""
    n = m + 1
    d = int(params.get("degree", m - 1))
    if d < 0 or d >= n:
        raise InfeasibleProfile(f"regular degree {d} out of range for n={n}")
    if d * n % 2 == 1:
        raise InfeasibleProfile(f"no {d}-regular graph exists on {n} vertices (parity)")
    adj = np.zeros((n, n), dtype=bool)
    half = d // 2
    for off in range(1, half + 1):
        for v in range(n):
            u = (v + off) % n
            adj[v, u] = adj[u, v] = True
    if d % 2 == 1:
        for v in range(n // 2):
            u = v + n // 2
            adj[v, u] = adj[u, v] = True
    return Graph(n, adj)


def gen_host_with_witness(m: int, profile: HostProfile, rng_seed: int) -> tuple[Graph, dict]:
    """Generate a host; the dict carries profile-specific witnesses (may be empty)."""
    if m < 2:
        raise ValueError("m must be at least 2")
    rng = _rng(rng_seed)
    if profile.kind == "random-min-degree-universal":
        return _min_degree_universal(m, profile.params, rng), {}
    if profile.kind == "gamma-special":
        return _gamma_special(m, profile.params, rng)
    if profile.kind == "tripartite-structured":
        return _tripartite_structured(m, profile.params, rng)
    if profile.kind == "disjoint-cliques":
        return _disjoint_cliques(profile.params), {}
    if profile.kind == "regular":
        return _regular(m, profile.params), {}
    raise AssertionError(profile.kind)


def gen_host(m: int, profile: HostProfile, rng_seed: int) -> Graph:
    return gen_host_with_witness(m, profile, rng_seed)[0]


# -- trees ------------------------------------------------------------


def _tree_from_sequence(seq: list[int], n: int) -> list[int]:
    """Decode the classical bijective sequence encoding of labeled trees.

    Returns the edge list of the tree on vertices 0..n-1 encoded by `seq`
    (length n-2, entries in 0..n-1).
    """
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    import heapq

    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v))
    return edges


def _parents_from_edges(n: int, edges: list[tuple[int, int]], root: int) -> list[int]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    parent = [-1] * n
    seen = [False] * n
    seen[root] = True
    stack = [root]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if not seen[u]:
                seen[u] = True
                parent[u] = v
                stack.append(u)
    if not all(seen):
        raise ValueError("edge list is not a spanning tree")
    return parent


def gen_tree(m: int, profile: str, rng_seed: int) -> RootedTree:
    """Rooted tree with m edges; `profile` in {uniform, caterpillar, broom, bad-heavy}."""
    if m < 1:
        raise ValueError("m must be at least 1")
    if profile not in TREE_PROFILES:
        raise ValueError(f"unknown tree profile {profile!r}")
    rng = _rng(rng_seed)
    n = m + 1
    if profile == "uniform":
        if n == 2:
            return RootedTree([-1, 0], 0)
        seq = rng.integers(0, n, size=n - 2).tolist()
        edges = _tree_from_sequence(seq, n)
        return RootedTree(_parents_from_edges(n, edges, 0), 0)
    if profile == "caterpillar":
        spine_len = max(2, int(rng.integers(2, max(3, m // 2 + 1))))
        spine_len = min(spine_len, n)
        parent = [-1] * n
        for v in range(1, spine_len):
            parent[v] = v - 1
        for v in range(spine_len, n):
            parent[v] = int(rng.integers(0, spine_len))
        return RootedTree(parent, 0)
    if profile == "broom":
        # star K_{1,3} plus a pendant path out of the center
        if n < 5:
            raise ValueError("broom profile needs m >= 4")
        parent = [-1] * n
        parent[1] = parent[2] = parent[3] = 0
        parent[4] = 0
        for v in range(5, n):
            parent[v] = v - 1
        return RootedTree(parent, 0)
    # bad-heavy: a root carrying ceil(33m/100)+ cherries (3-vertex hanging
    # paths whose roots are path endpoints) plus leftover leaves at the root.
    cherries_min = -(-33 * m // 100)
    cherries_max = m // 3
    if cherries_min > cherries_max:
        raise ValueError(f"m={m} cannot host {cherries_min} cherries")
    c = int(rng.integers(cherries_min, cherries_max + 1))
    parent = [-1] * n
    v = 1
    for _ in range(c):
        parent[v] = 0
        parent[v + 1] = v
        parent[v + 2] = v + 1
        v += 3
    while v < n:
        parent[v] = 0
        v += 1
    return RootedTree(parent, 0)
