"""Cutting a rooted tree into seeds and micro-tree families.

The cut produces a seed set W and the components of T-W, classified into
single leaves (L), constant-size trees (F1), larger trees (F2), and the
two-seeded subset (F2'), plus the connector set of seed-neighbours inside
two-seeded trees.  A relaxed mode drops the F2 upper size bound and keeps
3-vertex components in F1 even when 1/beta < 3, which is what the structured
embedder consumes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .graphs import RootedTree


def as_fraction(x) -> Fraction:
    """Exact rational from int/str/Fraction; floats go through repr to keep
    short decimals like 0.05 exact."""
    if isinstance(x, float):
        return Fraction(str(x))
    return Fraction(x)


@dataclass(frozen=True)
class MicroTree:
    """One component of T-W: its vertex set, root (vertex nearest the seed
    above), and how it attaches to seeds."""

    vertices: tuple[int, ...]
    root: int
    upper_seed: int
    lower_seeds: tuple[int, ...] = ()
    connectors: tuple[int, ...] = ()  # parents of lower seeds, inside the tree

    @property
    def size(self) -> int:
        return len(self.vertices)

    def seed_neighbours(self) -> tuple[int, ...]:
        return (self.upper_seed, *self.lower_seeds)


@dataclass(frozen=True)
class TreeType:
    """Bipartition profile of a micro-tree: t vertices, t1 in the root's
    class, t2 in the other."""

    t: int
    t1: int
    t2: int
    category: str  # Bal | NearBal | Unbal
    is_bad: bool


@dataclass
class TreeDecomposition:
    seeds: tuple[int, ...]
    L: tuple[MicroTree, ...]
    F1: tuple[MicroTree, ...]
    F2: tuple[MicroTree, ...]          # includes the two-seeded trees
    F2_prime: tuple[MicroTree, ...]    # subset of F2
    connector_set: tuple[int, ...]     # V-tilde
    beta: Fraction
    relaxed: bool = False
    padded: tuple[int, ...] = ()       # seeds added by pad_seeds
    absorbed: tuple[int, ...] = ()     # seeds added by the absorption step
    separators: tuple[int, ...] = ()   # seeds added by the separation step
    notes: list[str] = field(default_factory=list)

    @property
    def seed_set(self) -> frozenset[int]:
        return frozenset(self.seeds)

    def all_micro_trees(self) -> tuple[MicroTree, ...]:
        return self.L + self.F1 + self.F2

    @property
    def f1_total(self) -> int:
        return sum(mt.size for mt in self.F1)

    @property
    def f2_total(self) -> int:
        return sum(mt.size for mt in self.F2)

    def to_json(self) -> str:
        return json.dumps({
            "W": list(self.seeds),
            "L": [list(mt.vertices) for mt in self.L],
            "F1": [list(mt.vertices) for mt in self.F1],
            "F2": [list(mt.vertices) for mt in self.F2],
            "F2p": [list(mt.vertices) for mt in self.F2_prime],
            "Vtilde": list(self.connector_set),
            "beta": str(self.beta),
        })


def f1_ceiling(beta: Fraction, relaxed: bool) -> Fraction:
    """Size ceiling for F1 membership.

    Relaxed mode keeps it at least 3 so that 3-vertex components stay in F1:
    the structured embedder runs at beta > 1/3 where the nominal bound 1/beta
    would push them into F2.
    """
    ceil = 1 / beta
    if relaxed:
        return max(ceil, Fraction(3))
    return ceil


def _components_of(tree: RootedTree, seeds: set[int]) -> list[MicroTree]:
    """Components of T - seeds with their roots and seed attachments."""
    n = tree.n
    comp = [-1] * n
    comps: list[list[int]] = []
    for v in tree.preorder():
        if v in seeds:
            continue
        p = tree.parent[v]
        if v != tree.root and p not in seeds and comp[p] >= 0:
            comp[v] = comp[p]
            comps[comp[p]].append(v)
        else:
            comp[v] = len(comps)
            comps.append([v])
    out = []
    for verts in comps:
        root = verts[0]  # preorder guarantees the min-depth vertex comes first
        lower = []
        conns = []
        vert_set = set(verts)
        for s in seeds:
            p = tree.parent[s]
            if p in vert_set:
                lower.append(s)
                conns.append(p)
        upper = tree.parent[root]
        if upper == -1 or upper not in seeds:
            raise AssertionError("component root must hang from a seed")
        order = sorted(range(len(lower)), key=lambda i: lower[i])
        out.append(MicroTree(
            vertices=tuple(sorted(verts)),
            root=root,
            upper_seed=upper,
            lower_seeds=tuple(lower[i] for i in order),
            connectors=tuple(conns[i] for i in order),
        ))
    return out


def _steiner_separators(tree: RootedTree, mt: MicroTree) -> list[int]:
    """Vertices of the micro-tree that must become seeds so no piece keeps
    more than two seed attachments: branch vertices of the Steiner tree of
    the attachment points, interior attachment points, and any vertex
    carrying two or more attachments itself."""
    weight: dict[int, int] = {}
    weight[mt.root] = weight.get(mt.root, 0) + 1
    for c in mt.connectors:
        weight[c] = weight.get(c, 0) + 1
    marked = sorted(weight)
    chosen = {v for v, w in weight.items() if w >= 2}
    if len(marked) >= 2:
        vert_set = set(mt.vertices)
        # Steiner tree = union of pairwise paths; in a tree this is the set of
        # vertices lying on a path between two marked vertices.  Compute
        # Steiner degree by counting, for each vertex, the directions that
        # lead to a marked vertex.
        adj: dict[int, list[int]] = {v: [] for v in mt.vertices}
        for v in mt.vertices:
            p = tree.parent[v]
            if p in vert_set:
                adj[v].append(p)
                adj[p].append(v)
        # leaf-strip: repeatedly remove unmarked degree-<=1 vertices
        deg = {v: len(adj[v]) for v in mt.vertices}
        alive = set(mt.vertices)
        frontier = [v for v in alive if deg[v] <= 1 and v not in weight]
        while frontier:
            v = frontier.pop()
            if v not in alive:
                continue
            alive.remove(v)
            for u in adj[v]:
                if u in alive:
                    deg[u] -= 1
                    if deg[u] <= 1 and u not in weight:
                        frontier.append(u)
        for v in alive:
            live_deg = sum(1 for u in adj[v] if u in alive)
            if live_deg >= 3:
                chosen.add(v)
            elif v in weight and live_deg >= 2:
                chosen.add(v)
    return sorted(chosen)


def cut_tree(tree: RootedTree, beta, relax_f2_upper: bool = False) -> TreeDecomposition:
    """Cut the tree into seeds W and micro-tree families (L, F1, F2, F2').

    Seed selection: repeatedly take the vertex of maximal depth whose live
    subtree exceeds beta*m (ties to the smallest id) and delete that subtree;
    the root is always the final seed.  Afterwards, components attached to
    three or more seeds are split by separator seeds, and small components
    attached to two seeds are absorbed into W entirely.
    """
    beta = as_fraction(beta)
    if not (0 < beta < 1):
        raise ValueError("beta must be in (0, 1)")
    m = tree.edge_count
    if m < 1:
        raise ValueError("tree must have at least one edge")
    notes: list[str] = []
    threshold = beta * m

    # first pass: farthest-from-root heavy-subtree rule
    sizes = tree.subtree_sizes()
    alive = [True] * tree.n
    live_size = list(sizes)
    depth = [tree.depth(v) for v in range(tree.n)]
    order_by_depth = sorted(range(tree.n), key=lambda v: (-depth[v], v))
    seeds: set[int] = set()
    while alive[tree.root]:
        pick = None
        if live_size[tree.root] > threshold:
            for v in order_by_depth:
                if alive[v] and live_size[v] > threshold:
                    pick = v
                    break
        if pick is None:
            pick = tree.root
        # remove pick's live subtree, updating ancestor sizes
        removed = live_size[pick]
        stack = [pick]
        while stack:
            v = stack.pop()
            if not alive[v]:
                continue
            alive[v] = False
            stack.extend(c for c in tree.children(v) if alive[c])
        p = tree.parent[pick]
        while p != -1 and alive[p]:
            live_size[p] -= removed
            p = tree.parent[p]
        seeds.add(pick)

    # separation: no component may keep 3+ seed attachments
    separators: list[int] = []
    while True:
        comps = _components_of(tree, seeds)
        bad = [mt for mt in comps if len(set(mt.seed_neighbours())) > 2]
        if not bad:
            break
        bad.sort(key=lambda mt: mt.root)
        extra = _steiner_separators(tree, bad[0])
        if not extra:
            raise AssertionError("separator search must make progress")
        separators.extend(extra)
        seeds.update(extra)

    # absorption: small two-seeded components become seeds wholesale
    ceiling = f1_ceiling(beta, relax_f2_upper)
    absorbed: list[int] = []
    comps = _components_of(tree, seeds)
    for mt in comps:
        if len(set(mt.seed_neighbours())) == 2 and mt.size <= ceiling:
            if mt.size == 1:
                notes.append(
                    f"size-1 component {mt.vertices[0]} with two seed "
                    f"neighbours absorbed"
                )
            absorbed.extend(mt.vertices)
            seeds.update(mt.vertices)

    comps = _components_of(tree, seeds)
    L, F1, F2, F2p = [], [], [], []
    for mt in comps:
        two_seeded = len(set(mt.seed_neighbours())) == 2
        if two_seeded:
            F2.append(mt)
            F2p.append(mt)
        elif mt.size == 1:
            L.append(mt)
        elif mt.size <= ceiling:
            F1.append(mt)
        else:
            F2.append(mt)

    vtilde: set[int] = set()
    for mt in F2p:
        vtilde.add(mt.root)
        vtilde.update(mt.connectors)

    return TreeDecomposition(
        seeds=tuple(sorted(seeds)),
        L=tuple(sorted(L, key=lambda mt: mt.vertices)),
        F1=tuple(sorted(F1, key=lambda mt: mt.vertices)),
        F2=tuple(sorted(F2, key=lambda mt: mt.vertices)),
        F2_prime=tuple(sorted(F2p, key=lambda mt: mt.vertices)),
        connector_set=tuple(sorted(vtilde)),
        beta=beta,
        relaxed=relax_f2_upper,
        absorbed=tuple(sorted(absorbed)),
        separators=tuple(sorted(separators)),
        notes=notes,
    )


def classify(tree: RootedTree, vertices: Iterable[int], root: int) -> TreeType:
    """Type of a micro-tree: size, bipartition split, balance category,
    badness (3-vertex path rooted at an endpoint)."""
    verts = set(vertices)
    if root not in verts:
        raise ValueError("root must belong to the micro-tree")
    t = len(verts)
    root_depth = tree.depth(root)
    t1 = sum(1 for v in verts if (tree.depth(v) - root_depth) % 2 == 0)
    t2 = t - t1
    if t1 == t2:
        category = "Bal"
    elif t1 == t2 + 1:
        category = "NearBal"
    else:
        category = "Unbal"
    is_bad = False
    if t == 3:
        internal_deg = {
            v: sum(1 for c in tree.children(v) if c in verts) + (1 if tree.parent[v] in verts else 0)
            for v in verts
        }
        is_bad = internal_deg[root] == 1 and sorted(internal_deg.values()) == [1, 1, 2]
    return TreeType(t=t, t1=t1, t2=t2, category=category, is_bad=is_bad)


def classify_micro(tree: RootedTree, mt: MicroTree) -> TreeType:
    return classify(tree, mt.vertices, mt.root)


def pad_exponent(beta: Fraction) -> int:
    """j* = ceil(log2(2 / beta^2)), computed exactly."""
    target = 2 / (beta * beta)
    j = 0
    while Fraction(2) ** j < target:
        j += 1
    return j


def pad_seeds(
    tree: RootedTree, d: TreeDecomposition, exponent: int | None = None
) -> tuple[RootedTree, TreeDecomposition]:
    """Attach new leaf seeds at the root until |W| = 47 * 2^j.

    The default exponent is j* = ceil(log2(2/beta^2)); callers embedding at
    desk scale pass the smallest exponent that fits the current seed count.
    """
    j = pad_exponent(d.beta) if exponent is None else exponent
    target = 47 * (2 ** j)
    have = len(d.seeds)
    if have > target:
        raise ValueError(f"seed count {have} exceeds padding target {target}")
    extra = target - have
    parent = list(tree.parent) + [tree.root] * extra
    new_tree = RootedTree(parent, tree.root)
    new_ids = tuple(range(tree.n, tree.n + extra))
    d2 = TreeDecomposition(
        seeds=tuple(sorted(d.seeds + new_ids)),
        L=d.L, F1=d.F1, F2=d.F2, F2_prime=d.F2_prime,
        connector_set=d.connector_set,
        beta=d.beta, relaxed=d.relaxed,
        padded=new_ids,
        absorbed=d.absorbed, separators=d.separators,
        notes=list(d.notes),
    )
    return new_tree, d2


def is_gamma_nice(tree: RootedTree, subtree: Iterable[int], t_star: int, gamma) -> bool:
    """Definitional check: |T*| < gamma*m, t* in T*, T* connected, and every
    component of T - T* contains a neighbour of t*."""
    gamma = as_fraction(gamma)
    m = tree.edge_count
    sub = set(subtree)
    if t_star not in sub or not sub:
        return False
    if len(sub) >= gamma * m:
        return False
    # connectivity of T* within the tree
    inside_root = min(sub, key=tree.depth)
    reach = {inside_root}
    stack = [inside_root]
    while stack:
        v = stack.pop()
        for c in tree.children(v):
            if c in sub and c not in reach:
                reach.add(c)
                stack.append(c)
    if reach != sub:
        return False
    nbrs_tstar = set(tree.children(t_star))
    if tree.parent[t_star] != -1:
        nbrs_tstar.add(tree.parent[t_star])
    # components of T - T* and their adjacency to t*
    comp = [-1] * tree.n
    comp_hit: list[bool] = []
    for v in tree.preorder():
        if v in sub:
            continue
        p = tree.parent[v]
        if v != tree.root and p not in sub and comp[p] >= 0:
            comp[v] = comp[p]
        else:
            comp[v] = len(comp_hit)
            comp_hit.append(False)
        if v in nbrs_tstar:
            comp_hit[comp[v]] = True
    return all(comp_hit)


def gamma_nice_subtree(tree: RootedTree, gamma) -> tuple[set[int], int] | None:
    """Heuristic finder; any returned witness passes the definitional check.

    Tries candidate roots in decreasing degree order with the singleton
    subtree, which attaches every remaining component by construction; the
    size bound is the only way to fail.
    """
    gamma = as_fraction(gamma)
    degree = [
        len(tree.children(v)) + (0 if tree.parent[v] == -1 else 1)
        for v in range(tree.n)
    ]
    for t_star in sorted(range(tree.n), key=lambda v: (-degree[v], v)):
        cand = {t_star}
        if is_gamma_nice(tree, cand, t_star, gamma):
            return cand, t_star
    return None


@dataclass
class InvariantReport:
    passed: dict[str, bool]
    details: dict[str, str]

    @property
    def all_ok(self) -> bool:
        return all(self.passed.values())

    def ok_except_c(self) -> bool:
        return all(v for k, v in self.passed.items() if k != "c")


def check_invariants(tree: RootedTree, d: TreeDecomposition) -> InvariantReport:
    """Exact audit of the cut-tree contract on a decomposition."""
    passed: dict[str, bool] = {}
    details: dict[str, str] = {}
    m = tree.edge_count - len(d.padded)
    beta = d.beta
    seed_set = set(d.seeds)
    ceiling = f1_ceiling(beta, d.relaxed)

    passed["a"] = tree.root in seed_set
    bound_b = 2 / (beta * beta)
    real_seeds = len(d.seeds) - len(d.padded)
    passed["b"] = real_seeds <= bound_b
    details["b"] = f"|W|={real_seeds} vs 2/beta^2={float(bound_b):.1f}"

    if beta * m > 1:
        childless = [
            s for s in d.seeds
            if s not in d.padded and not tree.children(s)
        ]
        non_absorbed = [s for s in childless if s not in d.absorbed]
        passed["c"] = not non_absorbed
        details["c"] = (
            f"childless seeds: {len(childless)} "
            f"(absorbed: {len(childless) - len(non_absorbed)})"
        )
    else:
        passed["c"] = True

    passed["d"] = all(mt.size == 1 for mt in d.L)
    passed["e"] = all(1 < mt.size <= ceiling for mt in d.F1)
    if d.relaxed:
        passed["f"] = all(mt.size > ceiling for mt in d.F2)
    else:
        passed["f"] = all(ceiling < mt.size <= beta * m for mt in d.F2)
    prime = set(d.F2_prime)
    one_seeded = [mt for mt in d.all_micro_trees() if mt not in prime]
    passed["g"] = all(len(set(mt.seed_neighbours())) == 1 for mt in one_seeded)
    passed["h"] = all(len(set(mt.seed_neighbours())) == 2 for mt in d.F2_prime)
    passed["i"] = len(d.connector_set) < 2 * beta * m
    details["i"] = f"|Vtilde|={len(d.connector_set)} vs 2*beta*m={float(2 * beta * m):.1f}"

    covered: list[int] = list(d.seeds)
    for mt in d.all_micro_trees():
        covered.extend(mt.vertices)
    passed["union"] = sorted(covered) == list(range(tree.n))

    return InvariantReport(passed=passed, details=details)
