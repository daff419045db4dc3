"""Exhaustive maximum-scheme search via branch and bound on the distance graph.

Vertices are the lattice elements inside the height window, edges join pairs
at distance >= d, and a maximum scheme is a maximum clique.  The search is
Tomita-style (greedy coloring bound) with a fixed vertex order (height, then
element id).  Top-level branches are fully isolated: each starts from the
shared greedy incumbent and never sees its siblings' improvements, and the
merge runs in branch order — so the result, proof status, and node counts
are identical for every worker count.  The node budget applies per top-level
branch; the wall-clock budget is a safety net and is the only abort path
that can vary between runs.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .bounds import kks_bound, puncture_budget
from .lattice import Lattice, iter_bits
from .schemes import Scheme, make_scheme


@dataclass(frozen=True)
class SearchProblem:
    lattice: Lattice
    d: int
    window: tuple[int, int] | None = None
    budget_nodes: int = 10_000_000
    budget_secs: float = 60.0


@dataclass(frozen=True)
class SearchResult:
    members: tuple[int, ...]  # lattice element ids, sorted
    best_size: int
    proven_optimal: bool
    nodes: int


def _window_ids(lat: Lattice, window) -> list[int]:
    if window is None:
        return list(range(len(lat)))
    lo, hi = window
    if lo < 0 or hi < lo:
        raise ValueError("invalid height window")
    return [x for x in range(len(lat)) if lo <= lat.heights[x] <= hi]


def _build_graph(lat: Lattice, d: int, ids: list[int]):
    verts = sorted(ids, key=lambda x: (lat.heights[x], x))
    m = len(verts)
    adj = [0] * m
    for i in range(m):
        for j in range(i + 1, m):
            if lat.distance(verts[i], verts[j]) >= d:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return verts, adj


class _Budget(Exception):
    pass


class _BranchSearch:
    """One self-contained top-level subtree of the clique search."""

    def __init__(self, adj, node_budget, deadline):
        self.adj = adj
        self.node_budget = node_budget
        self.deadline = deadline
        self.nodes = 0
        self.best_size = 0
        self.best_mask = 0

    def run(self, v: int, cand_mask: int, start_best: int) -> bool:
        self.best_size = start_best
        self.best_mask = 0
        try:
            self._expand(1 << v, cand_mask, 1)
            return True
        except _Budget:
            return False

    def _expand(self, r_mask: int, p_mask: int, r_size: int):
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise _Budget
        if self.deadline is not None and self.nodes % 4096 == 0 and time.monotonic() > self.deadline:
            raise _Budget
        if not p_mask:
            if r_size > self.best_size:
                self.best_size = r_size
                self.best_mask = r_mask
            return
        order, bound = self._color_sort(p_mask)
        adj = self.adj
        for idx in range(len(order) - 1, -1, -1):
            if r_size + bound[idx] <= self.best_size:
                return
            v = order[idx]
            self._expand(r_mask | (1 << v), p_mask & adj[v], r_size + 1)
            p_mask ^= 1 << v

    def _color_sort(self, p_mask: int):
        # Greedy sequential coloring in vertex order; a clique meets each
        # color class at most once, so color index bounds the growth.
        classes: list[list[int]] = []
        masks: list[int] = []
        adj = self.adj
        for v in iter_bits(p_mask):
            for ci, cmask in enumerate(masks):
                if not adj[v] & cmask:
                    classes[ci].append(v)
                    masks[ci] |= 1 << v
                    break
            else:
                classes.append([v])
                masks.append(1 << v)
        order: list[int] = []
        bound: list[int] = []
        for ci, cls in enumerate(classes):
            for v in cls:
                order.append(v)
                bound.append(ci + 1)
        return order, bound


def _greedy_mask(adj, m: int) -> tuple[int, int]:
    mask = 0
    size = 0
    for v in range(m):
        if adj[v] & mask == mask:
            mask |= 1 << v
            size += 1
    return mask, size


def max_code(problem: SearchProblem, workers: int = 1) -> SearchResult:
    """Largest scheme with pairwise distance >= d inside the window.

    Returns the best scheme found, whether optimality was proven (budgets not
    exhausted), and the deterministic node count.  The returned scheme is
    re-verified through the schemes module before being reported.
    """
    if problem.d < 1:
        raise ValueError("minimum distance must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    lat = problem.lattice
    ids = _window_ids(lat, problem.window)
    if not ids:
        return SearchResult((), 0, True, 0)
    verts, adj = _build_graph(lat, problem.d, ids)
    m = len(verts)
    greedy_mask, greedy_size = _greedy_mask(adj, m)
    deadline = time.monotonic() + problem.budget_secs if problem.budget_secs else None

    branches = []
    for i in range(m):
        above = ~((1 << (i + 1)) - 1)
        branches.append((i, adj[i] & above))

    def run_branch(args):
        v, cand = args
        b = _BranchSearch(adj, problem.budget_nodes, deadline)
        completed = b.run(v, cand, greedy_size)
        return completed, b.best_size, b.best_mask, b.nodes

    if workers <= 1:
        results = [run_branch(x) for x in branches]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_branch, branches))

    best_size, best_mask = greedy_size, greedy_mask
    nodes = 0
    proven = True
    for completed, bs, bm, nd in results:
        nodes += nd
        proven = proven and completed
        if bs > best_size:
            best_size, best_mask = bs, bm

    members = tuple(sorted(verts[i] for i in iter_bits(best_mask)))
    if len(members) != best_size:
        raise RuntimeError("search bookkeeping error")
    if best_size >= 2:
        check = make_scheme(lat, members)
        if check.min_dist < problem.d:
            raise RuntimeError("search produced a scheme below the required distance")
    return SearchResult(members, best_size, proven, nodes)


def greedy_code(lat: Lattice, d: int, seed: int | None = None, window=None) -> Scheme:
    """Greedy maximal packing; meets the GV-type lower bound by maximality."""
    if d < 1:
        raise ValueError("minimum distance must be >= 1")
    ids = _window_ids(lat, window)
    if not ids:
        raise ValueError("empty height window")
    order = sorted(ids, key=lambda x: (lat.heights[x], x))
    if seed is not None:
        random.Random(seed).shuffle(order)
    chosen: list[int] = []
    for x in order:
        if all(lat.distance(x, y) >= d for y in chosen):
            chosen.append(x)
    return make_scheme(lat, chosen)


@dataclass(frozen=True)
class ProbeRow:
    q: int
    n: int
    l: int
    d: int
    alpha: int
    bound: int
    best_size: int
    gap: int
    attained: bool
    degenerate: bool  # alpha == 0: the bound counts the whole window
    proven_optimal: bool
    nodes: int


def conjecture_probe(
    q: int,
    n: int,
    l: int,
    d: int,
    budget_nodes: int = 10_000_000,
    budget_secs: float = 60.0,
    workers: int = 1,
    max_elements: int | None = None,
) -> ProbeRow:
    """Compare the constant-dimension bound against the exact search optimum.

    alpha = 0 rows are flagged degenerate (the bound is the whole window and
    is trivially attained); they are excluded from evidence tallies.
    """
    from .fq import build_projective_lattice

    lat = build_projective_lattice(n, q, max_elements)
    res = max_code(SearchProblem(lat, d, (l, l), budget_nodes, budget_secs), workers=workers)
    bound = kks_bound(n, l, d, q)
    alpha = puncture_budget(d, False)
    return ProbeRow(
        q=q,
        n=n,
        l=l,
        d=d,
        alpha=alpha,
        bound=bound,
        best_size=res.best_size,
        gap=bound - res.best_size,
        attained=res.best_size == bound,
        degenerate=alpha == 0,
        proven_optimal=res.proven_optimal,
        nodes=res.nodes,
    )
