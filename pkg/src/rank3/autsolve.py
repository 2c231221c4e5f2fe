"""Graph automorphism and isomorphism solver.

The engine is individualization-refinement: colorings are driven to
equitability by counting neighbours in splitter classes (worklist refinement
over the graph's packed adjacency rows), and a backtracking search
individualizes vertices of a deterministically chosen target cell.  Leaves of
the search are discrete colorings; comparing a leaf against the first
(leftmost) leaf yields a candidate automorphism, which is verified against the
full adjacency matrix before it is accepted.

Pruning, in the standard shape:
* trace pruning — every branch carries a 64-bit running hash of its
  refinement history; a branch whose trace differs from the first path's at
  the same depth cannot carry an automorphism and is cut (hash equality never
  *accepts* anything by itself: leaves are always verified);
* orbit pruning — on first-path nodes, siblings lying in the orbit of
  already-explored choices under the automorphisms found so far are skipped;
* backjumping — a verified automorphism unwinds the search to the deepest
  first-path node whose individualized prefix it fixes.

Strongly regular graphs are equitably homogeneous, so plain refinement never
splits them; all the work happens in the search, and orbit pruning is what
keeps vertex-transitive inputs tractable.

Isomorphism testing runs the same search on the disjoint union of the two
graphs, branching the root over second-graph vertices only; an automorphism
swapping the sides is exactly an isomorphism.  The union search is only run on
connected pairs — an automorphism of the union that moves vertex 0 across then
necessarily swaps the sides completely, which is what keeps the pruning rules
exhaustive.  Disconnected inputs are matched component by component first.
"""

from __future__ import annotations

import itertools
import sys
import time
from collections import deque
from dataclasses import dataclass

import numpy as np

from .graphs import DenseGraph
from .permgrp import GeneratorSet, Permutation

__all__ = [
    "Coloring",
    "trivial_coloring",
    "refine",
    "AutResult",
    "automorphism_group",
    "are_isomorphic",
    "brute_force_aut",
    "Timeout",
    "NotIsomorphic",
    "TooLarge",
]

_M64 = (1 << 64) - 1


class Timeout(RuntimeError):
    """The solver exceeded its time budget (seconds)."""

    def __init__(self, budget: float):
        self.budget = budget
        super().__init__(f"solver budget of {budget:g} s exhausted")


class NotIsomorphic(ValueError):
    """The graphs are not isomorphic; .invariant names the witness."""

    def __init__(self, invariant: str):
        self.invariant = invariant
        super().__init__(f"not isomorphic: {invariant}")


class TooLarge(ValueError):
    """brute_force_aut is restricted to n <= 8."""


@dataclass(eq=False)
class Coloring:
    """A vertex coloring with contiguous color ids 0..num_classes-1."""

    colors: np.ndarray
    num_classes: int

    def __post_init__(self) -> None:
        colors = np.ascontiguousarray(self.colors, dtype=np.int32)
        if colors.ndim != 1:
            raise ValueError("colors must be a 1-d array")
        if len(colors):
            if colors.min() < 0 or colors.max() >= self.num_classes:
                raise ValueError("color ids out of range")
            sizes = np.bincount(colors, minlength=self.num_classes)
            if (sizes == 0).any():
                raise ValueError("color ids must be contiguous 0..c-1")
        elif self.num_classes != 0:
            raise ValueError("empty graph needs num_classes = 0")
        self.colors = colors

    def class_members(self, c: int) -> np.ndarray:
        return np.flatnonzero(self.colors == c)

    def sizes(self) -> np.ndarray:
        return np.bincount(self.colors, minlength=self.num_classes)

    def is_discrete(self) -> bool:
        return self.num_classes == len(self.colors)


def trivial_coloring(n: int) -> Coloring:
    return Coloring(np.zeros(n, dtype=np.int32), 1 if n else 0)


def _mix(h: int, x: int) -> int:
    """One step of a 64-bit running hash (FNV-1a flavoured)."""
    return ((h ^ (x & _M64)) * 0x100000001B3) & _M64


class _Refiner:
    """Worklist equitable refinement over a graph's packed adjacency rows."""

    def __init__(self, g: DenseGraph):
        self.g = g
        self.n = g.n
        self.packed = g._packed
        self.words = self.packed.shape[1] if g.n else 0
        self.refinements = 0

    def _mask(self, members: np.ndarray) -> np.ndarray:
        b = np.zeros(self.n, dtype=bool)
        b[members] = True
        packed8 = np.packbits(b)
        pad = self.words * 8 - len(packed8)
        if pad:
            packed8 = np.concatenate([packed8, np.zeros(pad, dtype=np.uint8)])
        return packed8.view(np.uint64)

    def refine(
        self, colors: np.ndarray, num_classes: int, queue, trace: int
    ) -> tuple[int, int]:
        """Refine colors in place to the coarsest equitable refinement,
        processing the given splitter queue (Hopcroft all-but-largest).
        Returns (num_classes, trace)."""
        n = self.n
        pending = deque(queue)
        queued = set(pending)
        while pending:
            if num_classes >= n:
                break
            s = pending.popleft()
            queued.discard(s)
            members = np.flatnonzero(colors == s)
            self.refinements += 1
            cnt = np.bitwise_count(self.packed & self._mask(members)).sum(
                axis=1, dtype=np.int64
            )
            order = np.lexsort((cnt, colors))
            oc = colors[order]
            ocnt = cnt[order]
            cls_change = np.flatnonzero(oc[1:] != oc[:-1]) + 1
            starts = np.concatenate(([0], cls_change))
            ends = np.concatenate((cls_change, [n]))
            for cs, ce in zip(starts, ends):
                if ce - cs == 1 or ocnt[cs] == ocnt[ce - 1]:
                    continue  # singleton or uniform counts: no split
                c = int(oc[cs])
                seg = ocnt[cs:ce]
                sub = np.flatnonzero(seg[1:] != seg[:-1]) + 1
                pstarts = np.concatenate(([0], sub))
                pends = np.concatenate((sub, [ce - cs]))
                psizes = pends - pstarts
                ids = [c] + list(range(num_classes, num_classes + len(pstarts) - 1))
                num_classes += len(pstarts) - 1
                trace = _mix(trace, 0x51D << 16)
                trace = _mix(trace, s)
                trace = _mix(trace, c)
                for t in range(len(ids)):
                    if t:
                        colors[order[cs + pstarts[t] : cs + pends[t]]] = ids[t]
                    trace = _mix(trace, int(seg[pstarts[t]]))
                    trace = _mix(trace, int(psizes[t]))
                if c in queued:
                    grow = ids[1:]
                else:
                    largest = int(np.argmax(psizes))
                    grow = [idd for t, idd in enumerate(ids) if t != largest]
                for idd in grow:
                    pending.append(idd)
                    queued.add(idd)
        return num_classes, trace


def refine(g: DenseGraph, initial: Coloring) -> Coloring:
    """The coarsest equitable coloring refining `initial`: within each class,
    all vertices have the same number of neighbours in every class.
    Idempotent; class ids are assigned deterministically (splits keep the old
    id on the lowest-count part, new parts get fresh ids in ascending count
    order), so equal inputs give identical outputs."""
    if len(initial.colors) != g.n:
        raise ValueError(f"coloring has {len(initial.colors)} entries, graph has {g.n}")
    colors = initial.colors.copy()
    num_classes, _ = _Refiner(g).refine(
        colors, initial.num_classes, range(initial.num_classes), 0
    )
    return Coloring(colors, num_classes)


# -- the IR search ----------------------------------------------------------------


class _AutoFound(Exception):
    def __init__(self, perm: Permutation):
        self.perm = perm


class _CrossFound(Exception):
    def __init__(self, sigma: np.ndarray):
        self.sigma = sigma


class _OrbitSet:
    """Incrementally maintained closure of a seed set under permutations."""

    def __init__(self, n: int):
        self.mark = np.zeros(n, dtype=bool)
        self.gens: list[np.ndarray] = []

    def _close(self, frontier: list[int]) -> None:
        while frontier:
            x = frontier.pop()
            for img in self.gens:
                y = int(img[x])
                if not self.mark[y]:
                    self.mark[y] = True
                    frontier.append(y)

    def add_seed(self, v: int) -> None:
        if not self.mark[v]:
            self.mark[v] = True
            self._close([v])

    def add_gen(self, img: np.ndarray) -> None:
        self.gens.append(img)
        self._close(list(np.flatnonzero(self.mark)))

    def __contains__(self, v: int) -> bool:
        return bool(self.mark[v])


class _Solver:
    """One automorphism/isomorphism search over a fixed graph."""

    def __init__(self, g: DenseGraph, budget: float, iso_half: int | None = None):
        self.g = g
        self.n = g.n
        self.refiner = _Refiner(g)
        self.budget = budget
        self.deadline = time.monotonic() + budget
        self.iso_half = iso_half  # union search: vertices >= iso_half are side 2
        self.nodes = 0
        self.gens: list[Permutation] = []
        self.first_leaf: np.ndarray | None = None
        self.first_traces: list[int] = []
        self.first_cells: list[int] = []
        self.first_vertices: list[int] = []
        self.root_orbits: _OrbitSet | None = None  # externally seeded root pruning

    # - plumbing -

    def _tick(self) -> None:
        self.nodes += 1
        if time.monotonic() > self.deadline:
            raise Timeout(self.budget)

    def _pick_cell(self, colors: np.ndarray, num_classes: int) -> int:
        sizes = np.bincount(colors, minlength=num_classes)
        cands = np.flatnonzero(sizes > 1)
        smallest = cands[sizes[cands] == sizes[cands].min()]
        if len(smallest) == 1:
            return int(smallest[0])
        first_member = [int(np.argmax(colors == c)) for c in smallest]
        return int(smallest[int(np.argmin(first_member))])

    def _is_automorphism(self, sigma: np.ndarray) -> bool:
        adj = self.g.adj
        return np.array_equal(adj[np.ix_(sigma, sigma)], adj)

    # - leaves -

    def _leaf(self, colors: np.ndarray) -> None:
        if np.bincount(colors, minlength=self.n).max() != 1:
            return  # ids not discrete after all (trace hash collision): dead branch
        inv = np.empty(self.n, dtype=np.int32)
        inv[colors] = np.arange(self.n, dtype=np.int32)
        if self.first_leaf is None:
            self.first_leaf = inv
            return
        sigma = np.empty(self.n, dtype=np.int32)
        sigma[self.first_leaf] = inv
        if not self._is_automorphism(sigma):
            return
        if self.iso_half is not None and sigma[0] >= self.iso_half:
            half = self.iso_half
            if (sigma[:half] >= half).all():
                raise _CrossFound(sigma)
        perm = Permutation(sigma, _validate=False)
        self.gens.append(perm)
        raise _AutoFound(perm)

    # - the search -

    def _dfs(
        self,
        colors: np.ndarray,
        num_classes: int,
        trace: int,
        depth: int,
        on_first_path: bool,
        in_first_root_branch: bool,
    ) -> None:
        self._tick()
        if num_classes == self.n:
            self._leaf(colors)
            return
        if on_first_path and len(self.first_cells) == depth:
            if self.iso_half is not None and depth == 0:
                self.first_cells.append(int(colors[0]))
            else:
                self.first_cells.append(self._pick_cell(colors, num_classes))
        if depth >= len(self.first_cells):
            return  # deeper than the first path (trace hash collision): dead branch
        cell_color = self.first_cells[depth]
        members = np.flatnonzero(colors == cell_color)
        if self.iso_half is not None and depth == 0:
            members = np.concatenate(([0], members[members >= self.iso_half]))
            if len(members) == 1:
                return  # vertex 0's class has no second-side counterpart
        orbits: _OrbitSet | None = self.root_orbits if depth == 0 else None
        for v in members:
            v = int(v)
            if on_first_path and orbits is not None and v in orbits:
                continue
            child = colors.copy()
            old = child[v]
            child[v] = num_classes
            ctrace = _mix(_mix(trace, 0x1D1), int(old))
            cclasses, ctrace = self.refiner.refine(
                child, num_classes + 1, [num_classes], ctrace
            )
            if on_first_path and len(self.first_traces) == depth:
                self.first_traces.append(ctrace)
                self.first_vertices.append(v)
            elif ctrace != self.first_traces[depth]:
                continue
            child_first = on_first_path and v == self.first_vertices[depth]
            child_in_first = in_first_root_branch or (
                depth == 0 and v == self.first_vertices[0]
            )
            try:
                self._dfs(
                    child, cclasses, ctrace, depth + 1, child_first, child_in_first
                )
            except _AutoFound as found:
                img = found.perm.img
                if on_first_path and all(
                    img[u] == u for u in self.first_vertices[:depth]
                ):
                    if orbits is None:
                        orbits = _OrbitSet(self.n)
                        for u in self.first_vertices[depth : depth + 1]:
                            orbits.add_seed(u)
                    orbits.add_gen(img)
                    orbits.add_seed(v)
                    continue
                raise
            if on_first_path and orbits is not None:
                orbits.add_seed(v)
            if (
                self.iso_half is not None
                and in_first_root_branch
                and self.first_leaf is not None
            ):
                break  # iso mode: the first root branch only feeds the first path

    def run(self, initial: Coloring) -> None:
        colors = initial.colors.copy()
        trace = 0
        num_classes, trace = self.refiner.refine(
            colors, initial.num_classes, range(initial.num_classes), trace
        )
        limit = self.n + 1000
        if sys.getrecursionlimit() < limit:
            sys.setrecursionlimit(limit)
        self._dfs(colors, num_classes, trace, 0, True, False)


@dataclass
class AutResult:
    """Solver output: generators of Aut(g), its order, and search statistics.

    The order falls out of the search tree itself: the generators found at
    first-path depth >= d generate the stabilizer of the first d
    individualized vertices, so the group order is the product over the first
    path of the orbit length of each individualized vertex under the
    generators fixing the vertices before it.
    """

    generators: GeneratorSet
    order: int
    nodes: int
    refinements: int
    seconds: float


def _order_from_first_path(
    n: int, first_vertices: list[int], gens: list[Permutation]
) -> int:
    order = 1
    imgs = [p.img for p in gens]
    for depth, v in enumerate(first_vertices):
        prefix = first_vertices[:depth]
        fixing = [img for img in imgs if all(img[u] == u for u in prefix)]
        seen = np.zeros(n, dtype=bool)
        seen[v] = True
        frontier = [v]
        while frontier:
            x = frontier.pop()
            for img in fixing:
                y = int(img[x])
                if not seen[y]:
                    seen[y] = True
                    frontier.append(y)
        order *= int(seen.sum())
    return order


def automorphism_group(g: DenseGraph, budget: float = 60.0) -> AutResult:
    """Generators and order of the full automorphism group of g.

    Every emitted generator is verified against the whole adjacency matrix.
    Completeness comes from exhausting the individualization tree modulo
    trace/orbit pruning.  Raises Timeout(budget) when the budget (seconds)
    runs out.
    """
    start = time.monotonic()
    n = g.n
    if n == 0:
        return AutResult(GeneratorSet(0, ()), 1, 0, 0, 0.0)
    solver = _Solver(g, budget)
    solver.run(trivial_coloring(n))
    gs = GeneratorSet(n, tuple(solver.gens))
    order = _order_from_first_path(n, solver.first_vertices, solver.gens)
    return AutResult(
        gs, order, solver.nodes, solver.refiner.refinements, time.monotonic() - start
    )


def _degree_multiset(g: DenseGraph) -> list[int]:
    return sorted(int(d) for d in g.degrees())


def _refinement_signature(g: DenseGraph) -> tuple[int, tuple[int, ...]]:
    colors = np.zeros(g.n, dtype=np.int32)
    refiner = _Refiner(g)
    num_classes, trace = refiner.refine(colors, 1 if g.n else 0, range(1), 0)
    return trace, tuple(sorted(np.bincount(colors, minlength=num_classes)))


def _union_graph(g: DenseGraph, h: DenseGraph) -> DenseGraph:
    n = g.n
    adj = np.zeros((2 * n, 2 * n), dtype=bool)
    adj[:n, :n] = g.adj
    adj[n:, n:] = h.adj
    return DenseGraph(adj)


def _components(g: DenseGraph) -> list[np.ndarray]:
    """Vertex sets of the connected components, each sorted ascending."""
    seen = np.zeros(g.n, dtype=bool)
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = np.zeros(g.n, dtype=bool)
        comp[s] = True
        frontier = comp.copy()
        while frontier.any():
            frontier = g.adj[frontier].any(axis=0) & ~comp
            comp |= frontier
        seen |= comp
        out.append(np.flatnonzero(comp))
    return out


def _iso_connected(g: DenseGraph, h: DenseGraph, deadline: float) -> np.ndarray:
    """Union-graph search for connected g and h of equal size.

    Connectedness matters: any automorphism of the union moving vertex 0 to
    the h side must then carry the whole g side across, so every verified
    cross leaf is a complete side swap and the automorphism-based pruning
    stays exhaustive.
    """
    n = g.n
    budget = deadline - time.monotonic()
    if _refinement_signature(g) != _refinement_signature(h):
        raise NotIsomorphic("equitable refinement signatures differ")
    if g == h:
        return np.arange(n, dtype=np.int32)
    union = _union_graph(g, h)
    solver = _Solver(union, budget, iso_half=n)
    solver.deadline = deadline
    if n >= 64:
        # collapse root branches by h's own automorphisms
        try:
            hint = automorphism_group(h, budget=budget * 0.4)
            solver.root_orbits = _OrbitSet(2 * n)
            for perm in hint.generators.gens:
                img = np.concatenate(
                    (np.arange(n, dtype=np.int32), perm.img.astype(np.int32) + n)
                )
                solver.root_orbits.add_gen(img)
        except Timeout:
            pass
        solver.deadline = deadline  # the hint shares the overall budget
    try:
        solver.run(trivial_coloring(2 * n))
    except _CrossFound as cross:
        return (cross.sigma[:n] - n).astype(np.int32)
    raise NotIsomorphic("individualization search exhausted")


def are_isomorphic(
    g: DenseGraph, h: DenseGraph, budget: float = 60.0
) -> np.ndarray:
    """An isomorphism g -> h as an array (vertex i of g maps to mapping[i] of
    h), verified edge-by-edge before returning.  Raises NotIsomorphic with the
    distinguishing invariant otherwise, or Timeout(budget).

    The search runs on the disjoint union of g and h, branching the root over
    h-side vertices; when h is large, its own automorphisms are computed first
    (within a slice of the budget) and used to collapse equivalent root
    branches.  Disconnected graphs are decomposed and matched component by
    component.
    """
    deadline = time.monotonic() + budget
    if g.n != h.n:
        raise NotIsomorphic(f"vertex counts differ: {g.n} vs {h.n}")
    n = g.n
    if n == 0:
        return np.empty(0, dtype=np.int32)
    if _degree_multiset(g) != _degree_multiset(h):
        raise NotIsomorphic("degree multisets differ")

    comps_g = _components(g)
    comps_h = _components(h)
    if len(comps_g) == 1 and len(comps_h) == 1:
        mapping = _iso_connected(g, h, deadline)
    elif sorted(len(c) for c in comps_g) != sorted(len(c) for c in comps_h):
        raise NotIsomorphic("component size multisets differ")
    else:
        # greedy matching is exhaustive here: isomorphism classes partition
        # the components, and any member of a class is as good as any other
        mapping = np.full(n, -1, dtype=np.int32)
        unused = list(range(len(comps_h)))
        for cg in comps_g:
            sub_g = DenseGraph(g.adj[np.ix_(cg, cg)])
            key_g = _degree_multiset(sub_g)
            for k in list(unused):
                ch = comps_h[k]
                if len(ch) != len(cg):
                    continue
                sub_h = DenseGraph(h.adj[np.ix_(ch, ch)])
                if _degree_multiset(sub_h) != key_g:
                    continue
                try:
                    sub_map = _iso_connected(sub_g, sub_h, deadline)
                except NotIsomorphic:
                    continue
                mapping[cg] = ch[sub_map]
                unused.remove(k)
                break
            else:
                raise NotIsomorphic("a component has no isomorphic counterpart")

    if sorted(mapping.tolist()) != list(range(n)):
        raise AssertionError("candidate isomorphism is not a bijection")
    if not np.array_equal(h.adj[np.ix_(mapping, mapping)], g.adj):
        raise AssertionError("candidate isomorphism failed verification")
    return mapping


def brute_force_aut(g: DenseGraph) -> list[Permutation]:
    """All automorphisms of g by scanning every permutation (n <= 8)."""
    if g.n > 8:
        raise TooLarge(f"brute force is capped at 8 vertices, got {g.n}")
    adj = g.adj
    out = []
    for p in itertools.permutations(range(g.n)):
        arr = np.array(p, dtype=np.int32)
        if np.array_equal(adj[np.ix_(arr, arr)], adj):
            out.append(Permutation(arr))
    return out
