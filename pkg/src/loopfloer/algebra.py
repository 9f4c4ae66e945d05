"""Torus algebra over F2, decorated graphs, edge reduction, and F2 homology.

The algebra has idempotents i0, i1 and six nontrivial elements rho_I indexed
by the strictly increasing strings I in {1, 2, 3, 12, 23, 123}.  Elements are
represented by their index strings; idempotents by 'i0'/'i1'; zero by the
string 'zero'.  Decorated graphs label directed edges by index strings, or by
None for an identity (unlabeled) edge, which is kept out of the algebra
arithmetic on purpose: reduction is purely structural.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Optional, Set, Tuple

import numpy as np

RHOS = ("1", "2", "3", "12", "23", "123")
IDEMPOTENTS = ("i0", "i1")
ZERO = "zero"

# rho_I has left idempotent i_{first digit parity} per the standard convention:
# rho1: i0 -> i1, rho2: i1 -> i0, rho3: i0 -> i1.
_LEFT = {"1": "i0", "2": "i1", "3": "i0", "12": "i0", "23": "i1", "123": "i0"}
_RIGHT = {"1": "i1", "2": "i0", "3": "i1", "12": "i0", "23": "i1", "123": "i1"}


def left_idem(a: str) -> str:
    if a in IDEMPOTENTS:
        return a
    return _LEFT[a]


def right_idem(a: str) -> str:
    if a in IDEMPOTENTS:
        return a
    return _RIGHT[a]


def multiply(a: str, b: str) -> str:
    """Product of two algebra elements; returns 'zero' for vanishing products."""
    if a == ZERO or b == ZERO:
        return ZERO
    if a in IDEMPOTENTS:
        if b in IDEMPOTENTS:
            return a if a == b else ZERO
        return b if left_idem(b) == a else ZERO
    if b in IDEMPOTENTS:
        return a if right_idem(a) == b else ZERO
    cat = a + b
    return cat if cat in RHOS else ZERO


def grading(a: str) -> int:
    """Mod-2 grading: rho1 and rho3 have grading 0, everything else grading 1."""
    if a in IDEMPOTENTS or a == ZERO:
        return 0
    return 1 if "2" in a else 0


IDENT = None  # label of an identity edge in a decorated graph


class GraphError(ValueError):
    pass


@dataclass
class DecoratedGraph:
    """Directed graph with i0 ('0', drawn as a bullet) / i1 ('1', circle)
    vertices and algebra-or-identity edge labels.

    Edges are a plain list of (src, tgt, label) triples; parallel edges are
    allowed.  Vertex ids must be hashable and mutually comparable so that a
    deterministic base point exists in every component.
    """

    vertices: Dict[Hashable, str] = field(default_factory=dict)
    edges: List[Tuple[Hashable, Hashable, Optional[str]]] = field(default_factory=list)

    def add_vertex(self, v: Hashable, idem: str) -> None:
        if idem not in ("0", "1"):
            raise GraphError(f"bad idempotent {idem!r}")
        if v in self.vertices:
            raise GraphError(f"duplicate vertex {v!r}")
        self.vertices[v] = idem

    def add_edge(self, src: Hashable, tgt: Hashable, label: Optional[str]) -> None:
        self.edges.append((src, tgt, label))

    def check(self) -> None:
        """Raise unless every edge is idempotent-compatible."""
        for src, tgt, label in self.edges:
            if src not in self.vertices or tgt not in self.vertices:
                raise GraphError(f"dangling edge {(src, tgt, label)}")
            si, ti = self.vertices[src], self.vertices[tgt]
            if label is IDENT:
                if si != ti:
                    raise GraphError("identity edge between distinct idempotents")
            else:
                if left_idem(label) != "i" + si or right_idem(label) != "i" + ti:
                    raise GraphError(f"edge label {label} incompatible with {si}->{ti}")

    def is_reduced(self) -> bool:
        return all(label is not IDENT for _, _, label in self.edges)

    def out_edges(self, v: Hashable):
        return [(s, t, l) for (s, t, l) in self.edges if s == v]

    def in_edges(self, v: Hashable):
        return [(s, t, l) for (s, t, l) in self.edges if t == v]

    def components(self) -> List[Set[Hashable]]:
        adj: Dict[Hashable, Set[Hashable]] = {v: set() for v in self.vertices}
        for s, t, _ in self.edges:
            adj[s].add(t)
            adj[t].add(s)
        seen: Set[Hashable] = set()
        comps = []
        for v in sorted(self.vertices):
            if v in seen:
                continue
            comp = {v}
            stack = [v]
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            comps.append(comp)
        return comps

    def gradings(self) -> Dict[Hashable, int]:
        """Relative Z/2 grading, base vertex of each component pinned at 0.

        Edges labeled rho_I change the grading by 1 - gr(rho_I); identity
        edges flip it.  The base is the smallest vertex of the component.
        Raises GraphError on an inconsistent cycle.
        """
        gr: Dict[Hashable, int] = {}
        incident: Dict[Hashable, List[Tuple[Hashable, int]]] = {v: [] for v in self.vertices}
        for s, t, label in self.edges:
            flip = 1 if label is IDENT else (1 - grading(label)) % 2
            incident[s].append((t, flip))
            incident[t].append((s, flip))
        for comp in self.components():
            base = min(comp)
            gr[base] = 0
            stack = [base]
            while stack:
                u = stack.pop()
                for w, flip in incident[u]:
                    g = (gr[u] + flip) % 2
                    if w in gr:
                        if gr[w] != g:
                            raise GraphError("inconsistent relative grading")
                    else:
                        gr[w] = g
                        stack.append(w)
        return gr

    def has_directed_cycle(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        outs: Dict[Hashable, List[Hashable]] = {v: [] for v in self.vertices}
        for s, t, _ in self.edges:
            outs[s].append(t)
            indeg[t] += 1
        queue = [v for v, d in indeg.items() if d == 0]
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            for t in outs[v]:
                indeg[t] -= 1
                if indeg[t] == 0:
                    queue.append(t)
        return seen != len(self.vertices)

    def longest_path_edges(self) -> int:
        """Length (in edges) of the longest directed path; requires acyclic."""
        if self.has_directed_cycle():
            raise GraphError("graph has a directed cycle")
        outs: Dict[Hashable, List[Hashable]] = {v: [] for v in self.vertices}
        indeg = {v: 0 for v in self.vertices}
        for s, t, _ in self.edges:
            outs[s].append(t)
            indeg[t] += 1
        topo: List[Hashable] = []
        queue = [v for v, d in indeg.items() if d == 0]
        while queue:
            v = queue.pop()
            topo.append(v)
            for t in outs[v]:
                indeg[t] -= 1
                if indeg[t] == 0:
                    queue.append(t)
        dist = {v: 0 for v in self.vertices}
        for v in topo:
            for t in outs[v]:
                dist[t] = max(dist[t], dist[v] + 1)
        return max(dist.values(), default=0)

    def copy(self) -> "DecoratedGraph":
        return DecoratedGraph(dict(self.vertices), list(self.edges))


def reduce_graph(g: DecoratedGraph, choose=None) -> DecoratedGraph:
    """Cancel identity edges until none remain.

    For an identity edge y -> x the vertices x and y are removed, and for
    every edge u -> x (label A, u != y) and y -> v (label B, v != x) an edge
    u -> v labeled A*B is introduced, dropped when the product vanishes.
    Edge multiplicities are mod 2: introducing an edge equal to an existing
    one cancels both.  `choose` optionally picks which identity edge to
    cancel next (used to exercise confluence); default is the smallest.
    """
    g = g.copy()
    g.check()
    edge_set: Set[Tuple[Hashable, Hashable, Optional[str]]] = set()
    for e in g.edges:
        if e in edge_set:
            edge_set.remove(e)
        else:
            edge_set.add(e)

    def toggle(e):
        if e in edge_set:
            edge_set.remove(e)
        else:
            edge_set.add(e)

    while True:
        idents = sorted(
            (e for e in edge_set if e[2] is IDENT), key=lambda e: (repr(e[0]), repr(e[1]))
        )
        if not idents:
            break
        e = idents[0] if choose is None else choose(idents)
        y, x, _ = e
        if y == x:
            raise GraphError("identity self-edge cannot be cancelled")
        ins = [(s, t, l) for (s, t, l) in edge_set if t == x and (s, t, l) != e]
        outs = [(s, t, l) for (s, t, l) in edge_set if s == y and (s, t, l) != e]
        removed = {f for f in edge_set if f[0] in (x, y) or f[1] in (x, y)}
        for f in removed:
            edge_set.remove(f)
        for (u, _, a) in ins:
            if u in (x, y):
                continue
            for (_, v, b) in outs:
                if v in (x, y):
                    continue
                prod = IDENT
                if a is IDENT and b is IDENT:
                    prod = IDENT
                elif a is IDENT:
                    prod = b
                elif b is IDENT:
                    prod = a
                else:
                    prod = multiply(a, b)
                    if prod == ZERO:
                        continue
                toggle((u, v, prod))
        del g.vertices[x]
        del g.vertices[y]
    g.edges = sorted(edge_set, key=lambda e: (repr(e[0]), repr(e[1]), e[2] or ""))
    g.check()
    return g


@dataclass
class ChainComplexF2:
    """Z/2-graded chain complex over F2 with a component marker per generator.

    generators: list of (id, grading bit, component id); the differential is
    a set of (src, tgt) generator pairs.  The differential must strictly flip
    the grading bit and square to zero; `check` asserts both.
    """

    generators: List[Tuple[Hashable, int, Hashable]]
    differential: Set[Tuple[Hashable, Hashable]]

    def check(self) -> None:
        index = {gid: i for i, (gid, _, _) in enumerate(self.generators)}
        grs = {gid: g for (gid, g, _) in self.generators}
        comps = {gid: c for (gid, _, c) in self.generators}
        n = len(self.generators)
        mat = np.zeros((n, n), dtype=np.uint8)
        for s, t in self.differential:
            if grs[t] != (grs[s] + 1) % 2:
                raise GraphError("differential does not flip the grading")
            if comps[s] != comps[t]:
                raise GraphError("differential crosses components")
            mat[index[t], index[s]] ^= 1
        sq = (mat @ mat) % 2
        if sq.any():
            raise GraphError("differential does not square to zero")


def _gf2_rank(mat: np.ndarray) -> int:
    m = mat.copy() % 2
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if m[i, c]:
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != r:
            m[[r, pivot]] = m[[pivot, r]]
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] ^= m[r]
        r += 1
        if r == rows:
            break
    return r


@dataclass
class HomologyResult:
    total: int
    by_grading: Tuple[int, int]
    per_component: Dict[Hashable, Tuple[int, int, int, int]]  # dim, dim0, dim1, chi


def homology(c: ChainComplexF2) -> HomologyResult:
    """Dimensions of H_*(c) over F2, total, by grading, and per component."""
    per: Dict[Hashable, Tuple[int, int, int, int]] = {}
    comps: Dict[Hashable, List[Tuple[Hashable, int]]] = {}
    for gid, g, comp in c.generators:
        comps.setdefault(comp, []).append((gid, g))
    diff_by_comp: Dict[Hashable, List[Tuple[Hashable, Hashable]]] = {comp: [] for comp in comps}
    comp_of = {gid: comp for (gid, _, comp) in c.generators}
    for s, t in c.differential:
        diff_by_comp[comp_of[s]].append((s, t))
    tot = d0 = d1 = 0
    for comp, gens in comps.items():
        zeros = [gid for gid, g in gens if g == 0]
        ones = [gid for gid, g in gens if g == 1]
        iz = {gid: i for i, gid in enumerate(zeros)}
        io = {gid: i for i, gid in enumerate(ones)}
        m0 = np.zeros((len(ones), len(zeros)), dtype=np.uint8)  # d: C0 -> C1
        m1 = np.zeros((len(zeros), len(ones)), dtype=np.uint8)  # d: C1 -> C0
        for s, t in diff_by_comp[comp]:
            if s in iz:
                m0[io[t], iz[s]] ^= 1
            else:
                m1[iz[t], io[s]] ^= 1
        r0 = _gf2_rank(m0)
        r1 = _gf2_rank(m1)
        h0 = len(zeros) - r0 - r1
        h1 = len(ones) - r1 - r0
        chi = len(zeros) - len(ones)
        per[comp] = (h0 + h1, h0, h1, chi)
        tot += h0 + h1
        d0 += h0
        d1 += h1
    return HomologyResult(tot, (d0, d1), per)


def is_lspace_complex(c: ChainComplexF2) -> bool:
    """True iff in every component dim H equals |chi| and neither is zero."""
    res = homology(c)
    return all(dim == abs(chi) != 0 for dim, _, _, chi in res.per_component.values())
