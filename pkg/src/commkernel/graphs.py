"""Labeled directed graphs on Z/nZ, Eulerian paths and their signed counts.

Edge ``l`` (1-based) has a fixed displacement ``s_l``; a graph assigns each
present label a source vertex, and the target is ``source + s_l (mod n)``.
Signatures are taken relative to ascending label order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from . import kernels


@dataclass(frozen=True)
class LabeledDigraph:
    n: int
    displacements: tuple  # index l-1 -> s_l mod n (None if unconstrained)
    sources: tuple        # index l-1 -> source vertex or None if label absent

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        disp = tuple(None if s is None else s % self.n for s in self.displacements)
        src = tuple(None if v is None else v % self.n for v in self.sources)
        if len(src) < len(disp):
            src = src + (None,) * (len(disp) - len(src))
        if len(src) > len(disp):
            raise ValueError("more sources than displacement entries")
        for l, (s, v) in enumerate(zip(disp, src), 1):
            if v is not None and s is None:
                raise ValueError(f"label {l} present without a displacement")
        object.__setattr__(self, "displacements", disp)
        object.__setattr__(self, "sources", src)

    @classmethod
    def from_edges(cls, n: int, edges: Mapping[int, tuple]) -> "LabeledDigraph":
        """Build from ``{label: (source, target)}``; labels must be >= 1."""
        size = max(edges, default=0)
        disp = [None] * size
        src = [None] * size
        for l, (u, v) in edges.items():
            if l < 1:
                raise ValueError("labels start at 1")
            disp[l - 1] = (v - u) % n
            src[l - 1] = u % n
        return cls(n, tuple(disp), tuple(src))

    @property
    def num_labels(self) -> int:
        return len(self.displacements)

    @property
    def labels(self) -> tuple:
        return tuple(l for l, v in enumerate(self.sources, 1) if v is not None)

    def source(self, l: int):
        return self.sources[l - 1]

    def target(self, l: int):
        v = self.sources[l - 1]
        return None if v is None else (v + self.displacements[l - 1]) % self.n

    def edges(self) -> list:
        """``[(label, source, target)]`` in ascending label order."""
        return [(l, self.source(l), self.target(l)) for l in self.labels]

    def with_edge(self, l: int, src: int) -> "LabeledDigraph":
        if l < 1 or l > self.num_labels:
            raise ValueError(f"label {l} has no displacement entry")
        if self.sources[l - 1] is not None:
            raise ValueError(f"label {l} already present")
        s = list(self.sources)
        s[l - 1] = src % self.n
        return LabeledDigraph(self.n, self.displacements, tuple(s))

    def support(self) -> frozenset:
        out = set()
        for _, u, v in self.edges():
            out.add(u)
            out.add(v)
        return frozenset(out)

    def has_repeated_edge(self) -> bool:
        seen = set()
        for _, u, v in self.edges():
            if (u, v) in seen:
                return True
            seen.add((u, v))
        return False

    def degree_imbalance(self) -> list:
        """outdeg - indeg per vertex."""
        d = [0] * self.n
        for _, u, v in self.edges():
            d[u] += 1
            d[v] -= 1
        return d

    def is_connected(self) -> bool:
        """Weak connectivity of the edge-induced subgraph (empty graph counts)."""
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for _, u, v in self.edges():
            parent[find(u)] = find(v)
        return len({find(v) for v in self.support()}) <= 1

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "displacements": {str(l): s for l, s in enumerate(self.displacements, 1) if s is not None},
            "edges": {str(l): v for l, v in enumerate(self.sources, 1) if v is not None},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "LabeledDigraph":
        n = int(data["n"])
        disp_map = {int(l): int(s) for l, s in data.get("displacements", {}).items()}
        edge_map = {int(l): int(v) for l, v in data.get("edges", {}).items()}
        missing = set(edge_map) - set(disp_map)
        if missing:
            raise ValueError(f"edges without displacement: {sorted(missing)}")
        size = max(list(disp_map) + list(edge_map), default=0)
        return cls(n, tuple(disp_map.get(l) for l in range(1, size + 1)),
                   tuple(edge_map.get(l) for l in range(1, size + 1)))

    def __str__(self):
        body = ", ".join(f"e{l}:P{u}->P{v}" for l, u, v in self.edges())
        return f"G(n={self.n}; {body})"


def with_extra_edge(G: LabeledDigraph, b: int) -> LabeledDigraph:
    """G_b: add the last label (k+1, displacement j) as an edge out of P_b."""
    if G.num_labels == 0:
        raise ValueError("graph has no slot for the extra edge")
    return G.with_edge(G.num_labels, b)


def union(G1: LabeledDigraph, G2: LabeledDigraph) -> LabeledDigraph:
    """Edge-set union; labels must not collide and displacements must agree."""
    if G1.n != G2.n:
        raise ValueError("vertex counts differ")
    size = max(G1.num_labels, G2.num_labels)
    d1 = G1.displacements + (None,) * (size - G1.num_labels)
    d2 = G2.displacements + (None,) * (size - G2.num_labels)
    s1 = G1.sources + (None,) * (size - G1.num_labels)
    s2 = G2.sources + (None,) * (size - G2.num_labels)
    disp, src = [], []
    for l in range(size):
        if s1[l] is not None and s2[l] is not None:
            raise ValueError(f"label {l + 1} present in both graphs")
        if d1[l] is not None and d2[l] is not None and d1[l] != d2[l]:
            raise ValueError(f"label {l + 1} has conflicting displacements")
        disp.append(d1[l] if d1[l] is not None else d2[l])
        src.append(s1[l] if s1[l] is not None else s2[l])
    return LabeledDigraph(G1.n, tuple(disp), tuple(src))


def has_eulerian_path(G: LabeledDigraph, a: int, b: int) -> bool:
    """Degree test plus weak connectivity; the empty graph has the trivial path a = b."""
    a, b = a % G.n, b % G.n
    if not G.labels:
        return a == b
    if a not in G.support() or not G.is_connected():
        return False
    d = G.degree_imbalance()
    for v in range(G.n):
        want = 0
        if a != b:
            want = 1 if v == a else (-1 if v == b else 0)
        if d[v] != want:
            return False
    return True


def end_vertex(G: LabeledDigraph, a: int):
    """Forced end of every Eulerian path from P_a, or None if the degrees rule them out."""
    a %= G.n
    d = G.degree_imbalance()
    if not G.labels:
        return a
    if all(x == 0 for x in d):
        return a
    d[a] -= 1
    nz = [v for v in range(G.n) if d[v]]
    if len(nz) == 1 and d[nz[0]] == -1:
        return nz[0]
    return None


@dataclass(frozen=True)
class SignedPath:
    order: tuple  # labels in traversal order
    sign: int


def _parity(seq) -> int:
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv & 1 else 1


def enumerate_signed(G: LabeledDigraph, a: int) -> list:
    """All Eulerian paths from P_a, with signatures against ascending label order."""
    a %= G.n
    edges = G.edges()
    m = len(edges)
    if m == 0:
        return [SignedPath((), 1)]
    out_by = {}
    for l, u, v in edges:
        out_by.setdefault(u, []).append((l, v))
    found = []
    ends = set()
    path = []
    used = set()

    def walk(v):
        if len(path) == m:
            found.append(tuple(path))
            ends.add(v)
            return
        for l, w in out_by.get(v, ()):
            if l not in used:
                used.add(l)
                path.append(l)
                walk(w)
                path.pop()
                used.discard(l)

    walk(a)
    assert len(ends) <= 1, "Eulerian paths from one start must share an end vertex"
    return [SignedPath(p, _parity(p)) for p in found]


def _compact(G: LabeledDigraph):
    edges = G.edges()
    return [u for _, u, _ in edges], [v for _, _, v in edges]


def count_paths(G: LabeledDigraph, a: int) -> tuple:
    """(number of Eulerian paths from P_a, their signed sum)."""
    a %= G.n
    if G.labels and end_vertex(G, a) is None:
        return 0, 0
    if G.labels and not has_eulerian_path(G, a, end_vertex(G, a)):
        return 0, 0
    src, tar = _compact(G)
    return kernels.signed_eulerian_count(G.n, src, tar, a)


def signed_sum(G: LabeledDigraph, a: int) -> int:
    return count_paths(G, a)[1]


# graph families with known signed sums

def flower(alpha: int, n: int | None = None) -> LabeledDigraph:
    """Hub P_0 with petals S_i: P_0 -> P_i (label 2i-1) and T_i: P_i -> P_0 (label 2i)."""
    n = n or alpha + 1
    edges = {}
    for i in range(1, alpha + 1):
        edges[2 * i - 1] = (0, i)
        edges[2 * i] = (i, 0)
    return LabeledDigraph.from_edges(n, edges)


def flower_chord(alpha: int) -> LabeledDigraph:
    """Flower plus the chord e: P_1 -> P_2 (label 2*alpha+1)."""
    if alpha < 2:
        raise ValueError("chord needs alpha >= 2")
    return union(flower(alpha), LabeledDigraph.from_edges(alpha + 1, {2 * alpha + 1: (1, 2)}))


def flower_loop(alpha: int, b: int) -> LabeledDigraph:
    """Flower plus a loop at P_b (label 2*alpha+1)."""
    if not 0 <= b <= alpha:
        raise ValueError("loop vertex out of range")
    return union(flower(alpha), LabeledDigraph.from_edges(alpha + 1, {2 * alpha + 1: (b, b)}))


def flower_tail(alpha: int, beta: int) -> LabeledDigraph:
    """Flower plus a two-way chain P_0 -> P_{alpha+1} -> ... -> P_{alpha+beta}, looped at the end."""
    if beta < 1:
        raise ValueError("tail needs beta >= 1")
    n = alpha + beta + 1
    edges = {}
    for i in range(1, alpha + 1):
        edges[2 * i - 1] = (0, i)
        edges[2 * i] = (i, 0)
    prev = 0
    for i in range(alpha + 1, alpha + beta + 1):
        edges[2 * i - 1] = (prev, i)
        edges[2 * i] = (i, prev)
        prev = i
    edges[2 * (alpha + beta) + 1] = (prev, prev)
    return LabeledDigraph.from_edges(n, edges)


def closed_form_flower(alpha: int, a: int) -> int:
    if alpha < 0 or a < 0 or a > alpha:
        raise ValueError("need 0 <= a <= alpha")
    if alpha == 0:
        return 1
    return math.factorial(alpha) if a == 0 else math.factorial(alpha - 1)


def closed_form_flower_chord(alpha: int) -> int:
    if alpha < 2:
        raise ValueError("chord needs alpha >= 2")
    return math.factorial(alpha - 1)


def closed_form_flower_loop(alpha: int, a: int, b: int) -> int:
    if alpha < 1 or not (0 <= a <= alpha and 0 <= b <= alpha):
        raise ValueError("need alpha >= 1 and 0 <= a, b <= alpha")
    f = math.factorial
    if a == b == 0:
        return f(alpha + 1)
    if a == b:
        return 2 * f(alpha - 1)
    if a == 0 or b == 0:
        return f(alpha)
    return f(alpha - 1)


def closed_form_flower_tail(alpha: int, beta: int) -> int:
    if alpha < 0 or beta < 1:
        raise ValueError("need alpha >= 0 and beta >= 1")
    return 2 * math.factorial(alpha)


def relabel(G: LabeledDigraph, perm: Mapping[int, int]) -> LabeledDigraph:
    """Rename labels by ``perm`` (labels missing from perm are kept)."""
    edges = {perm.get(l, l): (u, v) for l, u, v in G.edges()}
    return LabeledDigraph.from_edges(G.n, edges)


def random_graph(rng, n: int, m: int) -> LabeledDigraph:
    """m labeled edges with uniform sources and targets on n vertices."""
    return LabeledDigraph.from_edges(
        n, {l: (int(rng.integers(n)), int(rng.integers(n))) for l in range(1, m + 1)})


def iter_graphs(n: int, m: int) -> Iterable[LabeledDigraph]:
    """Every labeled graph with m edges on n vertices (n^(2m) of them)."""
    import itertools
    for pairs in itertools.product(range(n * n), repeat=m):
        yield LabeledDigraph.from_edges(n, {l: divmod(p, n) for l, p in enumerate(pairs, 1)})
