"""Vertex-labeled trees, the Prüfer codec, enumeration and uniform sampling.

Trees live over an arbitrary finite label set A of distinct positive
integers (general A is needed because the tree-cutting arguments relabel
subtrees); the Prüfer codec itself is restricted to A = {1..n}.  Adjacency
lists are kept sorted so the greedy increasing-label walk is a linear scan.

Sampling is counter-based: the Prüfer entries for (seed, index) come from a
Philox generator keyed by the pair, so identical arguments give identical
trees regardless of call order or thread count.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from minfact.errors import CapExceededError, ParseError, ValidationError

ENUM_TREE_CAP = 9


@dataclass(frozen=True)
class VertexTree:
    """Immutable tree on a label set; adjacency symmetric and sorted."""

    labels: tuple[int, ...]
    adjacency: tuple[tuple[int, ...], ...]  # parallel to labels

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]]) -> "VertexTree":
        edge_list = [(min(u, v), max(u, v)) for u, v in edges]
        labels = sorted({v for e in edge_list for v in e})
        if not labels:
            raise ValidationError("a tree needs at least one edge")
        if labels[0] < 1:
            raise ValidationError("labels must be positive")
        if len(set(edge_list)) != len(edge_list):
            raise ValidationError("repeated edge")
        if len(edge_list) != len(labels) - 1:
            raise ValidationError(
                f"{len(labels)} vertices need {len(labels) - 1} edges, got {len(edge_list)}"
            )
        index = {v: i for i, v in enumerate(labels)}
        adj: list[list[int]] = [[] for _ in labels]
        for u, v in edge_list:
            if u == v:
                raise ValidationError(f"self-loop at {u}")
            adj[index[u]].append(v)
            adj[index[v]].append(u)
        tree = cls(tuple(labels), tuple(tuple(sorted(nb)) for nb in adj))
        if not tree._connected():
            raise ValidationError("edges do not form a connected tree")
        return tree

    def _connected(self) -> bool:
        seen = {self.labels[0]}
        stack = [self.labels[0]]
        while stack:
            v = stack.pop()
            for w in self.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.labels)

    @property
    def n(self) -> int:
        return len(self.labels)

    def _index(self, label: int) -> int:
        lo, hi = 0, len(self.labels)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.labels[mid] < label:
                lo = mid + 1
            else:
                hi = mid
        if lo == len(self.labels) or self.labels[lo] != label:
            raise ValidationError(f"label {label} not in tree")
        return lo

    def neighbors(self, label: int) -> tuple[int, ...]:
        return self.adjacency[self._index(label)]

    def degree(self, label: int) -> int:
        return len(self.neighbors(label))

    def edges(self) -> list[tuple[int, int]]:
        """Edges as (u, v) with u < v, sorted lexicographically."""
        out = []
        for v, nbs in zip(self.labels, self.adjacency):
            out.extend((v, w) for w in nbs if v < w)
        out.sort()
        return out

    def l_path(self, start: int) -> tuple[int, ...]:
        """Greedy increasing-label walk from ``start``, excluding it.

        Each step moves to the smallest neighbor whose label exceeds the
        current vertex's label; stops when there is none.
        """
        path = []
        cur = start
        idx = self._index(start)
        while True:
            nxt = None
            for w in self.adjacency[idx]:
                if w > cur:
                    nxt = w
                    break
            if nxt is None:
                return tuple(path)
            path.append(nxt)
            cur = nxt
            idx = self._index(cur)

    def deg2_prime(self) -> int:
        """Degree of the last vertex of the walk started at the minimum label."""
        if self.n < 2:
            raise ValidationError("deg2_prime needs at least 2 vertices")
        walk = self.l_path(min(self.labels))
        return self.degree(walk[-1])

    def relabel(self, mapping: dict[int, int]) -> "VertexTree":
        return VertexTree.from_edges(
            (mapping[u], mapping[v]) for u, v in self.edges()
        )

    # -- canonical JSON ------------------------------------------------------

    def to_json(self) -> str:
        return json.dumps(
            {"labels": list(self.labels), "edges": [list(e) for e in self.edges()]},
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, text: str) -> "VertexTree":
        try:
            data = json.loads(text)
            labels = data["labels"]
            edges = [(int(u), int(v)) for u, v in data["edges"]]
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad tree JSON: {exc}") from exc
        tree = cls.from_edges(edges)
        if list(tree.labels) != sorted(labels):
            raise ParseError("label list does not match the edge set")
        return tree


def _check_prufer(n: int, seq: Sequence[int]) -> None:
    if n < 2:
        raise ValidationError(f"need n >= 2, got {n}")
    if len(seq) != n - 2:
        raise ValidationError(f"a sequence for n={n} has {n - 2} entries, got {len(seq)}")
    for s in seq:
        if not 1 <= s <= n:
            raise ValidationError(f"entry {s} outside 1..{n}")


def prufer_decode(n: int, seq: Sequence[int]) -> VertexTree:
    """Standard decoding: repeatedly attach the smallest-labeled leaf."""
    _check_prufer(n, seq)
    deg = [1] * (n + 1)
    for s in seq:
        deg[s] += 1
    alive = set(range(1, n + 1))
    edges = []
    for s in seq:
        leaf = min(v for v in alive if deg[v] == 1)
        edges.append((leaf, s))
        alive.remove(leaf)
        deg[s] -= 1
    u, v = sorted(alive)
    edges.append((u, v))
    return VertexTree.from_edges(edges)


def prufer_encode(tree: VertexTree) -> tuple[int, ...]:
    """Inverse of prufer_decode; requires labels exactly {1..n}."""
    n = tree.n
    if tree.labels != tuple(range(1, n + 1)):
        raise ValidationError("encoding requires labels exactly 1..n")
    deg = {v: tree.degree(v) for v in tree.labels}
    adj = {v: set(tree.neighbors(v)) for v in tree.labels}
    seq = []
    for _ in range(n - 2):
        leaf = min(v for v, d in deg.items() if d == 1)
        parent = next(iter(adj[leaf]))
        seq.append(parent)
        adj[parent].discard(leaf)
        del deg[leaf], adj[leaf]
        deg[parent] -= 1
    return tuple(seq)


def enumerate_trees(n: int) -> Iterator[VertexTree]:
    """All n^(n-2) Cayley trees, by lexicographic Prüfer sequence."""
    if not 2 <= n <= ENUM_TREE_CAP:
        raise CapExceededError(
            f"tree enumeration is capped at 2 <= n <= {ENUM_TREE_CAP} "
            f"(n^(n-2) trees); got n={n}"
        )
    for seq in _prufer_sequences(n):
        yield prufer_decode(n, seq)


def _prufer_sequences(n: int) -> Iterator[tuple[int, ...]]:
    import itertools

    return itertools.product(range(1, n + 1), repeat=n - 2)


def _philox_key(seed: int, index: int) -> int:
    # Philox takes a 128-bit key: low word = seed, high word = index.
    return (seed & (2**64 - 1)) | ((index & (2**64 - 1)) << 64)


def prufer_entries(n: int, seed: int, index: int) -> np.ndarray:
    """The n-2 i.i.d. uniform entries behind sample_tree(n, seed, index)."""
    if n < 2:
        raise ValidationError(f"need n >= 2, got {n}")
    gen = np.random.Generator(np.random.Philox(key=_philox_key(seed, index)))
    return gen.integers(1, n + 1, size=n - 2, dtype=np.int64)


def sample_tree(n: int, seed: int, index: int) -> VertexTree:
    """Uniform Cayley tree from the counter-based generator for (seed, index)."""
    entries = prufer_entries(n, seed, index)
    return prufer_decode(n, [int(s) for s in entries])
