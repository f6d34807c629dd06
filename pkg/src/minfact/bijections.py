"""Bijections between minimal factorizations, edge-labeled rooted trees,
and Cayley trees, plus the greedy label-recovery algorithm.

An EdgeTree is a rooted tree whose vertices are anonymous and whose n-1
edges carry the labels 1..n-1.  Its canonical form fixes vertex ids: the
root is id 0, children of every vertex are ordered by edge label, and ids
are assigned in depth-first preorder under that ordering.  Two EdgeTrees
are equal iff their canonical serializations are equal.

Label recovery walks, from the vertex labeled k, the maximal path of edges
with increasing labels whose first edge is the smallest incident one; the
terminal vertex receives label k+1.  Iterating from the root (which gets
label 1) reconstructs the vertex labeling of the factorization tree, hence
the factorization itself.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from minfact.errors import DomainError, ParseError, ValidationError
from minfact.factorizations import Factorization, Transposition, is_minimal, stat_M, stat_T
from minfact.trees import VertexTree


@dataclass(frozen=True)
class EdgeTree:
    """Canonical rooted tree with edges labeled 1..n-1 and ids 0..n-1."""

    n: int
    edges: tuple[tuple[int, int, int], ...]  # (parent id, child id, label), sorted by label

    def __post_init__(self) -> None:
        n = self.n
        if n < 2:
            raise ValidationError(f"need n >= 2, got {n}")
        if len(self.edges) != n - 1:
            raise ValidationError(f"expected {n - 1} edges, got {len(self.edges)}")
        labels = sorted(e[2] for e in self.edges)
        if labels != list(range(1, n)):
            raise ValidationError("edge labels must be a permutation of 1..n-1")
        if [e[2] for e in self.edges] != labels:
            raise ValidationError("edges must be sorted by label")

    @classmethod
    def from_parent_edges(
        cls, n: int, edges: Iterable[tuple[int, int, int]]
    ) -> "EdgeTree":
        """Canonicalize a rooted edge-labeled tree given with arbitrary ids.

        ``edges`` are (parent, child, label) triples over arbitrary hashable
        parent/child ids; the root is the unique id that is never a child.
        """
        tree, _ = _canonicalize(n, edges)
        return tree

    # -- views ---------------------------------------------------------------

    def parent_of(self) -> dict[int, tuple[int, int]]:
        """child id -> (parent id, edge label)."""
        return {c: (p, label) for p, c, label in self.edges}

    def incident(self) -> list[list[tuple[int, int]]]:
        """Per id, incident (label, other id) pairs sorted by label."""
        inc: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for p, c, label in self.edges:
            inc[p].append((label, c))
            inc[c].append((label, p))
        for lst in inc:
            lst.sort()
        return inc

    # -- canonical JSON --------------------------------------------------------

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "root": 0,
                "edges": [
                    {"parent": p, "child": c, "label": label}
                    for p, c, label in self.edges
                ],
            },
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, text: str) -> "EdgeTree":
        try:
            data = json.loads(text)
            n = int(data["n"])
            edges = [
                (int(e["parent"]), int(e["child"]), int(e["label"]))
                for e in data["edges"]
            ]
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad edge-tree JSON: {exc}") from exc
        canon = cls.from_parent_edges(n, edges)
        if canon.edges != tuple(sorted(edges, key=lambda e: e[2])):
            raise ParseError("edge-tree JSON is not in canonical form")
        return canon


def _canonicalize(
    n: int, edges: Iterable[tuple[int, int, int]]
) -> tuple["EdgeTree", dict]:
    """Canonical EdgeTree plus the original-id -> canonical-id mapping."""
    edge_list = list(edges)
    children: dict = {}
    child_ids = set()
    all_ids = set()
    for parent, child, label in edge_list:
        children.setdefault(parent, []).append((label, child))
        child_ids.add(child)
        all_ids.update((parent, child))
    roots = all_ids - child_ids
    if len(roots) != 1:
        raise ValidationError(f"expected a unique root, found {len(roots)}")
    (root,) = roots
    # ids in depth-first preorder, visiting children by increasing label
    new_id = {root: 0}
    counter = 1
    stack = [(root, iter(sorted(children.get(root, []))))]
    while stack:
        v, it = stack[-1]
        nxt = next(it, None)
        if nxt is None:
            stack.pop()
            continue
        _, child = nxt
        if child in new_id:
            raise ValidationError("edges do not form a tree")
        new_id[child] = counter
        counter += 1
        stack.append((child, iter(sorted(children.get(child, [])))))
    if counter != n:
        raise ValidationError("edges do not form a tree on n vertices")
    canon = sorted(
        ((new_id[p], new_id[c], label) for p, c, label in edge_list),
        key=lambda e: e[2],
    )
    return EdgeTree(n, tuple(canon)), new_id


@dataclass(frozen=True)
class DecoratedTree:
    """An EdgeTree with a partial assignment of vertex labels to ids."""

    tree: EdgeTree
    vertex_labels: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        labels = list(self.vertex_labels.values())
        if len(set(labels)) != len(labels):
            raise ValidationError("vertex labels must be distinct")
        for vid, label in self.vertex_labels.items():
            if not 0 <= vid < self.tree.n:
                raise ValidationError(f"vertex id {vid} out of range")
            if not 1 <= label <= self.tree.n:
                raise ValidationError(f"vertex label {label} out of range")

    def is_fully_assigned(self) -> bool:
        return len(self.vertex_labels) == self.tree.n

    def to_json(self) -> str:
        data = json.loads(self.tree.to_json())
        data["vertex_labels"] = {
            str(vid): label for vid, label in sorted(self.vertex_labels.items())
        }
        return json.dumps(data, separators=(",", ":"))


def _rooted_edges(f: Factorization) -> list[tuple[int, int, int]]:
    """(parent point, child point, label) triples of the factorization tree,
    oriented away from the point 1."""
    if not is_minimal(f):
        raise DomainError("the tree maps are only defined on minimal factorizations")
    n = f.n
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(1, n + 1)}
    for l, tau in enumerate(f.taus, start=1):
        adj[tau.a].append((l, tau.b))
        adj[tau.b].append((l, tau.a))
    edges = []
    seen = {1}
    stack = [1]
    while stack:
        v = stack.pop()
        for label, w in adj[v]:
            if w not in seen:
                seen.add(w)
                edges.append((v, w, label))
                stack.append(w)
    if len(seen) != n:
        raise DomainError("transpositions do not connect all points")
    return edges


def f_map(f: Factorization) -> DecoratedTree:
    """The fully labeled tree: edge labeled l joins the two points of tau_l.

    Built directly from the transpositions (vertex labels are the points);
    the label-recovery path find_labels(e_map(f), n) must reproduce it.
    """
    tree, new_id = _canonicalize(f.n, _rooted_edges(f))
    return DecoratedTree(tree, {cid: point for point, cid in new_id.items()})


def e_map(f: Factorization) -> EdgeTree:
    """Root the factorization tree at the vertex labeled 1 and erase labels."""
    tree, _ = _canonicalize(f.n, _rooted_edges(f))
    return tree


def next_label(d: DecoratedTree, k: int) -> DecoratedTree:
    """Assign vertex label k+1 by the greedy increasing-edge-label walk.

    k = 0 assigns label 1 to the root.  If k >= 1 is not assigned yet the
    input is returned unchanged.
    """
    tree = d.tree
    if not 0 <= k <= tree.n - 1:
        raise ValidationError(f"k={k} outside 0..{tree.n - 1}")
    labels = dict(d.vertex_labels)
    if k == 0:
        if 1 in labels.values():
            raise ValidationError("label 1 already assigned")
        labels[0] = 1
        return DecoratedTree(tree, labels)
    by_label = {label: vid for vid, label in labels.items()}
    if k not in by_label:
        return d
    if k + 1 in by_label:
        raise ValidationError(f"label {k + 1} already assigned")
    incident = tree.incident()
    v = by_label[k]
    # first step: smallest-labeled incident edge
    edge_label, v = incident[v][0][0], incident[v][0][1]
    while True:
        nxt = None
        for cand_label, other in incident[v]:
            if cand_label > edge_label:
                nxt = (cand_label, other)
                break
        if nxt is None:
            break
        edge_label, v = nxt
    labels[v] = k + 1
    return DecoratedTree(tree, labels)


def find_labels(t: EdgeTree, k: int) -> DecoratedTree:
    """next_label applied with arguments 0, 1, ..., k-1."""
    if not 1 <= k <= t.n:
        raise ValidationError(f"k={k} outside 1..{t.n}")
    d = DecoratedTree(t, {})
    for step in range(k):
        d = next_label(d, step)
    return d


def e_inverse(t: EdgeTree) -> Factorization:
    """The unique minimal factorization mapping to t under e_map."""
    full = find_labels(t, t.n)
    label_of = dict(full.vertex_labels)
    taus = tuple(
        Transposition(label_of[p], label_of[c]) for p, c, _ in t.edges
    )
    return Factorization(t.n, taus)


def alpha(t: VertexTree) -> EdgeTree:
    """Pull vertex labels onto parent edges (rooted at 1) and subtract 1."""
    n = t.n
    if t.labels != tuple(range(1, n + 1)):
        raise ValidationError("alpha requires labels exactly 1..n")
    edges = []
    seen = {1}
    stack = [1]
    while stack:
        v = stack.pop()
        for w in t.neighbors(v):
            if w not in seen:
                seen.add(w)
                edges.append((v, w, w - 1))
                stack.append(w)
    return EdgeTree.from_parent_edges(n, edges)


def alpha_inverse(t: EdgeTree) -> VertexTree:
    """Root gets label 1; every other vertex gets its parent-edge label + 1."""
    label = {0: 1}
    for p, c, edge_label in t.edges:
        label[c] = edge_label + 1
    return VertexTree.from_edges(
        (label[p], label[c]) for p, c, _ in t.edges
    )


def triple_of(f: Factorization, verify: bool = False) -> tuple[int, int, int]:
    """(stat_T(f,1), stat_T(f,2), stat_M(f,1)).

    With verify=True, also computes the Cayley tree alpha_inverse(e_map(f))
    and checks the triple equals (deg_1, deg'_2, |L_1|); a mismatch raises
    with the counterexample.
    """
    if not is_minimal(f):
        raise DomainError("triple_of is only defined on minimal factorizations")
    triple = (stat_T(f, 1), stat_T(f, 2), stat_M(f, 1))
    if verify:
        tree = alpha_inverse(e_map(f))
        tree_triple = (tree.degree(1), tree.deg2_prime(), len(tree.l_path(1)))
        if triple != tree_triple:
            raise ValidationError(
                f"statistic mismatch for {f}: factorization gives {triple}, "
                f"tree {tree.to_json()} gives {tree_triple}"
            )
    return triple
