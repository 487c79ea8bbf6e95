"""Dihedral orderings, polygon subdivisions, phylogenetic trees, and the
complexes built from them.

Conventions used throughout (all indices 0-based):

* a polygon with ``m`` edges has edge positions ``0..m-1`` and vertex
  positions ``0..m-1``, where vertex ``k`` sits between edge ``k`` and
  edge ``k+1 (mod m)``;
* a diagonal is an unordered pair of non-adjacent vertex positions
  ``(a, b)`` with ``a < b``; the edges strictly between ``a`` and ``b``
  (going upward) are positions ``a+1 .. b``;
* labels are nonzero signed integers; the plain families use ``1..n``,
  the symmetric families use ``-n..-1, 1..n`` and both the axial and the
  central symmetry act on labels as negation.

Trees are stored as split systems: a phylogenetic tree on a label set is
determined by the set of bipartitions induced by its internal edges, so
split-set equality is exactly leaf-label-preserving isomorphism.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .errors import InvalidArgumentError, InternalConsistencyError, NotAxiallySymmetricError

SCHEMA_VERSION = 1


class Symmetry(enum.Enum):
    NONE = "none"
    AXIAL = "axial"
    CENTRAL = "central"


# ---------------------------------------------------------------------------
# dihedral orderings
# ---------------------------------------------------------------------------


def _rotations_and_reversals(seq):
    n = len(seq)
    rev = tuple(reversed(seq))
    for i in range(n):
        yield seq[i:] + seq[:i]
        yield rev[i:] + rev[:i]


def canonical_cycle(labels) -> tuple[int, ...]:
    """Lexicographically least representative of a label cycle under the
    dihedral action (signed integers compare naturally: -n < .. < -1 < 1 < ..)."""
    seq = tuple(labels)
    return min(_rotations_and_reversals(seq))


def canonical_cycle_with_transform(labels):
    """Like :func:`canonical_cycle` but also returns ``(flip, shift)`` such
    that ``new_edge[p] = old_edge[(shift - p) % m]`` when ``flip`` else
    ``old_edge[(p + shift) % m]``."""
    seq = tuple(labels)
    m = len(seq)
    best = None
    for shift in range(m):
        cand = seq[shift:] + seq[:shift]
        if best is None or cand < best[0]:
            best = (cand, False, shift)
    rev = tuple(reversed(seq))  # rev[p] = seq[m-1-p]
    for r in range(m):
        cand = rev[r:] + rev[:r]
        if cand < best[0]:
            # cand[p] = rev[(p+r) % m] = seq[(m-1-r-p) % m]
            best = (cand, True, (m - 1 - r) % m)
    return best


@dataclass(frozen=True)
class DihedralOrdering:
    """A labeling of a polygon's edges up to the dihedral group.

    ``labels`` is the canonical (lex-least) representative; ``symmetry``
    records which symmetric family the ordering belongs to.
    """

    labels: tuple[int, ...]
    symmetry: Symmetry = Symmetry.NONE

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def half(self) -> int:
        """For symmetric orderings on 2n labels, the parameter n."""
        return len(self.labels) // 2

    @staticmethod
    def make(labels, symmetry: Symmetry = Symmetry.NONE) -> "DihedralOrdering":
        seq = tuple(int(x) for x in labels)
        if len(seq) < 3:
            raise InvalidArgumentError("a polygon needs at least 3 edges")
        if len(set(seq)) != len(seq) or 0 in seq:
            raise InvalidArgumentError("labels must be distinct nonzero integers")
        alpha = DihedralOrdering(canonical_cycle(seq), symmetry)
        if symmetry is Symmetry.AXIAL and alpha.axis_reflection() is None:
            raise InvalidArgumentError(f"{seq} is not axially symmetric")
        if symmetry is Symmetry.CENTRAL and not alpha._is_central():
            raise InvalidArgumentError(f"{seq} is not centrally symmetric")
        return alpha

    # -- symmetry recovery --------------------------------------------------

    def axis_reflection(self):
        """Constant ``c`` of the reflection ``edge p -> edge (c - p) % m``
        that negates every label, or None.  The axis runs through the two
        vertices fixed by the reflection; ``c`` is even-offset so that
        ``c - 1`` is even exactly when fixed vertices exist."""
        m = self.size
        lab = self.labels
        if m % 2:
            return None
        for c in range(m):
            if all(lab[(c - p) % m] == -lab[p] for p in range(m)):
                # label-negating reflections through edges cannot exist
                # (a fixed edge would need label == -label)
                if (c - 1) % 2 == 0:
                    return c
        return None

    def _is_central(self) -> bool:
        m = self.size
        if m % 2:
            return False
        n = m // 2
        lab = self.labels
        return all(lab[(p + n) % m] == -lab[p] for p in range(m))

    def vertex_after_label(self, label: int) -> int:
        """Vertex position following the edge carrying ``label`` in the
        stored representative (vertex ``p`` sits between edges ``p`` and
        ``p+1``)."""
        if label not in self.labels:
            raise InvalidArgumentError(f"label {label} not in this ordering")
        return self.labels.index(label)

    def to_json(self) -> dict:
        return {"labels": list(self.labels), "symmetry": self.symmetry.value}

    @staticmethod
    def from_json(obj) -> "DihedralOrdering":
        return DihedralOrdering.make(obj["labels"], Symmetry(obj["symmetry"]))


def enumerate_orderings(n: int, symmetry: Symmetry = Symmetry.NONE) -> list[DihedralOrdering]:
    """All dihedral orderings of the requested family, canonical, sorted.

    Plain: label set ``1..n``.  Axial/central: label set ``+-1..+-n``
    (2n polygon edges), enumerated from their defining half-sequences and
    deduplicated as dihedral classes.
    """
    if n < 3:
        raise InvalidArgumentError(f"need n >= 3, got {n}")
    found: set[tuple[int, ...]] = set()
    if symmetry is Symmetry.NONE:
        rest = list(range(2, n + 1))
        for perm in itertools.permutations(rest):
            found.add(canonical_cycle((1,) + perm))
    else:
        for perm in itertools.permutations(range(1, n + 1)):
            for signs in itertools.product((1, -1), repeat=n):
                half = tuple(s * v for s, v in zip(signs, perm))
                if symmetry is Symmetry.AXIAL:
                    seq = half + tuple(-x for x in reversed(half))
                else:
                    seq = half + tuple(-x for x in half)
                found.add(canonical_cycle(seq))
    return [DihedralOrdering(lab, symmetry) for lab in sorted(found)]


# ---------------------------------------------------------------------------
# diagonals and subdivisions
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Diagonal:
    """An unordered pair of non-adjacent polygon-vertex positions."""

    a: int
    b: int

    @staticmethod
    def make(a: int, b: int, m: int) -> "Diagonal":
        a, b = (a % m, b % m)
        if a > b:
            a, b = b, a
        if a == b or (b - a) % m in (1, m - 1):
            raise InvalidArgumentError(f"({a},{b}) is not a diagonal of an {m}-gon")
        return Diagonal(a, b)

    def crosses(self, other: "Diagonal") -> bool:
        """Distinct diagonals sharing interior points, i.e. strictly
        interleaved endpoints (a shared endpoint is not a crossing)."""
        a, b = self.a, self.b
        c, d = other.a, other.b
        if {a, b} & {c, d}:
            return False
        return (a < c < b) != (a < d < b)

    def side_edges(self, m: int) -> tuple[int, ...]:
        """Edge positions strictly between the endpoints, going upward."""
        return tuple(p % m for p in range(self.a + 1, self.b + 1))

    def endpoint_labels(self, ordering: DihedralOrdering) -> tuple[int, int]:
        """Endpoints under the convention that vertex ``p`` is named by the
        label of edge ``p`` (the edge it follows)."""
        return (ordering.labels[self.a], ordering.labels[self.b])


def all_diagonals(m: int) -> list[Diagonal]:
    return [
        Diagonal(a, b)
        for a in range(m)
        for b in range(a + 2, m)
        if not (a == 0 and b == m - 1)
    ]


def _reflect_diagonal(d: Diagonal, c: int, m: int) -> Diagonal:
    """Image of ``d`` under the reflection with edge map p -> (c-p) % m
    (vertex map k -> (c-1-k) % m)."""
    return Diagonal.make((c - 1 - d.a) % m, (c - 1 - d.b) % m, m)


def _rotate_diagonal(d: Diagonal, k: int, m: int) -> Diagonal:
    return Diagonal.make((d.a + k) % m, (d.b + k) % m, m)


@dataclass(frozen=True)
class Subdivision:
    """A set of pairwise non-crossing diagonals of a labeled polygon."""

    ordering: DihedralOrdering
    diagonals: frozenset[Diagonal]
    symmetric: bool = False

    @staticmethod
    def make(ordering: DihedralOrdering, diagonals, symmetric: bool = False) -> "Subdivision":
        ds = frozenset(diagonals)
        m = ordering.size
        for d in ds:
            if not (0 <= d.a < d.b < m) or (d.b - d.a) in (1, m - 1):
                raise InvalidArgumentError(f"{d} is not a diagonal of an {m}-gon")
        for d, e in itertools.combinations(sorted(ds), 2):
            if d.crosses(e):
                raise InvalidArgumentError(f"diagonals {d} and {e} cross")
        if symmetric:
            if ordering.symmetry is Symmetry.AXIAL:
                c = ordering.axis_reflection()
                if c is None:
                    raise InvalidArgumentError("ordering is not axially symmetric")
                if frozenset(_reflect_diagonal(d, c, m) for d in ds) != ds:
                    raise InvalidArgumentError("diagonal set not closed under the axis reflection")
                axis = _axis_diagonal(c, m)
                perps = set(_perpendicular_diagonals(c, m))
                for d in ds:
                    if d != axis and d not in perps and d.crosses(axis):
                        raise InvalidArgumentError(
                            f"{d} crosses the axis without being perpendicular to it"
                        )
            elif ordering.symmetry is Symmetry.CENTRAL:
                n = m // 2
                if frozenset(_rotate_diagonal(d, n, m) for d in ds) != ds:
                    raise InvalidArgumentError("diagonal set not closed under the central symmetry")
            else:
                raise InvalidArgumentError("symmetric subdivision over a plain ordering")
        return Subdivision(ordering, ds, symmetric)

    @property
    def is_trivial(self) -> bool:
        return not self.diagonals


def _axis_diagonal(c: int, m: int) -> Diagonal:
    k = ((c - 1) // 2) % m
    return Diagonal.make(k, k + m // 2, m)


def _perpendicular_diagonals(c: int, m: int) -> list[Diagonal]:
    """Diagonals joining pairs of vertices swapped by the axis reflection."""
    k = ((c - 1) // 2) % m
    out = []
    for j in range(1, m // 2):
        a, b = (k + j) % m, (k - j) % m
        if (b - a) % m not in (0, 1, m - 1):
            out.append(Diagonal.make(a, b, m))
    return out


def _symmetric_units(alpha: DihedralOrdering) -> list[frozenset[Diagonal]]:
    """Minimal nonempty symmetry-closed non-crossing diagonal sets."""
    m = alpha.size
    if alpha.symmetry is Symmetry.AXIAL:
        c = alpha.axis_reflection()
        units = [frozenset([_axis_diagonal(c, m)])]
        units += [frozenset([d]) for d in _perpendicular_diagonals(c, m)]
        seen = set()
        for d in all_diagonals(m):
            e = _reflect_diagonal(d, c, m)
            if e != d and not d.crosses(e):
                unit = frozenset([d, e])
                if unit not in seen:
                    seen.add(unit)
                    units.append(unit)
        return units
    if alpha.symmetry is Symmetry.CENTRAL:
        n = m // 2
        units, seen = [], set()
        for d in all_diagonals(m):
            e = _rotate_diagonal(d, n, m)
            unit = frozenset([d, e])
            if unit not in seen:
                seen.add(unit)
                if all(not x.crosses(y) for x, y in itertools.combinations(unit, 2)):
                    units.append(unit)
        return units
    raise InvalidArgumentError("plain orderings have no symmetric units")


def enumerate_coarsest(alpha: DihedralOrdering, symmetric: bool = False) -> list[Subdivision]:
    """The coarsest nontrivial (symmetric) subdivisions: one diagonal in the
    plain case, one symmetry unit otherwise."""
    if symmetric:
        _require_symmetric(alpha)
        return [Subdivision.make(alpha, u, True) for u in _symmetric_units(alpha)]
    return [Subdivision.make(alpha, [d]) for d in all_diagonals(alpha.size)]


def _require_symmetric(alpha: DihedralOrdering):
    if alpha.symmetry is Symmetry.NONE:
        raise InvalidArgumentError("ordering carries no symmetry flag")


def enumerate_subdivisions(alpha: DihedralOrdering, symmetric: bool = False) -> list[Subdivision]:
    """Every (symmetric) subdivision, the trivial one included.

    Backtracks over units (single diagonals, or symmetry orbits of
    diagonals) keeping the chosen set pairwise non-crossing; since
    non-crossing is a pairwise condition this enumerates each subdivision
    exactly once.
    """
    if symmetric:
        _require_symmetric(alpha)
        units = _symmetric_units(alpha)
    else:
        units = [frozenset([d]) for d in all_diagonals(alpha.size)]
    compat = [
        [
            j
            for j in range(i + 1, len(units))
            if all(not d.crosses(e) for d in units[i] for e in units[j])
        ]
        for i in range(len(units))
    ]
    out = []

    def extend(chosen: list[int], allowed: list[int]):
        ds = frozenset(d for i in chosen for d in units[i])
        out.append(Subdivision(alpha, ds, symmetric))
        for pos, j in enumerate(allowed):
            extend(chosen + [j], [k for k in allowed[pos + 1 :] if k in compat_sets[j]])

    compat_sets = [set(c) for c in compat]
    extend([], list(range(len(units))))
    return out


# ---------------------------------------------------------------------------
# phylogenetic trees as split systems
# ---------------------------------------------------------------------------

Split = frozenset  # frozenset({frozenset(sideA), frozenset(sideB)})


def make_split(side_a, side_b) -> Split:
    a, b = frozenset(side_a), frozenset(side_b)
    if not a or not b or a & b:
        raise InvalidArgumentError("split sides must be nonempty and disjoint")
    return frozenset({a, b})


def split_key(s: Split):
    """Deterministic sort key: the side containing the least label first."""
    a, b = sorted((tuple(sorted(x)) for x in s))
    return (min(len(a), len(b)), a, b)


def negate_split(s: Split) -> Split:
    return frozenset(frozenset(-x for x in side) for side in s)


def splits_compatible(s: Split, t: Split) -> bool:
    """Two splits of one label set can coexist in a tree iff some pair of
    sides is disjoint."""
    (a1, b1), (a2, b2) = tuple(s), tuple(t)
    return not (a1 & a2) or not (a1 & b2) or not (b1 & a2) or not (b1 & b2)


@dataclass(frozen=True)
class PhyloTree:
    """A leaf-labeled tree without degree-2 vertices, identified by its
    label set and internal-edge split system."""

    labels: frozenset[int]
    splits: frozenset[Split]

    @staticmethod
    def make(labels, splits) -> "PhyloTree":
        labs = frozenset(int(x) for x in labels)
        if len(labs) < 3:
            raise InvalidArgumentError("need at least 3 leaves")
        sps = frozenset(splits)
        for s in sps:
            sides = tuple(s)
            if len(sides) != 2 or sides[0] | sides[1] != labs:
                raise InvalidArgumentError(f"split {s} does not partition the label set")
            if min(len(sides[0]), len(sides[1])) < 2:
                raise InvalidArgumentError("split sides must have >= 2 labels (no degree-2 vertices)")
        for s, t in itertools.combinations(sps, 2):
            if not splits_compatible(s, t):
                raise InvalidArgumentError(f"incompatible splits {s} and {t}")
        return PhyloTree(labs, sps)

    @staticmethod
    def star(labels) -> "PhyloTree":
        return PhyloTree.make(labels, ())

    @cached_property
    def canonical_key(self) -> bytes:
        labs = tuple(sorted(self.labels))
        sps = tuple(split_key(s) for s in sorted(self.splits, key=split_key))
        return repr((labs, sps)).encode()

    def sorted_splits(self) -> list[Split]:
        return sorted(self.splits, key=split_key)

    @cached_property
    def adjacency(self):
        """Deterministic explicit form: (internal_count, edges, leaf_map).

        Internal vertices are numbered ``0..k``; leaves are represented by
        their labels in ``leaf_map: label -> internal vertex``; ``edges``
        lists internal edges as pairs together with their splits.
        """
        return _reconstruct(self)

    def internal_vertex_count(self) -> int:
        return self.adjacency[0]

    def contract(self, s: Split) -> "PhyloTree":
        """Contract the internal edge carrying split ``s`` (plain, not
        symmetric, contraction)."""
        if s not in self.splits:
            raise InvalidArgumentError("not an internal edge of this tree")
        return PhyloTree(self.labels, self.splits - {s})

    def is_negation_closed(self) -> bool:
        return all(negate_split(s) in self.splits for s in self.splits)

    def to_json(self) -> dict:
        return {
            "labels": sorted(self.labels),
            "splits": [
                [sorted(side) for side in sorted(s, key=lambda x: tuple(sorted(x)))]
                for s in self.sorted_splits()
            ],
        }

    @staticmethod
    def from_json(obj) -> "PhyloTree":
        return PhyloTree.make(
            obj["labels"], [make_split(a, b) for a, b in obj["splits"]]
        )


def _reconstruct(tree: PhyloTree):
    """Rebuild an adjacency structure from the split system.

    Standard sequential split insertion: start from the star tree and
    refine one vertex per split; afterwards the induced splits are checked
    against the input, which certifies the reconstruction.
    """
    labels = sorted(tree.labels)
    # branches[v] = list of (other_end, leafset); leaves are ('leaf', label)
    branches: dict[int, list] = {0: [(("leaf", x), frozenset([x])) for x in labels]}
    nxt = 1
    for s in tree.sorted_splits():
        side_a, side_b = sorted(s, key=lambda x: tuple(sorted(x)))
        home = None
        for v in sorted(branches):
            if all(ls <= side_a or ls <= side_b for _, ls in branches[v]):
                home = v
                break
        if home is None:
            raise InternalConsistencyError(f"no insertion point for split {s}")
        keep = [(e, ls) for e, ls in branches[home] if ls <= side_a]
        move = [(e, ls) for e, ls in branches[home] if not (ls <= side_a)]
        new = nxt
        nxt += 1
        branches[home] = keep + [(("node", new), frozenset())]
        branches[new] = move + [(("node", home), frozenset())]
        for e, _ in move:
            if e[0] == "node":  # repoint the far endpoint at the new vertex
                branches[e[1]] = [
                    (("node", new) if other == ("node", home) else other, ls)
                    for other, ls in branches[e[1]]
                ]
        _refresh_leafsets(branches, tree.labels)
    # derive edges from the final structure and verify the induced splits
    edge_list = sorted(
        (min(v, e[1]), max(v, e[1]))
        for v, bs in branches.items()
        for e, _ in bs
        if e[0] == "node" and v < e[1]
    )
    induced = set()
    for u, v in edge_list:
        side = _component_leaves(branches, u, v)
        induced.add(make_split(side, tree.labels - side))
    if induced != set(tree.splits):
        raise InternalConsistencyError("split reconstruction mismatch")
    leaf_map = {}
    for v, bs in branches.items():
        for e, _ in bs:
            if e[0] == "leaf":
                leaf_map[e[1]] = v
    return (nxt, tuple(edge_list), leaf_map)


def _refresh_leafsets(branches, all_labels):
    for v in branches:
        fixed = []
        for e, ls in branches[v]:
            if e[0] == "leaf":
                fixed.append((e, ls))
            else:
                fixed.append((e, _component_leaves(branches, e[1], v)))
        branches[v] = fixed


def _component_leaves(branches, start, banned) -> frozenset:
    """Leaves reachable from internal vertex ``start`` without passing the
    internal vertex ``banned``."""
    seen, stack, leaves = {start}, [start], set()
    while stack:
        v = stack.pop()
        for e, _ in branches[v]:
            if e[0] == "leaf":
                leaves.add(e[1])
            else:
                w = e[1]
                if w != banned and w not in seen:
                    seen.add(w)
                    stack.append(w)
    return frozenset(leaves)


# ---------------------------------------------------------------------------
# subdivisions <-> trees, compatibility
# ---------------------------------------------------------------------------


def tree_from_subdivision(sub: Subdivision) -> PhyloTree:
    """The leaf-labeled tree of a subdivision: cells become internal
    vertices, polygon edges become labeled leaves.  Each diagonal's induced
    bipartition of the edge labels is exactly one internal-edge split, so
    the tree is assembled directly from those splits."""
    alpha = sub.ordering
    m = alpha.size
    splits = []
    for d in sub.diagonals:
        side = frozenset(alpha.labels[p] for p in d.side_edges(m))
        splits.append(make_split(side, frozenset(alpha.labels) - side))
    return PhyloTree.make(alpha.labels, splits)


def _arc_diagonal(side: frozenset, alpha: DihedralOrdering):
    """Diagonal cutting off exactly the edges labeled by ``side``, or None
    if those edge positions are not cyclically contiguous."""
    m = alpha.size
    pos = sorted(alpha.labels.index(x) for x in side)
    k = len(pos)
    if k == m or k == 0:
        return None
    start = None
    for i, p in enumerate(pos):
        prev = (p - 1) % m
        if prev not in set(pos):
            if start is not None:
                return None  # more than one run
            start = i
    run = [pos[(start + j) % k] for j in range(k)]
    for j in range(1, k):
        if run[j] != (run[0] + j) % m:
            return None
    first, last = run[0], (run[0] + k - 1) % m
    return Diagonal.make((first - 1) % m, last, m)


def subdivision_from_tree(tree: PhyloTree, alpha: DihedralOrdering):
    """The unique subdivision of the ``alpha``-labeled polygon inducing
    ``tree``, or None if the tree is not compatible with ``alpha``.
    When ``alpha`` is symmetric the subdivision must be symmetric too."""
    if frozenset(alpha.labels) != tree.labels:
        raise InvalidArgumentError("label sets differ")
    if alpha.symmetry is not Symmetry.NONE and not tree.is_negation_closed():
        return None
    diagonals = []
    for s in tree.splits:
        side = min(s, key=lambda x: tuple(sorted(x)))
        d = _arc_diagonal(side, alpha)
        if d is None:
            return None
        diagonals.append(d)
    return Subdivision.make(alpha, diagonals, alpha.symmetry is not Symmetry.NONE)


def is_compatible(tree: PhyloTree, alpha: DihedralOrdering) -> bool:
    """Does the tree arise from a (symmetric, when ``alpha`` is symmetric)
    subdivision of the ``alpha``-labeled polygon?"""
    return subdivision_from_tree(tree, alpha) is not None


# ---------------------------------------------------------------------------
# the leaf-negating involution and symmetric contraction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SymmetryInvolution:
    """The unique tree automorphism swapping the leaves labeled ``i`` and
    ``-i``, given on internal vertices of the reconstructed adjacency."""

    tree: PhyloTree
    vertex_map: tuple[int, ...]

    def edge_image(self, s: Split) -> Split:
        return negate_split(s)

    @property
    def k(self) -> int:
        """Number of involution orbits of internal edges."""
        return orbit_count(self.tree)


def orbit_count(tree: PhyloTree) -> int:
    """Number of negation-orbits of internal edges: |E| - |{e : e moved}|/2."""
    if not tree.is_negation_closed():
        raise NotAxiallySymmetricError("tree admits no leaf-negating involution")
    moved = sum(1 for s in tree.splits if negate_split(s) != s)
    return len(tree.splits) - moved // 2


def symmetry_involution(tree: PhyloTree) -> SymmetryInvolution:
    """Compute the involution explicitly on the reconstructed adjacency.

    Internal vertices are matched through their branch decompositions: the
    image of ``v`` is the unique vertex whose around-vertex leaf partition
    is the negation of that of ``v``.
    """
    if frozenset(-x for x in tree.labels) != tree.labels:
        raise NotAxiallySymmetricError("label set is not negation-closed")
    if not tree.is_negation_closed():
        raise NotAxiallySymmetricError("tree admits no leaf-negating involution")
    count, edges, leaf_map = tree.adjacency
    branches = _branch_partitions(tree)
    sig = {v: frozenset(branches[v]) for v in range(count)}
    neg_sig = {
        v: frozenset(frozenset(-x for x in part) for part in sig[v]) for v in range(count)
    }
    mapping = []
    for v in range(count):
        cands = [w for w in range(count) if sig[w] == neg_sig[v]]
        if len(cands) != 1:
            raise InternalConsistencyError("involution image not unique")
        mapping.append(cands[0])
    vm = tuple(mapping)
    for v in range(count):
        if vm[vm[v]] != v:
            raise InternalConsistencyError("computed map is not an involution")
    return SymmetryInvolution(tree, vm)


def _branch_partitions(tree: PhyloTree):
    count, edges, leaf_map = tree.adjacency
    adj = {v: [] for v in range(count)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    parts = {v: [] for v in range(count)}
    for v in range(count):
        for lab, home in leaf_map.items():
            if home == v:
                parts[v].append(frozenset([lab]))
        # temporary branch structure for component search
    branch_struct = {
        v: [(("node", w), None) for w in adj[v]]
        + [(("leaf", lab), frozenset([lab])) for lab, h in leaf_map.items() if h == v]
        for v in range(count)
    }
    _refresh_leafsets(branch_struct, tree.labels)
    return {
        v: [ls for _, ls in branch_struct[v]]
        for v in range(count)
    }


def symmetric_contract(tree: PhyloTree, s: Split) -> PhyloTree:
    """Contract the internal-edge orbit {e, iota(e)} of the edge with split
    ``s`` (just ``e`` when self-symmetric)."""
    if not tree.is_negation_closed():
        raise NotAxiallySymmetricError("tree admits no leaf-negating involution")
    if s not in tree.splits:
        raise InvalidArgumentError("not an internal edge of this tree")
    return PhyloTree(tree.labels, tree.splits - {s, negate_split(s)})


def split_orbits(tree: PhyloTree) -> list[frozenset[Split]]:
    """Negation-orbits of the internal edges, deterministically ordered."""
    seen, orbits = set(), []
    for s in tree.sorted_splits():
        if s in seen:
            continue
        orb = frozenset({s, negate_split(s)})
        seen |= orb
        orbits.append(orb)
    return orbits


def symmetric_contractions(tree: PhyloTree) -> list[PhyloTree]:
    return [PhyloTree(tree.labels, tree.splits - orb) for orb in split_orbits(tree)]


# ---------------------------------------------------------------------------
# complexes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Complex:
    """A simplicial complex whose vertices are canonical minimal trees and
    whose faces carry canonical trees.  The empty face is materialized."""

    family: str  # 'a' | 'as' | 'cs'
    n: int
    vertices: tuple[PhyloTree, ...]
    faces: frozenset[frozenset[int]]
    _face_tree: dict = field(compare=False, hash=False, repr=False)
    _face_source: dict = field(compare=False, hash=False, repr=False, default=None)

    # -- basic queries -------------------------------------------------------

    def face_tree(self, face: frozenset[int]) -> PhyloTree:
        return self._face_tree[face]

    def face_source(self, face: frozenset[int]) -> Subdivision:
        if self._face_source is None:
            raise InvalidArgumentError("face sources are only recorded for single-ordering builds")
        return self._face_source[face]

    def sorted_faces(self) -> list[frozenset[int]]:
        return sorted(self.faces, key=lambda f: (len(f), tuple(sorted(f))))

    def edges(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(f)) for f in self.faces if len(f) == 2)

    @property
    def dimension(self) -> int:
        return max(len(f) for f in self.faces) - 1

    def f_vector(self) -> tuple[int, ...]:
        counts = {}
        for f in self.faces:
            counts[len(f)] = counts.get(len(f), 0) + 1
        return tuple(counts.get(k, 0) for k in range(0, self.dimension + 2))

    def is_pure(self) -> bool:
        top = self.dimension + 1
        maximal = [f for f in self.faces if not any(f < g for g in self.faces)]
        return all(len(f) == top for f in maximal)

    def is_downward_closed(self) -> bool:
        return all(
            frozenset(sub) in self.faces
            for f in self.faces
            for k in range(len(f))
            for sub in itertools.combinations(sorted(f), k)
        )

    def is_flag(self) -> bool:
        """Every set of pairwise-adjacent vertices is a face."""
        adj = {v: set() for v in range(len(self.vertices))}
        for f in self.faces:
            if len(f) == 2:
                a, b = sorted(f)
                adj[a].add(b)
                adj[b].add(a)

        # DFS over vertex-increasing clique extensions; any clique missing
        # from the face set fails the test
        def dfs(clique, ext):
            if frozenset(clique) not in self.faces:
                return False
            return all(dfs(clique | {v}, {w for w in ext if w > v and w in adj[v]}) for v in ext)

        return dfs(frozenset(), set(adj))

    def degree_sequence(self) -> list[int]:
        deg = [0] * len(self.vertices)
        for a, b in self.edges():
            deg[a] += 1
            deg[b] += 1
        return deg

    def girth(self) -> int:
        """Length of a shortest cycle of the 1-skeleton (0 if forest)."""
        adj = {v: set() for v in range(len(self.vertices))}
        for a, b in self.edges():
            adj[a].add(b)
            adj[b].add(a)
        best = 0
        for src in adj:
            dist = {src: 0}
            parent = {src: -1}
            queue = [src]
            while queue:
                nxt = []
                for u in queue:
                    for w in adj[u]:
                        if w not in dist:
                            dist[w] = dist[u] + 1
                            parent[w] = u
                            nxt.append(w)
                        elif parent[u] != w:
                            cyc = dist[u] + dist[w] + 1
                            if best == 0 or cyc < best:
                                best = cyc
                queue = nxt
        return best

    def vertex_index(self, tree: PhyloTree) -> int:
        key = tree.canonical_key
        for i, v in enumerate(self.vertices):
            if v.canonical_key == key:
                return i
        raise InvalidArgumentError("tree is not a vertex of this complex")

    def face_of_tree(self, tree: PhyloTree):
        for f, t in self._face_tree.items():
            if t.canonical_key == tree.canonical_key:
                return f
        return None

    def contains_complex(self, other: "Complex") -> bool:
        """Face-by-face containment via canonical tree identification."""
        try:
            mapping = {i: self.vertex_index(v) for i, v in enumerate(other.vertices)}
        except InvalidArgumentError:
            return False
        return all(
            frozenset(mapping[i] for i in f) in self.faces for f in other.faces
        )

    # -- exports ---------------------------------------------------------------

    def to_json(self) -> dict:
        faces = self.sorted_faces()
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "complex",
            "family": self.family,
            "n": self.n,
            "vertices": [
                {
                    "key": v.canonical_key.decode(),
                    "tree": v.to_json(),
                    "edges": list(v.adjacency[1]),
                }
                for v in self.vertices
            ],
            "faces": [sorted(f) for f in faces],
            "face_trees": [self._face_tree[f].to_json() for f in faces],
        }

    @staticmethod
    def from_json(obj) -> "Complex":
        vertices = tuple(PhyloTree.from_json(v["tree"]) for v in obj["vertices"])
        faces = frozenset(frozenset(f) for f in obj["faces"])
        face_tree = {
            frozenset(f): PhyloTree.from_json(t)
            for f, t in zip(obj["faces"], obj["face_trees"])
        }
        return Complex(obj["family"], obj["n"], vertices, faces, face_tree, None)

    def to_dot(self, name: str = "skeleton", highlight_as=None, highlight_cs=None) -> str:
        """Graphviz text of the 1-skeleton.  ``highlight_as``/``highlight_cs``
        are orderings whose subcomplex edges get colored red/blue."""
        hi = {}
        for alpha, color in ((highlight_as, "red"), (highlight_cs, "blue")):
            if alpha is None:
                continue
            sub = build_sub(alpha)
            for a, b in sub.edges():
                ka = sub.vertices[a].canonical_key
                kb = sub.vertices[b].canonical_key
                hi[frozenset((ka, kb))] = color
        lines = [f"graph {name} {{", "  node [shape=circle];"]
        for i, v in enumerate(self.vertices):
            lines.append(f'  v{i} [label="{i}"];')
        for a, b in self.edges():
            key = frozenset((self.vertices[a].canonical_key, self.vertices[b].canonical_key))
            attr = f' [color={hi[key]}]' if key in hi else ""
            lines.append(f"  v{a} -- v{b}{attr};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _family_orderings(family: str, n: int) -> list[DihedralOrdering]:
    family = family.lower()
    if family == "a":
        return enumerate_orderings(n, Symmetry.NONE)
    if family == "as":
        return enumerate_orderings(n, Symmetry.AXIAL)
    if family == "cs":
        return enumerate_orderings(n, Symmetry.CENTRAL)
    raise InvalidArgumentError(f"unknown family {family!r}")


def build_complex(family: str, n: int) -> Complex:
    """Union of the per-ordering complexes with vertices identified by
    canonical tree."""
    orderings = _family_orderings(family, n)
    return _build(family.lower(), n, orderings, record_sources=False)


def build_sub(alpha: DihedralOrdering) -> Complex:
    """The complex of one ordering (with face -> subdivision provenance)."""
    family = {Symmetry.NONE: "a", Symmetry.AXIAL: "as", Symmetry.CENTRAL: "cs"}[alpha.symmetry]
    return _build(family, alpha.size if alpha.symmetry is Symmetry.NONE else alpha.half,
                  [alpha], record_sources=True)


def _build(family: str, n: int, orderings, record_sources: bool) -> Complex:
    symmetric = family in ("as", "cs")
    vertex_by_key: dict[bytes, PhyloTree] = {}
    face_sets = []  # (frozenset of keys, tree, subdivision)
    for alpha in orderings:
        units = enumerate_coarsest(alpha, symmetric)
        unit_tree = {}
        for u in units:
            t = tree_from_subdivision(u)
            unit_tree[u.diagonals] = t
            vertex_by_key.setdefault(t.canonical_key, t)
        for sub in enumerate_subdivisions(alpha, symmetric):
            members = frozenset(
                unit_tree[u.diagonals].canonical_key
                for u in units
                if u.diagonals <= sub.diagonals
            )
            face_sets.append((members, tree_from_subdivision(sub), sub))
    vertices = tuple(sorted(vertex_by_key.values(), key=lambda t: t.canonical_key))
    index = {t.canonical_key: i for i, t in enumerate(vertices)}
    faces = {}
    sources = {} if record_sources else None
    for keys, tree, sub in face_sets:
        face = frozenset(index[k] for k in keys)
        prev = faces.get(face)
        if prev is not None and prev.canonical_key != tree.canonical_key:
            raise InternalConsistencyError("one vertex set from two distinct trees")
        faces[face] = tree
        if record_sources and face not in sources:
            sources[face] = sub
    return Complex(family, n, vertices, frozenset(faces), faces, sources)


# ---------------------------------------------------------------------------
# the dual-associahedron identification for axial complexes
# ---------------------------------------------------------------------------


def delta_as_iso(alpha: DihedralOrdering):
    """Order isomorphism between the axial complex of ``alpha`` (a 2n-gon)
    and the plain complex of an (n+2)-gon.

    Returns ``(axial_complex, plain_complex, face_map)`` where ``face_map``
    sends each face of the axial complex to its image face.  The underlying
    subdivision transfer keeps the half of the polygon on one side of the
    axis and trades each axis-perpendicular diagonal for a diagonal through
    a fresh apex vertex.
    """
    if alpha.symmetry is not Symmetry.AXIAL:
        raise InvalidArgumentError("ordering must be axially symmetric")
    m = alpha.size
    n = m // 2
    c = alpha.axis_reflection()
    k = ((c - 1) // 2) % m  # axis endpoints: vertices k and k+n
    axis = _axis_diagonal(c, m)

    # the chosen half keeps edges k+1 .. k+n, relabeled 1..n in Q;
    # P-vertex -> Q-vertex: vertices k..k+n (mod m) map to n+2, 1, 2, .., n
    pv_to_qv = {}
    pv_to_qv[k % m] = n + 2
    for j in range(1, n + 1):
        pv_to_qv[(k + j) % m] = j
    apex = n + 1

    q_ordering = DihedralOrdering.make(range(1, n + 3))
    # Q positions: label j sits at edge position j-1, so Q-vertex named j is
    # position j-1 under the code convention
    def q_diag(va: int, vb: int) -> Diagonal:
        return Diagonal.make((va - 1) % (n + 2), (vb - 1) % (n + 2), n + 2)

    perps = set(_perpendicular_diagonals(c, m))

    def transfer(sub: Subdivision) -> frozenset[Diagonal]:
        out = set()
        for d in sub.diagonals:
            if d == axis:
                out.add(q_diag(n, n + 2))
            elif d in perps:
                end = d.a if d.a in pv_to_qv and pv_to_qv[d.a] <= n else d.b
                if not (end in pv_to_qv and pv_to_qv[end] <= n):
                    raise InternalConsistencyError("perpendicular diagonal misses the kept half")
                out.add(q_diag(pv_to_qv[end], apex))
            elif d.a in pv_to_qv and d.b in pv_to_qv:
                out.add(q_diag(pv_to_qv[d.a], pv_to_qv[d.b]))
            # else: mirror copy of a kept diagonal; dropped
        return frozenset(out)

    axial = build_sub(alpha)
    plain = build_sub(q_ordering)
    plain_by_diagonals = {
        plain.face_source(f).diagonals: f for f in plain.faces
    }
    face_map = {}
    for f in axial.faces:
        image = transfer(axial.face_source(f))
        if image not in plain_by_diagonals:
            raise InternalConsistencyError("transferred subdivision is not a face")
        face_map[f] = plain_by_diagonals[image]
    if len(set(face_map.values())) != len(plain.faces):
        raise InternalConsistencyError("subdivision transfer is not bijective")
    return axial, plain, face_map


# ---------------------------------------------------------------------------
# every centrally symmetric tree is axially symmetric (the flip)
# ---------------------------------------------------------------------------


def csp_to_asp(tree: PhyloTree):
    """Witness that a centrally symmetric tree is axially symmetric.

    Finds a central ordering ``alpha`` the tree is compatible with, picks a
    longest diagonal ``l`` of that polygon crossing none of the tree's
    diagonals, and reverses one side (labels and diagonals) across the
    perpendicular bisector of ``l``.  Returns the resulting axial ordering
    and symmetric subdivision, which maps back to the same tree.
    """
    witness = None
    n = len(tree.labels) // 2
    for alpha in enumerate_orderings(n, Symmetry.CENTRAL):
        sub = subdivision_from_tree(tree, alpha)
        if sub is not None:
            witness = (alpha, sub)
            break
    if witness is None:
        raise InvalidArgumentError("tree is not compatible with any central ordering")
    alpha, sub = witness
    m = alpha.size
    lcand = None
    for q in range(n):
        l = Diagonal.make(q, q + n, m)
        if all(not l.crosses(d) for d in sub.diagonals):
            lcand = l
            break
    if lcand is None:
        raise InternalConsistencyError("no longest diagonal avoids the subdivision")
    q = lcand.a
    # flip side: edges q+1 .. q+n (all on one side of l); reflection in the
    # perpendicular bisector of l: edges p -> c0 - p, vertices v -> c0-1-v
    c0 = (2 * q + n + 1) % m

    def flip_vertex(v: int) -> int:
        return (c0 - 1 - v) % m

    side_edges = {(q + j) % m for j in range(1, n + 1)}
    side_vertices = {(q + j) % m for j in range(0, n + 1)}
    beta_raw = list(alpha.labels)
    for p in side_edges:
        beta_raw[p] = alpha.labels[(c0 - p) % m]
    canon, flip, shift = canonical_cycle_with_transform(beta_raw)
    beta = DihedralOrdering.make(canon, Symmetry.AXIAL)

    def to_canonical_vertex(v: int) -> int:
        # new edge p carries old edge (shift - p) % m if flip else (p + shift) % m;
        # vertex v (between edges v, v+1) maps accordingly
        if flip:
            return (shift - 1 - v) % m
        return (v - shift) % m

    new_diagonals = set()
    for d in sub.diagonals:
        if d.a in side_vertices and d.b in side_vertices:
            d = Diagonal.make(flip_vertex(d.a), flip_vertex(d.b), m)
        new_diagonals.add(Diagonal.make(to_canonical_vertex(d.a), to_canonical_vertex(d.b), m))
    result = Subdivision.make(beta, new_diagonals, symmetric=True)
    if tree_from_subdivision(result).canonical_key != tree.canonical_key:
        raise InternalConsistencyError("flip changed the tree")
    return beta, result
