"""u-equation ideals: one generator per vertex of a flag complex with
compatibility degrees, plus the two polygon families (moduli of points on a
line, and its symplectic analogue on doubled labels)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from ..errors import InvalidArgumentError
from ..fans import IndexSetD, index_set, vertex_position
from ..symtrees import Diagonal
from .poly import Poly


def pair_var_name(pair) -> str:
    """CAS-safe variable name for a coordinate pair, '-' spelled as 'm'."""
    i, j = pair
    fmt = lambda x: f"m{-x}" if x < 0 else f"{x}"
    return f"u{fmt(i)}x{fmt(j)}"


@dataclass(frozen=True)
class Ideal:
    """A generator list over named variables (exact rational coefficients)."""

    variables: tuple[str, ...]
    generators: tuple[Poly, ...]
    index_set: IndexSetD | None = None

    def __post_init__(self):
        for g in self.generators:
            if g.nvars != len(self.variables):
                raise InvalidArgumentError("generator arity != number of variables")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def text(self) -> list[str]:
        return [g.text(list(self.variables)) for g in self.generators]

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "kind": "ideal",
            "variables": list(self.variables),
            "index_set": self.index_set.to_json() if self.index_set else None,
            "generators": [
                [[list(m), c.numerator, c.denominator] for m, c in sorted(g.terms.items())]
                for g in self.generators
            ],
        }

    @staticmethod
    def from_json(obj) -> "Ideal":
        nvars = len(obj["variables"])
        gens = tuple(
            Poly(nvars, {tuple(m): Fraction(num, den) for m, num, den in g})
            for g in obj["generators"]
        )
        D = IndexSetD.from_json(obj["index_set"]) if obj.get("index_set") else None
        return Ideal(tuple(obj["variables"]), gens, D)


@dataclass(frozen=True)
class CompatibilitySpec:
    """A flag complex on ordered vertices with positive compatibility
    degrees on the non-edges.

    Degrees are indexed by ordered pairs: ``degree(i, j)`` is the exponent
    of ``u_j`` in the generator of vertex ``i``.  (They need not be
    symmetric; the doubled polygon family has degree 2 against a longest
    diagonal's orbit but 1 in the reverse direction.)
    """

    vertices: tuple
    edges: frozenset  # frozenset of 2-frozensets
    degrees: dict  # ordered non-edge pair (i, j) -> positive int

    @staticmethod
    def make(vertices, edges, degrees) -> "CompatibilitySpec":
        verts = tuple(vertices)
        vset = set(verts)
        es = frozenset(frozenset(e) for e in edges)
        for e in es:
            if len(e) != 2 or not e <= vset:
                raise InvalidArgumentError(f"bad edge {set(e)}")
        degs = {}
        for k, v in degrees.items():
            a, b = tuple(k)
            if frozenset((a, b)) in es or a == b:
                raise InvalidArgumentError(f"degree given on the edge/loop ({a},{b})")
            degs[(a, b)] = int(v)
            degs.setdefault((b, a), int(v))
        non_edges = {
            p
            for pair in itertools.combinations(verts, 2)
            if frozenset(pair) not in es
            for p in (pair, pair[::-1])
        }
        if set(degs) != non_edges:
            raise InvalidArgumentError("degrees must cover exactly the non-edges")
        if any(v <= 0 for v in degs.values()):
            raise InvalidArgumentError("compatibility degrees must be positive")
        return CompatibilitySpec(verts, es, degs)

    def degree(self, a, b) -> int:
        return self.degrees[(a, b)]


def binary_ideal(spec: CompatibilitySpec) -> Ideal:
    """One generator per vertex i:  u_i + prod over non-neighbors j of
    u_j^degree(i,j)  - 1.  Duplicate polynomials are kept so generators stay
    indexed by vertices."""
    n = len(spec.vertices)
    pos = {v: k for k, v in enumerate(spec.vertices)}
    gens = []
    for v in spec.vertices:
        mono = [0] * n
        for w in spec.vertices:
            if w != v and frozenset((v, w)) not in spec.edges:
                mono[pos[w]] = spec.degree(v, w)
        g = Poly.var(pos[v], n) + Poly.monomial(tuple(mono), n) - Poly.const(1, n)
        gens.append(g)
    names = tuple(
        pair_var_name(v) if isinstance(v, tuple) and len(v) == 2 else f"u{v}"
        for v in spec.vertices
    )
    return Ideal(names, tuple(gens))


# ---------------------------------------------------------------------------
# the polygon families
# ---------------------------------------------------------------------------


def _pair_diagonals(pair, kind: str, n: int) -> list[Diagonal]:
    """The diagonal(s) represented by a coordinate pair: one for type 'a',
    the central-symmetry orbit (one or two) for type 'c'."""
    i, j = pair
    m = n if kind == "a" else 2 * n
    d1 = Diagonal.make(vertex_position(i, kind, n), vertex_position(j, kind, n), m)
    if kind == "a":
        return [d1]
    d2 = Diagonal.make(vertex_position(-i, kind, n), vertex_position(-j, kind, n), m)
    return [d1] if d2 == d1 else [d1, d2]


def compatibility_spec(kind: str, n: int) -> CompatibilitySpec:
    """The polygon compatibility data: vertices are coordinate pairs,
    adjacency is non-crossing of the full orbits, and the degree of (p, q)
    counts the diagonals of q's orbit crossing p's base diagonal."""
    kind = kind.lower()
    D = index_set(kind, n)
    diag = {p: _pair_diagonals(p, kind, n) for p in D.pairs}
    edges, degrees = set(), {}
    for p, q in itertools.combinations(D.pairs, 2):
        crossings = sum(1 for d in diag[p] for e in diag[q] if d.crosses(e))
        if crossings == 0:
            edges.add(frozenset((p, q)))
        else:
            degrees[(p, q)] = sum(1 for e in diag[q] if diag[p][0].crosses(e))
            degrees[(q, p)] = sum(1 for d in diag[p] if diag[q][0].crosses(d))
    return CompatibilitySpec.make(D.pairs, edges, degrees)


def ideal_a(n: int) -> Ideal:
    """u-equations of the plain polygon family (all degrees 1)."""
    if n < 4:
        raise InvalidArgumentError("need n >= 4 (nonempty coordinate set)")
    ideal = binary_ideal(compatibility_spec("a", n))
    return Ideal(ideal.variables, ideal.generators, index_set("a", n))


def ideal_c(n: int) -> Ideal:
    """u-equations of the doubled (centrally symmetric) polygon family;
    degrees are the orbit crossing counts (1 or 2)."""
    if n < 3:
        raise InvalidArgumentError("need n >= 3")
    ideal = binary_ideal(compatibility_spec("c", n))
    return Ideal(ideal.variables, ideal.generators, index_set("c", n))
