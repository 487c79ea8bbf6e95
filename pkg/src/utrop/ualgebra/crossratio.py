"""Rational points on the plain-family variety from configurations of
distinct points on a line, and the sign patterns they realize."""

from __future__ import annotations

from fractions import Fraction

from ..errors import InvalidArgumentError
from ..fans import index_set
from ..symtrees import DihedralOrdering


def cross_ratio_point(xs) -> tuple:
    """Coordinates of the configuration ``xs`` (n distinct rationals).

    Entry for the pair (i, j) is the cross-ratio
    (x_j+1 - x_i)(x_j - x_i+1) / ((x_j - x_i)(x_j+1 - x_i+1)) with indices
    cyclic, in the fixed coordinate order.
    """
    xs = [Fraction(x) for x in xs]
    n = len(xs)
    if n < 4:
        raise InvalidArgumentError("need at least 4 points")
    if len(set(xs)) != n:
        raise InvalidArgumentError("points must be pairwise distinct")

    def p(a, b):  # difference, antisymmetric
        return xs[b - 1] - xs[a - 1]

    out = []
    for i, j in index_set("a", n).pairs:
        i1, j1 = i % n + 1, j % n + 1
        out.append((p(i, j1) * p(i1, j)) / (p(i, j) * p(i1, j1)))
    return tuple(out)


def sign_pattern_a(alpha: DihedralOrdering, placements=None) -> tuple:
    """Sign pattern of the component carved out by ``alpha``: place the
    points on a line in that order and take coordinate signs.

    ``placements`` (optional, list of strictly increasing rationals) lets
    property tests confirm the pattern does not depend on the chosen
    positions.
    """
    n = alpha.size
    seq = alpha.labels
    if placements is None:
        placements = list(range(1, n + 1))
    if len(placements) != n or any(
        not placements[k] < placements[k + 1] for k in range(n - 1)
    ):
        raise InvalidArgumentError("placements must be strictly increasing")
    xs = [Fraction(0)] * n
    for pos, label in enumerate(seq):
        xs[label - 1] = Fraction(placements[pos])
    u = cross_ratio_point(xs)
    if any(v == 0 for v in u):
        raise InvalidArgumentError("degenerate placement")
    return tuple(1 if v > 0 else -1 for v in u)
