"""Cross-validation of the doubled-polygon family through the unfolding.

Two independent routes into the doubled ideal must agree with the direct
polygon construction:

* identifying each pair of centrally symmetric coordinates of the plain
  ideal on 2n labels collapses its generators exactly onto the doubled
  family's generators;
* configurations of 2n points symmetric under a real involution (negation,
  or inversion x -> -1/x) land on the symmetric locus, and their projected
  coordinates are exact rational points of the doubled variety.

The second route realizes sign patterns in the real variety, so it pins
down, from the variety side, the same pattern <-> ordering correspondence
that the certification sweep finds from the initial-ideal side.
"""

import itertools
from fractions import Fraction

import pytest

from utrop.fans import double_label, index_set, orbit_projection
from utrop.symtrees import Symmetry, enumerate_orderings
from utrop.ualgebra import cross_ratio_point, ideal_a, ideal_c
from utrop.ualgebra.poly import Poly

N = 3


@pytest.fixture(scope="module")
def doubling():
    proj = orbit_projection(N)
    DA, DC = index_set("a", 2 * N), index_set("c", N)
    pos_c = {p: k for k, p in enumerate(DC.pairs)}
    return proj, DA, DC, pos_c


def test_plain_generators_collapse_onto_doubled_generators(doubling):
    proj, DA, DC, pos_c = doubling
    IA, IC = ideal_a(2 * N), ideal_c(N)
    ident = {i: pos_c[proj[p]] for i, p in enumerate(DA.pairs)}

    def push(poly):
        out = {}
        for m, c in poly.terms.items():
            mm = [0] * len(DC)
            for i, e in enumerate(m):
                mm[ident[i]] += e
            out[tuple(mm)] = out.get(tuple(mm), 0) + c
        return Poly(len(DC), out)

    by_terms = {
        frozenset(g.terms.items()): DC.pairs[k] for k, g in enumerate(IC.generators)
    }
    for k, g in enumerate(IA.generators):
        image = push(g)
        assert by_terms.get(frozenset(image.terms.items())) == proj[DA.pairs[k]]


def project_configuration(x_by_label, doubling):
    """Coordinates of a 2n-point configuration given by label -> rational,
    checked to lie on the symmetric locus and on the doubled variety."""
    proj, DA, DC, pos_c = doubling
    y = [x_by_label[double_label(k, N)] for k in range(1, 2 * N + 1)]
    u_plain = cross_ratio_point(y)
    u = [None] * len(DC)
    for i, p in enumerate(DA.pairs):
        slot = pos_c[proj[p]]
        if u[slot] is None:
            u[slot] = u_plain[i]
        else:
            assert u[slot] == u_plain[i]  # symmetric locus, exactly
    assert all(g.evaluate(u) == 0 for g in ideal_c(N).generators)
    return tuple(u)


def aligned_representative(alpha):
    m = alpha.size
    lab = alpha.labels
    for s in range(m):
        rot = tuple(lab[(p + s) % m] for p in range(m))
        for rep in (rot, tuple(reversed(rot))):
            if alpha.symmetry is Symmetry.AXIAL and all(
                rep[i] == -rep[m - 1 - i] for i in range(m)
            ):
                return rep
            if alpha.symmetry is Symmetry.CENTRAL and all(
                rep[(i + m // 2) % m] == -rep[i] for i in range(m)
            ):
                return rep
    raise AssertionError("no aligned representative")


def realized_pattern(alpha, doubling):
    """Sign pattern of a configuration placed in the order ``alpha`` and
    symmetric under the involution matching alpha's symmetry type."""
    rep = aligned_representative(alpha)
    m = alpha.size
    x = {}
    if alpha.symmetry is Symmetry.AXIAL:
        values = [Fraction(k) for k in range(-N, 0)] + [Fraction(k) for k in range(1, N + 1)]
        for i in range(m):
            x[rep[i]] = values[i]  # negation-symmetric placement
    else:
        for i in range(N):  # inversion-symmetric placement
            x[rep[i]] = Fraction(i + 1)
            x[-rep[i]] = Fraction(-1, i + 1)
    u = project_configuration(x, doubling)
    assert all(v != 0 for v in u)
    return tuple(1 if v > 0 else -1 for v in u)


def test_configurations_realize_sixteen_patterns(doubling):
    seen = {}
    for sym in (Symmetry.AXIAL, Symmetry.CENTRAL):
        for alpha in enumerate_orderings(N, sym):
            tau = realized_pattern(alpha, doubling)
            assert tau not in seen
            seen[tau] = alpha
    assert len(seen) == 16
    # the all-positive pattern comes from the standard central ordering
    from utrop.symtrees import DihedralOrdering, canonical_cycle

    all_ones = (1,) * 6
    assert seen[all_ones].labels == canonical_cycle((1, 2, 3, -1, -2, -3))


def test_realized_patterns_agree_with_certification_sweep(census_c3, doubling):
    # the variety-side realization and the initial-ideal-side sweep name
    # the same ordering for every pattern
    sweep = {
        tuple(p["tau"]): p["matches"] for p in census_c3["patterns"] if p["matches"]
    }
    assert len(sweep) == 16
    for sym, family in ((Symmetry.AXIAL, "as"), (Symmetry.CENTRAL, "cs")):
        for alpha in enumerate_orderings(N, sym):
            tau = realized_pattern(alpha, doubling)
            match = sweep.get(tau)
            assert match is not None, f"pattern {tau} not certified nonempty"
            assert match["family"] == family
            assert tuple(match["ordering"]) == alpha.labels
