"""Buchberger's algorithm over the rationals with exact integer internals.

Polynomials are cleared to primitive integer form on entry, and all S-pair
and reduction arithmetic stays in integers (cross-multiplying by leading
coefficients and stripping content), which avoids Fraction overhead in the
inner loops.  Pair pruning follows Gebauer-Moeller; pair selection is the
normal strategy (smallest lcm in the term order).  A hard pair budget
raises instead of truncating.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import gcd

from ..errors import GroebnerBudgetError
from .poly import (
    Poly,
    TermOrder,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)

DEFAULT_MAX_PAIRS = int(os.environ.get("UTROP_MAX_PAIRS", "200000"))


def _to_int_poly(p: Poly):
    """Primitive integer form of a rational polynomial (positive content)."""
    if not p:
        return {}
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    ints = {m: int(c * den) for m, c in p.terms.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, abs(v))
    return {m: v // g for m, v in ints.items()}


def _content_strip(terms):
    g = 0
    for v in terms.values():
        g = gcd(g, abs(v))
        if g == 1:
            return terms
    if g > 1:
        return {m: v // g for m, v in terms.items()}
    return terms


def _normalize_sign(terms, lm):
    if terms[lm] < 0:
        return {m: -v for m, v in terms.items()}
    return terms


class _Basis:
    """Basis polynomials with cached leading data."""

    __slots__ = ("order", "polys", "lms", "lcs", "keys")

    def __init__(self, order: TermOrder):
        self.order = order
        self.polys = []
        self.lms = []
        self.lcs = []
        self.keys = []

    def add(self, terms):
        lm = max(terms, key=self.order.key)
        terms = _normalize_sign(_content_strip(terms), lm)
        self.polys.append(terms)
        self.lms.append(lm)
        self.lcs.append(terms[lm])
        self.keys.append(self.order.key(lm))
        return len(self.polys) - 1

    def find_reducer(self, m):
        for i, lm in enumerate(self.lms):
            if monomial_divides(lm, m):
                return i
        return -1


def _reduce_int(terms, basis: _Basis):
    """Full normal form of an integer polynomial against ``basis``; the
    result is primitive with positive leading coefficient (or empty)."""
    order = basis.order
    p = dict(terms)
    remainder = {}
    while p:
        lm = max(p, key=order.key)
        i = basis.find_reducer(lm)
        if i < 0:
            remainder[lm] = p.pop(lm)
            continue
        g, glm, glc = basis.polys[i], basis.lms[i], basis.lcs[i]
        lc = p[lm]
        d = gcd(lc, glc)
        a = abs(glc // d)
        b = lc * a // glc  # lc/d with matching sign
        if a != 1:
            p = {m: a * v for m, v in p.items()}
            if remainder:
                remainder = {m: a * v for m, v in remainder.items()}
        shift = monomial_div(lm, glm)
        for m, v in g.items():
            mm = monomial_mul(m, shift)
            w = p.get(mm, 0) - b * v
            if w:
                p[mm] = w
            else:
                p.pop(mm, None)
    if not remainder:
        return {}
    lm = max(remainder, key=order.key)
    return _normalize_sign(_content_strip(remainder), lm)


def _s_poly(basis: _Basis, i: int, j: int):
    li, lj = basis.lms[i], basis.lms[j]
    lcm = monomial_lcm(li, lj)
    ci, cj = basis.lcs[i], basis.lcs[j]
    d = gcd(ci, cj)
    mi, mj = monomial_div(lcm, li), monomial_div(lcm, lj)
    fi, fj = cj // d, ci // d
    out = {}
    for m, v in basis.polys[i].items():
        out[monomial_mul(m, mi)] = fi * v
    for m, v in basis.polys[j].items():
        mm = monomial_mul(m, mj)
        w = out.get(mm, 0) - fj * v
        if w:
            out[mm] = w
        else:
            out.pop(mm, None)
    return out


def _update_pairs(basis: _Basis, pairs: set, t: int):
    """Gebauer-Moeller pair update after appending generator ``t``."""
    lmt = basis.lms[t]
    lcm = monomial_lcm
    # discard old pairs strictly dominated by t
    kill = set()
    for (i, j) in pairs:
        lij = lcm(basis.lms[i], basis.lms[j])
        if (
            monomial_divides(lmt, lij)
            and lij != lcm(basis.lms[i], lmt)
            and lij != lcm(basis.lms[j], lmt)
        ):
            kill.add((i, j))
    pairs -= kill
    # new pairs (i, t), pruned
    new = {}
    for i in range(t):
        new.setdefault(lcm(basis.lms[i], lmt), []).append(i)
    keep = []
    lcms = sorted(new, key=basis.order.key)
    minimal = []
    for L in lcms:
        if any(monomial_divides(M, L) for M in minimal):
            continue
        minimal.append(L)
        reps = new[L]
        # product criterion: skip if some representative has disjoint lm
        if any(lcm(basis.lms[i], lmt) == monomial_mul(basis.lms[i], lmt) for i in reps):
            continue
        keep.append((reps[0], t))
    pairs.update(keep)


def _buchberger_int(gens, order: TermOrder, max_pairs: int):
    basis = _Basis(order)
    pairs: set = set()
    stats = {"pairs": 0, "zero_reductions": 0}
    for g in gens:
        if g:
            g = _reduce_int(g, basis)
            if g:
                t = basis.add(g)
                _update_pairs(basis, pairs, t)
    while pairs:
        ij = min(pairs, key=lambda p: order.key(monomial_lcm(basis.lms[p[0]], basis.lms[p[1]])))
        pairs.discard(ij)
        stats["pairs"] += 1
        if stats["pairs"] > max_pairs:
            raise GroebnerBudgetError(stats["pairs"], max_pairs)
        s = _s_poly(basis, *ij)
        r = _reduce_int(s, basis)
        if r:
            t = basis.add(r)
            _update_pairs(basis, pairs, t)
        else:
            stats["zero_reductions"] += 1
    return basis, stats


def _reduced_basis(basis: _Basis):
    order = basis.order
    # minimalize: drop generators whose lm is divisible by another lm
    items = sorted(range(len(basis.polys)), key=lambda i: basis.keys[i])
    kept = []
    for i in items:
        if not any(monomial_divides(basis.lms[j], basis.lms[i]) for j in kept):
            kept.append(i)
    # inter-reduce tails
    final = _Basis(order)
    for i in kept:
        final.add(basis.polys[i])
    changed = True
    while changed:
        changed = False
        for idx in range(len(final.polys)):
            others = _Basis(order)
            for j in range(len(final.polys)):
                if j != idx:
                    others.add(final.polys[j])
            r = _reduce_int(final.polys[idx], others)
            if r != final.polys[idx]:
                changed = True
                if not r:
                    del final.polys[idx], final.lms[idx], final.lcs[idx], final.keys[idx]
                    break
                final.polys[idx] = r
                final.lms[idx] = max(r, key=order.key)
                final.lcs[idx] = r[final.lms[idx]]
                final.keys[idx] = order.key(final.lms[idx])
    sort = sorted(range(len(final.polys)), key=lambda i: final.keys[i])
    return [final.polys[i] for i in sort]


def groebner_basis(gens, order: TermOrder, max_pairs: int = DEFAULT_MAX_PAIRS, stats: dict | None = None):
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Returns monic polynomials sorted by leading monomial (ascending order
    key); the result is the unique reduced basis for the order.  Raises
    :class:`GroebnerBudgetError` when more than ``max_pairs`` S-pairs would
    be reduced.
    """
    nvars = order.nvars
    ints = [_to_int_poly(g) for g in gens]
    basis, run_stats = _buchberger_int([g for g in ints if g], order, max_pairs)
    reduced = _reduced_basis(basis)
    if stats is not None:
        stats.update(run_stats)
        stats["basis_size"] = len(reduced)
    out = []
    for terms in reduced:
        lm = max(terms, key=order.key)
        lc = Fraction(terms[lm])
        out.append(Poly(nvars, {m: Fraction(v) / lc for m, v in terms.items()}))
    return out


def groebner(ideal, order: TermOrder | None = None, max_pairs: int = DEFAULT_MAX_PAIRS):
    """Reduced basis of an :class:`~utrop.ualgebra.ideals.Ideal`; grevlex
    when no order is given."""
    from .poly import grevlex

    if order is None:
        order = grevlex(ideal.nvars)
    return groebner_basis(ideal.generators, order, max_pairs)


class NormalFormCalculator:
    """Normal forms against a fixed basis, with memoization.

    The basis is fixed at construction time, which is what makes caching
    sound; use this for repeated membership queries and for assembling
    normal-form matrices.
    """

    def __init__(self, basis, order: TermOrder):
        self.order = order
        self._basis = _Basis(order)
        for g in basis:
            terms = _to_int_poly(g) if isinstance(g, Poly) else dict(g)
            if terms:
                self._basis.add(terms)
        self.nvars = order.nvars
        self._cache: dict = {}

    def reduce(self, p: Poly) -> Poly:
        """Exact normal form over the rationals (unique for a reduced basis
        up to the input's scale; the output keeps the input's scale)."""
        key = (frozenset(p.terms.items()),)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        order = self.order
        rem = {}
        work = dict(p.terms)
        while work:
            lm = max(work, key=order.key)
            i = self._basis.find_reducer(lm)
            if i < 0:
                rem[lm] = work.pop(lm)
                continue
            g, glm, glc = self._basis.polys[i], self._basis.lms[i], self._basis.lcs[i]
            factor = work[lm] / glc
            shift = monomial_div(lm, glm)
            for m, v in g.items():
                mm = monomial_mul(m, shift)
                w = work.get(mm, 0) - factor * v
                if w:
                    work[mm] = w
                else:
                    work.pop(mm, None)
        result = Poly(self.nvars, rem)
        self._cache[key] = result
        return result

    def contains(self, p: Poly) -> bool:
        return not self.reduce(p)
