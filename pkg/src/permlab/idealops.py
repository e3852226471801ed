"""Elimination-based ideal operations.

Everything here reduces to one primitive: a Groebner basis under a
block order whose first block is the variables being eliminated.
Intersection uses the single-tag-variable trick, colon divides the
intersection with a principal ideal, saturation iterates colon until
the chain stabilizes, and radical membership adjoins an inverse.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groebner import Ideal, normal_form
from .orders import diag_lex, elim
from .ring import Polynomial, PolyRing


def _project(poly: Polynomial, target: PolyRing, var_map: dict[int, int]) -> Polynomial:
    out = {}
    for m, c in poly.terms.items():
        exps = [0] * target.nvars
        for v, e in enumerate(m):
            if e:
                exps[var_map[v]] = e
        out[tuple(exps)] = c
    return Polynomial(target, out)


def eliminate(ideal: Ideal, aux=None, deadline: float | None = None) -> Ideal:
    """Intersect with the subring avoiding the given auxiliary variables.

    ``aux`` is an iterable of variable indices, all of which must be
    auxiliary; by default every auxiliary variable is eliminated.  The
    result lives in the ring with those variables removed (remaining
    auxiliaries renumbered in order).
    """
    ring = ideal.ring
    if aux is None:
        aux = list(ring.aux_indices)
    aux = sorted(set(aux))
    if not aux:
        return ideal
    for v in aux:
        if v < ring.base_count:
            raise ValueError(f"{ring.var_name(v)} is not an auxiliary variable")
    order = elim(ring, aux, diag_lex(ring))
    gb = ideal.groebner_basis(order, deadline=deadline)
    dropped = set(aux)
    target = PolyRing(ring.n, ring.field, ring.aux_count - len(aux))
    var_map = {}
    next_aux = target.base_count
    for v in range(ring.nvars):
        if v in dropped:
            continue
        if v < ring.base_count:
            var_map[v] = v
        else:
            var_map[v] = next_aux
            next_aux += 1
    kept = [g for g in gb.elements if not (g.support() & dropped)]
    return Ideal(target, [_project(g, target, var_map) for g in kept])


def intersect(a: Ideal, b: Ideal, deadline: float | None = None) -> Ideal:
    """I cap J, by eliminating t from t*I + (1-t)*J."""
    if a.ring != b.ring:
        raise ValueError("intersection across different rings")
    ring = a.ring
    if not a.generators:
        return Ideal(ring, [])
    if not b.generators:
        return Ideal(ring, [])
    ext = ring.with_extra_aux(1)
    t = ext.aux_variable(ext.aux_count)
    one_minus_t = ext.one() - t
    gens = [f.to_ring(ext) * t for f in a.generators]
    gens += [g.to_ring(ext) * one_minus_t for g in b.generators]
    return eliminate(Ideal(ext, gens), [ext.aux_index(ext.aux_count)], deadline=deadline)


def intersect_many(ideals, deadline: float | None = None) -> Ideal:
    ideals = list(ideals)
    if not ideals:
        raise ValueError("empty intersection")
    acc = ideals[0]
    for nxt in ideals[1:]:
        acc = intersect(acc, nxt, deadline=deadline)
    return acc


def divide_exact(g: Polynomial, f: Polynomial, order=None) -> Polynomial:
    """The quotient g / f when f divides g exactly; raises otherwise."""
    if not f:
        raise ZeroDivisionError("division by the zero polynomial")
    ring = g.ring
    order = order or ring.default_order()
    fld = ring.field
    lt_m, lt_c = f.leading_term(order)
    quotient = ring.zero()
    rest = g
    while rest:
        m, c = rest.leading_term(order)
        diff = tuple(a - b for a, b in zip(m, lt_m))
        if any(e < 0 for e in diff):
            raise ArithmeticError("exact division failed; dividend not a multiple")
        t = ring.monomial(diff, fld.div(c, lt_c))
        quotient = quotient + t
        rest = rest - t * f
    return quotient


def colon(ideal: Ideal, f: Polynomial, deadline: float | None = None) -> Ideal:
    """The colon ideal (I : f) = {g : g*f in I}, via (1/f)(I cap (f))."""
    if not f:
        raise ZeroDivisionError("colon by the zero polynomial")
    ring = ideal.ring
    if f.is_constant():
        return Ideal(ring, ideal.generators)
    inter = intersect(ideal, Ideal(ring, [f]), deadline=deadline)
    return Ideal(ring, [divide_exact(g, f) for g in inter.generators])


def colon_ideal(ideal: Ideal, other: Ideal, deadline: float | None = None) -> Ideal:
    """(I : J) as the intersection of the single-element colons."""
    if not other.generators:
        raise ValueError("colon by the zero ideal")
    parts = [colon(ideal, g, deadline=deadline) for g in other.generators]
    return intersect_many(parts, deadline=deadline)


def saturate(ideal: Ideal, f: Polynomial, cap: int = 64,
             deadline: float | None = None) -> tuple[Ideal, int]:
    """(I : f^inf) and the least e with (I : f^e) = (I : f^(e+1)).

    Termination is guaranteed by the ascending chain condition; ``cap``
    guards against runaway inputs.
    """
    if not f:
        raise ZeroDivisionError("saturation by the zero polynomial")
    current = ideal
    for exponent in range(cap):
        nxt = colon(current, f, deadline=deadline)
        if current.equals(nxt, deadline=deadline):
            return current, exponent
        current = nxt
    raise RuntimeError(f"saturation did not stabilize within {cap} steps")


def radical_member(ideal: Ideal, f: Polynomial, deadline: float | None = None) -> bool:
    """True iff some power of f lies in the ideal (adjoin an inverse of f;
    f is in the radical exactly when the extended ideal is the unit ideal)."""
    if not f:
        return True
    ring = ideal.ring
    ext = ring.with_extra_aux(1)
    z = ext.aux_variable(ext.aux_count)
    gens = [g.to_ring(ext) for g in ideal.generators]
    gens.append(ext.one() - z * f.to_ring(ext))
    extended = Ideal(ext, gens)
    order = elim(ext, [ext.aux_index(ext.aux_count)], diag_lex(ext))
    gb = extended.groebner_basis(order, deadline=deadline)
    return any(g.is_constant() for g in gb.elements)


# -- monomial ideals and dimension ------------------------------------------


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal by its minimal generators (a divisibility antichain)."""

    ring: PolyRing
    generators: tuple  # exponent tuples

    def polynomials(self):
        return [self.ring.monomial(m) for m in self.generators]

    def contains_monomial(self, exps) -> bool:
        exps = tuple(exps)
        return any(all(a <= b for a, b in zip(g, exps)) for g in self.generators)


def _antichain(monomials):
    """Prune to minimal elements under divisibility, deterministically."""
    ordered = sorted(set(monomials), key=lambda m: (sum(m), m))
    kept = []
    for m in ordered:
        if not any(all(a <= b for a, b in zip(g, m)) for g in kept):
            kept.append(m)
    return tuple(kept)


def initial_ideal(ideal: Ideal, order=None) -> MonomialIdeal:
    """Leading monomials of the reduced basis, as minimal generators."""
    order = order or ideal.ring.default_order()
    gb = ideal.groebner_basis(order)
    lms = [g.leading_monomial(order) for g in gb.elements]
    return MonomialIdeal(ideal.ring, _antichain(lms))


def dimension_witness(ideal: Ideal, order=None) -> tuple[int, tuple[str, ...]]:
    """Krull dimension of the quotient ring, with a maximal independent set.

    dim k[x]/I equals dim k[x]/in(I), which is the largest number of
    variables S such that no minimal generator of in(I) is supported
    inside S.  The subset scan is brute force over all 2^v variable
    subsets (v <= 16 here), testing only subsets larger than the best
    found so far.
    """
    ring = ideal.ring
    init = initial_ideal(ideal, order)
    if any(not any(m) for m in init.generators):
        raise ValueError("the unit ideal has no Krull dimension")
    masks = []
    for m in init.generators:
        mask = 0
        for v, e in enumerate(m):
            if e:
                mask |= 1 << v
        masks.append(mask)
    nv = ring.nvars
    best = -1
    witness = 0
    for subset in range(1 << nv):
        if subset.bit_count() <= best:
            continue
        for g in masks:
            if not (g & ~subset):
                break
        else:
            best = subset.bit_count()
            witness = subset
    names = tuple(ring.var_name(v) for v in range(nv) if witness >> v & 1)
    return best, names


def krull_dimension(ideal: Ideal, order=None) -> int:
    return dimension_witness(ideal, order)[0]


def is_homogeneous(ideal: Ideal) -> bool:
    """True iff every generator has all terms of one total degree."""
    return all(g.is_homogeneous() for g in ideal.generators)


def reduce_by(ideal: Ideal, f: Polynomial, order=None) -> Polynomial:
    """Normal form of f against the ideal's reduced basis."""
    order = order or ideal.ring.default_order()
    gb = ideal.groebner_basis(order)
    return normal_form(f, gb.elements, order)
