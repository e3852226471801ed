"""Buchberger's algorithm, multivariate division, and ideal comparison.

The engine works on packed term lists: a polynomial becomes a list of
(integer key, coefficient) pairs sorted decreasing, where the key packs
the exponent vector in the order's significance sequence.  Monomial
comparison, divisibility, product and quotient are then single integer
operations, which is what dominates Buchberger runtime.

Pair selection follows the normal strategy (minimal lcm degree, ties by
the order on the lcm, then by pair indices), and pair pruning uses the
coprimality and chain criteria in the Gebauer-Moeller formulation.  A
paranoid mode disables all pruning for cross-validation.  Identical
inputs yield bit-identical bases across runs.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field as dataclass_field

from .ring import Polynomial, PolyRing


class BudgetExceeded(RuntimeError):
    """A computation ran past its deadline; partial statistics attached."""

    def __init__(self, message: str, stats=None):
        super().__init__(message)
        self.stats = stats


@dataclass
class BuchbergerStats:
    pairs_considered: int = 0
    pairs_pruned: int = 0
    zero_reductions: int = 0
    basis_additions: int = 0
    ms: float = 0.0
    cache_hit: bool = False

    def as_dict(self):
        return {
            "pairsConsidered": self.pairs_considered,
            "pairsPruned": self.pairs_pruned,
            "zeroReductions": self.zero_reductions,
            "basisAdditions": self.basis_additions,
            "ms": round(self.ms, 3),
            "cacheHit": self.cache_hit,
        }


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis: monic elements sorted by leading monomial."""

    elements: tuple
    order: object
    reduced: bool = True
    stats: BuchbergerStats | None = dataclass_field(default=None, compare=False)


# -- packed representation ----------------------------------------------------


def _pack(f: Polynomial, order):
    key = order.key
    return sorted(((key(m), c) for m, c in f.terms.items()), reverse=True)


def _unpack(ring: PolyRing, order, packed) -> Polynomial:
    unkey = order.unkey
    return Polynomial(ring, {unkey(k): c for k, c in packed})


def _monic_packed(packed, field):
    lc = packed[0][1]
    if lc == field.one:
        return packed
    inv = field.inv(lc)
    mul = field.mul
    return [(k, mul(c, inv)) for k, c in packed]


class _Reducer:
    """Monic reducer prepared for the division loop."""

    __slots__ = ("lt", "mask", "tail")

    def __init__(self, packed, order):
        self.lt = packed[0][0]
        self.mask = order.ksupport(self.lt)
        self.tail = packed[1:]


def _nf_packed(terms, reducers, order, fld):
    """Full normal form of a packed term list against monic reducers.

    Reducers are tried in list order; the largest reducible term is
    rewritten first.  Every output term is irreducible.
    """
    work = dict(terms)
    out = []
    top = order._top_mask
    ksupport = order.ksupport
    sub = fld.sub
    mul = fld.mul
    zero = fld.zero
    while work:
        t = max(work)
        c = work.pop(t)
        tmask = ksupport(t)
        for red in reducers:
            if red.mask & ~tmask:
                continue
            d = t - red.lt
            if d >= 0 and not (d & top):
                for k2, c2 in red.tail:
                    kk = k2 + d
                    cur = work.get(kk, zero)
                    v = sub(cur, mul(c, c2))
                    if v == zero:
                        work.pop(kk, None)
                    else:
                        work[kk] = v
                break
        else:
            out.append((t, c))
    return out


def _spair_packed(p1, p2, order, fld):
    """S-polynomial of two monic packed polynomials."""
    lt1, lt2 = p1[0][0], p2[0][0]
    lcm = order.klcm(lt1, lt2)
    d1 = lcm - lt1
    d2 = lcm - lt2
    sub = fld.sub
    mul = fld.mul
    zero = fld.zero
    acc = {}
    for k, c in p1:
        acc[k + d1] = c
    for k, c in p2:
        kk = k + d2
        v = sub(acc.get(kk, zero), c)
        if v == zero:
            acc.pop(kk, None)
        else:
            acc[kk] = v
    return sorted(acc.items(), reverse=True)


# -- public operations ---------------------------------------------------------


def s_polynomial(f: Polynomial, g: Polynomial, order=None) -> Polynomial:
    """S(f, g) = (L/LT(f)) f - (L/LT(g)) g for the monic scalings of f and g."""
    if not f or not g:
        raise ValueError("s_polynomial requires nonzero inputs")
    order = order or f.ring.default_order()
    fld = f.ring.field
    p1 = _monic_packed(_pack(f, order), fld)
    p2 = _monic_packed(_pack(g, order), fld)
    return _unpack(f.ring, order, _spair_packed(p1, p2, order, fld))


def normal_form(f: Polynomial, reducers, order=None) -> Polynomial:
    """Remainder of f under multivariate division by the reducer list.

    Deterministic: reducers are tried in the given list order and the
    largest reducible term is rewritten first.  The remainder has no
    term divisible by any reducer's leading monomial, and f minus the
    remainder lies in the ideal the reducers generate.  Scaling a
    reducer does not change the result, so reducers are normalized to
    monic internally.
    """
    order = order or f.ring.default_order()
    if not f:
        return f
    fld = f.ring.field
    reds = []
    for g in reducers:
        if not g:
            raise ValueError("zero polynomial in reducer list")
        if g.ring != f.ring:
            raise ValueError("reducers must live in the same ring as f")
        reds.append(_Reducer(_monic_packed(_pack(g, order), fld), order))
    return _unpack(f.ring, order, _nf_packed(_pack(f, order), reds, order, fld))


def _interreduce_packed(polys, order, fld):
    """Interreduce to a monic autoreduced list (fixpoint), sorted by LT.

    On Groebner input this produces the reduced basis; on arbitrary
    input it still returns a generating set none of whose terms is
    divisible by another element's leading monomial.
    """
    current = [_monic_packed(p, fld) for p in polys if p]
    changed = True
    while changed:
        changed = False
        # drop elements whose leading monomial another element's LT divides
        current.sort(key=lambda p: p[0][0])
        kept = []
        for p in current:
            lt = p[0][0]
            if any(order.kdivides(q[0][0], lt) for q in kept):
                changed = True
            else:
                kept.append(p)
        # tail-reduce every element against the others
        result = []
        for idx, p in enumerate(kept):
            others = [_Reducer(q, order) for j, q in enumerate(kept) if j != idx]
            r = _nf_packed(p, others, order, fld)
            if not r:
                changed = True
                continue
            r = _monic_packed(r, fld)
            if r != p:
                changed = True
            result.append(r)
        current = result
    current.sort(key=lambda p: p[0][0])
    return current


def reduce_basis(polys, order=None) -> list:
    """Interreduction: monic elements, no term divisible by another's LT.

    Idempotent; applied to a Groebner basis it yields the unique reduced
    basis for the order.
    """
    polys = list(polys)
    if not polys:
        return []
    ring = polys[0].ring
    order = order or ring.default_order()
    fld = ring.field
    packed = [_pack(p, order) for p in polys if p]
    return [_unpack(ring, order, p) for p in _interreduce_packed(packed, order, fld)]


def _update_pairs(pairs, heap, basis_lts, t, order, paranoid, stats):
    """Add pairs (i, t) for the new basis element, pruning per Gebauer-Moeller."""
    lt_t = basis_lts[t]
    klcm = order.klcm
    kdivides = order.kdivides
    kdeg = order.kdeg
    if paranoid:
        for i in range(t):
            lcm = klcm(basis_lts[i], lt_t)
            pairs[(i, t)] = lcm
            heapq.heappush(heap, (kdeg(lcm), lcm, i, t))
        return

    # chain criterion on existing pairs: drop (i, j) when the new LT divides
    # lcm(i, j) strictly finer than both mixed lcms
    for (i, j) in sorted(pairs):
        lcm_ij = pairs[(i, j)]
        if (
            kdivides(lt_t, lcm_ij)
            and lcm_ij != klcm(basis_lts[i], lt_t)
            and lcm_ij != klcm(basis_lts[j], lt_t)
        ):
            del pairs[(i, j)]
            stats.pairs_pruned += 1

    # group candidate pairs (i, t) by lcm, keep a minimal set
    by_lcm: dict[int, list[int]] = {}
    for i in range(t):
        by_lcm.setdefault(klcm(basis_lts[i], lt_t), []).append(i)
    minimal = []
    for lcm in sorted(by_lcm):
        if not any(kdivides(other, lcm) for other in minimal):
            minimal.append(lcm)
    kept = 0
    for lcm in minimal:
        members = by_lcm[lcm]
        # coprime criterion: if any member's lcm is the plain product, the
        # whole class reduces to zero
        if any(klcm(basis_lts[i], lt_t) == basis_lts[i] + lt_t for i in members):
            continue
        i = min(members)
        pairs[(i, t)] = lcm
        heapq.heappush(heap, (kdeg(lcm), lcm, i, t))
        kept += 1
    stats.pairs_pruned += t - kept


def buchberger(gens, order=None, *, paranoid: bool = False, deadline: float | None = None,
               interreduce: bool = True) -> GroebnerBasis:
    """Compute the reduced Groebner basis of the ideal the generators span.

    ``paranoid`` disables the coprimality and chain criteria so every
    S-pair is reduced explicitly.  ``deadline`` (``time.monotonic``
    value) raises :class:`BudgetExceeded` when passed.
    """
    gens = [g for g in gens if g]
    stats = BuchbergerStats()
    t0 = time.perf_counter()
    if not gens:
        if order is None:
            raise ValueError("cannot infer order for an empty generator list")
        return GroebnerBasis(elements=(), order=order, stats=stats)
    ring = gens[0].ring
    order = order or ring.default_order()
    fld = ring.field

    seen = set()
    basis = []  # packed monic polynomials
    for g in gens:
        p = tuple(_monic_packed(_pack(g, order), fld))
        if p not in seen:
            seen.add(p)
            basis.append(list(p))
    basis_lts = [p[0][0] for p in basis]

    pairs: dict[tuple[int, int], int] = {}
    heap: list = []
    for t in range(len(basis)):
        _update_pairs(pairs, heap, basis_lts, t, order, paranoid, stats)

    reducers = sorted((_Reducer(p, order) for p in basis), key=lambda r: r.lt)

    while heap:
        if deadline is not None and time.monotonic() > deadline:
            stats.ms = (time.perf_counter() - t0) * 1000.0
            raise BudgetExceeded("Groebner computation exceeded its budget", stats)
        _, _, i, j = heapq.heappop(heap)
        if pairs.pop((i, j), None) is None:
            continue  # pruned after scheduling
        stats.pairs_considered += 1
        s = _spair_packed(basis[i], basis[j], order, fld)
        if s:
            s = _nf_packed(s, reducers, order, fld)
        if not s:
            stats.zero_reductions += 1
            continue
        s = _monic_packed(s, fld)
        basis.append(s)
        basis_lts.append(s[0][0])
        stats.basis_additions += 1
        _update_pairs(pairs, heap, basis_lts, len(basis) - 1, order, paranoid, stats)
        reducers.append(_Reducer(s, order))
        reducers.sort(key=lambda r: r.lt)

    if interreduce:
        basis = _interreduce_packed(basis, order, fld)
    elements = tuple(_unpack(ring, order, p) for p in basis)
    stats.ms = (time.perf_counter() - t0) * 1000.0
    return GroebnerBasis(elements=elements, order=order, reduced=interreduce, stats=stats)


def verify_basis(gb: GroebnerBasis) -> bool:
    """Post-hoc check without criteria: every S-pair reduces to zero."""
    elems = gb.elements
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            s = s_polynomial(elems[i], elems[j], gb.order)
            if s and normal_form(s, elems, gb.order):
                return False
    return True


# -- ideals ---------------------------------------------------------------------

_GB_MEMO: dict[tuple, tuple] = {}


def clear_cache():
    _GB_MEMO.clear()


class Ideal:
    """An ideal given by generators, with cached reduced bases per order."""

    __slots__ = ("ring", "generators", "_cache")

    def __init__(self, ring: PolyRing, generators):
        self.ring = ring
        gens = []
        seen = set()
        for g in generators:
            if isinstance(g, str):
                g = ring.parse(g)
            if g.ring != ring:
                raise ValueError("generator in the wrong ring")
            if not g:
                continue
            c = g.canonical()
            if c not in seen:
                seen.add(c)
                gens.append(g)
        self.generators = tuple(gens)
        self._cache = {}

    def fingerprint(self, order) -> str:
        body = "|".join(sorted(g.monic(order).canonical() for g in self.generators))
        return f"{self.ring.fingerprint}#{order.tag}#{body}"

    def groebner_basis(self, order=None, *, paranoid: bool = False,
                       use_cache: bool = True, deadline: float | None = None) -> GroebnerBasis:
        order = order or self.ring.default_order()
        key = (self.ring.fingerprint, order.tag,
               tuple(sorted(g.canonical() for g in self.generators)))
        if use_cache and not paranoid:
            hit = self._cache.get(order.tag)
            if hit is not None:
                return hit
            memo = _GB_MEMO.get(key)
            if memo is not None:
                gb = GroebnerBasis(elements=memo, order=order,
                                   stats=BuchbergerStats(cache_hit=True))
                self._cache[order.tag] = gb
                return gb
        gb = buchberger(self.generators, order, paranoid=paranoid, deadline=deadline)
        if not paranoid:
            self._cache[order.tag] = gb
            _GB_MEMO[key] = gb.elements
        return gb

    def contains(self, f: Polynomial, order=None, deadline: float | None = None) -> bool:
        """Membership via normal form against the reduced basis."""
        if not f:
            return True
        order = order or self.ring.default_order()
        gb = self.groebner_basis(order, deadline=deadline)
        return not normal_form(f, gb.elements, order)

    def contains_ideal(self, other: "Ideal", order=None) -> bool:
        return all(self.contains(g, order) for g in other.generators)

    def equals(self, other: "Ideal", order=None, deadline: float | None = None) -> bool:
        """Ideal equality via uniqueness of the reduced basis."""
        if self.ring != other.ring:
            raise ValueError("ideal comparison across different rings")
        order = order or self.ring.default_order()
        a = self.groebner_basis(order, deadline=deadline).elements
        b = other.groebner_basis(order, deadline=deadline).elements
        return set(a) == set(b)

    def is_proper(self, order=None) -> bool:
        gb = self.groebner_basis(order)
        return not any(g.is_constant() for g in gb.elements)

    def __repr__(self):
        return f"Ideal({self.ring.fingerprint}, {len(self.generators)} gens)"


def contains(ideal: Ideal, f: Polynomial, order=None) -> bool:
    return ideal.contains(f, order)


def ideal_equal(a: Ideal, b: Ideal, order=None) -> bool:
    return a.equals(b, order)
