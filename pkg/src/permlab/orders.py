"""Monomial orders on the symmetric-matrix polynomial ring.

Every order used here (diagonal lex, the column-k lex, elimination
blocks) is a lexicographic order over some significance permutation of
the variables, so an order is represented by that permutation.  Each
order packs exponent vectors into a single integer key, 16 bits per
variable with the most significant variable in the highest bits; then
``key(a) < key(b)`` is exactly the order comparison, and divisibility
tests become one subtraction plus a guard-bit mask.  Exponents are
capped below 2**15 so field arithmetic on the keys never carries across
slots undetected.
"""

from __future__ import annotations

EXP_BITS = 16
EXP_LIMIT = 1 << (EXP_BITS - 1)  # exponents must stay below this; top bit per slot is a carry guard

LESS = -1
EQUAL = 0
GREATER = 1


class OrderError(ValueError):
    """Order applied to monomials it does not understand."""


class MonomialOrder:
    """A lex order given by a significance list of variable indices.

    ``sig[0]`` is the greatest variable.  ``sig`` must be a permutation
    of the ring's variable indices.
    """

    __slots__ = (
        "ring", "sig", "tag", "_shifts", "_nslots", "_top_mask", "_slot_mask",
    )

    def __init__(self, ring, sig, tag: str):
        sig = tuple(sig)
        if sorted(sig) != list(range(ring.nvars)):
            raise OrderError("significance list must be a permutation of the ring variables")
        self.ring = ring
        self.sig = sig
        self.tag = tag
        n = len(sig)
        self._nslots = n
        # slot 0 (most significant variable) sits in the highest bits
        self._shifts = tuple(EXP_BITS * (n - 1 - t) for t in range(n))
        self._top_mask = sum((EXP_LIMIT) << s for s in self._shifts)
        self._slot_mask = (1 << EXP_BITS) - 1

    # -- exponent-tuple interface -------------------------------------

    def key(self, exps) -> int:
        """Packed integer key; key comparison is the monomial comparison."""
        if len(exps) != self._nslots:
            raise OrderError(
                f"monomial has {len(exps)} exponents but the order covers {self._nslots} variables"
            )
        k = 0
        for shift, v in zip(self._shifts, self.sig):
            e = exps[v]
            if e >= EXP_LIMIT:
                raise OverflowError(f"exponent {e} exceeds the 15-bit packing limit")
            k |= e << shift
        return k

    def unkey(self, key: int):
        """Inverse of :meth:`key`, returning the canonical exponent tuple."""
        exps = [0] * self._nslots
        for shift, v in zip(self._shifts, self.sig):
            exps[v] = (key >> shift) & self._slot_mask
        return tuple(exps)

    def compare(self, a, b) -> int:
        """Total order: LESS/EQUAL/GREATER as -1/0/1.  Multiplicative lex."""
        ka, kb = self.key(a), self.key(b)
        if ka < kb:
            return LESS
        if ka > kb:
            return GREATER
        return EQUAL

    def sort_key(self):
        return self.key

    # -- packed-key arithmetic (the Buchberger hot path) ---------------

    def kmul(self, k1: int, k2: int) -> int:
        k = k1 + k2
        if k & self._top_mask:
            raise OverflowError("monomial product overflows the 15-bit exponent packing")
        return k

    def kdivides(self, d: int, m: int) -> bool:
        """True iff the monomial with key ``d`` divides the one with key ``m``."""
        r = m - d
        return r >= 0 and not (r & self._top_mask)

    def kdiv(self, m: int, d: int) -> int:
        return m - d

    def klcm(self, k1: int, k2: int) -> int:
        k = 0
        mask = self._slot_mask
        for shift in self._shifts:
            e1 = (k1 >> shift) & mask
            e2 = (k2 >> shift) & mask
            k |= (e1 if e1 >= e2 else e2) << shift
        return k

    def kdeg(self, key: int) -> int:
        mask = self._slot_mask
        total = 0
        while key:
            total += key & mask
            key >>= EXP_BITS
        return total

    def ksupport(self, key: int) -> int:
        """Bitmask over slots with nonzero exponent (used as a division prefilter)."""
        mask = self._slot_mask
        out = 0
        bit = 1
        while key:
            if key & mask:
                out |= bit
            key >>= EXP_BITS
            bit <<= 1
        return out

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and other.sig == self.sig
            and other.ring.fingerprint == self.ring.fingerprint
        )

    def __hash__(self):
        return hash((self.ring.fingerprint, self.sig))

    def __repr__(self):
        return f"MonomialOrder({self.tag})"


def diag_lex(ring) -> MonomialOrder:
    """The diagonal lex order: x_ij > x_kl iff i < k, or i = k and j < l.

    Under this order the leading term of every 2x2 subpermanent of the
    symmetric matrix is the product of the submatrix diagonal entries.
    Auxiliary variables, if any, rank below all matrix variables.
    """
    sig = list(range(ring.base_count)) + list(ring.aux_indices)
    return MonomialOrder(ring, sig, "diaglex")


def qk_lex(ring, k: int) -> MonomialOrder:
    """Lex order with x_1k > x_2k > ... > x_kk > every variable avoiding k.

    The variables avoiding index k keep their diagonal-lex order among
    themselves; auxiliary variables rank last.
    """
    if not 1 <= k <= ring.n:
        raise OrderError(f"column index {k} out of range for n={ring.n}")
    front = [ring.var_index(i, k) for i in range(1, ring.n + 1) if i != k]
    front.append(ring.var_index(k, k))
    rest = [v for v in range(ring.base_count) if v not in set(front)]
    sig = front + rest + list(ring.aux_indices)
    return MonomialOrder(ring, sig, f"qklex:{k}")


def elim(ring, elim_vars, base: MonomialOrder | None = None) -> MonomialOrder:
    """Block order eliminating ``elim_vars``: they dominate all other variables.

    ``elim_vars`` is an iterable of variable indices (in practice the
    ring's auxiliary variables), compared lex among themselves in the
    given sequence; the remaining variables follow ``base`` (diagonal
    lex by default).
    """
    elim_vars = list(elim_vars)
    if len(set(elim_vars)) != len(elim_vars):
        raise OrderError("duplicate variables in elimination block")
    for v in elim_vars:
        if not 0 <= v < ring.nvars:
            raise OrderError(f"variable index {v} not in the ring")
    if base is None:
        base = diag_lex(ring)
    dropped = set(elim_vars)
    rest = [v for v in base.sig if v not in dropped]
    tag = "elim:" + ",".join(ring.var_name(v) for v in elim_vars) + ":" + base.tag
    return MonomialOrder(ring, elim_vars + rest, tag)
