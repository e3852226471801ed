"""Polynomial ring over the entries of a symmetric matrix of indeterminates.

The ring for an n x n symmetric matrix has one variable x_ij per pair
i <= j; index pairs are canonicalized at construction, so x_ji *is*
x_ij.  Auxiliary variables z1, z2, ... may be adjoined for elimination
tricks.  Polynomials are immutable sparse maps from exponent tuples to
nonzero field elements, which makes the canonical form unique without
reference to a monomial order.
"""

from __future__ import annotations

import itertools
import re

from .fields import QQ
from .orders import EXP_LIMIT, diag_lex


class ParseError(ValueError):
    """Syntax or range error in polynomial text, with a position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class PolyRing:
    """k[x_ij : i <= j <= n][z1..zm] with a fixed variable enumeration.

    Base variables are enumerated in diagonal-lex reading order
    (1,1), (1,2), ..., (1,n), (2,2), ..., (n,n); auxiliary variables
    follow.  All polynomial values are immutable and safe to share.
    """

    __slots__ = ("n", "field", "aux_count", "pairs", "names", "nvars",
                 "base_count", "_pair_index", "fingerprint", "_default_order")

    def __init__(self, n: int, field=QQ, aux_count: int = 0):
        if n < 1:
            raise ValueError(f"matrix size must be positive, got {n}")
        if aux_count < 0:
            raise ValueError("aux_count must be nonnegative")
        self.n = n
        self.field = field
        self.aux_count = aux_count
        self.pairs = tuple((i, j) for i in range(1, n + 1) for j in range(i, n + 1))
        self.base_count = len(self.pairs)
        self.nvars = self.base_count + aux_count
        self.names = tuple(f"x{i}_{j}" for i, j in self.pairs) + tuple(
            f"z{k}" for k in range(1, aux_count + 1)
        )
        self._pair_index = {pair: idx for idx, pair in enumerate(self.pairs)}
        self.fingerprint = f"n={n};aux={aux_count};field={field.tag}"
        self._default_order = None

    # -- variables ------------------------------------------------------

    @property
    def aux_indices(self):
        return range(self.base_count, self.nvars)

    def var_index(self, i: int, j: int) -> int:
        """Index of x_ij; (j, i) maps to the same variable."""
        if i > j:
            i, j = j, i
        if i < 1 or j > self.n:
            raise ValueError(f"variable x{i}_{j} out of range for n={self.n}")
        return self._pair_index[(i, j)]

    def aux_index(self, k: int) -> int:
        """Index of the auxiliary variable z{k}, 1-based."""
        if not 1 <= k <= self.aux_count:
            raise ValueError(f"aux variable z{k} out of range (ring has {self.aux_count})")
        return self.base_count + k - 1

    def var_name(self, idx: int) -> str:
        return self.names[idx]

    # -- polynomial constructors ----------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: self.field.one})

    def constant(self, c) -> "Polynomial":
        c = self.field.coerce(c)
        if c == self.field.zero:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def monomial(self, exps, coeff=1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ValueError("exponent tuple has the wrong length for this ring")
        coeff = self.field.coerce(coeff)
        if coeff == self.field.zero:
            return self.zero()
        return Polynomial(self, {exps: coeff})

    def variable(self, i: int, j: int) -> "Polynomial":
        return self._gen(self.var_index(i, j))

    def aux_variable(self, k: int = 1) -> "Polynomial":
        return self._gen(self.aux_index(k))

    def _gen(self, idx: int) -> "Polynomial":
        exps = [0] * self.nvars
        exps[idx] = 1
        return Polynomial(self, {tuple(exps): self.field.one})

    def gens(self):
        """All variables, base first then auxiliary, as polynomials."""
        return [self._gen(v) for v in range(self.nvars)]

    def from_terms(self, terms) -> "Polynomial":
        """Build from an iterable of (exps, coeff), merging duplicates."""
        acc = {}
        field = self.field
        for exps, coeff in terms:
            exps = tuple(exps)
            coeff = field.coerce(coeff)
            cur = acc.get(exps)
            coeff = coeff if cur is None else field.add(cur, coeff)
            if coeff == field.zero:
                acc.pop(exps, None)
            else:
                acc[exps] = coeff
        return Polynomial(self, acc)

    # -- ring plumbing ----------------------------------------------------

    def default_order(self):
        if self._default_order is None:
            self._default_order = diag_lex(self)
        return self._default_order

    def with_extra_aux(self, extra: int = 1) -> "PolyRing":
        return PolyRing(self.n, self.field, self.aux_count + extra)

    def drop_aux(self, count: int | None = None) -> "PolyRing":
        if count is None:
            count = self.aux_count
        if count > self.aux_count:
            raise ValueError("cannot drop more aux variables than the ring has")
        return PolyRing(self.n, self.field, self.aux_count - count)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and other.fingerprint == self.fingerprint

    def __hash__(self):
        return hash(self.fingerprint)

    def __repr__(self):
        return f"PolyRing({self.fingerprint})"

    def parse(self, text: str) -> "Polynomial":
        return _parse(self, text)


def _check_exp_bound(e: int):
    if e >= EXP_LIMIT:
        raise OverflowError(f"exponent {e} exceeds the 15-bit per-variable limit")


class Polynomial:
    """Immutable sparse polynomial: exponent tuple -> nonzero coefficient."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- predicates -----------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_homogeneous(self) -> bool:
        degrees = {sum(m) for m in self.terms}
        return len(degrees) <= 1

    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1 by convention."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def support(self):
        """Set of variable indices occurring in some term."""
        out = set()
        for m in self.terms:
            for v, e in enumerate(m):
                if e:
                    out.add(v)
        return out

    # -- arithmetic -------------------------------------------------------

    def _require_same_ring(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise ValueError(f"mixed rings: {self.ring} vs {other.ring}")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        self._require_same_ring(other)
        field = self.ring.field
        zero = field.zero
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = field.add(out.get(m, zero), c)
            if v == zero:
                out.pop(m, None)
            else:
                out[m] = v
        return Polynomial(self.ring, out)

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        return self + (-other)

    def __neg__(self):
        neg = self.ring.field.neg
        return Polynomial(self.ring, {m: neg(c) for m, c in self.terms.items()})

    def __rsub__(self, other):
        if isinstance(other, int):
            return self.ring.constant(other) - self
        return NotImplemented

    def __radd__(self, other):
        return self.__add__(other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._require_same_ring(other)
        field = self.ring.field
        zero = field.zero
        out = {}
        other_items = list(other.terms.items())
        for m1, c1 in self.terms.items():
            for m2, c2 in other_items:
                m = tuple(a + b for a, b in zip(m1, m2))
                v = field.add(out.get(m, zero), field.mul(c1, c2))
                if v == zero:
                    out.pop(m, None)
                else:
                    out[m] = v
        for m in out:
            for e in m:
                _check_exp_bound(e)
        return Polynomial(self.ring, out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base_needed = e > 1
            e >>= 1
            if base_needed and e:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        field = self.ring.field
        c = field.coerce(c)
        if c == field.zero:
            return self.ring.zero()
        return Polynomial(self.ring, {m: field.mul(v, c) for m, v in self.terms.items()})

    # -- order-dependent views ---------------------------------------------

    def sorted_terms(self, order=None):
        """Terms as (exps, coeff), strictly decreasing under the order."""
        order = order or self.ring.default_order()
        key = order.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, order=None):
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        order = order or self.ring.default_order()
        key = order.key
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def leading_monomial(self, order=None):
        return self.leading_term(order)[0]

    def monic(self, order=None) -> "Polynomial":
        """Divide by the leading coefficient; error on the zero polynomial."""
        m, c = self.leading_term(order)
        field = self.ring.field
        if c == field.one:
            return self
        inv = field.inv(c)
        return Polynomial(self.ring, {mm: field.mul(cc, inv) for mm, cc in self.terms.items()})

    # -- ring moves ----------------------------------------------------------

    def to_ring(self, target: PolyRing) -> "Polynomial":
        """Reinterpret in a ring with the same n (and field), mapping x_ij to
        x_ij and z_k to z_k positionally; fails if a dropped variable occurs."""
        if target.n != self.ring.n or target.field != self.ring.field:
            raise ValueError("target ring must share n and field")
        src, dst = self.ring, target
        out = {}
        for m, c in self.terms.items():
            exps = [0] * dst.nvars
            for v, e in enumerate(m):
                if not e:
                    continue
                if v < src.base_count:
                    exps[v] = e
                else:
                    k = v - src.base_count + 1
                    if k > dst.aux_count:
                        raise ValueError(f"variable z{k} does not exist in the target ring")
                    exps[dst.base_count + k - 1] = e
            out[tuple(exps)] = c
        return Polynomial(dst, out)

    # -- identity ------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, int):
                return self == self.ring.constant(other)
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.fingerprint, frozenset(self.terms.items())))
        return self._hash

    def canonical(self) -> str:
        """Order-free canonical serialization (used for cache fingerprints)."""
        parts = [
            ",".join(map(str, m)) + ":" + self.ring.field.format(c)
            for m, c in sorted(self.terms.items())
        ]
        return ";".join(parts)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"<{format_poly(self)}>"


# -- text format -----------------------------------------------------------


def format_poly(f: Polynomial, order=None) -> str:
    """Canonical text form: terms joined by +/-, decreasing under the order."""
    if not f.terms:
        return "0"
    ring = f.ring
    field = ring.field
    pieces = []
    for m, c in f.sorted_terms(order):
        cs = field.format(c)
        negative = cs.startswith("-")
        if negative:
            cs = cs[1:]
        factors = []
        for v, e in enumerate(m):
            if not e:
                continue
            name = ring.var_name(v)
            factors.append(name if e == 1 else f"{name}^{e}")
        if not factors:
            body = cs
        elif cs == "1":
            body = "*".join(factors)
        else:
            body = "*".join([cs] + factors)
        if not pieces:
            pieces.append(("-" if negative else "") + body)
        else:
            pieces.append(("- " if negative else "+ ") + body)
    return " ".join(pieces)


_TOKEN = re.compile(
    r"\s*(?:(?P<var>x(?P<vi>\d+)_(?P<vj>\d+))"
    r"|(?P<aux>z(?P<ak>\d+))"
    r"|(?P<num>\d+(?:/\d+)?)"
    r"|(?P<op>[\^*+-]))"
)


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise ParseError(f"unexpected character {stripped[0]!r}", at)
        out.append(m)
        pos = m.end()
    return out


def _parse(ring: PolyRing, text: str) -> Polynomial:
    """Recursive-descent parse of the polynomial grammar.

    expr   := [sign] term (sign term)*
    term   := factor ('*' factor)*
    factor := coefficient | variable ['^' exponent]
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial text", 0)
    i = 0
    total = ring.zero()

    def fail(msg, tok=None):
        at = tok.start() if tok is not None else len(text)
        raise ParseError(msg, at)

    while i < len(tokens):
        sign = 1
        # optional leading sign / separating operator
        while i < len(tokens) and tokens[i].lastgroup == "op" and tokens[i]["op"] in "+-":
            if tokens[i]["op"] == "-":
                sign = -sign
            i += 1
        if i >= len(tokens):
            fail("dangling sign")
        factors = []
        expect_factor = True
        while i < len(tokens):
            tok = tokens[i]
            kind = tok.lastgroup
            if expect_factor:
                if kind == "num":
                    factors.append(ring.constant(ring.field.parse(tok["num"])))
                    i += 1
                elif kind in ("var", "aux"):
                    if kind == "var":
                        vi, vj = int(tok["vi"]), int(tok["vj"])
                        try:
                            base = ring.variable(vi, vj)
                        except ValueError as exc:
                            fail(str(exc), tok)
                    else:
                        try:
                            base = ring.aux_variable(int(tok["ak"]))
                        except ValueError as exc:
                            fail(str(exc), tok)
                    i += 1
                    if i < len(tokens) and tokens[i].lastgroup == "op" and tokens[i]["op"] == "^":
                        i += 1
                        if i >= len(tokens) or tokens[i].lastgroup != "num" or "/" in tokens[i]["num"]:
                            fail("expected integer exponent after '^'",
                                 tokens[i] if i < len(tokens) else None)
                        base = base ** int(tokens[i]["num"])
                        i += 1
                    factors.append(base)
                else:
                    fail("expected a coefficient or variable", tok)
                expect_factor = False
            else:
                if kind == "op" and tok["op"] == "*":
                    i += 1
                    expect_factor = True
                elif kind == "op" and tok["op"] in "+-":
                    break
                else:
                    fail("expected an operator between factors", tok)
        if expect_factor:
            fail("dangling '*'")
        term = ring.constant(sign)
        for f in factors:
            term = term * f
        total = total + term
    return total


# -- symbolic matrices -------------------------------------------------------


class SymbolicMatrix:
    """A square grid of polynomials; rows/cols of the canonical symmetric X."""

    __slots__ = ("n", "entries")

    def __init__(self, entries):
        entries = tuple(tuple(row) for row in entries)
        n = len(entries)
        if any(len(row) != n for row in entries):
            raise ValueError("matrix must be square")
        self.n = n
        self.entries = entries

    @classmethod
    def symmetric_variables(cls, ring: PolyRing) -> "SymbolicMatrix":
        """The canonical X: entry (i, j) = entry (j, i) = x_{min,max}."""
        return cls(
            [[ring.variable(i, j) for j in range(1, ring.n + 1)] for i in range(1, ring.n + 1)]
        )

    def submatrix(self, rows, cols) -> "SymbolicMatrix":
        return SymbolicMatrix([[self.entries[r - 1][c - 1] for c in cols] for r in rows])

    def permanent(self) -> Polynomial:
        return permanent(self)

    def determinant(self) -> Polynomial:
        return determinant(self)


def _permutation_expansion(matrix: SymbolicMatrix, signed: bool) -> Polynomial:
    if matrix.n == 0:
        raise ValueError("empty matrix")
    ring = matrix.entries[0][0].ring
    total = ring.zero()
    for perm in itertools.permutations(range(matrix.n)):
        prod = ring.one()
        for i, j in enumerate(perm):
            prod = prod * matrix.entries[i][j]
        if signed:
            inversions = sum(
                1
                for a in range(matrix.n)
                for b in range(a + 1, matrix.n)
                if perm[a] > perm[b]
            )
            if inversions % 2:
                prod = -prod
        total = total + prod
    return total


def permanent(matrix: SymbolicMatrix) -> Polynomial:
    """Permutation expansion with all summands positive."""
    return _permutation_expansion(matrix, signed=False)


def determinant(matrix: SymbolicMatrix) -> Polynomial:
    """Signed permutation expansion."""
    return _permutation_expansion(matrix, signed=True)


def subpermanent(ring: PolyRing, rows, cols) -> Polynomial:
    """Permanent of the submatrix of the canonical X on the given rows/cols."""
    x = SymbolicMatrix.symmetric_variables(ring)
    return x.submatrix(rows, cols).permanent()
