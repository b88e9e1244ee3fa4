"""Finitely generated groups with canonical normal forms.

Every group context knows how to multiply and invert elements, enumerate
word-metric balls, and serialize elements to JSON-friendly encodings.
Elements are plain hashable Python values (tuples, strings), so they can
be used directly as dictionary keys in configurations and patterns.

Supported kinds:
  * ``Zd``          -- the grid Z^d with the l-infinity word metric,
  * ``ZdQuotient``  -- Z^d modulo an integer sublattice (may have infinite
                       index if the sublattice is not full rank),
  * ``Heisenberg``  -- upper triangular 3x3 integer matrices, stored as
                       triples (a, b, c) with (a,b,c)(a',b',c') =
                       (a+a', b+b', c+c'+a*b'),
  * ``Lamplighter`` -- Z_2 wr Z, stored as (sorted lamp tuple, cursor),
  * ``Free2``       -- the free group on a, b as freely reduced words.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction


class GroupError(ValueError):
    """Raised on malformed elements or mismatched group contexts."""


def _as_int_vector(v, d):
    vec = tuple(int(c) for c in v)
    if len(vec) != d:
        raise GroupError(f"expected a vector of length {d}, got {v!r}")
    return vec


class GroupCtx:
    """Base class for group contexts.  Elements are opaque hashables."""

    kind = "abstract"

    def identity(self):
        raise NotImplementedError

    def mul(self, g, h):
        raise NotImplementedError

    def inv(self, g):
        raise NotImplementedError

    def generators(self):
        """Symmetric generating set, identity excluded."""
        raise NotImplementedError

    def norm(self, g):
        """Word-metric distance from g to the identity."""
        if g == self.identity():
            return 0
        r = 1
        while True:
            if g in self.ball(r):
                return r
            r += 1

    def ball(self, r):
        """Set of elements at word distance <= r from the identity.

        Default implementation is breadth-first search over generators;
        subclasses override when a closed form exists.
        """
        if r < 0:
            raise GroupError("ball radius must be nonnegative")
        seen = {self.identity()}
        frontier = [self.identity()]
        for _ in range(r):
            new = []
            for g in frontier:
                for s in self.generators():
                    h = self.mul(g, s)
                    if h not in seen:
                        seen.add(h)
                        new.append(h)
            frontier = new
        return seen

    def sort_key(self, g):
        """Deterministic total order: (word norm, encoding)."""
        return (self.norm(g), self.encode(g))

    def encode(self, g):
        """JSON-friendly encoding of an element."""
        raise NotImplementedError

    def decode(self, obj):
        raise NotImplementedError

    def descriptor(self):
        """JSON descriptor of the group itself."""
        raise NotImplementedError

    def elements_equal_ctx(self, other):
        return self.descriptor() == other.descriptor()


class Zd(GroupCtx):
    """Z^d under addition, with the l-infinity word metric.

    The generating set is the full Moore neighborhood {-1,0,1}^d minus
    the origin, which makes the word metric coincide with l-infinity.
    """

    kind = "Zd"

    def __init__(self, d):
        if d < 1:
            raise GroupError("dimension must be >= 1")
        self.d = d

    def identity(self):
        return (0,) * self.d

    def mul(self, g, h):
        g = _as_int_vector(g, self.d)
        h = _as_int_vector(h, self.d)
        return tuple(a + b for a, b in zip(g, h))

    def inv(self, g):
        return tuple(-a for a in _as_int_vector(g, self.d))

    def generators(self):
        return [v for v in itertools.product((-1, 0, 1), repeat=self.d)
                if any(v)]

    def norm(self, g):
        return max(abs(c) for c in _as_int_vector(g, self.d)) if any(g) else 0

    def ball(self, r):
        if r < 0:
            raise GroupError("ball radius must be nonnegative")
        return set(itertools.product(range(-r, r + 1), repeat=self.d))

    def encode(self, g):
        return list(g)

    def decode(self, obj):
        return _as_int_vector(obj, self.d)

    def descriptor(self):
        return {"kind": "Zd", "d": self.d}


def _snf(mat):
    """Smith normal form over the integers.

    Returns (U, S, V) with U @ mat @ V = S, U and V unimodular and S
    diagonal with nonnegative entries.  mat is a list of rows; no numpy
    so that arithmetic stays exact for arbitrary integers.
    """
    a = [list(row) for row in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, c):
        for row in a:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    t = 0
    while t < min(m, n):
        # find a pivot with minimal absolute value in the remaining block
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] != 0 and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        done = True
        for i in range(t + 1, m):
            if a[i][t] != 0:
                add_row(t, i, -(a[i][t] // a[t][t]))
                if a[i][t] != 0:
                    done = False
        for j in range(t + 1, n):
            if a[t][j] != 0:
                add_col(t, j, -(a[t][j] // a[t][t]))
                if a[t][j] != 0:
                    done = False
        if not done:
            continue
        # divisibility fix-up: pivot must divide the rest of the block
        stray = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % a[t][t] != 0:
                    stray = i
                    break
            if stray is not None:
                break
        if stray is not None:
            add_row(stray, t, 1)
            continue
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, a, v


def _mat_mul_vec(mat, vec):
    return tuple(sum(r * x for r, x in zip(row, vec)) for row in mat)


def _mat_transpose(mat):
    return [list(col) for col in zip(*mat)]


def _mat_inverse_unimodular(mat):
    """Exact inverse of a unimodular integer matrix, via Fractions."""
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        scale = aug[col][col]
        aug[col] = [x / scale for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                c = aug[i][col]
                aug[i] = [x - c * y for x, y in zip(aug[i], aug[col])]
    inv = [[x for x in row[n:]] for row in aug]
    out = [[int(x) for x in row] for row in inv]
    if any(x != ix for row, irow in zip(inv, out) for x, ix in zip(row, irow)):
        raise GroupError("matrix is not unimodular")
    return out


class QuotientCtx(GroupCtx):
    """Z^d modulo the sublattice spanned by integer basis rows.

    The basis need not be full rank; a rank-deficient basis yields an
    infinite quotient such as Z^2 / <(0,1)> = Z.  Canonical coset
    representatives come from the Smith normal form of the basis.
    """

    kind = "ZdQuotient"

    def __init__(self, base: Zd, basis):
        self.base = base
        d = base.d
        rows = [_as_int_vector(row, d) for row in basis]
        if not rows:
            raise GroupError("sublattice basis must be nonempty")
        self.basis = [list(r) for r in rows]
        _, s, v = _snf(self.basis)
        self.v = v
        self.v_inv = _mat_inverse_unimodular(v)
        self.diag = [s[i][i] if i < len(s) else 0 for i in range(d)]
        if any(d_ == 0 for d_ in self.diag[: len(rows)]) and len(rows) >= d:
            # rank deficiency inside a square basis is fine; diag entries
            # beyond the rank are zero and mark free directions
            pass
        rank = sum(1 for x in self.diag if x != 0)
        self.rank = rank
        if rank == d:
            idx = 1
            for x in self.diag:
                idx *= x
            self.index = idx
        else:
            self.index = None  # infinite quotient

    def project(self, g):
        """Canonical coset representative of g."""
        g = _as_int_vector(g, self.base.d)
        y = _mat_mul_vec(_mat_transpose(self.v), g)  # y = g V (row-vector form)
        y = list(y)
        for i, s in enumerate(self.diag):
            if s != 0:
                y[i] %= s
        return _mat_mul_vec(_mat_transpose(self.v_inv), y)

    def same_coset(self, g, h):
        return self.project(g) == self.project(h)

    def representatives(self):
        """All coset representatives; only for finite-index quotients."""
        if self.index is None:
            raise GroupError("quotient has infinite index")
        reps = set()
        for y in itertools.product(*[range(s) for s in self.diag]):
            reps.add(_mat_mul_vec(_mat_transpose(self.v_inv), y))
        return reps

    def contains(self, g):
        """Is g in the sublattice itself?"""
        return self.project(g) == self.identity()

    # group structure of the quotient
    def identity(self):
        return (0,) * self.base.d

    def mul(self, g, h):
        return self.project(self.base.mul(g, h))

    def inv(self, g):
        return self.project(self.base.inv(g))

    def generators(self):
        gens = {self.project(v) for v in self.base.generators()}
        gens.discard(self.identity())
        return sorted(gens)

    def ball(self, r):
        return {self.project(g) for g in self.base.ball(r)}

    def norm(self, g):
        g = self.project(g)
        if g == self.identity():
            return 0
        r = 1
        while True:
            if g in self.ball(r):
                return r
            r += 1

    def encode(self, g):
        return list(g)

    def decode(self, obj):
        return self.project(_as_int_vector(obj, self.base.d))

    def descriptor(self):
        return {"kind": "ZdQuotient", "d": self.base.d,
                "basis": [list(r) for r in self.basis]}


class Heisenberg(GroupCtx):
    """Discrete Heisenberg group, elements (a, b, c)."""

    kind = "Heisenberg"

    def identity(self):
        return (0, 0, 0)

    def mul(self, g, h):
        a, b, c = g
        a2, b2, c2 = h
        return (a + a2, b + b2, c + c2 + a * b2)

    def inv(self, g):
        a, b, c = g
        return (-a, -b, -c + a * b)

    def generators(self):
        # x, y and their inverses
        return [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0)]

    def encode(self, g):
        return list(g)

    def decode(self, obj):
        return _as_int_vector(obj, 3)

    def descriptor(self):
        return {"kind": "Heisenberg"}


class Lamplighter(GroupCtx):
    """Z_2 wr Z: a finite set of lit lamps plus a cursor position."""

    kind = "Lamplighter"

    def identity(self):
        return ((), 0)

    def mul(self, g, h):
        lamps1, c1 = g
        lamps2, c2 = h
        lamps = set(lamps1)
        lamps.symmetric_difference_update(c1 + x for x in lamps2)
        return (tuple(sorted(lamps)), c1 + c2)

    def inv(self, g):
        lamps, c = g
        return (tuple(sorted(x - c for x in lamps)), -c)

    def generators(self):
        toggle = ((0,), 0)
        return [((), 1), ((), -1), toggle]

    def encode(self, g):
        lamps, c = g
        return [list(lamps), c]

    def decode(self, obj):
        lamps, c = obj
        return (tuple(sorted(int(x) for x in lamps)), int(c))

    def descriptor(self):
        return {"kind": "Lamplighter"}


_F2_INverse = {"a": "A", "A": "a", "b": "B", "B": "b"}


class Free2(GroupCtx):
    """Free group on two generators; elements are freely reduced words
    over "a", "A", "b", "B" (capitals are inverses)."""

    kind = "Free2"

    def identity(self):
        return ""

    def reduce(self, word):
        out = []
        for ch in word:
            if ch not in _F2_INverse:
                raise GroupError(f"bad free-group letter {ch!r}")
            if out and out[-1] == _F2_INverse[ch]:
                out.pop()
            else:
                out.append(ch)
        return "".join(out)

    def mul(self, g, h):
        return self.reduce(g + h)

    def inv(self, g):
        return "".join(_F2_INverse[ch] for ch in reversed(g))

    def generators(self):
        return ["a", "A", "b", "B"]

    def norm(self, g):
        return len(g)

    def ball(self, r):
        if r < 0:
            raise GroupError("ball radius must be nonnegative")
        out = {""}
        frontier = [""]
        for _ in range(r):
            new = []
            for w in frontier:
                for s in self.generators():
                    u = self.mul(w, s)
                    if u not in out:
                        out.add(u)
                        new.append(u)
            frontier = new
        return out

    def encode(self, g):
        return g

    def decode(self, obj):
        return self.reduce(str(obj))

    def descriptor(self):
        return {"kind": "Free2"}


@dataclass(frozen=True)
class SubgroupSpan:
    """A finitely generated subgroup with a membership test.

    For Z^d the span is an integer lattice (membership by exact linear
    algebra); for Free2 only letter-closed subgroups are supported, i.e.
    those generated by a subset of the free generators.
    """

    ctx: GroupCtx
    gens: tuple

    def contains(self, g):
        ctx = self.ctx
        if isinstance(ctx, (Zd,)):
            return _lattice_contains([list(v) for v in self.gens], g)
        if isinstance(ctx, Free2):
            letters = set()
            for w in self.gens:
                for ch in w:
                    letters.add(ch.lower())
            return all(ch.lower() in letters for ch in g)
        raise GroupError(f"subgroup membership unsupported for {ctx.kind}")

    def ball(self, r):
        """Word ball of the subgroup with respect to its generators."""
        ctx = self.ctx
        gens = list(self.gens) + [ctx.inv(g) for g in self.gens]
        seen = {ctx.identity()}
        frontier = [ctx.identity()]
        for _ in range(r):
            new = []
            for g in frontier:
                for s in gens:
                    h = ctx.mul(g, s)
                    if h not in seen:
                        seen.add(h)
                        new.append(h)
            frontier = new
        return seen


def _lattice_contains(basis_rows, g):
    """Does the integer row span of basis_rows contain g?"""
    if not basis_rows:
        return not any(g)
    d = len(basis_rows[0])
    u, s, v = _snf(basis_rows)
    y = _mat_mul_vec(_mat_transpose(v), _as_int_vector(g, d))
    diag = [s[i][i] if i < len(s) else 0 for i in range(d)]
    for yi, si in zip(y, diag):
        if si == 0:
            if yi != 0:
                return False
        elif yi % si != 0:
            return False
    return True


def sublattice_avoiding(d, points):
    """A finite-index sublattice L of Z^d with L meeting `points` only at 0.

    Deterministic rule: m * Z^d where m is one more than the largest
    l-infinity norm appearing in `points`.
    """
    m = 1
    for v in points:
        v = _as_int_vector(v, d)
        m = max(m, 1 + max(abs(c) for c in v)) if any(v) else m
    basis = [[m if i == j else 0 for j in range(d)] for i in range(d)]
    return QuotientCtx(Zd(d), basis)


_GROUP_KINDS = {
    "Zd": lambda desc: Zd(int(desc["d"])),
    "ZdQuotient": lambda desc: QuotientCtx(Zd(int(desc["d"])), desc["basis"]),
    "Heisenberg": lambda desc: Heisenberg(),
    "Lamplighter": lambda desc: Lamplighter(),
    "Free2": lambda desc: Free2(),
}


def group_from_descriptor(desc):
    kind = desc.get("kind")
    if kind not in _GROUP_KINDS:
        raise GroupError(f"unknown group kind {kind!r}")
    return _GROUP_KINDS[kind](desc)
