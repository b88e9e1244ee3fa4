"""Configurations, patterns and subshifts.

The ambient metric convention for the whole package: d(x, y) =
2^(-min{|g| : x_g != y_g}) with |g| the word norm.  Under this metric the
canonical expansivity threshold of any nontrivial pointed subshift sits
at the origin cell, so the shadow of a configuration -- the set of group
elements moving it visibly away from the zero point -- is exactly its
support.  All epsilon/delta bookkeeping in the gluing and periodization
modules therefore turns into exact finite-set computation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .groups import GroupCtx, QuotientCtx, Zd


class ShiftError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """An enumeration or search outgrew its configured budget."""


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple
    zero: str = "0"

    def __post_init__(self):
        if len(set(self.symbols)) != len(self.symbols):
            raise ShiftError("alphabet symbols must be distinct")
        if self.zero not in self.symbols:
            raise ShiftError("zero symbol must belong to the alphabet")

    def index(self, sym):
        return self.symbols.index(sym)

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)


BINARY = Alphabet(("0", "1"))
TERNARY = Alphabet(("0", "1", "2"))


@dataclass(frozen=True)
class Pattern:
    """A symbol assignment on a finite set of group elements."""

    cells: tuple  # sorted tuple of (element, symbol) pairs

    @staticmethod
    def from_dict(mapping, sort_key=None):
        key = sort_key or (lambda g: g)
        return Pattern(tuple(sorted(mapping.items(), key=lambda kv: key(kv[0]))))

    def domain(self):
        return [g for g, _ in self.cells]

    def as_dict(self):
        return dict(self.cells)

    def get(self, g, default=None):
        return dict(self.cells).get(g, default)

    def translate(self, ctx, t):
        """The pattern moved so that cell g lands on t*g."""
        return Pattern.from_dict({ctx.mul(t, g): s for g, s in self.cells})

    def __len__(self):
        return len(self.cells)


class Configuration:
    """A configuration with one of three finite descriptions.

    * finite support: a map from elements to nonzero symbols,
    * lattice periodic: a full-rank quotient and one symbol per coset,
    * strip periodic (Z^2): periodic along a single vector, finite
      support inside the fundamental strip.
    """

    def __init__(self, ctx: GroupCtx, alphabet: Alphabet):
        self.ctx = ctx
        self.alphabet = alphabet

    def value(self, g):
        raise NotImplementedError

    def support(self):
        raise NotImplementedError

    def is_zero(self):
        raise NotImplementedError

    def translate(self, t):
        """The configuration t . x, with (t.x)_h = x_{t^-1 h}."""
        raise NotImplementedError


class FiniteConfig(Configuration):
    def __init__(self, ctx, alphabet, entries=None):
        super().__init__(ctx, alphabet)
        clean = {}
        for g, s in (entries or {}).items():
            if s not in alphabet.symbols:
                raise ShiftError(f"symbol {s!r} not in alphabet")
            if s != alphabet.zero:
                clean[g] = s
        self.entries = clean

    def value(self, g):
        return self.entries.get(g, self.alphabet.zero)

    def support(self):
        return set(self.entries)

    def is_zero(self):
        return not self.entries

    def translate(self, t):
        ctx = self.ctx
        return FiniteConfig(ctx, self.alphabet,
                            {ctx.mul(t, g): s for g, s in self.entries.items()})

    def canonical_key(self):
        return tuple(sorted((str(self.ctx.encode(g)), s)
                            for g, s in self.entries.items()))

    def __eq__(self, other):
        return (isinstance(other, FiniteConfig) and self.entries == other.entries
                and self.alphabet == other.alphabet)

    def __hash__(self):
        return hash(frozenset(self.entries.items()))

    def __repr__(self):
        return f"FiniteConfig({self.entries!r})"


class LatticePeriodicConfig(Configuration):
    """Configuration fixed by every vector of a full-rank sublattice."""

    def __init__(self, quotient: QuotientCtx, alphabet, cell):
        if quotient.index is None:
            raise ShiftError("lattice-periodic configurations need a full-rank sublattice")
        super().__init__(quotient.base, alphabet)
        self.quotient = quotient
        reps = quotient.representatives()
        if set(cell) != reps:
            missing = reps - set(cell)
            extra = set(cell) - reps
            if extra:
                raise ShiftError(f"cell keys are not canonical representatives: {extra}")
            cell = dict(cell)
            for rep in missing:
                cell[rep] = alphabet.zero
        self.cell = dict(cell)

    def value(self, g):
        return self.cell[self.quotient.project(g)]

    def support(self):
        """Nonzero coset representatives."""
        return {rep for rep, s in self.cell.items() if s != self.alphabet.zero}

    def is_zero(self):
        return all(s == self.alphabet.zero for s in self.cell.values())

    def translate(self, t):
        q = self.quotient
        ti = q.base.inv(t)
        new_cell = {rep: self.cell[q.project(q.base.mul(ti, rep))]
                    for rep in self.cell}
        return LatticePeriodicConfig(q, self.alphabet, new_cell)

    def __eq__(self, other):
        return (isinstance(other, LatticePeriodicConfig)
                and self.quotient.descriptor() == other.quotient.descriptor()
                and self.cell == other.cell)

    def __hash__(self):
        return hash(frozenset(self.cell.items()))


class StripPeriodicConfig(Configuration):
    """Z^2 configuration periodic along one vector, supported on finitely
    many cells of the fundamental strip."""

    def __init__(self, ctx: Zd, alphabet, period, entries):
        if not isinstance(ctx, Zd) or ctx.d != 2:
            raise ShiftError("strip-periodic configurations live on Z^2")
        super().__init__(ctx, alphabet)
        period = tuple(int(c) for c in period)
        if period == (0, 0):
            raise ShiftError("period vector must be nonzero")
        # normalize to an axis-aligned period; general vectors are reduced
        # to their vertical/horizontal span when axis aligned
        self.period = period
        clean = {}
        for g, s in entries.items():
            if s != alphabet.zero:
                clean[self._reduce(g)] = s
        self.entries = clean

    def _reduce(self, g):
        x, y = g
        px, py = self.period
        if px == 0:
            return (x, y % py) if py else (x, y)
        if py == 0:
            return (x % px, y)
        k = y // py
        return (x - k * px, y - k * py)

    def value(self, g):
        return self.entries.get(self._reduce(g), self.alphabet.zero)

    def support(self):
        """Support representatives inside the fundamental strip."""
        return set(self.entries)

    def is_zero(self):
        return not self.entries

    def translate(self, t):
        ctx = self.ctx
        return StripPeriodicConfig(ctx, self.alphabet, self.period,
                                   {ctx.mul(t, g): s for g, s in self.entries.items()})

    def __eq__(self, other):
        return (isinstance(other, StripPeriodicConfig) and self.period == other.period
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.period, frozenset(self.entries.items())))


def zero_config(ctx, alphabet):
    return FiniteConfig(ctx, alphabet, {})


def support(x: Configuration):
    """The nonzero coordinates (coset representatives when periodic)."""
    return x.support()


def shadow(x: Configuration):
    """The set of group elements moving x visibly off the zero point.

    Under the package metric convention this is exactly the support; the
    equality is asserted by tests rather than assumed silently elsewhere.
    """
    return x.support()


def k_shadow(x: Configuration, quotient: QuotientCtx):
    """Image of the shadow under the projection to the quotient group.

    For periodic configurations the period vectors must project to the
    identity (the shadow is computed from fundamental-domain
    representatives, which is only the full image in that case).
    """
    ident = quotient.identity()
    if isinstance(x, StripPeriodicConfig):
        if quotient.project(x.period) != ident:
            raise ShiftError("period vector does not vanish in the quotient")
    elif isinstance(x, LatticePeriodicConfig):
        for row in x.quotient.basis:
            if quotient.project(tuple(row)) != ident:
                raise ShiftError("period lattice does not vanish in the quotient")
    return {quotient.project(g) for g in x.support()}


VALID = "Valid"
INVALID = "Invalid"
UNKNOWN = "UnknownAtRadius"


class Subshift:
    """Base class; a subshift knows its alphabet and how to test patterns."""

    exactness = "exact"
    contains_zero_point = True

    def __init__(self, ctx, alphabet):
        self.ctx = ctx
        self.alphabet = alphabet

    def pattern_valid(self, pattern: Pattern, search_radius=2):
        raise NotImplementedError

    def config_valid(self, x: Configuration, search_radius=2):
        """Validity of a finitely described configuration.

        Finite-support configurations are checked as the pattern on their
        support plus a window-sized zero collar; periodic ones on a
        fundamental domain with wraparound.
        """
        raise NotImplementedError


class FullShift(Subshift):
    exactness = "exact"

    def pattern_valid(self, pattern, search_radius=2):
        return VALID

    def config_valid(self, x, search_radius=2):
        return VALID

    def descriptor(self):
        return {"kind": "full"}


class SFT1D(Subshift):
    """One-dimensional SFT given by finitely many forbidden words.

    Validity is exact via the transfer (de Bruijn) graph on words of
    length m-1, trimmed to its bi-infinitely extendable part.
    """

    exactness = "exact"

    def __init__(self, alphabet, forbidden_words):
        super().__init__(Zd(1), alphabet)
        self.forbidden = tuple(sorted(set(tuple(w) for w in forbidden_words)))
        for w in self.forbidden:
            for s in w:
                if s not in alphabet.symbols:
                    raise ShiftError(f"forbidden word uses foreign symbol {s!r}")
        self.window = max((len(w) for w in self.forbidden), default=1)
        self._build_graph()
        zero_word = (alphabet.zero,) * max(self.window, 1)
        self.contains_zero_point = self.word_valid(zero_word)

    def _admissible(self, word):
        for w in self.forbidden:
            n = len(w)
            for i in range(len(word) - n + 1):
                if tuple(word[i:i + n]) == w:
                    return False
        return True

    def _build_graph(self):
        m = self.window
        syms = self.alphabet.symbols
        if m == 1:
            states = {()} if not self.forbidden else set()
            # forbidden words of length 1 remove symbols
            bad = {w[0] for w in self.forbidden if len(w) == 1}
            self.states = {()}
            self.trans = {((), s): () for s in syms if s not in bad}
            return
        states = {w for w in itertools.product(syms, repeat=m - 1)
                  if self._admissible(w)}
        trans = {}
        for u in states:
            for s in syms:
                w = u + (s,)
                if self._admissible(w):
                    v = w[1:]
                    if v in states:
                        trans[(u, s)] = v
        # trim to essential states (on bi-infinite paths)
        while True:
            has_out = {u for (u, _) in trans}
            has_in = set(trans.values())
            keep = {u for u in states if u in has_out and u in has_in}
            if keep == states:
                break
            states = keep
            trans = {(u, s): v for (u, s), v in trans.items()
                     if u in states and v in states}
        self.states = states
        self.trans = trans

    def word_valid(self, word):
        """Does the word occur in some bi-infinite point of the shift?"""
        word = tuple(word)
        m = self.window
        if not self.states:
            return False
        if m == 1:
            return all(((), s) in self.trans for s in word)
        if len(word) < m - 1:
            return any(any(u[i:i + len(word)] == word
                           for i in range(m - len(word)))
                       for u in self.states)
        u = word[: m - 1]
        if u not in self.states:
            return False
        for s in word[m - 1:]:
            nxt = self.trans.get((u, s))
            if nxt is None:
                return False
            u = nxt
        return True

    def pattern_valid(self, pattern, search_radius=2):
        cells = pattern.as_dict()
        if not cells:
            return VALID
        lo = min(g[0] for g in cells)
        hi = max(g[0] for g in cells)
        # free cells inside the span: try all fillings (span is small at
        # desk scale; gaps usually absent)
        span = range(lo, hi + 1)
        free = [i for i in span if (i,) not in cells]
        for fill in itertools.product(self.alphabet.symbols, repeat=len(free)):
            word = []
            fi = dict(zip(free, fill))
            for i in span:
                word.append(cells.get((i,), fi.get(i)))
            if self.word_valid(tuple(word)):
                return VALID
        return INVALID

    def config_valid(self, x, search_radius=2):
        if isinstance(x, FiniteConfig):
            if x.is_zero():
                return VALID if self.contains_zero_point else INVALID
            lo = min(g[0] for g in x.support()) - self.window
            hi = max(g[0] for g in x.support()) + self.window
            word = tuple(x.value((i,)) for i in range(lo, hi + 1))
            ok = self.word_valid(word) and self.contains_zero_point
            return VALID if ok else INVALID
        if isinstance(x, LatticePeriodicConfig):
            p = x.quotient.diag[0] if x.quotient.diag else None
            if not p:
                raise ShiftError("degenerate quotient")
            return VALID if self._periodic_valid(p, x) else INVALID
        raise ShiftError(f"unsupported configuration type {type(x).__name__}")

    def _periodic_valid(self, p, x):
        m = self.window
        word = tuple(x.value((i,)) for i in range(p + max(m - 1, 0)))
        if not self._admissible(word):
            return False
        if m == 1:
            return all(((), s) in self.trans for s in word)
        u = word[: m - 1]
        if u not in self.states:
            return False
        for i in range(m - 1, len(word)):
            u = self.trans.get((u, word[i]))
            if u is None:
                return False
        return True

    def descriptor(self):
        return {"kind": "sft1d", "forbidden": ["".join(w) for w in self.forbidden]}


class SFT2D(Subshift):
    """Two-dimensional SFT from finitely many forbidden patterns.

    `pattern_valid` extends the pattern to its search_radius collar by
    backtracking; failure is a sound Invalid, success is Valid at the
    stated radius.  An optional exact validity oracle (for shifts whose
    global structure is decidable) upgrades answers to exact.
    """

    def __init__(self, alphabet, forbidden_patterns, exact_oracle=None,
                 contains_zero_point=None):
        super().__init__(Zd(2), alphabet)
        self.forbidden = [p if isinstance(p, Pattern) else Pattern.from_dict(p)
                          for p in forbidden_patterns]
        self.exact_oracle = exact_oracle
        self.exactness = "exact" if exact_oracle else "window-sound"
        spans = [0]
        for p in self.forbidden:
            for (a, b) in p.domain():
                spans.append(max(abs(a), abs(b)))
        self.window = max(spans) + 1
        if contains_zero_point is None:
            zero = {g: alphabet.zero for g in itertools.product(range(-2, 3), repeat=2)}
            contains_zero_point = self._admissible_region(zero)
        self.contains_zero_point = contains_zero_point

    def _admissible_region(self, cells):
        """No forbidden pattern occurs fully inside the assigned cells."""
        return not any(self._violates_at(cells, c) for c in cells)

    def _violates_at(self, cells, cell):
        """Check only forbidden placements covering `cell` (incremental)."""
        for p in self.forbidden:
            dom = p.domain()
            pd = p.as_dict()
            for d0 in dom:
                g = (cell[0] - d0[0], cell[1] - d0[1])
                ok = True
                complete = True
                for d in dom:
                    c = (g[0] + d[0], g[1] + d[1])
                    v = cells.get(c)
                    if v is None:
                        complete = False
                        break
                    if v != pd[d]:
                        ok = False
                        break
                if complete and ok:
                    return True
        return False

    def _feasible_symbols(self, cells, cell, syms):
        out = []
        for s in syms:
            cells[cell] = s
            if not self._violates_at(cells, cell):
                out.append(s)
            del cells[cell]
        return out

    def complete_pattern(self, fixed, free_cells, prefer_zero=True,
                         node_budget=10 ** 6):
        """Fill free_cells so that fixed+fill is locally admissible.

        Unit propagation first (cells with a single locally consistent
        symbol are forced, empty choice sets fail early), then
        deterministic backtracking in row-major cell order with alphabet
        value order (zero first when prefer_zero).  Returns the filled
        dict or None.
        """
        cells = dict(fixed)
        if not self.forbidden:
            for c in free_cells:
                cells.setdefault(c, self.alphabet.zero)
            return cells
        syms = list(self.alphabet.symbols)
        if prefer_zero:
            syms = [self.alphabet.zero] + [s for s in syms if s != self.alphabet.zero]
        if not self._admissible_region(cells):
            return None

        pending = sorted((c for c in free_cells if c not in cells),
                         key=lambda g: (g[1], g[0]))
        changed = True
        while changed:
            changed = False
            still = []
            for c in pending:
                feasible = self._feasible_symbols(cells, c, syms)
                if not feasible:
                    return None
                if len(feasible) == 1:
                    cells[c] = feasible[0]
                    changed = True
                else:
                    still.append(c)
            pending = still

        nodes = 0

        def backtrack(i):
            nonlocal nodes
            if i == len(pending):
                return True
            nodes += 1
            if nodes > node_budget:
                raise BudgetExceeded("2D fill search budget exhausted")
            cell = pending[i]
            for s in syms:
                cells[cell] = s
                if not self._violates_at(cells, cell):
                    if backtrack(i + 1):
                        return True
                del cells[cell]
            return False

        return dict(cells) if backtrack(0) else None

    def pattern_valid(self, pattern, search_radius=2):
        if self.exact_oracle is not None:
            return VALID if self.exact_oracle(pattern) else INVALID
        cells = pattern.as_dict()
        if not cells:
            return VALID
        collar = set()
        for (a, b) in cells:
            for da in range(-search_radius, search_radius + 1):
                for db in range(-search_radius, search_radius + 1):
                    collar.add((a + da, b + db))
        free = [c for c in collar if c not in cells]
        filled = self.complete_pattern(cells, free)
        if filled is None:
            return INVALID
        return VALID

    def config_valid(self, x, search_radius=2):
        if isinstance(x, FiniteConfig):
            if x.is_zero():
                return VALID if self.contains_zero_point else INVALID
            w = self.window
            cells = {}
            for (a, b) in x.support():
                for da in range(-w, w + 1):
                    for db in range(-w, w + 1):
                        c = (a + da, b + db)
                        cells[c] = x.value(c)
            if self.exact_oracle is not None:
                return VALID if self.exact_oracle(Pattern.from_dict(cells)) else INVALID
            ok = self._admissible_region(cells) and self.contains_zero_point
            return VALID if ok else INVALID
        if isinstance(x, StripPeriodicConfig):
            return VALID if self.strip_torus_valid(x) else INVALID
        raise ShiftError(f"unsupported configuration type {type(x).__name__}")

    def strip_torus_valid(self, x: StripPeriodicConfig):
        """Window check of a vertically periodic strip on its torus."""
        px, py = x.period
        if px != 0 or py <= 0:
            raise ShiftError("torus check expects a vertical period (0, p)")
        if not x.entries:
            return self.contains_zero_point
        w = self.window
        lo = min(g[0] for g in x.entries) - w
        hi = max(g[0] for g in x.entries) + w
        cells = {}
        for a in range(lo, hi + 1):
            for b in range(0, py + w):
                cells[(a, b)] = x.value((a, b))
        return self._admissible_region(cells)

    def descriptor(self):
        return {"kind": "sft2d",
                "forbidden": [[[list(g), s] for g, s in p.cells] for p in self.forbidden]}


class PredicateShift(Subshift):
    """Subshift given by a validity oracle on patterns.

    `grade` records what the oracle promises: "exact" when it decides
    true validity, "window-sound" when Invalid answers are reliable but
    Valid ones are search-radius qualified.
    """

    def __init__(self, ctx, alphabet, oracle, grade="window-sound", name=None,
                 contains_zero_point=True):
        super().__init__(ctx, alphabet)
        self.oracle = oracle
        self.exactness = grade
        self.name = name
        self.contains_zero_point = contains_zero_point

    def pattern_valid(self, pattern, search_radius=2):
        return VALID if self.oracle(pattern) else INVALID

    def config_valid(self, x, search_radius=2):
        if isinstance(x, FiniteConfig):
            if x.is_zero():
                return VALID if self.contains_zero_point else INVALID
            cells = {}
            supp = x.support()
            pad = 4  # runs touching the padded ends stay unconstrained
            if isinstance(self.ctx, Zd) and self.ctx.d == 1:
                lo = min(g[0] for g in supp) - pad
                hi = max(g[0] for g in supp) + pad
                for i in range(lo, hi + 1):
                    cells[(i,)] = x.value((i,))
            elif isinstance(self.ctx, Zd) and self.ctx.d == 2:
                xs = [g[0] for g in supp]
                ys = [g[1] for g in supp]
                w = 3
                for a in range(min(xs) - w, max(xs) + w + 1):
                    for b in range(min(ys) - w, max(ys) + w + 1):
                        cells[(a, b)] = x.value((a, b))
            else:
                raise ShiftError("predicate shifts support Z and Z^2 only")
            return self.pattern_valid(Pattern.from_dict(cells), search_radius)
        if isinstance(x, StripPeriodicConfig):
            return VALID if self.strip_torus_valid(x) else INVALID
        raise ShiftError(f"unsupported configuration type {type(x).__name__}")

    def strip_torus_valid(self, x: StripPeriodicConfig):
        """Oracle check of a vertically periodic strip over two periods,
        reading values through the wraparound."""
        px, py = x.period
        if px != 0 or py <= 0:
            raise ShiftError("torus check expects a vertical period (0, p)")
        w = 4
        supp = x.entries
        if not supp:
            return self.contains_zero_point
        lo = min(g[0] for g in supp) - w
        hi = max(g[0] for g in supp) + w
        cells = {}
        for a in range(lo, hi + 1):
            for b in range(-w, 2 * py + w):
                cells[(a, b)] = x.value((a, b))
        return self.pattern_valid(Pattern.from_dict(cells)) == VALID

    def descriptor(self):
        return {"kind": "predicate", "name": self.name}


def pattern_valid(X: Subshift, pattern: Pattern, search_radius=2):
    return X.pattern_valid(pattern, search_radius)


def enumerate_valid_patterns(X: Subshift, domain, search_radius=2, budget=2 ** 20):
    """All valid patterns on `domain`, in deterministic order.

    Order: cells sorted by (word norm, encoding); assignments enumerated
    in alphabet order per cell.
    """
    cells = sorted(domain, key=lambda g: (X.ctx.norm(g), str(X.ctx.encode(g))))
    total = len(X.alphabet) ** len(cells)
    if total > budget:
        raise BudgetExceeded(f"{total} assignments exceed budget {budget}")
    out = []
    for values in itertools.product(X.alphabet.symbols, repeat=len(cells)):
        p = Pattern.from_dict(dict(zip(cells, values)),
                              sort_key=lambda g: (X.ctx.norm(g), str(X.ctx.encode(g))))
        if X.pattern_valid(p, search_radius) == VALID:
            out.append(p)
    return out
