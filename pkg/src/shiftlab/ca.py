"""Cellular automata as finite local rules.

A rule carries an ordered neighborhood and a lookup table over symbol
tuples.  Closed-form evaluators are supported through the table: at
construction a formula is tabulated and (for table sizes up to the
check budget) verified total, so downstream code only ever sees tables.
Rules must be quiescent -- the all-zero neighborhood maps to zero -- so
the zero configuration is a fixed point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .groups import GroupCtx, QuotientCtx, Zd
from .shifts import (Alphabet, Configuration, FiniteConfig,
                     LatticePeriodicConfig, StripPeriodicConfig)


class RuleError(ValueError):
    pass


COMPOSE_NEIGHBORHOOD_BUDGET = 16
TABLE_CHECK_BUDGET = 10 ** 6


class LocalRule:
    def __init__(self, ctx: GroupCtx, alphabet: Alphabet, neighborhood, table,
                 name=None):
        self.ctx = ctx
        self.alphabet = alphabet
        self.neighborhood = tuple(neighborhood)
        if len(set(self.neighborhood)) != len(self.neighborhood):
            raise RuleError("neighborhood elements must be distinct")
        if callable(table):
            size = len(alphabet) ** len(self.neighborhood)
            if size > TABLE_CHECK_BUDGET:
                raise RuleError(
                    f"formula tabulation over {size} inputs exceeds the check budget")
            table = {word: table(word)
                     for word in itertools.product(alphabet.symbols,
                                                   repeat=len(self.neighborhood))}
        self.table = dict(table)
        self.name = name
        self._check_table()

    def _check_table(self):
        zero_word = (self.alphabet.zero,) * len(self.neighborhood)
        size = len(self.alphabet) ** len(self.neighborhood)
        if len(self.table) != size:
            raise RuleError(f"table has {len(self.table)} entries, expected {size}")
        for word, sym in self.table.items():
            if len(word) != len(self.neighborhood):
                raise RuleError(f"table key {word!r} has wrong arity")
            if sym not in self.alphabet.symbols:
                raise RuleError(f"table value {sym!r} not in alphabet")
        if self.table[zero_word] != self.alphabet.zero:
            raise RuleError("rule is not quiescent: table(0,...,0) != 0")

    def local(self, word):
        return self.table[tuple(word)]

    def _dependent_coordinates(self):
        """Neighborhood positions the table actually reads."""
        deps = []
        syms = self.alphabet.symbols
        for i in range(len(self.neighborhood)):
            for word in self.table:
                base = self.table[word]
                for s in syms:
                    if s == word[i]:
                        continue
                    flipped = word[:i] + (s,) + word[i + 1:]
                    if self.table[flipped] != base:
                        break
                else:
                    continue
                deps.append(i)
                break
        return deps

    def canonical_table(self):
        """Table restricted to dependent cells, sorted canonically; two
        rules computing the same function compare equal."""
        deps = self._dependent_coordinates()
        order = sorted(deps, key=lambda i: (self.ctx.norm(self.neighborhood[i]),
                                            str(self.ctx.encode(self.neighborhood[i]))))
        nb = tuple(self.neighborhood[i] for i in order)
        zero_word = (self.alphabet.zero,) * len(self.neighborhood)
        table = {}
        for word in itertools.product(self.alphabet.symbols, repeat=len(order)):
            full = list(zero_word)
            for pos, s in zip(order, word):
                full[pos] = s
            table[word] = self.table[tuple(full)]
        return nb, table

    def __eq__(self, other):
        if not isinstance(other, LocalRule):
            return NotImplemented
        return self.canonical_table() == other.canonical_table()

    def __repr__(self):
        return f"LocalRule({self.name or len(self.neighborhood)} cells)"


def apply_rule(f: LocalRule, x: Configuration) -> Configuration:
    """One step of the automaton: f(x)_g = F((g^-1 . x)|_N) = F(x_{g n})."""
    if x.alphabet != f.alphabet:
        raise RuleError("configuration alphabet does not match the rule")
    ctx = f.ctx
    N = f.neighborhood

    def image_value(g):
        return f.local(tuple(x.value(ctx.mul(g, n)) for n in N))

    if isinstance(x, FiniteConfig):
        candidates = set()
        for s in x.support():
            for n in N:
                candidates.add(ctx.mul(s, ctx.inv(n)))
        entries = {}
        for g in candidates:
            v = image_value(g)
            if v != f.alphabet.zero:
                entries[g] = v
        return FiniteConfig(ctx, f.alphabet, entries)

    if isinstance(x, LatticePeriodicConfig):
        q = x.quotient
        cell = {rep: image_value(rep) for rep in x.cell}
        return LatticePeriodicConfig(q, f.alphabet, cell)

    if isinstance(x, StripPeriodicConfig):
        candidates = set()
        for s in x.entries:
            for n in N:
                candidates.add(ctx.mul(s, ctx.inv(n)))
        entries = {}
        for g in candidates:
            v = image_value(g)
            if v != f.alphabet.zero:
                entries[g] = v
        return StripPeriodicConfig(ctx, f.alphabet, x.period, entries)

    raise RuleError(f"unsupported configuration type {type(x).__name__}")


def iterate_rule(f: LocalRule, x: Configuration, steps: int):
    for _ in range(steps):
        x = apply_rule(f, x)
    return x


def compose(f: LocalRule, g: LocalRule) -> LocalRule:
    """The rule computing f(g(x)).

    The composed neighborhood is the product set N_f N_g; its table is
    evaluated pointwise.  Errors out when the neighborhood outgrows the
    compose budget, since table size is exponential in it.
    """
    if f.alphabet != g.alphabet or f.ctx.descriptor() != g.ctx.descriptor():
        raise RuleError("composing rules over different alphabets or groups")
    ctx = f.ctx
    elems = []
    for n in f.neighborhood:
        for m in g.neighborhood:
            e = ctx.mul(n, m)
            if e not in elems:
                elems.append(e)
    if len(elems) > COMPOSE_NEIGHBORHOOD_BUDGET:
        raise RuleError(
            f"composed neighborhood has {len(elems)} cells, over the budget "
            f"of {COMPOSE_NEIGHBORHOOD_BUDGET}")
    elems.sort(key=lambda e: (ctx.norm(e), str(ctx.encode(e))))
    index = {e: i for i, e in enumerate(elems)}

    table = {}
    for word in itertools.product(f.alphabet.symbols, repeat=len(elems)):
        inner = []
        for n in f.neighborhood:
            inner_word = tuple(word[index[ctx.mul(n, m)]] for m in g.neighborhood)
            inner.append(g.local(inner_word))
        table[word] = f.local(tuple(inner))
    return LocalRule(ctx, f.alphabet, elems, table,
                     name=f"({f.name or 'f'}.{g.name or 'g'})")


@dataclass(frozen=True)
class SymbolPermutation:
    """A symmetry relabeling symbols cellwise; must fix the zero symbol."""

    mapping: tuple  # sorted tuple of (symbol, symbol) pairs

    @staticmethod
    def from_dict(mapping):
        return SymbolPermutation(tuple(sorted(mapping.items())))

    def as_dict(self):
        return dict(self.mapping)

    def apply_symbol(self, s):
        return dict(self.mapping).get(s, s)

    def apply_config(self, x: Configuration):
        m = self.as_dict()
        if isinstance(x, FiniteConfig):
            return FiniteConfig(x.ctx, x.alphabet,
                                {g: m.get(s, s) for g, s in x.entries.items()})
        if isinstance(x, StripPeriodicConfig):
            return StripPeriodicConfig(x.ctx, x.alphabet, x.period,
                                       {g: m.get(s, s) for g, s in x.entries.items()})
        if isinstance(x, LatticePeriodicConfig):
            return LatticePeriodicConfig(x.quotient, x.alphabet,
                                         {g: m.get(s, s) for g, s in x.cell.items()})
        raise RuleError("unsupported configuration type")


COMMUTES = "Commutes"


def equivariance_check(f: LocalRule, sym: SymbolPermutation, subshift=None,
                       search_radius=2):
    """Does f commute with the symbol symmetry?

    Exhaustive over all neighborhood windows (restricted to windows valid
    for `subshift` when given).  Returns COMMUTES or a minimal witness
    pattern in deterministic order.
    """
    perm = sym.as_dict()
    zero = f.alphabet.zero
    if perm.get(zero, zero) != zero:
        raise RuleError("symmetries must fix the zero symbol")
    ctx = f.ctx
    N = f.neighborhood
    from .shifts import Pattern, VALID
    for word in sorted(itertools.product(f.alphabet.symbols, repeat=len(N)),
                       key=lambda w: tuple(f.alphabet.index(s) for s in w)):
        pat = Pattern.from_dict(dict(zip(N, word)))
        if subshift is not None:
            if subshift.pattern_valid(pat, search_radius) != VALID:
                continue
        swapped = tuple(perm.get(s, s) for s in word)
        lhs = f.local(swapped)                        # f(h(x)) at the cell
        rhs = perm.get(f.local(word), f.local(word))  # h(f(x)) at the cell
        if lhs != rhs:
            return pat
    return COMMUTES


def induced_periodic_rule(f: LocalRule, q: QuotientCtx) -> LocalRule:
    """The rule induced on configurations fixed by the sublattice of q.

    Neighborhood cells falling into the same coset are merged; the table
    is re-evaluated through the merged assignment, which is consistent
    for every translation-invariant rule by construction.
    """
    if not isinstance(f.ctx, Zd):
        raise RuleError("induced rules are implemented for Z^d bases")
    merged = []
    for n in f.neighborhood:
        p = q.project(n)
        if p not in merged:
            merged.append(p)
    merged_index = {p: i for i, p in enumerate(merged)}

    table = {}
    for word in itertools.product(f.alphabet.symbols, repeat=len(merged)):
        full = tuple(word[merged_index[q.project(n)]] for n in f.neighborhood)
        table[word] = f.local(full)
    return LocalRule(q, f.alphabet, merged, table,
                     name=f"{f.name or 'rule'}@quotient")


@dataclass
class OrbitTrace:
    base: Configuration
    cell: object
    horizon: int
    symbols: tuple

    def __post_init__(self):
        if len(self.symbols) != self.horizon + 1:
            raise RuleError("trace length must be horizon + 1")


def orbit_trace(f: LocalRule, x: Configuration, g, horizon: int) -> OrbitTrace:
    """The symbol sequence (f^m(x)_g) for m = 0..horizon."""
    seq = []
    y = x
    for m in range(horizon + 1):
        seq.append(y.value(g))
        if m < horizon:
            y = apply_rule(f, y)
    return OrbitTrace(x, g, horizon, tuple(seq))


# ---------------------------------------------------------------------------
# named rule formulas; these are the registered closed-form evaluators
# accepted in rule files

def _min_rule(ctx=None):
    alph = Alphabet(("0", "1"))
    return LocalRule(Zd(1), alph, [(0,), (1,)],
                     lambda w: str(min(int(w[0]), int(w[1]))), name="min")


def _zero_rule(alphabet=None):
    alph = alphabet or Alphabet(("0", "1"))
    return LocalRule(Zd(1), alph, [(0,)], lambda w: alph.zero, name="zero")


def _identity_rule(alphabet=None):
    alph = alphabet or Alphabet(("0", "1"))
    return LocalRule(Zd(1), alph, [(0,)], lambda w: w[0], name="identity")


def _shift_right_rule(alphabet=None):
    # support moves right: f(x)_i = x_{i-1}
    alph = alphabet or Alphabet(("0", "1"))
    return LocalRule(Zd(1), alph, [(-1,)], lambda w: w[0], name="shift_right")


def _shift_left_rule(alphabet=None):
    alph = alphabet or Alphabet(("0", "1"))
    return LocalRule(Zd(1), alph, [(1,)], lambda w: w[0], name="shift_left")


def _and_rule(alphabet=None):
    alph = alphabet or Alphabet(("0", "1"))
    return LocalRule(Zd(1), alph, [(0,), (1,)],
                     lambda w: "1" if w[0] == w[1] == "1" else "0", name="and")


def _spaceship_rule():
    """Ternary rule: 1s drift right, 2s drift left, meeting pairs vanish.

    f(x)_i = 1 iff x_{i-1} = 1 and no 2 sits at i or i+1 (those pairs
    collide or cross and are erased); symmetrically for 2s.
    """
    alph = Alphabet(("0", "1", "2"))

    def local(w):
        left, here, right = w
        if left == "1" and here != "2" and right != "2":
            return "1"
        if right == "2" and here != "1" and left != "1":
            return "2"
        return "0"

    return LocalRule(Zd(1), alph, [(-1,), (0,), (1,)], local, name="spaceship")


RULE_FORMULAS = {
    "min": lambda params: _min_rule(),
    "zero": lambda params: _zero_rule(Alphabet(tuple(params.get("alphabet", ("0", "1"))))),
    "identity": lambda params: _identity_rule(Alphabet(tuple(params.get("alphabet", ("0", "1"))))),
    "shift_right": lambda params: _shift_right_rule(Alphabet(tuple(params.get("alphabet", ("0", "1"))))),
    "shift_left": lambda params: _shift_left_rule(Alphabet(tuple(params.get("alphabet", ("0", "1"))))),
    "and": lambda params: _and_rule(),
    "spaceship": lambda params: _spaceship_rule(),
}


def rule_from_formula(name, params=None):
    if name not in RULE_FORMULAS:
        raise RuleError(f"unknown rule formula {name!r}")
    return RULE_FORMULAS[name](params or {})
