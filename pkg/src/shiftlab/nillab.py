"""Nilpotency analyses: mortality, bounded nilpotency, uniform-mortality
profiles, spaceship search, space-time paths and finite-system checks.

Search verdicts always carry machine-checkable witnesses, and every
witness is re-verified through the plain rule application path before
being returned; nothing is trusted directly from search state.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .ca import LocalRule, apply_rule, induced_periodic_rule
from .groups import QuotientCtx, Zd
from .shifts import (BudgetExceeded, Configuration, FiniteConfig, FullShift,
                     Subshift, VALID)


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class Mortal:
    steps: int


@dataclass(frozen=True)
class Alive:
    horizon: int


@dataclass(frozen=True)
class Nilpotent:
    steps: int
    scope: str


@dataclass(frozen=True)
class NotNilpotent:
    witness: object


@dataclass(frozen=True)
class Unknown:
    horizon: int


@dataclass(frozen=True)
class SpaceshipCertificate:
    """A nonzero finite-support point x with f^n(x) = g . x."""

    config: FiniteConfig
    period: int
    translation: tuple

    def verify(self, f: LocalRule) -> bool:
        if self.config.is_zero() or self.period < 1:
            return False
        y = self.config
        for _ in range(self.period):
            y = apply_rule(f, y)
        return y == self.config.translate(self.translation)


@dataclass(frozen=True)
class NonzeroRecurrent:
    """A nonzero point revisited without translation: f^period(x) = x."""

    config: Configuration
    period: int


@dataclass(frozen=True)
class FixedNonzero:
    config: Configuration


def classify_witness(cert: SpaceshipCertificate, ctx):
    """Sort a recurrence certificate into the verdict taxonomy."""
    if cert.translation == ctx.identity():
        if cert.period == 1:
            return FixedNonzero(cert.config)
        return NonzeroRecurrent(cert.config, cert.period)
    return cert


@dataclass
class MortalityProfile:
    """Per-support-radius worst mortality time.

    entries: radius -> (max mortality steps over mortal seeds,
                        exhaustive flag, number of Alive(T) seeds).
    """

    horizon: int
    entries: dict = field(default_factory=dict)

    def max_times(self):
        return {r: v[0] for r, v in self.entries.items()}

    def is_monotone(self):
        times = [v[0] for _, v in sorted(self.entries.items()) if v[1]]
        return all(a <= b for a, b in zip(times, times[1:]))


# ---------------------------------------------------------------------------
# plain mortality


def mortality(f: LocalRule, x: Configuration, horizon: int):
    """Least n <= horizon with f^n(x) = 0, else Alive(horizon)."""
    y = x
    for n in range(horizon + 1):
        if y.is_zero():
            return Mortal(n)
        if n < horizon:
            y = apply_rule(f, y)
    return Alive(horizon)


def trace_zero_density(f: LocalRule, x: Configuration, g, horizon: int):
    """Fraction of steps 0 <= k < horizon with f^k(x)_g = 0."""
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    zeros = 0
    y = x
    for k in range(horizon):
        if y.value(g) == f.alphabet.zero:
            zeros += 1
        if k + 1 < horizon:
            y = apply_rule(f, y)
    return Fraction(zeros, horizon)


# ---------------------------------------------------------------------------
# batched one-dimensional simulation


def _rule_offsets_1d(f: LocalRule):
    if not (isinstance(f.ctx, Zd) and f.ctx.d == 1):
        raise ValueError("one-dimensional rule expected")
    return [n[0] for n in f.neighborhood]


def _rule_table_array(f: LocalRule):
    syms = f.alphabet.symbols
    k = len(syms)
    arity = len(f.neighborhood)
    table = np.zeros(k ** arity, dtype=np.uint8)
    for word, out in f.table.items():
        code = 0
        for s in word:
            code = code * k + syms.index(s)
        table[code] = syms.index(out)
    return table


class BatchStepper:
    """Vectorized one-dimensional rule application on row batches.

    Table codes fit uint16 for every rule this package tabulates, so the
    inner loop is a handful of in-place passes over the batch plus one
    gather; cells whose neighborhood pokes outside a row are treated as
    bordered by zeros (sound for finite-support rows with padding).
    """

    def __init__(self, f: LocalRule):
        self.offsets = _rule_offsets_1d(f)
        self.k = len(f.alphabet)
        self.table = _rule_table_array(f)
        if self.k ** len(self.offsets) > np.iinfo(np.uint16).max + 1:
            raise ValueError("rule table too wide for the batch engine")

    def step(self, rows: np.ndarray) -> np.ndarray:
        offsets = self.offsets
        k = self.k
        batch, width = rows.shape
        padl = max(0, -min(offsets))
        padr = max(0, max(offsets))
        padded = np.zeros((batch, width + padl + padr), dtype=np.uint8)
        padded[:, padl:padl + width] = rows
        code = np.zeros((batch, width), dtype=np.uint16)
        for off in offsets:
            code *= k
            code += padded[:, padl + off: padl + off + width]
        return self.table[code]


def step_words(f: LocalRule, rows: np.ndarray) -> np.ndarray:
    """One rule application on a batch of rows; see BatchStepper."""
    return BatchStepper(f).step(rows)


def batch_mortality(f: LocalRule, seeds: np.ndarray, horizon: int,
                    pad: int = None):
    """Mortality times for a batch of finite-support rows.

    Returns (death_steps, (alive_indices, alive_rows)): the death step
    is -1 for rows still alive at the horizon, and the survivors are
    returned in their final state.  Rows are padded so support cannot
    reach the boundary within the horizon.
    """
    stepper = BatchStepper(f)
    spread = max(abs(o) for o in stepper.offsets)
    pad = pad if pad is not None else spread * horizon
    batch, width = seeds.shape
    rows = np.zeros((batch, width + 2 * pad), dtype=np.uint8)
    rows[:, pad:pad + width] = seeds
    death = np.full(batch, -1, dtype=np.int64)
    alive_idx = np.arange(batch)
    dead_now = ~rows.any(axis=1)
    death[alive_idx[dead_now]] = 0
    alive_idx = alive_idx[~dead_now]
    work = rows[~dead_now]
    for n in range(1, horizon + 1):
        if len(alive_idx) == 0:
            break
        work = stepper.step(work)
        dead_now = ~work.any(axis=1)
        death[alive_idx[dead_now]] = n
        alive_idx = alive_idx[~dead_now]
        work = work[~dead_now]
    return death, (alive_idx, work)


def evolve_batch(f: LocalRule, seeds: np.ndarray, horizon: int,
                 pad: int = None) -> np.ndarray:
    """f^horizon of a batch of rows, with automatic zero padding."""
    stepper = BatchStepper(f)
    spread = max(abs(o) for o in stepper.offsets)
    pad = pad if pad is not None else spread * horizon
    batch, width = seeds.shape
    rows = np.zeros((batch, width + 2 * pad), dtype=np.uint8)
    rows[:, pad:pad + width] = seeds
    for _ in range(horizon):
        rows = stepper.step(rows)
    return rows, pad


# ---------------------------------------------------------------------------
# bounded nilpotency (1D, exact)


YES_ALL_ZERO = "YesAllZero"


@dataclass(frozen=True)
class BoundedNilpotencyWitness:
    word: tuple
    cell_offset: int
    steps: int


def bounded_nilpotency(f: LocalRule, steps: int, budget=2 ** 22):
    """Is the `steps`-fold iterate of the local function constantly zero?

    Exhaustive over all input words of the dependency width; the first
    word (in lexicographic symbol order) whose iterated image is nonzero
    is returned as a witness.
    """
    offsets = _rule_offsets_1d(f)
    lo, hi = min(offsets), max(offsets)
    width = steps * (hi - lo) + 1
    k = len(f.alphabet)
    total = k ** width
    if total > budget:
        raise BudgetExceeded(
            f"{total} words of width {width} exceed the budget {budget}")
    codes = np.arange(total, dtype=np.int64)
    powers = k ** np.arange(width - 1, -1, -1, dtype=np.int64)
    rows = ((codes[:, None] // powers[None, :]) % k).astype(np.uint8)
    table = _rule_table_array(f)

    cur = rows
    for _ in range(steps):
        w = cur.shape[1] - (hi - lo)
        code = np.zeros((cur.shape[0], w), dtype=np.int64)
        for off in offsets:
            code = code * k + cur[:, off - lo: off - lo + w]
        cur = table[code]
    nonzero = cur.any(axis=1)
    if not nonzero.any():
        return YES_ALL_ZERO
    idx = int(np.argmax(nonzero))
    word = tuple(f.alphabet.symbols[d] for d in rows[idx])
    cell = int(np.argmax(cur[idx] != 0))
    witness = BoundedNilpotencyWitness(word, cell, steps)
    _verify_bounded_witness(f, witness, lo)
    return witness


def _verify_bounded_witness(f, witness, lo):
    """Replay the witness through the plain configuration path."""
    x = FiniteConfig(f.ctx, f.alphabet,
                     {(i,): s for i, s in enumerate(witness.word)})
    y = x
    for _ in range(witness.steps):
        y = apply_rule(f, y)
    target = (witness.cell_offset - lo * witness.steps,)
    if y.value(target) == f.alphabet.zero:
        raise AssertionError("bounded-nilpotency witness failed re-verification")


# ---------------------------------------------------------------------------
# uniform mortality profiles


def uniform_mortality_profile(f: LocalRule, X: Subshift, r_max: int,
                              horizon: int, seed_enumerator=None,
                              budget=2 ** 21) -> MortalityProfile:
    """Worst mortality time per support radius, exhaustively.

    seed_enumerator(r) may supply the valid seeds with support inside
    ball(r) directly (as rows over [-r, r]); by default they are
    enumerated from the alphabet and filtered through X.
    """
    profile = MortalityProfile(horizon)
    for r in range(0, r_max + 1):
        rows = (seed_enumerator(r) if seed_enumerator is not None
                else _valid_rows(f, X, r, budget))
        if rows.shape[0] == 0:
            profile.entries[r] = (0, True, 0)
            continue
        death, _ = batch_mortality(f, rows, horizon)
        alive = int((death < 0).sum())
        mortal = death[death >= 0]
        worst = int(mortal.max()) if mortal.size else 0
        profile.entries[r] = (worst, True, alive)
    return profile


def _valid_rows(f: LocalRule, X: Subshift, r: int, budget):
    width = 2 * r + 1
    k = len(f.alphabet)
    total = k ** width
    if total > budget:
        raise BudgetExceeded(f"{total} seeds at radius {r} exceed the budget")
    codes = np.arange(total, dtype=np.int64)
    powers = k ** np.arange(width - 1, -1, -1, dtype=np.int64)
    rows = ((codes[:, None] // powers[None, :]) % k).astype(np.uint8)
    if isinstance(X, FullShift):
        return rows
    keep = []
    for i in range(rows.shape[0]):
        cfg = FiniteConfig(f.ctx, f.alphabet,
                           {(j - r,): f.alphabet.symbols[rows[i, j]]
                            for j in range(width) if rows[i, j]})
        if X.config_valid(cfg) == VALID:
            keep.append(i)
    return rows[keep]


# ---------------------------------------------------------------------------
# spaceship search


def canonical_translate(x: FiniteConfig):
    """Translate the least support cell (norm, encoding order) to the
    identity; returns (canonical config, anchor element)."""
    if x.is_zero():
        return x, x.ctx.identity()
    anchor = min(x.support(), key=lambda g: (x.ctx.norm(g), str(x.ctx.encode(g))))
    return x.translate(x.ctx.inv(anchor)), anchor


def spaceship_search(f: LocalRule, X: Subshift, radius: int, horizon: int,
                     budget=2 ** 18):
    """First verified spaceship among valid seeds with support in
    ball(radius), in deterministic seed order; None if absent.

    Orbit points are canonicalized by translation; a repeated canonical
    form at steps m < n yields f^(n-m)(x) = g . x for x the step-m point.
    """
    seeds = _valid_seed_configs(f, X, radius, budget)
    for seed in seeds:
        seen = {}
        y = seed
        trajectory = []
        for n in range(horizon + 1):
            if y.is_zero():
                break
            canon, anchor = canonical_translate(y)
            key = canon.canonical_key()
            if key in seen:
                m, prev_anchor = seen[key]
                x0 = trajectory[m]
                g = f.ctx.mul(anchor, f.ctx.inv(prev_anchor))
                cert = SpaceshipCertificate(x0, n - m, g)
                if not cert.verify(f):
                    raise AssertionError("spaceship certificate failed re-verification")
                return cert
            seen[key] = (n, anchor)
            trajectory.append(y)
            y = apply_rule(f, y)
    return None


def _valid_seed_configs(f: LocalRule, X: Subshift, radius: int, budget):
    """Valid nonzero finite configs with support in ball(radius), one per
    translation class, in deterministic order."""
    ctx = f.ctx
    ball = sorted(ctx.ball(radius), key=lambda g: (ctx.norm(g), str(ctx.encode(g))))
    k = len(f.alphabet)
    if k ** len(ball) > budget:
        raise BudgetExceeded(f"{k ** len(ball)} seeds exceed the budget")
    out = []
    seen = set()
    for values in itertools.product(f.alphabet.symbols, repeat=len(ball)):
        entries = {g: s for g, s in zip(ball, values) if s != f.alphabet.zero}
        if not entries:
            continue
        cfg = FiniteConfig(ctx, f.alphabet, entries)
        canon, _ = canonical_translate(cfg)
        key = canon.canonical_key()
        if key in seen:
            continue
        seen.add(key)
        if not isinstance(X, FullShift) and X.config_valid(cfg) != VALID:
            continue
        out.append(cfg)
    return out


# ---------------------------------------------------------------------------
# space-time paths


@dataclass
class SpacetimePath:
    points: list          # (column, row) per nonempty row
    jump_bound: int
    halo: int
    rows_covered: int


def spacetime_path(diagram):
    """A row-indexed path through the nonzero cells of a space-time
    diagram (row 0 = time 0), or None.

    The path anchors at the leftmost nonzero cell of each row of the
    maximal nonempty prefix; nonzero cells appearing after an empty row
    mean no path covers every row, and None is returned.
    """
    rows = [tuple(int(v != 0) for v in row) for row in diagram]
    nonempty = [any(row) for row in rows]
    if not any(nonempty):
        return None
    prefix = 0
    while prefix < len(rows) and nonempty[prefix]:
        prefix += 1
    if any(nonempty[prefix:]):
        return None
    points = []
    halo = 0
    for k in range(prefix):
        cols = [i for i, v in enumerate(rows[k]) if v]
        anchor = cols[0]
        points.append((anchor, k))
        halo = max(halo, max(c - anchor for c in cols))
    jumps = [abs(points[i + 1][0] - points[i][0]) for i in range(len(points) - 1)]
    return SpacetimePath(points, max(jumps, default=0), halo, prefix)


def certificate_diagram(f: LocalRule, cert: SpaceshipCertificate, steps: int,
                        width_pad: int = 2):
    """Binary space-time diagram of a certificate's seed, for the path
    cross-check."""
    supp = cert.config.support()
    lo = min(g[0] for g in supp)
    hi = max(g[0] for g in supp)
    spread = max(abs(o) for o in _rule_offsets_1d(f))
    lo -= spread * steps + width_pad
    hi += spread * steps + width_pad
    rows = []
    y = cert.config
    for _ in range(steps + 1):
        rows.append(tuple(0 if y.value((i,)) == f.alphabet.zero else 1
                          for i in range(lo, hi + 1)))
        y = apply_rule(f, y)
    return rows


# ---------------------------------------------------------------------------
# finite quotient systems


@dataclass
class FiniteSystemReport:
    state_count: int
    weak_nilpotent: bool
    nilpotent: bool
    nilpotency_bound: object      # int or None
    holes_bound: object           # int or None
    witness_cycle_state: object   # a non-mortal state, when one exists


def finite_system_checks(f: LocalRule, q: QuotientCtx, eps_window=(),
                         budget=2 ** 20) -> FiniteSystemReport:
    """Exhaustive orbit analysis of the induced rule on a finite quotient.

    Computes weak nilpotency (every state reaches the zero state), the
    exact nilpotency bound, and the least n such that every orbit meets
    the `zero on eps_window` set within n steps (None when some orbit
    avoids it forever).  Weak and bounded nilpotency are asserted to
    agree, as they must on a finite state space.
    """
    if q.index is None:
        raise ValueError("finite system checks need a finite quotient")
    reps = sorted(q.representatives(), key=lambda g: (q.base.norm(g), str(g)))
    rep_index = {g: i for i, g in enumerate(reps)}
    k = len(f.alphabet)
    if k ** len(reps) > budget:
        raise BudgetExceeded(f"{k ** len(reps)} states exceed the budget")
    induced = induced_periodic_rule(f, q)
    nbr_idx = [[rep_index[q.project(q.base.mul(rep, n))]
                for n in induced.neighborhood] for rep in reps]

    states = list(itertools.product(range(k), repeat=len(reps)))
    syms = f.alphabet.symbols

    def step(state):
        return tuple(
            syms.index(induced.local(tuple(syms[state[j]] for j in nbr)))
            for nbr in nbr_idx)

    succ = {s: step(s) for s in states}
    zero_state = (0,) * len(reps)

    steps_to_zero = {zero_state: 0}
    for s in states:
        path = []
        cur = s
        while cur not in steps_to_zero and cur not in path:
            path.append(cur)
            cur = succ[cur]
        base = steps_to_zero.get(cur)
        for i, p in enumerate(path):
            if base is not None:
                steps_to_zero[p] = base + len(path) - i
            else:
                steps_to_zero[p] = None

    mortal = {s for s, v in steps_to_zero.items() if v is not None}
    weak = len(mortal) == len(states)
    bound = max((v for v in steps_to_zero.values() if v is not None), default=0) \
        if weak else None
    nilpotent = weak  # identical on a finite state space
    assert nilpotent == weak, "weak and bounded nilpotency must agree here"

    window_idx = [rep_index[q.project(g)] for g in eps_window]
    in_hole = {s: all(s[i] == 0 for i in window_idx) for s in states}
    first_hit = {}
    holes_bound = 0
    for s in states:
        cur = s
        n = 0
        seen = set()
        while not in_hole[cur]:
            if cur in seen:
                n = None
                break
            seen.add(cur)
            cur = succ[cur]
            n += 1
        first_hit[s] = n
        if n is None:
            holes_bound = None
        elif holes_bound is not None:
            holes_bound = max(holes_bound, n)

    witness = None
    if not weak:
        witness = min(s for s in states if steps_to_zero[s] is None)

    return FiniteSystemReport(
        state_count=len(states),
        weak_nilpotent=weak,
        nilpotent=nilpotent,
        nilpotency_bound=bound,
        holes_bound=holes_bound,
        witness_cycle_state=witness,
    )
