"""Registry of concrete example systems with their expected properties.

Each bundle packages a group, a shift, optional rules and symmetries,
and a list of machine-checkable property assertions; `reproduce` runs
the list and reports per-property pass/fail.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

import numpy as np

from .groups import QuotientCtx, Zd
from .shifts import (Alphabet, FiniteConfig, FullShift, Pattern,
                     PredicateShift, SFT1D, SFT2D, StripPeriodicConfig,
                     Subshift, VALID, INVALID)
from .ca import SymbolPermutation, equivariance_check, \
    rule_from_formula, COMMUTES
from . import gluing as gl
from . import nillab as nl


# ---------------------------------------------------------------------------
# north-or-east: every 1 needs a 1 to its north or east


def northeast_sft():
    alph = Alphabet(("0", "1"))
    forbidden = [Pattern.from_dict({(0, 0): "1", (0, 1): "0", (1, 0): "0"})]
    oracle = _northeast_pattern_valid
    return SFT2D(alph, forbidden, exact_oracle=oracle)


def _northeast_pattern_valid(pattern: Pattern) -> bool:
    """Exact validity: every fixed 1 admits a north/east-monotone path to
    infinity through cells that are fixed 1 or unassigned."""
    cells = pattern.as_dict()
    ones = [g for g, s in cells.items() if s == "1"]
    if not ones:
        return True
    xs = [g[0] for g in cells]
    ys = [g[1] for g in cells]
    x_lo, x_hi = min(xs), max(xs) + 1
    y_lo, y_hi = min(ys), max(ys) + 1
    esc = {}
    for x in range(x_hi, x_lo - 1, -1):
        for y in range(y_hi, y_lo - 1, -1):
            v = cells.get((x, y))
            if v == "0":
                esc[(x, y)] = False
                continue
            north = esc.get((x, y + 1), True)
            east = esc.get((x + 1, y), True)
            esc[(x, y)] = north or east
    return all(esc[g] for g in ones)


class NortheastBlockGluingChecker:
    """Exhaustive block-gluing decision for the north-or-east SFT.

    Validity of a union of two blocks decomposes: a 1 inside block A
    escapes iff some monotone path through A's 1s reaches an exit cell
    just outside A's north/east edge from which infinity is reachable
    avoiding B's 0s (such outside paths can never re-enter A's bounding
    box).  Blocks are therefore summarized by the set of exit masks
    reachable from their 1s, placements by the escaping-exit mask, and
    the pair check is a bitmask intersection over the summary classes.
    Smaller blocks are covered by maximal ones: zero-padding a valid
    block away from its partner preserves validity, distance and all
    obstacles, so n_max x n_max pairs dominate.
    """

    def __init__(self, X: SFT2D):
        self.X = X
        self._blocks_cache = {}
        self._sig_cache = {}

    def valid_blocks_array(self, w, h):
        """All valid w x h binary blocks as a (K, h, w) 0/1 array."""
        key = (w, h)
        if key not in self._blocks_cache:
            n = w * h
            codes = np.arange(1 << n, dtype=np.int64)
            bits = ((codes[:, None] >> np.arange(n)) & 1).astype(np.uint8)
            grids = bits.reshape(-1, h, w)  # [batch, y, x]
            reach = self._reach_masks(grids)
            ok = ((reach != 0) | (grids == 0)).all(axis=(1, 2))
            self._blocks_cache[key] = grids[ok]
        return self._blocks_cache[key]

    @staticmethod
    def _reach_masks(grids):
        """Exit masks reachable from each cell through 1s, per block.

        Exit bits: north exit above column x is bit x; east exit beside
        row y is bit (w + y).
        """
        batch, h, w = grids.shape
        reach = np.zeros((batch, h, w), dtype=np.int64)
        for x in range(w - 1, -1, -1):
            for y in range(h - 1, -1, -1):
                north = (np.int64(1) << x) if y == h - 1 else \
                    np.where(grids[:, y + 1, x] == 1, reach[:, y + 1, x], 0)
                east = (np.int64(1) << (w + y)) if x == w - 1 else \
                    np.where(grids[:, y, x + 1] == 1, reach[:, y, x + 1], 0)
                reach[:, y, x] = np.where(grids[:, y, x] == 1, north | east, 0)
        return reach

    def signatures(self, w, h):
        """Distinct sets of exit masks over 1-cells, with representatives."""
        key = (w, h)
        if key not in self._sig_cache:
            grids = self.valid_blocks_array(w, h)
            reach = self._reach_masks(grids)
            sigs = {}
            for i in range(grids.shape[0]):
                masks = frozenset(int(m) for m in
                                  reach[i][grids[i] == 1].ravel())
                sigs.setdefault(masks, i)
            self._sig_cache[key] = sigs
        return self._sig_cache[key]

    def escape_masks(self, w, h, offset):
        """Per placed block: which exits of a w x h box at the origin can
        reach infinity avoiding the block's 0s.  Returns (masks, grids)."""
        grids = self.valid_blocks_array(w, h)  # placed block is also w x h
        dx, dy = offset
        x_lo = min(0, dx) - 1
        x_hi = max(w, dx + w) + 1
        y_lo = min(0, dy) - 1
        y_hi = max(h, dy + h) + 1
        W = x_hi - x_lo + 1
        H = y_hi - y_lo + 1
        batch = grids.shape[0]
        blocked = np.zeros((batch, H, W), dtype=bool)
        bx = dx - x_lo
        by = dy - y_lo
        blocked[:, by:by + h, bx:bx + w] = grids == 0
        esc = np.zeros((batch, H, W), dtype=bool)
        for x in range(W - 1, -1, -1):
            for y in range(H - 1, -1, -1):
                north = esc[:, y + 1, x] if y + 1 < H else True
                east = esc[:, y, x + 1] if x + 1 < W else True
                esc[:, y, x] = ~blocked[:, y, x] & (north | east)
        masks = np.zeros(batch, dtype=np.int64)
        for x in range(w):
            masks |= esc[:, h - y_lo, x - x_lo].astype(np.int64) << x
        for y in range(h):
            masks |= esc[:, y - y_lo, w - x_lo].astype(np.int64) << (w + y)
        return masks, grids

    def verify(self, R, n_max, distance_slack=1):
        w = h = n_max
        r_lo, r_hi = max(R, 1), R + distance_slack
        sigs = self.signatures(w, h)
        pairs = 0
        for off in gl._block_offsets(w, h, w, h, r_lo, r_hi):
            masks, grids = self.escape_masks(w, h, off)
            pairs += len(sigs) * grids.shape[0]
            for emask_val in np.unique(masks):
                emask = int(emask_val)
                for sig, rep_a in sigs.items():
                    if any((m & emask) == 0 for m in sig):
                        rep_b = int(np.argmax(masks == emask_val))
                        a = self._grid_pattern(self.valid_blocks_array(w, h)[rep_a])
                        b = self._grid_pattern(grids[rep_b])
                        return gl.CounterexamplePair(a, b, off)
        return gl.BlockGluingHolds(R, n_max, pairs, distance_slack)

    @staticmethod
    def _grid_pattern(grid, offset=(0, 0)):
        h, w = grid.shape
        return Pattern.from_dict(
            {(x + offset[0], y + offset[1]): str(int(grid[y, x]))
             for y in range(h) for x in range(w)})


# ---------------------------------------------------------------------------
# squares shift: 1-components are filled squares (or degenerate limits)


def squares_shift():
    alph = Alphabet(("0", "1"))
    X = PredicateShift(Zd(2), alph, _squares_pattern_valid,
                       grade="window-sound", name="squares-shift")
    X.window = 2
    X.gluing_mode = "block"
    X.gluing_radius = 2
    return X


def _squares_pattern_valid(pattern: Pattern) -> bool:
    cells = pattern.as_dict()
    ones = {g for g, s in cells.items() if s == "1"}
    seen = set()
    for start in ones:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            (x, y) = stack.pop()
            for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
                if nb in ones and nb not in comp:
                    comp.add(nb)
                    stack.append(nb)
        seen |= comp
        if not _component_square_consistent(cells, comp):
            return False
    return True


def _component_square_consistent(cells, comp):
    xs = [g[0] for g in comp]
    ys = [g[1] for g in comp]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    # solid rectangle: every assigned bbox cell is a 1 of this component
    for x in range(x0, x1 + 1):
        for y in range(y0, y1 + 1):
            v = cells.get((x, y))
            if v == "0" or (v == "1" and (x, y) not in comp):
                return False
    # a side is closed when some assigned 0 sits just beyond it
    def side_closed(edge_cells):
        return any(cells.get(c) == "0" for c in edge_cells)

    left = side_closed([(x0 - 1, y) for y in range(y0, y1 + 1)])
    right = side_closed([(x1 + 1, y) for y in range(y0, y1 + 1)])
    bottom = side_closed([(x, y0 - 1) for x in range(x0, x1 + 1)])
    top = side_closed([(x, y1 + 1) for x in range(x0, x1 + 1)])
    w = x1 - x0 + 1
    h = y1 - y0 + 1
    width_known = left and right
    height_known = bottom and top
    if width_known and height_known:
        return w == h
    if width_known:
        return h <= w
    if height_known:
        return w <= h
    return True


def square_config(side, corner=(0, 0)):
    alph = Alphabet(("0", "1"))
    entries = {(corner[0] + i, corner[1] + j): "1"
               for i in range(side) for j in range(side)}
    return FiniteConfig(Zd(2), alph, entries)


# ---------------------------------------------------------------------------
# arrow SFT: arrows form disjoint paths


ARROW_VECS = {"r": (1, 0), "u": (0, 1), "l": (-1, 0), "d": (0, -1)}


def arrow_sft():
    alph = Alphabet(("0", "r", "u", "l", "d"))
    forbidden = []
    for s, v in ARROW_VECS.items():
        forbidden.append(Pattern.from_dict({(0, 0): s, v: "0"}))
    for (s1, v1), (s2, v2) in itertools.combinations(ARROW_VECS.items(), 2):
        src1 = (-v1[0], -v1[1])
        src2 = (-v2[0], -v2[1])
        forbidden.append(Pattern.from_dict({src1: s1, src2: s2}))
    # 2-cycles are not paths
    forbidden.append(Pattern.from_dict({(0, 0): "r", (1, 0): "l"}))
    forbidden.append(Pattern.from_dict({(0, 0): "u", (0, 1): "d"}))
    return SFT2D(alph, forbidden)


def arrow_column():
    """The infinite column of up-arrows, as a vertically periodic point."""
    alph = Alphabet(("0", "r", "u", "l", "d"))
    return StripPeriodicConfig(Zd(2), alph, (0, 1), {(0, 0): "u"})


# ---------------------------------------------------------------------------
# one-dimensional predicate shifts


def even_shift():
    """Binary shift forbidding odd runs of 0s between 1s."""

    def valid(pattern: Pattern) -> bool:
        cells = pattern.as_dict()
        idx = sorted(g[0] for g in cells)
        word = [cells[(i,)] for i in idx]
        if idx and idx != list(range(idx[0], idx[-1] + 1)):
            # holes are unconstrained: check each contiguous run
            runs, cur = [], [idx[0]]
            for a, b in zip(idx, idx[1:]):
                if b == a + 1:
                    cur.append(b)
                else:
                    runs.append(cur)
                    cur = [b]
            runs.append(cur)
            return all(_even_word_ok([cells[(i,)] for i in run]) for run in runs)
        return _even_word_ok(word)

    X = PredicateShift(Zd(1), Alphabet(("0", "1")), valid, grade="exact",
                       name="even-shift")
    X.gluing_mode = "synchronizing"
    X.gluing_radius = 2
    X.variable_shifts = (0, 1)
    return X


def _even_word_ok(word):
    ones = [i for i, s in enumerate(word) if s == "1"]
    for a, b in zip(ones, ones[1:]):
        if (b - a - 1) % 2 == 1:
            return False
    return True


def spaceship_shift():
    """Ternary shift forbidding 1 0^n 1 and 2 0^n 2: nonzeros alternate."""

    def valid(pattern: Pattern) -> bool:
        cells = pattern.as_dict()
        idx = sorted(g[0] for g in cells)
        word = [cells[(i,)] for i in idx]
        nonzero = [s for s in word if s != "0"]
        return all(a != b for a, b in zip(nonzero, nonzero[1:]))

    X = PredicateShift(Zd(1), Alphabet(("0", "1", "2")), valid, grade="exact",
                       name="spaceship-shift")
    X.gluing_mode = "synchronizing"
    X.gluing_radius = 1
    return X


def density_bounded_sft(k=2):
    """SFT forbidding more than k nonzero symbols in any k^2 window."""
    width = k * k
    forbidden = []
    for word in itertools.product("01", repeat=width):
        if sum(c == "1" for c in word) > k:
            forbidden.append(word)
    # minimal forbidden words suffice: drop words containing a shorter one
    return SFT1D(Alphabet(("0", "1")), forbidden)


def reversal_union_shift(max_rank=40):
    """Orbit closure of 1 0^n 1 0^(n+1) 1 ... together with its reversal.

    Membership is by generator-window matching: the gaps between
    consecutive 1s in a window must increase or decrease by exactly one.
    """

    def valid(pattern: Pattern) -> bool:
        cells = pattern.as_dict()
        idx = sorted(g[0] for g in cells)
        ones = [i for i in idx if cells[(i,)] == "1"]
        gaps = [b - a - 1 for a, b in zip(ones, ones[1:])]
        if len(gaps) <= 1:
            return True
        inc = all(b == a + 1 for a, b in zip(gaps, gaps[1:]))
        dec = all(b == a - 1 for a, b in zip(gaps, gaps[1:]))
        return inc or dec

    X = PredicateShift(Zd(1), Alphabet(("0", "1")), valid,
                       grade="window-sound", name="reversal-union")
    return X


# ---------------------------------------------------------------------------
# the one-point compactification simulator


INF = math.inf


class OnePointSimulator:
    """Counter automaton over N u {inf}: values hop one cell rightward,
    decrementing, clamped by the distance to the nearest nonzero cell at
    or beyond the target.

    f(x)_i = max(0, min(x_{i-1}, m) - 1) where m >= 0 is minimal with
    x_{i+m} > 0, or max(0, x_{i-1} - 1) when no such m exists; inf - 1 =
    inf.  The clamp counting the target cell itself (m = 0) is what
    makes each cell fire at most once along any orbit.  Evaluated
    exactly on finite-support inputs; this is not a finite local rule
    and is excluded from table-based checks.
    """

    zero_value = 0

    def step(self, entries: dict) -> dict:
        if not entries:
            return {}
        positions = sorted(entries)
        out = {}
        for i in {p + 1 for p in positions}:
            prev = entries.get(i - 1, 0)
            if prev == 0:
                continue
            ahead = [p for p in positions if p >= i]
            val = min(prev, ahead[0] - i) if ahead else prev
            val = max(0, val - 1)  # inf - 1 stays inf
            if val != 0:
                out[i] = val
        return out

    def orbit(self, entries, steps):
        seq = [dict(entries)]
        for _ in range(steps):
            seq.append(self.step(seq[-1]))
        return seq


# ---------------------------------------------------------------------------
# bundles


@dataclass
class PropertyCheck:
    name: str
    run: object  # callable(bundle) -> (bool, detail)


@dataclass
class ExampleBundle:
    name: str
    group: object
    shift: Subshift
    rules: dict = field(default_factory=dict)
    symmetries: dict = field(default_factory=dict)
    properties: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    def run_properties(self, names=None):
        results = []
        for prop in self.properties:
            if names and prop.name not in names:
                continue
            ok, detail = prop.run(self)
            results.append((prop.name, ok, detail))
        return results


def _min_ca_bundle():
    rule = rule_from_formula("min")
    X = FullShift(Zd(1), rule.alphabet)

    def prop_block_mortality(b):
        f = b.rules["min"]
        worst = {}
        for n in range(1, 13):
            codes = np.arange(1, 1 << n, dtype=np.int64)
            rows = ((codes[:, None] >> np.arange(n)) & 1).astype(np.uint8)
            death, _ = nl.batch_mortality(f, rows, n + 1)
            if (death < 0).any() or int(death.max()) > n:
                return False, {"n": n}
            worst[n] = int(death.max())
        return all(worst[n] == n for n in worst), {"worst": worst}

    def prop_not_bounded_nilpotent(b):
        f = b.rules["min"]
        for n in range(1, 9):
            res = nl.bounded_nilpotency(f, n)
            if res == nl.YES_ALL_ZERO:
                return False, {"n": n}
        return True, {}

    def prop_z4_not_weakly_nilpotent(b):
        q = QuotientCtx(Zd(1), [[4]])
        report = nl.finite_system_checks(b.rules["min"], q, eps_window=[(0,)])
        return (not report.weak_nilpotent and not report.nilpotent
                and report.witness_cycle_state == (1, 1, 1, 1)), {
            "report": report}

    def prop_no_spaceship(b):
        cert = nl.spaceship_search(b.rules["min"], b.shift, radius=5, horizon=30)
        return cert is None, {"certificate": cert}

    return ExampleBundle(
        name="min-ca", group=Zd(1), shift=X, rules={"min": rule},
        properties=[
            PropertyCheck("finite_blocks_mortal_in_length", prop_block_mortality),
            PropertyCheck("bounded_nilpotency_fails", prop_not_bounded_nilpotent),
            PropertyCheck("z4_ring_not_weakly_nilpotent", prop_z4_not_weakly_nilpotent),
            PropertyCheck("no_spaceship_at_desk_scale", prop_no_spaceship),
        ])


def spaceship_valid_rows(r):
    """Valid spaceship-shift seeds with support in [-r, r], as rows:
    any nonzero placement whose symbols alternate 1,2,1,... or 2,1,2,..."""
    width = 2 * r + 1
    masks = np.arange(1, 1 << width, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(width)) & 1).astype(np.uint8)
    before = np.cumsum(bits, axis=1) - bits  # nonzeros strictly to the left
    first = np.where((before % 2) == 0, 1, 2).astype(np.uint8)
    rows_1 = np.where(bits == 1, first, 0).astype(np.uint8)
    rows_2 = np.where(bits == 1, np.uint8(3) - first, 0).astype(np.uint8)
    return np.concatenate([rows_1, rows_2])


def _spaceship_bundle():
    rule = rule_from_formula("spaceship")
    X = spaceship_shift()
    swap = SymbolPermutation.from_dict({"1": "2", "2": "1"})

    def prop_equivariance_witness(b):
        res = equivariance_check(b.rules["spaceship"], b.symmetries["swap"],
                                 subshift=b.shift)
        return res != COMMUTES, {"witness": res}

    def prop_spaceship_certificate(b):
        cert = nl.spaceship_search(b.rules["spaceship"], b.shift, radius=1,
                                   horizon=3)
        ok = (cert is not None and cert.period == 1
              and abs(cert.translation[0]) == 1 and cert.verify(b.rules["spaceship"]))
        return ok, {"certificate": cert}

    def prop_profile_increasing(b):
        prof = nl.uniform_mortality_profile(
            b.rules["spaceship"], b.shift, r_max=8, horizon=64,
            seed_enumerator=spaceship_valid_rows)
        times = [prof.entries[r][0] for r in range(2, 9)]
        increasing = all(a < b2 for a, b2 in zip(times, times[1:]))
        return increasing, {"profile": prof.max_times()}

    def prop_window_empties(b):
        f = b.rules["spaceship"]
        rows = spaceship_valid_rows(8)
        horizon = 64
        finals, pad = nl.evolve_batch(f, rows, horizon)
        center = pad + 8  # column of cell 0
        window = finals[:, center - 2: center + 3]
        return not window.any(), {"seeds": int(rows.shape[0])}

    return ExampleBundle(
        name="spaceship-sofic", group=Zd(1), shift=X,
        rules={"spaceship": rule}, symmetries={"swap": swap},
        properties=[
            PropertyCheck("swap_equivariance_fails", prop_equivariance_witness),
            PropertyCheck("spaceship_certificate", prop_spaceship_certificate),
            PropertyCheck("mortality_profile_strictly_increasing",
                          prop_profile_increasing),
            PropertyCheck("origin_window_empties_by_horizon", prop_window_empties),
        ])


def _even_shift_bundle():
    X = even_shift()

    def prop_parity_witness(b):
        """Plain 0-gluing fails: an odd relative placement of two valid
        pieces is invalid, while translating one piece fixes it."""
        alph = b.shift.alphabet
        piece = FiniteConfig(Zd(1), alph, {(0,): "1", (1,): "1"})
        other = piece.translate((5,))
        d = gl.Designation(
            [gl.DesignationPiece(gl.FiniteRegion(frozenset({(0,), (1,)})), piece),
             gl.DesignationPiece(gl.FiniteRegion(frozenset({(5,), (6,), (7,)})), other)])
        try:
            gl.realize(d, b.shift, gl.SYNCHRONIZING_1D, gamma=(0,))
            return False, {"detail": "odd placement unexpectedly realizable"}
        except gl.GluingFailed:
            pass
        res = gl.realize(d, b.shift, gl.SYNCHRONIZING_1D, gamma=(0, 1))
        ok = b.shift.config_valid(res.config) == VALID
        return ok, {"translations": res.translations}

    def prop_variable_gluing_exhaustive(b):
        return _even_variable_gluing_check(b.shift), {}

    return ExampleBundle(
        name="even-shift", group=Zd(1), shift=X,
        properties=[
            PropertyCheck("plain_gluing_parity_witness", prop_parity_witness),
            PropertyCheck("variable_gluing_three_pieces",
                          prop_variable_gluing_exhaustive),
        ])


def _even_variable_gluing_check(X, span=20, rng_seed=11, samples=150):
    """Random placements of up to 3 homoclinic pieces in [-span, span]:
    gluing with shifts {0,1} must always succeed."""
    rng = random.Random(rng_seed)
    alph = X.alphabet
    words = ["1", "11", "1001", "100001", "110011"]  # even internal gaps
    for _ in range(samples):
        k = rng.randint(1, 3)
        pieces = []
        cursor = -span
        for _ in range(k):
            w = rng.choice(words)
            pos = cursor + rng.randint(4, 8)
            cells = {(pos + i,): s for i, s in enumerate(w)}
            cursor = pos + len(w)
            if cursor > span:
                break
            cfg = FiniteConfig(Zd(1), alph,
                               {g: s for g, s in cells.items() if s != "0"})
            region = gl.FiniteRegion(frozenset((pos + i,) for i in range(len(w) + 2)))
            pieces.append(gl.DesignationPiece(region, cfg))
        if not pieces:
            continue
        d = gl.Designation(pieces)
        try:
            res = gl.realize(d, X, gl.SYNCHRONIZING_1D, gamma=(0, 1))
        except gl.GluingFailed:
            return False
        if X.config_valid(res.config) != VALID:
            return False
    return True


def _squares_bundle():
    X = squares_shift()

    def prop_membership(b):
        ok1 = b.shift.config_valid(square_config(3)) == VALID
        bad = square_config(3)
        bad = FiniteConfig(Zd(2), b.shift.alphabet,
                           {**bad.entries, (5, 0): "1", (5, 1): "1"})
        ok2 = b.shift.config_valid(bad) == INVALID  # 1x2 bar is not a square
        return ok1 and ok2, {}

    def prop_periodize_square(b):
        from .periodize import periodize
        y = square_config(3, corner=(-1, -1))
        direction = QuotientCtx(Zd(2), [[0, 1]])
        res = periodize(y, direction, b.shift,
                        window=[(i, j) for i in range(-1, 2) for j in range(-1, 2)])
        ok = all(res.report[k] for k in
                 ("periodic", "window_agrees", "shadow_contained"))
        return ok, {"report": res.report}

    return ExampleBundle(
        name="squares-shift", group=Zd(2), shift=X,
        properties=[
            PropertyCheck("window_membership", prop_membership),
            PropertyCheck("vertical_periodization", prop_periodize_square),
        ])


def _arrow_bundle():
    X = arrow_sft()

    def prop_fin_membership(b):
        from .periodize import fin_membership
        x = arrow_column()
        q = QuotientCtx(Zd(2), [[0, 1]])
        ok1 = fin_membership(x, q, {(-1, 0), (0, 0), (1, 0)})
        ok2 = not fin_membership(x.translate((7, 0)), q, {(0, 0)})
        return ok1 and ok2, {}

    def prop_column_valid(b):
        return b.shift.strip_torus_valid(arrow_column()), {}

    return ExampleBundle(
        name="arrow-sft", group=Zd(2), shift=X,
        properties=[
            PropertyCheck("column_in_fin_tier", prop_fin_membership),
            PropertyCheck("arrow_column_valid", prop_column_valid),
        ])


def _northeast_bundle():
    X = northeast_sft()
    checker = NortheastBlockGluingChecker(X)

    def prop_single_one_valid(b):
        p = Pattern.from_dict({(0, 0): "1"})
        return b.shift.pattern_valid(p, 3) == VALID, {}

    def prop_block_gluing_constant(b):
        res1 = gl.verify_block_gluing(b.shift, 1, 4, checker=checker)
        res2 = gl.verify_block_gluing(b.shift, 2, 4, checker=checker)
        ok = (isinstance(res1, gl.CounterexamplePair)
              and isinstance(res2, gl.BlockGluingHolds))
        return ok, {"R1": res1, "R2": res2}

    return ExampleBundle(
        name="north-or-east", group=Zd(2), shift=X,
        extras={"block_checker": checker},
        properties=[
            PropertyCheck("lone_one_extends", prop_single_one_valid),
            PropertyCheck("least_block_gluing_constant_is_2",
                          prop_block_gluing_constant),
        ])


def _density_bundle():
    X = density_bounded_sft(k=2)

    def prop_far_words_glue(b):
        alph = b.shift.alphabet
        v = FiniteConfig(Zd(1), alph, {(0,): "1", (1,): "1"})
        w = v.translate((8,))
        d = gl.Designation([
            gl.DesignationPiece(gl.FiniteRegion(frozenset({(0,), (1,)})), v),
            gl.DesignationPiece(gl.FiniteRegion(frozenset({(8,), (9,)})), w)])
        res = gl.realize(d, b.shift, gl.SYNCHRONIZING_1D)
        return b.shift.config_valid(res.config) == VALID, {}

    def prop_sync_radius(b):
        r = gl.synchronizing_radius(b.shift)
        return r <= b.shift.window - 1, {"radius": r}

    return ExampleBundle(
        name="density-bounded", group=Zd(1), shift=X,
        properties=[
            PropertyCheck("distant_blocks_glue", prop_far_words_glue),
            PropertyCheck("synchronizing_radius_bounded", prop_sync_radius),
        ])


def _onepoint_bundle():
    sim = OnePointSimulator()
    X = FullShift(Zd(1), Alphabet(("0", "1")))  # carrier for bookkeeping only

    def prop_cells_fire_once(b):
        rng = random.Random(7)
        sim = b.extras["simulator"]
        for _ in range(50):
            entries = {}
            for _ in range(rng.randint(1, 6)):
                pos = rng.randint(-15, 15)
                entries[pos] = rng.choice([1, 2, 3, 5, 8, INF])
            orbit = sim.orbit(entries, 100)
            fired = {}
            for step, state in enumerate(orbit):
                for cell, val in state.items():
                    if val != 0 and step > 0:
                        fired.setdefault(cell, []).append(step)
            if any(len(steps) > 1 for steps in fired.values()):
                return False, {"entries": entries}
        return True, {}

    def prop_inf_carrier_hits_origin(b):
        sim = b.extras["simulator"]
        for t in range(1, 31):
            orbit = sim.orbit({-t: INF}, t + 5)
            hits = [n for n, state in enumerate(orbit) if state.get(0, 0) != 0]
            if hits != [t]:
                return False, {"t": t, "hits": hits}
        return True, {}

    return ExampleBundle(
        name="onepoint-ca", group=Zd(1), shift=X,
        extras={"simulator": sim},
        properties=[
            PropertyCheck("cells_nonzero_at_most_once", prop_cells_fire_once),
            PropertyCheck("inf_carrier_timing", prop_inf_carrier_hits_origin),
        ])


def _reversal_bundle():
    X = reversal_union_shift()

    def prop_windows(b):
        ok1 = b.shift.pattern_valid(
            Pattern.from_dict({(i,): s for i, s in enumerate("1010010001")})) == VALID
        ok2 = b.shift.pattern_valid(
            Pattern.from_dict({(i,): s for i, s in enumerate("101001001")})) == INVALID
        return ok1 and ok2, {}

    def prop_shift_recurrent(b):
        rule = rule_from_formula("shift_right")
        cert = nl.spaceship_search(rule, b.shift, radius=1, horizon=4)
        return cert is not None and cert.period == 1, {"certificate": cert}

    return ExampleBundle(
        name="reversal-union", group=Zd(1), shift=X,
        properties=[
            PropertyCheck("generator_window_membership", prop_windows),
            PropertyCheck("shift_is_recurrent_witness", prop_shift_recurrent),
        ])


_BUNDLES = {
    "min-ca": _min_ca_bundle,
    "spaceship-sofic": _spaceship_bundle,
    "even-shift": _even_shift_bundle,
    "squares-shift": _squares_bundle,
    "arrow-sft": _arrow_bundle,
    "north-or-east": _northeast_bundle,
    "density-bounded": _density_bundle,
    "onepoint-ca": _onepoint_bundle,
    "reversal-union": _reversal_bundle,
}


def example_names():
    return sorted(_BUNDLES)


def load_example(name) -> ExampleBundle:
    if name not in _BUNDLES:
        raise KeyError(f"unknown example {name!r}; known: {example_names()}")
    return _BUNDLES[name]()
