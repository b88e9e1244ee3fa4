"""Designations, realizations and block-gluing machinery.

A designation assigns disjoint regions of the group to configurations,
with the implicit remainder carrying the zero point.  Realizing one
means producing a single configuration that agrees with every piece on
its region.  On full shifts this is literal superposition; on 1D shifts
with a synchronizing zero power it is concatenation across zero gaps,
optionally after translating pieces (variable gluing); on 2D SFTs gaps
are filled by deterministic backtracking.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .groups import Zd
from .shifts import (Configuration, FiniteConfig, FullShift, Pattern,
                     PredicateShift, SFT1D, SFT2D, StripPeriodicConfig,
                     Subshift, VALID, zero_config)


class GluingError(ValueError):
    pass


class DisjointnessViolation(GluingError):
    pass


class BorderNotZero(GluingError):
    pass


class GluingFailed(GluingError):
    pass


class ScheduleDistanceViolation(GluingError):
    pass


class NoRepetitionFound(GluingError):
    pass


# ---------------------------------------------------------------------------
# regions


@dataclass(frozen=True)
class FiniteRegion:
    cells: frozenset

    def __contains__(self, g):
        return g in self.cells

    def iter_cells(self):
        return iter(self.cells)

    def is_finite(self):
        return True


@dataclass(frozen=True)
class RectRegion:
    """Axis-aligned rectangle in Z^2; None bounds mean unbounded."""

    x_lo: object
    x_hi: object
    y_lo: object
    y_hi: object

    def __contains__(self, g):
        x, y = g
        if self.x_lo is not None and x < self.x_lo:
            return False
        if self.x_hi is not None and x > self.x_hi:
            return False
        if self.y_lo is not None and y < self.y_lo:
            return False
        if self.y_hi is not None and y > self.y_hi:
            return False
        return True

    def is_finite(self):
        return None not in (self.x_lo, self.x_hi, self.y_lo, self.y_hi)

    def iter_cells(self):
        if not self.is_finite():
            raise GluingError("cannot enumerate an infinite rectangle")
        for y in range(self.y_lo, self.y_hi + 1):
            for x in range(self.x_lo, self.x_hi + 1):
                yield (x, y)

    def clipped(self, window_cells):
        return [c for c in window_cells if c in self]


def regions_disjoint(regions, sample_cells=None):
    """Pairwise disjointness; finite regions exactly, rectangles by
    interval arithmetic, mixed cases on the finite side."""
    for a, b in itertools.combinations(regions, 2):
        if isinstance(a, FiniteRegion) and isinstance(b, FiniteRegion):
            if a.cells & b.cells:
                return False
        elif isinstance(a, RectRegion) and isinstance(b, RectRegion):
            if _rects_overlap(a, b):
                return False
        else:
            fin, other = (a, b) if isinstance(a, FiniteRegion) else (b, a)
            if any(c in other for c in fin.iter_cells()):
                return False
    return True


def _interval_gap(a_lo, a_hi, b_lo, b_hi):
    """Gap between two (possibly unbounded) integer intervals; 0 = overlap/touch."""
    neg_inf, pos_inf = float("-inf"), float("inf")
    a_lo = neg_inf if a_lo is None else a_lo
    a_hi = pos_inf if a_hi is None else a_hi
    b_lo = neg_inf if b_lo is None else b_lo
    b_hi = pos_inf if b_hi is None else b_hi
    return max(0, b_lo - a_hi, a_lo - b_hi)


def _rects_overlap(a: RectRegion, b: RectRegion):
    return (_interval_gap(a.x_lo, a.x_hi, b.x_lo, b.x_hi) == 0
            and _interval_gap(a.y_lo, a.y_hi, b.y_lo, b.y_hi) == 0)


def rect_distance(a: RectRegion, b: RectRegion):
    """l-infinity distance between two rectangles (0 if they meet)."""
    gx = _interval_gap(a.x_lo, a.x_hi, b.x_lo, b.x_hi)
    gy = _interval_gap(a.y_lo, a.y_hi, b.y_lo, b.y_hi)
    return max(gx, gy)


def rect_hull(rects):
    xs_lo = [r.x_lo for r in rects]
    xs_hi = [r.x_hi for r in rects]
    ys_lo = [r.y_lo for r in rects]
    ys_hi = [r.y_hi for r in rects]
    return RectRegion(
        None if any(v is None for v in xs_lo) else min(xs_lo),
        None if any(v is None for v in xs_hi) else max(xs_hi),
        None if any(v is None for v in ys_lo) else min(ys_lo),
        None if any(v is None for v in ys_hi) else max(ys_hi),
    )


def bounding_rect(cells):
    xs = [c[0] for c in cells]
    ys = [c[1] for c in cells]
    return RectRegion(min(xs), max(xs), min(ys), max(ys))


# ---------------------------------------------------------------------------
# designations


@dataclass
class DesignationPiece:
    region: object
    config: Configuration
    translation: object = None  # group element; identity when None

    def translated_config(self):
        if self.translation is None:
            return self.config
        return self.config.translate(self.translation)


@dataclass
class Designation:
    """Disjoint regions with configurations; remainder carries zero.

    The collar set E drives the zero-border condition: inside each
    region, every cell whose E-neighborhood leaves the region must hold
    the zero symbol in the (translated) designated configuration.
    """

    pieces: list
    collar: frozenset = frozenset()

    def check(self, ctx):
        if not regions_disjoint([p.region for p in self.pieces]):
            raise DisjointnessViolation("designation regions overlap")
        for p in self.pieces:
            region = p.region
            if not region.is_finite():
                continue
            cfg = p.translated_config()
            zero = cfg.alphabet.zero
            for g in region.iter_cells():
                on_border = any(ctx.mul(e, g) not in region for e in self.collar)
                if on_border and cfg.value(g) != zero:
                    raise BorderNotZero(
                        f"cell {g} lies on the collar border but holds "
                        f"{cfg.value(g)!r}")


@dataclass
class Realization:
    """A realization point together with its translation witnesses."""

    config: Configuration
    translations: tuple = ()


SUPERPOSE = "Superpose"
SYNCHRONIZING_1D = "Synchronizing1D"
BLOCK_GLUE_2D = "BlockGlue2D"


def realize(designation: Designation, X: Subshift, mode=SUPERPOSE,
            gamma=(0,), halo=None):
    """Realize a designation on X.

    gamma: allowed translation amounts along the first coordinate for
    variable gluing (mode SYNCHRONIZING_1D); assignments are searched in
    lexicographic order and the first valid one wins, so output is
    deterministic.
    """
    designation.check(X.ctx)
    if mode == SUPERPOSE:
        if not isinstance(X, FullShift):
            raise GluingError("superposition is only exact on full shifts")
        return Realization(_superpose(designation, X), ((0,),) * len(designation.pieces))
    if mode == SYNCHRONIZING_1D:
        return _realize_1d(designation, X, gamma)
    if mode == BLOCK_GLUE_2D:
        return _realize_2d(designation, X, halo)
    raise GluingError(f"unknown gluing mode {mode!r}")


def _superpose(designation, X):
    entries = {}
    for p in designation.pieces:
        cfg = p.translated_config()
        for g in cfg.support():
            if g not in p.region:
                raise GluingError(
                    f"piece support cell {g} escapes its region")
            entries[g] = cfg.value(g)
    return FiniteConfig(X.ctx, X.alphabet, entries)


def _realize_1d(designation, X, gamma):
    if not (isinstance(X.ctx, Zd) and X.ctx.d == 1):
        raise GluingError("synchronizing gluing works on Z only")
    pieces = designation.pieces
    for shifts in itertools.product(gamma, repeat=len(pieces)):
        entries = {}
        ok = True
        for p, sh in zip(pieces, shifts):
            cfg = p.translated_config().translate((sh,))
            for g in cfg.support():
                if g in entries and entries[g] != cfg.value(g):
                    ok = False
                    break
                entries[g] = cfg.value(g)
            if not ok:
                break
        if not ok:
            continue
        candidate = FiniteConfig(X.ctx, X.alphabet, entries)
        if X.config_valid(candidate) == VALID:
            return Realization(candidate, tuple((s,) for s in shifts))
    raise GluingFailed("no translation assignment produced a valid point")


def _realize_2d(designation, X, halo):
    if not isinstance(X, (SFT2D, PredicateShift)):
        raise GluingError("2D gluing requires an SFT or predicate shift")
    w = getattr(X, "window", 2)
    halo = halo if halo is not None else w
    fixed = {}
    for p in designation.pieces:
        cfg = p.translated_config()
        region = p.region
        if region.is_finite():
            for g in region.iter_cells():
                fixed[g] = cfg.value(g)
        else:
            for g in cfg.support():
                fixed[g] = cfg.value(g)
    if not fixed:
        return Realization(zero_config(X.ctx, X.alphabet))
    rect = bounding_rect(fixed)
    free = []
    for y in range(rect.y_lo - halo, rect.y_hi + halo + 1):
        for x in range(rect.x_lo - halo, rect.x_hi + halo + 1):
            if (x, y) not in fixed:
                free.append((x, y))
    if isinstance(X, SFT2D):
        filled = X.complete_pattern(fixed, free)
        if filled is None:
            raise GluingFailed("2D gap fill search exhausted")
    else:
        filled = dict(fixed)
        for c in free:
            filled[c] = X.alphabet.zero
        if X.pattern_valid(Pattern.from_dict(filled)) != VALID:
            raise GluingFailed("zero fill rejected by the validity oracle")
    out = FiniteConfig(X.ctx, X.alphabet,
                       {g: s for g, s in filled.items() if s != X.alphabet.zero})
    if X.config_valid(out) != VALID:
        raise GluingFailed("realized configuration fails validity")
    return Realization(out)


# ---------------------------------------------------------------------------
# synchronizing words


def synchronizing_radius(X: SFT1D):
    """Least r with 0^r a synchronizing word for X; always <= window - 1.

    0^r synchronizes iff every essential transfer-graph state ending in
    0^r has the same follower set, which is decided by partition
    refinement on the deterministic transfer graph.
    """
    if not isinstance(X, SFT1D):
        raise GluingError("synchronizing radius is defined for 1D SFTs")
    if not X.contains_zero_point:
        raise GluingError("the all-zero point does not belong to X")
    m = X.window
    if m == 1 or not X.states:
        return 0
    classes = _follower_classes(X)
    zero = X.alphabet.zero
    for r in range(0, m):
        suffix = (zero,) * r
        states = [u for u in X.states if r == 0 or u[-r:] == suffix]
        if len({classes[u] for u in states}) <= 1:
            return r
    return m - 1


def _follower_classes(X: SFT1D):
    """Forward-language equivalence classes of transfer-graph states."""
    states = sorted(X.states)
    cls = {u: 0 for u in states}
    syms = X.alphabet.symbols
    while True:
        signature = {}
        for u in states:
            sig = tuple(cls.get(X.trans.get((u, s))) if (u, s) in X.trans else None
                        for s in syms)
            signature[u] = (cls[u], sig)
        relabel = {}
        new_cls = {}
        for u in states:
            key = signature[u]
            if key not in relabel:
                relabel[key] = len(relabel)
            new_cls[u] = relabel[key]
        if new_cls == cls:
            return cls
        cls = new_cls


# ---------------------------------------------------------------------------
# block gluing


@dataclass
class BlockGluingHolds:
    R: int
    n_max: int
    pairs_checked: int
    distance_slack: int


@dataclass
class CounterexamplePair:
    block_a: Pattern
    block_b: Pattern
    offset: tuple


def enumerate_valid_blocks(X, width, height, budget=2 ** 20):
    """Valid width x height blocks of a 2D shift, in lexicographic order."""
    cells = [(x, y) for y in range(height) for x in range(width)]
    total = len(X.alphabet) ** len(cells)
    if total > budget:
        raise GluingError(f"{total} blocks exceed the enumeration budget")
    out = []
    for values in itertools.product(X.alphabet.symbols, repeat=len(cells)):
        p = Pattern.from_dict(dict(zip(cells, values)))
        if X.pattern_valid(p) == VALID:
            out.append(p)
    return out


def _block_offsets(wa, ha, wb, hb, r_lo, r_hi):
    """Relative placements of a wb x hb block against a wa x ha block at
    l-infinity distance within [r_lo, r_hi]."""
    out = []
    for dx in range(-wb - r_hi, wa + r_hi + 1):
        for dy in range(-hb - r_hi, ha + r_hi + 1):
            gx = _interval_gap(0, wa - 1, dx, dx + wb - 1)
            gy = _interval_gap(0, ha - 1, dy, dy + hb - 1)
            d = max(gx, gy)
            if r_lo <= d <= r_hi:
                out.append((dx, dy))
    return out


def verify_block_gluing(X, R, n_max, distance_slack=1, budget=2 ** 20,
                        checker=None):
    """Exhaustively check block gluing at constant R for blocks up to
    n_max x n_max.

    Placements at l-infinity distance in [max(R,1), R + distance_slack]
    are tested (overlapping placements are excluded since the union
    pattern is ill-defined there); for the monotone-escape systems used
    in practice, gluability at the tested distances implies it at all
    larger ones.  `checker` may supply a specialized exhaustive decision
    procedure (an object with verify(R, n_max, distance_slack)), used
    when the naive pair loop would not fit the budget.
    """
    if checker is not None:
        return checker.verify(R, n_max, distance_slack)
    if isinstance(X, SFT2D) and not X.forbidden:
        # no constraints: every union of valid blocks is valid
        return BlockGluingHolds(R, n_max, 0, distance_slack)
    r_lo = max(R, 1)
    r_hi = R + distance_slack
    sizes = [(w, h) for w in range(1, n_max + 1) for h in range(1, n_max + 1)]
    blocks = {}
    for (w, h) in sizes:
        blocks[(w, h)] = enumerate_valid_blocks(X, w, h, budget=budget)

    window = getattr(X, "window", 2)
    pairs = 0
    for (wa, ha) in sizes:
        for (wb, hb) in sizes:
            offsets = _block_offsets(wa, ha, wb, hb, r_lo, r_hi)
            for off in offsets:
                for pa in blocks[(wa, ha)]:
                    for pb in blocks[(wb, hb)]:
                        pairs += 1
                        if pairs > budget:
                            raise GluingError("pair budget exceeded")
                        union = dict(pa.as_dict())
                        for (g, s) in pb.cells:
                            union[(g[0] + off[0], g[1] + off[1])] = s
                        joint = Pattern.from_dict(union)
                        if X.pattern_valid(joint, r_hi + window) != VALID:
                            return CounterexamplePair(pa, pb, off)
    return BlockGluingHolds(R, n_max, pairs, distance_slack)


def least_block_gluing_constant(X, n_max, R_max=6, **kw):
    """Smallest R at which verify_block_gluing holds, or None."""
    for R in range(R_max + 1):
        res = verify_block_gluing(X, R, n_max, **kw)
        if isinstance(res, BlockGluingHolds):
            return R, res
    return None


# ---------------------------------------------------------------------------
# ordinal gluing schedules (finite truncations)


@dataclass
class PatternPlacement:
    offset: tuple
    pattern: Pattern

    def placed_cells(self):
        ox, oy = self.offset
        return {(g[0] + ox, g[1] + oy): s for g, s in self.pattern.cells}

    def rect(self):
        return bounding_rect(self.placed_cells())


@dataclass
class RegionFill:
    region: RectRegion
    symbol: str


@dataclass
class GluingSchedule:
    """Ordered placements with a gluing constant R.

    Each successive entry must sit at l-infinity distance >= R from the
    rectangular hull of all earlier entries.
    """

    entries: list
    R: int

    def check_distances(self):
        placed = []
        for e in self.entries:
            rect = e.rect() if isinstance(e, PatternPlacement) else e.region
            if placed:
                hull = rect_hull(placed)
                d = rect_distance(hull, rect)
                if d < self.R:
                    raise ScheduleDistanceViolation(
                        f"entry at {rect} sits at distance {d} < R={self.R} "
                        f"from the hull of earlier entries")
            placed.append(rect)


def ordinal_glue(schedule: GluingSchedule, X, window: RectRegion,
                 search_budget=200000):
    """A pattern on `window` agreeing with every scheduled placement.

    Free cells are filled deterministically (row-major, zero symbol
    first); half-plane zero fills are enforced inside the window only.
    """
    schedule.check_distances()
    fixed = {}
    for e in schedule.entries:
        if isinstance(e, PatternPlacement):
            for c, s in e.placed_cells().items():
                if c in window:
                    if c in fixed and fixed[c] != s:
                        raise GluingFailed(f"conflicting placements at {c}")
                    fixed[c] = s
        elif isinstance(e, RegionFill):
            for c in e.region.clipped(window.iter_cells()):
                if c in fixed and fixed[c] != e.symbol:
                    raise GluingFailed(f"conflicting fill at {c}")
                fixed[c] = e.symbol
        else:
            raise GluingError(f"unknown schedule entry {e!r}")
    free = [c for c in window.iter_cells() if c not in fixed]
    if isinstance(X, SFT2D) and X.exact_oracle is None:
        filled = X.complete_pattern(fixed, free)
        if filled is None:
            raise GluingFailed("window fill search exhausted")
    else:
        filled = dict(fixed)
        for c in free:
            filled[c] = X.alphabet.zero
        if X.pattern_valid(Pattern.from_dict(filled)) != VALID:
            raise GluingFailed("zero fill rejected by the validity oracle")
    return Pattern.from_dict({c: filled[c] for c in window.iter_cells()})


def pigeonhole_periodic(x, X, block_height, y_range=None, require_pattern=None):
    """Extract a vertically periodic point from a strip-supported input.

    Scans for two matching horizontal slabs of the given height and
    tiles the band between them.  The input may be a FiniteConfig, a
    Pattern, or a dict of cells; the output is StripPeriodic and passes
    the torus window check of X.
    """
    if isinstance(x, Pattern):
        cells = x.as_dict()
    elif isinstance(x, FiniteConfig):
        cells = {g: s for g, s in x.entries.items()}
    elif isinstance(x, StripPeriodicConfig):
        return x  # already periodic
    else:
        cells = dict(x)
    alphabet = X.alphabet
    nonzero = {g for g, s in cells.items() if s != alphabet.zero}
    if not nonzero:
        return StripPeriodicConfig(X.ctx, alphabet, (0, max(block_height, 1)), {})
    xs = [g[0] for g in nonzero]
    ys = [g[1] for g in cells] or [0]
    y_lo, y_hi = (min(ys), max(ys)) if y_range is None else y_range
    x_lo, x_hi = min(xs), max(xs)

    def slab(y0):
        return tuple(tuple(cells.get((a, y0 + dy), alphabet.zero)
                           for a in range(x_lo, x_hi + 1))
                     for dy in range(block_height))

    slabs = {}
    for y0 in range(y_lo, y_hi - block_height + 2):
        key = slab(y0)
        if key in slabs:
            y1 = slabs[key]
            period = y0 - y1
            entries = {}
            for a in range(x_lo, x_hi + 1):
                for b in range(y1, y0):
                    s = cells.get((a, b), alphabet.zero)
                    if s != alphabet.zero:
                        entries[(a, b)] = s
            out = StripPeriodicConfig(X.ctx, alphabet, (0, period), entries)
            if require_pattern is not None and not _occurs(out, require_pattern):
                slabs[key] = y1  # keep the earlier anchor, continue scanning
                continue
            if hasattr(X, "strip_torus_valid"):
                if not X.strip_torus_valid(out):
                    raise GluingFailed("periodized strip fails the torus check")
            elif X.config_valid(out) != VALID:
                raise GluingFailed("periodized strip fails validity")
            return out
        slabs[key] = y0
    raise NoRepetitionFound(
        f"no repeated height-{block_height} slab in rows [{y_lo}, {y_hi}]")


def _occurs(config: StripPeriodicConfig, pattern: Pattern):
    """Does a translate of the pattern occur in the strip-periodic point?"""
    px, py = config.period
    cells = pattern.as_dict()
    supp = config.entries
    if not supp:
        return all(s == config.alphabet.zero for s in cells.values())
    xs = [g[0] for g in supp]
    for ox in range(min(xs) - 1, max(xs) + 2):
        for oy in range(0, py):
            if all(config.value((ox + g[0], oy + g[1])) == s
                   for g, s in cells.items()):
                return True
    return False
