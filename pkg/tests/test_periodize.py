import random

import pytest

from shiftlab.groups import Free2, QuotientCtx, Zd
from shiftlab.shifts import (Alphabet, FiniteConfig, FullShift,
                             LatticePeriodicConfig, StripPeriodicConfig,
                             k_shadow, zero_config)
from shiftlab.ca import LocalRule, apply_rule
from shiftlab.periodize import (FixTier, PeriodizeError,
                                RealizationUnavailable, SuitabilityError,
                                fin_membership, fix_membership, loc_subsystem,
                                periodize)
from shiftlab.corpus import square_config, squares_shift


BIN = Alphabet(("0", "1"))
Z2 = Zd(2)
VERT = QuotientCtx(Z2, [[0, 1]])  # shadow map onto column indices


class TestFixMembership:
    def test_lattice_periodic_point(self):
        q = QuotientCtx(Zd(1), [[3]])
        x = LatticePeriodicConfig(q, BIN, {(0,): "1", (1,): "0", (2,): "0"})
        assert fix_membership(x, q)

    def test_single_cell_not_fixed(self):
        F = QuotientCtx(Z2, [[0, 5]])
        x = FiniteConfig(Z2, BIN, {(0, 0): "1"})
        assert not fix_membership(x, F)

    def test_vertical_period_five_column(self):
        F = QuotientCtx(Z2, [[0, 5]])
        x = StripPeriodicConfig(Z2, BIN, (0, 5), {(0, 2): "1"})
        assert fix_membership(x, F)


class TestFinMembership:
    def test_column_inside_band(self):
        x = StripPeriodicConfig(Z2, BIN, (0, 1), {(0, 0): "1"})
        assert fin_membership(x, VERT, {(-1, 0), (0, 0), (1, 0)})

    def test_support_outside(self):
        x = FiniteConfig(Z2, BIN, {(7, 3): "1"})
        assert not fin_membership(x, VERT, {(0, 0)})

    def test_zero_in_empty_band(self):
        assert fin_membership(zero_config(Z2, BIN), VERT, set())


class TestLocSubsystem:
    def test_unsuitable_generators_rejected(self):
        rule = LocalRule(Z2, BIN, [(0, 0), (0, 1)],
                         lambda w: "1" if w == ("1", "1") else "0")
        with pytest.raises(SuitabilityError):
            loc_subsystem(rule, [(1, 0), (-1, 0)])

    def test_full_group_generators(self):
        rule = LocalRule(Z2, BIN, [(0, 0), (0, 1)],
                         lambda w: "1" if w == ("1", "1") else "0")
        sub = loc_subsystem(rule, [(1, 0), (-1, 0), (0, 1), (0, -1)])
        assert sub.contains(FiniteConfig(Z2, BIN, {(5, -3): "1"}))

    def test_free_group_axis_subsystem(self):
        f2 = Free2()
        rule = LocalRule(f2, BIN, ["", "a"],
                         lambda w: "1" if w == ("1", "1") else "0")
        sub = loc_subsystem(rule, ["a", "A"])
        x = FiniteConfig(f2, BIN, {"": "1", "a": "1", "aa": "1"})
        assert sub.contains(x)
        y = x
        for _ in range(20):
            y = apply_rule(rule, y)
            assert sub.contains(y)
        assert not sub.contains(FiniteConfig(f2, BIN, {"b": "1"}))

    def test_invariance_of_random_supported_configs(self):
        rng = random.Random(8)
        rule = LocalRule(Z2, BIN, [(0, 0), (1, 0), (0, 1)],
                         lambda w: "1" if w.count("1") >= 2 else "0")
        sub = loc_subsystem(rule, [(1, 0), (-1, 0), (0, 1), (0, -1)])
        for _ in range(10):
            entries = {(rng.randint(-3, 3), rng.randint(-3, 3)): "1"
                       for _ in range(rng.randint(1, 6))}
            y = FiniteConfig(Z2, BIN, entries)
            assert sub.contains(y)
            for _ in range(20):
                y = apply_rule(rule, y)
                assert sub.contains(y)


class TestPeriodize:
    def test_single_one_full_shift(self):
        full = FullShift(Z2, BIN)
        y = FiniteConfig(Z2, BIN, {(0, 0): "1"})
        res = periodize(y, VERT, full, window=[(0, 0)])
        assert res.report["periodic"]
        assert res.report["window_agrees"]
        assert res.report["shadow_contained"]
        assert k_shadow(res.point, VERT) == {(0, 0)}
        assert res.modulus == 1  # lone cell, trivial collar
        assert isinstance(res.tier, FixTier)
        # the output lands in the Fin tier spanned by the collared shadow
        allowed = {VERT.project(VERT.base.mul(n, s))
                   for n in res.shadow_collar for s in k_shadow(y, VERT)}
        assert fin_membership(res.point, VERT, allowed)

    def test_zero_point(self):
        full = FullShift(Z2, BIN)
        res = periodize(zero_config(Z2, BIN), VERT, full, window=[])
        assert res.point.is_zero()

    def test_squares_shift_square(self):
        X = squares_shift()
        y = square_config(3, corner=(-1, -1))
        window = [(i, j) for i in range(-1, 2) for j in range(-1, 2)]
        res = periodize(y, VERT, X, window=window)
        assert all(res.report[k] for k in
                   ("periodic", "window_agrees", "shadow_contained"))
        assert fix_membership(res.point, res.lattice)
        # the periodized point keeps a finite projected shadow: it lands
        # in the band spanned by the square's columns plus the collar
        allowed = {VERT.base.mul(n, s) for n in res.shadow_collar
                   for s in k_shadow(y, VERT)}
        assert k_shadow(res.point, VERT) <= {VERT.project(g) for g in allowed}

    def test_window_too_large_rejected(self):
        full = FullShift(Z2, BIN)
        y = FiniteConfig(Z2, BIN, {(0, 0): "1"})
        # a cell on a distant translate disagrees with y
        res = periodize(y, VERT, full, window=[(0, 0)])
        p = res.point.period[1]
        with pytest.raises(PeriodizeError):
            periodize(y, VERT, full, window=[(0, 0), (0, p)])

    def test_unregistered_shift_fails_loudly(self):
        from shiftlab.shifts import SFT2D, Pattern
        X = SFT2D(BIN, [Pattern.from_dict({(0, 0): "1", (1, 0): "1"})])
        y = FiniteConfig(Z2, BIN, {(0, 0): "1"})
        with pytest.raises(RealizationUnavailable):
            periodize(y, VERT, X, window=[])

    def test_full_rank_direction_gives_lattice_periodic(self):
        full = FullShift(Z2, BIN)
        y = FiniteConfig(Z2, BIN, {(0, 0): "1"})
        both = QuotientCtx(Z2, [[1, 0], [0, 1]])
        res = periodize(y, both, full, window=[(0, 0)])
        assert isinstance(res.point, LatticePeriodicConfig)
        assert res.report["periodic"]

    def test_random_homoclinic_points(self):
        rng = random.Random(2)
        full = FullShift(Z2, BIN)
        for _ in range(30):
            entries = {}
            for _ in range(rng.randint(1, 6)):
                entries[(rng.randint(-4, 4), rng.randint(-4, 4))] = "1"
            y = FiniteConfig(Z2, BIN, entries)
            window = sorted(y.support()) + [(0, 0)]
            res = periodize(y, VERT, full, window=window)
            assert res.report["periodic"]
            assert res.report["window_agrees"]
            assert res.report["shadow_contained"]
            # lattice avoids the collar differences by construction
            assert not any(res.lattice.contains(m) and any(m)
                           for m in _collar_differences(y, res))


def _collar_differences(y, res):
    ctx = y.ctx
    supp = sorted(y.support()) + [ctx.identity()]
    S = {ctx.mul(e, ep) for e in res.shadow_collar for ep in supp}
    return {ctx.mul(a, ctx.inv(b)) for a in S for b in S}
