import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from shiftlab.groups import QuotientCtx, Zd
from shiftlab.shifts import Alphabet, FiniteConfig, LatticePeriodicConfig
from shiftlab.ca import (COMMUTES, LocalRule, OrbitTrace, RuleError,
                         SymbolPermutation, apply_rule, compose,
                         equivariance_check, induced_periodic_rule,
                         iterate_rule, orbit_trace, rule_from_formula)


BIN = Alphabet(("0", "1"))
Z1 = Zd(1)


def brute_apply(f, x, cells):
    """Independent oracle: evaluate the local rule cell by cell."""
    out = {}
    for g in cells:
        word = tuple(x.value(f.ctx.mul(g, n)) for n in f.neighborhood)
        s = f.table[word]
        if s != "0":
            out[g] = s
    return out


class TestApply:
    def test_min_ca_block(self):
        mn = rule_from_formula("min")
        x = FiniteConfig(Z1, BIN, {(i,): "1" for i in range(3)})
        y = apply_rule(mn, x)
        assert y.support() == {(0,), (1,)}

    def test_zero_rule(self):
        z = rule_from_formula("zero")
        x = FiniteConfig(Z1, BIN, {(0,): "1", (5,): "1"})
        assert apply_rule(z, x).is_zero()

    def test_shift_rule(self):
        sh = rule_from_formula("shift_right")
        x = FiniteConfig(Z1, BIN, {(0,): "1"})
        assert apply_rule(sh, x).support() == {(1,)}

    def test_against_cellwise_oracle(self):
        rng = random.Random(3)
        mn = rule_from_formula("min")
        for _ in range(20):
            entries = {(rng.randint(-6, 6),): "1" for _ in range(rng.randint(1, 5))}
            x = FiniteConfig(Z1, BIN, entries)
            y = apply_rule(mn, x)
            cells = [(i,) for i in range(-9, 10)]
            assert {g: s for g, s in y.entries.items()} == brute_apply(mn, x, cells)

    def test_lattice_periodic_stays_periodic(self):
        mn = rule_from_formula("min")
        q = QuotientCtx(Z1, [[4]])
        x = LatticePeriodicConfig(q, BIN, {(0,): "1", (1,): "1",
                                           (2,): "0", (3,): "0"})
        y = apply_rule(mn, x)
        assert isinstance(y, LatticePeriodicConfig)
        assert y.quotient is q

    def test_quiescence_required(self):
        with pytest.raises(RuleError):
            LocalRule(Z1, BIN, [(0,)], {("0",): "1", ("1",): "0"})


class TestSupportGrowthBound:
    @settings(max_examples=40, deadline=None)
    @given(st.dictionaries(st.integers(-8, 8), st.sampled_from("01"),
                           min_size=1, max_size=6))
    def test_min_ca(self, raw):
        mn = rule_from_formula("min")
        x = FiniteConfig(Z1, BIN, {(i,): s for i, s in raw.items()})
        y = apply_rule(mn, x)
        allowed = {(g[0] - n[0],) for g in x.support() for n in mn.neighborhood}
        assert y.support() <= allowed


class TestTranslationEquivariance:
    @settings(max_examples=30, deadline=None)
    @given(st.dictionaries(st.integers(-6, 6), st.sampled_from("01"),
                           min_size=1, max_size=5),
           st.integers(-2, 2))
    def test_min_ca(self, raw, t):
        mn = rule_from_formula("min")
        x = FiniteConfig(Z1, BIN, {(i,): s for i, s in raw.items()})
        lhs = apply_rule(mn, x.translate((t,)))
        rhs = apply_rule(mn, x).translate((t,))
        assert lhs == rhs


class TestCompose:
    def test_min_min_is_window_three_min(self):
        mn = rule_from_formula("min")
        comp = compose(mn, mn)
        assert sorted(comp.neighborhood) == [(0,), (1,), (2,)]
        for word in itertools.product("01", repeat=3):
            by_cell = dict(zip(sorted(comp.neighborhood), word))
            got = comp.local(tuple(by_cell[n] for n in comp.neighborhood))
            assert got == min(word)

    def test_identity_composition(self):
        mn = rule_from_formula("min")
        ident = rule_from_formula("identity")
        assert compose(ident, mn) == mn
        assert compose(mn, ident) == mn

    def test_zero_absorbs(self):
        mn = rule_from_formula("min")
        z = rule_from_formula("zero")
        assert compose(z, mn) == compose(z, z)

    def test_agreement_with_iterated_apply(self):
        mn = rule_from_formula("min")
        comp = compose(mn, mn)
        for bits in itertools.product("01", repeat=5):
            x = FiniteConfig(Z1, BIN,
                             {(i,): s for i, s in enumerate(bits) if s == "1"})
            assert apply_rule(comp, x) == apply_rule(mn, apply_rule(mn, x))

    def test_neighborhood_budget(self):
        wide = LocalRule(Z1, BIN, [(i,) for i in range(-4, 5)],
                         lambda w: w[4])
        with pytest.raises(RuleError):
            compose(wide, wide)


class TestEquivariance:
    def test_identity_permutation_commutes(self):
        mn = rule_from_formula("min")
        assert equivariance_check(mn, SymbolPermutation.from_dict({})) == COMMUTES

    def test_spaceship_swap_witness(self):
        from shiftlab.corpus import spaceship_shift
        sp = rule_from_formula("spaceship")
        swap = SymbolPermutation.from_dict({"1": "2", "2": "1"})
        witness = equivariance_check(sp, swap, subshift=spaceship_shift())
        assert witness != COMMUTES
        # the witness really distinguishes the two compositions
        word = tuple(witness.get(n) for n in sp.neighborhood)
        swapped = tuple(swap.apply_symbol(s) for s in word)
        assert sp.local(swapped) != swap.apply_symbol(sp.local(word))

    def test_symmetry_must_fix_zero(self):
        mn = rule_from_formula("min")
        with pytest.raises(RuleError):
            equivariance_check(mn, SymbolPermutation.from_dict({"0": "1", "1": "0"}))


class TestInducedRule:
    def test_min_on_ring_of_four(self):
        mn = rule_from_formula("min")
        q = QuotientCtx(Z1, [[4]])
        ind = induced_periodic_rule(mn, q)
        x = LatticePeriodicConfig(q, BIN, {(0,): "1", (1,): "1",
                                           (2,): "0", (3,): "0"})
        y = iterate_rule(ind, x, 2)
        assert y.is_zero()
        assert not iterate_rule(ind, x, 1).is_zero()

    def test_zero_rule_descends(self):
        z = rule_from_formula("zero")
        q = QuotientCtx(Z1, [[3]])
        ind = induced_periodic_rule(z, q)
        x = LatticePeriodicConfig(q, BIN, {(0,): "1", (1,): "1", (2,): "1"})
        assert apply_rule(ind, x).is_zero()

    def test_shift_becomes_rotation(self):
        sh = rule_from_formula("shift_right")
        q = QuotientCtx(Z1, [[3]])
        ind = induced_periodic_rule(sh, q)
        x = LatticePeriodicConfig(q, BIN, {(0,): "1", (1,): "0", (2,): "0"})
        y = apply_rule(ind, x)
        assert y.cell[(1,)] == "1" and y.cell[(0,)] == "0"
        assert iterate_rule(ind, x, 3) == x

    def test_commutes_with_projection_exhaustively(self):
        """project(f(x)) = induced(project(x)) over all periodic points
        of a small quotient."""
        mn = rule_from_formula("min")
        q = QuotientCtx(Z1, [[3]])
        ind = induced_periodic_rule(mn, q)
        for values in itertools.product("01", repeat=3):
            cell = {(i,): v for i, v in enumerate(values)}
            x = LatticePeriodicConfig(q, BIN, cell)
            direct = apply_rule(ind, x)
            # oracle: evaluate the unprojected rule on the periodic point
            expected = {rep: mn.local(tuple(x.value((rep[0] + n[0],))
                                            for n in mn.neighborhood))
                        for rep in cell}
            assert direct.cell == expected

    def test_neighborhood_collapse(self):
        # window-4 rule on Z_2: the neighborhood folds to two cosets
        wide = LocalRule(Z1, BIN, [(0,), (1,), (2,), (3,)],
                         lambda w: "1" if "1" in w else "0")
        q = QuotientCtx(Z1, [[2]])
        ind = induced_periodic_rule(wide, q)
        assert len(ind.neighborhood) == 2


class TestOrbitTrace:
    def test_zero_rule_trace(self):
        z = rule_from_formula("zero")
        x = FiniteConfig(Z1, BIN, {(0,): "1"})
        tr = orbit_trace(z, x, (0,), 4)
        assert tr.symbols == ("1", "0", "0", "0", "0")

    def test_shift_arrival(self):
        sh = rule_from_formula("shift_right")
        x = FiniteConfig(Z1, BIN, {(-3,): "1"})
        tr = orbit_trace(sh, x, (0,), 5)
        assert tr.symbols == ("0", "0", "0", "1", "0", "0")

    def test_min_block_trace(self):
        mn = rule_from_formula("min")
        x = FiniteConfig(Z1, BIN, {(i,): "1" for i in range(5)})
        tr = orbit_trace(mn, x, (0,), 7)
        assert tr.symbols == ("1",) * 5 + ("0",) * 3
