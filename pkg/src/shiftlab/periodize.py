"""Fix/Fin/Loc subsystem views and periodization.

Periodization turns a finite-support point into a nearby point that is
periodic along a chosen subgroup, by superposing translates spaced out
along a sparse finite-index sublattice.  The sublattice is chosen so
that the translated support collars stay pairwise disjoint; the result
then agrees with the original on any window inside the central copy and
its projected shadow stays inside a fixed collar of the original's.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groups import QuotientCtx, SubgroupSpan, Zd, sublattice_avoiding
from .shifts import (Configuration, FiniteConfig, FullShift,
                     LatticePeriodicConfig, StripPeriodicConfig, Subshift,
                     VALID, k_shadow)
from .ca import LocalRule


class PeriodizeError(ValueError):
    pass


class SuitabilityError(PeriodizeError):
    """The generating set does not absorb the rule's spreading set."""


class RealizationUnavailable(PeriodizeError):
    """The shift has no registered gluing mode for superposed translates."""


# --- tier bookkeeping (metadata only) --------------------------------------


@dataclass(frozen=True)
class FixTier:
    subgroup: QuotientCtx


@dataclass(frozen=True)
class FinTier:
    quotient: QuotientCtx
    shadow_bound: frozenset


@dataclass(frozen=True)
class LocTier:
    generators: tuple


# --- membership predicates ---------------------------------------------------


def fix_membership(x: Configuration, F: QuotientCtx) -> bool:
    """Is x fixed by every basis vector of the sublattice F?"""
    for row in F.basis:
        if x.translate(tuple(row)) != x:
            return False
    return True


def fin_membership(x: Configuration, q: QuotientCtx, E) -> bool:
    """Does the projected shadow of x stay inside E?"""
    return k_shadow(x, q) <= set(E)


@dataclass
class LocSubsystem:
    span: SubgroupSpan
    rule: LocalRule

    def contains(self, x: Configuration) -> bool:
        return all(self.span.contains(g) for g in x.support())


def loc_subsystem(f: LocalRule, gens) -> LocSubsystem:
    """Restrict a rule to points supported in the subgroup generated by
    `gens`.

    Suitability requires the spreading set N u N^-1 of the rule inside
    the subgroup, which makes the restricted system f-invariant; the
    missing elements are reported otherwise.
    """
    ctx = f.ctx
    span = SubgroupSpan(ctx, tuple(gens))
    missing = []
    for n in f.neighborhood:
        for g in (n, ctx.inv(n)):
            if not span.contains(g):
                missing.append(g)
    if missing:
        raise SuitabilityError(
            f"generating set is not suitable: spreading elements "
            f"{sorted(set(missing), key=str)} escape the subgroup")
    return LocSubsystem(span, f)


# --- periodization -----------------------------------------------------------


@dataclass
class PeriodizationResult:
    lattice: QuotientCtx          # the sublattice F along which z is periodic
    point: Configuration          # z itself
    modulus: int                  # the avoiding-lattice scale m
    shadow_collar: frozenset      # the collar N in the quotient group
    report: dict = field(default_factory=dict)
    tier: FixTier = None


def _collar_radius(X: Subshift) -> int:
    if isinstance(X, FullShift):
        return 0
    r = getattr(X, "gluing_radius", None)
    if r is None:
        raise RealizationUnavailable(
            "shift has no registered gluing mode; cannot periodize on it")
    return r


def periodize(y: FiniteConfig, direction: QuotientCtx, X: Subshift,
              window=(), rule: LocalRule = None) -> PeriodizationResult:
    """Periodize a finite-support point along the subgroup of `direction`.

    `direction` is the quotient context whose sublattice spans the
    periodization subgroup K; the projection to G/K is the shadow map.
    Returns the sparse sublattice F <= K, the F-periodic point z, and a
    verification report with the three exact checks:

      1. z is F-periodic,
      2. z agrees with y on `window`,
      3. the projected shadow of z is inside collar * shadow(y).
    """
    if not isinstance(y, FiniteConfig):
        raise PeriodizeError("periodization starts from a finite-support point")
    ctx = y.ctx
    if not isinstance(ctx, Zd):
        raise PeriodizeError("periodization is implemented over Z^d")
    d = ctx.d
    zero = ctx.identity()

    # collars: E is the gluing collar of X, E' the support collar of y
    cr = _collar_radius(X)
    E = sorted(ctx.ball(cr))
    supp = sorted(y.support())
    Eprime = sorted(set(supp) | set(E) | {zero})

    S = {ctx.mul(e, ep) for e in E for ep in Eprime}
    M = {ctx.mul(a, ctx.inv(b)) for a in S for b in S}
    Fprime = sublattice_avoiding(d, M)
    m = Fprime.diag[0]

    basis = [tuple(m * c for c in row) for row in direction.basis]
    F = QuotientCtx(Zd(d), basis)

    z = _superpose_translates(y, F, m)
    if not isinstance(X, FullShift):
        if X.config_valid(z) != VALID:
            raise PeriodizeError(
                "superposed translates violate the shift; the registered "
                "gluing collar is too small for this point")

    # verification: all three postconditions, exactly
    periodic_ok = fix_membership(z, F)
    window_ok = all(z.value(g) == y.value(g) for g in window)
    if not window_ok:
        raise PeriodizeError("window exceeds the achievable agreement region")
    collar_elems = set(E) | {zero} | {ctx.inv(e) for e in E}
    if rule is not None:
        collar_elems |= set(rule.neighborhood)
        collar_elems |= {ctx.inv(n) for n in rule.neighborhood}
    N = {direction.project(g) for g in collar_elems}
    shadow_y = k_shadow(y, direction)
    shadow_z = k_shadow(z, direction)
    allowed = {direction.base.mul(n, s) for n in N for s in shadow_y}
    allowed = {direction.project(g) for g in allowed}
    shadow_ok = shadow_z <= allowed

    return PeriodizationResult(
        lattice=F,
        point=z,
        modulus=m,
        shadow_collar=frozenset(N),
        report={
            "periodic": periodic_ok,
            "window_agrees": window_ok,
            "shadow_contained": shadow_ok,
            "lattice_basis": [list(r) for r in F.basis],
            "avoiding_modulus": m,
        },
        tier=FixTier(F),
    )


def _superpose_translates(y: FiniteConfig, F: QuotientCtx, m: int):
    """The union of the translates k . y for k in the sublattice F.

    The avoiding modulus m keeps the translated supports disjoint, so
    folding the support into a fundamental domain is well defined.
    """
    ctx = y.ctx
    d = ctx.d
    rank = F.rank
    if y.is_zero():
        if rank == d:
            reps = F.representatives()
            return LatticePeriodicConfig(F, y.alphabet,
                                         {r: y.alphabet.zero for r in reps})
        if d == 2 and rank == 1:
            return StripPeriodicConfig(ctx, y.alphabet, tuple(F.basis[0]), {})
        raise PeriodizeError("unsupported periodization shape")
    if rank == d:
        reps = F.representatives()
        cell = {r: y.alphabet.zero for r in reps}
        for g, s in y.entries.items():
            cell[F.project(g)] = s
        return LatticePeriodicConfig(F, y.alphabet, cell)
    if d == 2 and rank == 1:
        period = tuple(F.basis[0])
        return StripPeriodicConfig(ctx, y.alphabet, period, dict(y.entries))
    raise PeriodizeError("unsupported periodization shape")
