"""shiftlab: symbolic dynamics and cellular automata on finitely
generated groups, with gluing, periodization and nilpotency analyses."""

__version__ = "0.1.0"

from .groups import (Free2, GroupCtx, Heisenberg, Lamplighter, QuotientCtx,
                     Zd, sublattice_avoiding)
from .shifts import (Alphabet, Configuration, FiniteConfig, FullShift,
                     LatticePeriodicConfig, Pattern, PredicateShift, SFT1D,
                     SFT2D, StripPeriodicConfig, Subshift, k_shadow, shadow,
                     support)
from .ca import LocalRule, SymbolPermutation, apply_rule, compose, \
    equivariance_check, induced_periodic_rule, orbit_trace
from .gluing import (Designation, DesignationPiece, GluingSchedule,
                     PatternPlacement, RegionFill, ordinal_glue,
                     pigeonhole_periodic, realize, synchronizing_radius,
                     verify_block_gluing)
from .periodize import (fin_membership, fix_membership, loc_subsystem,
                        periodize)
from .nillab import (MortalityProfile, SpaceshipCertificate,
                     bounded_nilpotency, finite_system_checks, mortality,
                     spaceship_search, spacetime_path, trace_zero_density,
                     uniform_mortality_profile)
from .corpus import ExampleBundle, example_names, load_example
