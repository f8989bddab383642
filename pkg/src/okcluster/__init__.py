"""Good Lyndon words, cluster seeds and Newton-Okounkov simplices of A_q(n(w))."""
from .cluster import (
    Enumeration, InvariantViolation, NonConvexOrderError, Seed, SeedContext, dominance_leq,
    enumerate_seeds, initial_seed, make_context, mutate, reduced_word_for_order,
)
from .hookalg import (
    ReciprocalProductSum, SparsePoly, peterson_proctor_report, sum_equals, verify_corhook,
    verify_prophook,
)
from .lyndon import (
    AlphabetOrder, DominantWord, UnsupportedConfigurationError, cfl_factorize,
    compute_good_lyndon, is_dominant, is_lyndon, lex_compare, natural_order, odot,
    shuffle_max_oracle,
)
from .okbody import (
    build_tmap, decompose_point, delta_seed, delta_total, interiors_disjoint, normal_fan,
    psi_of_monomial, revlex_compare,
)
from .rootsys import (
    CartanData, WeylElement, beta_sequence, build_cartan, count_reduced_expressions,
    inversion_set, longest_element, weyl_from_word,
)

__version__ = "0.1.0"
