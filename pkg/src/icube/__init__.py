"""Lattice-exact analysis and rendering of projected fractal imaginary cubes."""

from .classify import (Classification, Rule, UVParams, Verdict, classify_direction,
                       classify_uv, cross_validate, direction_to_uv, nk_mk_1_positive,
                       probe_discreteness, rotate_H)
from .digit_sets import (DeltaSet, DigitSet2, DigitSet3, LatinSquare, canonical,
                         delta, digit_set_from_json, digit_set_to_json,
                         from_latin_square, is_imaginary_cube_digit_set,
                         to_latin_square, uv_digit_set)
from .enumeration import (CongruenceClass, all_latin_squares, canonical_arrangement,
                          congruence_classes, latin_square_lower_bound)
from .expansion import (ExpansionSet, MembershipCertificate, decide_membership,
                        decide_membership_batch, expansion_in_window,
                        has_nontrivial_zero_expansion, is_complete_residue_system,
                        iterate_expansion, lemma_set_member, slice_membership)
from .lattice import (IVec2, IVec3, Window2, Window3, balanced_ternary,
                      from_balanced_ternary, reduce_direction)
from .render import (CoverageSeries, ProjectionMap, Raster, coverage_at,
                     coverage_series, family_map, project_digit_set, rasterize)

__version__ = "0.1.0"
