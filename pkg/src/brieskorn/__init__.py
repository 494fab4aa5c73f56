"""Exact invariants of links of isolated hypersurface singularities."""
from .curves import (BivariatePolynomial, CablePresentation, CharacteristicPairs,
                     PuiseuxBranch, alexander_iterated, alexander_torus_knot,
                     cable_presentation, characteristic_pairs,
                     intersection_multiplicity)
from .errors import (BrieskornError, BudgetExceededError, GraphFormatError,
                     InvariantViolation, PreconditionError, SameBranchError,
                     TruncationError)
from .pham import (Exponents, GeometryKind, GeometryType, MonodromySpectrum,
                   SphereClass, SphereKind, casson_invariant,
                   characteristic_polynomial, connectivity_statement,
                   geometry_type, is_homology_3_sphere, is_homotopy_sphere,
                   milnor_number, monodromy_spectrum,
                   picard_lefschetz_self_intersection, signature, sphere_class)
from .plumbing import (PlumbingGraph, SmithForm, Vertex, boundary_homology,
                       euler_characteristic_boundary, intersection_matrix,
                       is_negative_definite)
from .polynomial import IntegerPolynomial, cyclotomic

__version__ = "0.1.0"
