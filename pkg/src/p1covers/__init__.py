"""Exact-arithmetic toolkit for degree-d branched covers P^1 -> P^1 over
small finite fields: discriminants and differential lengths, equivalence
of covers as 2-planes in a linear series, the twisted-derivative operator
T_f(q) = q f' - f q', first-order and higher-order deformation spaces with
fixed discriminant divisor, explicit wild families, and an exhaustive
census over F_q."""

from .errors import BudgetExceeded, InputError, P1CoversError, SplitBoundExceeded
from .field import FieldElement, FieldSpec, arith, elements, embed, frobenius, make_field
from .poly import (FieldMatrix, Poly, PolyMatrix, kernel_basis, poly_arith, poly_gcd,
                   rank_over_kX, roots_with_multiplicity)
from .cover import INF, Cover, Divisor, Mobius, NormalizedCover, equivalent, make_cover
from .cartier import (OperatorMatrix, apply_T, decompose, image_T, image_equal,
                      in_image, kernel_T, operator_matrix, reassemble)
from .deform import (DeformationVector, LiftResult, TangentSystem, brute_force_tangent,
                     deformed_discriminant, lift_deformation, structure_decomposition,
                     tangent_dim, tangent_system)
from .family import (Family, chart_direction, osserman_family, power_family,
                     verify_family, wild_family)
from .census import (CensusRecord, CensusResult, census_by_disc, enumerate_covers,
                     raw_plane_count, verify_theorem_char23)

__all__ = [
    "BudgetExceeded", "InputError", "P1CoversError", "SplitBoundExceeded",
    "FieldElement", "FieldSpec", "arith", "elements", "embed", "frobenius", "make_field",
    "FieldMatrix", "Poly", "PolyMatrix", "kernel_basis", "poly_arith", "poly_gcd",
    "rank_over_kX", "roots_with_multiplicity",
    "INF", "Cover", "Divisor", "Mobius", "NormalizedCover", "equivalent", "make_cover",
    "OperatorMatrix", "apply_T", "decompose", "image_T", "image_equal", "in_image",
    "kernel_T", "operator_matrix", "reassemble",
    "DeformationVector", "LiftResult", "TangentSystem", "brute_force_tangent",
    "deformed_discriminant", "lift_deformation", "structure_decomposition",
    "tangent_dim", "tangent_system",
    "Family", "chart_direction", "osserman_family", "power_family",
    "verify_family", "wild_family",
    "CensusRecord", "CensusResult", "census_by_disc", "enumerate_covers",
    "raw_plane_count", "verify_theorem_char23",
]

__version__ = "0.1.0"
