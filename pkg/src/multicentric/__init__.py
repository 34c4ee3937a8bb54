"""Multicentric tensor-product algebra and the matrix functional calculus built on it."""

from .algebra1d import (basis_product_1d, inverse_point, mult_matrix, polyprod_point,
                        polyprod_point_matrix_form, power_point)
from .algebra2d import (basis_product_2d, box_col, box_double, box_row, inverse_point2,
                        mult_matrix2, polyprod2_matrix, polyprod2_scalar, unvec, vec)
from .calculus import (calc_pair, calc_single, check_commute, eig_diagonalize,
                       jordan_structure, simultaneous_diagonalize, suggest_polynomial,
                       verify_diagonalizable)
from .estimators import JordanRemover, MulticentricCalculus, PolyCoeffRegressor
from .exceptions import (ConfigError, ConjugateNotSupported, ConstructionFailed, Defective,
                         DimensionMismatch, DuplicateRoots, EmptyRoots, IndexOutOfRange,
                         MulticentricError, NotCommuting, NotInvertible, NumericalFailure,
                         ParseError, PointNotOnGrid, RandomCombinationFailed,
                         RootFindingFailed, ValidationError)
from .function_space import (Disc, DomainSpec, FactorDomain, GridFunction, PolyCoeffFunction,
                             equivalence_bound, op_norm, polyprod_elements, sample, slice_w1,
                             slice_w2, sup_norm)
from .gelfand import (Character, PreimageGrid, Verdict, decompose_poly_1d, decompose_poly_2d,
                      gelfand_transform, make_character, multicentric_eval, semisimplicity_check,
                      spectrum)
from .poly import MonicPolynomial, coupling, delta_basis, eval_poly, sigma_table

__version__ = "0.1.0"
