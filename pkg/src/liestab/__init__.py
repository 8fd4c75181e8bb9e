"""Exact stabilizer Lie algebras o(M), o-bar(M) of bilinear forms over GF(p) and QQ."""

from .errors import (
    BadSpec,
    ConfigError,
    FieldMismatch,
    FieldSyntaxError,
    LiestabError,
    NotAssociative,
    NotClassifiable,
    NotClosed,
    NotIdeal,
    NotPrime,
    ShapeMismatch,
    Singular,
    Unsupported,
    ZeroMatrix,
)
from .exactmat import EchelonBasis, ExactMatrix, congruence, conjugate, kernel_basis, matrix, rref
from .field import GF, QQ, FieldSpec, Scalar, parse_field
from .forms import BilinearForm, FormClass, FormKind, Symmetry, classify_symmetry, normal_form
from .liealg import (
    LieSubalgebra,
    SubspaceOfAlgebra,
    center,
    derived_series,
    derived_subalgebra,
    gl,
    is_ideal,
    is_solvable,
    module_span,
    quotient,
    verify_semidirect,
)
from .stabilizer import StabilizerPair, lambda_of, stab, stab_bar
from .report import Check, StructureReport
from .predictions import StructurePrediction, predict
from .structure import verify_structure
from .classical import ClassicalSpec, Family, classical_checks, build, parse_spec
from .gradedalg import FiniteAlgebra, GradedDerivationAlgebra, build_graded_algebra, derivations, graded_pieces, verify_der
from .harness import GridConfig, run_verify

__version__ = "0.1.0"

__all__ = [
    "BadSpec",
    "BilinearForm",
    "Check",
    "ClassicalSpec",
    "ConfigError",
    "EchelonBasis",
    "ExactMatrix",
    "Family",
    "FieldMismatch",
    "FieldSpec",
    "FieldSyntaxError",
    "FiniteAlgebra",
    "FormClass",
    "FormKind",
    "GF",
    "GradedDerivationAlgebra",
    "GridConfig",
    "LieSubalgebra",
    "LiestabError",
    "NotAssociative",
    "NotClassifiable",
    "NotClosed",
    "NotIdeal",
    "NotPrime",
    "QQ",
    "Scalar",
    "ShapeMismatch",
    "Singular",
    "StabilizerPair",
    "StructurePrediction",
    "StructureReport",
    "SubspaceOfAlgebra",
    "Symmetry",
    "Unsupported",
    "ZeroMatrix",
    "build",
    "build_graded_algebra",
    "center",
    "classical_checks",
    "classify_symmetry",
    "congruence",
    "conjugate",
    "derivations",
    "derived_series",
    "derived_subalgebra",
    "gl",
    "graded_pieces",
    "is_ideal",
    "is_solvable",
    "kernel_basis",
    "lambda_of",
    "matrix",
    "module_span",
    "normal_form",
    "parse_field",
    "parse_spec",
    "predict",
    "quotient",
    "rref",
    "run_verify",
    "stab",
    "stab_bar",
    "verify_der",
    "verify_semidirect",
    "verify_structure",
]
