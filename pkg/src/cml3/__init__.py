"""Exact computation in free commutative Moufang loops of exponent 3.

The model: a Grassmann algebra over GF(3) on derived odd generators with a
shift derivation, twisted into a commutative alternative algebra whose
unital elements form the loop.  Everything downstream — dimension tables,
regular-word bounds, identity verification — is exact GF(3) arithmetic.
"""

from ._kernel import BACKEND
from .gf3 import RankResult, SparseRow, rank_and_kernel
from .grassmann import GElement, GenSym, Monomial, derive, elem_mul, mono_mul
from .loop import (
    LoopElement,
    MalbosPair,
    NonInvertible,
    lassoc,
    linv,
    lmul,
    mainid_check,
    malbos_mul,
    malbos_verify,
    tah_witness,
    verify_cml3,
    verify_identities,
)
from .twisted import associator, cmul, cube
from .twowords import (
    Pair,
    RegularReport,
    RelationSchema,
    TwoWord,
    lex_compare,
    normalize,
    pattern_predicates_case7,
    regular_words,
    relation_span,
)
from .words import (
    DimReport,
    LeftNormedWord,
    TypeVector,
    Word3,
    c_n_of_type,
    dim_Cn,
    enumerate_types,
    eval_word,
    h_of_type,
    word_vectors,
)

__version__ = "0.1.0"
