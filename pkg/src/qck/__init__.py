"""Exact symbolic toolkit for quantum orthogonal Cayley-Klein groups and
their dual algebras over nilpotent contraction parameters."""

__version__ = "0.1.0"

from .errors import (BadDimension, DimensionMismatch, DivisionByZero,
                     InconsistentPairing, NegativeNilpotentPower, NotAUnit,
                     NotAffineInJv, NotTriangular, WordTooLong)
from .scalar import (IMAGINARY, NILPOTENT, ONE, BaseScalar, CKScalar,
                     DualValue, JSignature, hyper)
from .freealg import (Matrix, NCPoly, Relation, RelationSet, Sym,
                      adjugate_inverse, canonicalize_relations, determinant,
                      embed_left, embed_right, flip_matrix, lift_to_poly,
                      normalize_poly, poly_identity, scalar_identity,
                      scalar_matrix, split_by_j, sym, tri_inverse)
from .structures import (StructureBundle, c0_matrix, c_prime,
                         c_prime_inverse, c_q, cartesian_classical,
                         cartesian_conjugate, cartesian_quantum, counit_value,
                         d_inverse, d_matrix, j_prefactor, l_matrices,
                         r_cartesian, r_minus, r_plus, r_q, rho_half_steps,
                         symplectic_classical, symplectic_quantum)
from .relations import (VerificationReport, apply_counit, classical_limit,
                        commutator_presentation, contraction_decompose,
                        expand_orthogonality, expand_rtt, hopf_checks,
                        yang_baxter)
from .pairing import (CKAlgebraPresentation, PairingTable,
                      build_pairing_table, check_printed_table,
                      derive_dual_relations, present_ck_algebra,
                      published_table_n3)
